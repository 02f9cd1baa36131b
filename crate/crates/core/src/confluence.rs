//! Mechanical audit of termination and local confluence.
//!
//! Two rewrites of the same word either touch disjoint factors (family `I`)
//! or overlap in a three-letter factor `μ1 μ2 μ3` where both `μ1 μ2` and
//! `μ2 μ3` are redexes. Since `η ε` is never a redex, the overlaps are:
//!
//! | family | parent          | side condition |
//! |--------|-----------------|----------------|
//! | `II`   | `ε_i ε_j ε_k`   | `i < j < k`    |
//! | `III`  | `η_i η_j η_k`   | `i > j > k`    |
//! | `IV`   | `ε_i ε_j η_k`   | `i < j`        |
//! | `V`    | `ε_i η_j η_k`   | `j > k`        |
//!
//! `IV` and `V` split further into seven subcases `a`–`g` each, by how `k`
//! sits relative to `i` and `j`. For every overlap the audit builds the full
//! reduction graphs of both one-step reducts and intersects them; it never
//! calls [`normalize`](crate::rewrite::normalize), since that would presume
//! the confluence being checked.
//!
//! [`Oracle`] decides equivalence within a degree bound by exploring rewrites
//! in both directions, again without normal forms.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::rewrite::{
    apply, is_redex, match_rule, redexes, reduction_graph, RewriteError, RuleCase,
};
use crate::words::{all_words, alphabet, Generator, Index, Kind, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Subcase {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Subcase {
    pub const ALL: [Subcase; 7] = [
        Subcase::A,
        Subcase::B,
        Subcase::C,
        Subcase::D,
        Subcase::E,
        Subcase::F,
        Subcase::G,
    ];

    pub fn letter(self) -> char {
        (b'a' + self as u8) as char
    }
}

/// Shape of a pair of competing rewrites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Two redexes on disjoint factors.
    Disjoint,
    /// `ε_i ε_j ε_k`, `i < j < k`.
    EpsEpsEps,
    /// `η_i η_j η_k`, `i > j > k`.
    EtaEtaEta,
    /// `ε_i ε_j η_k`, `i < j`.
    EpsEpsEta(Subcase),
    /// `ε_i η_j η_k`, `j > k`.
    EpsEtaEta(Subcase),
}

impl Family {
    /// The sixteen overlap families and subcases.
    pub fn overlaps() -> Vec<Family> {
        let mut out = vec![Family::EpsEpsEps, Family::EtaEtaEta];
        out.extend(Subcase::ALL.map(Family::EpsEpsEta));
        out.extend(Subcase::ALL.map(Family::EpsEtaEta));
        out
    }

    pub fn label(self) -> String {
        match self {
            Family::Disjoint => "I".into(),
            Family::EpsEpsEps => "II".into(),
            Family::EtaEtaEta => "III".into(),
            Family::EpsEpsEta(s) => format!("IV_{}", s.letter()),
            Family::EpsEtaEta(s) => format!("V_{}", s.letter()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

/// Subcase conditions for `ε_i ε_j η_k` (`i < j`), in order `a`–`g`.
pub fn eps_eps_eta_conditions(i: Index, j: Index, k: Index) -> [bool; 7] {
    let (i, j, k) = (i128::from(i), i128::from(j), i128::from(k));
    [
        k > j + 1,
        k == j + 1,
        k == j,
        i + 1 < k && k < j,
        k == i + 1 && i + 1 < j,
        k == i,
        k < i,
    ]
}

/// Subcase conditions for `ε_i η_j η_k` (`j > k`), in order `a`–`g`.
pub fn eps_eta_eta_conditions(i: Index, j: Index, k: Index) -> [bool; 7] {
    let (i, j, k) = (i128::from(i), i128::from(j), i128::from(k));
    [
        i > j,
        i == j,
        i == j - 1,
        k < i && i < j - 1,
        k == i && i < j - 1,
        k == i + 1,
        k > i + 1,
    ]
}

fn unique_subcase(conditions: [bool; 7]) -> Option<Subcase> {
    let mut hits = conditions.iter().enumerate().filter(|(_, b)| **b);
    match (hits.next(), hits.next()) {
        (Some((n, _)), None) => Some(Subcase::ALL[n]),
        _ => None,
    }
}

/// Family of the three-letter word `a b c` by letter shape and index
/// conditions alone. `None` when the shape is not one of the overlap
/// families or the subcase conditions do not single out one subcase.
pub fn classify_overlap(a: Generator, b: Generator, c: Generator) -> Option<Family> {
    let (i, j, k) = (a.index, b.index, c.index);
    match (a.kind, b.kind, c.kind) {
        (Kind::Eps, Kind::Eps, Kind::Eps) if i < j && j < k => Some(Family::EpsEpsEps),
        (Kind::Eta, Kind::Eta, Kind::Eta) if i > j && j > k => Some(Family::EtaEtaEta),
        (Kind::Eps, Kind::Eps, Kind::Eta) if i < j => {
            unique_subcase(eps_eps_eta_conditions(i, j, k)).map(Family::EpsEpsEta)
        }
        (Kind::Eps, Kind::Eta, Kind::Eta) if j > k => {
            unique_subcase(eps_eta_eta_conditions(i, j, k)).map(Family::EpsEtaEta)
        }
        _ => None,
    }
}

/// A parent word with two one-step reducts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalPair {
    pub parent: Word,
    /// Positions of the two competing redexes, left one first.
    pub positions: (usize, usize),
    pub left_reduct: Word,
    pub right_reduct: Word,
    pub family: Family,
    pub bound_found: Option<Word>,
}

impl CriticalPair {
    fn overlap(parent: Word, family: Family) -> Self {
        let left_reduct = apply(&parent, 0).expect("overlap family has a redex at 0");
        let right_reduct = apply(&parent, 1).expect("overlap family has a redex at 1");
        CriticalPair {
            parent,
            positions: (0, 1),
            left_reduct,
            right_reduct,
            family,
            bound_found: None,
        }
    }

    /// A family-`I` pair from two redexes of `parent` at non-overlapping
    /// positions.
    pub fn disjoint(parent: Word, first: usize, second: usize) -> Result<Self, RewriteError> {
        let (first, second) = (first.min(second), first.max(second));
        if second < first + 2 {
            return Err(RewriteError::NotARedex {
                word: parent,
                position: second,
            });
        }
        let left_reduct = apply(&parent, first)?;
        let right_reduct = apply(&parent, second)?;
        Ok(CriticalPair {
            parent,
            positions: (first, second),
            left_reduct,
            right_reduct,
            family: Family::Disjoint,
            bound_found: None,
        })
    }

    fn indices(&self) -> (Index, Index, Index) {
        let l = &self.parent.letters()[self.positions.0..];
        (l[0].index, l[1].index, l[2].index)
    }
}

/// Every overlap `μ1 μ2 μ3` with indices at most `max_index`, built from the
/// family definitions and sorted by parent word.
pub fn enumerate_overlaps(max_index: Index) -> Vec<CriticalPair> {
    let range = || 0..=max_index;
    let mut out = Vec::new();
    for i in range() {
        for j in range() {
            for k in range() {
                let mut push = |a, b, c, family| {
                    out.push(CriticalPair::overlap(Word::from_letters([a, b, c]), family));
                };
                use Generator as G;
                if i < j && j < k {
                    push(G::eps(i), G::eps(j), G::eps(k), Family::EpsEpsEps);
                }
                if i > j && j > k {
                    push(G::eta(i), G::eta(j), G::eta(k), Family::EtaEtaEta);
                }
                if i < j {
                    let sub = unique_subcase(eps_eps_eta_conditions(i, j, k))
                        .expect("subcases of ε ε η partition i < j");
                    push(G::eps(i), G::eps(j), G::eta(k), Family::EpsEpsEta(sub));
                }
                if j > k {
                    let sub = unique_subcase(eps_eta_eta_conditions(i, j, k))
                        .expect("subcases of ε η η partition j > k");
                    push(G::eps(i), G::eta(j), G::eta(k), Family::EpsEtaEta(sub));
                }
            }
        }
    }
    out.sort_by(|a, b| a.parent.cmp(&b.parent));
    out
}

/// Independent scan: every three-letter word over the bounded alphabet whose
/// two two-letter factors are both redexes.
pub fn scan_overlaps(max_index: Index) -> Vec<Word> {
    let letters = alphabet(max_index);
    let mut out = Vec::new();
    for &a in &letters {
        for &b in &letters {
            if !is_redex(a, b) {
                continue;
            }
            for &c in &letters {
                if is_redex(b, c) {
                    out.push(Word::from_letters([a, b, c]));
                }
            }
        }
    }
    out.sort();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
enum Var {
    I,
    J,
    K,
}

/// A letter of a closed-form bound, e.g. `ε_{j-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Term(Kind, Var, i8);

impl Term {
    fn eval(self, (i, j, k): (Index, Index, Index)) -> Option<Generator> {
        let base = match self.1 {
            Var::I => i,
            Var::J => j,
            Var::K => k,
        };
        let index = i128::from(base) + i128::from(self.2);
        let index = Index::try_from(index).ok()?;
        Some(Generator {
            kind: self.0,
            index,
        })
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.0 {
            Kind::Eta => 'h',
            Kind::Eps => 'e',
        };
        let var = match self.1 {
            Var::I => 'i',
            Var::J => 'j',
            Var::K => 'k',
        };
        match self.2 {
            0 => write!(f, "{letter}_{var}"),
            d if d > 0 => write!(f, "{letter}_{{{var}+{d}}}"),
            d => write!(f, "{letter}_{{{var}{d}}}"),
        }
    }
}

/// Where a closed-form bound comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    /// The bound as written down for the family.
    Stated,
    /// The last word of the written reduction chain, where it differs from
    /// the stated bound.
    ChainEnd,
    /// Obtained from the `ε ε ε` bound by the η/ε duality.
    Dual,
    /// `a μ' b ν' c`: both disjoint rewrites performed.
    BothSteps,
}

struct Formula {
    source: BoundSource,
    terms: &'static [Term],
}

use Kind::{Eps as E, Eta as H};
use Var::{I, J, K};

fn closed_forms(family: Family) -> &'static [Formula] {
    use BoundSource::*;
    match family {
        Family::Disjoint => &[],
        Family::EpsEpsEps => &[Formula {
            source: Stated,
            terms: &[Term(E, K, -2), Term(E, J, -1), Term(E, I, 0)],
        }],
        Family::EtaEtaEta => &[Formula {
            source: Dual,
            terms: &[Term(H, K, 0), Term(H, J, -1), Term(H, I, -2)],
        }],
        Family::EpsEpsEta(s) => match s {
            Subcase::A => &[Formula {
                source: Stated,
                terms: &[Term(H, K, -2), Term(E, J, -1), Term(E, I, 0)],
            }],
            Subcase::B | Subcase::C => &[Formula {
                source: Stated,
                terms: &[Term(E, I, 0)],
            }],
            Subcase::D => &[Formula {
                source: Stated,
                terms: &[Term(H, K, -1), Term(E, J, -2), Term(E, I, 0)],
            }],
            Subcase::E | Subcase::F => &[Formula {
                source: Stated,
                terms: &[Term(E, J, -1)],
            }],
            Subcase::G => &[Formula {
                source: Stated,
                terms: &[Term(H, K, 0), Term(E, J, -2), Term(E, I, -1)],
            }],
        },
        Family::EpsEtaEta(s) => match s {
            Subcase::A => &[Formula {
                source: Stated,
                terms: &[Term(H, K, 0), Term(H, J, -1), Term(E, I, -2)],
            }],
            Subcase::B | Subcase::C => &[Formula {
                source: Stated,
                terms: &[Term(H, K, 0)],
            }],
            Subcase::D => &[Formula {
                source: Stated,
                terms: &[Term(H, K, 0), Term(H, J, -2), Term(E, I, -1)],
            }],
            Subcase::E | Subcase::F => &[Formula {
                source: Stated,
                terms: &[Term(H, J, -1)],
            }],
            Subcase::G => &[
                Formula {
                    source: Stated,
                    terms: &[Term(E, K, 0), Term(H, J, -2), Term(H, I, -1)],
                },
                Formula {
                    source: ChainEnd,
                    terms: &[Term(H, K, -1), Term(H, J, -2), Term(E, I, 0)],
                },
            ],
        },
    }
}

/// A closed-form lower bound instantiated on one pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedFormCheck {
    pub source: BoundSource,
    pub formula: String,
    /// `None` when an index in the formula would be negative.
    pub word: Option<Word>,
    /// Whether `word` is among the common reducts.
    pub found: bool,
}

fn instantiate_closed_forms(pair: &CriticalPair) -> Vec<(BoundSource, String, Option<Word>)> {
    if pair.family == Family::Disjoint {
        let second = pair.positions.1;
        let mu_len = 2 - (pair.parent.len() - pair.left_reduct.len());
        let both = apply(&pair.left_reduct, second - 2 + mu_len).ok();
        return vec![(BoundSource::BothSteps, "a μ' b ν' c".to_string(), both)];
    }
    let (i, j, k) = pair.indices();
    let prefix = Word::from_letters(pair.parent.letters()[..pair.positions.0].iter().copied());
    let suffix = Word::from_letters(
        pair.parent.letters()[pair.positions.0 + 3..]
            .iter()
            .copied(),
    );
    closed_forms(pair.family)
        .iter()
        .map(|f| {
            let formula = f
                .terms
                .iter()
                .map(Term::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            let word = f
                .terms
                .iter()
                .map(|term| term.eval((i, j, k)))
                .collect::<Option<Word>>()
                .map(|core| prefix.concat(&core).concat(&suffix));
            (f.source, formula, word)
        })
        .collect()
}

/// A pair together with everything found while joining it.
#[derive(Debug, Clone, Serialize)]
pub struct Resolution {
    pub pair: CriticalPair,
    /// Words reachable from both reducts, in breadth-first order from the
    /// left reduct.
    pub common_reducts: Vec<Word>,
    pub closed_forms: Vec<ClosedFormCheck>,
}

/// Two reducts without a common reduct.
#[derive(Debug, Clone, Error, Serialize)]
#[error("NOT_JOINABLE: {} and {} from {}", .pair.left_reduct, .pair.right_reduct, .pair.parent)]
pub struct NotJoinable {
    pub pair: CriticalPair,
    pub left_graph: Vec<Word>,
    pub right_graph: Vec<Word>,
}

/// Joins a pair by intersecting the reduction graphs of its two reducts.
pub fn resolve(pair: &CriticalPair) -> Result<Resolution, Box<NotJoinable>> {
    let left = reduction_graph(&pair.left_reduct);
    let right = reduction_graph(&pair.right_reduct);
    let common_reducts: Vec<Word> = left
        .nodes()
        .iter()
        .filter(|w| right.contains(w))
        .cloned()
        .collect();
    let Some(bound) = common_reducts.first().cloned() else {
        return Err(Box::new(NotJoinable {
            pair: pair.clone(),
            left_graph: left.nodes().to_vec(),
            right_graph: right.nodes().to_vec(),
        }));
    };
    let common: HashSet<&Word> = common_reducts.iter().collect();
    let closed_forms = instantiate_closed_forms(pair)
        .into_iter()
        .map(|(source, formula, word)| ClosedFormCheck {
            source,
            found: word.as_ref().is_some_and(|w| common.contains(w)),
            formula,
            word,
        })
        .collect();
    let mut pair = pair.clone();
    pair.bound_found = Some(bound);
    Ok(Resolution {
        pair,
        common_reducts,
        closed_forms,
    })
}

/// Random family-`I` parents `a μ b ν c`: `μ`, `ν` are redexes with indices at
/// most `max_index` and `a`, `b`, `c` random words of up to two letters.
pub fn sample_disjoint(count: usize, max_index: Index, seed: u64) -> Vec<CriticalPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters = alphabet(max_index);
    let letter = |rng: &mut ChaCha8Rng| letters[rng.gen_range(0..letters.len())];
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let filler = |rng: &mut ChaCha8Rng| {
            let len = rng.gen_range(0..=2);
            (0..len).map(|_| letter(rng)).collect::<Vec<_>>()
        };
        let (a, b, c) = (filler(&mut rng), filler(&mut rng), filler(&mut rng));
        let (m1, m2, n1, n2) = (
            letter(&mut rng),
            letter(&mut rng),
            letter(&mut rng),
            letter(&mut rng),
        );
        if !is_redex(m1, m2) || !is_redex(n1, n2) {
            continue;
        }
        let first = a.len();
        let second = first + 2 + b.len();
        let parent: Word = a
            .into_iter()
            .chain([m1, m2])
            .chain(b)
            .chain([n1, n2])
            .chain(c)
            .collect();
        out.push(CriticalPair::disjoint(parent, first, second).expect("sampled redexes"));
    }
    out
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct FamilyRow {
    pub family: String,
    pub instances: usize,
    pub joinable: usize,
    /// First instance's parent and common lower bound.
    pub sample: Option<(Word, Word)>,
    /// Per source: (instances where the closed form is a common reduct, instances checked).
    pub closed_form: BTreeMap<BoundSource, (usize, usize)>,
}

impl FamilyRow {
    pub fn closed_form_matches(&self, source: BoundSource) -> Option<bool> {
        self.closed_form
            .get(&source)
            .map(|(hit, of)| hit == of && *of > 0)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfluenceReport {
    pub max_index: Index,
    pub rows: Vec<FamilyRow>,
    pub not_instantiated: Vec<String>,
    pub failures: Vec<NotJoinable>,
    /// Words on which the family enumeration and the independent scan disagree.
    pub scan_mismatches: Vec<Word>,
    /// Scanned overlaps whose subcase conditions select zero or several subcases.
    pub partition_violations: Vec<Word>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.scan_mismatches.is_empty()
            && self.partition_violations.is_empty()
    }

    pub fn all_instantiated(&self) -> bool {
        self.not_instantiated.is_empty()
    }

    pub fn row(&self, family: Family) -> Option<&FamilyRow> {
        let label = family.label();
        self.rows.iter().find(|r| r.family == label)
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "{:<7} {:>9} {:>9}  {:<40} closed form\n",
            "family", "instances", "joinable", "sample bound"
        );
        for row in &self.rows {
            let sample = row
                .sample
                .as_ref()
                .map(|(p, b)| format!("{p} -> {b}"))
                .unwrap_or_else(|| "-".into());
            let closed: Vec<String> = row
                .closed_form
                .iter()
                .map(|(src, (hit, of))| format!("{}={hit}/{of}", source_name(*src)))
                .collect();
            out.push_str(&format!(
                "{:<7} {:>9} {:>9}  {:<40} {}\n",
                row.family,
                row.instances,
                row.joinable,
                sample,
                closed.join(" ")
            ));
        }
        for label in &self.not_instantiated {
            out.push_str(&format!(
                "{label}  NOT INSTANTIATED (max index {})\n",
                self.max_index
            ));
        }
        for f in &self.failures {
            out.push_str(&format!("{f}\n"));
        }
        for w in &self.scan_mismatches {
            out.push_str(&format!("overlap scan mismatch: {w}\n"));
        }
        for w in &self.partition_violations {
            out.push_str(&format!("subcase partition violated: {w}\n"));
        }
        out.push_str(if self.passed() {
            "local confluence  PASS\n"
        } else {
            "local confluence  FAIL\n"
        });
        out
    }
}

fn source_name(source: BoundSource) -> &'static str {
    match source {
        BoundSource::Stated => "stated",
        BoundSource::ChainEnd => "chain-end",
        BoundSource::Dual => "dual",
        BoundSource::BothSteps => "both-steps",
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AuditOptions {
    /// Number of family-`I` parents to sample.
    pub disjoint_samples: usize,
    pub seed: u64,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            disjoint_samples: 64,
            seed: 0x5eed,
        }
    }
}

/// Resolves every overlap with indices up to `max_index` plus a sample of
/// disjoint pairs, and tabulates the result per family.
pub fn audit_local_confluence(max_index: Index, options: AuditOptions) -> ConfluenceReport {
    let mut pairs = sample_disjoint(options.disjoint_samples, max_index, options.seed);
    let overlaps = enumerate_overlaps(max_index);

    let enumerated: HashSet<&Word> = overlaps.iter().map(|p| &p.parent).collect();
    let scanned = scan_overlaps(max_index);
    let scanned_set: HashSet<&Word> = scanned.iter().collect();
    let mut scan_mismatches: Vec<Word> = scanned
        .iter()
        .filter(|w| !enumerated.contains(w))
        .chain(
            enumerated
                .iter()
                .copied()
                .filter(|w| !scanned_set.contains(w)),
        )
        .cloned()
        .collect();
    scan_mismatches.sort();
    scan_mismatches.dedup();
    let partition_violations: Vec<Word> = scanned
        .iter()
        .filter(|w| {
            let l = w.letters();
            classify_overlap(l[0], l[1], l[2]).is_none()
        })
        .cloned()
        .collect();

    pairs.extend(overlaps);
    let results: Vec<Result<Resolution, Box<NotJoinable>>> =
        pairs.par_iter().map(resolve).collect();

    let mut rows: BTreeMap<Family, FamilyRow> = BTreeMap::new();
    rows.insert(Family::Disjoint, FamilyRow::default());
    for family in Family::overlaps() {
        rows.insert(family, FamilyRow::default());
    }
    let mut failures = Vec::new();
    for (pair, result) in pairs.iter().zip(results) {
        let row = rows.entry(pair.family).or_default();
        row.instances += 1;
        match result {
            Ok(res) => {
                row.joinable += 1;
                if row.sample.is_none() {
                    row.sample = Some((pair.parent.clone(), res.pair.bound_found.clone().unwrap()));
                }
                for check in res.closed_forms {
                    let entry = row.closed_form.entry(check.source).or_default();
                    entry.0 += usize::from(check.found);
                    entry.1 += 1;
                }
            }
            Err(e) => failures.push(*e),
        }
    }
    let not_instantiated = rows
        .iter()
        .filter(|(_, r)| r.instances == 0)
        .map(|(f, _)| f.label())
        .collect();
    let rows = rows
        .into_iter()
        .map(|(family, mut row)| {
            row.family = family.label();
            row
        })
        .collect();

    ConfluenceReport {
        max_index,
        rows,
        not_instantiated,
        failures,
        scan_mismatches,
        partition_violations,
    }
}

/// A step whose degree drop is not the one its rule prescribes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BadStep {
    pub before: Word,
    pub after: Word,
    pub case: RuleCase,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct TerminationReport {
    pub words: usize,
    pub steps_checked: usize,
    pub bad_steps: Vec<BadStep>,
    /// Words with a reduction sequence longer than their degree: (word, longest, degree).
    pub chain_violations: Vec<(Word, usize, u128)>,
    pub longest_chain: usize,
}

impl TerminationReport {
    pub fn passed(&self) -> bool {
        self.bad_steps.is_empty() && self.chain_violations.is_empty()
    }

    pub fn render(&self) -> String {
        format!(
            "termination  {} ({} words, {} steps, longest chain {})\n",
            if self.passed() { "PASS" } else { "FAIL" },
            self.words,
            self.steps_checked,
            self.longest_chain
        )
    }
}

/// For every word in range and every reachable step, checks the degree drops
/// by exactly 1 (2 for `ε_0 η_0 → 1`), and that no reduction sequence is
/// longer than the degree of its start.
pub fn audit_termination(max_len: usize, max_index: Index) -> TerminationReport {
    let words = all_words(max_len, max_index);
    let per_word: Vec<TerminationReport> = words
        .par_iter()
        .map(|w| {
            let graph = reduction_graph(w);
            let mut report = TerminationReport {
                words: 1,
                steps_checked: graph.edges().len(),
                ..Default::default()
            };
            for e in graph.edges() {
                let (before, after) = (&graph.nodes()[e.from], &graph.nodes()[e.to]);
                let drop = before.degree().checked_sub(after.degree());
                if drop != Some(e.case.degree_drop()) {
                    report.bad_steps.push(BadStep {
                        before: before.clone(),
                        after: after.clone(),
                        case: e.case,
                    });
                }
            }
            let longest = graph.longest_path();
            report.longest_chain = longest;
            if longest as u128 > w.degree() {
                report
                    .chain_violations
                    .push((w.clone(), longest, w.degree()));
            }
            report
        })
        .collect();
    per_word
        .into_iter()
        .fold(TerminationReport::default(), |mut acc, r| {
            acc.words += r.words;
            acc.steps_checked += r.steps_checked;
            acc.bad_steps.extend(r.bad_steps);
            acc.chain_violations.extend(r.chain_violations);
            acc.longest_chain = acc.longest_chain.max(r.longest_chain);
            acc
        })
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct UniquenessReport {
    pub words: usize,
    pub graph_nodes: usize,
    /// Words whose reduction graph has a sink other than the leftmost normal
    /// form, or a sink that is not canonical in shape: (word, sinks).
    pub disagreements: Vec<SinkDisagreement>,
}

impl UniquenessReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// A word together with the sinks of its reduction graph.
pub type SinkDisagreement = (Word, Vec<Word>);

/// For every word in range, every sink of the full reduction graph must be the
/// leftmost normal form and must have canonical shape.
pub fn audit_unique_normal_forms(max_len: usize, max_index: Index) -> UniquenessReport {
    let words = all_words(max_len, max_index);
    let per_word: Vec<(usize, Option<SinkDisagreement>)> = words
        .par_iter()
        .map(|w| {
            let graph = reduction_graph(w);
            let nf = crate::rewrite::normalize(w);
            let sinks: Vec<Word> = graph.sinks().into_iter().cloned().collect();
            let ok = sinks
                .iter()
                .all(|s| *s == nf && crate::rewrite::is_normal(s) && redexes(s).is_empty());
            (graph.node_count(), (!ok).then(|| (w.clone(), sinks)))
        })
        .collect();
    let mut report = UniquenessReport {
        words: words.len(),
        ..Default::default()
    };
    for (nodes, bad) in per_word {
        report.graph_nodes += nodes;
        report.disagreements.extend(bad);
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum OracleAnswer {
    Equivalent,
    /// Not connected by steps that stay within the degree bound. If
    /// `truncated`, some neighbour was pruned by the bound, so this is not a
    /// proof of inequivalence.
    NotEquivalentWithinBound {
        truncated: bool,
    },
}

impl OracleAnswer {
    pub fn is_equivalent(self) -> bool {
        self == OracleAnswer::Equivalent
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("`{word}` has degree {degree}, above the bound {bound}")]
    DegreeAboveBound {
        word: Word,
        degree: u128,
        bound: u64,
    },
}

/// Bidirectional closure of the rewrite relation on words of bounded degree.
///
/// Neighbours of a word are its one-step reducts and its one-step parents:
/// a factor equal to a rule's right-hand side replaced by the left-hand side,
/// including insertion of `ε_0 η_0` anywhere. Only words of degree at most
/// `max_degree` are visited.
pub struct Oracle {
    max_degree: u64,
    parents: HashMap<(Generator, Generator), Vec<[Generator; 2]>>,
    insertions: Vec<[Generator; 2]>,
}

impl Oracle {
    /// Inverse steps come from every rule instance whose left-hand letters
    /// have index at most `max_degree`.
    pub fn new(max_degree: u64) -> Self {
        let letters = alphabet(max_degree);
        let mut parents: HashMap<(Generator, Generator), Vec<[Generator; 2]>> = HashMap::new();
        let mut insertions = Vec::new();
        for &a in &letters {
            for &b in &letters {
                let Some(rule) = match_rule(a, b) else {
                    continue;
                };
                match rule.rhs.letters() {
                    [] => insertions.push([a, b]),
                    [x, y] => parents.entry((*x, *y)).or_default().push([a, b]),
                    other => unreachable!("rule rhs of length {}", other.len()),
                }
            }
        }
        Oracle {
            max_degree,
            parents,
            insertions,
        }
    }

    pub fn max_degree(&self) -> u64 {
        self.max_degree
    }

    /// One-step parents of `w` (words that rewrite to `w` in one step),
    /// ignoring the degree bound.
    pub fn parents_of(&self, w: &Word) -> Vec<(usize, Word)> {
        let letters = w.letters();
        let mut out = Vec::new();
        for p in 0..letters.len().saturating_sub(1) {
            if let Some(lhss) = self.parents.get(&(letters[p], letters[p + 1])) {
                for lhs in lhss {
                    out.push((p, w.splice(p, 2, lhs)));
                }
            }
        }
        for p in 0..=letters.len() {
            for lhs in &self.insertions {
                out.push((p, w.splice(p, 0, lhs)));
            }
        }
        out
    }

    /// Neighbours within the bound, and whether any neighbour was pruned.
    fn neighbours(&self, w: &Word) -> (Vec<Word>, bool) {
        let bound = u128::from(self.max_degree);
        let mut truncated = false;
        let mut out: Vec<Word> = redexes(w)
            .into_iter()
            .map(|(p, r)| w.splice(p, 2, r.rhs.letters()))
            .collect();
        for (_, parent) in self.parents_of(w) {
            if parent.degree() <= bound {
                out.push(parent);
            } else {
                truncated = true;
            }
        }
        (out, truncated)
    }

    fn check_bound(&self, w: &Word) -> Result<(), OracleError> {
        let degree = w.degree();
        if degree > u128::from(self.max_degree) {
            return Err(OracleError::DegreeAboveBound {
                word: w.clone(),
                degree,
                bound: self.max_degree,
            });
        }
        Ok(())
    }

    /// Breadth-first search from `u` for `v`.
    pub fn equivalent(&self, u: &Word, v: &Word) -> Result<OracleAnswer, OracleError> {
        self.check_bound(u)?;
        self.check_bound(v)?;
        let mut seen = HashSet::from([u.clone()]);
        let mut queue = VecDeque::from([u.clone()]);
        let mut truncated = false;
        while let Some(w) = queue.pop_front() {
            if w == *v {
                return Ok(OracleAnswer::Equivalent);
            }
            let (next, cut) = self.neighbours(&w);
            truncated |= cut;
            for n in next {
                if seen.insert(n.clone()) {
                    queue.push_back(n);
                }
            }
        }
        Ok(OracleAnswer::NotEquivalentWithinBound { truncated })
    }

    /// The bounded connected component of `u`, and whether it was truncated.
    pub fn component(&self, u: &Word) -> Result<(HashSet<Word>, bool), OracleError> {
        self.check_bound(u)?;
        let mut seen = HashSet::from([u.clone()]);
        let mut queue = VecDeque::from([u.clone()]);
        let mut truncated = false;
        while let Some(w) = queue.pop_front() {
            let (next, cut) = self.neighbours(&w);
            truncated |= cut;
            for n in next {
                if seen.insert(n.clone()) {
                    queue.push_back(n);
                }
            }
        }
        Ok((seen, truncated))
    }
}

pub fn equivalent_bounded(
    u: &Word,
    v: &Word,
    max_degree: u64,
) -> Result<OracleAnswer, OracleError> {
    Oracle::new(max_degree).equivalent(u, v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub u: Word,
    pub v: Word,
    pub oracle: OracleAnswer,
    pub normal_forms_equal: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct OracleReport {
    pub words: usize,
    pub pairs: usize,
    pub components: usize,
    pub agree_equivalent: usize,
    pub agree_distinct: usize,
    /// Pairs compared where the oracle's search was cut by the bound.
    pub truncated_pairs: usize,
    pub discrepancies: Vec<Discrepancy>,
    /// Words skipped because their degree exceeds the bound.
    pub skipped: usize,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn render(&self) -> String {
        format!(
            "oracle  {} ({} words, {} pairs, {} components; {} equivalent, {} distinct, {} discrepancies)\n",
            if self.passed() { "PASS" } else { "FAIL" },
            self.words,
            self.pairs,
            self.components,
            self.agree_equivalent,
            self.agree_distinct,
            self.discrepancies.len()
        )
    }
}

/// Compares the oracle with normal-form equality on all unordered pairs of
/// words with at most `max_len` letters and indices at most `max_index`.
///
/// Components are explored once and shared between pairs. If two words have
/// the same normal form, reducing both to it never raises the degree, so the
/// oracle must connect them; a `NotEquivalentWithinBound` answer on such a
/// pair counts as a discrepancy too.
pub fn cross_check_oracle(max_len: usize, max_index: Index, max_degree: u64) -> OracleReport {
    let oracle = Oracle::new(max_degree);
    let bound = u128::from(max_degree);
    let (words, skipped): (Vec<Word>, Vec<Word>) = all_words(max_len, max_index)
        .into_iter()
        .partition(|w| w.degree() <= bound);

    let mut component_of: HashMap<Word, usize> = HashMap::new();
    let mut truncated = Vec::new();
    for w in &words {
        if component_of.contains_key(w) {
            continue;
        }
        let (members, cut) = oracle.component(w).expect("degree checked above");
        let id = truncated.len();
        truncated.push(cut);
        for m in members {
            component_of.insert(m, id);
        }
    }

    let nfs: Vec<Word> = words.par_iter().map(crate::rewrite::normalize).collect();
    let comp: Vec<usize> = words.iter().map(|w| component_of[w]).collect();
    let mut report = OracleReport {
        words: words.len(),
        components: truncated.len(),
        skipped: skipped.len(),
        ..Default::default()
    };
    for a in 0..words.len() {
        for b in a..words.len() {
            report.pairs += 1;
            let same_nf = nfs[a] == nfs[b];
            let answer = if comp[a] == comp[b] {
                OracleAnswer::Equivalent
            } else {
                let cut = truncated[comp[a]];
                report.truncated_pairs += usize::from(cut);
                OracleAnswer::NotEquivalentWithinBound { truncated: cut }
            };
            match (answer.is_equivalent(), same_nf) {
                (true, true) => report.agree_equivalent += 1,
                (false, false) => report.agree_distinct += 1,
                _ => report.discrepancies.push(Discrepancy {
                    u: words[a].clone(),
                    v: words[b].clone(),
                    oracle: answer,
                    normal_forms_equal: same_nf,
                }),
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn pair_for(parent: &str) -> CriticalPair {
        let parent = w(parent);
        enumerate_overlaps(parent.largest_index().unwrap().max(2))
            .into_iter()
            .find(|p| p.parent == parent)
            .unwrap()
    }

    #[test]
    fn overlap_examples() {
        let pairs = enumerate_overlaps(2);
        let tagged = |s: &str| pairs.iter().find(|p| p.parent == w(s)).map(|p| p.family);
        assert_eq!(tagged("e0 e1 e2"), Some(Family::EpsEpsEps));
        assert_eq!(tagged("e0 e1 h2"), Some(Family::EpsEpsEta(Subcase::B)));
        let family_ii = pairs
            .iter()
            .filter(|p| p.family == Family::EpsEpsEps)
            .count();
        assert_eq!(family_ii, 1);
    }

    #[test]
    fn resolve_examples() {
        let r = resolve(&pair_for("e0 e1 e2")).unwrap();
        assert!(r.common_reducts.contains(&w("e0 e0 e0")));

        let p = pair_for("e0 e3 h2");
        assert_eq!(p.family, Family::EpsEpsEta(Subcase::D));
        let r = resolve(&p).unwrap();
        assert!(r.common_reducts.contains(&w("h1 e1 e0")));
        assert!(r.closed_forms.iter().all(|c| c.found));

        let p = pair_for("e0 h3 h2");
        assert_eq!(p.family, Family::EpsEtaEta(Subcase::G));
        let r = resolve(&p).unwrap();
        assert!(r.common_reducts.contains(&w("h1 h1 e0")));
        let chain_end = r
            .closed_forms
            .iter()
            .find(|c| c.source == BoundSource::ChainEnd)
            .unwrap();
        assert_eq!(chain_end.formula, "h_{k-1} h_{j-2} e_i");
        assert!(chain_end.found);
        let stated = r
            .closed_forms
            .iter()
            .find(|c| c.source == BoundSource::Stated)
            .unwrap();
        assert_eq!(stated.word, None);
        assert!(!stated.found);
    }

    #[test]
    fn disjoint_example() {
        let p = CriticalPair::disjoint(w("e0 h0 e0 h0"), 0, 2).unwrap();
        assert_eq!(p.left_reduct, w("e0 h0"));
        assert_eq!(p.right_reduct, w("e0 h0"));
        let r = resolve(&p).unwrap();
        assert_eq!(r.closed_forms.len(), 1);
        assert_eq!(r.closed_forms[0].word, Some(Word::empty()));
        assert!(r.closed_forms[0].found);
        assert!(CriticalPair::disjoint(w("e0 e1 h2"), 0, 1).is_err());
    }

    #[test]
    fn disjoint_closed_form_accounts_for_shrinking() {
        // left rewrite removes two letters
        let p = CriticalPair::disjoint(w("e0 h0 h1 e2 e3"), 0, 3).unwrap();
        let r = resolve(&p).unwrap();
        assert_eq!(r.closed_forms[0].word, Some(w("h1 e2 e2")));
        assert!(r.closed_forms[0].found);
    }

    #[test]
    fn subcase_conditions_partition() {
        for i in 0..9 {
            for j in 0..9 {
                for k in 0..9 {
                    let hits = |c: [bool; 7]| c.iter().filter(|b| **b).count();
                    if i < j {
                        assert_eq!(hits(eps_eps_eta_conditions(i, j, k)), 1, "IV {i} {j} {k}");
                    }
                    if j > k {
                        assert_eq!(hits(eps_eta_eta_conditions(i, j, k)), 1, "V {i} {j} {k}");
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_matches_scan() {
        for max in 0..5 {
            let mut enumerated: Vec<Word> = enumerate_overlaps(max)
                .into_iter()
                .map(|p| p.parent)
                .collect();
            enumerated.sort();
            assert_eq!(enumerated, scan_overlaps(max), "max index {max}");
        }
    }

    #[test]
    fn small_audit_reports_missing_subcases() {
        let report = audit_local_confluence(
            2,
            AuditOptions {
                disjoint_samples: 8,
                seed: 1,
            },
        );
        assert!(report.passed(), "{}", report.render());
        assert!(!report.all_instantiated());
        assert!(report.not_instantiated.contains(&"IV_d".to_string()));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(
            equivalent_bounded(&w("e0 h0"), &Word::empty(), 6),
            Ok(OracleAnswer::Equivalent)
        );
        let answer = equivalent_bounded(&w("h0 e0"), &Word::empty(), 8).unwrap();
        assert!(!answer.is_equivalent());
        assert_eq!(
            equivalent_bounded(&w("h3 e1"), &w("h3 e1"), 6),
            Ok(OracleAnswer::Equivalent)
        );
        assert!(matches!(
            equivalent_bounded(&w("h9"), &Word::empty(), 6),
            Err(OracleError::DegreeAboveBound { .. })
        ));
    }

    #[test]
    fn oracle_parents_rewrite_back() {
        let oracle = Oracle::new(5);
        for word in all_words(2, 2) {
            for (p, parent) in oracle.parents_of(&word) {
                let after = apply(&parent, p).expect("parent has a redex where it was expanded");
                assert_eq!(after, word);
                let rule = crate::rewrite::step(&parent, p).unwrap().rule;
                assert_eq!(parent.degree() - word.degree(), rule.case.degree_drop());
            }
        }
    }

    #[test]
    fn small_cross_check() {
        let report = cross_check_oracle(2, 1, 6);
        assert!(report.passed(), "{:?}", report.discrepancies);
        assert!(report.agree_equivalent > report.words);
    }
}
