//! The presented monoid as an algebra.
//!
//! Elements are stored as canonical words, so equality of elements is
//! equality of their normal forms. On top of the product this module provides
//! the shift endomorphism `f` (`η_k ↦ η_{k+1}`, `ε_k ↦ ε_{k+1}`), the defining
//! identities of an adjunction-in-monoids checked by brute force, bounded
//! evidence about the submonoid `N = ε f(M)`, and the evaluation of the
//! conditions equivalent to `f` being an isomorphism.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::rewrite::{is_normal, normalize, normalize_trace, Trace};
use crate::words::{all_words, Generator, Index, ParseError, Word};

/// An element of the monoid, held as its canonical word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element {
    nf: Word,
}

impl Element {
    /// The class of `w`.
    pub fn new(w: &Word) -> Self {
        Element { nf: normalize(w) }
    }

    /// Wraps `w` if it is already canonical.
    pub fn from_normal(w: Word) -> Option<Self> {
        is_normal(&w).then_some(Element { nf: w })
    }

    pub fn identity() -> Self {
        Element { nf: Word::empty() }
    }

    pub fn eta() -> Self {
        Element {
            nf: Word::from_letters([Generator::eta(0)]),
        }
    }

    pub fn eps() -> Self {
        Element {
            nf: Word::from_letters([Generator::eps(0)]),
        }
    }

    pub fn nf(&self) -> &Word {
        &self.nf
    }

    pub fn into_nf(self) -> Word {
        self.nf
    }

    pub fn is_identity(&self) -> bool {
        self.nf.is_empty()
    }

    pub fn mul(&self, other: &Element) -> Element {
        Element::new(&self.nf.concat(&other.nf))
    }

    /// `f` on elements. Shifting every index keeps a canonical word canonical,
    /// so no renormalization is needed.
    pub fn apply_f(&self) -> Element {
        Element {
            nf: apply_f_word(&self.nf),
        }
    }

    /// `f^n` on elements.
    pub fn apply_f_pow(&self, n: Index) -> Element {
        Element {
            nf: apply_f_pow_word(&self.nf, n),
        }
    }

    pub fn pow(&self, n: u32) -> Element {
        (0..n).fold(Element::identity(), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.nf.fmt(f)
    }
}

impl FromStr for Element {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse::<Word>().map(|w| Element::new(&w))
    }
}

/// `f` on words: every index goes up by one.
pub fn apply_f_word(w: &Word) -> Word {
    w.shifted(1)
}

/// `f^n` on words.
pub fn apply_f_pow_word(w: &Word, n: Index) -> Word {
    w.shifted(n)
}

/// Canonical words of length at most `max_len` with indices at most
/// `max_index`, ordered by length and then lexicographically.
pub fn normal_words(max_len: usize, max_index: Index) -> Vec<Word> {
    all_words(max_len, max_index)
        .into_iter()
        .filter(is_normal)
        .collect()
}

// Partitions of `n` into parts of size at most `max_part`, parts listed in
// non-increasing order.
fn partitions(n: u64, max_part: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (1..=max_part.min(n)).rev() {
        prefix.push(part);
        partitions(n - part, part, prefix, out);
        prefix.pop();
    }
}

/// All canonical words of degree exactly `degree`.
///
/// A canonical word is an η-block and an ε-block whose letter degrees are two
/// partitions, so this walks pairs of partitions with the right total.
pub fn normal_words_of_degree(degree: u64) -> Vec<Word> {
    let mut out = Vec::new();
    for eta_part in 0..=degree {
        let mut etas = Vec::new();
        partitions(eta_part, eta_part, &mut Vec::new(), &mut etas);
        let mut epss = Vec::new();
        let rest = degree - eta_part;
        partitions(rest, rest, &mut Vec::new(), &mut epss);
        for e in &etas {
            for d in &epss {
                let letters = e
                    .iter()
                    .rev()
                    .map(|&w| Generator::eta(w - 1))
                    .chain(d.iter().map(|&w| Generator::eps(w - 1)));
                out.push(Word::from_letters(letters));
            }
        }
    }
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// One identity, checked on every instance in a range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub id: &'static str,
    pub formula: &'static str,
    pub instances: usize,
    pub failure: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// The instantiated variables, space-joined with `,` between variables.
    pub at: String,
    pub lhs: Word,
    pub rhs: Word,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// `"<id>  PASS (n instances)"` or `"<id>  FAIL at m=<word>: lhs=<nf> rhs=<nf>"`.
    pub fn render(&self) -> String {
        match &self.failure {
            None => format!("{}  PASS ({} instances)", self.id, self.instances),
            Some(c) => format!(
                "{}  FAIL at m={}: lhs={} rhs={}",
                self.id, c.at, c.lhs, c.rhs
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }

    pub fn get(&self, id: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn render(&self) -> String {
        self.checks.iter().map(|c| c.render() + "\n").collect()
    }
}

type Side = fn(&[Word]) -> Word;

struct Identity {
    id: &'static str,
    formula: &'static str,
    lhs: Side,
    rhs: Side,
}

fn check_identity(identity: &Identity, instances: &[Vec<Word>]) -> IdentityCheck {
    let failure = instances.par_iter().find_map_first(|vars| {
        let lhs = normalize(&(identity.lhs)(vars));
        let rhs = normalize(&(identity.rhs)(vars));
        (lhs != rhs).then(|| Counterexample {
            at: vars
                .iter()
                .map(Word::to_string)
                .collect::<Vec<_>>()
                .join(", "),
            lhs,
            rhs,
        })
    });
    IdentityCheck {
        id: identity.id,
        formula: identity.formula,
        instances: instances.len(),
        failure,
    }
}

fn eta0() -> Word {
    Word::from_letters([Generator::eta(0)])
}

fn eps0() -> Word {
    Word::from_letters([Generator::eps(0)])
}

fn cat(parts: &[&Word]) -> Word {
    parts.iter().fold(Word::empty(), |acc, w| acc.concat(w))
}

const CONSTANT_IDENTITIES: [Identity; 3] = [
    Identity {
        id: "eps-eta",
        formula: "ε η = 1",
        lhs: |_| cat(&[&eps0(), &eta0()]),
        rhs: |_| Word::empty(),
    },
    Identity {
        id: "eps-f-eta",
        formula: "ε f(η) = 1",
        lhs: |_| cat(&[&eps0(), &apply_f_word(&eta0())]),
        rhs: |_| Word::empty(),
    },
    Identity {
        id: "eps-f-eps",
        formula: "ε f(ε) = ε ε",
        lhs: |_| cat(&[&eps0(), &apply_f_word(&eps0())]),
        rhs: |_| cat(&[&eps0(), &eps0()]),
    },
];

const UNARY_IDENTITIES: [Identity; 4] = [
    Identity {
        id: "eps-f2-m",
        formula: "ε f²(m) = f(m) ε",
        lhs: |v| cat(&[&eps0(), &apply_f_pow_word(&v[0], 2)]),
        rhs: |v| cat(&[&apply_f_word(&v[0]), &eps0()]),
    },
    Identity {
        id: "f-m-eta",
        formula: "f(m) η = η m",
        lhs: |v| cat(&[&apply_f_word(&v[0]), &eta0()]),
        rhs: |v| cat(&[&eta0(), &v[0]]),
    },
    Identity {
        id: "eps-f-eps-f-m",
        formula: "ε f(ε f(m)) = ε f(m) ε",
        lhs: |v| {
            cat(&[
                &eps0(),
                &apply_f_word(&cat(&[&eps0(), &apply_f_word(&v[0])])),
            ])
        },
        rhs: |v| cat(&[&eps0(), &apply_f_word(&v[0]), &eps0()]),
    },
    Identity {
        id: "m-sandwich",
        formula: "m = ε f(m) η",
        lhs: |v| v[0].clone(),
        rhs: |v| cat(&[&eps0(), &apply_f_word(&v[0]), &eta0()]),
    },
];

const N_PRODUCT: Identity = Identity {
    id: "n-product",
    formula: "ε f(m1) ε f(m2) = ε f(ε f(m1) m2)",
    lhs: |v| cat(&[&eps0(), &apply_f_word(&v[0]), &eps0(), &apply_f_word(&v[1])]),
    rhs: |v| {
        cat(&[
            &eps0(),
            &apply_f_word(&cat(&[&eps0(), &apply_f_word(&v[0]), &v[1]])),
        ])
    },
};

const N_RETRACT: Identity = Identity {
    id: "n-retract",
    formula: "n = ε f(n η)   (n = ε f(m))",
    lhs: |v| n_of(&v[0]),
    rhs: |v| cat(&[&eps0(), &apply_f_word(&cat(&[&n_of(&v[0]), &eta0()]))]),
};

/// `ε f(m)`, the general element of `N`, as an unreduced word.
pub fn n_of(m: &Word) -> Word {
    cat(&[&eps0(), &apply_f_word(m)])
}

/// Checks the defining identities on every canonical `m` with at most
/// `max_len` letters and indices at most `max_index`:
///
/// * `ε η = 1`, `ε f(η) = 1`, `ε f(ε) = ε²`
/// * `ε f²(m) = f(m) ε` and `f(m) η = η m`
/// * `ε f(ε f(m)) = ε f(m) ε` (the form of `ε f(n) = n ε` that ranges over all of `M`)
/// * `m = ε f(m) η`
///
/// Both sides are built as words and compared after normalization.
pub fn check_axioms(max_len: usize, max_index: Index) -> IdentityReport {
    let constants = vec![Vec::new()];
    let elements: Vec<Vec<Word>> = normal_words(max_len, max_index)
        .into_iter()
        .map(|m| vec![m])
        .collect();
    let mut checks: Vec<_> = CONSTANT_IDENTITIES
        .iter()
        .map(|id| check_identity(id, &constants))
        .collect();
    checks.extend(
        UNARY_IDENTITIES
            .iter()
            .map(|id| check_identity(id, &elements)),
    );
    IdentityReport { checks }
}

/// Closure of `N` under products, `ε f(m1) · ε f(m2) = ε f(ε f(m1) m2)`, for all
/// canonical `m1, m2` in range, and `n = ε f(n η)` for `n = ε f(m)`.
pub fn check_n_closure(max_len: usize, max_index: Index) -> IdentityReport {
    let ms = normal_words(max_len, max_index);
    let pairs: Vec<Vec<Word>> = ms
        .iter()
        .flat_map(|a| ms.iter().map(move |b| vec![a.clone(), b.clone()]))
        .collect();
    let singles: Vec<Vec<Word>> = ms.into_iter().map(|m| vec![m]).collect();
    IdentityReport {
        checks: vec![
            check_identity(&N_PRODUCT, &pairs),
            check_identity(&N_RETRACT, &singles),
        ],
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Membership {
    /// `normalize(ε f(witness))` is the queried element.
    Member { witness: Word },
    /// No witness of degree at most `bound`. Not a proof of non-membership.
    NotFoundWithin { bound: u64 },
}

impl Membership {
    pub fn witness(&self) -> Option<&Word> {
        match self {
            Membership::Member { witness } => Some(witness),
            Membership::NotFoundWithin { .. } => None,
        }
    }
}

/// Bounded search for `m'` with `ε f(m') = a`, trying canonical `m'` by
/// increasing degree up to `search_bound`.
pub fn in_n(a: &Element, search_bound: u64) -> Membership {
    for degree in 0..=search_bound {
        for m in normal_words_of_degree(degree) {
            if normalize(&n_of(&m)) == *a.nf() {
                return Membership::Member { witness: m };
            }
        }
    }
    Membership::NotFoundWithin {
        bound: search_bound,
    }
}

/// Precomputed [`in_n`]: the first witness, in the same search order, for
/// every element of the form `ε f(m')` with `degree(m') ≤ bound`.
pub struct NIndex {
    bound: u64,
    witnesses: HashMap<Word, Word>,
}

impl NIndex {
    pub fn new(bound: u64) -> Self {
        let mut witnesses = HashMap::new();
        for degree in 0..=bound {
            for m in normal_words_of_degree(degree) {
                witnesses.entry(normalize(&n_of(&m))).or_insert(m);
            }
        }
        NIndex { bound, witnesses }
    }

    pub fn len(&self) -> usize {
        self.witnesses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn lookup(&self, a: &Element) -> Membership {
        match self.witnesses.get(a.nf()) {
            Some(m) => Membership::Member { witness: m.clone() },
            None => Membership::NotFoundWithin { bound: self.bound },
        }
    }
}

/// The witness `ε f(m1) m2` for the product `ε f(m1) · ε f(m2)`.
pub fn n_product_witness(m1: &Word, m2: &Word) -> Word {
    normalize(&n_of(m1).concat(m2))
}

/// A decided condition together with the equation instance that decided it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub holds: bool,
    pub statement: &'static str,
    /// Variable assignment of the deciding instance, when the condition is
    /// quantified.
    pub at: Option<Word>,
    pub lhs: Word,
    pub rhs: Word,
}

impl Condition {
    fn compare(statement: &'static str, at: Option<Word>, lhs: Word, rhs: Word) -> Self {
        let (lhs, rhs) = (normalize(&lhs), normalize(&rhs));
        Condition {
            holds: lhs == rhs,
            statement,
            at,
            lhs,
            rhs,
        }
    }

    pub fn render(&self) -> String {
        let verdict = if self.holds { "holds" } else { "fails" };
        let at = self
            .at
            .as_ref()
            .map(|m| format!(" at m={m}"))
            .unwrap_or_default();
        let rel = if self.holds { "=" } else { "≠" };
        format!(
            "{}  {}{}: {} {} {}",
            self.statement, verdict, at, self.lhs, rel, self.rhs
        )
    }
}

/// The decidable conditions that are each equivalent to `f` being an
/// isomorphism, evaluated by normal-form comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoConditions {
    pub f_fixes_eta: Condition,
    pub f_fixes_eps: Condition,
    pub eta_eps_is_one: Condition,
    /// `f(m) = η m ε` for every `m`; refuted by the first failing `m`.
    pub f_is_inner: Condition,
    /// `f` surjective, `f` an isomorphism, `N = M`. Not decided directly:
    /// they are equivalent to the four conditions above.
    pub derived_iso: bool,
}

/// Conclusion for the undecided conditions from the decided ones.
pub fn derive_iso(decided: [bool; 4]) -> bool {
    decided.iter().all(|b| *b)
}

impl IsoConditions {
    pub fn decided(&self) -> [bool; 4] {
        [
            self.f_fixes_eta.holds,
            self.f_fixes_eps.holds,
            self.eta_eps_is_one.holds,
            self.f_is_inner.holds,
        ]
    }

    /// The equivalent conditions agree with each other.
    pub fn consistent(&self) -> bool {
        let d = self.decided();
        d.iter().all(|b| *b == d[0])
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in [
            &self.f_fixes_eta,
            &self.f_fixes_eps,
            &self.eta_eps_is_one,
            &self.f_is_inner,
        ] {
            out.push_str(&c.render());
            out.push('\n');
        }
        out.push_str(&format!(
            "f surjective / f iso / N = M  {} (equivalent to the above)\n",
            if self.derived_iso { "hold" } else { "fail" }
        ));
        out
    }
}

pub fn iso_conditions() -> IsoConditions {
    let eta = eta0();
    let eps = eps0();
    let f_fixes_eta = Condition::compare("f(η) = η", None, apply_f_word(&eta), eta.clone());
    let f_fixes_eps = Condition::compare("f(ε) = ε", None, apply_f_word(&eps), eps.clone());
    let eta_eps_is_one = Condition::compare("η ε = 1", None, eta.concat(&eps), Word::empty());

    // Try m in enumeration order; the identity already fails at m = 1.
    let candidates = normal_words(2, 1);
    let f_is_inner = candidates
        .iter()
        .map(|m| {
            Condition::compare(
                "f(m) = η m ε",
                Some(m.clone()),
                apply_f_word(m),
                cat(&[&eta, m, &eps]),
            )
        })
        .find(|c| !c.holds)
        .unwrap_or_else(|| {
            let m = candidates.last().cloned().unwrap_or_default();
            Condition::compare(
                "f(m) = η m ε",
                Some(m.clone()),
                apply_f_word(&m),
                cat(&[&eta, &m, &eps]),
            )
        });

    let mut report = IsoConditions {
        f_fixes_eta,
        f_fixes_eps,
        eta_eps_is_one,
        f_is_inner,
        derived_iso: false,
    };
    report.derived_iso = derive_iso(report.decided());
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Outcome {
    /// `ηε = 1`: every adjunction between monoids is an isomorphism.
    #[serde(rename = "ISO")]
    Iso,
    /// `ηε ≠ 1` in the initial object, so some adjunction is not.
    #[serde(rename = "NOT_ISO")]
    NotIso,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Iso => "ISO",
            Outcome::NotIso => "NOT_ISO",
        })
    }
}

/// Whether the unit of the universal adjunction between monoids is invertible.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub outcome: Outcome,
    /// `normalize(η ε)`.
    pub witness: Word,
    /// Reduction of `η ε`; empty because it is already canonical.
    pub witness_trace: Trace,
    /// Reduction of `ε η` to `1`.
    pub counit_trace: Trace,
    /// `(ηε)² = ηε`.
    pub eta_eps_idempotent: bool,
    pub conditions: IsoConditions,
}

fn steps(n: usize) -> String {
    match n {
        0 => "already normal".to_string(),
        1 => "1 step".to_string(),
        n => format!("{n} steps"),
    }
}

impl Verdict {
    /// Normal forms are unique only because the rewrite system is confluent;
    /// [`crate::confluence::audit_local_confluence`] re-checks that.
    pub const CERTIFICATE: &'static str = "confluence::audit_local_confluence";

    pub fn render(&self) -> String {
        let mut out = format!("verdict  {}\n", self.outcome);
        out.push_str(&format!(
            "η ε  normalizes to {} ({}), canonical and ≠ 1\n",
            self.witness,
            steps(self.witness_trace.len())
        ));
        out.push_str(&format!(
            "ε η  normalizes to {} ({})\n",
            self.counit_trace.normal_form(),
            steps(self.counit_trace.len())
        ));
        out.push_str(&format!(
            "(η ε)² = η ε  {}\n",
            if self.eta_eps_idempotent {
                "holds"
            } else {
                "fails"
            }
        ));
        out.push_str(&self.conditions.render());
        out
    }
}

pub fn answer_open_question() -> Verdict {
    let eta_eps = eta0().concat(&eps0());
    let witness_trace = normalize_trace(&eta_eps);
    let witness = witness_trace.normal_form().clone();
    let counit_trace = normalize_trace(&eps0().concat(&eta0()));
    let ee = Element::new(&eta_eps);
    let outcome = if witness.is_empty() {
        Outcome::Iso
    } else {
        Outcome::NotIso
    };
    Verdict {
        outcome,
        witness,
        witness_trace,
        counit_trace,
        eta_eps_idempotent: ee.mul(&ee) == ee,
        conditions: iso_conditions(),
    }
}
