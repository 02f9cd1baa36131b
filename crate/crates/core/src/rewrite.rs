//! The rewrite relation on words, and normalization.
//!
//! Every rule rewrites a two-letter factor:
//!
//! ```text
//! ε_i ε_j  →  ε_{j-1} ε_i          (j > i)
//! η_j η_i  →  η_i η_{j-1}          (j > i)
//! ε_i η_j  →  η_{j-1} ε_i          (j > i+1)
//!          →  η_j ε_{i-1}          (i > j)
//!          →  ε_{i-1} η_i          (i = j > 0)
//!          →  ε_i η_i              (j = i+1)
//!          →  1                    (i = j = 0)
//! ```
//!
//! Each step lowers the degree by exactly one, except the last rule which
//! lowers it by two. Words without a redex are exactly the canonical forms
//! `η_{i1}…η_{ik} ε_{j1}…ε_{jl}` with `i1 ≤ … ≤ ik` and `j1 ≥ … ≥ jl`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::{Generator, Kind, Word};

/// Which rule schema a redex instantiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RuleCase {
    EpsEps,
    EtaEta,
    #[serde(rename = "EpsEta_JGtIPlus1")]
    EpsEtaJGtIPlus1,
    #[serde(rename = "EpsEta_IGtJ")]
    EpsEtaIGtJ,
    #[serde(rename = "EpsEta_IEqJPos")]
    EpsEtaIEqJPos,
    #[serde(rename = "EpsEta_JEqIPlus1")]
    EpsEtaJEqIPlus1,
    #[serde(rename = "EpsEta_Zero")]
    EpsEtaZero,
}

impl RuleCase {
    pub const ALL: [RuleCase; 7] = [
        RuleCase::EpsEps,
        RuleCase::EtaEta,
        RuleCase::EpsEtaJGtIPlus1,
        RuleCase::EpsEtaIGtJ,
        RuleCase::EpsEtaIEqJPos,
        RuleCase::EpsEtaJEqIPlus1,
        RuleCase::EpsEtaZero,
    ];

    /// The five `ε_i η_j` schemas, in the order of [`eps_eta_conditions`].
    pub const EPS_ETA: [RuleCase; 5] = [
        RuleCase::EpsEtaJGtIPlus1,
        RuleCase::EpsEtaIGtJ,
        RuleCase::EpsEtaIEqJPos,
        RuleCase::EpsEtaJEqIPlus1,
        RuleCase::EpsEtaZero,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            RuleCase::EpsEps => "EpsEps",
            RuleCase::EtaEta => "EtaEta",
            RuleCase::EpsEtaJGtIPlus1 => "EpsEta_JGtIPlus1",
            RuleCase::EpsEtaIGtJ => "EpsEta_IGtJ",
            RuleCase::EpsEtaIEqJPos => "EpsEta_IEqJPos",
            RuleCase::EpsEtaJEqIPlus1 => "EpsEta_JEqIPlus1",
            RuleCase::EpsEtaZero => "EpsEta_Zero",
        }
    }

    /// Degree lost by one application of the rule.
    pub fn degree_drop(self) -> u128 {
        match self {
            RuleCase::EpsEtaZero => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for RuleCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// The side conditions of the five `ε_i η_j` schemas, evaluated separately.
///
/// Exactly one entry is true for every `(i, j)`.
pub fn eps_eta_conditions(i: u64, j: u64) -> [bool; 5] {
    let (i, j) = (u128::from(i), u128::from(j));
    [
        j > i + 1,
        i > j,
        i == j && i > 0,
        j == i + 1,
        i == 0 && j == 0,
    ]
}

/// A concrete rule `lhs → rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RuleInstance {
    pub case: RuleCase,
    pub lhs: Word,
    pub rhs: Word,
}

/// The unique rule whose left-hand side is `a b`, if any.
pub fn match_rule(a: Generator, b: Generator) -> Option<RuleInstance> {
    use Generator as G;
    let (case, rhs) = match (a.kind, b.kind) {
        (Kind::Eps, Kind::Eps) if b.index > a.index => {
            (RuleCase::EpsEps, vec![G::eps(b.index - 1), G::eps(a.index)])
        }
        (Kind::Eta, Kind::Eta) if a.index > b.index => {
            (RuleCase::EtaEta, vec![G::eta(b.index), G::eta(a.index - 1)])
        }
        (Kind::Eps, Kind::Eta) => {
            let (i, j) = (a.index, b.index);
            if j > i && j - i > 1 {
                (RuleCase::EpsEtaJGtIPlus1, vec![G::eta(j - 1), G::eps(i)])
            } else if i > j {
                (RuleCase::EpsEtaIGtJ, vec![G::eta(j), G::eps(i - 1)])
            } else if i == j && i > 0 {
                (RuleCase::EpsEtaIEqJPos, vec![G::eps(i - 1), G::eta(i)])
            } else if j > i {
                (RuleCase::EpsEtaJEqIPlus1, vec![G::eps(i), G::eta(i)])
            } else {
                (RuleCase::EpsEtaZero, Vec::new())
            }
        }
        _ => return None,
    };
    Some(RuleInstance {
        case,
        lhs: Word::from_letters([a, b]),
        rhs: Word::from(rhs),
    })
}

pub fn is_redex(a: Generator, b: Generator) -> bool {
    match (a.kind, b.kind) {
        (Kind::Eps, Kind::Eps) => b.index > a.index,
        (Kind::Eta, Kind::Eta) => a.index > b.index,
        (Kind::Eps, Kind::Eta) => true,
        (Kind::Eta, Kind::Eps) => false,
    }
}

/// Every redex of `w`, by position.
pub fn redexes(w: &Word) -> Vec<(usize, RuleInstance)> {
    w.letters()
        .windows(2)
        .enumerate()
        .filter_map(|(p, pair)| match_rule(pair[0], pair[1]).map(|r| (p, r)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("no redex at position {position} of `{word}`")]
    NotARedex { word: Word, position: usize },
}

/// One rewrite `L·lhs·R → L·rhs·R` with `|L| = position`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub position: usize,
    pub rule: RuleInstance,
    pub before: Word,
    pub after: Word,
}

/// Rewrites the redex at `position`.
pub fn step(w: &Word, position: usize) -> Result<Step, RewriteError> {
    let rule = w
        .letters()
        .get(position..position + 2)
        .and_then(|pair| match_rule(pair[0], pair[1]))
        .ok_or_else(|| RewriteError::NotARedex {
            word: w.clone(),
            position,
        })?;
    let after = w.splice(position, 2, rule.rhs.letters());
    Ok(Step {
        position,
        rule,
        before: w.clone(),
        after,
    })
}

pub fn apply(w: &Word, position: usize) -> Result<Word, RewriteError> {
    step(w, position).map(|s| s.after)
}

/// A reduction sequence `start = m0 → m1 → … → mn`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub start: Word,
    pub steps: Vec<Step>,
}

impl Trace {
    pub fn normal_form(&self) -> &Word {
        self.steps.last().map_or(&self.start, |s| &s.after)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// One line per step, `"<word>  [<case> @ <position>]"` where `<word>` is
    /// the word being rewritten, then a final line holding the normal form.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&format!(
                "{}  [{} @ {}]\n",
                s.before, s.rule.case, s.position
            ));
        }
        out.push_str(&self.normal_form().to_string());
        out.push('\n');
        out
    }

    pub fn to_record(&self) -> TraceRecord {
        TraceRecord {
            start: self.start.clone(),
            steps: self
                .steps
                .iter()
                .map(|s| TraceStepRecord {
                    position: s.position,
                    case: s.rule.case,
                    after: s.after.clone(),
                })
                .collect(),
            normal_form: self.normal_form().clone(),
        }
    }
}

/// Machine-readable form of a [`Trace`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub start: Word,
    pub steps: Vec<TraceStepRecord>,
    pub normal_form: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStepRecord {
    pub position: usize,
    pub case: RuleCase,
    pub after: Word,
}

fn leftmost_redex_from(letters: &[Generator], from: usize) -> Option<(usize, RuleInstance)> {
    (from..letters.len().saturating_sub(1))
        .find_map(|p| match_rule(letters[p], letters[p + 1]).map(|r| (p, r)))
}

// After rewriting at p, nothing left of p - 1 changed, so the leftmost redex
// is at p - 1 or later.
fn leftmost_reduce(
    w: &Word,
    mut on_step: impl FnMut(usize, RuleInstance, &[Generator], &[Generator]),
) -> Word {
    let mut letters = w.letters().to_vec();
    let mut cursor = 0;
    while let Some((p, rule)) = leftmost_redex_from(&letters, cursor) {
        let before = letters.clone();
        letters.splice(p..p + 2, rule.rhs.letters().iter().copied());
        on_step(p, rule, &before, &letters);
        cursor = p.saturating_sub(1);
    }
    Word::from(letters)
}

/// The canonical form of `w`, reached by always rewriting the leftmost redex.
pub fn normalize(w: &Word) -> Word {
    let mut letters = w.letters().to_vec();
    let mut cursor = 0;
    while let Some((p, rule)) = leftmost_redex_from(&letters, cursor) {
        letters.splice(p..p + 2, rule.rhs.letters().iter().copied());
        cursor = p.saturating_sub(1);
    }
    Word::from(letters)
}

/// [`normalize`], keeping every step.
pub fn normalize_trace(w: &Word) -> Trace {
    let mut steps = Vec::new();
    leftmost_reduce(w, |position, rule, before, after| {
        steps.push(Step {
            position,
            rule,
            before: Word::from_letters(before.iter().copied()),
            after: Word::from_letters(after.iter().copied()),
        })
    });
    Trace {
        start: w.clone(),
        steps,
    }
}

/// Shape test for canonical forms: an η-block with non-decreasing indices
/// followed by an ε-block with non-increasing indices.
pub fn is_normal(w: &Word) -> bool {
    let letters = w.letters();
    let split = letters
        .iter()
        .position(|g| g.is_eps())
        .unwrap_or(letters.len());
    let (etas, epss) = letters.split_at(split);
    epss.iter().all(|g| g.is_eps())
        && etas.windows(2).all(|p| p[0].index <= p[1].index)
        && epss.windows(2).all(|p| p[0].index >= p[1].index)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub position: usize,
    pub case: RuleCase,
}

/// Every word reachable from a root by rewriting, with one edge per step.
///
/// Nodes are numbered in breadth-first discovery order; the root is node 0.
#[derive(Debug, Clone)]
pub struct ReductionGraph {
    nodes: Vec<Word>,
    index: HashMap<Word, usize>,
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
}

impl ReductionGraph {
    pub fn root(&self) -> &Word {
        &self.nodes[0]
    }

    pub fn nodes(&self) -> &[Word] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.index.contains_key(w)
    }

    pub fn id(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Edges leaving node `id`, by index into [`edges`](Self::edges).
    pub fn out_edges(&self, id: usize) -> impl Iterator<Item = &Edge> {
        self.out[id].iter().map(move |&e| &self.edges[e])
    }

    /// Nodes without outgoing edges, in discovery order.
    pub fn sinks(&self) -> Vec<&Word> {
        (0..self.nodes.len())
            .filter(|&id| self.out[id].is_empty())
            .map(|id| &self.nodes[id])
            .collect()
    }

    /// Number of steps in the longest reduction sequence from the root.
    pub fn longest_path(&self) -> usize {
        // Every edge strictly lowers the degree, so sorting by degree gives a
        // topological order.
        let mut order: Vec<usize> = (0..self.nodes.len()).collect();
        order.sort_by_key(|&id| self.nodes[id].degree());
        let mut longest = vec![0usize; self.nodes.len()];
        for id in order {
            longest[id] = self
                .out_edges(id)
                .map(|e| longest[e.to] + 1)
                .max()
                .unwrap_or(0);
        }
        longest[0]
    }
}

pub fn reduction_graph(w: &Word) -> ReductionGraph {
    let mut graph = ReductionGraph {
        nodes: vec![w.clone()],
        index: HashMap::from([(w.clone(), 0)]),
        edges: Vec::new(),
        out: vec![Vec::new()],
    };
    let mut queue = VecDeque::from([0usize]);
    while let Some(from) = queue.pop_front() {
        let word = graph.nodes[from].clone();
        for (position, rule) in redexes(&word) {
            let next = word.splice(position, 2, rule.rhs.letters());
            let to = match graph.index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = graph.nodes.len();
                    graph.index.insert(next.clone(), id);
                    graph.nodes.push(next);
                    graph.out.push(Vec::new());
                    queue.push_back(id);
                    id
                }
            };
            graph.out[from].push(graph.edges.len());
            graph.edges.push(Edge {
                from,
                to,
                position,
                case: rule.case,
            });
        }
    }
    graph
}
