//! Unrolling a second-order model into the first-order structure of its
//! codes, cutting a first-order structure back off, and the audits tying the
//! two together.

mod audit;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::etr::EtrError;
use crate::hfset::{hf_make, HFSet, HfError};
use crate::logic::{ClassFamily, EvalError, ModelError, SOModel};
use crate::memcode::{canonical_code, collapse, validate, MemCode, RawPointedGraph};
use crate::translate::TranslateError;

pub use audit::{
    audit_axiom, audit_translation, sep0_formula_classes, Axiom, AxiomReport, AxiomStatus,
    S0TrInstance, TranslationReport, MAX_AUDIT_DEPTH,
};

/// Largest node count the code enumeration accepts.
pub const MAX_ENUMERATION_NODES: usize = 7;

/// Environment variable fixing the enumeration thread count.
pub const THREADS_ENV: &str = "CLASSCODE_THREADS";

#[derive(Debug, Error)]
pub enum UnrollError {
    #[error(transparent)]
    Hf(#[from] HfError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    Etr(#[from] EtrError),
    #[error("structure is not transitive: {0} has an element outside it")]
    NotTransitive(String),
    #[error("quantifier depth {depth} exceeds the audit limit {limit}")]
    DepthLimit { depth: usize, limit: usize },
    #[error("{0}")]
    Seed(String),
}

/// One representative per isomorphism class of admitted codes, ordered by
/// Ackermann index; membership is `∈`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnrolledStructure {
    pub budget: usize,
    pub elements: Vec<HFSet>,
    /// Number of von Neumann ordinals in the source universe.
    pub kappa: usize,
}

#[derive(Serialize)]
struct UnrolledJson {
    budget: usize,
    kappa: usize,
    elements: Vec<String>,
}

impl UnrolledStructure {
    pub fn contains(&self, x: &HFSet) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `budget`, `kappa`, then one `#N` (or brace) literal per line.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "budget {}\nkappa {}\nelements {}\n",
            self.budget,
            self.kappa,
            self.elements.len()
        );
        for x in &self.elements {
            s.push_str(&x.to_ack_literal());
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> String {
        let j = UnrolledJson {
            budget: self.budget,
            kappa: self.kappa,
            elements: self.elements.iter().map(HFSet::to_ack_literal).collect(),
        };
        serde_json::to_string_pretty(&j).expect("plain data")
    }
}

fn thread_count() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Collapses of every valid code on at most `budget` nodes, enumerated over
/// topologically labeled graphs split across `threads` workers.
pub fn code_collapses(budget: usize, threads: usize) -> Result<BTreeSet<HFSet>, HfError> {
    if budget > MAX_ENUMERATION_NODES {
        return Err(HfError::CapExceeded {
            what: "code enumeration nodes",
            requested: budget,
            cap: MAX_ENUMERATION_NODES,
        });
    }
    let threads = threads.max(1);
    let mut out = BTreeSet::new();
    for n in 1..=budget {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        let nodes: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let total = 1u64 << slots.len();
        let chunk = total.div_ceil(threads as u64);
        let parts: Vec<BTreeSet<HFSet>> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads as u64)
                .map(|t| {
                    let (slots, nodes) = (&slots, &nodes);
                    s.spawn(move || {
                        let mut found = BTreeSet::new();
                        for mask in t * chunk..((t + 1) * chunk).min(total) {
                            // every node below the top needs an out-edge
                            let mut has_out = vec![false; n];
                            for (k, &(i, _)) in slots.iter().enumerate() {
                                if mask >> k & 1 == 1 {
                                    has_out[i] = true;
                                }
                            }
                            if has_out[..n - 1].iter().any(|b| !b) {
                                continue;
                            }
                            let edges = slots
                                .iter()
                                .enumerate()
                                .filter(|(k, _)| mask >> k & 1 == 1)
                                .map(|(_, &(i, j))| (nodes[i].clone(), nodes[j].clone()))
                                .collect();
                            let raw = RawPointedGraph {
                                nodes: nodes.clone(),
                                edges,
                                top: nodes[n - 1].clone(),
                            };
                            if let Ok(code) = validate(&raw) {
                                found.insert(collapse(&code));
                            }
                        }
                        found
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("enumeration worker"))
                .collect()
        });
        for p in parts {
            out.extend(p);
        }
    }
    Ok(out)
}

fn count_ordinals(universe: &[HFSet]) -> usize {
    let mut n = 0;
    let mut ord = HFSet::empty();
    let set: HashSet<&HFSet> = universe.iter().collect();
    while set.contains(&ord) {
        n += 1;
        ord = ord.with(ord.clone());
    }
    n
}

/// [`unroll_with_threads`] with the thread count from `CLASSCODE_THREADS`
/// or the available parallelism.
pub fn unroll(m: &SOModel, budget: usize) -> Result<UnrolledStructure, UnrollError> {
    unroll_with_threads(m, budget, thread_count())
}

/// Under FULL every code with at most `budget` nodes is admitted; otherwise
/// a code is admitted when its class (loops for nodes, pairs for edges) is
/// in the family, together with the cones below its nodes.
pub fn unroll_with_threads(
    m: &SOModel,
    budget: usize,
    threads: usize,
) -> Result<UnrolledStructure, UnrollError> {
    let caps = m.caps();
    if budget > caps.max_tc {
        return Err(HfError::CapExceeded {
            what: "unroll budget",
            requested: budget,
            cap: caps.max_tc,
        }
        .into());
    }
    let elements: Vec<HFSet> = match m.family() {
        ClassFamily::Full => code_collapses(budget, threads)?.into_iter().collect(),
        ClassFamily::Explicit(cs) => {
            let mut out = BTreeSet::new();
            for code in cs
                .iter()
                .filter_map(|c| c.as_code())
                .filter(|c| c.len() <= budget)
            {
                out.extend(code.collapse_all());
            }
            out.into_iter().collect()
        }
    };
    Ok(UnrolledStructure {
        budget,
        elements,
        kappa: count_ordinals(m.universe()),
    })
}

/// How the cut bound `k` is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Reading {
    /// `tcSize(x) ≤ k`
    #[default]
    TcSize,
    /// `rank(x) ≤ k`
    Rank,
}

impl Reading {
    pub fn measure(self, x: &HFSet) -> usize {
        match self {
            Reading::TcSize => x.tc_size(),
            Reading::Rank => x.rank(),
        }
    }
}

/// [`cutoff_with`] under the tcSize reading.
pub fn cutoff(n: &[HFSet], k: usize) -> Result<SOModel, UnrollError> {
    cutoff_with(n, k, Reading::TcSize)
}

/// Sets of `n` within the bound, classes the elements of `n` that are
/// subsets of them. A family that is the whole powerset is returned as
/// FULL. `inH` in the result always reads `tcSize ≤ k`.
pub fn cutoff_with(n: &[HFSet], k: usize, reading: Reading) -> Result<SOModel, UnrollError> {
    let index: HashSet<&HFSet> = n.iter().collect();
    if let Some(x) = n
        .iter()
        .find(|x| x.elements().iter().any(|y| !index.contains(y)))
    {
        return Err(UnrollError::NotTransitive(x.to_ack_literal()));
    }
    let mut universe: Vec<HFSet> = n
        .iter()
        .filter(|x| reading.measure(x) <= k)
        .cloned()
        .collect();
    universe.sort();
    universe.dedup();
    let inside: HashSet<&HFSet> = universe.iter().collect();
    let mut classes: Vec<HFSet> = n
        .iter()
        .filter(|y| y.elements().iter().all(|e| inside.contains(e)))
        .cloned()
        .collect();
    classes.sort();
    classes.dedup();
    let family = if universe.len() < 64 && classes.len() as u128 == 1u128 << universe.len() {
        ClassFamily::Full
    } else {
        ClassFamily::Explicit(
            classes
                .iter()
                .map(|y| crate::logic::ClassVal::new(y.elements().iter().cloned()))
                .collect(),
        )
    };
    Ok(SOModel::new(universe, family)?.with_kappa(k))
}

/// Which composite is audited.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `(M, 𝒳)` ↦ unroll ↦ cut off, compared with `(M, 𝒳)`.
    CutUnroll,
    /// `N` ↦ cut off ↦ unroll, compared with `N`.
    UnrollCut,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::CutUnroll => "CUT∘UNROLL",
            Direction::UnrollCut => "UNROLL∘CUT",
        })
    }
}

/// The two bijections of a round trip and whatever they fail to match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTrip {
    pub direction: Direction,
    pub budget: usize,
    pub cut_at: usize,
    /// Size of the intermediate unrolled structure.
    pub unrolled: usize,
    /// Number of classes of the cut model.
    pub classes: usize,
    /// `a ↦ [E_a]`
    pub element_map: Vec<(HFSet, HFSet)>,
    /// `A ↦ [E_A]`, classes written as the set of their members.
    pub class_map: Vec<(HFSet, HFSet)>,
    pub unmatched_elements: Vec<HFSet>,
    pub unmatched_classes: Vec<HFSet>,
}

impl RoundTrip {
    pub fn is_isomorphic(&self) -> bool {
        self.unmatched_elements.is_empty() && self.unmatched_classes.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.is_isomorphic() {
            format!(
                "ISOMORPHIC ({} elements, {} classes)",
                self.unrolled, self.classes
            )
        } else {
            format!(
                "MISMATCH ({} unmatched elements, {} unmatched classes)",
                self.unmatched_elements.len(),
                self.unmatched_classes.len()
            )
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{}\n{} budget {} cut {}\n",
            self.summary(),
            self.direction,
            self.budget,
            self.cut_at
        );
        for (a, b) in &self.element_map {
            s.push_str(&format!(
                "element {} -> {}\n",
                a.to_ack_literal(),
                b.to_ack_literal()
            ));
        }
        for (a, b) in &self.class_map {
            s.push_str(&format!(
                "class {} -> {}\n",
                a.to_ack_literal(),
                b.to_ack_literal()
            ));
        }
        for x in &self.unmatched_elements {
            s.push_str(&format!("unmatched element {}\n", x.to_ack_literal()));
        }
        for x in &self.unmatched_classes {
            s.push_str(&format!("unmatched class {}\n", x.to_ack_literal()));
        }
        s
    }
}

fn class_sets(m: &SOModel) -> Result<BTreeSet<HFSet>, UnrollError> {
    Ok(m.classes()?
        .iter()
        .map(|c| hf_make(c.members().iter().cloned()))
        .collect())
}

fn code_image(x: &HFSet) -> HFSet {
    collapse(&canonical_code(x))
}

fn sym_diff(a: &BTreeSet<HFSet>, b: &BTreeSet<HFSet>) -> Vec<HFSet> {
    a.symmetric_difference(b).cloned().collect()
}

/// Unrolls `m` at `budget`, cuts the result off at the largest measure of
/// `m`'s sets, and matches sets via `a ↦ [E_a]` and classes via `A ↦ [E_A]`.
pub fn roundtrip_cut_unroll(
    m: &SOModel,
    budget: usize,
    reading: Reading,
) -> Result<RoundTrip, UnrollError> {
    let u = unroll(m, budget)?;
    let k = m
        .universe()
        .iter()
        .map(|x| reading.measure(x))
        .max()
        .unwrap_or(0);
    let cut = cutoff_with(&u.elements, k, reading)?;
    let source: BTreeSet<HFSet> = m.universe().iter().cloned().collect();
    let target: BTreeSet<HFSet> = cut.universe().iter().cloned().collect();
    let element_map: Vec<(HFSet, HFSet)> =
        source.iter().map(|a| (a.clone(), code_image(a))).collect();
    let image: BTreeSet<HFSet> = element_map.iter().map(|p| p.1.clone()).collect();
    let src_classes = class_sets(m)?;
    let cut_classes = class_sets(&cut)?;
    let class_map: Vec<(HFSet, HFSet)> = src_classes
        .iter()
        .map(|a| (a.clone(), code_image(a)))
        .collect();
    let class_image: BTreeSet<HFSet> = class_map.iter().map(|p| p.1.clone()).collect();
    let mut unmatched_elements = sym_diff(&image, &target);
    unmatched_elements.extend(source.iter().filter(|a| !u.contains(a)).cloned());
    unmatched_elements.sort();
    unmatched_elements.dedup();
    Ok(RoundTrip {
        direction: Direction::CutUnroll,
        budget,
        cut_at: k,
        unrolled: u.len(),
        classes: cut_classes.len(),
        element_map,
        class_map,
        unmatched_elements,
        unmatched_classes: sym_diff(&class_image, &cut_classes),
    })
}

/// Cuts `n` off at `budget - 1`, unrolls at `budget` and compares with `n`.
pub fn roundtrip_unroll_cut(
    n: &[HFSet],
    budget: usize,
    reading: Reading,
) -> Result<RoundTrip, UnrollError> {
    if budget == 0 {
        return Err(UnrollError::Seed("budget must be positive".into()));
    }
    let k = budget - 1;
    let cut = cutoff_with(n, k, reading)?;
    let u = unroll(&cut, budget)?;
    let source: BTreeSet<HFSet> = n.iter().cloned().collect();
    let back: BTreeSet<HFSet> = u.elements.iter().cloned().collect();
    let element_map: Vec<(HFSet, HFSet)> =
        source.iter().map(|a| (a.clone(), code_image(a))).collect();
    let image: BTreeSet<HFSet> = element_map.iter().map(|p| p.1.clone()).collect();
    let cut_classes = class_sets(&cut)?;
    let class_map: Vec<(HFSet, HFSet)> = cut_classes
        .iter()
        .map(|a| (a.clone(), code_image(a)))
        .collect();
    let unmatched_classes = class_map
        .iter()
        .filter(|(_, b)| !source.contains(b))
        .map(|p| p.0.clone())
        .collect();
    Ok(RoundTrip {
        direction: Direction::UnrollCut,
        budget,
        cut_at: k,
        unrolled: u.len(),
        classes: cut_classes.len(),
        element_map,
        class_map,
        unmatched_elements: sym_diff(&image, &back),
        unmatched_classes,
    })
}

/// `h_bounded(k)`: every set of tcSize at most `k`.
pub fn h_bounded(k: usize, caps: &crate::Caps) -> Result<Vec<HFSet>, HfError> {
    crate::hfset::hf_enumerate_tc_bounded(k, caps)
}

/// Codes of the source's sets, for callers wanting the embedding itself.
pub fn embedding(m: &SOModel) -> Vec<(HFSet, MemCode)> {
    m.universe()
        .iter()
        .map(|a| (a.clone(), canonical_code(a)))
        .collect()
}
