//! Membership codes: finite well-founded extensional pointed digraphs.
//!
//! An edge `(a, b)` reads `a ◁ b`, "a is an immediate member of b". Every
//! node reaches the top, and distinct nodes have distinct predecessor sets.

mod enumerate;
mod ipi;
mod surgery;

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hfset::{hf_make, HFSet};

pub use enumerate::enumerate_codes;
pub use ipi::{
    brute_force_ipis, is_initial_partial_iso, iso, max_ipi, vin, InitialPartialIso, Reason, Verdict,
};
pub use surgery::{
    function_code, function_of_code, glue, glued_cone, ordinal_code, pair_code, union_code,
    wellorder_code, Glued,
};

pub type Label = String;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("CycleFound: {}", .0.join(" -> "))]
    CycleFound(Vec<Label>),
    #[error("NoTop: node {0} does not reach the top")]
    NoTop(Label),
    #[error("ExtensionalityViolation: nodes {0} and {1} have the same predecessors")]
    ExtensionalityViolation(Label, Label),
    #[error("UnknownNode: {0}")]
    UnknownNode(Label),
    #[error("DuplicateNode: {0}")]
    DuplicateNode(Label),
    #[error("OrderNotTotal: the order must list every node of pen(A) exactly once")]
    OrderNotTotal,
    #[error("NotTotal: {0} of pen(A) has no image")]
    NotTotal(Label),
    #[error("BadImage: {0} is not in pen(B)")]
    BadImage(Label),
    #[error("NotAPair: {0} does not code a Kuratowski pair")]
    NotAPair(Label),
    #[error("CoordinateNotFound: a coordinate of {0} is not represented in pen")]
    CoordinateNotFound(Label),
    #[error("NotFunctional: two pairs share the first coordinate {0}")]
    NotFunctional(Label),
}

/// A pointed digraph as read from or written to JSON. Only acyclicity is
/// needed for [`normalize`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawPointedGraph {
    pub nodes: Vec<Label>,
    pub edges: Vec<(Label, Label)>,
    pub top: Label,
}

impl RawPointedGraph {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("string keys serialize")
    }
}

/// Index-based adjacency shared by raw graphs and codes.
#[derive(Debug, Clone)]
struct Dag {
    labels: Vec<Label>,
    index: HashMap<Label, usize>,
    preds: Vec<Vec<usize>>,
    succs: Vec<Vec<usize>>,
    top: usize,
    topo: Vec<usize>,
}

impl Dag {
    fn build(raw: &RawPointedGraph) -> Result<Dag, CodeError> {
        let mut labels: Vec<Label> = raw.nodes.clone();
        labels.sort();
        for w in labels.windows(2) {
            if w[0] == w[1] {
                return Err(CodeError::DuplicateNode(w[0].clone()));
            }
        }
        let index: HashMap<Label, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let idx = |l: &Label| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| CodeError::UnknownNode(l.clone()))
        };
        let n = labels.len();
        let mut preds = vec![BTreeSet::new(); n];
        for (a, b) in &raw.edges {
            preds[idx(b)?].insert(idx(a)?);
        }
        let top = idx(&raw.top)?;
        let preds: Vec<Vec<usize>> = preds.into_iter().map(|s| s.into_iter().collect()).collect();
        let mut succs = vec![Vec::new(); n];
        for (b, ps) in preds.iter().enumerate() {
            for &a in ps {
                succs[a].push(b);
            }
        }
        let mut dag = Dag {
            labels,
            index,
            preds,
            succs,
            top,
            topo: Vec::new(),
        };
        dag.topo = dag.topological()?;
        Ok(dag)
    }

    /// Kahn's algorithm, smallest index first.
    fn topological(&self) -> Result<Vec<usize>, CodeError> {
        let n = self.labels.len();
        let mut indeg: Vec<usize> = self.preds.iter().map(Vec::len).collect();
        let mut heap: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&i| indeg[i] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(i)) = heap.pop() {
            order.push(i);
            for &s in &self.succs[i] {
                indeg[s] -= 1;
                if indeg[s] == 0 {
                    heap.push(Reverse(s));
                }
            }
        }
        if order.len() == n {
            Ok(order)
        } else {
            Err(CodeError::CycleFound(self.find_cycle(&indeg)))
        }
    }

    fn find_cycle(&self, indeg: &[usize]) -> Vec<Label> {
        // Every node left with positive in-degree has a predecessor that is also left.
        let start = (0..indeg.len())
            .find(|&i| indeg[i] > 0)
            .expect("cycle exists");
        let mut pos = HashMap::new();
        let mut path = vec![start];
        let mut cur = start;
        loop {
            pos.insert(cur, path.len() - 1);
            let next = *self.preds[cur]
                .iter()
                .find(|&&p| indeg[p] > 0)
                .expect("remaining node has remaining predecessor");
            if let Some(&at) = pos.get(&next) {
                let mut cyc: Vec<usize> = path[at..].to_vec();
                cyc.reverse();
                cyc.push(cyc[0]);
                return cyc.into_iter().map(|i| self.labels[i].clone()).collect();
            }
            path.push(next);
            cur = next;
        }
    }

    /// Nodes `y` with `y ≤ x`, as a membership mask.
    fn below(&self, x: usize) -> Vec<bool> {
        let mut mark = vec![false; self.labels.len()];
        let mut stack = vec![x];
        mark[x] = true;
        while let Some(y) = stack.pop() {
            for &p in &self.preds[y] {
                if !mark[p] {
                    mark[p] = true;
                    stack.push(p);
                }
            }
        }
        mark
    }

    fn to_raw(&self, keep: &[bool]) -> RawPointedGraph {
        let nodes: Vec<Label> = (0..self.labels.len())
            .filter(|&i| keep[i])
            .map(|i| self.labels[i].clone())
            .collect();
        let mut edges = Vec::new();
        for b in 0..self.labels.len() {
            if !keep[b] {
                continue;
            }
            for &a in &self.preds[b] {
                if keep[a] {
                    edges.push((self.labels[a].clone(), self.labels[b].clone()));
                }
            }
        }
        edges.sort();
        RawPointedGraph {
            nodes,
            edges,
            top: self.labels[self.top].clone(),
        }
    }
}

/// A valid membership code.
#[derive(Debug, Clone)]
pub struct MemCode {
    dag: Dag,
}

impl PartialEq for MemCode {
    fn eq(&self, other: &Self) -> bool {
        self.to_raw() == other.to_raw()
    }
}

impl Eq for MemCode {}

/// Checks the three code invariants.
pub fn validate(g: &RawPointedGraph) -> Result<MemCode, CodeError> {
    let dag = Dag::build(g)?;
    let reach = dag.below(dag.top);
    if let Some(i) = (0..reach.len()).find(|&i| !reach[i]) {
        return Err(CodeError::NoTop(dag.labels[i].clone()));
    }
    let mut seen: HashMap<&[usize], usize> = HashMap::new();
    for i in 0..dag.labels.len() {
        if let Some(&j) = seen.get(dag.preds[i].as_slice()) {
            return Err(CodeError::ExtensionalityViolation(
                dag.labels[j].clone(),
                dag.labels[i].clone(),
            ));
        }
        seen.insert(dag.preds[i].as_slice(), i);
    }
    Ok(MemCode { dag })
}

/// Restricts to the cone below the top and merges nodes with equal collapse.
pub fn normalize(g: &RawPointedGraph) -> Result<MemCode, CodeError> {
    let dag = Dag::build(g)?;
    let keep = dag.below(dag.top);
    // Bisimulation classes on a DAG: class of a node = set of classes of its predecessors.
    let mut class = vec![usize::MAX; dag.labels.len()];
    let mut classes: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut class_preds: Vec<Vec<usize>> = Vec::new();
    let mut rep: Vec<usize> = Vec::new();
    for &i in &dag.topo {
        if !keep[i] {
            continue;
        }
        let mut key: Vec<usize> = dag.preds[i].iter().map(|&p| class[p]).collect();
        key.sort_unstable();
        key.dedup();
        let c = *classes.entry(key.clone()).or_insert_with(|| {
            class_preds.push(key);
            rep.push(i);
            rep.len() - 1
        });
        // Representative label: the smallest label in the class.
        if i < rep[c] {
            rep[c] = i;
        }
        class[i] = c;
    }
    let label = |c: usize| dag.labels[rep[c]].clone();
    let raw = RawPointedGraph {
        nodes: (0..rep.len()).map(label).collect(),
        edges: class_preds
            .iter()
            .enumerate()
            .flat_map(|(c, ps)| ps.iter().map(move |&p| (label(p), label(c))))
            .collect(),
        top: label(class[dag.top]),
    };
    Ok(validate(&raw).expect("quotient of a DAG cone is a code"))
}

impl MemCode {
    pub fn nodes(&self) -> &[Label] {
        &self.dag.labels
    }

    pub fn len(&self) -> usize {
        self.dag.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn top(&self) -> &Label {
        &self.dag.labels[self.dag.top]
    }

    pub fn contains_node(&self, x: &str) -> bool {
        self.dag.index.contains_key(x)
    }

    /// All edges `(a, b)` with `a ◁ b`, sorted.
    pub fn edges(&self) -> Vec<(Label, Label)> {
        self.to_raw().edges
    }

    pub fn edge_count(&self) -> usize {
        self.dag.preds.iter().map(Vec::len).sum()
    }

    /// Immediate predecessors of `x`.
    pub fn preds(&self, x: &str) -> Option<Vec<&Label>> {
        let i = *self.dag.index.get(x)?;
        Some(
            self.dag.preds[i]
                .iter()
                .map(|&p| &self.dag.labels[p])
                .collect(),
        )
    }

    /// `a ◁ b`
    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        match (self.dag.index.get(a), self.dag.index.get(b)) {
            (Some(&a), Some(&b)) => self.dag.preds[b].binary_search(&a).is_ok(),
            _ => false,
        }
    }

    /// `a ≤ b`
    pub fn le(&self, a: &str, b: &str) -> bool {
        match (self.dag.index.get(a), self.dag.index.get(b)) {
            (Some(&a), Some(&b)) => self.dag.below(b)[a],
            _ => false,
        }
    }

    /// `pen A`, the immediate predecessors of the top.
    pub fn pen(&self) -> Vec<&Label> {
        self.dag.preds[self.dag.top]
            .iter()
            .map(|&p| &self.dag.labels[p])
            .collect()
    }

    /// Nodes in a fixed topological order (predecessors first).
    pub fn topological(&self) -> Vec<&Label> {
        self.dag.topo.iter().map(|&i| &self.dag.labels[i]).collect()
    }

    pub fn to_raw(&self) -> RawPointedGraph {
        self.dag.to_raw(&vec![true; self.len()])
    }

    pub fn to_json(&self) -> String {
        self.to_raw().to_json()
    }

    pub fn from_json(text: &str) -> Result<MemCode, CodeFileError> {
        Ok(validate(&RawPointedGraph::from_json(text)?)?)
    }

    /// Graphviz rendering with the top double-circled.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph code {\n");
        for (i, l) in self.dag.labels.iter().enumerate() {
            let shape = if i == self.dag.top {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(s, "  {l:?} [shape={shape}];");
        }
        for (a, b) in self.edges() {
            let _ = writeln!(s, "  {a:?} -> {b:?};");
        }
        s.push_str("}\n");
        s
    }

    /// Collapse of every node, indexed like [`MemCode::nodes`].
    pub fn collapse_all(&self) -> Vec<HFSet> {
        let mut val: Vec<Option<HFSet>> = vec![None; self.len()];
        for &i in &self.dag.topo {
            let elems = self.dag.preds[i]
                .iter()
                .map(|&p| val[p].clone().expect("topological order"));
            val[i] = Some(hf_make(elems));
        }
        val.into_iter()
            .map(|v| v.expect("all nodes visited"))
            .collect()
    }

    /// Collapse of a single node.
    pub fn collapse_node(&self, x: &str) -> Option<HFSet> {
        let i = *self.dag.index.get(x)?;
        Some(self.collapse_all().swap_remove(i))
    }

    /// Renames nodes; `f` must be injective.
    pub fn relabel(&self, mut f: impl FnMut(&str) -> Label) -> MemCode {
        let raw = self.to_raw();
        let map: HashMap<&str, Label> = raw.nodes.iter().map(|n| (n.as_str(), f(n))).collect();
        let g = RawPointedGraph {
            nodes: raw.nodes.iter().map(|n| map[n.as_str()].clone()).collect(),
            edges: raw
                .edges
                .iter()
                .map(|(a, b)| (map[a.as_str()].clone(), map[b.as_str()].clone()))
                .collect(),
            top: map[raw.top.as_str()].clone(),
        };
        validate(&g).expect("relabeling must be injective")
    }

    fn idx(&self, x: &str) -> Option<usize> {
        self.dag.index.get(x).copied()
    }
}

#[derive(Debug, Error)]
pub enum CodeFileError {
    #[error("malformed code file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Mostowski collapse of the top.
pub fn collapse(a: &MemCode) -> HFSet {
    a.collapse_all().swap_remove(a.dag.top)
}

/// Label used for `y` inside canonical codes.
pub fn canonical_label(y: &HFSet) -> Label {
    match y.ack() {
        Ok(n) => n.to_string(),
        Err(_) => y.to_literal(),
    }
}

/// `E_x`: the true `∈` on `tc({x})`.
pub fn canonical_code(x: &HFSet) -> MemCode {
    let mut all = x.transitive_closure();
    all.push(x.clone());
    let mut edges = Vec::new();
    for y in &all {
        for z in y.elements() {
            edges.push((canonical_label(z), canonical_label(y)));
        }
    }
    let raw = RawPointedGraph {
        nodes: all.iter().map(canonical_label).collect(),
        edges,
        top: canonical_label(x),
    };
    validate(&raw).expect("canonical codes are valid")
}

/// `A↓x`
pub fn restrict_below(a: &MemCode, x: &str) -> Result<MemCode, CodeError> {
    let i = a
        .idx(x)
        .ok_or_else(|| CodeError::UnknownNode(x.to_string()))?;
    let mut raw = a.dag.to_raw(&a.dag.below(i));
    raw.top = x.to_string();
    Ok(validate(&raw).expect("cones of codes are codes"))
}

/// Fresh labels in the reserved `aux:` namespace.
pub(crate) struct Fresh {
    next: usize,
    taken: std::collections::HashSet<Label>,
}

impl Fresh {
    pub(crate) fn avoiding<'a>(labels: impl IntoIterator<Item = &'a Label>) -> Fresh {
        Fresh {
            next: 0,
            taken: labels.into_iter().cloned().collect(),
        }
    }

    pub(crate) fn label(&mut self) -> Label {
        loop {
            let l = format!("aux:{}", self.next);
            self.next += 1;
            if self.taken.insert(l.clone()) {
                return l;
            }
        }
    }
}
