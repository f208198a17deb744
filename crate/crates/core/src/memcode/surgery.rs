//! Code constructions: union, pairing, glue, well-orders, function codes, ordinals.

use std::collections::{BTreeMap, HashSet};

use super::ipi::max_ipi;
use super::{normalize, restrict_below, CodeError, Fresh, Label, MemCode, RawPointedGraph};
use crate::order::WellOrder;

/// `⋃X`: drop the penultimate level, point its members at the top.
pub fn union_code(x: &MemCode) -> MemCode {
    let raw = x.to_raw();
    let top = raw.top.clone();
    let pen: HashSet<&Label> = x.pen().into_iter().collect();
    let mut edges: Vec<(Label, Label)> = raw
        .edges
        .iter()
        .filter(|(_, b)| *b != top)
        .cloned()
        .collect();
    for (z, y) in &raw.edges {
        if pen.contains(y) {
            edges.push((z.clone(), top.clone()));
        }
    }
    normalize(&RawPointedGraph {
        nodes: raw.nodes,
        edges,
        top,
    })
    .expect("union surgery keeps the graph acyclic")
}

/// `A` and `B` amalgamated along their maximum initial partial isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Glued {
    pub nodes: Vec<Label>,
    pub edges: Vec<(Label, Label)>,
    pub embed_a: BTreeMap<Label, Label>,
    pub embed_b: BTreeMap<Label, Label>,
}

impl Glued {
    /// Adds `extra` nodes and edges and a top; the caller normalizes.
    fn with(
        &self,
        extra_nodes: Vec<Label>,
        extra_edges: Vec<(Label, Label)>,
        top: Label,
    ) -> RawPointedGraph {
        let mut nodes = self.nodes.clone();
        nodes.extend(extra_nodes);
        let mut edges = self.edges.clone();
        edges.extend(extra_edges);
        RawPointedGraph { nodes, edges, top }
    }
}

/// Copies `B`, then the part of `A` outside the domain of the maximum
/// initial partial isomorphism under fresh labels.
pub fn glue(a: &MemCode, b: &MemCode) -> Glued {
    let pi = max_ipi(a, b);
    let mut fresh = Fresh::avoiding(b.nodes().iter().chain(a.nodes()));
    let mut embed_a = BTreeMap::new();
    for n in a.topological() {
        let image = match pi.get(n) {
            Some(m) => m.clone(),
            None => fresh.label(),
        };
        embed_a.insert(n.clone(), image);
    }
    let mut nodes: Vec<Label> = b.nodes().to_vec();
    nodes.extend(
        a.nodes()
            .iter()
            .filter(|n| pi.get(n).is_none())
            .map(|n| embed_a[n].clone()),
    );
    let mut edges = b.edges();
    for (x, y) in a.edges() {
        if pi.get(&y).is_none() {
            edges.push((embed_a[&x].clone(), embed_a[&y].clone()));
        }
    }
    edges.sort();
    let embed_b = b.nodes().iter().map(|n| (n.clone(), n.clone())).collect();
    Glued {
        nodes,
        edges,
        embed_a,
        embed_b,
    }
}

/// `{A, B}`
pub fn pair_code(a: &MemCode, b: &MemCode) -> MemCode {
    let g = glue(a, b);
    let mut fresh = Fresh::avoiding(&g.nodes);
    let top = fresh.label();
    let raw = g.with(
        vec![top.clone()],
        vec![
            (g.embed_a[a.top()].clone(), top.clone()),
            (g.embed_b[b.top()].clone(), top.clone()),
        ],
        top,
    );
    normalize(&raw).expect("pairing keeps the graph acyclic")
}

/// Kuratowski-pair nodes for `(x, y)` appended to `nodes`/`edges`; returns the pair node.
fn add_pair(
    fresh: &mut Fresh,
    nodes: &mut Vec<Label>,
    edges: &mut Vec<(Label, Label)>,
    x: &Label,
    y: &Label,
) -> Label {
    let (single, double, pair) = (fresh.label(), fresh.label(), fresh.label());
    edges.push((x.clone(), single.clone()));
    edges.push((x.clone(), double.clone()));
    edges.push((y.clone(), double.clone()));
    edges.push((single.clone(), pair.clone()));
    edges.push((double.clone(), pair.clone()));
    nodes.extend([single, double, pair.clone()]);
    pair
}

/// Code for `{(x, y) : x before y}` where `order` lists `pen A`.
pub fn wellorder_code(a: &MemCode, order: &[Label]) -> Result<MemCode, CodeError> {
    let pen: HashSet<&Label> = a.pen().into_iter().collect();
    let listed: HashSet<&Label> = order.iter().collect();
    if listed.len() != order.len() || listed != pen {
        return Err(CodeError::OrderNotTotal);
    }
    let raw = a.to_raw();
    let mut nodes = raw.nodes.clone();
    let mut edges = raw.edges.clone();
    let mut fresh = Fresh::avoiding(&raw.nodes);
    let top = fresh.label();
    let mut pairs = Vec::new();
    for (i, x) in order.iter().enumerate() {
        for y in &order[i + 1..] {
            pairs.push(add_pair(&mut fresh, &mut nodes, &mut edges, x, y));
        }
    }
    edges.extend(pairs.into_iter().map(|p| (p, top.clone())));
    nodes.push(top.clone());
    Ok(normalize(&RawPointedGraph { nodes, edges, top }).expect("acyclic"))
}

/// `F*` for `f : pen A → pen B`.
pub fn function_code(
    a: &MemCode,
    b: &MemCode,
    f: &BTreeMap<Label, Label>,
) -> Result<MemCode, CodeError> {
    let pen_b: HashSet<&Label> = b.pen().into_iter().collect();
    for x in a.pen() {
        let y = f.get(x).ok_or_else(|| CodeError::NotTotal(x.clone()))?;
        if !pen_b.contains(y) {
            return Err(CodeError::BadImage(y.clone()));
        }
    }
    let g = glue(a, b);
    let mut fresh = Fresh::avoiding(&g.nodes);
    let top = fresh.label();
    let mut nodes = vec![top.clone()];
    let mut edges = Vec::new();
    for x in a.pen() {
        let p = add_pair(
            &mut fresh,
            &mut nodes,
            &mut edges,
            &g.embed_a[x],
            &g.embed_b[&f[x]],
        );
        edges.push((p, top.clone()));
    }
    Ok(normalize(&g.with(nodes, edges, top.clone())).expect("acyclic"))
}

/// Reads `G` as a function `pen A → pen B`.
pub fn function_of_code(
    g: &MemCode,
    a: &MemCode,
    b: &MemCode,
) -> Result<BTreeMap<Label, Label>, CodeError> {
    let to_a = max_ipi(g, a);
    let to_b = max_ipi(g, b);
    let pen_a: HashSet<&Label> = a.pen().into_iter().collect();
    let pen_b: HashSet<&Label> = b.pen().into_iter().collect();
    let mut f = BTreeMap::new();
    for p in g.pen() {
        let (u, v) = pair_coordinates(g, p).ok_or_else(|| CodeError::NotAPair(p.clone()))?;
        let x = to_a.get(&u).filter(|x| pen_a.contains(x));
        let y = to_b.get(&v).filter(|y| pen_b.contains(y));
        let (Some(x), Some(y)) = (x, y) else {
            return Err(CodeError::CoordinateNotFound(p.clone()));
        };
        if f.insert(x.clone(), y.clone()).is_some_and(|old| old != *y) {
            return Err(CodeError::NotFunctional(x.clone()));
        }
    }
    if let Some(x) = a.pen().into_iter().find(|x| !f.contains_key(*x)) {
        return Err(CodeError::NotTotal(x.clone()));
    }
    Ok(f)
}

/// Coordinates of a node coding `{{u},{u,v}}`.
fn pair_coordinates(g: &MemCode, p: &str) -> Option<(Label, Label)> {
    let parts = g.preds(p)?;
    let preds = |x: &Label| g.preds(x).expect("node exists");
    match parts.as_slice() {
        [s] => match preds(s).as_slice() {
            [u] => Some(((*u).clone(), (*u).clone())),
            _ => None,
        },
        [s, t] => {
            let (ps, pt) = (preds(s), preds(t));
            let (single, double) = match (ps.len(), pt.len()) {
                (1, 2) => (ps, pt),
                (2, 1) => (pt, ps),
                _ => return None,
            };
            let u = single[0];
            if !double.contains(&u) {
                return None;
            }
            let v = double.iter().find(|w| **w != u)?;
            Some((u.clone(), (*v).clone()))
        }
        _ => None,
    }
}

/// Code for the von Neumann ordinal `|Γ|`: each element below its successors and the top.
pub fn ordinal_code(gamma: &WellOrder<Label>) -> MemCode {
    let elems = gamma.elements();
    let mut fresh = Fresh::avoiding(elems);
    let top = fresh.label();
    let mut edges = Vec::new();
    for (i, x) in elems.iter().enumerate() {
        for y in &elems[i + 1..] {
            edges.push((x.clone(), y.clone()));
        }
        edges.push((x.clone(), top.clone()));
    }
    let mut nodes = elems.to_vec();
    nodes.push(top.clone());
    super::validate(&RawPointedGraph { nodes, edges, top }).expect("ordinal graphs are codes")
}

/// The cone of `x` inside the glued graph, for inspecting embeddings.
pub fn glued_cone(g: &Glued, x: &Label) -> Result<MemCode, CodeError> {
    let raw = RawPointedGraph {
        nodes: g.nodes.clone(),
        edges: g.edges.clone(),
        top: x.clone(),
    };
    let code = normalize(&raw)?;
    restrict_below(&code, code.top())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hfset::{hf_make, hf_ordinal, hf_unack_u64, kpair, parse_hf, HFSet};
    use crate::memcode::{canonical_code, collapse, iso};

    fn e(n: u64) -> MemCode {
        canonical_code(&hf_unack_u64(n))
    }

    #[test]
    fn union_examples() {
        assert_eq!(collapse(&union_code(&e(1))), HFSet::empty());
        let x = parse_hf("{{{}},{{{}}}}").unwrap();
        assert_eq!(collapse(&union_code(&canonical_code(&x))), hf_unack_u64(3));
    }

    #[test]
    fn pair_examples() {
        assert_eq!(collapse(&pair_code(&e(0), &e(0))), hf_unack_u64(1));
        assert_eq!(collapse(&pair_code(&e(0), &e(1))), hf_unack_u64(3));
    }

    #[test]
    fn glue_examples() {
        let a = e(3);
        let g = glue(&a, &a);
        assert!(g.embed_a.iter().all(|(k, v)| k == v));
        assert_eq!(g.nodes.len(), a.len());
        let small = e(1);
        let g = glue(&small, &e(3));
        assert_eq!(g.nodes.len(), 3);
        let image = &g.embed_a[small.top()];
        assert_eq!(collapse(&glued_cone(&g, image).unwrap()), hf_unack_u64(1));
    }

    #[test]
    fn wellorder_examples() {
        let one = e(1);
        assert_eq!(
            collapse(&wellorder_code(&one, &["0".into()]).unwrap()),
            HFSet::empty()
        );
        let two = e(3);
        let w = wellorder_code(&two, &["0".into(), "1".into()]).unwrap();
        let expect = hf_make([kpair(&HFSet::empty(), &hf_unack_u64(1))]);
        assert_eq!(collapse(&w), expect);
        assert_eq!(collapse(&w), parse_hf("{{{{}},{{},{{}}}}}").unwrap());
        assert_eq!(
            wellorder_code(&two, &["0".into()]),
            Err(CodeError::OrderNotTotal)
        );
    }

    #[test]
    fn function_examples() {
        let a = e(1);
        let f: BTreeMap<Label, Label> = [("0".to_string(), "0".to_string())].into();
        let g = function_code(&a, &a, &f).unwrap();
        assert_eq!(collapse(&g), parse_hf("{{{{}}}}").unwrap());
        assert_eq!(function_of_code(&g, &a, &a).unwrap(), f);
        let back = function_code(&a, &a, &function_of_code(&g, &a, &a).unwrap()).unwrap();
        assert!(iso(&back, &g).is_some());
    }

    #[test]
    fn function_of_code_rejects() {
        let a = e(3);
        // {(0,0),(0,1)} is not a function.
        let rel = hf_make([
            kpair(&HFSet::empty(), &HFSet::empty()),
            kpair(&HFSet::empty(), &hf_unack_u64(1)),
        ]);
        assert!(matches!(
            function_of_code(&canonical_code(&rel), &a, &a),
            Err(CodeError::NotFunctional(_))
        ));
        // {(0,0)} misses 1.
        let partial = hf_make([kpair(&HFSet::empty(), &HFSet::empty())]);
        assert!(matches!(
            function_of_code(&canonical_code(&partial), &a, &a),
            Err(CodeError::NotTotal(_))
        ));
        assert!(matches!(
            function_of_code(&a, &a, &a),
            Err(CodeError::NotAPair(_))
        ));
    }

    #[test]
    fn ordinal_examples() {
        for n in 0..=8 {
            let g = WellOrder::of_length(n);
            assert_eq!(collapse(&ordinal_code(&g)), hf_ordinal(n));
        }
    }
}
