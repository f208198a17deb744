//! The `⋆` translation: a Σ₀ formula about code parameters becomes a
//! bounded formula about the nodes of one code `P` for `{A₁, …, Aₙ}`.

use std::collections::BTreeMap;

use super::{Names, TranslateError};
use crate::hfset::{hf_unack_u64, HFSet};
use crate::logic::formula::build;
use crate::logic::{
    code_to_class, eval, ClassFamily, ClassTerm, EvalError, Formula, SOModel, Valuation, Var,
};
use crate::memcode::{glue, normalize, pair_code, Fresh, Label, MemCode, RawPointedGraph};

/// `φ⋆`, the code `P` and the node of `P` standing for each parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtrStar {
    pub formula: Formula,
    /// Class symbol naming `P` in `formula`.
    pub class: String,
    pub code: MemCode,
    /// `a{i}` ↦ node label; isomorphic parameters share a node.
    pub params: BTreeMap<Var, Label>,
}

impl EtrStar {
    /// Evaluates `φ⋆` on the nodes of `P` with each `a{i}` at its node.
    pub fn eval(&self) -> Result<bool, EvalError> {
        let order: BTreeMap<&str, u64> = self
            .code
            .nodes()
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i as u64))
            .collect();
        let point = |l: &str| hf_unack_u64(order[l]);
        let points: Vec<HFSet> = (0..order.len() as u64).map(hf_unack_u64).collect();
        let m = SOModel::structure(points, ClassFamily::Explicit(Vec::new()))
            .and_then(|m| m.with_class(self.class.clone(), code_to_class(&self.code, point)))
            .expect("points of P");
        let mut v = Valuation::new();
        for (a, l) in &self.params {
            v = v.set(a.clone(), point(l));
        }
        eval(&m, &self.formula, &v)
    }
}

/// `P` by iterated glueing: `{A₁}`, then `{A₁, …, Aᵢ}` glued with `Aᵢ₊₁`
/// under a new top.
fn parameter_code(params: &[MemCode]) -> (MemCode, Vec<Label>) {
    let mut p = pair_code(&params[0], &params[0]);
    for a in &params[1..] {
        let g = glue(a, &p);
        let mut fresh = Fresh::avoiding(&g.nodes);
        let top = fresh.label();
        let mut nodes = g.nodes.clone();
        nodes.push(top.clone());
        let mut edges = g.edges.clone();
        edges.push((g.embed_a[a.top()].clone(), top.clone()));
        for n in p.pen() {
            edges.push((g.embed_b[n].clone(), top.clone()));
        }
        p = normalize(&RawPointedGraph { nodes, edges, top })
            .expect("glueing keeps the graph acyclic");
    }
    let collapses = p.collapse_all();
    let by_set: BTreeMap<&HFSet, &Label> = p
        .nodes()
        .iter()
        .zip(&collapses)
        .map(|(l, c)| (c, l))
        .collect();
    let nodes = params
        .iter()
        .map(|a| by_set[&crate::memcode::collapse(a)].clone())
        .collect();
    (p, nodes)
}

/// Translates `φ`, whose free variables must be among `a1 … an` for the
/// `n` parameters. Nodes of `P` standing for parameters are relabeled
/// `a{i}` (first index wins); the rest `p0, p1, …` in topological order.
pub fn etr_star_translate(phi: &Formula, params: &[MemCode]) -> Result<EtrStar, TranslateError> {
    if !phi.is_sigma0() || !phi.is_pure_set_language() {
        return Err(TranslateError::NotSigma0(phi.to_string()));
    }
    let names: Vec<Var> = (1..=params.len()).map(|i| format!("a{i}")).collect();
    if let Some(x) = phi.free_vars().into_iter().find(|x| !names.contains(x)) {
        return Err(TranslateError::UnknownParameter(x, params.len()));
    }
    if params.is_empty() {
        let empty = crate::memcode::canonical_code(&HFSet::empty());
        let out = etr_star_translate(phi, std::slice::from_ref(&empty))?;
        return Ok(EtrStar {
            params: BTreeMap::new(),
            ..out
        });
    }
    let (p, nodes) = parameter_code(params);
    let mut relabel: BTreeMap<Label, Label> = BTreeMap::new();
    for (name, n) in names.iter().zip(&nodes) {
        relabel.entry(n.clone()).or_insert_with(|| name.clone());
    }
    let mut k = 0;
    for n in p.topological() {
        relabel.entry(n.clone()).or_insert_with(|| {
            k += 1;
            format!("p{}", k - 1)
        });
    }
    let code = p.relabel(|l| relabel[l].clone());
    let param_nodes = names
        .iter()
        .zip(&nodes)
        .map(|(a, n)| (a.clone(), relabel[n].clone()))
        .collect();
    let class = Names::new(phi.all_names()).fresh("P");
    let formula = star(phi, &ClassTerm::Sym(class.clone()));
    Ok(EtrStar {
        formula,
        class,
        code,
        params: param_nodes,
    })
}

fn star(f: &Formula, p: &ClassTerm) -> Formula {
    use build::*;
    use Formula::*;
    let edge = |u: &str, v: &str| and([inclass2(u, v, p.clone()), not(eq(u, v))]);
    match f {
        Eq(u, v) => eq(u, v),
        In(u, v) => edge(u, v),
        Not(g) => not(star(g, p)),
        And(gs) => And(gs.iter().map(|g| star(g, p)).collect()),
        Or(gs) => Or(gs.iter().map(|g| star(g, p)).collect()),
        Implies(a, b) => implies(star(a, p), star(b, p)),
        ExistsIn(x, y, g) => ex(x, and([edge(x, y), star(g, p)])),
        ForallIn(x, y, g) => all(x, implies(edge(x, y), star(g, p))),
        other => unreachable!("checked Σ₀: {other}"),
    }
}
