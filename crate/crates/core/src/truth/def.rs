//! `Def` over finite structures and codes, and the hierarchy `L_Γ(A)` over codes.

use std::collections::BTreeSet;

use crate::hfset::{hf_unack_u64, powerset, HFSet, HfError};
use crate::logic::{build, ClassFamily, ClassTerm, ClassVal, Formula, SOModel, Valuation};
use crate::memcode::{normalize, Fresh, MemCode};
use crate::order::WellOrder;

use super::domain::enumerate_core_formulas;

/// How definable classes are collected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefMode {
    /// Every subset: finite sets are defined by disjunctions of equalities
    /// with parameters.
    FullParams,
    /// Formulas of size at most `max_formula_size` in the defining variable
    /// `x`, one auxiliary bound variable and up to `max_params` set parameters.
    Bounded {
        max_formula_size: usize,
        max_params: usize,
    },
}

const MAX_SUBSETS_UNIVERSE: usize = 20;

fn full(n: usize) -> Result<(), HfError> {
    if n > MAX_SUBSETS_UNIVERSE {
        return Err(HfError::CapExceeded {
            what: "universe size for full parameters",
            requested: n,
            cap: MAX_SUBSETS_UNIVERSE,
        });
    }
    Ok(())
}

/// Extensions `{a : m ⊨ φ[a, params]}` of the candidate formulas, each
/// passed through `rewrite` before evaluation.
fn extensions(
    m: &SOModel,
    classes: &[String],
    max_size: usize,
    max_params: usize,
    rewrite: &dyn Fn(&Formula) -> Formula,
) -> BTreeSet<Vec<HFSet>> {
    let params: Vec<String> = (1..=max_params).map(|i| format!("p{i}")).collect();
    let mut vars = vec!["x".to_string(), "y".to_string()];
    vars.extend(params.iter().cloned());
    let mut out = BTreeSet::new();
    for f in enumerate_core_formulas(&vars, classes, max_size, false)
        .into_iter()
        .flatten()
    {
        let free = f.free_vars();
        if free.contains("y") {
            continue;
        }
        let g = rewrite(&f);
        let used: Vec<&String> = params.iter().filter(|p| free.contains(*p)).collect();
        let mut assignments = vec![Valuation::new()];
        for p in &used {
            assignments = assignments
                .into_iter()
                .flat_map(|v| {
                    m.universe()
                        .iter()
                        .map(move |a| v.clone().set((*p).clone(), a.clone()))
                })
                .collect();
        }
        for v in assignments {
            let ext: Vec<HFSet> = m
                .universe()
                .iter()
                .filter(|a| {
                    crate::logic::eval(m, &g, &v.clone().set("x", (*a).clone()))
                        .expect("closed over x and parameters")
                })
                .cloned()
                .collect();
            out.insert(ext);
        }
    }
    out
}

/// The classes definable over `m` from the class predicates `params`
/// (named `A0`, `A1`, …) and set parameters, in Ackermann order of members.
pub fn def_op(m: &SOModel, params: &[ClassVal], mode: DefMode) -> Result<Vec<ClassVal>, HfError> {
    let exts: BTreeSet<Vec<HFSet>> = match mode {
        DefMode::FullParams => {
            full(m.universe().len())?;
            powerset(m.universe())
                .into_iter()
                .map(|s| s.elements().to_vec())
                .collect()
        }
        DefMode::Bounded {
            max_formula_size,
            max_params,
        } => {
            let mut mm =
                SOModel::structure(m.universe().to_vec(), ClassFamily::Explicit(Vec::new()))
                    .expect("universe already checked");
            let mut names = Vec::new();
            for (i, c) in params.iter().enumerate() {
                let name = format!("A{i}");
                let restricted =
                    ClassVal::new(c.members().iter().filter(|a| m.contains(a)).cloned());
                mm = mm
                    .with_class(name.clone(), restricted)
                    .expect("restricted to the universe");
                names.push(name);
            }
            extensions(&mm, &names, max_formula_size, max_params, &|f| f.clone())
        }
    };
    let mut out: Vec<ClassVal> = exts.into_iter().map(ClassVal::new).collect();
    out.sort();
    Ok(out)
}

const MEM: &str = "Mem";

/// Reads `∈` and bounded quantifiers through the binary class `Mem`.
fn relativize(f: &Formula) -> Formula {
    use Formula::*;
    let b = |g: &Formula| Box::new(relativize(g));
    let mem = |u: &str, v: &str| build::inclass2(u, v, ClassTerm::sym(MEM));
    match f {
        In(u, v) => mem(u, v),
        Not(g) => Not(b(g)),
        And(gs) => And(gs.iter().map(relativize).collect()),
        Or(gs) => Or(gs.iter().map(relativize).collect()),
        Implies(p, q) => Implies(b(p), b(q)),
        Exists(x, g) => Exists(x.clone(), b(g)),
        Forall(x, g) => Forall(x.clone(), b(g)),
        ExistsIn(x, y, g) => Exists(x.clone(), Box::new(build::and([mem(x, y), relativize(g)]))),
        ForallIn(x, y, g) => Forall(
            x.clone(),
            Box::new(build::implies(mem(x, y), relativize(g))),
        ),
        atom => atom.clone(),
    }
}

/// `def_code_with(e, None, mode)`.
pub fn def_code(e: &MemCode, mode: DefMode) -> Result<MemCode, HfError> {
    def_code_with(e, None, mode)
}

/// A code for `Def(collapse e)`, computed on the structure `(pen e, ◁)`
/// itself; `a` (read through the collapse) is an optional class predicate.
pub fn def_code_with(e: &MemCode, a: Option<&ClassVal>, mode: DefMode) -> Result<MemCode, HfError> {
    let pen: Vec<String> = e.pen().into_iter().cloned().collect();
    let point = |i: usize| hf_unack_u64(i as u64);
    let subsets: BTreeSet<Vec<usize>> = match mode {
        DefMode::FullParams => {
            full(pen.len())?;
            (0u64..1 << pen.len())
                .map(|mask| (0..pen.len()).filter(|i| mask >> i & 1 == 1).collect())
                .collect()
        }
        DefMode::Bounded {
            max_formula_size,
            max_params,
        } => {
            let universe: Vec<HFSet> = (0..pen.len()).map(point).collect();
            let mut edges = Vec::new();
            for (i, x) in pen.iter().enumerate() {
                for (j, y) in pen.iter().enumerate() {
                    if e.has_edge(x, y) {
                        edges.push((point(i), point(j)));
                    }
                }
            }
            let mut m = SOModel::structure(universe, ClassFamily::Explicit(Vec::new()))
                .expect("distinct points")
                .with_class(MEM, ClassVal::of_pairs(edges.iter().map(|(x, y)| (x, y))))
                .expect("pairs of points");
            let mut names = Vec::new();
            if let Some(a) = a {
                let members = pen
                    .iter()
                    .enumerate()
                    .filter(|(_, n)| a.contains(&e.collapse_node(n).expect("pen node")))
                    .map(|(i, _)| point(i));
                m = m.with_class("A0", ClassVal::new(members)).expect("points");
                names.push("A0".to_string());
            }
            let index = |x: &HFSet| {
                pen.iter()
                    .enumerate()
                    .position(|(i, _)| point(i) == *x)
                    .expect("point")
            };
            extensions(&m, &names, max_formula_size, max_params, &relativize)
                .into_iter()
                .map(|s| s.iter().map(index).collect())
                .collect()
        }
    };
    let mut fresh = Fresh::avoiding(e.nodes());
    let mut raw = e.to_raw();
    let top = fresh.label();
    for s in subsets {
        let node = fresh.label();
        for i in s {
            raw.edges.push((pen[i].clone(), node.clone()));
        }
        raw.edges.push((node.clone(), top.clone()));
        raw.nodes.push(node);
    }
    raw.nodes.push(top.clone());
    raw.top = top;
    Ok(normalize(&raw).expect("surgery keeps the graph acyclic"))
}

/// `L_Γ(A)` for finite Γ: the empty code, then `def_code` once per element.
pub fn l_code<T: Clone + Eq + std::hash::Hash>(
    gamma: &WellOrder<T>,
    a: Option<&ClassVal>,
    mode: DefMode,
) -> Result<MemCode, HfError> {
    let mut e = crate::memcode::canonical_code(&HFSet::empty());
    for _ in 0..gamma.len() {
        e = def_code_with(&e, a, mode)?;
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hfset::hf_v_stage;
    use crate::memcode::{canonical_code, collapse, vin};
    use crate::Caps;

    #[test]
    fn def_examples() {
        let v1 = SOModel::v_stage(1).unwrap();
        assert_eq!(def_op(&v1, &[], DefMode::FullParams).unwrap().len(), 2);
        let bounded = DefMode::Bounded {
            max_formula_size: 3,
            max_params: 0,
        };
        assert_eq!(def_op(&v1, &[], bounded).unwrap().len(), 2);
        assert_eq!(
            collapse(&def_code(&canonical_code(&HFSet::empty()), DefMode::FullParams).unwrap()),
            hf_unack_u64(1)
        );
        let v1set = hf_v_stage(1, &Caps::default()).unwrap();
        assert_eq!(
            collapse(&def_code(&canonical_code(&v1set), DefMode::FullParams).unwrap()),
            hf_unack_u64(3)
        );
    }

    #[test]
    fn l_hierarchy_is_v_hierarchy() {
        let mut prev = None;
        for k in 0..=4 {
            let l = l_code(
                &WellOrder::<String>::of_length(k),
                None,
                DefMode::FullParams,
            )
            .unwrap();
            assert_eq!(collapse(&l), hf_v_stage(k, &Caps::default()).unwrap());
            if let Some(p) = prev {
                assert!(vin(&p, &l).is_member());
            }
            prev = Some(l);
        }
    }

    #[test]
    fn bounded_within_full() {
        let v2 = SOModel::v_stage(2).unwrap();
        let full: BTreeSet<ClassVal> = def_op(&v2, &[], DefMode::FullParams)
            .unwrap()
            .into_iter()
            .collect();
        let b = def_op(
            &v2,
            &[],
            DefMode::Bounded {
                max_formula_size: 3,
                max_params: 1,
            },
        )
        .unwrap();
        assert!(b.iter().all(|c| full.contains(c)));
        assert_eq!(b.len(), full.len());
    }
}
