//! The finite formula domain a truth table is materialized on.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use super::in_truth_language;
use crate::logic::godel::formula_number;
use crate::logic::{build, godel_decode, Formula, SOModel, Valuation, Var};

/// Formulas of AST size at most `size_bound` in the core syntax
/// (`=`, `∈`, unary class atoms, `tr`, `not`, binary `or`, `ex`) over `vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSpec {
    pub size_bound: usize,
    pub vars: Vec<Var>,
}

impl Default for TableSpec {
    fn default() -> Self {
        TableSpec {
            size_bound: 4,
            vars: vec!["x".into(), "y".into()],
        }
    }
}

/// `out[s]` lists the core formulas of size exactly `s` (index 0 is empty).
pub fn enumerate_core_formulas(
    vars: &[Var],
    classes: &[String],
    max_size: usize,
    with_tr: bool,
) -> Vec<Vec<Formula>> {
    use build::*;
    let mut out: Vec<Vec<Formula>> = vec![Vec::new()];
    if max_size == 0 {
        return out;
    }
    let mut atoms = Vec::new();
    for u in vars {
        for v in vars {
            atoms.push(eq(u, v));
            atoms.push(mem(u, v));
        }
        for c in classes {
            atoms.push(inclass(u, c));
        }
    }
    if with_tr {
        for u in vars {
            for v in vars {
                for w in vars {
                    atoms.push(build::tr(u, v, w));
                }
            }
        }
    }
    out.push(atoms);
    for s in 2..=max_size {
        let mut level = Vec::new();
        for f in &out[s - 1] {
            level.push(not(f.clone()));
            for x in vars {
                level.push(ex(x, f.clone()));
            }
        }
        for i in 1..s - 1 {
            for a in &out[i] {
                for b in &out[s - 1 - i] {
                    level.push(or([a.clone(), b.clone()]));
                }
            }
        }
        out.push(level);
    }
    out
}

/// Pool formulas up to the bound, plus every truth-language formula coded
/// by a universe element, closed under subformulas. Sorted by size, then code.
pub fn table_domain(m: &SOModel, spec: &TableSpec) -> Vec<Formula> {
    let classes: Vec<String> = m.named().keys().cloned().collect();
    let mut seen: BTreeMap<(usize, BigUint), Formula> = BTreeMap::new();
    let mut stack: Vec<Formula> =
        enumerate_core_formulas(&spec.vars, &classes, spec.size_bound, true)
            .into_iter()
            .flatten()
            .collect();
    stack.extend(
        m.universe()
            .iter()
            .filter_map(|x| godel_decode(x).ok())
            .filter(|f| in_truth_language(f, m)),
    );
    while let Some(f) = stack.pop() {
        let key = (
            f.size(),
            formula_number(&f).expect("pool names are codable"),
        );
        if seen.contains_key(&key) {
            continue;
        }
        stack.extend(f.children().into_iter().cloned());
        seen.insert(key, f);
    }
    seen.into_values().collect()
}

/// All valuations of exactly the free variables of `f` into the universe.
pub fn valuations_for(m: &SOModel, f: &Formula) -> Vec<Valuation> {
    let free: Vec<Var> = f.free_vars().into_iter().collect();
    let u = m.universe();
    let mut out = vec![Valuation::new()];
    for x in &free {
        out = out
            .into_iter()
            .flat_map(|v| u.iter().map(move |a| v.clone().set(x.clone(), a.clone())))
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    #[test]
    fn core_counts() {
        let v = vec!["x".to_string()];
        let levels = enumerate_core_formulas(&v, &[], 3, true);
        assert_eq!(levels[1].len(), 3);
        assert_eq!(levels[2].len(), 6);
        assert_eq!(levels[3].len(), 12 + 9);
    }

    #[test]
    fn domain_is_subformula_closed_and_sorted() {
        let m = SOModel::v_stage(2).unwrap();
        let d = table_domain(
            &m,
            &TableSpec {
                size_bound: 2,
                vars: vec!["x".into()],
            },
        );
        let set: BTreeSet<String> = d.iter().map(|f| f.to_string()).collect();
        for f in &d {
            for c in f.children() {
                assert!(set.contains(&c.to_string()));
            }
        }
        assert!(d.windows(2).all(|w| w[0].size() <= w[1].size()));
        assert_eq!(valuations_for(&m, &build::eq("x", "y")).len(), 4);
    }
}
