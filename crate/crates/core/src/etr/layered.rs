//! `Tr_Γ` as the solution of a recursion along stages `(level, formula size)`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::{solve_with, Slices, WfRelation};
use crate::hfset::HFSet;
use crate::logic::SOModel;
use crate::order::WellOrder;
use crate::truth::table::{clause, Domain, Key};
use crate::truth::{TableSpec, TruthError, TruthTable};

type Stage = (usize, usize);

fn stages(levels: usize, dom: &Domain) -> Vec<Stage> {
    let max = dom.formulas.iter().map(|f| f.size()).max().unwrap_or(0);
    (0..levels)
        .flat_map(|l| (1..=max).map(move |s| (l, s)))
        .collect()
}

fn solve(m: &SOModel, gamma: &WellOrder<HFSet>, dom: &Domain) -> Slices<Stage, Key> {
    let rel = WfRelation::chain(&stages(gamma.len(), dom));
    let stage_of = |k: &Key| (k.0, dom.formulas[k.1].size());
    let mut by_size: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, f) in dom.formulas.iter().enumerate() {
        by_size.entry(f.size()).or_default().push(i);
    }
    solve_with(&rel, false, |&(l, s), partial: &Slices<Stage, Key>| {
        let lookup = |k: &Key| {
            partial
                .get(&stage_of(k))
                .expect("clauses look only at earlier stages")
                .contains(k)
        };
        let mut slice = BTreeSet::new();
        for &i in by_size.get(&s).into_iter().flatten() {
            for vals in dom.valuations(m, i) {
                let key = (l, i, vals);
                if clause(m, gamma, dom, &key, &lookup) {
                    slice.insert(key);
                }
            }
        }
        Ok::<_, std::convert::Infallible>(slice)
    })
    .expect("infallible")
}

/// Builds the table stage by stage: stage `(γ, n)` holds the level-`γ`
/// truths of size-`n` formulas, computed by the clause for their outermost
/// symbol from earlier stages only.
pub fn layered_truth(
    m: &SOModel,
    gamma: &WellOrder<HFSet>,
    spec: &TableSpec,
) -> Result<TruthTable, TruthError> {
    let domain = Domain::new(m, spec);
    let slices = solve(m, gamma, &domain);
    let truths: HashSet<Key> = slices.into_values().flatten().collect();
    let entries = truths
        .iter()
        .map(|k| domain.entry(k))
        .collect::<Result<BTreeSet<_>, _>>()?;
    Ok(TruthTable {
        gamma: gamma.clone(),
        spec: spec.clone(),
        entries,
        domain,
        truths,
    })
}

/// Number of truths in each stage `(level position, formula size)`.
pub fn truth_stages(
    m: &SOModel,
    gamma: &WellOrder<HFSet>,
    spec: &TableSpec,
) -> Vec<((usize, usize), usize)> {
    let domain = Domain::new(m, spec);
    solve(m, gamma, &domain)
        .into_iter()
        .map(|(st, keys)| (st, keys.len()))
        .collect()
}
