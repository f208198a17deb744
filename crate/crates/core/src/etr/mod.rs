//! Recursion along finite well-founded relations, solution checking and
//! comparison of well-orders.

mod layered;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::hfset::{hf_make, kpair, HFSet, HfError};
use crate::logic::{ClassVal, EvalError, Evaluator, Formula, SOModel, Valuation, Var};
use crate::order::WellOrder;

pub use layered::{layered_truth, truth_stages};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EtrError {
    #[error("relation has a cycle through {0}")]
    Cyclic(String),
    #[error("ill-formed step formula: {0}")]
    IllFormed(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Hf(#[from] HfError),
}

/// A finite relation whose transitive closure is irreflexive, stored as
/// that closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WfRelation<L> {
    domain: Vec<L>,
    below: BTreeMap<L, BTreeSet<L>>,
}

impl<L: Clone + Ord + std::fmt::Debug> WfRelation<L> {
    /// `domain` lists the field (order is the tie-break for topological
    /// sorting); pair endpoints missing from it are added.
    pub fn new(domain: Vec<L>, pairs: &[(L, L)]) -> Result<Self, EtrError> {
        let mut dom = Vec::new();
        let mut seen = BTreeSet::new();
        for l in domain
            .into_iter()
            .chain(pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]))
        {
            if seen.insert(l.clone()) {
                dom.push(l);
            }
        }
        let mut below: BTreeMap<L, BTreeSet<L>> =
            dom.iter().map(|l| (l.clone(), BTreeSet::new())).collect();
        for (a, b) in pairs {
            below.get_mut(b).expect("added above").insert(a.clone());
        }
        loop {
            let mut changed = false;
            for l in &dom {
                let mut add = BTreeSet::new();
                for p in &below[l] {
                    add.extend(below[p].iter().filter(|q| !below[l].contains(*q)).cloned());
                }
                if !add.is_empty() {
                    below.get_mut(l).expect("in domain").extend(add);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if let Some(l) = dom.iter().find(|l| below[*l].contains(*l)) {
            return Err(EtrError::Cyclic(format!("{l:?}")));
        }
        Ok(WfRelation { domain: dom, below })
    }

    /// The strict order of a well-order.
    pub fn chain(order: &[L]) -> Self {
        let pairs: Vec<(L, L)> = order
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        WfRelation::new(order.to_vec(), &pairs).expect("a chain is acyclic")
    }

    pub fn domain(&self) -> &[L] {
        &self.domain
    }

    /// `a <_R b`
    pub fn less(&self, a: &L, b: &L) -> bool {
        self.below.get(b).is_some_and(|s| s.contains(a))
    }

    /// `{a : a <_R b}`
    pub fn predecessors(&self, b: &L) -> &BTreeSet<L> {
        &self.below[b]
    }

    /// Kahn's algorithm, taking the first ready element in domain order
    /// (or the last one when `reversed`).
    pub fn topological(&self, reversed: bool) -> Vec<L> {
        let mut done: BTreeSet<L> = BTreeSet::new();
        let mut out = Vec::with_capacity(self.domain.len());
        while out.len() < self.domain.len() {
            let ready =
                |l: &&L| !done.contains(*l) && self.below[*l].iter().all(|p| done.contains(p));
            let next = if reversed {
                self.domain.iter().rev().find(ready)
            } else {
                self.domain.iter().find(ready)
            };
            let l = next.expect("acyclic").clone();
            done.insert(l.clone());
            out.push(l);
        }
        out
    }
}

/// `S` as its slices `(S)_r`, one per element of the domain.
pub type Slices<L, T> = BTreeMap<L, BTreeSet<T>>;

/// Runs a recursion along `rel`: each slice is `step(r, S↾r)`, where the
/// map passed holds exactly the slices of the `<_R`-predecessors of `r`.
pub fn solve_with<L, T, E>(
    rel: &WfRelation<L>,
    reversed: bool,
    mut step: impl FnMut(&L, &Slices<L, T>) -> Result<BTreeSet<T>, E>,
) -> Result<Slices<L, T>, E>
where
    L: Clone + Ord + std::fmt::Debug,
    T: Clone + Ord,
{
    let mut s: Slices<L, T> = BTreeMap::new();
    for r in rel.topological(reversed) {
        let partial: Slices<L, T> = rel
            .predecessors(&r)
            .iter()
            .map(|p| (p.clone(), s[p].clone()))
            .collect();
        let slice = step(&r, &partial)?;
        s.insert(r, slice);
    }
    Ok(s)
}

/// A step formula `φ(x, [i,] Y)` over a model; other free classes must be
/// named in the model and act as the parameters `A`.
#[derive(Debug, Clone)]
pub struct RecursionInstance<'m> {
    pub model: &'m SOModel,
    pub step: Formula,
    pub x: Var,
    /// Bound to the label `r` of the slice being built; labels must then
    /// lie in the universe.
    pub index: Option<Var>,
    pub y: String,
}

impl<'m> RecursionInstance<'m> {
    pub fn new(model: &'m SOModel, step: Formula) -> Self {
        RecursionInstance {
            model,
            step,
            x: "x".into(),
            index: None,
            y: "Y".into(),
        }
    }

    pub fn with_index(mut self, i: impl Into<Var>) -> Self {
        self.index = Some(i.into());
        self
    }

    pub fn check(&self) -> Result<(), EtrError> {
        let allowed: BTreeSet<&String> = std::iter::once(&self.x)
            .chain(self.index.as_ref())
            .collect();
        if let Some(z) = self.step.free_vars().iter().find(|z| !allowed.contains(z)) {
            return Err(EtrError::IllFormed(format!("free set variable {z}")));
        }
        for c in self.step.free_classes() {
            if c != self.y && !self.model.named().contains_key(&c) {
                return Err(EtrError::IllFormed(format!("unknown class {c}")));
            }
        }
        if self.model.named().contains_key(&self.y) {
            return Err(EtrError::IllFormed(format!(
                "{} is also a parameter class",
                self.y
            )));
        }
        if !self.step.is_first_order()
            && matches!(self.model.family(), crate::logic::ClassFamily::Full)
        {
            self.model.classes()?;
        }
        Ok(())
    }

    /// `S↾r` as a class of pairs `(r', x)`.
    pub fn partial_class(&self, partial: &Slices<HFSet, HFSet>) -> ClassVal {
        ClassVal::new(
            partial
                .iter()
                .flat_map(|(r, xs)| xs.iter().map(move |x| kpair(r, x))),
        )
    }

    /// `{x : φ(x, [r,] S↾r)}`
    pub fn slice(
        &self,
        r: &HFSet,
        partial: &Slices<HFSet, HFSet>,
    ) -> Result<BTreeSet<HFSet>, EtrError> {
        let y = self.partial_class(partial);
        let ev = Evaluator::new(self.model);
        let mut base = Valuation::new().class(self.y.clone(), y);
        if let Some(i) = &self.index {
            base = base.set(i.clone(), r.clone());
        }
        let mut out = BTreeSet::new();
        for a in self.model.universe() {
            if ev.eval(&self.step, &base.clone().set(self.x.clone(), a.clone()))? {
                out.insert(a.clone());
            }
        }
        Ok(out)
    }
}

/// The solution: slices indexed by the labels of `dom R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub slices: Slices<HFSet, HFSet>,
}

impl Solution {
    /// `S` as a set of Kuratowski pairs `(r, x)`.
    pub fn as_set(&self) -> HFSet {
        hf_make(
            self.slices
                .iter()
                .flat_map(|(r, xs)| xs.iter().map(move |x| kpair(r, x))),
        )
    }

    pub fn slice(&self, r: &HFSet) -> Option<&BTreeSet<HFSet>> {
        self.slices.get(r)
    }
}

pub fn etr_solve(inst: &RecursionInstance, rel: &WfRelation<HFSet>) -> Result<Solution, EtrError> {
    etr_solve_ordered(inst, rel, false)
}

/// As [`etr_solve`], choosing the opposite tie-break among ready elements.
pub fn etr_solve_ordered(
    inst: &RecursionInstance,
    rel: &WfRelation<HFSet>,
    reversed: bool,
) -> Result<Solution, EtrError> {
    inst.check()?;
    let slices = solve_with(rel, reversed, |r, partial| inst.slice(r, partial))?;
    Ok(Solution { slices })
}

/// The first slice (in topological order) whose equation fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceMismatch {
    pub label: HFSet,
    pub expected: BTreeSet<HFSet>,
    pub found: Option<BTreeSet<HFSet>>,
}

/// Checks `(S)_r = {x : φ(x, S↾r)}` for every `r ∈ dom R` and that `S` has no
/// other slices.
pub fn etr_check(
    inst: &RecursionInstance,
    rel: &WfRelation<HFSet>,
    s: &Solution,
) -> Result<Result<(), SliceMismatch>, EtrError> {
    inst.check()?;
    for r in rel.topological(false) {
        let partial: Slices<HFSet, HFSet> = rel
            .predecessors(&r)
            .iter()
            .map(|p| (p.clone(), s.slices.get(p).cloned().unwrap_or_default()))
            .collect();
        let expected = inst.slice(&r, &partial)?;
        let found = s.slices.get(&r);
        if found != Some(&expected) {
            return Ok(Err(SliceMismatch {
                label: r,
                expected,
                found: found.cloned(),
            }));
        }
    }
    if let Some(extra) = s.slices.keys().find(|r| !rel.domain().contains(r)) {
        return Ok(Err(SliceMismatch {
            label: extra.clone(),
            expected: BTreeSet::new(),
            found: s.slices.get(extra).cloned(),
        }));
    }
    Ok(Ok(()))
}

/// Every `S ⊆ dom R × universe` passing [`etr_check`]. Refuses more than 20 pairs.
pub fn exhaustive_solutions(
    inst: &RecursionInstance,
    rel: &WfRelation<HFSet>,
) -> Result<Vec<Solution>, EtrError> {
    let cells: Vec<(HFSet, HFSet)> = rel
        .domain()
        .iter()
        .flat_map(|r| {
            inst.model
                .universe()
                .iter()
                .map(move |x| (r.clone(), x.clone()))
        })
        .collect();
    if cells.len() > 20 {
        return Err(HfError::CapExceeded {
            what: "candidate pairs",
            requested: cells.len(),
            cap: 20,
        }
        .into());
    }
    let mut out = Vec::new();
    for mask in 0u64..1 << cells.len() {
        let mut slices: Slices<HFSet, HFSet> = rel
            .domain()
            .iter()
            .map(|r| (r.clone(), BTreeSet::new()))
            .collect();
        for (k, (r, x)) in cells.iter().enumerate() {
            if mask >> k & 1 == 1 {
                slices.get_mut(r).expect("domain label").insert(x.clone());
            }
        }
        let s = Solution { slices };
        if etr_check(inst, rel, &s)?.is_ok() {
            out.push(s);
        }
    }
    Ok(out)
}

/// How two well-orders compare; embeddings map onto initial segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison<A, B> {
    /// `Γ` embeds onto a proper initial segment of `Δ`.
    Shorter(Vec<(A, B)>),
    /// `Δ` embeds onto a proper initial segment of `Γ`.
    Longer(Vec<(B, A)>),
    /// Mutually inverse isomorphisms.
    Equal(Vec<(A, B)>, Vec<(B, A)>),
}

/// Sends each `g` to the least element of `Δ` not used by earlier elements,
/// computed as a recursion along `Γ`; the side that runs out first is shorter.
pub fn compare_wellorders<A, B>(gamma: &WellOrder<A>, delta: &WellOrder<B>) -> Comparison<A, B>
where
    A: Clone + Ord + std::hash::Hash + std::fmt::Debug,
    B: Clone + Ord + std::hash::Hash + std::fmt::Debug,
{
    fn embed<A, B>(from: &WellOrder<A>, to: &WellOrder<B>) -> Vec<(A, B)>
    where
        A: Clone + Ord + std::hash::Hash + std::fmt::Debug,
        B: Clone + Ord + std::hash::Hash + std::fmt::Debug,
    {
        let rel = WfRelation::chain(from.elements());
        let s: Slices<A, B> = solve_with(&rel, false, |_, partial: &Slices<A, B>| {
            let used: BTreeSet<&B> = partial.values().flatten().collect();
            Ok::<_, std::convert::Infallible>(
                to.elements()
                    .iter()
                    .find(|d| !used.contains(d))
                    .cloned()
                    .into_iter()
                    .collect(),
            )
        })
        .expect("infallible");
        from.elements()
            .iter()
            .map_while(|a| s[a].iter().next().map(|b| (a.clone(), b.clone())))
            .collect()
    }
    match gamma.len().cmp(&delta.len()) {
        std::cmp::Ordering::Less => Comparison::Shorter(embed(gamma, delta)),
        std::cmp::Ordering::Greater => Comparison::Longer(embed(delta, gamma)),
        std::cmp::Ordering::Equal => Comparison::Equal(embed(gamma, delta), embed(delta, gamma)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hfset::{hf_ordinal, hf_v_stage};
    use crate::logic::parse_formula;
    use crate::Caps;

    fn ordinals(n: usize) -> Vec<HFSet> {
        (0..n).map(hf_ordinal).collect()
    }

    #[test]
    fn cyclic_rejected_and_closure_taken() {
        let o = ordinals(3);
        assert!(matches!(
            WfRelation::new(
                vec![],
                &[(o[0].clone(), o[1].clone()), (o[1].clone(), o[0].clone())]
            ),
            Err(EtrError::Cyclic(_))
        ));
        let r = WfRelation::chain(&o);
        assert!(r.less(&o[0], &o[2]));
        assert!(!r.less(&o[2], &o[0]));
    }

    #[test]
    fn trivial_step_fills_every_slice() {
        let m = SOModel::v_stage(2).unwrap();
        let inst = RecursionInstance::new(&m, parse_formula("(= x x)").unwrap());
        let rel = WfRelation::chain(&ordinals(2));
        let s = etr_solve(&inst, &rel).unwrap();
        assert!(s.slices.values().all(|xs| xs.len() == 2));
        assert_eq!(etr_check(&inst, &rel, &s).unwrap(), Ok(()));
    }

    #[test]
    fn v_hierarchy_recursion() {
        let m = SOModel::v_stage(4).unwrap();
        let step = parse_formula("(ex r (and (in r i) (allin z x (inclass r z Y))))").unwrap();
        let inst = RecursionInstance::new(&m, step).with_index("i");
        let rel = WfRelation::chain(&ordinals(4));
        let s = etr_solve(&inst, &rel).unwrap();
        for k in 0..4 {
            let v = hf_v_stage(k, &Caps::default()).unwrap();
            assert_eq!(
                s.slice(&hf_ordinal(k))
                    .unwrap()
                    .iter()
                    .cloned()
                    .collect::<Vec<_>>(),
                v.elements()
            );
        }
        let mut bad = s.clone();
        bad.slices
            .get_mut(&hf_ordinal(2))
            .unwrap()
            .insert(hf_ordinal(3));
        assert_eq!(
            etr_check(&inst, &rel, &bad).unwrap().unwrap_err().label,
            hf_ordinal(2)
        );
    }

    #[test]
    fn unique_on_two_by_two() {
        let m = SOModel::v_stage(2).unwrap();
        let step = parse_formula("(not (ex r (inclass r x Y)))").unwrap();
        let inst = RecursionInstance::new(&m, step);
        let rel = WfRelation::chain(&ordinals(2));
        let sols = exhaustive_solutions(&inst, &rel).unwrap();
        let s = etr_solve(&inst, &rel).unwrap();
        assert_eq!(s.slice(&hf_ordinal(1)).unwrap().len(), 0);
        assert_eq!(sols, vec![s]);
    }

    #[test]
    fn comparison() {
        let g = WellOrder::new(vec!["a", "b"]).unwrap();
        let d = WellOrder::new(vec!["p", "q", "r"]).unwrap();
        assert_eq!(
            compare_wellorders(&g, &d),
            Comparison::Shorter(vec![("a", "p"), ("b", "q")])
        );
        match compare_wellorders(&d, &d) {
            Comparison::Equal(f, h) => {
                assert_eq!(f.len(), 3);
                assert!(f.iter().zip(&h).all(|(a, b)| a.0 == b.1 && a.1 == b.0));
            }
            other => panic!("{other:?}"),
        }
    }
}
