use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use classcode::etr::{
    compare_wellorders, etr_check, etr_solve, etr_solve_ordered, Comparison, RecursionInstance,
    WfRelation,
};
use classcode::hfset::{hf_make, hf_ordinal, HFSet};
use classcode::logic::{ClassFamily, SOModel};
use classcode::memcode::{canonical_code, collapse, vin};
use classcode::sample::{random_code, FormulaGen};
use classcode::truth::{def_code, def_op, DefMode};
use classcode::unroll::{embedding, unroll};
use classcode::WellOrder;

fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A random acyclic relation on `dom` (edges go upward).
fn random_relation(r: &mut StdRng, dom: Vec<HFSet>) -> WfRelation<HFSet> {
    let n = dom.len();
    let mut pairs = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if r.gen_bool(0.4) {
                pairs.push((dom[i].clone(), dom[j].clone()));
            }
        }
    }
    WfRelation::new(dom, &pairs).unwrap()
}

fn step(r: &mut StdRng) -> classcode::logic::Formula {
    let gen = FormulaGen {
        free: vec!["x".into()],
        classes: vec!["Y".into()],
        unbounded: false,
        max_quantifiers: 2,
        ..FormulaGen::default()
    };
    let body = gen.sample(r);
    if r.gen_bool(0.5) {
        body
    } else {
        classcode::logic::parse_formula(&format!(
            "(or {body} (ex r (and (in r i) (allin z x (inclass r z Y)))))"
        ))
        .unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn solutions_check_and_ignore_tie_breaking(seed in any::<u64>(), n in 1usize..=6, stage in 2usize..=3) {
        let mut r = rng(seed);
        let m = SOModel::v_stage(stage).unwrap();
        let phi = step(&mut r);
        let indexed = phi.free_vars().contains("i");
        let mut inst = RecursionInstance::new(&m, phi.clone());
        let dom = if indexed {
            inst = inst.with_index("i");
            m.universe().iter().take(n).cloned().collect()
        } else {
            (0..n).map(hf_ordinal).collect()
        };
        let rel = random_relation(&mut r, dom);
        let s = etr_solve(&inst, &rel).unwrap();
        prop_assert_eq!(etr_check(&inst, &rel, &s).unwrap(), Ok(()), "{}", phi);
        prop_assert_eq!(&etr_solve_ordered(&inst, &rel, true).unwrap(), &s);
        let label = rel.domain()[r.gen_range(0..rel.domain().len())].clone();
        let x = m.universe()[r.gen_range(0..m.universe().len())].clone();
        let mut bad = s.clone();
        let slice = bad.slices.get_mut(&label).unwrap();
        if !slice.remove(&x) {
            slice.insert(x);
        }
        prop_assert!(etr_check(&inst, &rel, &bad).unwrap().is_err());
    }

    #[test]
    fn comparison_trichotomy(n in 0usize..8, k in 0usize..8) {
        let g = WellOrder::new((0..n).collect::<Vec<_>>()).unwrap();
        let d = WellOrder::new((0..k).map(|i| format!("d{i}")).collect::<Vec<_>>()).unwrap();
        let onto_prefix = |pairs: &[(usize, String)]| {
            pairs.iter().enumerate().all(|(i, (a, b))| *a == i && *b == format!("d{i}"))
        };
        match compare_wellorders(&g, &d) {
            Comparison::Shorter(f) => {
                prop_assert!(n < k);
                prop_assert_eq!(f.len(), n);
                prop_assert!(onto_prefix(&f));
            }
            Comparison::Longer(f) => {
                prop_assert!(n > k);
                prop_assert_eq!(f.len(), k);
                let flipped: Vec<_> = f.into_iter().map(|(b, a)| (a, b)).collect();
                prop_assert!(onto_prefix(&flipped));
            }
            Comparison::Equal(f, h) => {
                prop_assert_eq!(n, k);
                prop_assert!(onto_prefix(&f));
                prop_assert!(f.iter().zip(&h).all(|(a, b)| a.0 == b.1 && a.1 == b.0));
            }
        }
    }
}

fn def_set(universe: &[HFSet], mode: DefMode) -> HFSet {
    let m = SOModel::structure(universe.to_vec(), ClassFamily::Explicit(Vec::new())).unwrap();
    hf_make(
        def_op(&m, &[], mode)
            .unwrap()
            .into_iter()
            .map(|c| hf_make(c.members().iter().cloned())),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn def_code_agrees_with_def_op(seed in any::<u64>()) {
        let mut r = rng(seed);
        let e = random_code(&mut r, 6);
        let x = collapse(&e);
        for mode in [DefMode::FullParams, DefMode::Bounded { max_formula_size: 3, max_params: 1 }] {
            prop_assert_eq!(collapse(&def_code(&e, mode).unwrap()), def_set(x.elements(), mode), "{}", x);
        }
    }

    #[test]
    fn embedding_preserves_membership(stage in 0usize..=3, budget in 1usize..=5) {
        let m = SOModel::v_stage(stage).unwrap();
        let u = unroll(&SOModel::v_stage(2).unwrap(), budget).unwrap();
        let emb = embedding(&m);
        for (a, ea) in &emb {
            prop_assert_eq!(&collapse(ea), a);
            for (b, eb) in &emb {
                prop_assert_eq!(vin(ea, eb).is_member(), b.contains(a));
                prop_assert_eq!(a == b, collapse(ea) == collapse(eb));
            }
        }
        for x in &u.elements {
            for y in &u.elements {
                prop_assert_eq!(vin(&canonical_code(x), &canonical_code(y)).is_member(), y.contains(x));
            }
        }
    }
}
