use std::collections::{BTreeMap, HashSet};

use classcode::hfset::{hf_make, hf_ordinal, kpair, HFSet};
use classcode::memcode::*;
use classcode::order::WellOrder;
use classcode::sample::{random_code, random_hf, random_relabel};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn canonical_round_trip(seed in any::<u64>()) {
        let x = random_hf(&mut rng(seed), 4, 3);
        let e = canonical_code(&x);
        prop_assert_eq!(collapse(&e), x.clone());
        prop_assert_eq!(e.len(), x.tc_size());
    }

    #[test]
    fn restrict_below_collapses_to_member(seed in any::<u64>()) {
        let x = random_hf(&mut rng(seed), 4, 3);
        let e = canonical_code(&x);
        for y in x.transitive_closure() {
            let cone = restrict_below(&e, &canonical_label(&y)).unwrap();
            prop_assert_eq!(collapse(&cone), y);
        }
    }

    #[test]
    fn max_ipi_domain_is_shared_values(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (random_code(&mut r, 8), random_code(&mut r, 8));
        let pi = max_ipi(&a, &b);
        prop_assert!(is_initial_partial_iso(&a, &b, &pi.mapping));
        let vals_a = a.collapse_all();
        let vals_b: HashSet<HFSet> = b.collapse_all().into_iter().collect();
        for (i, n) in a.nodes().iter().enumerate() {
            prop_assert_eq!(pi.get(n).is_some(), vals_b.contains(&vals_a[i]));
        }
    }

    #[test]
    fn congruence(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (random_code(&mut r, 7), random_code(&mut r, 7));
        let (a2, b2) = (random_relabel(&mut r, &a), random_relabel(&mut r, &b));
        prop_assert!(iso(&a, &a2).is_some());
        prop_assert_eq!(vin(&a, &b).is_member(), vin(&a2, &b2).is_member());
        prop_assert_eq!(iso(&a, &b).is_some(), iso(&a2, &b2).is_some());
    }

    #[test]
    fn normalize_idempotent_and_collapse_preserving(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..9);
        let nodes: Vec<String> = (0..n).map(|i| format!("q{i}")).collect();
        let mut edges = Vec::new();
        for j in 0..n {
            for i in 0..j {
                if r.gen_bool(0.4) {
                    edges.push((nodes[i].clone(), nodes[j].clone()));
                }
            }
        }
        let top = nodes[r.gen_range(0..n)].clone();
        let raw = RawPointedGraph { nodes: nodes.clone(), edges: edges.clone(), top: top.clone() };
        // Oracle: collapse computed recursively on the raw graph.
        fn direct(x: &str, edges: &[(String, String)]) -> HFSet {
            hf_make(edges.iter().filter(|(_, b)| b == x).map(|(a, _)| direct(a, edges)))
        }
        let code = normalize(&raw).unwrap();
        prop_assert_eq!(collapse(&code), direct(&top, &edges));
        prop_assert_eq!(normalize(&code.to_raw()).unwrap(), code);
    }

    #[test]
    fn foundation_at_code_level(seed in any::<u64>()) {
        let a = random_code(&mut rng(seed), 10);
        let pen: Vec<&Label> = a.pen();
        if !pen.is_empty() {
            prop_assert!(pen.iter().any(|x| pen.iter().all(|y| !a.has_edge(y, x))));
        }
    }

    #[test]
    fn union_contract(seed in any::<u64>()) {
        let x = random_hf(&mut rng(seed), 4, 3);
        prop_assert_eq!(collapse(&union_code(&canonical_code(&x))), x.union());
    }

    #[test]
    fn pair_contract(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (random_code(&mut r, 7), random_code(&mut r, 7));
        let p = pair_code(&a, &b);
        prop_assert_eq!(collapse(&p), hf_make([collapse(&a), collapse(&b)]));
    }

    #[test]
    fn glue_contract(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (random_code(&mut r, 7), random_code(&mut r, 7));
        let g = glue(&a, &b);
        let vals: HashSet<HFSet> = g.nodes.iter().map(|n| collapse(&glued_cone(&g, n).unwrap())).collect();
        prop_assert_eq!(vals.len(), g.nodes.len());
        let mut want: HashSet<HFSet> = a.collapse_all().into_iter().collect();
        want.extend(b.collapse_all());
        prop_assert_eq!(&vals, &want);
        for (n, img) in &g.embed_a {
            prop_assert_eq!(collapse(&glued_cone(&g, img).unwrap()), a.collapse_node(n).unwrap());
        }
    }

    #[test]
    fn wellorder_contract(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_code(&mut r, 7);
        let mut order: Vec<Label> = a.pen().into_iter().cloned().collect();
        order.shuffle(&mut r);
        let w = wellorder_code(&a, &order).unwrap();
        let val = |l: &Label| a.collapse_node(l).unwrap();
        let mut want = Vec::new();
        for (i, x) in order.iter().enumerate() {
            for y in &order[i + 1..] {
                want.push(kpair(&val(x), &val(y)));
            }
        }
        prop_assert_eq!(collapse(&w), hf_make(want));
    }

    #[test]
    fn function_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (random_code(&mut r, 7), random_code(&mut r, 7));
        let pen_b: Vec<Label> = b.pen().into_iter().cloned().collect();
        if pen_b.is_empty() && !a.pen().is_empty() {
            return Ok(());
        }
        let f: BTreeMap<Label, Label> = a
            .pen()
            .into_iter()
            .map(|x| (x.clone(), pen_b.choose(&mut r).unwrap().clone()))
            .collect();
        let g = function_code(&a, &b, &f).unwrap();
        let want = hf_make(f.iter().map(|(x, y)| kpair(&a.collapse_node(x).unwrap(), &b.collapse_node(y).unwrap())));
        prop_assert_eq!(collapse(&g), want);
        prop_assert_eq!(&function_of_code(&g, &a, &b).unwrap(), &f);
        let again = function_code(&a, &b, &function_of_code(&g, &a, &b).unwrap()).unwrap();
        prop_assert!(iso(&again, &g).is_some());
    }
}

#[test]
fn oracle_equivalence_random_up_to_12_nodes() {
    let mut r = rng(12);
    for _ in 0..1000 {
        let a = random_code(&mut r, 12);
        let b = if r.gen_bool(0.3) {
            random_relabel(&mut r, &a)
        } else {
            random_code(&mut r, 12)
        };
        let (ca, cb) = (collapse(&a), collapse(&b));
        assert_eq!(iso(&a, &b).is_some(), ca == cb);
        assert_eq!(vin(&a, &b).is_member(), cb.contains(&ca));
    }
}

#[test]
fn vin_against_members_of_random_sets() {
    let mut r = rng(3);
    for _ in 0..1000 {
        let y = random_hf(&mut r, 4, 3);
        let x = if !y.is_empty() && r.gen_bool(0.5) {
            y.elements().choose(&mut r).unwrap().clone()
        } else {
            random_hf(&mut r, 3, 3)
        };
        let v = vin(&canonical_code(&x), &canonical_code(&y));
        assert_eq!(v.is_member(), y.contains(&x));
        if let Verdict::Member { witness } = v {
            let cone = restrict_below(&canonical_code(&y), &witness).unwrap();
            assert!(iso(&canonical_code(&x), &cone).is_some());
        }
    }
}

#[test]
fn ordinal_codes_collapse_to_von_neumann() {
    for n in 0..=8 {
        let labels: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
        let g = WellOrder::new(labels).unwrap();
        assert_eq!(collapse(&ordinal_code(&g)), hf_ordinal(n));
    }
}

#[test]
fn max_ipi_contains_all_brute_force_ipis_sampled() {
    let mut r = rng(9);
    for _ in 0..300 {
        let (a, b) = (random_code(&mut r, 6), random_code(&mut r, 6));
        let pi = max_ipi(&a, &b);
        let all = brute_force_ipis(&a, &b);
        assert!(all.contains(&pi.mapping));
        for s in &all {
            assert!(is_initial_partial_iso(&a, &b, s));
            assert!(s.iter().all(|(k, v)| pi.get(k) == Some(v)));
        }
    }
}
