use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use classcode::hfset::HFSet;
use classcode::logic::{
    eval, godel_decode, godel_encode, nnf, parse_formula, prenex, ClassTerm, ClassVal, Formula,
    SOModel, Valuation,
};
use classcode::sample::FormulaGen;

fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn gen(class_quantifiers: bool) -> FormulaGen {
    FormulaGen {
        free: vec!["x".into(), "y".into()],
        classes: vec!["A".into()],
        class_quantifiers,
        ..FormulaGen::default()
    }
}

/// Plain recursive evaluator: first-order formulas, one fixed class `A`.
struct Naive<'a> {
    universe: &'a [HFSet],
    a: &'a BTreeSet<HFSet>,
}

impl Naive<'_> {
    fn go(&self, f: &Formula, env: &mut HashMap<String, HFSet>) -> bool {
        use Formula::*;
        match f {
            Eq(u, v) => env[u] == env[v],
            In(u, v) => env[v].contains(&env[u]),
            InClass(us, ClassTerm::Sym(c)) if c == "A" && us.len() == 1 => {
                self.a.contains(&env[&us[0]])
            }
            Not(g) => !self.go(g, env),
            And(gs) => gs.iter().all(|g| self.go(g, env)),
            Or(gs) => gs.iter().any(|g| self.go(g, env)),
            Implies(p, q) => !self.go(p, env) || self.go(q, env),
            Exists(x, g) => self.range(x, self.universe.to_vec(), g, env, true),
            Forall(x, g) => self.range(x, self.universe.to_vec(), g, env, false),
            ExistsIn(x, y, g) => self.range(x, env[y].elements().to_vec(), g, env, true),
            ForallIn(x, y, g) => self.range(x, env[y].elements().to_vec(), g, env, false),
            other => panic!("naive evaluator: {other}"),
        }
    }

    fn range(
        &self,
        x: &str,
        over: Vec<HFSet>,
        g: &Formula,
        env: &mut HashMap<String, HFSet>,
        any: bool,
    ) -> bool {
        let saved = env.get(x).cloned();
        let mut hit = !any;
        for v in over {
            env.insert(x.to_string(), v);
            if self.go(g, env) == any {
                hit = any;
                break;
            }
        }
        match saved {
            Some(s) => env.insert(x.to_string(), s),
            None => env.remove(x),
        };
        hit
    }
}

fn random_valuation(
    r: &mut StdRng,
    m: &SOModel,
) -> (Valuation, HashMap<String, HFSet>, BTreeSet<HFSet>) {
    let pick = |r: &mut StdRng| m.universe().choose(r).unwrap().clone();
    let (x, y) = (pick(r), pick(r));
    let a: BTreeSet<HFSet> = m
        .universe()
        .iter()
        .filter(|_| r.gen_bool(0.5))
        .cloned()
        .collect();
    let v = Valuation::new()
        .set("x", x.clone())
        .set("y", y.clone())
        .class("A", ClassVal::new(a.iter().cloned()));
    let env = HashMap::from([("x".to_string(), x), ("y".to_string(), y)]);
    (v, env, a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn godel_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = FormulaGen { tr_atoms: true, ..gen(true) };
        let f = g.sample(&mut r);
        prop_assert_eq!(godel_decode(&godel_encode(&f).unwrap()).unwrap(), f.clone());
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn normal_forms_preserve_truth(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = gen(true).sample(&mut r);
        let m = SOModel::v_stage(2).unwrap();
        let (v, _, _) = random_valuation(&mut r, &m);
        let want = eval(&m, &f, &v).unwrap();
        prop_assert_eq!(eval(&m, &nnf(&f), &v).unwrap(), want, "{}", f);
        prop_assert_eq!(eval(&m, &prenex(&f), &v).unwrap(), want, "{}", f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn eval_matches_naive_evaluator(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = gen(false).sample(&mut r);
        let m = SOModel::v_stage(3).unwrap();
        let (v, mut env, a) = random_valuation(&mut r, &m);
        let naive = Naive { universe: m.universe(), a: &a };
        prop_assert_eq!(eval(&m, &f, &v).unwrap(), naive.go(&f, &mut env), "{}", f);
    }
}
