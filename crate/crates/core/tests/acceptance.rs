use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use classcode::cli::run;
use classcode::etr::{
    compare_wellorders, etr_check, etr_solve, exhaustive_solutions, layered_truth, Comparison,
    RecursionInstance, WfRelation,
};
use classcode::hfset::{hf_make, hf_ordinal, hf_unack_u64, hf_v_stage, kpair, HFSet};
use classcode::logic::{
    classify, code_to_class, eval, parse_formula, ClassFamily, ClassTerm, ClassVal, SOModel,
    Valuation,
};
use classcode::memcode::*;
use classcode::sample::{random_code, random_hf, random_relabel, random_sigma_k, FormulaGen};
use classcode::translate::{
    etr_star_translate, expand_iso, expand_vin, star_translate, Expansion, Polarity, StarContext,
};
use classcode::truth::{
    audit_clauses, def_code, def_op, exhaustive_fixed_points, l_code, ordinal_levels,
    tr_materialize, DefMode, TableSpec,
};
use classcode::unroll::{
    audit_axiom, audit_translation, h_bounded, roundtrip_cut_unroll, roundtrip_unroll_cut, Axiom,
    Reading,
};
use classcode::{Caps, WellOrder};

type Check = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Check>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// One code per isomorphism type, up to `n` nodes.
fn code_types(n: usize) -> Vec<MemCode> {
    let mut seen = HashSet::new();
    enumerate_codes(n)
        .into_iter()
        .filter(|c| seen.insert(collapse(c)))
        .collect()
}

fn oracle_equivalence() -> Check {
    let codes = enumerate_codes(5);
    let mut pairs = 0;
    for a in &codes {
        let ca = collapse(a);
        for b in &codes {
            let cb = collapse(b);
            ensure(iso(a, b).is_some() == (ca == cb), || {
                format!("iso {ca} {cb}")
            })?;
            ensure(vin(a, b).is_member() == cb.contains(&ca), || {
                format!("vin {ca} {cb}")
            })?;
            pairs += 1;
        }
    }
    let mut r = rng(1);
    for _ in 0..1000 {
        let a = random_code(&mut r, 12);
        let b = if r.gen_bool(0.3) {
            random_relabel(&mut r, &a)
        } else {
            random_code(&mut r, 12)
        };
        let (ca, cb) = (collapse(&a), collapse(&b));
        ensure(iso(&a, &b).is_some() == (ca == cb), || {
            format!("iso {ca} {cb}")
        })?;
        ensure(vin(&a, &b).is_member() == cb.contains(&ca), || {
            format!("vin {ca} {cb}")
        })?;
    }
    Ok(format!(
        "{} codes, {pairs} pairs, 1000 random pairs",
        codes.len()
    ))
}

fn maximality() -> Check {
    let types = code_types(6);
    let mut ipis = 0usize;
    for a in &types {
        for b in &types {
            let pi = max_ipi(a, b);
            for s in brute_force_ipis(a, b) {
                ensure(s.iter().all(|(k, v)| pi.get(k) == Some(v)), || {
                    format!("{} {}", collapse(a), collapse(b))
                })?;
                ipis += 1;
            }
        }
    }
    Ok(format!(
        "{} pairs, {ipis} initial partial isomorphisms",
        types.len() * types.len()
    ))
}

fn constructors() -> Check {
    let mut r = rng(3);
    for _ in 0..200 {
        let (a, b) = (random_code(&mut r, 7), random_code(&mut r, 7));
        ensure(
            collapse(&pair_code(&a, &b)) == hf_make([collapse(&a), collapse(&b)]),
            || "pair".into(),
        )?;
        let x = random_hf(&mut r, 4, 3);
        ensure(
            collapse(&union_code(&canonical_code(&x))) == x.union(),
            || format!("union {x}"),
        )?;
        let mut order: Vec<Label> = a.pen().into_iter().cloned().collect();
        order.shuffle(&mut r);
        let val = |l: &Label| a.collapse_node(l).unwrap();
        let want = hf_make(
            order
                .iter()
                .enumerate()
                .flat_map(|(i, x)| order[i + 1..].iter().map(move |y| (x, y)))
                .map(|(x, y)| kpair(&val(x), &val(y))),
        );
        ensure(
            collapse(&wellorder_code(&a, &order).unwrap()) == want,
            || "wellorder".into(),
        )?;
        let pen_b: Vec<Label> = b.pen().into_iter().cloned().collect();
        if !pen_b.is_empty() {
            let f: BTreeMap<Label, Label> = a
                .pen()
                .into_iter()
                .map(|x| (x.clone(), pen_b.choose(&mut r).unwrap().clone()))
                .collect();
            let g = function_code(&a, &b, &f).unwrap();
            ensure(function_of_code(&g, &a, &b).unwrap() == f, || {
                "function round trip".into()
            })?;
        }
        let n = r.gen_range(0..10);
        let labels: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
        ensure(
            collapse(&ordinal_code(&WellOrder::new(labels).unwrap())) == hf_ordinal(n),
            || format!("ordinal {n}"),
        )?;
    }
    Ok("200 random inputs per constructor".into())
}

fn round_trips(slow: bool) -> Check {
    let mut done = Vec::new();
    let stages: &[usize] = if slow { &[2, 3] } else { &[2] };
    for &s in stages {
        let m = SOModel::v_stage(s).unwrap();
        let n = m.universe().len();
        let rt = roundtrip_cut_unroll(&m, n + 1, Reading::TcSize).map_err(|e| e.to_string())?;
        ensure(rt.is_isomorphic() && rt.classes == 1 << n, || {
            format!("V{s}: {}", rt.summary())
        })?;
        done.push(format!("V{s} {}", rt.summary()));
    }
    for k in [2, 3] {
        let h = h_bounded(k, &Caps::default()).unwrap();
        let rt = roundtrip_unroll_cut(&h, k, Reading::TcSize).map_err(|e| e.to_string())?;
        ensure(rt.is_isomorphic() && rt.unrolled == h.len(), || {
            format!("h_bounded({k}): {}", rt.summary())
        })?;
        done.push(format!("h_bounded({k}) {}", rt.summary()));
    }
    if !slow {
        done.push("V3 skipped, set CLASSCODE_SLOW=1".into());
    }
    Ok(done.join("; "))
}

fn axiom_audits() -> Check {
    let m = SOModel::v_stage(2).unwrap();
    let mut n = 0;
    for b in [3, 4] {
        let u = classcode::unroll::unroll(&m, b).map_err(|e| e.to_string())?;
        for ax in [
            Axiom::Ext,
            Axiom::Found,
            Axiom::Pair,
            Axiom::Union,
            Axiom::Sep0Upto(7),
        ] {
            let rep = audit_axiom(&u, &ax).map_err(|e| e.to_string())?;
            ensure(rep.passed(), || format!("budget {b}: {rep}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} audits on budgets 3 and 4"))
}

fn relation_model() -> SOModel {
    let points: Vec<HFSet> = (0..3).map(hf_unack_u64).collect();
    let pairs: Vec<HFSet> = points
        .iter()
        .flat_map(|a| points.iter().map(move |b| kpair(a, b)))
        .collect();
    let family = (0u32..1 << pairs.len())
        .map(|mask| {
            ClassVal::new(
                (0..pairs.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| pairs[i].clone()),
            )
        })
        .collect();
    SOModel::structure(points, ClassFamily::Explicit(family)).unwrap()
}

fn translation_soundness() -> Check {
    let mut r = rng(6);
    let m = SOModel::v_stage(2).unwrap();
    let gen = FormulaGen {
        max_quantifiers: 2,
        ..FormulaGen::default()
    };
    for i in 0..300 {
        let phi = gen.sample(&mut r);
        let rep = audit_translation(&m, 3 + i % 2, &phi, &[]).map_err(|e| e.to_string())?;
        ensure(rep.agree(), || rep.to_string())?;
    }
    for _ in 0..500 {
        let n = r.gen_range(1..=3);
        let params: Vec<MemCode> = (0..n).map(|_| random_code(&mut r, 8)).collect();
        let names: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
        let g = FormulaGen {
            free: names.clone(),
            unbounded: false,
            max_quantifiers: 2,
            ..FormulaGen::default()
        };
        let phi = g.sample(&mut r);
        let sets: Vec<HFSet> = params.iter().map(collapse).collect();
        let mut universe = hf_make(sets.clone()).transitive_closure();
        universe.sort();
        let mm = SOModel::structure(universe, ClassFamily::Explicit(Vec::new())).unwrap();
        let v = names
            .iter()
            .zip(&sets)
            .fold(Valuation::new(), |v, (a, x)| v.set(a.clone(), x.clone()));
        let want = eval(&mm, &phi, &v).map_err(|e| e.to_string())?;
        let got = etr_star_translate(&phi, &params)
            .map_err(|e| e.to_string())?
            .eval()
            .map_err(|e| e.to_string())?;
        ensure(got == want, || format!("etrstar {phi}"))?;
    }
    let rm = relation_model();
    let points = rm.universe().to_vec();
    let at = |c: &MemCode| {
        let pos: BTreeMap<&str, usize> = c
            .topological()
            .into_iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        code_to_class(c, |l| points[pos[l]].clone())
    };
    let codes: Vec<ClassVal> = enumerate_codes(3).iter().map(at).collect();
    let (a, b) = (ClassTerm::sym("A"), ClassTerm::sym("B"));
    let taken: BTreeSet<String> = ["A".to_string(), "B".to_string()].into();
    let mut evals = 0;
    for ca in &codes {
        for cb in &codes {
            let v = Valuation::new()
                .class("A", ca.clone())
                .class("B", cb.clone());
            for which in [0, 1] {
                for pol in [Polarity::Positive, Polarity::Negative] {
                    let f = |e| {
                        if which == 0 {
                            expand_iso(&a, &b, e, pol, taken.clone())
                        } else {
                            expand_vin(&a, &b, e, pol, taken.clone())
                        }
                    };
                    let w = eval(&rm, &f(Expansion::Witness), &v).map_err(|e| e.to_string())?;
                    let c = eval(&rm, &f(Expansion::Certificate), &v).map_err(|e| e.to_string())?;
                    ensure(w == c, || {
                        format!("witness/certificate disagree, atom {which} {pol:?}")
                    })?;
                    evals += 2;
                }
            }
        }
    }
    Ok(format!(
        "300 sentences, 500 bounded formulas, {evals} expansion evaluations"
    ))
}

fn complexity() -> Check {
    let mut r = rng(7);
    for i in 0..200 {
        let k = 1 + i % 3;
        let phi = random_sigma_k(&mut r, k);
        let out = star_translate(
            &phi,
            StarContext {
                expansion: Expansion::Absorb,
            },
        )
        .map_err(|e| e.to_string())?;
        let c = classify(&out.formula);
        ensure(c.second_order && c.within_sigma(k, true), || {
            format!("Σ_{k} {phi} gave {c}")
        })?;
    }
    Ok("200 sentences, k in 1..3".into())
}

fn iterated_truth() -> Check {
    let m = SOModel::v_stage(2).unwrap();
    let spec = TableSpec {
        size_bound: 4,
        vars: vec!["x".into(), "y".into()],
    };
    let mut entries = Vec::new();
    let mut prev: Option<BTreeSet<_>> = None;
    for n in 1..=3 {
        let g = ordinal_levels(n);
        let t = tr_materialize(&m, &g, &spec).map_err(|e| e.to_string())?;
        audit_clauses(&m, &t).map_err(|e| format!("{e:?}"))?;
        if let Some(p) = &prev {
            ensure(&t.restrict_levels(n - 1) == p, || {
                format!("coherence at {n}")
            })?;
        }
        let layered = layered_truth(&m, &g, &spec).map_err(|e| e.to_string())?;
        ensure(layered.to_text() == t.to_text(), || {
            format!("layered differs at {n}")
        })?;
        entries.push(t.len());
        prev = Some(t.entries.clone());
    }
    let tiny = TableSpec {
        size_bound: 1,
        vars: vec!["x".into()],
    };
    let fps = exhaustive_fixed_points(&m, &ordinal_levels(2), &tiny).map_err(|e| e.to_string())?;
    ensure(fps.len() == 1, || format!("{} fixed points", fps.len()))?;
    Ok(format!("table sizes {entries:?}, one fixed point"))
}

fn etr() -> Check {
    let ordinals = |n: usize| (0..n).map(hf_ordinal).collect::<Vec<_>>();
    let m = SOModel::v_stage(4).unwrap();
    let step = parse_formula("(ex r (and (in r i) (allin z x (inclass r z Y))))").unwrap();
    let inst = RecursionInstance::new(&m, step).with_index("i");
    let rel = WfRelation::chain(&ordinals(4));
    let s = etr_solve(&inst, &rel).map_err(|e| e.to_string())?;
    ensure(
        etr_check(&inst, &rel, &s)
            .map_err(|e| e.to_string())?
            .is_ok(),
        || "check rejects solve".into(),
    )?;
    for k in 0..4 {
        let v = hf_v_stage(k, &Caps::default()).unwrap();
        ensure(
            s.slice(&hf_ordinal(k)).unwrap().iter().eq(v.elements()),
            || format!("slice {k} is not V{k}"),
        )?;
    }
    let mut bad = s.clone();
    bad.slices
        .get_mut(&hf_ordinal(1))
        .unwrap()
        .insert(hf_ordinal(3));
    ensure(
        etr_check(&inst, &rel, &bad)
            .map_err(|e| e.to_string())?
            .is_err(),
        || "perturbed solution accepted".into(),
    )?;
    let m2 = SOModel::v_stage(2).unwrap();
    let inst2 = RecursionInstance::new(&m2, parse_formula("(not (ex r (inclass r x Y)))").unwrap());
    let rel2 = WfRelation::chain(&ordinals(2));
    let sols = exhaustive_solutions(&inst2, &rel2).map_err(|e| e.to_string())?;
    ensure(
        sols == vec![etr_solve(&inst2, &rel2).map_err(|e| e.to_string())?],
        || format!("{} solutions on 2x2", sols.len()),
    )?;
    let mut r = rng(9);
    for _ in 0..200 {
        let (n, k) = (r.gen_range(0..10), r.gen_range(0..10));
        let g = WellOrder::new((0..n).collect::<Vec<usize>>()).unwrap();
        let d = WellOrder::new((0..k).map(|i| i + 100).collect::<Vec<usize>>()).unwrap();
        let prefix = |f: &[(usize, usize)], off_a: usize, off_b: usize| {
            f.iter()
                .enumerate()
                .all(|(i, &(a, b))| a == i + off_a && b == i + off_b)
        };
        let ok = match compare_wellorders(&g, &d) {
            Comparison::Shorter(f) => n < k && f.len() == n && prefix(&f, 0, 100),
            Comparison::Longer(f) => n > k && f.len() == k && prefix(&f, 100, 0),
            Comparison::Equal(f, h) => {
                n == k && f.len() == n && prefix(&f, 0, 100) && prefix(&h, 100, 0)
            }
        };
        ensure(ok, || format!("compare {n} {k}"))?;
    }
    Ok("V0..V3 reproduced, unique 2x2 solution, 200 comparisons".into())
}

fn def_l() -> Check {
    for k in 0..=4 {
        let l = l_code(
            &WellOrder::<String>::of_length(k),
            None,
            DefMode::FullParams,
        )
        .map_err(|e| e.to_string())?;
        ensure(
            collapse(&l) == hf_v_stage(k, &Caps::default()).unwrap(),
            || format!("L_{k} is not V_{k}"),
        )?;
    }
    let mut r = rng(10);
    for _ in 0..100 {
        let e = random_code(&mut r, 6);
        let x = collapse(&e);
        let m =
            SOModel::structure(x.elements().to_vec(), ClassFamily::Explicit(Vec::new())).unwrap();
        for mode in [
            DefMode::FullParams,
            DefMode::Bounded {
                max_formula_size: 3,
                max_params: 1,
            },
        ] {
            let want = hf_make(
                def_op(&m, &[], mode)
                    .map_err(|e| e.to_string())?
                    .into_iter()
                    .map(|c| hf_make(c.members().iter().cloned())),
            );
            ensure(
                collapse(&def_code(&e, mode).map_err(|e| e.to_string())?) == want,
                || format!("def {x} {mode:?}"),
            )?;
        }
    }
    Ok("L_0..L_4, 100 random codes".into())
}

fn call(args: &[&str]) -> (i32, Vec<u8>, Vec<u8>) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(
        std::iter::once("classcode").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, out, err)
}

fn determinism() -> Check {
    let dir = std::env::temp_dir().join(format!("classcode-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let empty = dir.join("empty.json");
    let cyclic = dir.join("cyclic.json");
    std::fs::write(&empty, r#"{"nodes":["a"],"edges":[],"top":"a"}"#).map_err(|e| e.to_string())?;
    std::fs::write(
        &cyclic,
        r#"{"nodes":["a","b"],"edges":[["a","b"],["b","a"]],"top":"a"}"#,
    )
    .map_err(|e| e.to_string())?;
    let (empty, cyclic) = (
        empty.to_string_lossy().into_owned(),
        cyclic.to_string_lossy().into_owned(),
    );
    let goldens: Vec<(Vec<&str>, i32, &str)> = vec![
        (vec!["code", "collapse", "--in", &empty], 0, "#0\n{}\n"),
        (vec!["code", "validate", "--in", &cyclic], 1, "CycleFound"),
        (
            vec!["roundtrip", "--vstage", "2", "--budget", "3"],
            0,
            "ISOMORPHIC (4 elements, 4 classes)",
        ),
    ];
    for (args, code, text) in &goldens {
        let first = call(args);
        ensure(first == call(args), || {
            format!("{args:?} differs between runs")
        })?;
        let shown =
            String::from_utf8_lossy(if first.0 == 0 { &first.1 } else { &first.2 }).into_owned();
        ensure(first.0 == *code && shown.contains(text), || {
            format!("{args:?}: exit {} {shown:?}", first.0)
        })?;
    }
    let base = call(&["unroll", "--vstage", "2", "--budget", "5", "--threads", "1"]);
    for t in ["2", "4", "8"] {
        ensure(
            call(&["unroll", "--vstage", "2", "--budget", "5", "--threads", t]) == base,
            || format!("threads {t}"),
        )?;
    }
    Ok("3 goldens stable, unroll identical for 1/2/4/8 threads".into())
}

fn main() {
    let slow = std::env::var("CLASSCODE_SLOW").is_ok_and(|v| v == "1")
        || std::env::args().any(|a| a == "--include-ignored" || a == "--ignored");
    let criteria: Vec<Criterion> = vec![
        ("oracle equivalence", Box::new(oracle_equivalence)),
        ("maximality", Box::new(maximality)),
        ("constructor contracts", Box::new(constructors)),
        ("round trips", Box::new(move || round_trips(slow))),
        ("unrolled axioms", Box::new(axiom_audits)),
        ("translation soundness", Box::new(translation_soundness)),
        ("complexity bound", Box::new(complexity)),
        ("iterated truth", Box::new(iterated_truth)),
        ("etr", Box::new(etr)),
        ("def and L", Box::new(def_l)),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = f();
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("{:>2} {name}: pass ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("{:>2} {name}: FAIL {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
