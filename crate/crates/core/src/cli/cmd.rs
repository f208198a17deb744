use std::collections::BTreeMap;
use std::io::{Read, Write};

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::json;

use super::*;
use crate::etr::{
    compare_wellorders, etr_check, etr_solve, layered_truth, truth_stages, Comparison,
    RecursionInstance, Solution, WfRelation,
};
use crate::hfset::{hf_enumerate_tc_bounded, hf_measures, hf_ordinal, hf_v_stage, parse_hf, HFSet};
use crate::logic::{parse_formula, ClassFamily, Formula, SOModel, Valuation};
use crate::memcode::{
    canonical_code, collapse, function_code, function_of_code, glue, iso, max_ipi, normalize,
    ordinal_code, pair_code, restrict_below, union_code, validate, vin, wellorder_code,
    CodeFileError, MemCode, RawPointedGraph, Verdict,
};
use crate::order::WellOrder;
use crate::translate::{
    cutoff_interpret, etr_star_translate, star_translate, Expansion, StarContext,
};
use crate::truth::{
    audit_clauses, def_code, l_code, ordinal_levels, tr_materialize, tr_query, DefMode, TableSpec,
};
use crate::unroll::{
    audit_axiom, audit_translation, cutoff_with, roundtrip_cut_unroll, roundtrip_unroll_cut,
    unroll_with_threads, Axiom, Reading, S0TrInstance,
};
use crate::Caps;

type Out<'a> = &'a mut dyn Write;

pub(super) fn dispatch(cli: &Cli, out: Out) -> Result<i32, CliError> {
    let caps = Caps::from_env().map_err(usage)?;
    let fmt = cli.fmt;
    match &cli.command {
        Command::Code(c) => code(c, fmt, out),
        Command::Hf(c) => hf(c, fmt, &caps, out),
        Command::Unroll(a) => {
            let m = model(&a.model, &caps)?;
            let threads = a
                .threads
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let u = unroll_with_threads(&m, a.budget, threads).map_err(domain)?;
            match fmt {
                Fmt::Json => writeln!(out, "{}", u.to_json())?,
                _ => write!(out, "{}", u.to_text())?,
            }
            Ok(0)
        }
        Command::Cutoff(a) => {
            let n = universe(&a.model, &caps)?;
            let m = cutoff_with(&n, a.k, reading(a.reading)).map_err(domain)?;
            let classes: Vec<HFSet> = m
                .classes()
                .map_err(domain)?
                .iter()
                .map(|c| crate::hfset::hf_make(c.members().iter().cloned()))
                .collect();
            let lits = |xs: &[HFSet]| xs.iter().map(HFSet::to_ack_literal).collect::<Vec<_>>();
            match fmt {
                Fmt::Json => writeln!(
                    out,
                    "{}",
                    json!({"kappa": a.k, "universe": lits(m.universe()), "classes": lits(&classes),
                           "full": matches!(m.family(), ClassFamily::Full)})
                )?,
                _ => {
                    writeln!(out, "kappa {}", a.k)?;
                    writeln!(out, "universe {}", lits(m.universe()).join(" "))?;
                    writeln!(out, "classes {}", lits(&classes).join(" "))?;
                }
            }
            Ok(0)
        }
        Command::Roundtrip(a) => {
            let r = match (a.vstage, a.hbounded) {
                (Some(n), None) => {
                    let m = SOModel::v_stage(n).map_err(domain)?.with_caps(caps);
                    let budget = a.budget.unwrap_or(m.universe().len() + 1);
                    roundtrip_cut_unroll(&m, budget, reading(a.reading)).map_err(domain)?
                }
                (None, Some(k)) => {
                    let n = hf_enumerate_tc_bounded(k, &caps).map_err(domain)?;
                    roundtrip_unroll_cut(&n, a.budget.unwrap_or(k), reading(a.reading))
                        .map_err(domain)?
                }
                _ => return Err(usage("give exactly one of --vstage or --hbounded")),
            };
            match fmt {
                Fmt::Json => {
                    let pairs = |v: &[(HFSet, HFSet)]| {
                        v.iter()
                            .map(|(a, b)| [a.to_ack_literal(), b.to_ack_literal()])
                            .collect::<Vec<_>>()
                    };
                    let lits =
                        |v: &[HFSet]| v.iter().map(HFSet::to_ack_literal).collect::<Vec<_>>();
                    writeln!(
                        out,
                        "{}",
                        json!({"direction": r.direction.to_string(), "isomorphic": r.is_isomorphic(),
                               "budget": r.budget, "cut_at": r.cut_at, "elements": r.unrolled, "classes": r.classes,
                               "element_map": pairs(&r.element_map), "class_map": pairs(&r.class_map),
                               "unmatched_elements": lits(&r.unmatched_elements),
                               "unmatched_classes": lits(&r.unmatched_classes)})
                    )?
                }
                _ => write!(out, "{}", r.to_text())?,
            }
            Ok(if r.is_isomorphic() { 0 } else { 1 })
        }
        Command::Audit(c) => audit(c, &caps, out),
        Command::Truth(c) => truth(c, &caps, out),
        Command::Def(a) => {
            let e = one(&codes(&a.code)?)?;
            let d = def_code(&e, def_mode(a.mode, a.size_bound, a.max_params)).map_err(domain)?;
            emit_code(&d, fmt, out)
        }
        Command::Lhier(a) => {
            let mode = def_mode(a.mode, a.size_bound, a.max_params);
            for k in 0..=a.levels {
                let c = l_code(&WellOrder::of_length(k), None, mode).map_err(domain)?;
                if k == a.levels {
                    return emit_code(&c, fmt, out);
                }
                if fmt == Fmt::Text {
                    writeln!(
                        out,
                        "L{k} {} ({} nodes)",
                        collapse(&c).to_ack_literal(),
                        c.len()
                    )?;
                }
            }
            Ok(0)
        }
        Command::Etr(c) => etr(c, fmt, &caps, out),
        Command::Translate(c) => translate(c, fmt, out),
    }
}

fn reading(r: ReadingArg) -> Reading {
    match r {
        ReadingArg::Tc => Reading::TcSize,
        ReadingArg::Rank => Reading::Rank,
    }
}

fn def_mode(m: ModeArg, size: usize, params: usize) -> DefMode {
    match m {
        ModeArg::Full => DefMode::FullParams,
        ModeArg::Bounded => DefMode::Bounded {
            max_formula_size: size,
            max_params: params,
        },
    }
}

fn read_source(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))
    }
}

fn literal(s: &str) -> Result<HFSet, CliError> {
    parse_hf(s.trim()).map_err(usage)
}

fn formula(s: &str) -> Result<Formula, CliError> {
    parse_formula(s).map_err(usage)
}

fn code_file(path: &str) -> Result<MemCode, CliError> {
    MemCode::from_json(&read_source(path)?).map_err(|e| match e {
        CodeFileError::Json(_) => usage(e),
        CodeFileError::Code(_) => domain(e),
    })
}

fn raw_file(path: &str) -> Result<RawPointedGraph, CliError> {
    RawPointedGraph::from_json(&read_source(path)?)
        .map_err(|e| usage(format!("malformed code file: {e}")))
}

/// Files first, then set literals.
fn codes(c: &CodeInputs) -> Result<Vec<MemCode>, CliError> {
    let mut v = c
        .inputs
        .iter()
        .map(|p| code_file(p))
        .collect::<Result<Vec<_>, _>>()?;
    for s in &c.sets {
        v.push(canonical_code(&literal(s)?));
    }
    Ok(v)
}

fn exactly<const N: usize>(v: Vec<MemCode>) -> Result<[MemCode; N], CliError> {
    let n = v.len();
    v.try_into()
        .map_err(|_| usage(format!("expected {N} codes, got {n}")))
}

fn one(v: &[MemCode]) -> Result<MemCode, CliError> {
    let [a] = exactly::<1>(v.to_vec())?;
    Ok(a)
}

fn emit_code(c: &MemCode, fmt: Fmt, out: Out) -> Result<i32, CliError> {
    match fmt {
        Fmt::Json => writeln!(out, "{}", c.to_json())?,
        Fmt::Dot => write!(out, "{}", c.to_dot())?,
        Fmt::Text => {
            writeln!(out, "top {}", c.top())?;
            writeln!(out, "nodes {}", c.nodes().join(" "))?;
            let edges: Vec<String> = c.edges().iter().map(|(a, b)| format!("{a}->{b}")).collect();
            writeln!(out, "edges {}", edges.join(" "))?;
            writeln!(out, "collapse {}", collapse(c).to_ack_literal())?;
        }
    }
    Ok(0)
}

fn emit_set(x: &HFSet, fmt: Fmt, out: Out) -> Result<i32, CliError> {
    match fmt {
        Fmt::Json => {
            let (rank, tc) = hf_measures(x);
            writeln!(
                out,
                "{}",
                json!({"ack": x.to_ack_literal(), "set": x.to_literal(), "rank": rank, "tcSize": tc})
            )?
        }
        _ => {
            writeln!(out, "{}", x.to_ack_literal())?;
            writeln!(out, "{}", x.to_literal())?;
        }
    }
    Ok(0)
}

fn emit_map(m: &BTreeMap<String, String>, fmt: Fmt, out: Out) -> Result<(), CliError> {
    match fmt {
        Fmt::Json => writeln!(out, "{}", serde_json::to_string(m).expect("string map"))?,
        _ => {
            for (a, b) in m {
                writeln!(out, "{a} -> {b}")?;
            }
        }
    }
    Ok(())
}

fn code(c: &CodeCmd, fmt: Fmt, out: Out) -> Result<i32, CliError> {
    match c {
        CodeCmd::Validate(inp) => {
            let g = if let [p] = inp.inputs.as_slice() {
                validate(&raw_file(p)?).map_err(domain)?
            } else {
                one(&codes(inp)?)?
            };
            writeln!(out, "valid ({} nodes, top {})", g.len(), g.top())?;
            Ok(0)
        }
        CodeCmd::Collapse(inp) => emit_set(&collapse(&one(&codes(inp)?)?), fmt, out),
        CodeCmd::Iso(inp) => {
            let [a, b] = exactly::<2>(codes(inp)?)?;
            match iso(&a, &b) {
                Some(m) => {
                    if fmt == Fmt::Text {
                        writeln!(out, "ISOMORPHIC")?;
                    }
                    emit_map(&m, fmt, out)?;
                }
                None => match fmt {
                    Fmt::Json => writeln!(out, "null")?,
                    _ => writeln!(out, "NOT ISOMORPHIC")?,
                },
            }
            Ok(0)
        }
        CodeCmd::Vin(inp) => {
            let [a, b] = exactly::<2>(codes(inp)?)?;
            match vin(&a, &b) {
                Verdict::Member { witness } => match fmt {
                    Fmt::Json => writeln!(out, "{}", json!({"member": true, "witness": witness}))?,
                    _ => writeln!(out, "MEMBER (witness {witness})")?,
                },
                Verdict::NotMember { reasons, .. } => match fmt {
                    Fmt::Json => writeln!(
                        out,
                        "{}",
                        json!({"member": false, "reasons": reasons.iter().map(|(a, r)| format!("{a}: {r:?}")).collect::<Vec<_>>()})
                    )?,
                    _ => {
                        writeln!(out, "NOT MEMBER")?;
                        for (a, r) in reasons {
                            writeln!(out, "  {a}: {r:?}")?;
                        }
                    }
                },
            }
            Ok(0)
        }
        CodeCmd::Pair(inp) => {
            let [a, b] = exactly::<2>(codes(inp)?)?;
            emit_code(&pair_code(&a, &b), fmt, out)
        }
        CodeCmd::Union(inp) => emit_code(&union_code(&one(&codes(inp)?)?), fmt, out),
        CodeCmd::Wo { code, order } => {
            let a = one(&codes(code)?)?;
            let order: Vec<String> = split(order);
            emit_code(&wellorder_code(&a, &order).map_err(domain)?, fmt, out)
        }
        CodeCmd::Fn { code, map } => {
            let [a, b] = exactly::<2>(codes(code)?)?;
            let mut f = BTreeMap::new();
            for part in split(map) {
                let (x, y) = part
                    .split_once(':')
                    .ok_or_else(|| usage(format!("bad pair {part:?}, expected a:b")))?;
                f.insert(x.to_string(), y.to_string());
            }
            emit_code(&function_code(&a, &b, &f).map_err(domain)?, fmt, out)
        }
        CodeCmd::Fnof(inp) => {
            let [g, a, b] = exactly::<3>(codes(inp)?)?;
            emit_map(&function_of_code(&g, &a, &b).map_err(domain)?, fmt, out)?;
            Ok(0)
        }
        CodeCmd::Ord { length } => {
            emit_code(&ordinal_code(&WellOrder::of_length(*length)), fmt, out)
        }
        CodeCmd::Normalize(inp) => {
            let p = match inp.inputs.as_slice() {
                [p] => p,
                _ => return Err(usage("normalize takes one --in")),
            };
            emit_code(&normalize(&raw_file(p)?).map_err(domain)?, fmt, out)
        }
        CodeCmd::Canon(inp) => emit_code(&one(&codes(inp)?)?, fmt, out),
        CodeCmd::Below { code, node } => {
            let a = one(&codes(code)?)?;
            emit_code(&restrict_below(&a, node).map_err(domain)?, fmt, out)
        }
        CodeCmd::Maxipi(inp) => {
            let [a, b] = exactly::<2>(codes(inp)?)?;
            emit_map(&max_ipi(&a, &b).mapping, fmt, out)?;
            Ok(0)
        }
        CodeCmd::Glue(inp) => {
            let [a, b] = exactly::<2>(codes(inp)?)?;
            let g = glue(&a, &b);
            match fmt {
                Fmt::Json => writeln!(
                    out,
                    "{}",
                    json!({"nodes": g.nodes, "edges": g.edges, "embed_a": g.embed_a, "embed_b": g.embed_b})
                )?,
                _ => {
                    writeln!(out, "nodes {}", g.nodes.join(" "))?;
                    let edges: Vec<String> =
                        g.edges.iter().map(|(a, b)| format!("{a}->{b}")).collect();
                    writeln!(out, "edges {}", edges.join(" "))?;
                    for (x, y) in &g.embed_a {
                        writeln!(out, "a {x} -> {y}")?;
                    }
                    for (x, y) in &g.embed_b {
                        writeln!(out, "b {x} -> {y}")?;
                    }
                }
            }
            Ok(0)
        }
        CodeCmd::Random { seed, max_nodes } => {
            let mut rng = StdRng::seed_from_u64(*seed);
            emit_code(&crate::sample::random_code(&mut rng, *max_nodes), fmt, out)
        }
    }
}

fn split(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(String::from)
        .collect()
}

fn hf(c: &HfCmd, fmt: Fmt, caps: &Caps, out: Out) -> Result<i32, CliError> {
    let list = |xs: &[HFSet], out: Out| -> Result<i32, CliError> {
        let lits: Vec<String> = xs.iter().map(HFSet::to_ack_literal).collect();
        match fmt {
            Fmt::Json => writeln!(out, "{}", json!(lits))?,
            _ => {
                for l in lits {
                    writeln!(out, "{l}")?;
                }
            }
        }
        Ok(0)
    };
    match c {
        HfCmd::Show { literal: l } => {
            let x = literal(l)?;
            emit_set(&x, fmt, out)?;
            if fmt != Fmt::Json {
                let (r, t) = hf_measures(&x);
                writeln!(out, "rank {r} tcSize {t}")?;
            }
            Ok(0)
        }
        HfCmd::Vstage { n } => list(hf_v_stage(*n, caps).map_err(domain)?.elements(), out),
        HfCmd::Enum { k } => list(&hf_enumerate_tc_bounded(*k, caps).map_err(domain)?, out),
    }
}

fn universe(a: &ModelArgs, caps: &Caps) -> Result<Vec<HFSet>, CliError> {
    match (a.vstage, a.hbounded, &a.sets_list) {
        (Some(n), None, None) => Ok(hf_v_stage(n, caps).map_err(domain)?.elements().to_vec()),
        (None, Some(k), None) => hf_enumerate_tc_bounded(k, caps).map_err(domain),
        (None, None, Some(s)) => split(s).iter().map(|l| literal(l)).collect(),
        _ => Err(usage("give one of --vstage, --hbounded or --universe")),
    }
}

fn model(a: &ModelArgs, caps: &Caps) -> Result<SOModel, CliError> {
    let u = universe(a, caps)?;
    Ok(SOModel::new(u, ClassFamily::Full)
        .map_err(domain)?
        .with_caps(*caps))
}

fn audit(c: &AuditCmd, caps: &Caps, out: Out) -> Result<i32, CliError> {
    match c {
        AuditCmd::Axioms {
            model: ma,
            budget,
            axioms,
            formula: phi,
            size_bound,
            step,
            length,
            index,
        } => {
            let m = model(ma, caps)?;
            let u = crate::unroll::unroll(&m, *budget).map_err(domain)?;
            let names: Vec<String> = if axioms.is_empty() {
                ["ext", "found", "pair", "union", "sep0"]
                    .map(String::from)
                    .to_vec()
            } else {
                axioms.clone()
            };
            let mut ok = true;
            for name in names {
                let ax = match name.to_lowercase().as_str() {
                    "ext" => Axiom::Ext,
                    "pair" => Axiom::Pair,
                    "union" => Axiom::Union,
                    "found" => Axiom::Found,
                    "sep0" => match phi {
                        Some(f) => Axiom::Sep0(formula(f)?),
                        None => Axiom::Sep0Upto(*size_bound),
                    },
                    "s0tr" => {
                        let step = step.as_deref().ok_or_else(|| usage("s0tr needs --step"))?;
                        Axiom::S0Tr(S0TrInstance {
                            step: formula(step)?,
                            length: *length,
                            index: index.clone(),
                        })
                    }
                    other => return Err(usage(format!("unknown axiom {other:?}"))),
                };
                let r = audit_axiom(&u, &ax).map_err(domain)?;
                ok &= r.passed();
                writeln!(out, "{r}")?;
            }
            Ok(if ok { 0 } else { 1 })
        }
        AuditCmd::Translation {
            model: ma,
            budget,
            formula: f,
            params,
        } => {
            let m = model(ma, caps)?;
            let phi = formula(f)?;
            let params = params
                .iter()
                .map(|p| literal(p).map(|x| canonical_code(&x)))
                .collect::<Result<Vec<_>, _>>()?;
            let r = audit_translation(&m, *budget, &phi, &params).map_err(domain)?;
            writeln!(out, "{r}")?;
            Ok(if r.agree() { 0 } else { 1 })
        }
    }
}

fn truth_model(t: &TruthModel, caps: &Caps) -> Result<(SOModel, WellOrder<HFSet>), CliError> {
    let v = hf_v_stage(t.vstage, caps).map_err(domain)?;
    let m = SOModel::new(v.elements().to_vec(), ClassFamily::Full)
        .map_err(domain)?
        .with_caps(*caps);
    Ok((m, ordinal_levels(t.levels)))
}

fn spec(size_bound: usize, vars: &str) -> TableSpec {
    TableSpec {
        size_bound,
        vars: split(vars),
    }
}

fn truth(c: &TruthCmd, caps: &Caps, out: Out) -> Result<i32, CliError> {
    match c {
        TruthCmd::Eval {
            model: tm,
            level,
            formula: f,
            vals,
        } => {
            let (m, gamma) = truth_model(tm, caps)?;
            let phi = formula(f)?;
            let mut v = Valuation::new();
            for s in vals {
                let (x, l) = s
                    .split_once('=')
                    .ok_or_else(|| usage(format!("bad valuation {s:?}, expected var=LITERAL")))?;
                v = v.set(x.trim(), literal(l)?);
            }
            let b = tr_query(&m, &gamma, &hf_ordinal(*level), &phi, &v).map_err(domain)?;
            writeln!(out, "{b}")?;
            Ok(0)
        }
        TruthCmd::Table {
            model: tm,
            size_bound,
            vars,
            audit,
        } => {
            let (m, gamma) = truth_model(tm, caps)?;
            let t = tr_materialize(&m, &gamma, &spec(*size_bound, vars)).map_err(domain)?;
            write!(out, "{}", t.to_text())?;
            if *audit {
                match audit_clauses(&m, &t) {
                    Ok(n) => writeln!(out, "clauses hold on {n} triples")?,
                    Err(f) => {
                        return Err(domain(format!(
                            "clause fails at level {} for {}",
                            f.level, f.formula
                        )))
                    }
                }
            }
            Ok(0)
        }
        TruthCmd::Iter {
            model: tm,
            size_bound,
            vars,
        } => {
            let (m, gamma) = truth_model(tm, caps)?;
            let sp = spec(*size_bound, vars);
            for ((l, s), n) in truth_stages(&m, &gamma, &sp) {
                writeln!(out, "stage ({l}, {s}) {n}")?;
            }
            let a = layered_truth(&m, &gamma, &sp).map_err(domain)?;
            let b = tr_materialize(&m, &gamma, &sp).map_err(domain)?;
            if a.to_text() != b.to_text() {
                return Err(domain("layered table differs from the materialized table"));
            }
            writeln!(out, "MATCHES ({} entries)", a.len())?;
            Ok(0)
        }
    }
}

fn parse_pairs(text: &str) -> Result<Vec<(HFSet, HFSet)>, CliError> {
    let raw: Vec<(String, String)> =
        serde_json::from_str(text).map_err(|e| usage(format!("relation: {e}")))?;
    raw.iter()
        .map(|(a, b)| Ok((literal(a)?, literal(b)?)))
        .collect()
}

fn etr(c: &EtrCmd, fmt: Fmt, caps: &Caps, out: Out) -> Result<i32, CliError> {
    let setup = |a: &EtrInstanceArgs| -> Result<(SOModel, Formula, WfRelation<HFSet>), CliError> {
        let v = hf_v_stage(a.vstage, caps).map_err(domain)?;
        let m = SOModel::new(v.elements().to_vec(), ClassFamily::Full)
            .map_err(domain)?
            .with_caps(*caps);
        let rel = match (&a.chain, &a.rel) {
            (Some(n), None) => WfRelation::chain(&(0..*n).map(hf_ordinal).collect::<Vec<_>>()),
            (None, Some(r)) => {
                let text = if r.trim_start().starts_with('[') {
                    r.clone()
                } else {
                    read_source(r)?
                };
                let pairs = parse_pairs(&text)?;
                let mut dom: Vec<HFSet> = Vec::new();
                for (x, y) in &pairs {
                    for z in [x, y] {
                        if !dom.contains(z) {
                            dom.push(z.clone());
                        }
                    }
                }
                WfRelation::new(dom, &pairs).map_err(domain)?
            }
            _ => return Err(usage("give one of --chain or --rel")),
        };
        Ok((m, formula(&a.step)?, rel))
    };
    match c {
        EtrCmd::Solve(a) => {
            let (m, step, rel) = setup(a)?;
            let s = etr_solve(&instance(&m, step, &a.index), &rel).map_err(domain)?;
            let map: BTreeMap<String, Vec<String>> = rel
                .topological(false)
                .iter()
                .map(|r| {
                    (
                        r.to_ack_literal(),
                        s.slices[r].iter().map(HFSet::to_ack_literal).collect(),
                    )
                })
                .collect();
            match fmt {
                Fmt::Json => writeln!(out, "{}", serde_json::to_string(&map).expect("string map"))?,
                _ => {
                    for r in rel.topological(false) {
                        let xs: Vec<String> =
                            s.slices[&r].iter().map(HFSet::to_ack_literal).collect();
                        writeln!(out, "{}: {}", r.to_ack_literal(), xs.join(" "))?;
                    }
                }
            }
            Ok(0)
        }
        EtrCmd::Check { inst, solution } => {
            let (m, step, rel) = setup(inst)?;
            let raw: BTreeMap<String, Vec<String>> = serde_json::from_str(&read_source(solution)?)
                .map_err(|e| usage(format!("solution: {e}")))?;
            let mut slices = BTreeMap::new();
            for (r, xs) in raw {
                slices.insert(
                    literal(&r)?,
                    xs.iter().map(|x| literal(x)).collect::<Result<_, _>>()?,
                );
            }
            match etr_check(&instance(&m, step, &inst.index), &rel, &Solution { slices })
                .map_err(domain)?
            {
                Ok(()) => {
                    writeln!(out, "VALID")?;
                    Ok(0)
                }
                Err(mm) => Err(domain(format!(
                    "MISMATCH at {}: expected {}, found {}",
                    mm.label.to_ack_literal(),
                    lits(mm.expected.iter()),
                    mm.found.map_or("nothing".into(), |f| lits(f.iter()))
                ))),
            }
        }
        EtrCmd::Compare { gamma, delta } => {
            let (g, d) = (ordinal_levels(*gamma), ordinal_levels(*delta));
            let show = |v: &[(HFSet, HFSet)]| {
                v.iter()
                    .map(|(a, b)| format!("{}->{}", a.to_ack_literal(), b.to_ack_literal()))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            match compare_wellorders(&g, &d) {
                Comparison::Shorter(e) => writeln!(out, "SHORTER {}", show(&e))?,
                Comparison::Longer(e) => writeln!(out, "LONGER {}", show(&e))?,
                Comparison::Equal(e, _) => writeln!(out, "EQUAL {}", show(&e))?,
            }
            Ok(0)
        }
    }
}

fn instance<'m>(m: &'m SOModel, step: Formula, index: &Option<String>) -> RecursionInstance<'m> {
    let i = RecursionInstance::new(m, step);
    match index {
        Some(x) => i.with_index(x.clone()),
        None => i,
    }
}

fn lits<'a>(xs: impl Iterator<Item = &'a HFSet>) -> String {
    format!(
        "{{{}}}",
        xs.map(HFSet::to_ack_literal).collect::<Vec<_>>().join(",")
    )
}

fn translate(c: &TranslateCmd, fmt: Fmt, out: Out) -> Result<i32, CliError> {
    match c {
        TranslateCmd::Star {
            formula: f,
            expansion,
        } => {
            let expansion = match expansion {
                ExpansionArg::Atoms => Expansion::Atoms,
                ExpansionArg::Witness => Expansion::Witness,
                ExpansionArg::Certificate => Expansion::Certificate,
                ExpansionArg::Absorb => Expansion::Absorb,
            };
            let r = star_translate(&formula(f)?, StarContext { expansion }).map_err(domain)?;
            match fmt {
                Fmt::Json => writeln!(
                    out,
                    "{}",
                    json!({"formula": r.formula.to_string(), "classes": r.classes})
                )?,
                _ => {
                    writeln!(out, "{}", r.formula)?;
                    for (x, c) in &r.classes {
                        writeln!(out, "{x} -> {c}")?;
                    }
                }
            }
            Ok(0)
        }
        TranslateCmd::Etrstar { formula: f, params } => {
            let params = params
                .iter()
                .map(|p| literal(p).map(|x| canonical_code(&x)))
                .collect::<Result<Vec<_>, _>>()?;
            let r = etr_star_translate(&formula(f)?, &params).map_err(domain)?;
            let holds = r.eval().map_err(domain)?;
            match fmt {
                Fmt::Json => writeln!(
                    out,
                    "{}",
                    json!({"formula": r.formula.to_string(), "class": r.class, "params": r.params,
                           "code": serde_json::from_str::<serde_json::Value>(&r.code.to_json()).expect("code json"),
                           "holds": holds})
                )?,
                _ => {
                    writeln!(out, "{}", r.formula)?;
                    writeln!(out, "{} = {}", r.class, r.code.to_json())?;
                    for (a, n) in &r.params {
                        writeln!(out, "{a} at {n}")?;
                    }
                    writeln!(out, "holds {holds}")?;
                }
            }
            Ok(0)
        }
        TranslateCmd::Interp { formula: f } => {
            let r = cutoff_interpret(&formula(f)?).map_err(domain)?;
            match fmt {
                Fmt::Json => writeln!(
                    out,
                    "{}",
                    json!({"formula": r.formula.to_string(), "classes": r.classes})
                )?,
                _ => {
                    writeln!(out, "{}", r.formula)?;
                    for (c, x) in &r.classes {
                        writeln!(out, "{c} -> {x}")?;
                    }
                }
            }
            Ok(0)
        }
    }
}
