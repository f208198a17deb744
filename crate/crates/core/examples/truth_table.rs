//! Iterated truth tables: materialization, clause audit and the layered recursion.
use classcode::etr::layered_truth;
use classcode::hfset::{hf_ordinal, hf_unack_u64};
use classcode::logic::{parse_formula, SOModel, Valuation};
use classcode::truth::{
    audit_clauses, exhaustive_fixed_points, ordinal_levels, tr_materialize, tr_query, TableSpec,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = SOModel::v_stage(2)?;
    let spec = TableSpec {
        size_bound: 3,
        vars: vec!["x".into(), "y".into()],
    };
    for n in 1..=3 {
        let g = ordinal_levels(n);
        let t = tr_materialize(&m, &g, &spec)?;
        let layered = layered_truth(&m, &g, &spec)?;
        let audited =
            audit_clauses(&m, &t).map_err(|f| format!("clause fails at level {}", f.level))?;
        println!(
            "{n} levels: {} entries, {audited} triples audited, layered equal: {}",
            t.len(),
            layered.to_text() == t.to_text()
        );
    }
    let tiny = TableSpec {
        size_bound: 1,
        vars: vec!["x".into()],
    };
    println!(
        "fixed points on the tiny instance: {}",
        exhaustive_fixed_points(&m, &ordinal_levels(2), &tiny)?.len()
    );

    let g = ordinal_levels(2);
    let phi = parse_formula("(ex z (in z x))")?;
    for x in [0, 1] {
        let v = Valuation::new().set("x", hf_unack_u64(x));
        println!(
            "level 1, {phi} at x=#{x}: {}",
            tr_query(&m, &g, &hf_ordinal(1), &phi, &v)?
        );
    }
    Ok(())
}
