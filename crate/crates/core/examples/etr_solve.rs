//! Recursions along well-founded relations, and comparing well-orders.
use classcode::etr::{compare_wellorders, etr_check, etr_solve, RecursionInstance, WfRelation};
use classcode::hfset::hf_ordinal;
use classcode::logic::{parse_formula, SOModel};
use classcode::WellOrder;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = SOModel::v_stage(4)?;
    let step = parse_formula("(ex r (and (in r i) (allin z x (inclass r z Y))))")?;
    let inst = RecursionInstance::new(&m, step).with_index("i");
    let order: Vec<_> = (0..4).map(hf_ordinal).collect();
    let rel = WfRelation::chain(&order);
    let s = etr_solve(&inst, &rel)?;
    for o in &order {
        println!(
            "slice at {}: {} sets",
            o.to_literal(),
            s.slice(o).map_or(0, |x| x.len())
        );
    }
    println!("check: {:?}", etr_check(&inst, &rel, &s)?.is_ok());

    let g = WellOrder::new(vec!["a", "b"])?;
    let d = WellOrder::new(vec!["p", "q", "r"])?;
    println!("{:?}", compare_wellorders(&g, &d));
    println!("{:?}", compare_wellorders(&d, &g));
    Ok(())
}
