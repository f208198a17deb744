//! Definable power sets and the constructible hierarchy on codes.
use classcode::hfset::HFSet;
use classcode::logic::SOModel;
use classcode::memcode::{canonical_code, collapse};
use classcode::truth::{def_code, def_op, l_code, DefMode};
use classcode::WellOrder;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let v2 = SOModel::v_stage(2)?;
    let bounded = DefMode::Bounded {
        max_formula_size: 3,
        max_params: 0,
    };
    println!(
        "Def(V2): {} subsets with parameters, {} without",
        def_op(&v2, &[], DefMode::FullParams)?.len(),
        def_op(&v2, &[], bounded)?.len()
    );
    let d = def_code(&canonical_code(&HFSet::empty()), DefMode::FullParams)?;
    println!("Def(empty) = {}", collapse(&d).to_literal());
    for k in 0..=4 {
        let l = l_code(
            &WellOrder::<String>::of_length(k),
            None,
            DefMode::FullParams,
        )?;
        println!("L_{k}: {} nodes, {} elements", l.len(), collapse(&l).len());
    }
    Ok(())
}
