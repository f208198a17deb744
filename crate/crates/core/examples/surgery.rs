//! Pair, union, well-order, function, ordinal and glue constructions.
use std::collections::BTreeMap;

use classcode::hfset::hf_unack_u64;
use classcode::memcode::{
    canonical_code, collapse, function_code, function_of_code, glue, ordinal_code, pair_code,
    union_code, wellorder_code, Label,
};
use classcode::WellOrder;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = canonical_code(&hf_unack_u64(1));
    let b = canonical_code(&hf_unack_u64(3));
    println!("pair: {}", collapse(&pair_code(&a, &b)).to_literal());
    println!(
        "union of #6: {}",
        collapse(&union_code(&canonical_code(&hf_unack_u64(6)))).to_literal()
    );

    let order: Vec<Label> = b.pen().into_iter().rev().cloned().collect();
    println!(
        "well-order of #3 (reversed): {}",
        collapse(&wellorder_code(&b, &order)?).to_literal()
    );

    let f: BTreeMap<Label, Label> = b
        .pen()
        .into_iter()
        .map(|x| (x.clone(), b.pen()[0].clone()))
        .collect();
    let g = function_code(&b, &b, &f)?;
    println!("constant function on #3: {}", collapse(&g).to_literal());
    println!("recovered: {:?}", function_of_code(&g, &b, &b)?);

    let w = WellOrder::<String>::of_length(4);
    println!("ordinal 4: {}", collapse(&ordinal_code(&w)).to_literal());

    let g = glue(&a, &b);
    println!("glue of #1 and #3 has {} nodes", g.nodes.len());
    Ok(())
}
