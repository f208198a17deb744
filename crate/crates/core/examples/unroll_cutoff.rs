//! Unrolling a model into sets, and cutting a set structure back down.
use classcode::logic::SOModel;
use classcode::unroll::{cutoff, cutoff_with, h_bounded, unroll, Reading};
use classcode::Caps;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let v2 = SOModel::v_stage(2)?;
    for budget in 1..=5 {
        let u = unroll(&v2, budget)?;
        println!("budget {budget}: {} elements, kappa {}", u.len(), u.kappa);
    }
    print!("{}", unroll(&v2, 3)?.to_text());

    let n = h_bounded(4, &Caps::default())?;
    for k in 1..=3 {
        let c = cutoff(&n, k)?;
        let r = cutoff_with(&n, k, Reading::Rank)?;
        println!(
            "cut at {k}: tcSize reading {} elements, rank reading {} elements",
            c.universe().len(),
            r.universe().len()
        );
    }
    Ok(())
}
