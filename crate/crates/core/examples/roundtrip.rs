//! Both round trips between models and their unrollings.
use classcode::logic::SOModel;
use classcode::unroll::{h_bounded, roundtrip_cut_unroll, roundtrip_unroll_cut, Reading};
use classcode::Caps;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for s in 1..=3 {
        let m = SOModel::v_stage(s)?;
        let r = roundtrip_cut_unroll(&m, m.universe().len() + 1, Reading::TcSize)?;
        println!("V{s}: {}", r.summary());
    }
    let r = roundtrip_cut_unroll(&SOModel::v_stage(3)?, 3, Reading::TcSize)?;
    println!("V3 with budget 3: {}", r.summary());
    for k in [2, 3] {
        let r = roundtrip_unroll_cut(&h_bounded(k, &Caps::default())?, k, Reading::TcSize)?;
        print!("{}", r.to_text());
    }
    Ok(())
}
