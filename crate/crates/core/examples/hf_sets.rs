//! Ackermann indices, literals, stages and tcSize enumeration.
use classcode::hfset::{
    hf_enumerate_tc_bounded, hf_measures, hf_ordinal, hf_unack_u64, hf_v_stage, kpair, kpair_parts,
    parse_hf,
};
use classcode::Caps;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let caps = Caps::from_env()?;
    for n in [0u64, 1, 2, 3, 11] {
        let x = hf_unack_u64(n);
        let (rank, tc) = hf_measures(&x);
        println!("#{n} = {} rank {rank} tcSize {tc}", x.to_literal());
    }
    let x = parse_hf("{{},{{}}}")?;
    println!("{} has index {}", x.to_literal(), x.ack()?);
    for k in 0..=4 {
        println!("V{k} has {} elements", hf_v_stage(k, &caps)?.len());
    }
    println!("ordinal 3 = {}", hf_ordinal(3).to_literal());
    let p = kpair(&hf_ordinal(0), &hf_ordinal(1));
    let (a, b) = kpair_parts(&p).expect("a Kuratowski pair");
    println!(
        "pair {} splits into {} and {}",
        p.to_literal(),
        a.to_literal(),
        b.to_literal()
    );
    for k in 1..=5 {
        println!(
            "tcSize <= {k}: {} sets",
            hf_enumerate_tc_bounded(k, &caps)?.len()
        );
    }
    Ok(())
}
