//! Checking set-theoretic axioms and the translation on an unrolling.
use classcode::hfset::{hf_unack_u64, kpair};
use classcode::logic::{parse_formula, SOModel};
use classcode::memcode::canonical_code;
use classcode::unroll::{audit_axiom, audit_translation, unroll, Axiom, S0TrInstance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let v2 = SOModel::v_stage(2)?;
    let u = unroll(&v2, 4)?;
    let step = S0TrInstance {
        step: parse_formula("(exin r i (= x r))")?,
        length: 2,
        index: Some("i".into()),
    };
    for ax in [
        Axiom::Ext,
        Axiom::Found,
        Axiom::Pair,
        Axiom::Union,
        Axiom::Sep0(parse_formula("(not (in p x))")?),
        Axiom::Sep0Upto(7),
        Axiom::S0Tr(step),
    ] {
        println!("{}", audit_axiom(&u, &ax)?);
    }

    let phi = parse_formula("(ex x (all y (not (in y x))))")?;
    println!("{}", audit_translation(&v2, 3, &phi, &[])?);
    let (x, y) = (hf_unack_u64(0), hf_unack_u64(1));
    let pairhood = parse_formula(
        "(and (exin s a3 (and (in a1 s) (allin t s (= t a1)))) \
              (exin d a3 (and (in a1 d) (in a2 d) (allin t d (or (= t a1) (= t a2))))))",
    )?;
    let params = [
        canonical_code(&x),
        canonical_code(&y),
        canonical_code(&kpair(&x, &y)),
    ];
    println!("{}", audit_translation(&v2, 5, &pairhood, &params)?);
    Ok(())
}
