//! Bounded formulas about code parameters, evaluated inside one combined code.
use classcode::hfset::{hf_unack_u64, kpair};
use classcode::logic::parse_formula;
use classcode::memcode::canonical_code;
use classcode::translate::etr_star_translate;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (x, y) = (hf_unack_u64(0), hf_unack_u64(1));
    let params = [
        canonical_code(&x),
        canonical_code(&y),
        canonical_code(&kpair(&x, &y)),
    ];
    let phi = parse_formula("(exin d a3 (and (in a1 d) (in a2 d)))")?;
    let out = etr_star_translate(&phi, &params)?;
    println!("{}", out.formula);
    println!("P = {}", out.code.to_json());
    println!("parameters at {:?}", out.params);
    println!("holds: {}", out.eval()?);
    let swapped = etr_star_translate(&parse_formula("(in a3 a1)")?, &params)?;
    println!("a3 in a1: {}", swapped.eval()?);
    Ok(())
}
