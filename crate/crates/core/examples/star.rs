//! The translation of set formulas into statements about codes, and its complexity.
use classcode::logic::{classify, parse_formula};
use classcode::sample::random_sigma_k;
use classcode::translate::{star_translate, Expansion, StarContext};
use rand::SeedableRng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let phi = parse_formula("(ex x (all y (exin z x (not (= z y)))))")?;
    for e in [
        Expansion::Atoms,
        Expansion::Witness,
        Expansion::Certificate,
        Expansion::Absorb,
    ] {
        let out = star_translate(&phi, StarContext { expansion: e })?;
        println!(
            "{e:?}: {} (size {})",
            classify(&out.formula),
            out.formula.size()
        );
    }
    println!(
        "{}",
        star_translate(
            &parse_formula("(exin x y (= x x))")?,
            StarContext::default()
        )?
        .formula
    );

    let mut r = rand::rngs::StdRng::seed_from_u64(1);
    for k in 1..=3 {
        let phi = random_sigma_k(&mut r, k);
        let out = star_translate(
            &phi,
            StarContext {
                expansion: Expansion::Absorb,
            },
        )?;
        println!("{} sentence -> {}", classify(&phi), classify(&out.formula));
    }
    Ok(())
}
