//! Interpreting second-order formulas inside a first-order structure with a bound.
use classcode::logic::{eval, parse_formula, ClassFamily, SOModel, Valuation};
use classcode::translate::cutoff_interpret;
use classcode::unroll::{cutoff, h_bounded};
use classcode::Caps;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = h_bounded(3, &Caps::default())?;
    let big = SOModel::new(n.clone(), ClassFamily::Full)?.with_kappa(2);
    let small = cutoff(&n, 2)?;
    for s in [
        "(exC X (all y (inclass y X)))",
        "(allC X (ex y (not (inclass y X))))",
        "(all x (exC X (and (inclass x X) (all y (implies (inclass y X) (= y x))))))",
    ] {
        let phi = parse_formula(s)?;
        let i = cutoff_interpret(&phi)?;
        let (a, b) = (
            eval(&big, &i.formula, &Valuation::new())?,
            eval(&small, &phi, &Valuation::new())?,
        );
        println!("{s}\n  -> {}\n  interpreted {a}, direct {b}", i.formula);
    }
    Ok(())
}
