//! Parsing, Gödel coding, classification and evaluation of formulas.
use classcode::hfset::hf_unack_u64;
use classcode::logic::{
    classify, eval, godel_decode, godel_encode, nnf, parse_formula, prenex, SOModel, Valuation,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = SOModel::v_stage(3)?;
    for s in [
        "(ex z (in z x))",
        "(all x (ex y (in x y)))",
        "(not (all x (exin z x (= z z))))",
        "(exC X (all y (inclass y X)))",
    ] {
        let f = parse_formula(s)?;
        let code = godel_encode(&f)?;
        assert_eq!(godel_decode(&code)?, f);
        let v = Valuation::new().set("x", hf_unack_u64(1));
        println!(
            "{s}: {}, code tcSize {}, true in V3: {}",
            classify(&f),
            code.tc_size(),
            eval(&m, &f, &v)?
        );
        println!("  nnf {}\n  prenex {}", nnf(&f), prenex(&f));
    }
    Ok(())
}
