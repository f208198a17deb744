//! Reading, validating and collapsing membership codes.
use classcode::hfset::parse_hf;
use classcode::memcode::{canonical_code, collapse, normalize, validate, MemCode, RawPointedGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let two = MemCode::from_json(
        r#"{"nodes":["e","o","t"],"edges":[["e","o"],["e","t"],["o","t"]],"top":"t"}"#,
    )?;
    println!("collapse = {}", collapse(&two).to_literal());
    println!("{}", two.to_dot());

    let cyclic = RawPointedGraph {
        nodes: vec!["a".into(), "b".into()],
        edges: vec![("a".into(), "b".into()), ("b".into(), "a".into())],
        top: "a".into(),
    };
    println!("cyclic: {}", validate(&cyclic).unwrap_err());

    let redundant = RawPointedGraph {
        nodes: vec!["a".into(), "b".into(), "t".into()],
        edges: vec![("a".into(), "t".into()), ("b".into(), "t".into())],
        top: "t".into(),
    };
    println!("not extensional: {}", validate(&redundant).unwrap_err());
    let fixed = normalize(&redundant)?;
    println!("normalized: {} ({} nodes)", fixed.to_json(), fixed.len());

    let x = parse_hf("{{},{{{}}}}")?;
    let e = canonical_code(&x);
    println!("canonical code of {}: {}", x.to_literal(), e.to_json());
    Ok(())
}
