//! Isomorphism and code-level membership through maximal initial partial isomorphisms.
use classcode::hfset::hf_unack_u64;
use classcode::memcode::{canonical_code, iso, max_ipi, vin, Verdict};
use classcode::sample::{random_code, random_relabel};
use rand::SeedableRng;

fn main() {
    let one = canonical_code(&hf_unack_u64(1));
    let three = canonical_code(&hf_unack_u64(3));
    let four = canonical_code(&hf_unack_u64(4));
    for (a, b, name) in [
        (&one, &three, "#1 in #3"),
        (&one, &four, "#1 in #4"),
        (&three, &four, "#3 in #4"),
    ] {
        match vin(a, b) {
            Verdict::Member { witness } => println!("{name}: yes, at node {witness}"),
            Verdict::NotMember { reasons, .. } => {
                println!("{name}: no ({} pen nodes ruled out)", reasons.len())
            }
        }
    }
    let pi = max_ipi(&three, &four);
    println!("max ipi #3 -> #4: {:?}", pi.mapping);

    let mut r = rand::rngs::StdRng::seed_from_u64(5);
    let a = std::iter::repeat_with(|| random_code(&mut r, 8))
        .find(|c| c.len() >= 5)
        .expect("some code is large");
    let b = random_relabel(&mut r, &a);
    println!(
        "random code with {} nodes, relabelled copy iso: {:?}",
        a.len(),
        iso(&a, &b).is_some()
    );
}
