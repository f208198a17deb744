//! The `^I` interpretation of the second-order language in a first-order
//! structure with a distinguished bound `κ'`.

use std::collections::BTreeMap;

use super::{Names, TranslateError};
use crate::logic::formula::build;
use crate::logic::{ClassTerm, Formula, Var};

/// `φᴵ` and the set variable replacing each free class variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    pub formula: Formula,
    pub classes: BTreeMap<String, Var>,
}

/// `p = (u, v)` as a Σ₀ formula (Kuratowski pairs).
pub fn pair_formula(p: &str, u: &str, v: &str, names: &mut impl FnMut(&str) -> Var) -> Formula {
    use build::*;
    let (q, r) = (names("q"), names("r"));
    let single = |q: &str| and([mem(u, q), allin(&r, q, eq(&r, u))]);
    let double = |q: &str| {
        and([
            mem(u, q),
            mem(v, q),
            allin(&r, q, or([eq(&r, u), eq(&r, v)])),
        ])
    };
    and([
        exin(&q, p, single(&q)),
        exin(&q, p, double(&q)),
        allin(&q, p, or([single(&q), double(&q)])),
    ])
}

/// Set quantifiers are bounded by `inH`, class quantifiers become set
/// quantifiers bounded by `subsetOfH`, `x ∈ X` becomes `x ∈ x'`. Only `=`,
/// `∈`, class membership and quantifiers are in the domain.
pub fn cutoff_interpret(phi: &Formula) -> Result<Interpretation, TranslateError> {
    let mut names = Names::new(phi.all_names());
    let mut classes = BTreeMap::new();
    let mut map = BTreeMap::new();
    for c in phi.free_classes() {
        let x = names.fresh(&c.to_lowercase());
        map.insert(c.clone(), x.clone());
        classes.insert(c, x);
    }
    let formula = go(phi, &mut map, &mut names)?;
    Ok(Interpretation { formula, classes })
}

fn go(
    f: &Formula,
    map: &mut BTreeMap<String, Var>,
    names: &mut Names,
) -> Result<Formula, TranslateError> {
    use build::*;
    use Formula::*;
    Ok(match f {
        Eq(..) | In(..) | InH(_) | SubsetOfH(_) => f.clone(),
        InClass(us, ClassTerm::Sym(c)) => {
            let x = map
                .get(c)
                .ok_or_else(|| TranslateError::Unsupported(f.to_string()))?
                .clone();
            match us.as_slice() {
                [u] => mem(u, &x),
                [u, v] => {
                    let p = names.fresh("p");
                    let inner = pair_formula(&p, u, v, &mut |b| names.fresh(b));
                    exin(&p, &x, inner)
                }
                _ => return Err(TranslateError::Unsupported(f.to_string())),
            }
        }
        Not(g) => not(go(g, map, names)?),
        And(gs) => And(gs
            .iter()
            .map(|g| go(g, map, names))
            .collect::<Result<_, _>>()?),
        Or(gs) => Or(gs
            .iter()
            .map(|g| go(g, map, names))
            .collect::<Result<_, _>>()?),
        Implies(a, b) => implies(go(a, map, names)?, go(b, map, names)?),
        Exists(x, g) => ex(x, and([Formula::InH(x.clone()), go(g, map, names)?])),
        Forall(x, g) => all(x, implies(Formula::InH(x.clone()), go(g, map, names)?)),
        ExistsIn(x, y, g) => exin(x, y, go(g, map, names)?),
        ForallIn(x, y, g) => allin(x, y, go(g, map, names)?),
        ExistsClass(c, g) | ForallClass(c, g) => {
            let x = names.fresh(&c.to_lowercase());
            let saved = map.insert(c.clone(), x.clone());
            let body = go(g, map, names);
            match saved {
                Some(s) => map.insert(c.clone(), s),
                None => map.remove(c),
            };
            let guard = Formula::SubsetOfH(x.clone());
            if matches!(f, ExistsClass(..)) {
                ex(&x, and([guard, body?]))
            } else {
                all(&x, implies(guard, body?))
            }
        }
        _ => return Err(TranslateError::Unsupported(f.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    #[test]
    fn schema_examples() {
        let f = parse_formula("(allC X (inclass y X))").unwrap();
        assert_eq!(
            cutoff_interpret(&f).unwrap().formula.to_string(),
            "(all x (implies (subsetOfH x) (in y x)))"
        );
        let f = parse_formula("(in x y)").unwrap();
        assert_eq!(cutoff_interpret(&f).unwrap().formula, f);
        assert!(cutoff_interpret(&parse_formula("(iso X Y)").unwrap()).is_err());
    }
}
