//! Syntactic translations: `*` (sets to codes), `⋆` (Σ₀ over one glued
//! parameter code) and `^I` (classes to sets below a bound).

mod etrstar;
mod interp;
mod star;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::logic::formula::fresh_name;
use crate::logic::{Formula, Var};

pub use etrstar::{etr_star_translate, EtrStar};
pub use interp::{cutoff_interpret, pair_formula, Interpretation};
pub(crate) use star::code_class;
pub use star::{
    code_family_model, expand_iso, expand_vin, star_translate, Expansion, Polarity, StarContext,
    StarOutput,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TranslateError {
    #[error("not in the language of the translation: {0}")]
    Unsupported(String),
    #[error("formula is not Σ₀: {0}")]
    NotSigma0(String),
    #[error("free variable {0} is not a parameter a1..a{1}")]
    UnknownParameter(Var, usize),
}

/// Fresh-name supply over a growing set of taken names.
#[derive(Debug, Clone, Default)]
pub(crate) struct Names {
    taken: BTreeSet<Var>,
}

impl Names {
    pub fn new(taken: BTreeSet<Var>) -> Self {
        Names { taken }
    }

    pub fn fresh(&mut self, base: &str) -> Var {
        let n = fresh_name(base, &self.taken);
        self.taken.insert(n.clone());
        n
    }
}

/// Renames bound variables so that no name is bound twice or both bound and free.
pub fn rename_apart(f: &Formula) -> Formula {
    let mut names = Names::new(f.free_vars().into_iter().chain(f.free_classes()).collect());
    apart(f, &mut names)
}

fn apart(f: &Formula, names: &mut Names) -> Formula {
    use Formula::*;
    let bind = |x: &Var, g: &Formula, names: &mut Names| {
        let x2 = names.fresh(x);
        let g = if &x2 == x {
            g.clone()
        } else {
            g.rename_free(x, &x2)
        };
        (x2, Box::new(apart(&g, names)))
    };
    match f {
        Not(g) => Not(Box::new(apart(g, names))),
        And(gs) => And(gs.iter().map(|g| apart(g, names)).collect()),
        Or(gs) => Or(gs.iter().map(|g| apart(g, names)).collect()),
        Implies(a, b) => {
            let a = apart(a, names);
            Implies(Box::new(a), Box::new(apart(b, names)))
        }
        Exists(x, g) => {
            let (x, g) = bind(x, g, names);
            Exists(x, g)
        }
        Forall(x, g) => {
            let (x, g) = bind(x, g, names);
            Forall(x, g)
        }
        ExistsIn(x, y, g) => {
            let (x, g) = bind(x, g, names);
            ExistsIn(x, y.clone(), g)
        }
        ForallIn(x, y, g) => {
            let (x, g) = bind(x, g, names);
            ForallIn(x, y.clone(), g)
        }
        ExistsClass(x, g) => {
            let (x, g) = bind(x, g, names);
            ExistsClass(x, g)
        }
        ForallClass(x, g) => {
            let (x, g) = bind(x, g, names);
            ForallClass(x, g)
        }
        atom => atom.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    #[test]
    fn apart_renames_shadowed() {
        let f = parse_formula("(and (ex x (in x y)) (ex x (exin y x (= x y))))").unwrap();
        let g = rename_apart(&f);
        assert_eq!(
            g.to_string(),
            "(and (ex x (in x y)) (ex x1 (exin y1 x1 (= x1 y1))))"
        );
    }
}
