//! Iterated truth predicates, the Def operator and the constructible hierarchy over codes.

mod def;
mod domain;
pub(crate) mod table;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::hfset::{HFSet, HfError};
use crate::logic::{
    decode_valuation, godel_decode, ClassTerm, EvalError, Evaluator, Formula, SOModel,
    TruthContext, Valuation,
};
use crate::order::WellOrder;

pub use def::{def_code, def_code_with, def_op, l_code, DefMode};
pub use domain::{enumerate_core_formulas, table_domain, valuations_for, TableSpec};
pub use table::{
    audit_clauses, count_fixed_points, exhaustive_fixed_points, tr_materialize, ClauseFailure,
    Entry, TruthTable,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TruthError {
    #[error("level {0} is not in the order")]
    LevelOutsideOrder(String),
    #[error("formula is outside the truth language: {0}")]
    NotInLanguage(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Hf(#[from] HfError),
}

/// Formulas the truth predicate speaks about: `=`, `∈`, unary atoms of the
/// model's named classes, `tr`, connectives and set quantifiers.
pub fn in_truth_language(f: &Formula, m: &SOModel) -> bool {
    use Formula::*;
    match f {
        Eq(..) | In(..) | Tr(..) => true,
        InClass(us, ClassTerm::Sym(c)) => us.len() == 1 && m.named().contains_key(c),
        Not(_) | And(_) | Or(_) | Implies(..) | Exists(..) | Forall(..) | ExistsIn(..)
        | ForallIn(..) => f.children().iter().all(|g| in_truth_language(g, m)),
        _ => false,
    }
}

/// The Γ-iterated truth predicate over a model, realized lazily with memoization.
pub struct Truth<'m> {
    model: &'m SOModel,
    gamma: WellOrder<HFSet>,
    memo: Mutex<HashMap<(usize, HFSet, HFSet), bool>>,
    decoded: Mutex<HashMap<HFSet, Option<Arc<Formula>>>>,
}

struct Level<'a, 'm> {
    truth: &'a Truth<'m>,
    pos: usize,
}

impl TruthContext for Level<'_, '_> {
    fn trm(&self, ax: &HFSet, ay: &HFSet, az: &HFSet) -> Result<bool, EvalError> {
        let t = self.truth;
        let Some(px) = t.gamma.position(ax) else {
            return Ok(false);
        };
        if px >= self.pos {
            return Ok(false);
        }
        let Some(psi) = t.formula_of(ay) else {
            return Ok(false);
        };
        let Some(w) = t.valuation_for(&psi, az) else {
            return Ok(false);
        };
        let key = (px, ay.clone(), az.clone());
        if let Some(&b) = t.memo.lock().expect("memo").get(&key) {
            return Ok(b);
        }
        let b = t.at(px, &psi, &w)?;
        t.memo.lock().expect("memo").insert(key, b);
        Ok(b)
    }
}

impl<'m> Truth<'m> {
    pub fn new(model: &'m SOModel, gamma: WellOrder<HFSet>) -> Self {
        Truth {
            model,
            gamma,
            memo: Mutex::new(HashMap::new()),
            decoded: Mutex::new(HashMap::new()),
        }
    }

    pub fn model(&self) -> &SOModel {
        self.model
    }

    pub fn gamma(&self) -> &WellOrder<HFSet> {
        &self.gamma
    }

    /// The formula coded by `code`, if it is one in the truth language.
    pub fn formula_of(&self, code: &HFSet) -> Option<Arc<Formula>> {
        if let Some(f) = self.decoded.lock().expect("decode cache").get(code) {
            return f.clone();
        }
        let f = godel_decode(code)
            .ok()
            .filter(|f| in_truth_language(f, self.model))
            .map(Arc::new);
        self.decoded
            .lock()
            .expect("decode cache")
            .insert(code.clone(), f.clone());
        f
    }

    /// Decodes `code` as a valuation for `f`: exactly its free variables,
    /// valued in the universe.
    pub fn valuation_for(&self, f: &Formula, code: &HFSet) -> Option<Valuation> {
        let w = decode_valuation(code).ok()?;
        let free = f.free_vars();
        if w.len() != free.len()
            || !w.keys().eq(free.iter())
            || !w.values().all(|x| self.model.contains(x))
        {
            return None;
        }
        Some(Valuation {
            sets: w,
            classes: BTreeMap::new(),
        })
    }

    /// Truth of `f` under `v` at the level in position `pos`.
    pub fn at(&self, pos: usize, f: &Formula, v: &Valuation) -> Result<bool, EvalError> {
        let ctx = Level { truth: self, pos };
        Evaluator::new(self.model).with_truth(&ctx).eval(f, v)
    }

    pub fn query(&self, level: &HFSet, f: &Formula, v: &Valuation) -> Result<bool, TruthError> {
        let pos = self
            .gamma
            .position(level)
            .ok_or_else(|| TruthError::LevelOutsideOrder(level.to_ack_literal()))?;
        if !in_truth_language(f, self.model) {
            return Err(TruthError::NotInLanguage(f.to_string()));
        }
        Ok(self.at(pos, f, v)?)
    }
}

/// Whether `(γ, φ, v)` belongs to `Tr_Γ` over `m` (with `m`'s named classes as parameters).
pub fn tr_query(
    m: &SOModel,
    gamma: &WellOrder<HFSet>,
    level: &HFSet,
    f: &Formula,
    v: &Valuation,
) -> Result<bool, TruthError> {
    Truth::new(m, gamma.clone()).query(level, f, v)
}

/// Levels labelled by the von Neumann ordinals `0 … n-1`.
pub fn ordinal_levels(n: usize) -> WellOrder<HFSet> {
    WellOrder::new((0..n).map(crate::hfset::hf_ordinal).collect()).expect("ordinals are distinct")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{encode_valuation, godel_encode, parse_formula};

    #[test]
    fn query_examples() {
        let v2 = SOModel::v_stage(2).unwrap();
        let g1 = ordinal_levels(1);
        let f = parse_formula("(ex x (= x x))").unwrap();
        assert!(tr_query(&v2, &g1, &HFSet::empty(), &f, &Valuation::new()).unwrap());

        let g2 = ordinal_levels(2);
        let code = godel_encode(&f).unwrap();
        let v4 = SOModel::v_stage(4).unwrap();
        let t = parse_formula("(tr l f v)").unwrap();
        let val = Valuation::new()
            .set("l", HFSet::empty())
            .set("f", code.clone())
            .set("v", encode_valuation(&BTreeMap::new()).unwrap());
        assert!(v4.contains(&code));
        assert!(tr_query(&v4, &g2, &crate::hfset::hf_ordinal(1), &t, &val).unwrap());
        assert!(!tr_query(&v4, &g2, &HFSet::empty(), &t, &val).unwrap());
        assert!(matches!(
            tr_query(
                &v2,
                &g1,
                &crate::hfset::hf_ordinal(1),
                &f,
                &Valuation::new()
            ),
            Err(TruthError::LevelOutsideOrder(_))
        ));
    }
}
