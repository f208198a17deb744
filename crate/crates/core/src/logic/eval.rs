//! Compositional evaluation over an [`SOModel`].

use thiserror::Error;

use super::formula::{ClassTerm, Formula, Var};
use super::model::{ClassVal, SOModel, Valuation};
use crate::hfset::{HFSet, HfError};
use crate::memcode::{canonical_label, iso, vin};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("unbound set variable {0}")]
    Unbound(Var),
    #[error("unbound class variable {0}")]
    UnboundClass(Var),
    #[error("valuation assigns {0} a set outside the universe")]
    NotInUniverse(Var),
    #[error("tr atom evaluated without a truth context")]
    NoTruthContext,
    #[error("inH/subsetOfH evaluated in a model without a bound")]
    NoBound,
    #[error(transparent)]
    Hf(#[from] HfError),
}

/// Interprets `(tr u v w)` atoms.
pub trait TruthContext {
    fn trm(&self, level: &HFSet, formula: &HFSet, valuation: &HFSet) -> Result<bool, EvalError>;
}

/// An evaluator with an optional truth context installed.
pub struct Evaluator<'a> {
    model: &'a SOModel,
    truth: Option<&'a dyn TruthContext>,
}

pub fn eval(m: &SOModel, f: &Formula, v: &Valuation) -> Result<bool, EvalError> {
    Evaluator::new(m).eval(f, v)
}

struct Env {
    sets: Vec<(Var, HFSet)>,
    classes: Vec<(Var, ClassVal)>,
}

impl Env {
    fn set(&self, x: &str) -> Result<&HFSet, EvalError> {
        self.sets
            .iter()
            .rev()
            .find(|(k, _)| k == x)
            .map(|(_, v)| v)
            .ok_or_else(|| EvalError::Unbound(x.to_string()))
    }
}

impl<'a> Evaluator<'a> {
    pub fn new(model: &'a SOModel) -> Self {
        Evaluator { model, truth: None }
    }

    pub fn with_truth(mut self, ctx: &'a dyn TruthContext) -> Self {
        self.truth = Some(ctx);
        self
    }

    pub fn model(&self) -> &SOModel {
        self.model
    }

    /// Quantifiers shadow the bindings of `v`.
    pub fn eval(&self, f: &Formula, v: &Valuation) -> Result<bool, EvalError> {
        for (k, x) in &v.sets {
            if !self.model.contains(x) {
                return Err(EvalError::NotInUniverse(k.clone()));
            }
        }
        let mut env = Env {
            sets: v.sets.iter().map(|(k, x)| (k.clone(), x.clone())).collect(),
            classes: v
                .classes
                .iter()
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        };
        self.go(f, &mut env)
    }

    fn class(&self, t: &ClassTerm, env: &Env) -> Result<ClassVal, EvalError> {
        let name = t.class_name();
        let c = env
            .classes
            .iter()
            .rev()
            .find(|(k, _)| k == name)
            .map(|(_, c)| c)
            .or_else(|| self.model.named().get(name))
            .ok_or_else(|| EvalError::UnboundClass(name.clone()))?;
        Ok(match t {
            ClassTerm::Sym(_) => c.clone(),
            ClassTerm::Below(_, x) => c.below(env.set(x)?),
        })
    }

    fn bound(&self) -> Result<usize, EvalError> {
        self.model.kappa().ok_or(EvalError::NoBound)
    }

    fn go(&self, f: &Formula, env: &mut Env) -> Result<bool, EvalError> {
        use Formula::*;
        Ok(match f {
            Eq(u, v) => env.set(u)? == env.set(v)?,
            In(u, v) => {
                let a = env.set(u)?;
                env.set(v)?.contains(a)
            }
            InClass(us, t) => {
                let c = self.class(t, env)?;
                match us.as_slice() {
                    [u] => c.contains(env.set(u)?),
                    [u, v] => c.contains_pair(env.set(u)?, env.set(v)?),
                    _ => false,
                }
            }
            Tr(u, v, w) => {
                let ctx = self.truth.ok_or(EvalError::NoTruthContext)?;
                ctx.trm(env.set(u)?, env.set(v)?, env.set(w)?)?
            }
            Code(t) => self.class(t, env)?.as_code().is_some(),
            Pen(x, t) => {
                let c = self.class(t, env)?;
                let x = env.set(x)?;
                match c.as_code() {
                    Some(code) => code.has_edge(&canonical_label(x), code.top()),
                    None => false,
                }
            }
            Iso(a, b) => {
                let (a, b) = (self.class(a, env)?, self.class(b, env)?);
                match (a.as_code(), b.as_code()) {
                    (Some(a), Some(b)) => iso(a, b).is_some(),
                    _ => false,
                }
            }
            Vin(a, b) => {
                let (a, b) = (self.class(a, env)?, self.class(b, env)?);
                match (a.as_code(), b.as_code()) {
                    (Some(a), Some(b)) => vin(a, b).is_member(),
                    _ => false,
                }
            }
            InH(x) => env.set(x)?.tc_size() <= self.bound()?,
            SubsetOfH(x) => {
                let k = self.bound()?;
                env.set(x)?.elements().iter().all(|y| y.tc_size() <= k)
            }
            Not(g) => !self.go(g, env)?,
            And(fs) => {
                for g in fs {
                    if !self.go(g, env)? {
                        return Ok(false);
                    }
                }
                true
            }
            Or(fs) => {
                for g in fs {
                    if self.go(g, env)? {
                        return Ok(true);
                    }
                }
                false
            }
            Implies(a, b) => !self.go(a, env)? || self.go(b, env)?,
            Exists(x, g) | Forall(x, g) => {
                let want = matches!(f, Exists(..));
                let universe = self.model.universe();
                self.quantify(x, universe.iter().cloned(), g, env, want)?
            }
            ExistsIn(x, y, g) | ForallIn(x, y, g) => {
                let want = matches!(f, ExistsIn(..));
                let ys: Vec<HFSet> = env
                    .set(y)?
                    .elements()
                    .iter()
                    .filter(|e| self.model.contains(e))
                    .cloned()
                    .collect();
                self.quantify(x, ys.into_iter(), g, env, want)?
            }
            ExistsClass(x, g) | ForallClass(x, g) => {
                let want = matches!(f, ExistsClass(..));
                let mut result = !want;
                for c in self.model.classes()? {
                    env.classes.push((x.clone(), c.clone()));
                    let r = self.go(g, env);
                    env.classes.pop();
                    if r? == want {
                        result = want;
                        break;
                    }
                }
                result
            }
        })
    }

    fn quantify(
        &self,
        x: &Var,
        range: impl Iterator<Item = HFSet>,
        g: &Formula,
        env: &mut Env,
        want: bool,
    ) -> Result<bool, EvalError> {
        for a in range {
            env.sets.push((x.clone(), a));
            let r = self.go(g, env);
            env.sets.pop();
            if r? == want {
                return Ok(want);
            }
        }
        Ok(!want)
    }
}
