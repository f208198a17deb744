//! Formulas: syntax, coding, classification and evaluation.

pub mod classify;
pub mod eval;
pub mod formula;
pub mod godel;
pub mod model;
pub mod parse;

pub use classify::{classify, nnf, prenex, Complexity};
pub use eval::{eval, EvalError, Evaluator, TruthContext};
pub use formula::{build, ClassTerm, Formula, Var};
pub use godel::{decode_valuation, encode_valuation, godel_decode, godel_encode, GodelError};
pub use model::{code_to_class, ClassFamily, ClassVal, ModelError, SOModel, Valuation};
pub use parse::{parse_formula, ParseError};
