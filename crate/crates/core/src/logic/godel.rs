//! Gödel coding of formulas and valuations as hereditarily finite sets.
//!
//! A formula is first numbered (`20·payload + tag`, payloads built with the
//! Cantor pairing function), and the number is sent through `hf_unack`.
//! Variable names are numbered in bijective base 65 over an alphabet that
//! starts `x y z u v w`, so `x` is 0 and `(= x x)` codes to `∅`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::formula::{ClassTerm, Formula, Var};
use super::parse::check_scope;
use crate::hfset::{hf_unack, HFSet, HfError};

const ALPHABET: &str = "xyzuvwabcdefghijklmnopqrstXYZUVWABCDEFGHIJKLMNOPQRST0123456789_'.";
const TAGS: u32 = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GodelError {
    #[error("not a formula code: {0}")]
    NotAFormula(String),
    #[error("not a valuation code: {0}")]
    NotAValuation(String),
    #[error("character {0:?} cannot occur in a variable name")]
    BadName(char),
    #[error(transparent)]
    Hf(#[from] HfError),
}

fn pair(a: &BigUint, b: &BigUint) -> BigUint {
    let s = a + b;
    (&s * (&s + 1u32)) / 2u32 + b
}

fn unpair(z: &BigUint) -> (BigUint, BigUint) {
    let w = ((z * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let b = z - t;
    let a = w - &b;
    (a, b)
}

fn list(items: Vec<BigUint>) -> BigUint {
    items
        .into_iter()
        .rev()
        .fold(BigUint::zero(), |acc, h| pair(&h, &acc) + 1u32)
}

fn unlist(mut n: BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    while !n.is_zero() {
        let (h, t) = unpair(&(n - 1u32));
        out.push(h);
        n = t;
    }
    out
}

/// Number of a variable name (`x` ↦ 0).
pub fn name_number(name: &str) -> Result<BigUint, GodelError> {
    let base = ALPHABET.len() as u32;
    let mut n = BigUint::zero();
    for c in name.chars() {
        let d = ALPHABET.find(c).ok_or(GodelError::BadName(c))? as u32;
        n = n * base + (d + 1);
    }
    if n.is_zero() {
        return Err(GodelError::NotAFormula("empty variable name".into()));
    }
    Ok(n - 1u32)
}

/// Inverse of [`name_number`].
pub fn number_name(n: &BigUint) -> Var {
    let base = BigUint::from(ALPHABET.len());
    let alpha = ALPHABET.as_bytes();
    let mut n = n + 1u32;
    let mut rev = Vec::new();
    while !n.is_zero() {
        let d = ((&n - 1u32) % &base).to_usize().expect("digit");
        rev.push(alpha[d] as char);
        n = (n - 1u32) / &base;
    }
    rev.iter().rev().collect()
}

fn term_number(t: &ClassTerm) -> Result<BigUint, GodelError> {
    Ok(match t {
        ClassTerm::Sym(c) => name_number(c)? * 2u32,
        ClassTerm::Below(c, x) => pair(&name_number(c)?, &name_number(x)?) * 2u32 + 1u32,
    })
}

fn number_term(n: &BigUint) -> ClassTerm {
    let half = n / 2u32;
    if (n % 2u32).is_zero() {
        ClassTerm::Sym(number_name(&half))
    } else {
        let (c, x) = unpair(&half);
        ClassTerm::Below(number_name(&c), number_name(&x))
    }
}

/// The natural number underlying the code of `f`.
pub fn formula_number(f: &Formula) -> Result<BigUint, GodelError> {
    use Formula::*;
    let nn = |v: &Var| name_number(v);
    let (tag, payload) = match f {
        Eq(u, v) => (0, pair(&nn(u)?, &nn(v)?)),
        In(u, v) => (1, pair(&nn(u)?, &nn(v)?)),
        InClass(us, c) => {
            let args = us.iter().map(nn).collect::<Result<Vec<_>, _>>()?;
            (2, pair(&list(args), &term_number(c)?))
        }
        Tr(u, v, w) => (3, pair(&nn(u)?, &pair(&nn(v)?, &nn(w)?))),
        Not(g) => (4, formula_number(g)?),
        And(fs) | Or(fs) => {
            let items = fs
                .iter()
                .map(formula_number)
                .collect::<Result<Vec<_>, _>>()?;
            (if matches!(f, And(_)) { 5 } else { 6 }, list(items))
        }
        Implies(a, b) => (7, pair(&formula_number(a)?, &formula_number(b)?)),
        Exists(x, g) => (8, pair(&nn(x)?, &formula_number(g)?)),
        Forall(x, g) => (9, pair(&nn(x)?, &formula_number(g)?)),
        ExistsIn(x, y, g) => (10, pair(&nn(x)?, &pair(&nn(y)?, &formula_number(g)?))),
        ForallIn(x, y, g) => (11, pair(&nn(x)?, &pair(&nn(y)?, &formula_number(g)?))),
        ExistsClass(x, g) => (12, pair(&nn(x)?, &formula_number(g)?)),
        ForallClass(x, g) => (13, pair(&nn(x)?, &formula_number(g)?)),
        Code(t) => (14, term_number(t)?),
        Pen(x, t) => (15, pair(&nn(x)?, &term_number(t)?)),
        Iso(a, b) => (16, pair(&term_number(a)?, &term_number(b)?)),
        Vin(a, b) => (17, pair(&term_number(a)?, &term_number(b)?)),
        InH(x) => (18, nn(x)?),
        SubsetOfH(x) => (19, nn(x)?),
    };
    Ok(payload * TAGS + tag as u32)
}

/// Inverse of [`formula_number`], before the scope check.
pub fn number_formula(n: &BigUint) -> Result<Formula, GodelError> {
    use Formula::*;
    let tag = (n % TAGS).to_u32().expect("small");
    let p = n / TAGS;
    let nm = number_name;
    let b = |f: Formula| Box::new(f);
    Ok(match tag {
        0 | 1 => {
            let (u, v) = unpair(&p);
            if tag == 0 {
                Eq(nm(&u), nm(&v))
            } else {
                In(nm(&u), nm(&v))
            }
        }
        2 => {
            let (args, t) = unpair(&p);
            let args = unlist(args);
            if args.is_empty() || args.len() > 2 {
                return Err(GodelError::NotAFormula(format!(
                    "inclass with {} arguments",
                    args.len()
                )));
            }
            InClass(args.iter().map(nm).collect(), number_term(&t))
        }
        3 => {
            let (u, vw) = unpair(&p);
            let (v, w) = unpair(&vw);
            Tr(nm(&u), nm(&v), nm(&w))
        }
        4 => Not(b(number_formula(&p)?)),
        5 | 6 => {
            let fs = unlist(p)
                .iter()
                .map(number_formula)
                .collect::<Result<Vec<_>, _>>()?;
            if tag == 5 {
                And(fs)
            } else {
                Or(fs)
            }
        }
        7 => {
            let (a, c) = unpair(&p);
            Implies(b(number_formula(&a)?), b(number_formula(&c)?))
        }
        8 | 9 | 12 | 13 => {
            let (x, g) = unpair(&p);
            let (x, g) = (nm(&x), b(number_formula(&g)?));
            match tag {
                8 => Exists(x, g),
                9 => Forall(x, g),
                12 => ExistsClass(x, g),
                _ => ForallClass(x, g),
            }
        }
        10 | 11 => {
            let (x, yg) = unpair(&p);
            let (y, g) = unpair(&yg);
            let (x, y, g) = (nm(&x), nm(&y), b(number_formula(&g)?));
            if tag == 10 {
                ExistsIn(x, y, g)
            } else {
                ForallIn(x, y, g)
            }
        }
        14 => Code(number_term(&p)),
        15 => {
            let (x, t) = unpair(&p);
            Pen(nm(&x), number_term(&t))
        }
        16 | 17 => {
            let (a, c) = unpair(&p);
            if tag == 16 {
                Iso(number_term(&a), number_term(&c))
            } else {
                Vin(number_term(&a), number_term(&c))
            }
        }
        18 => InH(nm(&p)),
        19 => SubsetOfH(nm(&p)),
        _ => return Err(GodelError::NotAFormula(format!("unused tag {tag}"))),
    })
}

pub fn godel_encode(f: &Formula) -> Result<HFSet, GodelError> {
    Ok(hf_unack(&formula_number(f)?))
}

/// Decodes a formula code; rejects non-codes and ill-scoped formulas.
pub fn godel_decode(x: &HFSet) -> Result<Formula, GodelError> {
    let f = number_formula(x.ack()?)?;
    check_scope(&f).map_err(|e| GodelError::NotAFormula(e.to_string()))?;
    Ok(f)
}

/// Codes a finite assignment of sets to variables.
pub fn encode_valuation(v: &BTreeMap<Var, HFSet>) -> Result<HFSet, GodelError> {
    Ok(hf_unack(&valuation_number(v)?))
}

/// The natural number underlying the code of a valuation.
pub fn valuation_number(v: &BTreeMap<Var, HFSet>) -> Result<BigUint, GodelError> {
    let mut items = v
        .iter()
        .map(|(k, x)| Ok((name_number(k)?, x.ack()?.clone())))
        .collect::<Result<Vec<_>, GodelError>>()?;
    items.sort();
    Ok(list(items.iter().map(|(k, x)| pair(k, x)).collect()))
}

pub fn decode_valuation(x: &HFSet) -> Result<BTreeMap<Var, HFSet>, GodelError> {
    let mut out = BTreeMap::new();
    let mut last: Option<BigUint> = None;
    for item in unlist(x.ack()?.clone()) {
        let (k, val) = unpair(&item);
        if last.as_ref().is_some_and(|l| *l >= k) {
            return Err(GodelError::NotAValuation(
                "variables not strictly increasing".into(),
            ));
        }
        out.insert(number_name(&k), hf_unack(&val));
        last = Some(k);
    }
    Ok(out)
}

/// Code of the empty valuation.
pub fn empty_valuation() -> HFSet {
    hf_unack(&BigUint::zero())
}
