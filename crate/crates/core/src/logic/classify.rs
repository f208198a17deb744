//! Quantifier-complexity classification, negation normal form and prenex form.

use std::collections::BTreeSet;
use std::fmt;

use super::formula::{fresh_name, Formula, Var};

/// `sigma` and `pi` are the least `k` with the formula Σ_k (resp. Π_k).
/// First-order formulas count unbounded set quantifiers; second-order
/// formulas count class quantifiers only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Complexity {
    pub second_order: bool,
    pub sigma: usize,
    pub pi: usize,
}

impl Complexity {
    pub fn dual(self) -> Self {
        Complexity {
            sigma: self.pi,
            pi: self.sigma,
            ..self
        }
    }

    /// In Σ_k (or Σ¹_k); first-order formulas are Σ¹_0.
    pub fn within_sigma(self, k: usize, second_order: bool) -> bool {
        if second_order && !self.second_order {
            return true;
        }
        self.second_order == second_order && self.sigma <= k
    }

    pub fn within_pi(self, k: usize, second_order: bool) -> bool {
        if second_order && !self.second_order {
            return true;
        }
        self.second_order == second_order && self.pi <= k
    }
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sup = if self.second_order { "¹" } else { "" };
        let (letter, k) = match self.sigma.cmp(&self.pi) {
            _ if self.sigma == 0 && self.pi == 0 => ('Σ', 0),
            std::cmp::Ordering::Less => ('Σ', self.sigma),
            std::cmp::Ordering::Greater => ('Π', self.pi),
            std::cmp::Ordering::Equal => ('Δ', self.sigma),
        };
        write!(f, "{letter}{sup}_{k}")
    }
}

pub fn classify(f: &Formula) -> Complexity {
    let second = !f.is_first_order();
    let (sigma, pi) = levels(f, second);
    Complexity {
        second_order: second,
        sigma,
        pi,
    }
}

fn exists(s: usize, p: usize) -> (usize, usize) {
    let k = s.min(p + 1).max(1);
    (k, k + 1)
}

fn levels(f: &Formula, second: bool) -> (usize, usize) {
    use Formula::*;
    let merge = |fs: &mut dyn Iterator<Item = (usize, usize)>| {
        fs.fold((0, 0), |(s, p), (s2, p2)| (s.max(s2), p.max(p2)))
    };
    match f {
        Iso(..) | Vin(..) => (1, 1),
        Not(g) => {
            let (s, p) = levels(g, second);
            (p, s)
        }
        And(fs) | Or(fs) => merge(&mut fs.iter().map(|g| levels(g, second))),
        Implies(a, b) => {
            let (s, p) = levels(a, second);
            merge(&mut [(p, s), levels(b, second)].into_iter())
        }
        ExistsIn(_, _, g) | ForallIn(_, _, g) => levels(g, second),
        Exists(_, g) | Forall(_, g) if second => levels(g, second),
        Exists(_, g) | ExistsClass(_, g) => {
            let (s, p) = levels(g, second);
            exists(s, p)
        }
        Forall(_, g) | ForallClass(_, g) => {
            let (s, p) = levels(g, second);
            let (p2, s2) = exists(p, s);
            (s2, p2)
        }
        _ => (0, 0),
    }
}

/// Negation normal form: no `implies`, negations only on atoms.
pub fn nnf(f: &Formula) -> Formula {
    use Formula::*;
    let b = |g: &Formula| Box::new(nnf(g));
    match f {
        Not(g) => neg(g),
        And(fs) => And(fs.iter().map(nnf).collect()),
        Or(fs) => Or(fs.iter().map(nnf).collect()),
        Implies(a, c) => Or(vec![neg(a), nnf(c)]),
        Exists(x, g) => Exists(x.clone(), b(g)),
        Forall(x, g) => Forall(x.clone(), b(g)),
        ExistsIn(x, y, g) => ExistsIn(x.clone(), y.clone(), b(g)),
        ForallIn(x, y, g) => ForallIn(x.clone(), y.clone(), b(g)),
        ExistsClass(x, g) => ExistsClass(x.clone(), b(g)),
        ForallClass(x, g) => ForallClass(x.clone(), b(g)),
        atom => atom.clone(),
    }
}

fn neg(f: &Formula) -> Formula {
    use Formula::*;
    let b = |g: &Formula| Box::new(neg(g));
    match f {
        Not(g) => nnf(g),
        And(fs) => Or(fs.iter().map(neg).collect()),
        Or(fs) => And(fs.iter().map(neg).collect()),
        Implies(a, c) => And(vec![nnf(a), neg(c)]),
        Exists(x, g) => Forall(x.clone(), b(g)),
        Forall(x, g) => Exists(x.clone(), b(g)),
        ExistsIn(x, y, g) => ForallIn(x.clone(), y.clone(), b(g)),
        ForallIn(x, y, g) => ExistsIn(x.clone(), y.clone(), b(g)),
        ExistsClass(x, g) => ForallClass(x.clone(), b(g)),
        ForallClass(x, g) => ExistsClass(x.clone(), b(g)),
        atom => Not(Box::new(atom.clone())),
    }
}

#[derive(Clone, Copy)]
enum Q {
    Ex,
    All,
    ExC,
    AllC,
}

/// Pulls unbounded set and class quantifiers to the front through the
/// connectives, renaming bound variables apart. Bounded quantifiers stay in
/// the matrix. Equivalent to `f` over nonempty universes and families.
pub fn prenex(f: &Formula) -> Formula {
    let mut taken = f.all_names();
    prenex_inner(&nnf(f), &mut taken)
}

fn pull(f: &Formula, taken: &mut BTreeSet<Var>) -> (Vec<(Q, Var)>, Formula) {
    use Formula::*;
    let bind = |q: Q, x: &Var, g: &Formula, taken: &mut BTreeSet<Var>| {
        let x2 = fresh_name(x, taken);
        taken.insert(x2.clone());
        let g = if &x2 == x {
            g.clone()
        } else {
            g.rename_free(x, &x2)
        };
        let (mut pre, m) = pull(&g, taken);
        pre.insert(0, (q, x2));
        (pre, m)
    };
    match f {
        Exists(x, g) => bind(Q::Ex, x, g, taken),
        Forall(x, g) => bind(Q::All, x, g, taken),
        ExistsClass(x, g) => bind(Q::ExC, x, g, taken),
        ForallClass(x, g) => bind(Q::AllC, x, g, taken),
        And(fs) | Or(fs) => {
            let mut pre = Vec::new();
            let mut ms = Vec::new();
            for g in fs {
                let (p, m) = pull(g, taken);
                pre.extend(p);
                ms.push(m);
            }
            (pre, if matches!(f, And(_)) { And(ms) } else { Or(ms) })
        }
        ExistsIn(x, y, g) => (
            Vec::new(),
            ExistsIn(x.clone(), y.clone(), Box::new(prenex_inner(g, taken))),
        ),
        ForallIn(x, y, g) => (
            Vec::new(),
            ForallIn(x.clone(), y.clone(), Box::new(prenex_inner(g, taken))),
        ),
        other => (Vec::new(), other.clone()),
    }
}

fn prenex_inner(f: &Formula, taken: &mut BTreeSet<Var>) -> Formula {
    let (prefix, matrix) = pull(f, taken);
    prefix.into_iter().rev().fold(matrix, |acc, (q, x)| {
        let b = Box::new(acc);
        match q {
            Q::Ex => Formula::Exists(x, b),
            Q::All => Formula::Forall(x, b),
            Q::ExC => Formula::ExistsClass(x, b),
            Q::AllC => Formula::ForallClass(x, b),
        }
    })
}
