//! Formula syntax.

use std::collections::BTreeSet;
use std::fmt;

pub type Var = String;

/// A class argument: a class symbol, or the cone `X↓x` of a code-class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassTerm {
    Sym(Var),
    Below(Var, Var),
}

impl ClassTerm {
    pub fn sym(s: impl Into<String>) -> Self {
        ClassTerm::Sym(s.into())
    }

    pub fn class_name(&self) -> &Var {
        match self {
            ClassTerm::Sym(c) | ClassTerm::Below(c, _) => c,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Eq(Var, Var),
    In(Var, Var),
    /// `u ∈ A`, or `(u, v) ∈ A` with two arguments.
    InClass(Vec<Var>, ClassTerm),
    Tr(Var, Var, Var),
    /// The class is a membership code (loops mark nodes, other pairs are edges).
    Code(ClassTerm),
    /// `x ◁ t_T`
    Pen(Var, ClassTerm),
    Iso(ClassTerm, ClassTerm),
    Vin(ClassTerm, ClassTerm),
    /// `x ∈ H_κ'`
    InH(Var),
    /// `x ⊆ H_κ'`
    SubsetOfH(Var),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
    ExistsIn(Var, Var, Box<Formula>),
    ForallIn(Var, Var, Box<Formula>),
    ExistsClass(Var, Box<Formula>),
    ForallClass(Var, Box<Formula>),
}

/// Short constructors.
pub mod build {
    use super::*;

    pub fn eq(u: &str, v: &str) -> Formula {
        Formula::Eq(u.into(), v.into())
    }
    pub fn mem(u: &str, v: &str) -> Formula {
        Formula::In(u.into(), v.into())
    }
    pub fn inclass(u: &str, c: &str) -> Formula {
        Formula::InClass(vec![u.into()], ClassTerm::sym(c))
    }
    pub fn inclass2(u: &str, v: &str, c: ClassTerm) -> Formula {
        Formula::InClass(vec![u.into(), v.into()], c)
    }
    pub fn tr(u: &str, v: &str, w: &str) -> Formula {
        Formula::Tr(u.into(), v.into(), w.into())
    }
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }
    pub fn and(fs: impl IntoIterator<Item = Formula>) -> Formula {
        Formula::And(fs.into_iter().collect())
    }
    pub fn or(fs: impl IntoIterator<Item = Formula>) -> Formula {
        Formula::Or(fs.into_iter().collect())
    }
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }
    pub fn ex(x: &str, f: Formula) -> Formula {
        Formula::Exists(x.into(), Box::new(f))
    }
    pub fn all(x: &str, f: Formula) -> Formula {
        Formula::Forall(x.into(), Box::new(f))
    }
    pub fn exin(x: &str, y: &str, f: Formula) -> Formula {
        Formula::ExistsIn(x.into(), y.into(), Box::new(f))
    }
    pub fn allin(x: &str, y: &str, f: Formula) -> Formula {
        Formula::ForallIn(x.into(), y.into(), Box::new(f))
    }
    pub fn ex_c(x: &str, f: Formula) -> Formula {
        Formula::ExistsClass(x.into(), Box::new(f))
    }
    pub fn all_c(x: &str, f: Formula) -> Formula {
        Formula::ForallClass(x.into(), Box::new(f))
    }
    pub fn truth() -> Formula {
        Formula::And(Vec::new())
    }
    pub fn falsity() -> Formula {
        Formula::Or(Vec::new())
    }
}

impl Formula {
    /// Number of AST nodes (atoms, connectives, quantifiers).
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Longest chain of nested connectives and quantifiers.
    pub fn depth(&self) -> usize {
        self.children()
            .iter()
            .map(|c| c.depth() + 1)
            .max()
            .unwrap_or(0)
    }

    /// Nesting depth of quantifiers of every kind.
    pub fn quantifier_depth(&self) -> usize {
        let inner = self
            .children()
            .iter()
            .map(|c| c.quantifier_depth())
            .max()
            .unwrap_or(0);
        if self.is_quantifier() {
            inner + 1
        } else {
            inner
        }
    }

    pub fn is_quantifier(&self) -> bool {
        use Formula::*;
        matches!(
            self,
            Exists(..)
                | Forall(..)
                | ExistsIn(..)
                | ForallIn(..)
                | ExistsClass(..)
                | ForallClass(..)
        )
    }

    pub fn is_atom(&self) -> bool {
        self.children().is_empty() && !matches!(self, Formula::And(_) | Formula::Or(_))
    }

    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            Not(f)
            | Exists(_, f)
            | Forall(_, f)
            | ExistsIn(_, _, f)
            | ForallIn(_, _, f)
            | ExistsClass(_, f)
            | ForallClass(_, f) => vec![f],
            And(fs) | Or(fs) => fs.iter().collect(),
            Implies(a, b) => vec![a, b],
            _ => Vec::new(),
        }
    }

    /// No unbounded set or class quantifiers.
    pub fn is_sigma0(&self) -> bool {
        use Formula::*;
        match self {
            Exists(..) | Forall(..) | ExistsClass(..) | ForallClass(..) => false,
            _ => self.children().iter().all(|c| c.is_sigma0()),
        }
    }

    /// No class quantifiers and no class-level atoms.
    pub fn is_first_order(&self) -> bool {
        use Formula::*;
        match self {
            ExistsClass(..) | ForallClass(..) | Code(_) | Pen(..) | Iso(..) | Vin(..) => false,
            _ => self.children().iter().all(|c| c.is_first_order()),
        }
    }

    /// Only `=`, `∈`, connectives and set quantifiers.
    pub fn is_pure_set_language(&self) -> bool {
        use Formula::*;
        match self {
            Eq(..) | In(..) => true,
            Not(_) | And(_) | Or(_) | Implies(..) | Exists(..) | Forall(..) | ExistsIn(..)
            | ForallIn(..) => self.children().iter().all(|c| c.is_pure_set_language()),
            _ => false,
        }
    }

    /// Free set variables.
    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out, false);
        out
    }

    /// Free class symbols.
    pub fn free_classes(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out, true);
        out
    }

    fn collect_free<'a>(
        &'a self,
        bound: &mut Vec<&'a str>,
        out: &mut BTreeSet<Var>,
        classes: bool,
    ) {
        use Formula::*;
        let set = |v: &'a Var, bound: &Vec<&'a str>, out: &mut BTreeSet<Var>| {
            if !classes && !bound.contains(&v.as_str()) {
                out.insert(v.clone());
            }
        };
        let class = |t: &'a ClassTerm, bound: &Vec<&'a str>, out: &mut BTreeSet<Var>| {
            let c = t.class_name();
            if classes && !bound.contains(&c.as_str()) {
                out.insert(c.clone());
            }
            if let ClassTerm::Below(_, x) = t {
                if !classes && !bound.contains(&x.as_str()) {
                    out.insert(x.clone());
                }
            }
        };
        match self {
            Eq(u, v) | In(u, v) => {
                set(u, bound, out);
                set(v, bound, out);
            }
            InClass(us, c) => {
                for u in us {
                    set(u, bound, out);
                }
                class(c, bound, out);
            }
            Tr(u, v, w) => {
                set(u, bound, out);
                set(v, bound, out);
                set(w, bound, out);
            }
            Code(c) => class(c, bound, out),
            Pen(x, c) => {
                set(x, bound, out);
                class(c, bound, out);
            }
            Iso(a, b) | Vin(a, b) => {
                class(a, bound, out);
                class(b, bound, out);
            }
            InH(x) | SubsetOfH(x) => set(x, bound, out),
            Not(f) => f.collect_free(bound, out, classes),
            And(fs) | Or(fs) => {
                for f in fs {
                    f.collect_free(bound, out, classes);
                }
            }
            Implies(a, b) => {
                a.collect_free(bound, out, classes);
                b.collect_free(bound, out, classes);
            }
            Exists(x, f) | Forall(x, f) | ExistsClass(x, f) | ForallClass(x, f) => {
                bound.push(x);
                f.collect_free(bound, out, classes);
                bound.pop();
            }
            ExistsIn(x, y, f) | ForallIn(x, y, f) => {
                set(y, bound, out);
                bound.push(x);
                f.collect_free(bound, out, classes);
                bound.pop();
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_names(&self) -> BTreeSet<Var> {
        use Formula::*;
        let mut out = BTreeSet::new();
        let term = |t: &ClassTerm, out: &mut BTreeSet<Var>| match t {
            ClassTerm::Sym(c) => {
                out.insert(c.clone());
            }
            ClassTerm::Below(c, x) => {
                out.insert(c.clone());
                out.insert(x.clone());
            }
        };
        match self {
            Eq(u, v) | In(u, v) => {
                out.insert(u.clone());
                out.insert(v.clone());
            }
            InClass(us, c) => {
                out.extend(us.iter().cloned());
                term(c, &mut out);
            }
            Tr(u, v, w) => {
                out.extend([u.clone(), v.clone(), w.clone()]);
            }
            Code(c) => term(c, &mut out),
            Pen(x, c) => {
                out.insert(x.clone());
                term(c, &mut out);
            }
            Iso(a, b) | Vin(a, b) => {
                term(a, &mut out);
                term(b, &mut out);
            }
            InH(x) | SubsetOfH(x) => {
                out.insert(x.clone());
            }
            Exists(x, _) | Forall(x, _) | ExistsClass(x, _) | ForallClass(x, _) => {
                out.insert(x.clone());
            }
            ExistsIn(x, y, _) | ForallIn(x, y, _) => {
                out.insert(x.clone());
                out.insert(y.clone());
            }
            _ => {}
        }
        for c in self.children() {
            out.extend(c.all_names());
        }
        out
    }

    /// Renames free occurrences of the set or class variable `from` to `to`.
    /// `to` must not be bound anywhere in `self`.
    pub fn rename_free(&self, from: &str, to: &str) -> Formula {
        use Formula::*;
        let r = |v: &Var| if v == from { to.to_string() } else { v.clone() };
        let rt = |t: &ClassTerm| match t {
            ClassTerm::Sym(c) => ClassTerm::Sym(r(c)),
            ClassTerm::Below(c, x) => ClassTerm::Below(r(c), r(x)),
        };
        let sub = |f: &Formula| Box::new(f.rename_free(from, to));
        match self {
            Eq(u, v) => Eq(r(u), r(v)),
            In(u, v) => In(r(u), r(v)),
            InClass(us, c) => InClass(us.iter().map(r).collect(), rt(c)),
            Tr(u, v, w) => Tr(r(u), r(v), r(w)),
            Code(c) => Code(rt(c)),
            Pen(x, c) => Pen(r(x), rt(c)),
            Iso(a, b) => Iso(rt(a), rt(b)),
            Vin(a, b) => Vin(rt(a), rt(b)),
            InH(x) => InH(r(x)),
            SubsetOfH(x) => SubsetOfH(r(x)),
            Not(f) => Not(sub(f)),
            And(fs) => And(fs.iter().map(|f| f.rename_free(from, to)).collect()),
            Or(fs) => Or(fs.iter().map(|f| f.rename_free(from, to)).collect()),
            Implies(a, b) => Implies(sub(a), sub(b)),
            Exists(x, f) if x == from => Exists(x.clone(), f.clone()),
            Forall(x, f) if x == from => Forall(x.clone(), f.clone()),
            ExistsClass(x, f) if x == from => ExistsClass(x.clone(), f.clone()),
            ForallClass(x, f) if x == from => ForallClass(x.clone(), f.clone()),
            Exists(x, f) => Exists(x.clone(), sub(f)),
            Forall(x, f) => Forall(x.clone(), sub(f)),
            ExistsClass(x, f) => ExistsClass(x.clone(), sub(f)),
            ForallClass(x, f) => ForallClass(x.clone(), sub(f)),
            ExistsIn(x, y, f) if x == from => ExistsIn(x.clone(), r(y), f.clone()),
            ForallIn(x, y, f) if x == from => ForallIn(x.clone(), r(y), f.clone()),
            ExistsIn(x, y, f) => ExistsIn(x.clone(), r(y), sub(f)),
            ForallIn(x, y, f) => ForallIn(x.clone(), r(y), sub(f)),
        }
    }
}

/// Names `base`, `base1`, `base2`, … not in `taken`.
pub fn fresh_name(base: &str, taken: &BTreeSet<Var>) -> Var {
    if !taken.contains(base) {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{base}{i}"))
        .find(|n| !taken.contains(n))
        .expect("unbounded supply")
}

impl fmt::Display for ClassTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassTerm::Sym(c) => write!(f, "{c}"),
            ClassTerm::Below(c, x) => write!(f, "(below {c} {x})"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Formula::*;
        let list = |f: &mut fmt::Formatter<'_>, head: &str, fs: &[Formula]| {
            write!(f, "({head}")?;
            for g in fs {
                write!(f, " {g}")?;
            }
            write!(f, ")")
        };
        match self {
            Eq(u, v) => write!(f, "(= {u} {v})"),
            In(u, v) => write!(f, "(in {u} {v})"),
            InClass(us, c) => write!(f, "(inclass {} {c})", us.join(" ")),
            Tr(u, v, w) => write!(f, "(tr {u} {v} {w})"),
            Code(c) => write!(f, "(code {c})"),
            Pen(x, c) => write!(f, "(pen {x} {c})"),
            Iso(a, b) => write!(f, "(iso {a} {b})"),
            Vin(a, b) => write!(f, "(vin {a} {b})"),
            InH(x) => write!(f, "(inH {x})"),
            SubsetOfH(x) => write!(f, "(subsetOfH {x})"),
            Not(g) => write!(f, "(not {g})"),
            And(fs) => list(f, "and", fs),
            Or(fs) => list(f, "or", fs),
            Implies(a, b) => write!(f, "(implies {a} {b})"),
            Exists(x, g) => write!(f, "(ex {x} {g})"),
            Forall(x, g) => write!(f, "(all {x} {g})"),
            ExistsIn(x, y, g) => write!(f, "(exin {x} {y} {g})"),
            ForallIn(x, y, g) => write!(f, "(allin {x} {y} {g})"),
            ExistsClass(x, g) => write!(f, "(exC {x} {g})"),
            ForallClass(x, g) => write!(f, "(allC {x} {g})"),
        }
    }
}
