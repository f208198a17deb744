//! The `*` translation from first-order formulas about sets to
//! second-order formulas about membership codes.

use std::collections::{BTreeMap, BTreeSet};

use super::{rename_apart, Names, TranslateError};
use crate::hfset::{hf_unack_u64, HFSet};
use crate::logic::formula::build;
use crate::logic::{
    code_to_class, nnf, prenex, ClassFamily, ClassTerm, ClassVal, Formula, SOModel, Var,
};
use crate::memcode::{collapse, enumerate_codes, MemCode};

/// How `≅` and `⋳` atoms are written out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expansion {
    /// Keep `iso` / `vin` atoms.
    Atoms,
    /// Σ¹₁ forms: a witnessing isomorphism, or a maximal initial partial
    /// isomorphism certifying failure under a negation.
    Witness,
    /// Π¹₁ forms: every maximal initial partial isomorphism succeeds, or no
    /// initial partial isomorphism does under a negation.
    Certificate,
    /// Prenex the input, then use [`Expansion::Witness`] when the innermost
    /// unbounded block is existential (or absent) and
    /// [`Expansion::Certificate`] when it is universal.
    Absorb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StarContext {
    pub expansion: Expansion,
}

impl Default for StarContext {
    fn default() -> Self {
        StarContext {
            expansion: Expansion::Atoms,
        }
    }
}

/// Sign of an occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Positive,
    Negative,
}

/// `φ*` and the class variable standing for each free set variable of `φ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarOutput {
    pub formula: Formula,
    pub classes: BTreeMap<Var, String>,
    /// The formula actually translated (after prenexing under `Absorb`).
    pub source: Formula,
}

/// Translates a formula of the pure set language (`=`, `∈`, connectives,
/// bounded and unbounded set quantifiers).
pub fn star_translate(phi: &Formula, ctx: StarContext) -> Result<StarOutput, TranslateError> {
    if !phi.is_pure_set_language() {
        return Err(TranslateError::Unsupported(phi.to_string()));
    }
    let (source, expansion) = match ctx.expansion {
        Expansion::Absorb => {
            let p = prenex(&nnf(phi));
            let e = match innermost_block(&p) {
                Some(false) => Expansion::Certificate,
                _ => Expansion::Witness,
            };
            (p, e)
        }
        e => (phi.clone(), e),
    };
    let source_apart = rename_apart(&source);
    let mut names = Names::new(source_apart.all_names());
    let mut terms: BTreeMap<Var, ClassTerm> = BTreeMap::new();
    let mut classes = BTreeMap::new();
    for x in source_apart.free_vars() {
        let c = names.fresh(&x.to_uppercase());
        terms.insert(x.clone(), ClassTerm::Sym(c.clone()));
        classes.insert(x, c);
    }
    let atoms = translate(&source_apart, &mut terms, &mut names);
    let formula = match expansion {
        Expansion::Atoms => atoms,
        e => expand(&atoms, e, Polarity::Positive, &mut names),
    };
    Ok(StarOutput {
        formula,
        classes,
        source,
    })
}

/// `Some(true)` for `∃`, `Some(false)` for `∀`: the last unbounded
/// quantifier of the prenex prefix.
fn innermost_block(f: &Formula) -> Option<bool> {
    match f {
        Formula::Exists(_, g) => innermost_block(g).or(Some(true)),
        Formula::Forall(_, g) => innermost_block(g).or(Some(false)),
        _ => None,
    }
}

fn translate(f: &Formula, terms: &mut BTreeMap<Var, ClassTerm>, names: &mut Names) -> Formula {
    use Formula::*;
    match f {
        Eq(u, v) => Iso(terms[u].clone(), terms[v].clone()),
        In(u, v) => Vin(terms[u].clone(), terms[v].clone()),
        Not(g) => Not(Box::new(translate(g, terms, names))),
        And(gs) => And(gs.iter().map(|g| translate(g, terms, names)).collect()),
        Or(gs) => Or(gs.iter().map(|g| translate(g, terms, names)).collect()),
        Implies(a, b) => {
            let a = translate(a, terms, names);
            Implies(Box::new(a), Box::new(translate(b, terms, names)))
        }
        Exists(x, g) | Forall(x, g) => {
            let c = names.fresh(&x.to_uppercase());
            let saved = terms.insert(x.clone(), ClassTerm::Sym(c.clone()));
            let body = translate(g, terms, names);
            restore(terms, x, saved);
            let guard = Code(ClassTerm::Sym(c.clone()));
            if matches!(f, Exists(..)) {
                ExistsClass(c, Box::new(build::and([guard, body])))
            } else {
                ForallClass(c, Box::new(build::implies(guard, body)))
            }
        }
        ExistsIn(x, y, g) | ForallIn(x, y, g) => {
            let base = terms[y].class_name().clone();
            let bound = Pen(x.clone(), terms[y].clone());
            let saved = terms.insert(x.clone(), ClassTerm::Below(base, x.clone()));
            let body = translate(g, terms, names);
            restore(terms, x, saved);
            if matches!(f, ExistsIn(..)) {
                Exists(x.clone(), Box::new(build::and([bound, body])))
            } else {
                Forall(x.clone(), Box::new(build::implies(bound, body)))
            }
        }
        other => unreachable!("checked pure set language: {other}"),
    }
}

fn restore(terms: &mut BTreeMap<Var, ClassTerm>, x: &Var, saved: Option<ClassTerm>) {
    match saved {
        Some(t) => terms.insert(x.clone(), t),
        None => terms.remove(x),
    };
}

fn expand(f: &Formula, e: Expansion, pol: Polarity, names: &mut Names) -> Formula {
    use Formula::*;
    let flip = match pol {
        Polarity::Positive => Polarity::Negative,
        Polarity::Negative => Polarity::Positive,
    };
    let atom = |kind: Kind, a: &ClassTerm, b: &ClassTerm, names: &mut Names| match pol {
        Polarity::Positive => form(kind, a, b, e, Polarity::Positive, names),
        Polarity::Negative => build::not(form(kind, a, b, e, Polarity::Negative, names)),
    };
    match f {
        Iso(a, b) => atom(Kind::Iso, a, b, names),
        Vin(a, b) => atom(Kind::Vin, a, b, names),
        Not(g) => Not(Box::new(expand(g, e, flip, names))),
        And(gs) => And(gs.iter().map(|g| expand(g, e, pol, names)).collect()),
        Or(gs) => Or(gs.iter().map(|g| expand(g, e, pol, names)).collect()),
        Implies(a, b) => {
            let a = expand(a, e, flip, names);
            Implies(Box::new(a), Box::new(expand(b, e, pol, names)))
        }
        Exists(x, g) => Exists(x.clone(), Box::new(expand(g, e, pol, names))),
        Forall(x, g) => Forall(x.clone(), Box::new(expand(g, e, pol, names))),
        ExistsClass(x, g) => ExistsClass(x.clone(), Box::new(expand(g, e, pol, names))),
        ForallClass(x, g) => ForallClass(x.clone(), Box::new(expand(g, e, pol, names))),
        other => other.clone(),
    }
}

#[derive(Clone, Copy)]
enum Kind {
    Iso,
    Vin,
}

/// `a ≅ b` written out: with `Positive` a formula equivalent to the
/// relation, with `Negative` one equivalent to its negation. `Witness` gives
/// Σ¹₁ forms, `Certificate` Π¹₁ forms.
pub fn expand_iso(
    a: &ClassTerm,
    b: &ClassTerm,
    e: Expansion,
    pol: Polarity,
    taken: BTreeSet<Var>,
) -> Formula {
    form(Kind::Iso, a, b, e, pol, &mut Names::new(taken))
}

/// As [`expand_iso`] for `a ⋳ b`.
pub fn expand_vin(
    a: &ClassTerm,
    b: &ClassTerm,
    e: Expansion,
    pol: Polarity,
    taken: BTreeSet<Var>,
) -> Formula {
    form(Kind::Vin, a, b, e, pol, &mut Names::new(taken))
}

fn form(
    kind: Kind,
    a: &ClassTerm,
    b: &ClassTerm,
    e: Expansion,
    pol: Polarity,
    names: &mut Names,
) -> Formula {
    use build::*;
    match e {
        Expansion::Atoms | Expansion::Absorb => {
            let atom = match kind {
                Kind::Iso => Formula::Iso(a.clone(), b.clone()),
                Kind::Vin => Formula::Vin(a.clone(), b.clone()),
            };
            return if pol == Polarity::Positive {
                atom
            } else {
                not(atom)
            };
        }
        Expansion::Witness | Expansion::Certificate => {}
    }
    let f = names.fresh("F");
    let g = Graph {
        a: a.clone(),
        b: b.clone(),
        f: ClassTerm::Sym(f.clone()),
    };
    let codes = and([Formula::Code(a.clone()), Formula::Code(b.clone())]);
    let not_codes = or([not(Formula::Code(a.clone())), not(Formula::Code(b.clone()))]);
    let ipi = g.ipi(names);
    let good = g.good(kind, names);
    match (e, pol) {
        (Expansion::Witness, Polarity::Positive) => and([codes, ex_c(&f, and([ipi, good]))]),
        (Expansion::Witness, Polarity::Negative) => {
            let max = g.maximal(names);
            or([not_codes, ex_c(&f, and([ipi, max, not(good)]))])
        }
        (Expansion::Certificate, Polarity::Positive) => {
            let max = g.maximal(names);
            and([codes, all_c(&f, implies(and([ipi, max]), good))])
        }
        (Expansion::Certificate, Polarity::Negative) => {
            or([not_codes, all_c(&f, implies(ipi, not(good)))])
        }
        _ => unreachable!(),
    }
}

/// First-order descriptions of a relation `F` between the code classes `A` and `B`.
struct Graph {
    a: ClassTerm,
    b: ClassTerm,
    f: ClassTerm,
}

fn pair(u: &str, v: &str, c: &ClassTerm) -> Formula {
    build::inclass2(u, v, c.clone())
}

fn node(u: &str, c: &ClassTerm) -> Formula {
    pair(u, u, c)
}

fn edge(u: &str, v: &str, c: &ClassTerm) -> Formula {
    build::and([pair(u, v, c), build::not(build::eq(u, v))])
}

fn alls(vs: &[&Var], f: Formula) -> Formula {
    vs.iter().rev().fold(f, |acc, v| build::all(v, acc))
}

fn iff(p: Formula, q: Formula) -> Formula {
    build::and([build::implies(p.clone(), q.clone()), build::implies(q, p)])
}

impl Graph {
    fn f(&self, u: &str, v: &str) -> Formula {
        pair(u, v, &self.f)
    }

    /// `F` is an initial partial isomorphism from `A` to `B`.
    fn ipi(&self, n: &mut Names) -> Formula {
        use build::*;
        let (a, b, c, d) = (n.fresh("a"), n.fresh("b"), n.fresh("c"), n.fresh("d"));
        and([
            alls(
                &[&a, &b],
                implies(self.f(&a, &b), and([node(&a, &self.a), node(&b, &self.b)])),
            ),
            alls(
                &[&a, &b, &c],
                implies(and([self.f(&a, &b), self.f(&a, &c)]), eq(&b, &c)),
            ),
            alls(
                &[&a, &b, &c],
                implies(and([self.f(&a, &c), self.f(&b, &c)]), eq(&a, &b)),
            ),
            alls(
                &[&a, &b, &c],
                implies(
                    and([self.f(&a, &b), edge(&c, &a, &self.a)]),
                    ex(&d, self.f(&c, &d)),
                ),
            ),
            alls(
                &[&a, &b, &d],
                implies(
                    and([self.f(&a, &b), edge(&d, &b, &self.b)]),
                    ex(&c, self.f(&c, &d)),
                ),
            ),
            alls(
                &[&a, &b, &c, &d],
                implies(
                    and([self.f(&a, &b), self.f(&c, &d)]),
                    iff(edge(&c, &a, &self.a), edge(&d, &b, &self.b)),
                ),
            ),
        ])
    }

    fn top(&self, u: &str, c: &ClassTerm, n: &mut Names) -> Formula {
        let z = n.fresh("z");
        build::and([node(u, c), build::not(build::ex(&z, edge(u, &z, c)))])
    }

    /// `F` is total on `A` and sends its top to the top of `B` (iso) or to
    /// a node of the penultimate level of `B` (vin).
    fn good(&self, kind: Kind, n: &mut Names) -> Formula {
        use build::*;
        let (a, b) = (n.fresh("a"), n.fresh("b"));
        let total = all(&a, implies(node(&a, &self.a), ex(&b, self.f(&a, &b))));
        let (a2, b2) = (n.fresh("a"), n.fresh("b"));
        let target = match kind {
            Kind::Iso => self.top(&b2, &self.b, n),
            Kind::Vin => Formula::Pen(b2.clone(), self.b.clone()),
        };
        let top = ex(
            &a2,
            ex(
                &b2,
                and([self.top(&a2, &self.a, n), self.f(&a2, &b2), target]),
            ),
        );
        and([total, top])
    }

    /// No node of `A` outside `dom F` whose predecessors all lie in `dom F`
    /// can be added to `F`; for an initial partial isomorphism this makes
    /// `F` the maximum one.
    fn maximal(&self, n: &mut Names) -> Formula {
        use build::*;
        let (x, y, a, b, c) = (
            n.fresh("x"),
            n.fresh("y"),
            n.fresh("a"),
            n.fresh("b"),
            n.fresh("c"),
        );
        let min_out = and([
            node(&x, &self.a),
            not(ex(&b, self.f(&x, &b))),
            all(&a, implies(edge(&a, &x, &self.a), ex(&b, self.f(&a, &b)))),
        ]);
        let extends = and([
            node(&y, &self.b),
            not(ex(&a, self.f(&a, &y))),
            all(&c, implies(edge(&c, &y, &self.b), ex(&a, self.f(&a, &c)))),
            alls(
                &[&a, &b],
                implies(
                    self.f(&a, &b),
                    iff(edge(&a, &x, &self.a), edge(&b, &y, &self.b)),
                ),
            ),
        ]);
        all(&x, implies(min_out, not(ex(&y, extends))))
    }
}

/// Universe of `budget` points with class quantifiers ranging over one
/// code per isomorphism type with at most `budget` nodes, laid out on the
/// points in topological order.
pub fn code_family_model(budget: usize) -> SOModel {
    let points: Vec<HFSet> = (0..budget as u64).map(hf_unack_u64).collect();
    let mut seen = BTreeSet::new();
    let mut family = Vec::new();
    for code in enumerate_codes(budget) {
        if seen.insert(collapse(&code)) {
            family.push(code_class(&code, &points));
        }
    }
    SOModel::structure(points, ClassFamily::Explicit(family)).expect("codes on the points")
}

/// `code` as a class on `points`, node `i` of its topological order on `points[i]`.
pub(crate) fn code_class(code: &MemCode, points: &[HFSet]) -> ClassVal {
    let order: BTreeMap<&str, usize> = code
        .topological()
        .into_iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    code_to_class(code, |l| points[order[l]].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{classify, eval, parse_formula, Valuation};

    #[test]
    fn schema_examples() {
        let out =
            star_translate(&parse_formula("(= x y)").unwrap(), StarContext::default()).unwrap();
        assert_eq!(out.formula.to_string(), "(iso X Y)");
        let out = star_translate(
            &parse_formula("(exin x y (= x x))").unwrap(),
            StarContext::default(),
        )
        .unwrap();
        assert_eq!(
            out.formula.to_string(),
            "(ex x (and (pen x Y) (iso (below Y x) (below Y x))))"
        );
        let out = star_translate(
            &parse_formula("(ex x (in x x))").unwrap(),
            StarContext::default(),
        )
        .unwrap();
        assert_eq!(out.formula.to_string(), "(exC X (and (code X) (vin X X)))");
    }

    #[test]
    fn sigma_two_sample() {
        let f = parse_formula("(ex x (all y (exin z x (not (= z y)))))").unwrap();
        let c = StarContext {
            expansion: Expansion::Absorb,
        };
        assert_eq!(
            classify(&star_translate(&f, c).unwrap().formula).to_string(),
            "Σ¹_2"
        );
    }

    #[test]
    fn soundness_on_small_sentences() {
        let m = code_family_model(3);
        let u = SOModel::new(
            crate::hfset::hf_enumerate_tc_bounded(3, &Default::default()).unwrap(),
            ClassFamily::Full,
        )
        .unwrap();
        for s in [
            "(ex x (all y (not (in y x))))",
            "(all x (all y (implies (all z (and (implies (in z x) (in z y)) (implies (in z y) (in z x)))) (= x y))))",
            "(ex x (ex y (and (in x y) (exin z y (not (= z x))))))",
        ]
        .iter()
        .filter_map(|s| parse_formula(s).ok())
        {
            let star = star_translate(&s, StarContext::default()).unwrap();
            assert_eq!(eval(&u, &s, &Valuation::new()).unwrap(), eval(&m, &star.formula, &Valuation::new()).unwrap(), "{s}");
        }
    }

    /// Class quantifiers over every relation on three points.
    fn relation_model() -> SOModel {
        let points: Vec<HFSet> = (0..3).map(hf_unack_u64).collect();
        let pairs: Vec<HFSet> = points
            .iter()
            .flat_map(|a| points.iter().map(move |b| crate::hfset::kpair(a, b)))
            .collect();
        let family = (0u32..1 << pairs.len())
            .map(|mask| {
                ClassVal::new(
                    (0..pairs.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| pairs[i].clone()),
                )
            })
            .collect();
        SOModel::structure(points, ClassFamily::Explicit(family)).unwrap()
    }

    #[test]
    fn witness_and_certificate_agree() {
        let m = relation_model();
        let points = m.universe().to_vec();
        let codes: Vec<ClassVal> = enumerate_codes(3)
            .iter()
            .map(|c| code_class(c, &points))
            .collect();
        let (a, b) = (ClassTerm::sym("A"), ClassTerm::sym("B"));
        let taken: BTreeSet<Var> = ["A".to_string(), "B".to_string()].into();
        for ca in &codes {
            for cb in &codes {
                let v = Valuation::new()
                    .class("A", ca.clone())
                    .class("B", cb.clone());
                for (prim, which) in [
                    (Formula::Iso(a.clone(), b.clone()), 0),
                    (Formula::Vin(a.clone(), b.clone()), 1),
                ] {
                    let want = eval(&m, &prim, &v).unwrap();
                    for e in [Expansion::Witness, Expansion::Certificate] {
                        for pol in [Polarity::Positive, Polarity::Negative] {
                            let f = if which == 0 {
                                expand_iso(&a, &b, e, pol, taken.clone())
                            } else {
                                expand_vin(&a, &b, e, pol, taken.clone())
                            };
                            let got = eval(&m, &f, &v).unwrap();
                            assert_eq!(
                                got,
                                want == (pol == Polarity::Positive),
                                "{prim} {e:?} {pol:?}"
                            );
                        }
                    }
                }
            }
        }
    }
}
