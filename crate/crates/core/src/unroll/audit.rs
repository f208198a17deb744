//! Brute-force checks of the unrolled structure: set-theoretic axioms and
//! agreement of the translations with direct evaluation.

use std::collections::{HashMap, HashSet};
use std::fmt;

use super::{unroll, UnrollError, UnrolledStructure};
use crate::etr::{etr_solve, RecursionInstance, WfRelation};
use crate::hfset::{hf_make, hf_ordinal, HFSet};
use crate::logic::formula::build;
use crate::logic::{eval, ClassFamily, Formula, SOModel, Valuation, Var};
use crate::memcode::{collapse, MemCode};
use crate::translate::{code_class, etr_star_translate, star_translate, StarContext};

/// Largest quantifier depth [`audit_translation`] accepts.
pub const MAX_AUDIT_DEPTH: usize = 3;

/// A Σ₀ recursion of length `length` along the ordinals, run inside the
/// unrolling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct S0TrInstance {
    /// `φ(x, [i,] Y)`, Σ₀.
    pub step: Formula,
    pub length: usize,
    pub index: Option<Var>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Axiom {
    Ext,
    Pair,
    Union,
    Found,
    /// Separation by one formula; `x` is separated, other free variables
    /// range over the structure.
    Sep0(Formula),
    /// Separation by every Σ₀ formula up to the given size over `x`, `p`, `z`.
    /// Passes outright when every subset of every element is present;
    /// otherwise searches those formulas for one separating a missing subset.
    Sep0Upto(usize),
    S0Tr(S0TrInstance),
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::Ext => f.write_str("EXT"),
            Axiom::Pair => f.write_str("PAIR"),
            Axiom::Union => f.write_str("UNION"),
            Axiom::Found => f.write_str("FOUND"),
            Axiom::Sep0(phi) => write!(f, "SEP0 {phi}"),
            Axiom::Sep0Upto(n) => write!(f, "SEP0 size<={n}"),
            Axiom::S0Tr(i) => write!(f, "S0TR {} length {}", i.step, i.length),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomStatus {
    Pass,
    /// Every instance whose witness fits the budget holds; `skipped` did not fit.
    PassWithinBudget {
        skipped: usize,
    },
    Fail {
        counterexamples: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: String,
    pub status: AxiomStatus,
    pub checked: usize,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        !matches!(self.status, AxiomStatus::Fail { .. })
    }

    fn new(axiom: &Axiom, checked: usize, skipped: usize, fails: Vec<String>) -> Self {
        let status = if !fails.is_empty() {
            AxiomStatus::Fail {
                counterexamples: fails,
            }
        } else if skipped > 0 {
            AxiomStatus::PassWithinBudget { skipped }
        } else {
            AxiomStatus::Pass
        };
        AxiomReport {
            axiom: axiom.to_string(),
            status,
            checked,
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            AxiomStatus::Pass => write!(f, "{}: pass ({} checked)", self.axiom, self.checked),
            AxiomStatus::PassWithinBudget { skipped } => {
                write!(
                    f,
                    "{}: pass within budget ({} checked, {} over budget)",
                    self.axiom, self.checked, skipped
                )
            }
            AxiomStatus::Fail { counterexamples } => {
                write!(f, "{}: FAIL ({} checked)", self.axiom, self.checked)?;
                for c in counterexamples.iter().take(10) {
                    write!(f, "\n  {c}")?;
                }
                Ok(())
            }
        }
    }
}

const MAX_COUNTEREXAMPLES: usize = 20;

fn fail(s: String, fails: &mut Vec<String>) {
    if fails.len() < MAX_COUNTEREXAMPLES {
        fails.push(s);
    }
}

fn lit(x: &HFSet) -> String {
    x.to_ack_literal()
}

pub fn audit_axiom(u: &UnrolledStructure, axiom: &Axiom) -> Result<AxiomReport, UnrollError> {
    let els = &u.elements;
    let fits = |x: &HFSet| x.tc_size() <= u.budget;
    let (mut checked, mut skipped, mut fails) = (0usize, 0usize, Vec::new());
    match axiom {
        Axiom::Ext => {
            for (i, a) in els.iter().enumerate() {
                for b in &els[i + 1..] {
                    checked += 1;
                    if !els.iter().any(|z| a.contains(z) != b.contains(z)) {
                        fail(
                            format!("{} and {} have the same elements", lit(a), lit(b)),
                            &mut fails,
                        );
                    }
                }
            }
        }
        Axiom::Found => {
            for a in els.iter().filter(|a| !a.is_empty()) {
                checked += 1;
                let minimal = a
                    .elements()
                    .iter()
                    .any(|y| u.contains(y) && !y.elements().iter().any(|w| a.contains(w)));
                if !minimal {
                    fail(format!("{} has no ∈-minimal element", lit(a)), &mut fails);
                }
            }
        }
        Axiom::Pair => {
            for a in els {
                for b in els {
                    let p = hf_make([a.clone(), b.clone()]);
                    if !fits(&p) {
                        skipped += 1;
                        continue;
                    }
                    checked += 1;
                    if !u.contains(&p) {
                        fail(format!("{{{}, {}}} missing", lit(a), lit(b)), &mut fails);
                    }
                }
            }
        }
        Axiom::Union => {
            for a in els {
                let s = a.union();
                if !fits(&s) {
                    skipped += 1;
                    continue;
                }
                checked += 1;
                if !u.contains(&s) {
                    fail(format!("⋃{} missing", lit(a)), &mut fails);
                }
            }
        }
        Axiom::Sep0(phi) => {
            if !phi.is_sigma0() || !phi.is_first_order() {
                return Err(UnrollError::Seed(format!("not a Σ₀ formula: {phi}")));
            }
            let m = SOModel::structure(els.clone(), ClassFamily::Explicit(Vec::new()))?;
            let params: Vec<Var> = phi.free_vars().into_iter().filter(|v| v != "x").collect();
            for vals in assignments(els, params.len()) {
                let mut v = Valuation::new();
                for (p, val) in params.iter().zip(&vals) {
                    v = v.set(p.clone(), val.clone());
                }
                for a in els {
                    let mut sep = Vec::new();
                    for e in a.elements() {
                        if eval(&m, phi, &v.clone().set("x", e.clone()))? {
                            sep.push(e.clone());
                        }
                    }
                    checked += 1;
                    let s = hf_make(sep);
                    if !u.contains(&s) {
                        fail(
                            format!("{{x ∈ {} : φ}} = {} missing", lit(a), lit(&s)),
                            &mut fails,
                        );
                    }
                }
            }
        }
        Axiom::Sep0Upto(max_size) => {
            let sem = Semantics::new(els);
            let present = sem.present_subsets();
            checked = present.iter().map(|p| p.len()).sum();
            let missing: Vec<(usize, u64)> = sem
                .children
                .iter()
                .enumerate()
                .flat_map(|(a, ch)| (0u64..1 << ch.len()).map(move |m| (a, m)))
                .filter(|(a, m)| !present[*a].contains(m))
                .collect();
            // with every subset of every element present no formula can fail
            if !missing.is_empty() {
                let hit = |t: &Table| {
                    missing
                        .iter()
                        .any(|&(a, m)| (0..sem.n * sem.n).any(|pz| sem.separated(t, a, pz) == m))
                };
                let (classes, witness) = sem.classes(*max_size, hit);
                checked = classes.len();
                if let Some((f, t)) = witness {
                    for &(a, m) in &missing {
                        if (0..sem.n * sem.n).any(|pz| sem.separated(&t, a, pz) == m) {
                            fail(
                                format!("{f}: separated subset of {} missing", lit(&els[a])),
                                &mut fails,
                            );
                        }
                    }
                }
            }
        }
        Axiom::S0Tr(inst) => {
            if !inst.step.is_sigma0() || !inst.step.is_first_order() {
                return Err(UnrollError::Seed(format!("not a Σ₀ step: {}", inst.step)));
            }
            let m = SOModel::structure(els.clone(), ClassFamily::Explicit(Vec::new()))?;
            let labels: Vec<HFSet> = (0..inst.length).map(hf_ordinal).collect();
            if let Some(l) = labels.iter().find(|l| !u.contains(l)) {
                return Err(UnrollError::Seed(format!(
                    "ordinal {} is not in the structure",
                    lit(l)
                )));
            }
            let mut ri = RecursionInstance::new(&m, inst.step.clone());
            if let Some(i) = &inst.index {
                ri = ri.with_index(i.clone());
            }
            let sol = etr_solve(&ri, &WfRelation::chain(&labels))?;
            let mut witnesses: Vec<(String, HFSet)> = sol
                .slices
                .iter()
                .map(|(r, xs)| (format!("slice {}", lit(r)), hf_make(xs.iter().cloned())))
                .collect();
            witnesses.push(("solution".into(), sol.as_set()));
            for (what, s) in witnesses {
                if !fits(&s) {
                    skipped += 1;
                    continue;
                }
                checked += 1;
                if !u.contains(&s) {
                    fail(format!("{what} {} missing", lit(&s)), &mut fails);
                }
            }
        }
    }
    Ok(AxiomReport::new(axiom, checked, skipped, fails))
}

fn assignments(els: &[HFSet], k: usize) -> Vec<Vec<HFSet>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                els.iter()
                    .map(move |e| [v.clone(), vec![e.clone()]].concat())
            })
            .collect();
    }
    out
}

/// Truth tables of Σ₀ formulas over the variables `x, p, z`, indexed by
/// `x + n·p + n²·z`.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Table(Box<[u64]>);

type Witnessed = (Formula, Table);

impl Table {
    fn new(bits: usize) -> Self {
        Table(vec![0; bits.div_ceil(64)].into_boxed_slice())
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn zip(&self, o: &Table, f: impl Fn(u64, u64) -> u64) -> Table {
        Table(
            self.0
                .iter()
                .zip(o.0.iter())
                .map(|(a, b)| f(*a, *b))
                .collect(),
        )
    }
}

const VARS: [&str; 3] = ["x", "p", "z"];

struct Semantics<'a> {
    els: &'a [HFSet],
    n: usize,
    /// indices of the elements of each element
    children: Vec<Vec<usize>>,
}

impl<'a> Semantics<'a> {
    fn new(els: &'a [HFSet]) -> Self {
        let index: HashMap<&HFSet, usize> = els.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let children = els
            .iter()
            .map(|e| {
                e.elements()
                    .iter()
                    .filter_map(|c| index.get(c).copied())
                    .collect()
            })
            .collect();
        Semantics {
            els,
            n: els.len(),
            children,
        }
    }

    fn bits(&self) -> usize {
        self.n.pow(3)
    }

    fn decode(&self, i: usize) -> [usize; 3] {
        [i % self.n, i / self.n % self.n, i / (self.n * self.n)]
    }

    fn encode(&self, s: [usize; 3]) -> usize {
        s[0] + self.n * s[1] + self.n * self.n * s[2]
    }

    fn table(&self, f: impl Fn([usize; 3]) -> bool) -> Table {
        let mut t = Table::new(self.bits());
        for i in 0..self.bits() {
            if f(self.decode(i)) {
                t.set(i);
            }
        }
        t
    }

    fn quantified(&self, t: &Table, v: usize, w: usize, exists: bool) -> Table {
        self.table(|s| {
            let mut hits = self.children[s[w]].iter().map(|&e| {
                let mut s2 = s;
                s2[v] = e;
                t.get(self.encode(s2))
            });
            if exists {
                hits.any(|b| b)
            } else {
                hits.all(|b| b)
            }
        })
    }

    fn atoms(&self) -> Vec<(Formula, Table)> {
        let mut out = vec![
            (build::truth(), self.table(|_| true)),
            (build::falsity(), self.table(|_| false)),
        ];
        for a in 0..3 {
            for b in 0..3 {
                out.push((build::eq(VARS[a], VARS[b]), self.table(|s| s[a] == s[b])));
                out.push((
                    build::mem(VARS[a], VARS[b]),
                    self.table(|s| self.els[s[b]].contains(&self.els[s[a]])),
                ));
            }
        }
        out
    }

    /// One formula of least size for every truth table reachable by Σ₀
    /// formulas of at most `max_size` nodes.
    fn classes(
        &self,
        max_size: usize,
        hit: impl Fn(&Table) -> bool,
    ) -> (Vec<Witnessed>, Option<Witnessed>) {
        let mut seen: HashSet<Table> = HashSet::new();
        let mut first: Vec<Vec<(Formula, Table)>> = vec![Vec::new()];
        // conjunctions / disjunctions with children of total size ≤ s
        let mut conj: Vec<HashMap<Table, Vec<Formula>>> = vec![HashMap::new()];
        let mut disj: Vec<HashMap<Table, Vec<Formula>>> = vec![HashMap::new()];
        for s in 1..=max_size {
            let mut new: Vec<(Formula, Table)> = Vec::new();
            let mut add = |f: Formula, t: Table, new: &mut Vec<(Formula, Table)>| {
                if seen.insert(t.clone()) {
                    new.push((f, t));
                }
            };
            if s == 1 {
                for (f, t) in self.atoms() {
                    add(f, t, &mut new);
                }
            } else {
                for (f, t) in &first[s - 1] {
                    let neg = Table(t.0.iter().map(|w| !w).collect());
                    add(build::not(f.clone()), self.mask(neg), &mut new);
                    for (v, xv) in VARS.iter().enumerate() {
                        for (w, xw) in VARS.iter().enumerate().filter(|&(w, _)| w != v) {
                            add(
                                build::exin(xv, xw, f.clone()),
                                self.quantified(t, v, w, true),
                                &mut new,
                            );
                            add(
                                build::allin(xv, xw, f.clone()),
                                self.quantified(t, v, w, false),
                                &mut new,
                            );
                        }
                    }
                }
                for (t, fs) in &conj[s - 1] {
                    add(Formula::And(fs.clone()), t.clone(), &mut new);
                }
                for (t, fs) in &disj[s - 1] {
                    add(Formula::Or(fs.clone()), t.clone(), &mut new);
                }
                for i in 1..s - 1 {
                    for (fa, ta) in &first[i] {
                        for (fb, tb) in &first[s - 1 - i] {
                            let t = self.mask(ta.zip(tb, |a, b| !a | b));
                            add(build::implies(fa.clone(), fb.clone()), t, &mut new);
                        }
                    }
                }
            }
            if let Some(w) = new.iter().find(|(_, t)| hit(t)) {
                let w = w.clone();
                first.push(new);
                return (first.into_iter().flatten().collect(), Some(w));
            }
            first.push(new);
            let grow = |prev: &Vec<HashMap<Table, Vec<Formula>>>, op: fn(u64, u64) -> u64| {
                let mut next = prev[s - 1].clone();
                for i in 1..=s {
                    for (f, t) in &first[i] {
                        next.entry(t.clone()).or_insert_with(|| vec![f.clone()]);
                        for (t2, fs) in &prev[s - i] {
                            let t3 = t.zip(t2, op);
                            next.entry(t3)
                                .or_insert_with(|| [fs.clone(), vec![f.clone()]].concat());
                        }
                    }
                }
                next
            };
            let c = grow(&conj, |a, b| a & b);
            let d = grow(&disj, |a, b| a | b);
            conj.push(c);
            disj.push(d);
        }
        (first.into_iter().flatten().collect(), None)
    }

    /// Mask over the children of element `a` of `{x ∈ a : t(x, p, z)}`,
    /// with `pz = p + n·z`.
    fn separated(&self, t: &Table, a: usize, pz: usize) -> u64 {
        let mut mask = 0u64;
        for (k, &c) in self.children[a].iter().enumerate() {
            if t.get(c + self.n * pz) {
                mask |= 1 << k;
            }
        }
        mask
    }

    fn mask(&self, mut t: Table) -> Table {
        let bits = self.bits();
        if !bits.is_multiple_of(64) {
            let last = t.0.len() - 1;
            t.0[last] &= (1u64 << (bits % 64)) - 1;
        }
        t
    }

    /// For each element, the masks over its children of the subsets present.
    fn present_subsets(&self) -> Vec<HashSet<u64>> {
        let all: HashSet<&HFSet> = self.els.iter().collect();
        self.children
            .iter()
            .map(|ch| {
                let mut ok = HashSet::new();
                for mask in 0u64..1 << ch.len() {
                    let y = hf_make(
                        (0..ch.len())
                            .filter(|k| mask >> k & 1 == 1)
                            .map(|k| self.els[ch[k]].clone()),
                    );
                    if all.contains(&y) {
                        ok.insert(mask);
                    }
                }
                ok
            })
            .collect()
    }
}

/// Number of distinct Σ₀ truth tables over `x, p, z` reachable within
/// `max_size` on the structure.
pub fn sep0_formula_classes(u: &UnrolledStructure, max_size: usize) -> usize {
    Semantics::new(&u.elements)
        .classes(max_size, |_| false)
        .0
        .len()
}

/// Both sides of a translation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationReport {
    pub formula: String,
    /// The unrolling satisfies `φ`.
    pub unrolled: bool,
    /// The budgeted code model satisfies `φ*`.
    pub star: bool,
    /// `φ⋆` over the parameter code, for Σ₀ `φ`.
    pub etr_star: Option<bool>,
}

impl TranslationReport {
    pub fn agree(&self) -> bool {
        self.unrolled == self.star && self.etr_star.is_none_or(|e| e == self.unrolled)
    }
}

impl fmt::Display for TranslationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} unrolled={} star={}",
            if self.agree() { "AGREE" } else { "DISAGREE" },
            self.unrolled,
            self.star
        )?;
        if let Some(e) = self.etr_star {
            write!(f, " etrstar={e}")?;
        }
        write!(f, " {}", self.formula)
    }
}

/// Evaluates `φ` in the unrolling of `m` and `φ*` with class quantifiers
/// over one code per element of the unrolling. Free variables of `φ` must
/// be `a1 … an`, bound to the collapses of `params` (and to the codes
/// themselves on the starred side).
pub fn audit_translation(
    m: &SOModel,
    budget: usize,
    phi: &Formula,
    params: &[MemCode],
) -> Result<TranslationReport, UnrollError> {
    let depth = phi.quantifier_depth();
    if depth > MAX_AUDIT_DEPTH {
        return Err(UnrollError::DepthLimit {
            depth,
            limit: MAX_AUDIT_DEPTH,
        });
    }
    let names: Vec<Var> = (1..=params.len()).map(|i| format!("a{i}")).collect();
    if let Some(x) = phi.free_vars().into_iter().find(|x| !names.contains(x)) {
        return Err(crate::translate::TranslateError::UnknownParameter(x, params.len()).into());
    }
    if let Some(p) = params.iter().find(|p| p.len() > budget) {
        return Err(UnrollError::Seed(format!(
            "parameter with {} nodes exceeds budget {budget}",
            p.len()
        )));
    }
    let u = unroll(m, budget)?;
    let values: Vec<HFSet> = params.iter().map(collapse).collect();
    if let Some(x) = values.iter().find(|x| !u.contains(x)) {
        return Err(UnrollError::Seed(format!(
            "parameter {} is not admitted",
            lit(x)
        )));
    }
    let flat = SOModel::new(u.elements.clone(), ClassFamily::Explicit(Vec::new()))?;
    let mut v = Valuation::new();
    for (a, x) in names.iter().zip(&values) {
        v = v.set(a.clone(), x.clone());
    }
    let unrolled = eval(&flat, phi, &v)?;

    let codes = code_model(&u);
    let points = codes.universe().to_vec();
    let out = star_translate(phi, StarContext::default())?;
    let mut cv = Valuation::new();
    for (a, p) in names.iter().zip(params) {
        if let Some(c) = out.classes.get(a) {
            cv = cv.class(c.clone(), code_class(p, &points));
        }
    }
    let star = eval(&codes, &out.formula, &cv)?;

    let etr_star = if phi.is_sigma0() {
        Some(etr_star_translate(phi, params)?.eval()?)
    } else {
        None
    };
    Ok(TranslationReport {
        formula: phi.to_string(),
        unrolled,
        star,
        etr_star,
    })
}

/// Points `0 … budget-1`; one class per element of `u`, its canonical code.
pub fn code_model(u: &UnrolledStructure) -> SOModel {
    let points: Vec<HFSet> = (0..u.budget as u64)
        .map(crate::hfset::hf_unack_u64)
        .collect();
    let family = u
        .elements
        .iter()
        .map(|x| code_class(&crate::memcode::canonical_code(x), &points))
        .collect();
    SOModel::structure(points, ClassFamily::Explicit(family)).expect("codes on the points")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;
    use crate::memcode::canonical_code;

    fn v2(budget: usize) -> UnrolledStructure {
        unroll(&SOModel::v_stage(2).unwrap(), budget).unwrap()
    }

    #[test]
    fn axioms_on_small_unrollings() {
        for b in [3, 4] {
            let u = v2(b);
            for ax in [
                Axiom::Ext,
                Axiom::Found,
                Axiom::Pair,
                Axiom::Union,
                Axiom::Sep0Upto(7),
            ] {
                let r = audit_axiom(&u, &ax).unwrap();
                assert!(r.passed(), "{r}");
            }
        }
        let r = audit_axiom(&v2(3), &Axiom::Union).unwrap();
        assert_eq!(r.status, AxiomStatus::Pass);
        assert!(matches!(
            audit_axiom(&v2(3), &Axiom::Pair).unwrap().status,
            AxiomStatus::PassWithinBudget { .. }
        ));
    }

    #[test]
    fn missing_sets_fail() {
        let mut u = v2(3);
        u.elements.retain(|x| *x != crate::hfset::hf_unack_u64(2));
        assert!(!audit_axiom(&u, &Axiom::Pair).unwrap().passed());
        let sep = Axiom::Sep0(parse_formula("(not (= x p))").unwrap());
        assert!(!audit_axiom(&u, &sep).unwrap().passed());
        let r = audit_axiom(&u, &Axiom::Sep0Upto(3)).unwrap();
        assert!(!r.passed(), "{r}");
    }

    #[test]
    fn semantic_classes_grow() {
        let u = v2(3);
        let (a, b) = (sep0_formula_classes(&u, 1), sep0_formula_classes(&u, 3));
        assert!(a > 2 && b > a);
    }

    #[test]
    fn s0tr_ordinal_successors() {
        let u = v2(4);
        let inst = S0TrInstance {
            step: parse_formula("(exin r i (= x r))").unwrap(),
            length: 2,
            index: Some("i".into()),
        };
        let r = audit_axiom(&u, &Axiom::S0Tr(inst)).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn translation_examples() {
        let m = SOModel::v_stage(2).unwrap();
        let r = audit_translation(
            &m,
            3,
            &parse_formula("(ex x (all y (not (in y x))))").unwrap(),
            &[],
        )
        .unwrap();
        assert!(r.agree() && r.unrolled);
        let (x, y) = (crate::hfset::hf_unack_u64(0), crate::hfset::hf_unack_u64(1));
        let pair = crate::hfset::kpair(&x, &y);
        let phi = parse_formula(
            "(and (exin s a3 (and (in a1 s) (allin t s (= t a1)))) \
                  (exin d a3 (and (in a1 d) (in a2 d) (allin t d (or (= t a1) (= t a2))))))",
        )
        .unwrap();
        let codes = [
            canonical_code(&x),
            canonical_code(&y),
            canonical_code(&pair),
        ];
        let r = audit_translation(&m, 5, &phi, &codes).unwrap();
        assert!(r.agree() && r.unrolled && r.etr_star == Some(true), "{r}");
        let deep = parse_formula("(ex a (ex b (ex c (ex d (= a d)))))").unwrap();
        assert!(matches!(
            audit_translation(&m, 3, &deep, &[]),
            Err(UnrollError::DepthLimit { .. })
        ));
    }
}
