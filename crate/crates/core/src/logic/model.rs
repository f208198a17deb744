//! Finite second-order structures, class values and valuations.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::caps::Caps;
use crate::hfset::{hf_v_stage, kpair, kpair_parts, HFSet, HfError};
use crate::memcode::{canonical_label, validate, MemCode, RawPointedGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("universe is not transitive: {0} has an element outside it")]
    NotTransitive(String),
    #[error("universe lists {0} twice")]
    Duplicate(String),
    #[error("class member {0} is neither a universe element nor a pair of them")]
    ClassOutsideUniverse(String),
    #[error(transparent)]
    Hf(#[from] HfError),
}

struct ClassData {
    members: Vec<HFSet>,
    index: HashSet<HFSet>,
    pairs: OnceLock<Vec<(HFSet, HFSet)>>,
    code: OnceLock<Option<MemCode>>,
    below: Mutex<HashMap<HFSet, ClassVal>>,
}

/// A class: a finite set of universe elements and/or Kuratowski pairs of them.
/// Cheap to clone; equality is extensional.
#[derive(Clone)]
pub struct ClassVal(Arc<ClassData>);

impl ClassVal {
    pub fn new(members: impl IntoIterator<Item = HFSet>) -> Self {
        let mut members: Vec<HFSet> = members.into_iter().collect();
        members.sort();
        members.dedup();
        let index = members.iter().cloned().collect();
        ClassVal(Arc::new(ClassData {
            members,
            index,
            pairs: OnceLock::new(),
            code: OnceLock::new(),
            below: Mutex::new(HashMap::new()),
        }))
    }

    pub fn empty() -> Self {
        ClassVal::new([])
    }

    /// The class of Kuratowski pairs.
    pub fn of_pairs<'a>(pairs: impl IntoIterator<Item = (&'a HFSet, &'a HFSet)>) -> Self {
        ClassVal::new(pairs.into_iter().map(|(a, b)| kpair(a, b)))
    }

    /// Members in Ackermann order.
    pub fn members(&self) -> &[HFSet] {
        &self.0.members
    }

    pub fn len(&self) -> usize {
        self.0.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.members.is_empty()
    }

    pub fn contains(&self, x: &HFSet) -> bool {
        self.0.index.contains(x)
    }

    pub fn contains_pair(&self, a: &HFSet, b: &HFSet) -> bool {
        self.contains(&kpair(a, b))
    }

    /// Members that are Kuratowski pairs, decoded.
    pub fn pairs(&self) -> &[(HFSet, HFSet)] {
        self.0
            .pairs
            .get_or_init(|| self.0.members.iter().filter_map(kpair_parts).collect())
    }

    /// The membership code this class encodes, if any: loops `(a, a)` mark
    /// the nodes, other pairs `(a, b)` are edges `a ◁ b`, the top is the
    /// unique sink. Labels are the Ackermann indices of the node sets.
    pub fn as_code(&self) -> Option<&MemCode> {
        self.0.code.get_or_init(|| decode_code(self)).as_ref()
    }

    /// `T↓x` at class level: the members `(u, v)` with `u, v` below `x`.
    /// Empty unless `(x, x)` is a member.
    pub fn below(&self, x: &HFSet) -> ClassVal {
        if let Some(c) = self.0.below.lock().expect("below cache").get(x) {
            return c.clone();
        }
        let c = self.compute_below(x);
        self.0
            .below
            .lock()
            .expect("below cache")
            .insert(x.clone(), c.clone());
        c
    }

    fn compute_below(&self, x: &HFSet) -> ClassVal {
        if !self.contains_pair(x, x) {
            return ClassVal::empty();
        }
        let mut preds: HashMap<&HFSet, Vec<&HFSet>> = HashMap::new();
        for (a, b) in self.pairs() {
            if a != b {
                preds.entry(b).or_default().push(a);
            }
        }
        let mut seen: HashSet<&HFSet> = HashSet::from([x]);
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            for p in preds.get(y).into_iter().flatten() {
                if seen.insert(p) {
                    stack.push(p);
                }
            }
        }
        ClassVal::new(
            self.members()
                .iter()
                .filter_map(|m| kpair_parts(m).map(|(a, b)| (m, a, b)))
                .filter(|(_, a, b)| seen.contains(a) && seen.contains(b))
                .map(|(m, _, _)| m.clone()),
        )
    }
}

fn decode_code(c: &ClassVal) -> Option<MemCode> {
    if c.is_empty() || c.pairs().len() != c.len() {
        return None;
    }
    let nodes: HashSet<&HFSet> = c
        .pairs()
        .iter()
        .filter(|(a, b)| a == b)
        .map(|(a, _)| a)
        .collect();
    let mut edges = Vec::new();
    let mut has_out: HashSet<&HFSet> = HashSet::new();
    for (a, b) in c.pairs() {
        if a != b {
            if !nodes.contains(a) || !nodes.contains(b) {
                return None;
            }
            edges.push((canonical_label(a), canonical_label(b)));
            has_out.insert(a);
        }
    }
    let sinks: Vec<&&HFSet> = nodes.iter().filter(|n| !has_out.contains(**n)).collect();
    if sinks.len() != 1 {
        return None;
    }
    let raw = RawPointedGraph {
        nodes: nodes.iter().map(|n| canonical_label(n)).collect(),
        edges,
        top: canonical_label(sinks[0]),
    };
    validate(&raw).ok()
}

/// The class encoding of a code whose labels are Ackermann indices (as made
/// by [`canonical_label`]); `node` maps each label to its universe element.
pub fn code_to_class(code: &MemCode, node: impl Fn(&str) -> HFSet) -> ClassVal {
    let mut members: Vec<HFSet> = code
        .nodes()
        .iter()
        .map(|n| {
            let v = node(n);
            kpair(&v, &v)
        })
        .collect();
    members.extend(code.edges().iter().map(|(a, b)| kpair(&node(a), &node(b))));
    ClassVal::new(members)
}

impl PartialEq for ClassVal {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.members == other.0.members
    }
}

impl Eq for ClassVal {}

impl Hash for ClassVal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.members.hash(state);
    }
}

impl PartialOrd for ClassVal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ClassVal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.members.cmp(&other.0.members)
    }
}

impl fmt::Debug for ClassVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members()).finish()
    }
}

impl fmt::Display for ClassVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, m) in self.members().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", m.to_ack_literal())?;
        }
        write!(f, "]")
    }
}

/// The range of class quantifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassFamily {
    /// Every subset of the universe.
    Full,
    Explicit(Vec<ClassVal>),
}

/// A universe of sets with a class family, named classes and an optional
/// bound `κ'` (read by `inH` / `subsetOfH` as `tcSize ≤ κ'`).
#[derive(Debug, Clone)]
pub struct SOModel {
    universe: Vec<HFSet>,
    index: HashSet<HFSet>,
    family: ClassFamily,
    named: BTreeMap<String, ClassVal>,
    kappa: Option<usize>,
    caps: Caps,
    full: Arc<OnceLock<Vec<ClassVal>>>,
}

impl SOModel {
    /// Checks transitivity and that explicit classes live on the universe.
    pub fn new(universe: Vec<HFSet>, family: ClassFamily) -> Result<Self, ModelError> {
        let m = SOModel::structure(universe, family)?;
        for x in &m.universe {
            if x.elements().iter().any(|y| !m.index.contains(y)) {
                return Err(ModelError::NotTransitive(x.to_ack_literal()));
            }
        }
        Ok(m)
    }

    /// Like [`SOModel::new`] without the transitivity check, for structures
    /// such as `(pen E, ◁)` read through their collapse.
    pub fn structure(mut universe: Vec<HFSet>, family: ClassFamily) -> Result<Self, ModelError> {
        universe.sort();
        if let Some(w) = universe.windows(2).find(|w| w[0] == w[1]) {
            return Err(ModelError::Duplicate(w[0].to_ack_literal()));
        }
        let index: HashSet<HFSet> = universe.iter().cloned().collect();
        if let ClassFamily::Explicit(cs) = &family {
            for c in cs {
                check_class(&index, c)?;
            }
        }
        Ok(SOModel {
            universe,
            index,
            family,
            named: BTreeMap::new(),
            kappa: None,
            caps: Caps::default(),
            full: Arc::new(OnceLock::new()),
        })
    }

    /// `(V_n, FULL)`.
    pub fn v_stage(n: usize) -> Result<Self, ModelError> {
        let v = hf_v_stage(n, &Caps::default())?;
        SOModel::new(v.elements().to_vec(), ClassFamily::Full)
    }

    pub fn with_class(mut self, name: impl Into<String>, c: ClassVal) -> Result<Self, ModelError> {
        check_class(&self.index, &c)?;
        self.named.insert(name.into(), c);
        Ok(self)
    }

    pub fn with_kappa(mut self, k: usize) -> Self {
        self.kappa = Some(k);
        self
    }

    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self
    }

    pub fn universe(&self) -> &[HFSet] {
        &self.universe
    }

    pub fn contains(&self, x: &HFSet) -> bool {
        self.index.contains(x)
    }

    pub fn family(&self) -> &ClassFamily {
        &self.family
    }

    pub fn named(&self) -> &BTreeMap<String, ClassVal> {
        &self.named
    }

    pub fn kappa(&self) -> Option<usize> {
        self.kappa
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    /// The range of class quantifiers; FULL is materialized on first use
    /// and refused above the configured universe size.
    pub fn classes(&self) -> Result<&[ClassVal], HfError> {
        match &self.family {
            ClassFamily::Explicit(cs) => Ok(cs),
            ClassFamily::Full => {
                let n = self.universe.len();
                if n > self.caps.max_full_universe {
                    return Err(HfError::CapExceeded {
                        what: "universe size under FULL class quantifiers",
                        requested: n,
                        cap: self.caps.max_full_universe,
                    });
                }
                Ok(self.full.get_or_init(|| {
                    (0u64..1 << n)
                        .map(|mask| {
                            ClassVal::new(
                                (0..n)
                                    .filter(|i| mask >> i & 1 == 1)
                                    .map(|i| self.universe[i].clone()),
                            )
                        })
                        .collect()
                }))
            }
        }
    }
}

fn check_class(index: &HashSet<HFSet>, c: &ClassVal) -> Result<(), ModelError> {
    for m in c.members() {
        let ok = index.contains(m)
            || kpair_parts(m).is_some_and(|(a, b)| index.contains(&a) && index.contains(&b));
        if !ok {
            return Err(ModelError::ClassOutsideUniverse(m.to_ack_literal()));
        }
    }
    Ok(())
}

/// Assignments to set and class variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Valuation {
    pub sets: BTreeMap<String, HFSet>,
    pub classes: BTreeMap<String, ClassVal>,
}

impl Valuation {
    pub fn new() -> Self {
        Valuation::default()
    }

    pub fn set(mut self, x: impl Into<String>, v: HFSet) -> Self {
        self.sets.insert(x.into(), v);
        self
    }

    pub fn class(mut self, x: impl Into<String>, c: ClassVal) -> Self {
        self.classes.insert(x.into(), c);
        self
    }
}
