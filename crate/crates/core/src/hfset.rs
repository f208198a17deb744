//! Hereditarily finite sets.
//!
//! Every [`HFSet`] is interned: two values are equal exactly when they have
//! the same elements, and equality and hashing are O(1).

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::caps::Caps;

/// Largest bit position an Ackermann index may use (2 MiB of digits).
pub const ACK_BIT_LIMIT: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HfError {
    #[error("Ackermann index too large: an element index exceeds 2^{limit}")]
    AckTooLarge { limit: u64 },
    #[error("cap exceeded: {what} {requested} > {cap}")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },
    #[error("literal syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

struct Node {
    id: u64,
    elems: Box<[HFSet]>,
    rank: usize,
    tc_size: OnceLock<usize>,
    ack: OnceLock<Result<BigUint, HfError>>,
}

/// A canonical hereditarily finite set. Cheap to clone.
#[derive(Clone)]
pub struct HFSet(Arc<Node>);

type Store = Mutex<HashMap<Box<[u64]>, HFSet>>;

fn store() -> &'static Store {
    static STORE: OnceLock<Store> = OnceLock::new();
    STORE.get_or_init(|| Mutex::new(HashMap::new()))
}

static NEXT_ID: AtomicU64 = AtomicU64::new(0);

impl HFSet {
    /// The empty set.
    pub fn empty() -> HFSet {
        hf_make(Vec::new())
    }

    /// Elements in ascending Ackermann order.
    pub fn elements(&self) -> &[HFSet] {
        &self.0.elems
    }

    pub fn len(&self) -> usize {
        self.0.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.elems.is_empty()
    }

    /// Process-local identity of the interned value.
    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn contains(&self, y: &HFSet) -> bool {
        self.0.elems.binary_search_by(|e| ack_cmp(e, y)).is_ok()
    }

    pub fn is_subset(&self, other: &HFSet) -> bool {
        self.elements().iter().all(|e| other.contains(e))
    }

    pub fn rank(&self) -> usize {
        self.0.rank
    }

    /// `|tc({x})|`, counting the set itself.
    pub fn tc_size(&self) -> usize {
        *self
            .0
            .tc_size
            .get_or_init(|| self.transitive_closure().len() + 1)
    }

    /// `tc(x)`, in ascending Ackermann order.
    pub fn transitive_closure(&self) -> Vec<HFSet> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut stack: Vec<HFSet> = self.elements().to_vec();
        while let Some(y) = stack.pop() {
            if seen.insert(y.id()) {
                stack.extend(y.elements().iter().cloned());
                out.push(y);
            }
        }
        out.sort();
        out
    }

    /// Ackermann index, `Σ_{y∈x} 2^ack(y)`.
    pub fn ack(&self) -> Result<&BigUint, HfError> {
        self.0
            .ack
            .get_or_init(|| {
                let mut n = BigUint::zero();
                for e in self.elements() {
                    let bit = e.ack()?;
                    let bit = bit.to_u64().filter(|b| *b < ACK_BIT_LIMIT).ok_or(
                        HfError::AckTooLarge {
                            limit: ACK_BIT_LIMIT.trailing_zeros() as u64,
                        },
                    )?;
                    n.set_bit(bit, true);
                }
                Ok(n)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `{x}`
    pub fn singleton(&self) -> HFSet {
        hf_make([self.clone()])
    }

    /// `x ∪ {y}`
    pub fn with(&self, y: HFSet) -> HFSet {
        let mut v = self.elements().to_vec();
        v.push(y);
        hf_make(v)
    }

    /// `⋃x`
    pub fn union(&self) -> HFSet {
        hf_make(
            self.elements()
                .iter()
                .flat_map(|e| e.elements().iter().cloned()),
        )
    }

    /// Brace literal, e.g. `{{},{{}}}`.
    pub fn to_literal(&self) -> String {
        let mut s = String::new();
        write_literal(self, &mut s);
        s
    }

    /// `#N` literal; falls back to braces when the index is too large.
    pub fn to_ack_literal(&self) -> String {
        match self.ack() {
            Ok(n) => format!("#{n}"),
            Err(_) => self.to_literal(),
        }
    }
}

fn write_literal(x: &HFSet, out: &mut String) {
    out.push('{');
    for (i, e) in x.elements().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_literal(e, out);
    }
    out.push('}');
}

/// Compares two sets by Ackermann index without computing it.
pub fn ack_cmp(a: &HFSet, b: &HFSet) -> Ordering {
    if a.id() == b.id() {
        return Ordering::Equal;
    }
    let (xs, ys) = (a.elements(), b.elements());
    for (x, y) in xs.iter().rev().zip(ys.iter().rev()) {
        match ack_cmp(x, y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    xs.len().cmp(&ys.len())
}

impl PartialEq for HFSet {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for HFSet {}

impl Hash for HFSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.id.hash(state)
    }
}

/// Ackermann order.
impl Ord for HFSet {
    fn cmp(&self, other: &Self) -> Ordering {
        ack_cmp(self, other)
    }
}

impl PartialOrd for HFSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for HFSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

impl fmt::Debug for HFSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank() <= 4 {
            write!(f, "{}", self.to_ack_literal())
        } else {
            write!(f, "{}", self.to_literal())
        }
    }
}

/// Builds the canonical set with the given elements. Duplicates are dropped.
pub fn hf_make(children: impl IntoIterator<Item = HFSet>) -> HFSet {
    let mut elems: Vec<HFSet> = children.into_iter().collect();
    elems.sort();
    elems.dedup();
    let key: Box<[u64]> = elems.iter().map(HFSet::id).collect();
    let mut map = store().lock().unwrap_or_else(|p| p.into_inner());
    if let Some(x) = map.get(&key) {
        return x.clone();
    }
    let rank = elems.iter().map(|e| e.rank() + 1).max().unwrap_or(0);
    let node = Node {
        id: NEXT_ID.fetch_add(1, AtomicOrdering::Relaxed),
        elems: elems.into_boxed_slice(),
        rank,
        tc_size: OnceLock::new(),
        ack: OnceLock::new(),
    };
    let x = HFSet(Arc::new(node));
    map.insert(key, x.clone());
    x
}

/// Ackermann index of `x`.
pub fn hf_ack(x: &HFSet) -> Result<BigUint, HfError> {
    x.ack().cloned()
}

/// Inverse of [`hf_ack`].
pub fn hf_unack(n: &BigUint) -> HFSet {
    let mut elems = Vec::new();
    for bit in 0..n.bits() {
        if n.bit(bit) {
            elems.push(hf_unack(&BigUint::from(bit)));
        }
    }
    hf_make(elems)
}

pub fn hf_unack_u64(n: u64) -> HFSet {
    hf_unack(&BigUint::from(n))
}

/// `(rank, tcSize)`
pub fn hf_measures(x: &HFSet) -> (usize, usize) {
    (x.rank(), x.tc_size())
}

/// `V_n`.
pub fn hf_v_stage(n: usize, caps: &Caps) -> Result<HFSet, HfError> {
    if n > caps.max_vstage {
        return Err(HfError::CapExceeded {
            what: "v-stage",
            requested: n,
            cap: caps.max_vstage,
        });
    }
    let mut v = HFSet::empty();
    for _ in 0..n {
        v = hf_make(powerset(v.elements()));
    }
    Ok(v)
}

/// All subsets of `elems` as sets.
pub fn powerset(elems: &[HFSet]) -> Vec<HFSet> {
    assert!(elems.len() < 32, "powerset of {} elements", elems.len());
    (0u64..1 << elems.len())
        .map(|mask| {
            hf_make(
                elems
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, e)| e.clone()),
            )
        })
        .collect()
}

/// The von Neumann ordinal `n`.
pub fn hf_ordinal(n: usize) -> HFSet {
    let mut o = HFSet::empty();
    for _ in 0..n {
        o = o.with(o.clone());
    }
    o
}

/// Kuratowski pair `{{a},{a,b}}`.
pub fn kpair(a: &HFSet, b: &HFSet) -> HFSet {
    hf_make([a.singleton(), hf_make([a.clone(), b.clone()])])
}

/// Inverse of [`kpair`].
pub fn kpair_parts(p: &HFSet) -> Option<(HFSet, HFSet)> {
    match p.elements() {
        [s] if s.len() == 1 => Some((s.elements()[0].clone(), s.elements()[0].clone())),
        [s, t] | [t, s] if s.len() == 1 && t.len() == 2 && t.contains(&s.elements()[0]) => {
            let a = s.elements()[0].clone();
            let b = t.elements().iter().find(|e| **e != a)?.clone();
            Some((a, b))
        }
        _ => None,
    }
}

/// Every `x` with `tcSize(x) ≤ k`, sorted by Ackermann index.
pub fn hf_enumerate_tc_bounded(k: usize, caps: &Caps) -> Result<Vec<HFSet>, HfError> {
    if k > caps.max_tc {
        return Err(HfError::CapExceeded {
            what: "tcSize bound",
            requested: k,
            cap: caps.max_tc,
        });
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    // x has tcSize ≤ k iff x ⊆ T for a transitive T with |T| ≤ k - 1.
    let mut transitive: HashSet<HFSet> = HashSet::new();
    let mut frontier = vec![HFSet::empty()];
    transitive.insert(HFSet::empty());
    while let Some(t) = frontier.pop() {
        if t.len() + 1 > k - 1 {
            continue;
        }
        for y in powerset(t.elements()) {
            if !t.contains(&y) {
                let bigger = t.with(y);
                if transitive.insert(bigger.clone()) {
                    frontier.push(bigger);
                }
            }
        }
    }
    let mut out: HashSet<HFSet> = HashSet::new();
    for t in &transitive {
        out.extend(powerset(t.elements()));
    }
    let mut out: Vec<HFSet> = out.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Parses `{…}` or `#N`; elements may mix both forms.
pub fn parse_hf(text: &str) -> Result<HFSet, HfError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let x = parse_at(bytes, &mut pos)?;
    skip_ws(bytes, &mut pos);
    if pos != bytes.len() {
        return Err(syntax(pos, "trailing input"));
    }
    Ok(x)
}

fn syntax(pos: usize, msg: &str) -> HfError {
    HfError::Syntax {
        pos,
        msg: msg.to_string(),
    }
}

fn skip_ws(b: &[u8], pos: &mut usize) {
    while *pos < b.len() && b[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_at(b: &[u8], pos: &mut usize) -> Result<HFSet, HfError> {
    skip_ws(b, pos);
    match b.get(*pos) {
        Some(b'#') => {
            *pos += 1;
            let start = *pos;
            while *pos < b.len() && b[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if start == *pos {
                return Err(syntax(start, "expected digits after '#'"));
            }
            let digits = std::str::from_utf8(&b[start..*pos]).expect("ascii digits");
            let n = BigUint::from_str(digits).map_err(|e| syntax(start, &e.to_string()))?;
            if n.bits() > 64 && n.bits() as u64 > ACK_BIT_LIMIT {
                return Err(syntax(start, "index too large"));
            }
            Ok(hf_unack(&n))
        }
        Some(b'{') => {
            *pos += 1;
            let mut elems = Vec::new();
            skip_ws(b, pos);
            if b.get(*pos) == Some(&b'}') {
                *pos += 1;
                return Ok(hf_make(elems));
            }
            loop {
                elems.push(parse_at(b, pos)?);
                skip_ws(b, pos);
                match b.get(*pos) {
                    Some(b',') => *pos += 1,
                    Some(b'}') => {
                        *pos += 1;
                        return Ok(hf_make(elems));
                    }
                    _ => return Err(syntax(*pos, "expected ',' or '}'")),
                }
            }
        }
        _ => Err(syntax(*pos, "expected '{' or '#'")),
    }
}

impl FromStr for HFSet {
    type Err = HfError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_hf(s)
    }
}

/// `2^n` as a big natural.
pub fn pow2(n: u64) -> BigUint {
    BigUint::one() << n
}
