//! Materialized truth tables, the clause audit and fixed-point searches.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::Serialize;

use super::domain::{table_domain, TableSpec};
use super::{in_truth_language, Truth, TruthError};
use crate::hfset::{HFSet, HfError};
use crate::logic::godel::{formula_number, valuation_number};
use crate::logic::{decode_valuation, godel_decode, ClassTerm, Formula, SOModel, Valuation, Var};
use crate::order::WellOrder;

/// A true triple: level position in Γ, formula number, valuation number.
/// The numbers are the Ackermann indices of the codes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Entry {
    pub level: usize,
    #[serde(serialize_with = "decimal")]
    pub formula: BigUint,
    #[serde(serialize_with = "decimal")]
    pub valuation: BigUint,
}

fn decimal<S: serde::Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(n)
}

/// `(level, formula id, values of the free variables in name order)`.
pub(crate) type Key = (usize, usize, Vec<HFSet>);

/// The table domain with per-formula bookkeeping.
pub(crate) struct Domain {
    pub formulas: Vec<Formula>,
    pub index: HashMap<Formula, usize>,
    pub free: Vec<Vec<Var>>,
    pub numbers: Vec<BigUint>,
}

impl Domain {
    pub fn new(m: &SOModel, spec: &TableSpec) -> Self {
        let formulas = table_domain(m, spec);
        let index = formulas
            .iter()
            .enumerate()
            .map(|(i, f)| (f.clone(), i))
            .collect();
        let free = formulas
            .iter()
            .map(|f| f.free_vars().into_iter().collect())
            .collect();
        let numbers = formulas
            .iter()
            .map(|f| formula_number(f).expect("codable"))
            .collect();
        Domain {
            formulas,
            index,
            free,
            numbers,
        }
    }

    /// All value tuples for formula `i`.
    pub fn valuations(&self, m: &SOModel, i: usize) -> Vec<Vec<HFSet>> {
        let mut out = vec![Vec::new()];
        for _ in &self.free[i] {
            out = out
                .into_iter()
                .flat_map(|v: Vec<HFSet>| {
                    m.universe().iter().map(move |a| {
                        let mut w = v.clone();
                        w.push(a.clone());
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// Every triple of the domain, ordered by level, formula size, code, values.
    pub fn keys(&self, m: &SOModel, levels: usize) -> Vec<Key> {
        let mut out = Vec::new();
        for l in 0..levels {
            for i in 0..self.formulas.len() {
                for v in self.valuations(m, i) {
                    out.push((l, i, v));
                }
            }
        }
        out
    }

    pub fn entry(&self, key: &Key) -> Result<Entry, HfError> {
        let (l, i, vals) = key;
        let map: BTreeMap<Var, HFSet> = self.free[*i]
            .iter()
            .cloned()
            .zip(vals.iter().cloned())
            .collect();
        let valuation = valuation_number(&map).map_err(|e| match e {
            crate::logic::GodelError::Hf(h) => h,
            other => unreachable!("universe valuations are codable: {other}"),
        })?;
        Ok(Entry {
            level: *l,
            formula: self.numbers[*i].clone(),
            valuation,
        })
    }
}

/// Expected truth of `key` by the Tarskian clause for its outermost symbol,
/// reading subformulas and earlier levels through `lookup`.
pub(crate) fn clause(
    m: &SOModel,
    gamma: &WellOrder<HFSet>,
    dom: &Domain,
    key: &Key,
    lookup: &dyn Fn(&Key) -> bool,
) -> bool {
    use Formula::*;
    let (level, fid, vals) = key;
    let f = &dom.formulas[*fid];
    let env: HashMap<&str, &HFSet> = dom.free[*fid]
        .iter()
        .map(|s| s.as_str())
        .zip(vals.iter())
        .collect();
    let sub = |g: &Formula, bind: Option<(&str, &HFSet)>| -> bool {
        let gid = dom.index[g];
        let values = dom.free[gid]
            .iter()
            .map(|z| match bind {
                Some((x, a)) if x == z => a.clone(),
                _ => env[z.as_str()].clone(),
            })
            .collect();
        lookup(&(*level, gid, values))
    };
    match f {
        Eq(u, v) => env[u.as_str()] == env[v.as_str()],
        In(u, v) => env[v.as_str()].contains(env[u.as_str()]),
        InClass(us, ClassTerm::Sym(c)) => m
            .named()
            .get(c)
            .is_some_and(|cl| cl.contains(env[us[0].as_str()])),
        Tr(u, v, w) => {
            let (ax, ay, az) = (env[u.as_str()], env[v.as_str()], env[w.as_str()]);
            let Some(px) = gamma.position(ax) else {
                return false;
            };
            if px >= *level {
                return false;
            }
            let Some(psi) = godel_decode(ay).ok().filter(|p| in_truth_language(p, m)) else {
                return false;
            };
            let Ok(w) = decode_valuation(az) else {
                return false;
            };
            let free: Vec<Var> = psi.free_vars().into_iter().collect();
            if !w.keys().eq(free.iter()) || !w.values().all(|x| m.contains(x)) {
                return false;
            }
            let pid = dom.index[&psi];
            lookup(&(px, pid, w.into_values().collect()))
        }
        Not(g) => !sub(g, None),
        And(gs) => gs.iter().all(|g| sub(g, None)),
        Or(gs) => gs.iter().any(|g| sub(g, None)),
        Implies(a, b) => !sub(a, None) || sub(b, None),
        Exists(x, g) => m.universe().iter().any(|a| sub(g, Some((x, a)))),
        Forall(x, g) => m.universe().iter().all(|a| sub(g, Some((x, a)))),
        ExistsIn(x, y, g) => env[y.as_str()]
            .elements()
            .iter()
            .filter(|a| m.contains(a))
            .any(|a| sub(g, Some((x, a)))),
        ForallIn(x, y, g) => env[y.as_str()]
            .elements()
            .iter()
            .filter(|a| m.contains(a))
            .all(|a| sub(g, Some((x, a)))),
        _ => unreachable!("domain formulas are in the truth language"),
    }
}

/// `Tr_Γ` restricted to a finite domain of formulas.
pub struct TruthTable {
    pub gamma: WellOrder<HFSet>,
    pub spec: TableSpec,
    pub entries: BTreeSet<Entry>,
    pub(crate) domain: Domain,
    pub(crate) truths: HashSet<Key>,
}

impl TruthTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn domain(&self) -> &[Formula] {
        &self.domain.formulas
    }

    /// Whether the table holds `(level position, f, v)`; `None` outside the domain.
    pub fn lookup(&self, level: usize, f: &Formula, v: &Valuation) -> Option<bool> {
        let i = *self.domain.index.get(f)?;
        let vals = self.domain.free[i]
            .iter()
            .map(|z| v.sets.get(z).cloned())
            .collect::<Option<Vec<_>>>()?;
        Some(self.truths.contains(&(level, i, vals)))
    }

    /// Entries on the first `n` levels.
    pub fn restrict_levels(&self, n: usize) -> BTreeSet<Entry> {
        self.entries
            .iter()
            .filter(|e| e.level < n)
            .cloned()
            .collect()
    }

    /// One line per entry: level label, formula and valuation as Ackermann indices.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            let label = self.gamma.elements()[e.level].to_ack_literal();
            writeln!(
                s,
                "{} {} {}",
                label.trim_start_matches('#'),
                e.formula,
                e.valuation
            )
            .expect("string write");
        }
        s
    }
}

/// Materializes the table by querying the lazily evaluated predicate.
pub fn tr_materialize(
    m: &SOModel,
    gamma: &WellOrder<HFSet>,
    spec: &TableSpec,
) -> Result<TruthTable, TruthError> {
    let domain = Domain::new(m, spec);
    let truth = Truth::new(m, gamma.clone());
    let mut truths = HashSet::new();
    let mut entries = BTreeSet::new();
    for key in domain.keys(m, gamma.len()) {
        let (l, i, vals) = &key;
        let v = Valuation {
            sets: domain.free[*i]
                .iter()
                .cloned()
                .zip(vals.iter().cloned())
                .collect(),
            classes: BTreeMap::new(),
        };
        if truth.at(*l, &domain.formulas[*i], &v)? {
            entries.insert(domain.entry(&key)?);
            truths.insert(key);
        }
    }
    Ok(TruthTable {
        gamma: gamma.clone(),
        spec: spec.clone(),
        entries,
        domain,
        truths,
    })
}

/// A triple where membership and the clause disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseFailure {
    pub level: usize,
    pub formula: String,
    pub valuation: Vec<HFSet>,
    pub in_table: bool,
}

/// Checks every triple of the domain against its clause, using only the
/// table. Returns the number of triples checked.
pub fn audit_clauses(m: &SOModel, t: &TruthTable) -> Result<usize, ClauseFailure> {
    let keys = t.domain.keys(m, t.gamma.len());
    let lookup = |k: &Key| t.truths.contains(k);
    for key in &keys {
        let have = t.truths.contains(key);
        if clause(m, &t.gamma, &t.domain, key, &lookup) != have {
            return Err(ClauseFailure {
                level: key.0,
                formula: t.domain.formulas[key.1].to_string(),
                valuation: key.2.clone(),
                in_table: have,
            });
        }
    }
    Ok(keys.len())
}

/// Every subset of the domain's triples closed under the clauses, by
/// enumerating all `2^n` candidates. Refuses `n > 24`.
pub fn exhaustive_fixed_points(
    m: &SOModel,
    gamma: &WellOrder<HFSet>,
    spec: &TableSpec,
) -> Result<Vec<BTreeSet<Entry>>, TruthError> {
    let dom = Domain::new(m, spec);
    let keys = dom.keys(m, gamma.len());
    if keys.len() > 24 {
        return Err(TruthError::Hf(HfError::CapExceeded {
            what: "candidate triples",
            requested: keys.len(),
            cap: 24,
        }));
    }
    let pos: HashMap<&Key, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << keys.len() {
        let lookup = |k: &Key| mask >> pos[k] & 1 == 1;
        if keys
            .iter()
            .all(|k| clause(m, gamma, &dom, k, &lookup) == lookup(k))
        {
            let set = keys
                .iter()
                .filter(|k| lookup(k))
                .map(|k| dom.entry(k))
                .collect::<Result<BTreeSet<_>, _>>()?;
            out.push(set);
        }
    }
    Ok(out)
}

/// Number of clause-closed tables, by depth-first search over membership
/// choices in dependency order, pruning a branch as soon as a decided
/// triple violates its clause.
pub fn count_fixed_points(m: &SOModel, gamma: &WellOrder<HFSet>, spec: &TableSpec) -> usize {
    let dom = Domain::new(m, spec);
    let keys = dom.keys(m, gamma.len());
    let pos: HashMap<&Key, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut chosen: Vec<bool> = Vec::with_capacity(keys.len());
    fn dfs(
        i: usize,
        keys: &[Key],
        pos: &HashMap<&Key, usize>,
        chosen: &mut Vec<bool>,
        m: &SOModel,
        gamma: &WellOrder<HFSet>,
        dom: &Domain,
    ) -> usize {
        if i == keys.len() {
            return 1;
        }
        let mut total = 0;
        for b in [false, true] {
            chosen.push(b);
            let lookup = |k: &Key| chosen[pos[k]];
            if clause(m, gamma, dom, &keys[i], &lookup) == b {
                total += dfs(i + 1, keys, pos, chosen, m, gamma, dom);
            }
            chosen.pop();
        }
        total
    }
    dfs(0, &keys, &pos, &mut chosen, m, gamma, &dom)
}
