//! Initial partial isomorphisms, `≅` and `⋳`.

use std::collections::{BTreeMap, HashMap, HashSet};

use super::{Label, MemCode};

/// A partial map `nodes(A) → nodes(B)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialPartialIso {
    pub mapping: BTreeMap<Label, Label>,
}

impl InitialPartialIso {
    pub fn is_total_on(&self, a: &MemCode) -> bool {
        self.mapping.len() == a.len()
    }

    pub fn get(&self, x: &str) -> Option<&Label> {
        self.mapping.get(x)
    }

    /// `π ⊆ σ` as graphs.
    pub fn is_contained_in(&self, other: &InitialPartialIso) -> bool {
        self.mapping
            .iter()
            .all(|(k, v)| other.mapping.get(k) == Some(v))
    }
}

/// The maximum initial partial isomorphism from `a` to `b`.
pub fn max_ipi(a: &MemCode, b: &MemCode) -> InitialPartialIso {
    let map = max_ipi_indices(a, b);
    InitialPartialIso {
        mapping: map
            .iter()
            .enumerate()
            .filter_map(|(i, m)| m.map(|j| (a.dag.labels[i].clone(), b.dag.labels[j].clone())))
            .collect(),
    }
}

pub(crate) fn max_ipi_indices(a: &MemCode, b: &MemCode) -> Vec<Option<usize>> {
    let by_preds: HashMap<&[usize], usize> = (0..b.len())
        .map(|j| (b.dag.preds[j].as_slice(), j))
        .collect();
    let mut map: Vec<Option<usize>> = vec![None; a.len()];
    let mut key = Vec::new();
    for &i in &a.dag.topo {
        key.clear();
        let mut complete = true;
        for &p in &a.dag.preds[i] {
            match map[p] {
                Some(q) => key.push(q),
                None => {
                    complete = false;
                    break;
                }
            }
        }
        if complete {
            key.sort_unstable();
            map[i] = by_preds.get(key.as_slice()).copied();
        }
    }
    map
}

/// The isomorphism `a → b`, if there is one.
pub fn iso(a: &MemCode, b: &MemCode) -> Option<BTreeMap<Label, Label>> {
    if a.len() != b.len() {
        return None;
    }
    let pi = max_ipi(a, b);
    pi.is_total_on(a).then_some(pi.mapping)
}

/// Why `B↓a` is not the range of the maximum initial partial isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reason {
    /// A node `≤ a` outside the range.
    MissingBelow(Label),
    /// A node of `A` outside the domain.
    Unmapped(Label),
    /// A range node not `≤ a`.
    ExtraInRange(Label),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// `A ≅ B↓witness` with `witness ◁ t_B`.
    Member { witness: Label },
    /// The maximum initial partial isomorphism and, for each `a ∈ pen B`,
    /// a reason its range differs from `B↓a` or its domain from `A`.
    NotMember {
        ipi: InitialPartialIso,
        reasons: Vec<(Label, Reason)>,
    },
}

impl Verdict {
    pub fn is_member(&self) -> bool {
        matches!(self, Verdict::Member { .. })
    }
}

/// Decides `A ⋳ B`.
pub fn vin(a: &MemCode, b: &MemCode) -> Verdict {
    let map = max_ipi_indices(a, b);
    let total = map.iter().all(Option::is_some);
    let pen_b = &b.dag.preds[b.dag.top];
    if total {
        let t = map[a.dag.top].expect("total");
        if pen_b.binary_search(&t).is_ok() {
            return Verdict::Member {
                witness: b.dag.labels[t].clone(),
            };
        }
    }
    let range: HashSet<usize> = map.iter().flatten().copied().collect();
    let unmapped = (0..a.len()).find(|&i| map[i].is_none());
    let reasons = pen_b
        .iter()
        .map(|&x| {
            let below = b.dag.below(x);
            let reason = if let Some(m) = (0..b.len()).find(|&j| below[j] && !range.contains(&j)) {
                Reason::MissingBelow(b.dag.labels[m].clone())
            } else if let Some(u) = unmapped {
                Reason::Unmapped(a.dag.labels[u].clone())
            } else {
                let extra = (0..b.len())
                    .find(|&j| range.contains(&j) && !below[j])
                    .expect("range differs from the cone");
                Reason::ExtraInRange(b.dag.labels[extra].clone())
            };
            (b.dag.labels[x].clone(), reason)
        })
        .collect();
    Verdict::NotMember {
        ipi: InitialPartialIso {
            mapping: map
                .iter()
                .enumerate()
                .filter_map(|(i, m)| m.map(|j| (a.dag.labels[i].clone(), b.dag.labels[j].clone())))
                .collect(),
        },
        reasons,
    }
}

/// Checks the definition directly: injective, downward-closed domain and
/// range, edges preserved both ways.
pub fn is_initial_partial_iso(a: &MemCode, b: &MemCode, pi: &BTreeMap<Label, Label>) -> bool {
    let mut inv: HashMap<&str, &str> = HashMap::new();
    for (x, y) in pi {
        if !a.contains_node(x) || !b.contains_node(y) || inv.insert(y, x).is_some() {
            return false;
        }
    }
    for (x, y) in pi {
        let pa = a.preds(x).expect("checked");
        let pb = b.preds(y).expect("checked");
        if pa.iter().any(|p| !pi.contains_key(*p))
            || pb.iter().any(|q| !inv.contains_key(q.as_str()))
        {
            return false;
        }
        for (x2, y2) in pi {
            if a.has_edge(x2, x) != b.has_edge(y2, y) {
                return false;
            }
        }
    }
    true
}

/// Every initial partial isomorphism `a → b`, by exhaustive search with
/// only locally necessary pruning. Exponential; for oracle use.
pub fn brute_force_ipis(a: &MemCode, b: &MemCode) -> Vec<BTreeMap<Label, Label>> {
    let order = &a.dag.topo;
    let mut assign: Vec<Option<usize>> = vec![None; a.len()];
    let mut used = vec![false; b.len()];
    let mut out = Vec::new();
    search(a, b, order, 0, &mut assign, &mut used, &mut out);
    out
}

fn search(
    a: &MemCode,
    b: &MemCode,
    order: &[usize],
    k: usize,
    assign: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    out: &mut Vec<BTreeMap<Label, Label>>,
) {
    if k == order.len() {
        out.push(
            assign
                .iter()
                .enumerate()
                .filter_map(|(i, m)| m.map(|j| (a.dag.labels[i].clone(), b.dag.labels[j].clone())))
                .collect(),
        );
        return;
    }
    let x = order[k];
    search(a, b, order, k + 1, assign, used, out);
    if a.dag.preds[x].iter().any(|&p| assign[p].is_none()) {
        return;
    }
    for y in 0..b.len() {
        if used[y] || b.dag.preds[y].iter().any(|&q| !used[q]) {
            continue;
        }
        let consistent = order[..k].iter().all(|&x2| match assign[x2] {
            Some(y2) => {
                a.dag.preds[x].contains(&x2) == b.dag.preds[y].contains(&y2)
                    && !b.dag.preds[y2].contains(&y)
            }
            None => true,
        });
        if consistent {
            assign[x] = Some(y);
            used[y] = true;
            search(a, b, order, k + 1, assign, used, out);
            assign[x] = None;
            used[y] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hfset::{hf_make, hf_unack_u64, HFSet};
    use crate::memcode::tests::figure;
    use crate::memcode::{canonical_code, collapse, restrict_below};

    fn e(n: u64) -> MemCode {
        canonical_code(&hf_unack_u64(n))
    }

    #[test]
    fn max_ipi_examples() {
        let f = figure();
        let id = max_ipi(&f, &f);
        assert!(f.nodes().iter().all(|n| id.get(n) == Some(n)));
        // A = E_{{∅,{∅}}}, B = E_{{∅}}
        let pi = max_ipi(&e(3), &e(1));
        let dom: Vec<&Label> = pi.mapping.keys().collect();
        assert_eq!(dom, vec!["0", "1"]);
        assert!(is_initial_partial_iso(&e(3), &e(1), &pi.mapping));
    }

    #[test]
    fn iso_examples() {
        let f = figure();
        let g = f.relabel(|l| format!("x{l}"));
        assert!(iso(&f, &g).is_some());
        assert!(iso(&e(1), &e(2)).is_none());
    }

    #[test]
    fn vin_examples() {
        match vin(&e(0), &e(1)) {
            Verdict::Member { witness } => assert_eq!(witness, "0"),
            v => panic!("{v:?}"),
        }
        assert!(!vin(&e(1), &e(1)).is_member());
    }

    #[test]
    fn vin_needs_all_three_reasons() {
        // 2 ∉ {0, {1}}: the maximum ipi maps 0, 1 but the top of A is unmapped.
        let one = hf_unack_u64(1);
        let b = canonical_code(&hf_make([HFSet::empty(), one.singleton()]));
        let Verdict::NotMember { reasons, .. } = vin(&e(3), &b) else {
            panic!()
        };
        assert!(reasons
            .iter()
            .any(|(_, r)| matches!(r, Reason::Unmapped(_))));
        // 1 ∉ {0, {1}}: ipi is total with range B↓1, which is not in pen B.
        let Verdict::NotMember { reasons, .. } = vin(&e(1), &b) else {
            panic!()
        };
        assert!(reasons
            .iter()
            .any(|(_, r)| matches!(r, Reason::ExtraInRange(_))));
        // {∅} ∉ {{{∅}}}
        let Verdict::NotMember { reasons, .. } = vin(&e(1), &e(4)) else {
            panic!()
        };
        assert!(reasons
            .iter()
            .all(|(_, r)| matches!(r, Reason::MissingBelow(_))));
    }

    #[test]
    fn member_witness_is_iso_to_cone() {
        let f = figure();
        let two = e(3);
        let Verdict::Member { witness } = vin(&two, &f) else {
            panic!()
        };
        assert!(iso(&two, &restrict_below(&f, &witness).unwrap()).is_some());
        assert_eq!(
            collapse(&restrict_below(&f, &witness).unwrap()),
            collapse(&two)
        );
    }
}
