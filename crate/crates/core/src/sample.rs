//! Seeded random generators for property tests and examples.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::hfset::{hf_make, HFSet};
use crate::logic::formula::{build, Formula};
use crate::memcode::{normalize, MemCode, RawPointedGraph};

/// A random set of rank at most `max_rank` with at most `width` elements per level.
pub fn random_hf<R: Rng>(rng: &mut R, max_rank: usize, width: usize) -> HFSet {
    if max_rank == 0 {
        return HFSet::empty();
    }
    let k = rng.gen_range(0..=width);
    hf_make((0..k).map(|_| {
        let r = rng.gen_range(0..max_rank);
        random_hf(rng, r, width)
    }))
}

/// A random valid code with at most `max_nodes` nodes.
pub fn random_code<R: Rng>(rng: &mut R, max_nodes: usize) -> MemCode {
    let n = rng.gen_range(1..=max_nodes.max(1));
    let density: f64 = rng.gen_range(0.2..0.8);
    let nodes: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if rng.gen_bool(density) {
                edges.push((nodes[i].clone(), nodes[j].clone()));
            }
        }
    }
    let top = nodes[n - 1].clone();
    normalize(&RawPointedGraph { nodes, edges, top }).expect("upper-triangular graphs are acyclic")
}

/// An isomorphic copy of `a` under a random injective relabeling.
pub fn random_relabel<R: Rng>(rng: &mut R, a: &MemCode) -> MemCode {
    let mut fresh: Vec<usize> = (0..a.len()).collect();
    fresh.shuffle(rng);
    let pos: std::collections::HashMap<&str, usize> = a
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), fresh[i]))
        .collect();
    a.relabel(|l| format!("r{}", pos[l]))
}

/// Knobs for [`FormulaGen::sample`].
#[derive(Debug, Clone)]
pub struct FormulaGen {
    /// Free set variables atoms may mention.
    pub free: Vec<String>,
    /// Class symbols for `inclass` atoms.
    pub classes: Vec<String>,
    pub max_depth: usize,
    /// Most quantifiers along any branch.
    pub max_quantifiers: usize,
    pub unbounded: bool,
    pub bounded: bool,
    pub class_quantifiers: bool,
    pub tr_atoms: bool,
}

impl Default for FormulaGen {
    fn default() -> Self {
        FormulaGen {
            free: Vec::new(),
            classes: Vec::new(),
            max_depth: 4,
            max_quantifiers: 3,
            unbounded: true,
            bounded: true,
            class_quantifiers: false,
            tr_atoms: false,
        }
    }
}

const BOUND_NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
const CLASS_NAMES: [&str; 3] = ["X", "Y", "Z"];

impl FormulaGen {
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Formula {
        let mut scope = self.free.clone();
        let mut classes = self.classes.clone();
        self.go(
            rng,
            self.max_depth,
            self.max_quantifiers,
            &mut scope,
            &mut classes,
        )
    }

    fn atom<R: Rng>(&self, rng: &mut R, scope: &[String], classes: &[String]) -> Formula {
        use build::*;
        if scope.is_empty() {
            return if rng.gen_bool(0.5) {
                truth()
            } else {
                falsity()
            };
        }
        let pick = |rng: &mut R| scope.choose(rng).expect("nonempty").as_str();
        let mut kinds = vec![0, 1];
        if !classes.is_empty() {
            kinds.push(2);
        }
        if self.tr_atoms {
            kinds.push(3);
        }
        match *kinds.choose(rng).expect("nonempty") {
            0 => eq(pick(rng), pick(rng)),
            1 => mem(pick(rng), pick(rng)),
            2 => inclass(pick(rng), classes.choose(rng).expect("nonempty")),
            _ => tr(pick(rng), pick(rng), pick(rng)),
        }
    }

    fn go<R: Rng>(
        &self,
        rng: &mut R,
        depth: usize,
        quants: usize,
        scope: &mut Vec<String>,
        classes: &mut Vec<String>,
    ) -> Formula {
        use build::*;
        if depth == 0 || rng.gen_bool(0.2) {
            return self.atom(rng, scope, classes);
        }
        let mut kinds = vec![0, 1, 2, 3];
        if quants > 0 {
            if self.unbounded {
                kinds.extend([4, 4, 5, 5]);
            }
            if self.bounded && !scope.is_empty() {
                kinds.extend([6, 6, 7, 7]);
            }
            if self.class_quantifiers {
                kinds.extend([8, 9]);
            }
        }
        match *kinds.choose(rng).expect("nonempty") {
            0 => not(self.go(rng, depth - 1, quants, scope, classes)),
            1 | 2 => {
                let a = self.go(rng, depth - 1, quants, scope, classes);
                let b = self.go(rng, depth - 1, quants, scope, classes);
                if rng.gen_bool(0.5) {
                    and([a, b])
                } else {
                    or([a, b])
                }
            }
            3 => {
                let a = self.go(rng, depth - 1, quants, scope, classes);
                let b = self.go(rng, depth - 1, quants, scope, classes);
                implies(a, b)
            }
            k @ (4..=7) => {
                let x = *BOUND_NAMES.choose(rng).expect("nonempty");
                let y = scope
                    .iter()
                    .filter(|y| *y != x)
                    .cloned()
                    .collect::<Vec<_>>()
                    .choose(rng)
                    .cloned();
                if k >= 6 && y.is_none() {
                    return self.atom(rng, scope, classes);
                }
                scope.push(x.to_string());
                let body = self.go(rng, depth - 1, quants - 1, scope, classes);
                scope.pop();
                match k {
                    4 => ex(x, body),
                    5 => all(x, body),
                    6 => exin(x, &y.expect("checked"), body),
                    _ => allin(x, &y.expect("checked"), body),
                }
            }
            k => {
                let c = *CLASS_NAMES.choose(rng).expect("nonempty");
                classes.push(c.to_string());
                let body = self.go(rng, depth - 1, quants - 1, scope, classes);
                classes.pop();
                if k == 8 {
                    ex_c(c, body)
                } else {
                    all_c(c, body)
                }
            }
        }
    }
}

/// A prenex Σ_k sentence: `k` alternating blocks of one or two unbounded
/// quantifiers, starting with ∃, over a Σ₀ matrix that uses every block.
pub fn random_sigma_k<R: Rng>(rng: &mut R, k: usize) -> Formula {
    use build::*;
    let mut prefix = Vec::new();
    let mut n = 0;
    for block in 0..k {
        for _ in 0..rng.gen_range(1..=2) {
            prefix.push((block % 2 == 0, format!("q{n}")));
            n += 1;
        }
    }
    let names: Vec<String> = prefix.iter().map(|(_, x)| x.clone()).collect();
    let gen = FormulaGen {
        free: names.clone(),
        max_depth: 3,
        max_quantifiers: 1,
        unbounded: false,
        ..FormulaGen::default()
    };
    let mut matrix = vec![gen.sample(rng)];
    for w in names.windows(2) {
        matrix.push(if rng.gen_bool(0.5) {
            mem(&w[0], &w[1])
        } else {
            not(mem(&w[1], &w[0]))
        });
    }
    prefix.into_iter().rev().fold(
        and(matrix),
        |acc, (e, x)| if e { ex(&x, acc) } else { all(&x, acc) },
    )
}
