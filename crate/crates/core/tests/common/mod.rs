//! Brute-force oracles shared by the integration suites.
//!
//! Nothing here calls into the library's algorithms: lattices are read only
//! through their order relation, and every bound, equation and search is
//! recomputed by direct scanning.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// A finite poset given by its order matrix, with meets and joins found by scanning.
#[derive(Clone, Debug)]
pub struct OracleLattice {
    pub n: usize,
    pub leq: Vec<bool>,
}

impl OracleLattice {
    pub fn from_leq(n: usize, leq: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                m[x * n + y] = leq(x, y);
            }
        }
        OracleLattice { n, leq: m }
    }

    pub fn chain(n: usize) -> Self {
        Self::from_leq(n, |x, y| x <= y)
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    pub fn glb(&self, x: usize, y: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.n).filter(|&z| self.le(z, x) && self.le(z, y)).collect();
        lower.iter().copied().find(|&z| lower.iter().all(|&w| self.le(w, z)))
    }

    pub fn lub(&self, x: usize, y: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.n).filter(|&z| self.le(x, z) && self.le(y, z)).collect();
        upper.iter().copied().find(|&z| upper.iter().all(|&w| self.le(z, w)))
    }

    pub fn is_lattice(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.glb(x, y).is_some() && self.lub(x, y).is_some()))
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.glb(x, y).expect("meet exists")
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.lub(x, y).expect("join exists")
    }

    pub fn top(&self) -> usize {
        (0..self.n).find(|&t| (0..self.n).all(|x| self.le(x, t))).unwrap()
    }

    pub fn bottom(&self) -> usize {
        (0..self.n).find(|&b| (0..self.n).all(|x| self.le(b, x))).unwrap()
    }
}

/// Every permutation of `0..k`.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

/// Unlabeled lattice count for `n`: every strict order on the interior
/// `1..n-1` compatible with index order, bounds fixed at `0` and `n-1`,
/// filtered for lattices and deduplicated by minimum matrix over all
/// relabelings of the interior.
pub fn brute_lattice_count(n: usize) -> usize {
    if n <= 2 {
        return 1;
    }
    let interior: Vec<usize> = (1..n - 1).collect();
    let pairs: Vec<(usize, usize)> = interior
        .iter()
        .flat_map(|&i| interior.iter().filter(move |&&j| i < j).map(move |&j| (i, j)))
        .collect();
    let perms = permutations(interior.len());
    let mut seen = BTreeSet::new();
    for mask in 0u64..(1 << pairs.len()) {
        let mut rel = vec![false; n * n];
        for x in 0..n {
            rel[x * n + x] = true;
            rel[x] = true;
            rel[x * n + n - 1] = true;
        }
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask & (1 << b) != 0 {
                rel[i * n + j] = true;
            }
        }
        let transitive = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| !(rel[x * n + y] && rel[y * n + z]) || rel[x * n + z])));
        if !transitive {
            continue;
        }
        let l = OracleLattice { n, leq: rel };
        if !l.is_lattice() {
            continue;
        }
        let best = perms
            .iter()
            .map(|p| {
                let map = |x: usize| if x == 0 || x == n - 1 { x } else { p[x - 1] + 1 };
                let mut m = vec![false; n * n];
                for x in 0..n {
                    for y in 0..n {
                        m[map(x) * n + map(y)] = l.le(x, y);
                    }
                }
                m
            })
            .min()
            .unwrap();
        seen.insert(best);
    }
    seen.len()
}

/// All `n^n` tables in lexicographic order.
pub fn all_tables(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut t = vec![0; n];
    loop {
        out.push(t.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < n {
                break;
            }
            t[i] = 0;
        }
    }
}

pub fn ddag_holds(l: &OracleLattice, w: &[usize]) -> bool {
    (0..l.n).all(|x| {
        (0..l.n).all(|y| l.join(l.meet(x, y), l.meet(x, w[y])) == l.meet(l.join(x, y), l.join(x, w[y])))
    })
}

pub fn is_distributive(l: &OracleLattice) -> bool {
    (0..l.n).all(|x| (0..l.n).all(|y| (0..l.n).all(|z| l.meet(x, l.join(y, z)) == l.join(l.meet(x, y), l.meet(x, z)))))
}

/// The raw axioms, written out directly on a lattice.
pub fn a1(l: &OracleLattice, w: &[usize]) -> Option<Vec<usize>> {
    (0..l.n).find(|&x| !l.le(w[w[x]], x)).map(|x| vec![x])
}

pub fn a1_dual(l: &OracleLattice, d: &[usize]) -> Option<Vec<usize>> {
    (0..l.n).find(|&x| !l.le(x, d[d[x]])).map(|x| vec![x])
}

/// Implication form `x ≤ y ⇒ t(y) ≤ t(x)`. Returns whether it holds.
pub fn antitone(l: &OracleLattice, t: &[usize]) -> bool {
    (0..l.n).all(|x| (0..l.n).all(|y| !l.le(x, y) || l.le(t[y], t[x])))
}

pub fn a2_equational(l: &OracleLattice, t: &[usize]) -> Option<Vec<usize>> {
    for x in 0..l.n {
        for y in 0..l.n {
            if l.meet(t[l.meet(x, y)], t[y]) != t[y] {
                return Some(vec![x, y]);
            }
        }
    }
    None
}

pub fn a3(l: &OracleLattice, w: &[usize]) -> bool {
    (0..l.n).all(|x| (0..l.n).all(|y| l.join(l.meet(x, y), l.meet(x, w[y])) == x))
}

pub fn a3_dual(l: &OracleLattice, d: &[usize]) -> bool {
    (0..l.n).all(|x| (0..l.n).all(|y| l.meet(l.join(x, y), l.join(x, d[y])) == x))
}

/// First pair `(weak, dual)` in weak-major lexicographic order satisfying
/// A3 and A3' but failing one of A1, A2, A1', A2' (checked in that order).
/// `(weak, dual, violated axiom, witness)`.
pub type Found = (Vec<usize>, Vec<usize>, &'static str, Vec<usize>);

pub fn first_open_question_counterexample(l: &OracleLattice) -> Option<Found> {
    let tables = all_tables(l.n);
    for w in &tables {
        if !a3(l, w) {
            continue;
        }
        for d in &tables {
            if !a3_dual(l, d) {
                continue;
            }
            if let Some(t) = a1(l, w) {
                return Some((w.clone(), d.clone(), "A1", t));
            }
            if let Some(t) = a2_equational(l, w) {
                return Some((w.clone(), d.clone(), "A2", t));
            }
            if let Some(t) = a1_dual(l, d) {
                return Some((w.clone(), d.clone(), "A1'", t));
            }
            if let Some(t) = a2_equational(l, d) {
                return Some((w.clone(), d.clone(), "A2'", t));
            }
        }
    }
    None
}

/// Number of `(weak, dual)` pairs satisfying A3 and A3'.
pub fn hypothesis_pair_count(l: &OracleLattice) -> usize {
    let tables = all_tables(l.n);
    let weak = tables.iter().filter(|w| a3(l, w)).count();
    let dual = tables.iter().filter(|d| a3_dual(l, d)).count();
    weak * dual
}

/// Closed sets of a Galois connection by brute force over every object subset.
pub fn brute_closed_extents(incidence: &[Vec<bool>], attributes: usize) -> BTreeSet<Vec<bool>> {
    let g = incidence.len();
    let mut out = BTreeSet::new();
    for mask in 0u64..(1 << g) {
        let a: Vec<bool> = (0..g).map(|i| mask & (1 << i) != 0).collect();
        let intent: Vec<bool> = (0..attributes).map(|m| (0..g).all(|i| !a[i] || incidence[i][m])).collect();
        let extent: Vec<bool> = (0..g).map(|i| (0..attributes).all(|m| !intent[m] || incidence[i][m])).collect();
        out.insert(extent);
    }
    out
}

pub fn brute_closed_intents(incidence: &[Vec<bool>], attributes: usize) -> BTreeSet<Vec<bool>> {
    let g = incidence.len();
    let mut out = BTreeSet::new();
    for mask in 0u64..(1 << attributes) {
        let b: Vec<bool> = (0..attributes).map(|i| mask & (1 << i) != 0).collect();
        let extent: Vec<bool> = (0..g).map(|i| (0..attributes).all(|m| !b[m] || incidence[i][m])).collect();
        let intent: Vec<bool> = (0..attributes).map(|m| (0..g).all(|i| !extent[i] || incidence[i][m])).collect();
        out.insert(intent);
    }
    out
}
