//! Finite bounded lattices stored as precomputed order, meet and join tables.
//!
//! Elements are the indices `0..n`. Every constructor relabels its input so
//! that the index order is a linear extension of the lattice order, which puts
//! the bottom at index 0 and the top at index `n - 1`. The relabeling is
//! stable: an input that is already linearly extended keeps its indices.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, MissingBound, NotBooleanReason, Result};

/// Read access shared by whole lattices and interval sublattices.
///
/// Indices are local: `0..size()`.
pub trait FiniteLattice {
    fn size(&self) -> usize;
    fn leq(&self, x: usize, y: usize) -> bool;
    fn meet(&self, x: usize, y: usize) -> usize;
    fn join(&self, x: usize, y: usize) -> usize;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    n: usize,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
    labels: Option<Vec<String>>,
}

/// Build a lattice from a Hasse diagram given as `(lower, upper)` pairs.
pub fn build_lattice(n: usize, covers: &[(usize, usize)]) -> Result<Lattice> {
    build_lattice_relabeled(n, covers).map(|(l, _)| l)
}

/// Like [`build_lattice`], also returning `relabel[input] = canonical` index.
pub fn build_lattice_relabeled(n: usize, covers: &[(usize, usize)]) -> Result<(Lattice, Vec<usize>)> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
    }
    for &(lo, hi) in covers {
        for e in [lo, hi] {
            if e >= n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
        }
        if lo == hi {
            return Err(Error::NotAPoset(format!("cover ({lo}, {hi}) is a loop")));
        }
        leq[lo * n + hi] = true;
    }
    // Warshall
    for k in 0..n {
        for i in 0..n {
            if leq[i * n + k] {
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
    }
    Lattice::from_order_relabeled(n, leq)
}

impl Lattice {
    /// Build from a full order matrix, `leq[x * n + y]` meaning `x ≤ y`.
    pub fn from_order(n: usize, leq: Vec<bool>) -> Result<Lattice> {
        Self::from_order_relabeled(n, leq).map(|(l, _)| l)
    }

    pub fn from_order_relabeled(n: usize, leq: Vec<bool>) -> Result<(Lattice, Vec<usize>)> {
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        if leq.len() != n * n {
            return Err(Error::TableLength { got: leq.len(), expected: n * n });
        }
        check_partial_order(n, &leq)?;

        let order = linear_extension(n, &leq);
        let mut relabel = vec![0; n];
        for (canonical, &input) in order.iter().enumerate() {
            relabel[input] = canonical;
        }
        let mut canon = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                canon[relabel[x] * n + relabel[y]] = leq[x * n + y];
            }
        }

        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        // witnesses are reported in input indices, least pair first
        let mut failure: Option<(usize, usize, MissingBound)> = None;
        for x in 0..n {
            for y in x..n {
                let (cx, cy) = (relabel[x], relabel[y]);
                let m = glb(n, &canon, cx, cy);
                let j = lub(n, &canon, cx, cy);
                let missing = match (m, j) {
                    (Some(m), Some(j)) => {
                        meet[cx * n + cy] = m;
                        meet[cy * n + cx] = m;
                        join[cx * n + cy] = j;
                        join[cy * n + cx] = j;
                        continue;
                    }
                    (None, _) => MissingBound::Meet,
                    (_, None) => MissingBound::Join,
                };
                if failure.is_none() {
                    failure = Some((x, y, missing));
                }
            }
        }
        if let Some((x, y, missing)) = failure {
            return Err(Error::NotALattice { x, y, missing });
        }

        let lattice = Lattice {
            n,
            leq: canon,
            meet,
            join,
            bottom: 0,
            top: n - 1,
            labels: None,
        };
        debug_assert!(lattice.elements().all(|x| lattice.leq(0, x) && lattice.leq(x, n - 1)));
        Ok((lattice, relabel))
    }

    /// The `k`-element chain `0 < 1 < … < k-1`.
    pub fn chain(k: usize) -> Result<Lattice> {
        let covers: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        build_lattice(k, &covers)
    }

    /// The Boolean lattice of all subsets of a `k`-set, element index = bitmask.
    pub fn boolean(k: usize) -> Result<Lattice> {
        let n = 1usize << k;
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[x * n + y] = x & !y == 0;
            }
        }
        Lattice::from_order(n, leq)
    }

    /// Attach display names, indexed by canonical element.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Lattice> {
        if labels.len() != self.n {
            return Err(Error::LabelCount { got: labels.len(), expected: self.n });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The one-element lattice, where `0 = 1`.
    pub fn is_degenerate(&self) -> bool {
        self.n == 1
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.n + y]
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.n + y]
    }

    #[inline]
    pub fn bottom(&self) -> usize {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> usize {
        self.top
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn check_element(&self, x: usize) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange { element: x, n: self.n })
        }
    }

    /// Hasse diagram in canonical indices, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in self.elements() {
            for y in self.elements() {
                if x != y && self.leq(x, y) && !self.elements().any(|z| z != x && z != y && self.leq(x, z) && self.leq(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// First triple violating `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`.
    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        for x in self.elements() {
            for y in self.elements() {
                for z in self.elements() {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    pub fn complements_of(&self, x: usize) -> Vec<usize> {
        self.elements()
            .filter(|&y| self.meet(x, y) == self.bottom && self.join(x, y) == self.top)
            .collect()
    }

    pub fn is_complemented(&self) -> bool {
        self.elements().all(|x| !self.complements_of(x).is_empty())
    }

    /// Why the lattice is not Boolean, or `None` if it is.
    pub fn boolean_obstruction(&self) -> Option<NotBooleanReason> {
        if let Some((x, y, z)) = self.distributivity_witness() {
            return Some(NotBooleanReason::NotDistributive { x, y, z });
        }
        self.elements()
            .find(|&x| self.complements_of(x).is_empty())
            .map(|element| NotBooleanReason::NoComplement { element })
    }

    pub fn is_boolean(&self) -> bool {
        self.boolean_obstruction().is_none()
    }

    /// The complementation map of a Boolean lattice.
    pub fn complementation(&self) -> Result<Vec<usize>> {
        if let Some(reason) = self.boolean_obstruction() {
            return Err(Error::NotBoolean(reason));
        }
        Ok(self.elements().map(|x| self.complements_of(x)[0]).collect())
    }

    pub fn interval(&self, lo: usize, hi: usize) -> Result<IntervalView<'_>> {
        self.check_element(lo)?;
        self.check_element(hi)?;
        if !self.leq(lo, hi) {
            return Err(Error::NotComparable { lo, hi });
        }
        let members: Vec<usize> = self.elements().filter(|&x| self.leq(lo, x) && self.leq(x, hi)).collect();
        let mut local = vec![None; self.n];
        for (i, &m) in members.iter().enumerate() {
            local[m] = Some(i);
        }
        Ok(IntervalView { parent: self, lo, hi, members, local })
    }

    /// Apply a permutation of the carrier: element `x` becomes `perm[x]`.
    ///
    /// The result is relabeled back into a linear extension; the composite
    /// map from old to new indices is returned alongside.
    pub fn permuted(&self, perm: &[usize]) -> Result<(Lattice, Vec<usize>)> {
        let n = self.n;
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[perm[x] * n + perm[y]] = self.leq(x, y);
            }
        }
        let (l, relabel) = Lattice::from_order_relabeled(n, leq)?;
        let composite = (0..n).map(|x| relabel[perm[x]]).collect();
        Ok((l, composite))
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            n: self.n,
            covers: self.covers().into_iter().map(|(a, b)| [a, b]).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Parse the lattice JSON format, returning the input-to-canonical relabeling.
    pub fn from_json(json: &LatticeJson) -> Result<(Lattice, Vec<usize>)> {
        let covers: Vec<_> = json.covers.iter().map(|c| (c[0], c[1])).collect();
        let (lattice, relabel) = build_lattice_relabeled(json.n, &covers)?;
        let lattice = match &json.labels {
            None => lattice,
            Some(labels) => {
                if labels.len() != json.n {
                    return Err(Error::LabelCount { got: labels.len(), expected: json.n });
                }
                let mut canon = vec![String::new(); json.n];
                for (i, l) in labels.iter().enumerate() {
                    canon[relabel[i]] = l.clone();
                }
                lattice.with_labels(canon)?
            }
        };
        Ok((lattice, relabel))
    }

    pub fn from_json_str(text: &str) -> Result<(Lattice, Vec<usize>)> {
        let json: LatticeJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        Self::from_json(&json)
    }
}

impl FiniteLattice for Lattice {
    fn size(&self) -> usize {
        self.n
    }
    fn leq(&self, x: usize, y: usize) -> bool {
        Lattice::leq(self, x, y)
    }
    fn meet(&self, x: usize, y: usize) -> usize {
        Lattice::meet(self, x, y)
    }
    fn join(&self, x: usize, y: usize) -> usize {
        Lattice::join(self, x, y)
    }
}

/// Wire form of a lattice: a Hasse diagram with optional labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub n: usize,
    pub covers: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// The interval `[lo, hi]` of a parent lattice, itself a lattice.
#[derive(Clone, Debug)]
pub struct IntervalView<'a> {
    parent: &'a Lattice,
    lo: usize,
    hi: usize,
    members: Vec<usize>,
    local: Vec<Option<usize>>,
}

impl<'a> IntervalView<'a> {
    pub fn parent(&self) -> &'a Lattice {
        self.parent
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    /// Parent elements in the interval, ascending.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.local.get(x).is_some_and(|l| l.is_some())
    }

    /// Local index of a parent element.
    pub fn local_index(&self, x: usize) -> Option<usize> {
        self.local.get(x).copied().flatten()
    }

    /// Copy the interval out as a standalone lattice (local indices).
    pub fn to_lattice(&self) -> Lattice {
        let k = self.members.len();
        let mut leq = vec![false; k * k];
        for i in 0..k {
            for j in 0..k {
                leq[i * k + j] = self.parent.leq(self.members[i], self.members[j]);
            }
        }
        Lattice::from_order(k, leq).expect("an interval of a lattice is a lattice")
    }
}

impl FiniteLattice for IntervalView<'_> {
    fn size(&self) -> usize {
        self.members.len()
    }
    fn leq(&self, x: usize, y: usize) -> bool {
        self.parent.leq(self.members[x], self.members[y])
    }
    fn meet(&self, x: usize, y: usize) -> usize {
        let m = self.parent.meet(self.members[x], self.members[y]);
        self.local[m].expect("interval is meet-closed")
    }
    fn join(&self, x: usize, y: usize) -> usize {
        let j = self.parent.join(self.members[x], self.members[y]);
        self.local[j].expect("interval is join-closed")
    }
}

/// Lexicographically least lattice isomorphism `a → b`, in local indices.
///
/// Elements of `a` are assigned in index order, each to the smallest free
/// element of `b` that keeps the partial map an order embedding both ways.
pub fn find_isomorphism<A: FiniteLattice + ?Sized, B: FiniteLattice + ?Sized>(a: &A, b: &B) -> Option<Vec<usize>> {
    let n = a.size();
    if n != b.size() {
        return None;
    }
    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if !extend(a, b, &mut map, &mut used) {
        return None;
    }
    debug_assert!(is_isomorphism(a, b, &map));
    Some(map)
}

fn extend<A: FiniteLattice + ?Sized, B: FiniteLattice + ?Sized>(a: &A, b: &B, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let i = map.len();
    if i == a.size() {
        return true;
    }
    for j in 0..b.size() {
        if used[j] {
            continue;
        }
        let consistent = map
            .iter()
            .enumerate()
            .all(|(pi, &pj)| a.leq(i, pi) == b.leq(j, pj) && a.leq(pi, i) == b.leq(pj, j));
        if !consistent {
            continue;
        }
        map.push(j);
        used[j] = true;
        if extend(a, b, map, used) {
            return true;
        }
        used[j] = false;
        map.pop();
    }
    false
}

/// Replay a candidate isomorphism: bijective and preserving meet and join.
pub fn is_isomorphism<A: FiniteLattice + ?Sized, B: FiniteLattice + ?Sized>(a: &A, b: &B, map: &[usize]) -> bool {
    let n = a.size();
    if n != b.size() || map.len() != n {
        return false;
    }
    let image: BTreeSet<_> = map.iter().copied().collect();
    if image.len() != n || image.iter().any(|&j| j >= n) {
        return false;
    }
    (0..n).all(|x| (0..n).all(|y| map[a.meet(x, y)] == b.meet(map[x], map[y]) && map[a.join(x, y)] == b.join(map[x], map[y])))
}

fn check_partial_order(n: usize, leq: &[bool]) -> Result<()> {
    for x in 0..n {
        if !leq[x * n + x] {
            return Err(Error::NotAPoset(format!("{x} ≤ {x} fails (not reflexive)")));
        }
    }
    for x in 0..n {
        for y in 0..n {
            if x != y && leq[x * n + y] && leq[y * n + x] {
                return Err(Error::NotAPoset(format!("{x} and {y} lie on a cycle")));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if !leq[x * n + y] {
                continue;
            }
            for z in 0..n {
                if leq[y * n + z] && !leq[x * n + z] {
                    return Err(Error::NotAPoset(format!("{x} ≤ {y} ≤ {z} but not {x} ≤ {z}")));
                }
            }
        }
    }
    Ok(())
}

/// Stable topological order: always take the smallest available index.
fn linear_extension(n: usize, leq: &[bool]) -> Vec<usize> {
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .find(|&x| !placed[x] && (0..n).all(|y| y == x || placed[y] || !leq[y * n + x]))
            .expect("a finite partial order has a minimal element");
        placed[next] = true;
        order.push(next);
    }
    order
}

fn glb(n: usize, leq: &[bool], x: usize, y: usize) -> Option<usize> {
    let lower: Vec<usize> = (0..n).filter(|&z| leq[z * n + x] && leq[z * n + y]).collect();
    lower.iter().copied().find(|&z| lower.iter().all(|&w| leq[w * n + z]))
}

fn lub(n: usize, leq: &[bool], x: usize, y: usize) -> Option<usize> {
    let upper: Vec<usize> = (0..n).filter(|&z| leq[x * n + z] && leq[y * n + z]).collect();
    upper.iter().copied().find(|&z| upper.iter().all(|&w| leq[z * n + w]))
}
