//! Lattices up to isomorphism.
//!
//! Every bounded lattice with at least two elements is its interior poset
//! with a new bottom and top adjoined, and two lattices are isomorphic exactly
//! when their interiors are. Interior posets are generated by adding a new
//! maximal element above each down-set of every smaller poset; isomorphic
//! copies are rejected by a canonical certificate.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lattice::Lattice;

pub const DEFAULT_LATTICE_BOUND: usize = 7;

/// Certificates are 128-bit, so interiors are capped at 11 elements.
pub const MAX_LATTICE_BOUND: usize = 10;

/// Order matrix of a poset on `0..size`, `leq[x * size + y]` meaning `x ≤ y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    pub size: usize,
    pub leq: Vec<bool>,
}

impl Poset {
    fn le(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.size + y]
    }
}

/// Minimum order-matrix encoding over all relabelings that respect the
/// (down-set size, up-set size) invariant of each element.
///
/// Returns the certificate together with the matrix in that labeling.
pub fn canonical_form(poset: &Poset) -> (u128, Poset) {
    let k = poset.size;
    assert!(k <= 11, "certificate overflows 128 bits");
    let invariant: Vec<(usize, usize)> = (0..k)
        .map(|x| ((0..k).filter(|&y| poset.le(y, x)).count(), (0..k).filter(|&y| poset.le(x, y)).count()))
        .collect();
    let mut by_class: Vec<usize> = (0..k).collect();
    by_class.sort_by_key(|&x| invariant[x]);
    let slot_class: Vec<(usize, usize)> = by_class.iter().map(|&x| invariant[x]).collect();

    let mut best: Option<(u128, Vec<usize>)> = None;
    let mut order = Vec::with_capacity(k);
    let mut used = vec![false; k];
    search_labelings(poset, &invariant, &slot_class, &mut order, &mut used, &mut best);
    let (cert, order) = best.expect("at least one labeling exists");
    let mut leq = vec![false; k * k];
    for i in 0..k {
        for j in 0..k {
            leq[i * k + j] = poset.le(order[i], order[j]);
        }
    }
    (cert, Poset { size: k, leq })
}

fn search_labelings(
    poset: &Poset,
    invariant: &[(usize, usize)],
    slot_class: &[(usize, usize)],
    order: &mut Vec<usize>,
    used: &mut [bool],
    best: &mut Option<(u128, Vec<usize>)>,
) {
    let k = poset.size;
    let pos = order.len();
    if pos == k {
        let code = encode(poset, order);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, order.clone()));
        }
        return;
    }
    for x in 0..k {
        if used[x] || invariant[x] != slot_class[pos] {
            continue;
        }
        used[x] = true;
        order.push(x);
        search_labelings(poset, invariant, slot_class, order, used, best);
        order.pop();
        used[x] = false;
    }
}

fn encode(poset: &Poset, order: &[usize]) -> u128 {
    let k = poset.size;
    let mut code = 0u128;
    for i in 0..k {
        for j in 0..k {
            if i != j {
                code = (code << 1) | poset.le(order[i], order[j]) as u128;
            }
        }
    }
    code
}

/// All posets on `k` elements up to isomorphism, keyed by certificate.
pub fn enumerate_posets(k: usize) -> BTreeMap<u128, Poset> {
    let mut level: BTreeMap<u128, Poset> = BTreeMap::new();
    level.insert(0, Poset { size: 0, leq: Vec::new() });
    for size in 1..=k {
        let mut next = BTreeMap::new();
        for parent in level.values() {
            for down in down_sets(parent) {
                let child = extend_with_maximal(parent, down);
                let (cert, canon) = canonical_form(&child);
                next.entry(cert).or_insert(canon);
            }
        }
        debug_assert!(next.values().all(|p: &Poset| p.size == size));
        level = next;
    }
    level
}

fn down_sets(poset: &Poset) -> impl Iterator<Item = u32> + '_ {
    let k = poset.size;
    (0u32..(1 << k)).filter(move |&set| {
        (0..k).all(|x| set & (1 << x) == 0 || (0..k).all(|y| !poset.le(y, x) || set & (1 << y) != 0))
    })
}

fn extend_with_maximal(parent: &Poset, down: u32) -> Poset {
    let k = parent.size + 1;
    let mut leq = vec![false; k * k];
    for x in 0..parent.size {
        for y in 0..parent.size {
            leq[x * k + y] = parent.le(x, y);
        }
        leq[x * k + (k - 1)] = down & (1 << x) != 0;
    }
    leq[(k - 1) * k + (k - 1)] = true;
    Poset { size: k, leq }
}

/// Every `n`-element lattice exactly once up to isomorphism, in certificate order.
pub fn enumerate_lattices(n: usize, bound: usize) -> Result<Vec<Lattice>> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    let bound = bound.min(MAX_LATTICE_BOUND);
    if n > bound {
        return Err(Error::CarrierTooLarge { n, bound });
    }
    if n == 1 {
        return Lattice::chain(1).map(|l| vec![l]);
    }
    let k = n - 2;
    let mut out = Vec::new();
    for interior in enumerate_posets(k).values() {
        let mut leq = vec![false; n * n];
        for x in 0..n {
            leq[x] = true;
            leq[x * n + (n - 1)] = true;
        }
        for x in 0..k {
            for y in 0..k {
                leq[(x + 1) * n + (y + 1)] = interior.le(x, y);
            }
        }
        match Lattice::from_order(n, leq) {
            Ok(l) => out.push(l),
            Err(Error::NotALattice { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
