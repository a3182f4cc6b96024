//! Congruences, lattice homomorphisms onto intervals, and subdirect irreducibility.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::dicomp::{check_axiom, Axiom, DicompAlgebra};
use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// An equivalence relation on a carrier, as a block index per element.
///
/// Blocks are numbered in order of their least element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Congruence {
    block_of: Vec<usize>,
    block_count: usize,
}

impl Congruence {
    /// Normalize an arbitrary block assignment.
    pub fn from_assignment(assignment: &[usize]) -> Congruence {
        let mut renumber = std::collections::HashMap::new();
        let block_of: Vec<usize> = assignment
            .iter()
            .map(|b| {
                let next = renumber.len();
                *renumber.entry(*b).or_insert(next)
            })
            .collect();
        Congruence { block_count: renumber.len(), block_of }
    }

    /// Δ, the partition into singletons.
    pub fn discrete(n: usize) -> Congruence {
        Congruence { block_of: (0..n).collect(), block_count: n }
    }

    /// ∇, the one-block partition.
    pub fn total(n: usize) -> Congruence {
        Congruence { block_of: vec![0; n], block_count: n.min(1) }
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn block_of(&self) -> &[usize] {
        &self.block_of
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    pub fn is_discrete(&self) -> bool {
        self.block_count == self.block_of.len()
    }

    pub fn is_total(&self) -> bool {
        self.block_count <= 1
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count];
        for (x, &b) in self.block_of.iter().enumerate() {
            blocks[b].push(x);
        }
        blocks
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Congruence) -> bool {
        self.len() == other.len()
            && (0..self.len()).all(|x| (0..x).all(|y| !self.related(x, y) || other.related(x, y)))
    }

    pub fn is_lattice_compatible(&self, lattice: &Lattice) -> bool {
        self.compatible_with(lattice, &[])
    }

    /// Compatible with meet, join and every table the algebra carries.
    pub fn is_compatible(&self, algebra: &DicompAlgebra) -> bool {
        let mut tables = vec![algebra.weak().table()];
        if let Some(d) = algebra.dual() {
            tables.push(d.table());
        }
        self.compatible_with(algebra.lattice(), &tables)
    }

    fn compatible_with(&self, lattice: &Lattice, tables: &[&[usize]]) -> bool {
        let n = self.len();
        if n != lattice.len() {
            return false;
        }
        for x in 0..n {
            for y in (x + 1)..n {
                if !self.related(x, y) {
                    continue;
                }
                if tables.iter().any(|t| !self.related(t[x], t[y])) {
                    return false;
                }
                for z in 0..n {
                    if !self.related(lattice.meet(x, z), lattice.meet(y, z)) || !self.related(lattice.join(x, z), lattice.join(y, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> CongruenceJson {
        CongruenceJson { blocks: self.blocks() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceJson {
    pub blocks: Vec<Vec<usize>>,
}

/// Relation intersection of two partitions.
pub fn meet_congruences(p: &Congruence, q: &Congruence) -> Result<Congruence> {
    if p.len() != q.len() {
        return Err(Error::CarrierMismatch { left: p.len(), right: q.len() });
    }
    let pairs: Vec<(usize, usize)> = p.block_of.iter().copied().zip(q.block_of.iter().copied()).collect();
    let keys: Vec<usize> = pairs.iter().map(|&(a, b)| a * q.block_count.max(1) + b).collect();
    Ok(Congruence::from_assignment(&keys))
}

/// A lattice homomorphism from a sublattice of `lattice` into the interval `target`.
#[derive(Clone, Debug)]
pub struct Homomorphism<'a> {
    lattice: &'a Lattice,
    domain: Vec<usize>,
    map: Vec<usize>,
    target: (usize, usize),
}

impl<'a> Homomorphism<'a> {
    /// `map[i]` is the image of `domain[i]`. Fails unless images lie in
    /// `target` and meet and join are preserved on every pair.
    pub fn new(lattice: &'a Lattice, domain: Vec<usize>, map: Vec<usize>, target: (usize, usize)) -> Result<Homomorphism<'a>> {
        if domain.len() != map.len() {
            return Err(Error::TableLength { got: map.len(), expected: domain.len() });
        }
        for &e in domain.iter().chain(&map).chain([&target.0, &target.1]) {
            lattice.check_element(e)?;
        }
        let h = Homomorphism { lattice, domain, map, target };
        h.verify()?;
        Ok(h)
    }

    fn verify(&self) -> Result<()> {
        let l = self.lattice;
        let (lo, hi) = self.target;
        for (i, &img) in self.map.iter().enumerate() {
            if !(l.leq(lo, img) && l.leq(img, hi)) {
                return Err(Error::NotAHomomorphism(format!("image {img} of {} leaves [{lo}, {hi}]", self.domain[i])));
            }
        }
        for (i, &x) in self.domain.iter().enumerate() {
            for (j, &y) in self.domain.iter().enumerate() {
                for (op, name) in [(Lattice::meet as fn(&Lattice, usize, usize) -> usize, "meet"), (Lattice::join, "join")] {
                    let Some(k) = self.index_of(op(l, x, y)) else {
                        return Err(Error::NotAHomomorphism(format!("domain is not closed under {name} at ({x}, {y})")));
                    };
                    if self.map[k] != op(l, self.map[i], self.map[j]) {
                        return Err(Error::NotAHomomorphism(format!("{name} not preserved at ({x}, {y})")));
                    }
                }
            }
        }
        Ok(())
    }

    fn index_of(&self, x: usize) -> Option<usize> {
        self.domain.iter().position(|&d| d == x)
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn target_interval(&self) -> (usize, usize) {
        self.target
    }

    /// Image of a domain element (parent index).
    pub fn apply(&self, x: usize) -> Option<usize> {
        self.index_of(x).map(|i| self.map[i])
    }

    /// Distinct images.
    pub fn image(&self) -> BTreeSet<usize> {
        self.map.iter().copied().collect()
    }

    pub fn to_json(&self) -> HomomorphismJson {
        let full = self.domain.len() == self.lattice.len();
        HomomorphismJson {
            map: self.map.clone(),
            target_interval: [self.target.0, self.target.1],
            domain: (!full).then(|| self.domain.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomomorphismJson {
    pub map: Vec<usize>,
    pub target_interval: [usize; 2],
    /// Present when the source is a proper sublattice; `map` is indexed by it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub domain: Option<Vec<usize>>,
}

/// Group domain elements by image. Indices are positions in the domain.
pub fn kernel(h: &Homomorphism<'_>) -> Congruence {
    let k = Congruence::from_assignment(&h.map);
    debug_assert!(h.domain.len() != h.lattice.len() || k.is_lattice_compatible(h.lattice));
    k
}

fn require_interior_wdn(algebra: &DicompAlgebra, c: usize) -> Result<()> {
    let l = algebra.lattice();
    l.check_element(c)?;
    if c == l.bottom() || c == l.top() {
        return Err(Error::BoundaryElement(c));
    }
    let dual = algebra.dual().ok_or(Error::MissingDual(Axiom::Wdn))?;
    if let Some(element) = l.elements().find(|&x| algebra.weak().apply(x) != dual.apply(x)) {
        return Err(Error::NotWdn { element });
    }
    let failed: Vec<Axiom> = Axiom::DEFINING
        .into_iter()
        .filter(|&a| !matches!(check_axiom(algebra, a), Ok(v) if v.passed()))
        .collect();
    if !failed.is_empty() {
        return Err(Error::PreconditionViolated(failed));
    }
    Ok(())
}

/// `f1(x) = x ∧ c` onto `[0, c]` and `f2(x) = x ∧ c^△` onto `[0, c^△]`.
pub fn projection_maps(algebra: &DicompAlgebra, c: usize) -> Result<(Homomorphism<'_>, Homomorphism<'_>)> {
    require_interior_wdn(algebra, c)?;
    let l = algebra.lattice();
    let cw = algebra.weak().apply(c);
    let all: Vec<usize> = l.elements().collect();
    let f1 = Homomorphism::new(l, all.clone(), all.iter().map(|&x| l.meet(x, c)).collect(), (l.bottom(), c))?;
    let f2 = Homomorphism::new(l, all.clone(), all.iter().map(|&x| l.meet(x, cw)).collect(), (l.bottom(), cw))?;
    Ok((f1, f2))
}

/// `u(x) = x ∧ c^△` on `[c, 1]` and `v(x) = x ∨ c` on `[0, c^△]`, checked mutually inverse.
pub fn interval_isomorphism_pair(algebra: &DicompAlgebra, c: usize) -> Result<(Homomorphism<'_>, Homomorphism<'_>)> {
    require_interior_wdn(algebra, c)?;
    let l = algebra.lattice();
    let cw = algebra.weak().apply(c);
    let upper = l.interval(c, l.top())?.members().to_vec();
    let lower = l.interval(l.bottom(), cw)?.members().to_vec();
    let u_map = upper.iter().map(|&x| l.meet(x, cw)).collect();
    let v_map = lower.iter().map(|&x| l.join(x, c)).collect();
    let u = Homomorphism::new(l, upper, u_map, (l.bottom(), cw))?;
    let v = Homomorphism::new(l, lower, v_map, (c, l.top()))?;
    for &x in u.domain() {
        if u.apply(x).and_then(|y| v.apply(y)) != Some(x) {
            return Err(Error::NotAHomomorphism(format!("v∘u moves {x}")));
        }
    }
    for &x in v.domain() {
        if v.apply(x).and_then(|y| u.apply(y)) != Some(x) {
            return Err(Error::NotAHomomorphism(format!("u∘v moves {x}")));
        }
    }
    Ok((u, v))
}

pub const DEFAULT_CONGRUENCE_BOUND: usize = 8;

/// Above this size [`all_congruences`] switches to principal closure.
pub const PARTITION_FILTER_LIMIT: usize = 6;

/// Every congruence of the algebra, sorted by block assignment.
pub fn all_congruences(algebra: &DicompAlgebra, bound: usize) -> Result<Vec<Congruence>> {
    let n = algebra.len();
    if n > bound {
        return Err(Error::CarrierTooLarge { n, bound });
    }
    Ok(if n <= PARTITION_FILTER_LIMIT {
        congruences_by_partition_filter(algebra)
    } else {
        congruences_by_principal_closure(algebra)
    })
}

/// Filter every set partition of the carrier for compatibility.
pub fn congruences_by_partition_filter(algebra: &DicompAlgebra) -> Vec<Congruence> {
    let n = algebra.len();
    let mut out = Vec::new();
    // restricted growth strings enumerate each partition once, in sorted order
    let mut rgs = vec![0usize; n];
    loop {
        let candidate = Congruence::from_assignment(&rgs);
        if candidate.is_compatible(algebra) {
            out.push(candidate);
        }
        if !next_rgs(&mut rgs) {
            break;
        }
    }
    out.sort();
    out
}

fn next_rgs(rgs: &mut [usize]) -> bool {
    let n = rgs.len();
    for i in (1..n).rev() {
        let max_prefix = rgs[..i].iter().copied().max().unwrap_or(0);
        if rgs[i] <= max_prefix {
            rgs[i] += 1;
            for r in rgs.iter_mut().skip(i + 1) {
                *r = 0;
            }
            return true;
        }
    }
    false
}

/// Join-closure of the principal congruences `Cg(a, b)`, together with Δ.
pub fn congruences_by_principal_closure(algebra: &DicompAlgebra) -> Vec<Congruence> {
    let n = algebra.len();
    let mut principals = BTreeSet::new();
    for a in 0..n {
        for b in (a + 1)..n {
            principals.insert(generate(algebra, &[(a, b)]));
        }
    }
    let mut all: BTreeSet<Congruence> = principals.iter().cloned().collect();
    all.insert(Congruence::discrete(n));
    let mut frontier: Vec<Congruence> = all.iter().cloned().collect();
    while let Some(theta) = frontier.pop() {
        for p in &principals {
            let joined = join_congruences(algebra, &theta, p);
            if all.insert(joined.clone()) {
                frontier.push(joined);
            }
        }
    }
    all.into_iter().collect()
}

fn join_congruences(algebra: &DicompAlgebra, p: &Congruence, q: &Congruence) -> Congruence {
    let mut pairs = Vec::new();
    for theta in [p, q] {
        for block in theta.blocks() {
            pairs.extend(block.windows(2).map(|w| (w[0], w[1])));
        }
    }
    generate(algebra, &pairs)
}

/// Least congruence containing the given pairs.
pub fn generate(algebra: &DicompAlgebra, pairs: &[(usize, usize)]) -> Congruence {
    let l = algebra.lattice();
    let n = l.len();
    let mut tables = vec![algebra.weak().table()];
    if let Some(d) = algebra.dual() {
        tables.push(d.table());
    }
    let mut uf = UnionFind::new(n);
    for &(a, b) in pairs {
        uf.union(a, b);
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in (x + 1)..n {
                if uf.find(x) != uf.find(y) {
                    continue;
                }
                for t in &tables {
                    changed |= uf.union(t[x], t[y]);
                }
                for z in 0..n {
                    changed |= uf.union(l.meet(x, z), l.meet(y, z));
                    changed |= uf.union(l.join(x, z), l.join(y, z));
                }
            }
        }
        if !changed {
            break;
        }
    }
    let roots: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
    Congruence::from_assignment(&roots)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = x;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    /// Returns whether the sets were distinct.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }
}

/// The least nontrivial congruence, if there is one.
pub fn monolith(algebra: &DicompAlgebra, bound: usize) -> Result<Option<Congruence>> {
    let n = algebra.len();
    if n <= 1 {
        return Ok(None);
    }
    let mut meet = Congruence::total(n);
    for theta in all_congruences(algebra, bound)?.iter().filter(|t| !t.is_discrete()) {
        meet = meet_congruences(&meet, theta)?;
    }
    Ok((!meet.is_discrete()).then_some(meet))
}

/// Subdirectly irreducible iff a monolith exists; the singleton is not.
pub fn is_subdirectly_irreducible(algebra: &DicompAlgebra, bound: usize) -> Result<bool> {
    monolith(algebra, bound).map(|m| m.is_some())
}

/// Two nontrivial kernels meeting in Δ: the algebra is a subdirect product of its quotients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationCertificate {
    pub c: usize,
    pub theta1: Congruence,
    pub theta2: Congruence,
    /// Whether each kernel also respects the unary tables.
    pub theta1_unary_compatible: bool,
    pub theta2_unary_compatible: bool,
}

impl SeparationCertificate {
    /// Recompute both kernels from `c` and re-check every claim.
    pub fn replay(&self, algebra: &DicompAlgebra) -> bool {
        let Ok((f1, f2)) = projection_maps(algebra, self.c) else {
            return false;
        };
        let (k1, k2) = (kernel(&f1), kernel(&f2));
        k1 == self.theta1
            && k2 == self.theta2
            && !k1.is_discrete()
            && !k2.is_discrete()
            && k1.is_lattice_compatible(algebra.lattice())
            && k2.is_lattice_compatible(algebra.lattice())
            && meet_congruences(&k1, &k2).is_ok_and(|m| m.is_discrete())
            && k1.is_compatible(algebra) == self.theta1_unary_compatible
            && k2.is_compatible(algebra) == self.theta2_unary_compatible
    }
}

/// Certificate from the least interior element whose kernels separate points.
pub fn separation_certificate(algebra: &DicompAlgebra) -> Result<Option<SeparationCertificate>> {
    let l = algebra.lattice();
    for c in l.elements().filter(|&c| c != l.bottom() && c != l.top()) {
        let (f1, f2) = projection_maps(algebra, c)?;
        let (theta1, theta2) = (kernel(&f1), kernel(&f2));
        if theta1.is_discrete() || theta2.is_discrete() || !meet_congruences(&theta1, &theta2)?.is_discrete() {
            continue;
        }
        return Ok(Some(SeparationCertificate {
            c,
            theta1_unary_compatible: theta1.is_compatible(algebra),
            theta2_unary_compatible: theta2.is_compatible(algebra),
            theta1,
            theta2,
        }));
    }
    Ok(None)
}
