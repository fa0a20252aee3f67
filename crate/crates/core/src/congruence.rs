//! Lattice congruences, the congruence lattice, quotients and the action of
//! homomorphisms on congruences.
//!
//! For a finite lattice every congruence is compact, so `Con L` and
//! `Conc L` coincide; [`CongruenceLattice`] serves as both.

use std::collections::HashMap;

use crate::error::{LatticeError, Result};
use crate::order::FiniteLattice;

/// Default cap on the number of congruences generated.
pub const DEFAULT_CON_CAP: usize = 1 << 20;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; the smaller index becomes the root.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// A partition of the elements; each element maps to the least index of its block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    blocks: Vec<usize>,
}

impl Congruence {
    pub fn identity(n: usize) -> Self {
        Congruence { blocks: (0..n).collect() }
    }

    pub fn full(n: usize) -> Self {
        Congruence { blocks: vec![0; n] }
    }

    /// Wraps an arbitrary block assignment, normalising block ids to the
    /// least member and checking compatibility with `l`.
    pub fn from_assignment(l: &FiniteLattice, assignment: &[usize]) -> Result<Self> {
        if assignment.len() != l.size() {
            return Err(LatticeError::NotACongruence("assignment length differs from lattice size".into()));
        }
        let mut first: HashMap<usize, usize> = HashMap::new();
        let blocks = assignment.iter().enumerate().map(|(i, b)| *first.entry(*b).or_insert(i)).collect();
        let c = Congruence { blocks };
        if let Some((x, y, z)) = c.compatibility_witness(l) {
            return Err(LatticeError::NotACongruence(format!(
                "{x} ≡ {y} but the pair is not preserved by operations with {z}"
            )));
        }
        Ok(c)
    }

    /// Builds a congruence from a list of blocks.
    pub fn from_blocks(l: &FiniteLattice, blocks: &[Vec<usize>]) -> Result<Self> {
        let n = l.size();
        let mut assignment = vec![usize::MAX; n];
        for (bi, block) in blocks.iter().enumerate() {
            for &x in block {
                l.check_index(x)?;
                if assignment[x] != usize::MAX {
                    return Err(LatticeError::NotACongruence(format!("element {x} in two blocks")));
                }
                assignment[x] = bi;
            }
        }
        if let Some(x) = assignment.iter().position(|&b| b == usize::MAX) {
            return Err(LatticeError::NotACongruence(format!("element {x} in no block")));
        }
        Self::from_assignment(l, &assignment)
    }

    fn from_union_find(uf: &mut UnionFind) -> Self {
        let n = uf.parent.len();
        Congruence { blocks: (0..n).map(|i| uf.find(i)).collect() }
    }

    pub fn size(&self) -> usize {
        self.blocks.len()
    }

    /// Block representative (least element of the block) of `x`.
    #[inline]
    pub fn block_of(&self, x: usize) -> usize {
        self.blocks[x]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.blocks
    }

    #[inline]
    pub fn related(&self, x: usize, y: usize) -> bool {
        self.blocks[x] == self.blocks[y]
    }

    pub fn block_count(&self) -> usize {
        self.blocks.iter().enumerate().filter(|(i, b)| *i == **b).count()
    }

    /// Blocks as sorted element lists, ordered by representative.
    pub fn block_list(&self) -> Vec<Vec<usize>> {
        let mut by_rep: Vec<Vec<usize>> = vec![Vec::new(); self.blocks.len()];
        for (i, &b) in self.blocks.iter().enumerate() {
            by_rep[b].push(i);
        }
        by_rep.into_iter().filter(|b| !b.is_empty()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.iter().enumerate().all(|(i, &b)| i == b)
    }

    pub fn is_full(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// Refinement order: every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        (0..self.blocks.len()).all(|x| other.blocks[self.blocks[x]] == other.blocks[x])
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        let blocks =
            (0..self.blocks.len()).map(|i| *seen.entry((self.blocks[i], other.blocks[i])).or_insert(i)).collect();
        Congruence { blocks }
    }

    /// Join in `Con L`: the transitive closure of the union of both relations.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.blocks.len());
        for i in 0..self.blocks.len() {
            uf.union(i, self.blocks[i]);
            uf.union(i, other.blocks[i]);
        }
        Congruence::from_union_find(&mut uf)
    }

    /// A triple `(x, y, z)` with `x ≡ y` but `x∧z ≢ y∧z` or `x∨z ≢ y∨z`.
    pub fn compatibility_witness(&self, l: &FiniteLattice) -> Option<(usize, usize, usize)> {
        for x in 0..self.blocks.len() {
            let y = self.blocks[x];
            if x == y {
                continue;
            }
            for z in 0..l.size() {
                if !self.related(l.meet(x, z), l.meet(y, z)) || !self.related(l.join(x, z), l.join(y, z)) {
                    return Some((x, y, z));
                }
            }
        }
        None
    }
}

/// The smallest congruence containing every given pair.
///
/// Each successful merge is queued; processing a merged pair `(x, y)`
/// merges `x∧c` with `y∧c` and `x∨c` with `y∨c` for every `c`. Compatibility
/// of the generating pairs implies compatibility of their closure.
pub fn congruence_generated(l: &FiniteLattice, pairs: &[(usize, usize)]) -> Congruence {
    let n = l.size();
    let mut uf = UnionFind::new(n);
    let mut queue: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in pairs {
        if uf.union(a, b) {
            queue.push((a, b));
        }
    }
    while let Some((x, y)) = queue.pop() {
        for c in 0..n {
            for (p, q) in [(l.meet(x, c), l.meet(y, c)), (l.join(x, c), l.join(y, c))] {
                if uf.union(p, q) {
                    queue.push((p, q));
                }
            }
        }
    }
    Congruence::from_union_find(&mut uf)
}

/// `Θ_L(a, b)`, the least congruence collapsing `a` and `b`.
pub fn principal_congruence(l: &FiniteLattice, a: usize, b: usize) -> Congruence {
    congruence_generated(l, &[(a, b)])
}

/// All congruences of a finite lattice with their refinement order.
#[derive(Clone, Debug)]
pub struct CongruenceLattice {
    congruences: Vec<Congruence>,
    index: HashMap<Vec<usize>, usize>,
    lattice: FiniteLattice,
}

impl CongruenceLattice {
    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn congruences(&self) -> &[Congruence] {
        &self.congruences
    }

    pub fn get(&self, i: usize) -> &Congruence {
        &self.congruences[i]
    }

    /// The congruence lattice as a [`FiniteLattice`] on congruence indices.
    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn index_of(&self, c: &Congruence) -> Option<usize> {
        self.index.get(c.assignment()).copied()
    }

    pub fn identity(&self) -> usize {
        self.lattice.bottom()
    }

    pub fn full(&self) -> usize {
        self.lattice.top()
    }

    /// Index of `Θ(a, b)`, computed in `l` (the lattice this was built from).
    pub fn principal(&self, l: &FiniteLattice, a: usize, b: usize) -> usize {
        self.index_of(&principal_congruence(l, a, b)).expect("principal congruence is listed")
    }

    /// Join-irreducible: exactly one lower cover in `Con L`.
    pub fn is_join_irreducible(&self, i: usize) -> bool {
        self.lattice.lower_covers(i).len() == 1
    }

    /// Meet-irreducible: exactly one upper cover in `Con L`. In a finite
    /// lattice this is the same as completely meet-irreducible.
    pub fn is_meet_irreducible(&self, i: usize) -> bool {
        self.lattice.upper_covers(i).len() == 1
    }

    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_join_irreducible(i)).collect()
    }

    pub fn meet_irreducibles(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_meet_irreducible(i)).collect()
    }

    /// Boolean with `k` atoms, returning `k`.
    pub fn boolean_rank(&self) -> Option<usize> {
        let atoms = self.lattice.upper_covers(self.identity()).len();
        if 1usize.checked_shl(atoms as u32) != Some(self.len()) {
            return None;
        }
        if self.lattice.is_distributive() {
            Some(atoms)
        } else {
            None
        }
    }
}

pub fn congruence_lattice(l: &FiniteLattice) -> Result<CongruenceLattice> {
    congruence_lattice_capped(l, DEFAULT_CON_CAP)
}

/// Generates `Con L` as the join-closure of the principal congruences of
/// covering pairs (the join-irreducible congruences).
pub fn congruence_lattice_capped(l: &FiniteLattice, cap: usize) -> Result<CongruenceLattice> {
    let n = l.size();
    let mut generators: Vec<Congruence> = Vec::new();
    for &(a, b) in l.covers() {
        let c = principal_congruence(l, a, b);
        if !generators.contains(&c) {
            generators.push(c);
        }
    }
    let mut all: Vec<Congruence> = vec![Congruence::identity(n)];
    let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
    seen.insert(all[0].blocks.clone(), ());
    let mut k = 0;
    while k < all.len() {
        let cur = all[k].clone();
        k += 1;
        for g in &generators {
            if g.refines(&cur) {
                continue;
            }
            let j = cur.join(g);
            if seen.insert(j.blocks.clone(), ()).is_none() {
                if all.len() >= cap {
                    return Err(LatticeError::SizeCapExceeded { what: "congruence lattice", cap });
                }
                all.push(j);
            }
        }
    }
    all.sort_by(|x, y| y.block_count().cmp(&x.block_count()).then_with(|| x.blocks.cmp(&y.blocks)));
    let index: HashMap<Vec<usize>, usize> = all.iter().enumerate().map(|(i, c)| (c.blocks.clone(), i)).collect();
    let lattice = FiniteLattice::from_order(all.len(), |i, j| all[i].refines(&all[j]))?;
    Ok(CongruenceLattice { congruences: all, index, lattice })
}

/// Simple: exactly two congruences.
pub fn is_simple(l: &FiniteLattice) -> bool {
    if l.size() < 2 {
        return false;
    }
    let full = Congruence::full(l.size());
    l.covers().iter().all(|&(a, b)| principal_congruence(l, a, b) == full)
}

/// `L/θ` together with the projection map `L → L/θ`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub lattice: FiniteLattice,
    pub projection: Vec<usize>,
    /// For each quotient element, the representative in `L`.
    pub representatives: Vec<usize>,
}

pub fn quotient(l: &FiniteLattice, theta: &Congruence) -> Result<Quotient> {
    if theta.size() != l.size() {
        return Err(LatticeError::NotACongruence("size mismatch".into()));
    }
    if let Some((x, y, z)) = theta.compatibility_witness(l) {
        return Err(LatticeError::NotACongruence(format!("({x},{y}) not preserved by {z}")));
    }
    let reps: Vec<usize> = (0..l.size()).filter(|&i| theta.block_of(i) == i).collect();
    let mut pos = vec![0; l.size()];
    for (k, &r) in reps.iter().enumerate() {
        pos[r] = k;
    }
    let projection: Vec<usize> = (0..l.size()).map(|i| pos[theta.block_of(i)]).collect();
    let lattice = FiniteLattice::from_order(reps.len(), |i, j| theta.related(l.meet(reps[i], reps[j]), reps[i]))?;
    let lattice = match l.labels() {
        Some(_) => {
            let labels = reps
                .iter()
                .map(|&r| {
                    let members: Vec<String> =
                        (0..l.size()).filter(|&i| theta.block_of(i) == r).map(|i| l.label(i)).collect();
                    format!("[{}]", members.join(","))
                })
                .collect();
            lattice.with_labels(labels)?
        }
        None => lattice,
    };
    Ok(Quotient { lattice, projection, representatives: reps })
}

/// An element map between two lattices checked to preserve meet and join.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeHomomorphism {
    map: Vec<usize>,
    preserves_bottom: bool,
    preserves_top: bool,
}

impl LatticeHomomorphism {
    pub fn new(source: &FiniteLattice, target: &FiniteLattice, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.size() {
            return Err(LatticeError::NotAHomomorphism(format!(
                "map has {} entries, source has {} elements",
                map.len(),
                source.size()
            )));
        }
        for &y in &map {
            target.check_index(y)?;
        }
        for x in 0..source.size() {
            for y in x..source.size() {
                if map[source.meet(x, y)] != target.meet(map[x], map[y]) {
                    return Err(LatticeError::NotAHomomorphism(format!("meet of {x} and {y} not preserved")));
                }
                if map[source.join(x, y)] != target.join(map[x], map[y]) {
                    return Err(LatticeError::NotAHomomorphism(format!("join of {x} and {y} not preserved")));
                }
            }
        }
        let preserves_bottom = map[source.bottom()] == target.bottom();
        let preserves_top = map[source.top()] == target.top();
        Ok(LatticeHomomorphism { map, preserves_bottom, preserves_top })
    }

    pub fn identity(l: &FiniteLattice) -> Self {
        LatticeHomomorphism { map: (0..l.size()).collect(), preserves_bottom: true, preserves_top: true }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn preserves_bottom(&self) -> bool {
        self.preserves_bottom
    }

    pub fn preserves_top(&self) -> bool {
        self.preserves_top
    }

    pub fn is_injective(&self) -> bool {
        let mut m = self.map.clone();
        m.sort_unstable();
        m.windows(2).all(|w| w[0] != w[1])
    }

    /// `self` followed by `then`.
    pub fn compose(&self, then: &LatticeHomomorphism) -> LatticeHomomorphism {
        let map: Vec<usize> = self.map.iter().map(|&x| then.map[x]).collect();
        LatticeHomomorphism {
            map,
            preserves_bottom: self.preserves_bottom && then.preserves_bottom,
            preserves_top: self.preserves_top && then.preserves_top,
        }
    }
}

/// `Con f` as a map between congruence indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcMap {
    images: Vec<usize>,
}

impl ConcMap {
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_injective(&self) -> bool {
        let mut m = self.images.clone();
        m.sort_unstable();
        m.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_surjective(&self, target: &CongruenceLattice) -> bool {
        let mut hit = vec![false; target.len()];
        for &i in &self.images {
            hit[i] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self, target: &CongruenceLattice) -> bool {
        self.is_injective() && self.is_surjective(target)
    }

    /// The image is a down-set of `Con` of the target (closed under joins
    /// because the map is a join-homomorphism).
    pub fn image_is_ideal(&self, target: &CongruenceLattice) -> bool {
        let tl = target.lattice();
        let mut in_image = vec![false; target.len()];
        for &i in &self.images {
            in_image[i] = true;
        }
        self.images.iter().all(|&i| tl.poset().down_set(i).iter().all(|j| in_image[j]))
    }

    /// Preserves the zero and binary joins.
    pub fn is_join_zero_homomorphism(&self, source: &CongruenceLattice, target: &CongruenceLattice) -> bool {
        let sl = source.lattice();
        let tl = target.lattice();
        if self.images[sl.bottom()] != tl.bottom() {
            return false;
        }
        (0..sl.size())
            .all(|i| (0..sl.size()).all(|j| self.images[sl.join(i, j)] == tl.join(self.images[i], self.images[j])))
    }
}

/// `Con f`: each source congruence goes to the target congruence generated
/// by the image pairs.
pub fn conc_of_hom(
    source: &FiniteLattice,
    target: &FiniteLattice,
    f: &LatticeHomomorphism,
    con_source: &CongruenceLattice,
    con_target: &CongruenceLattice,
) -> ConcMap {
    debug_assert_eq!(f.map().len(), source.size());
    let images = con_source
        .congruences()
        .iter()
        .map(|alpha| {
            let pairs: Vec<(usize, usize)> = (0..alpha.size())
                .filter(|&x| alpha.block_of(x) != x)
                .map(|x| (f.apply(x), f.apply(alpha.block_of(x))))
                .collect();
            let beta = congruence_generated(target, &pairs);
            con_target.index_of(&beta).expect("generated congruence is listed")
        })
        .collect();
    ConcMap { images }
}

/// A subset of a lattice closed under meet and join, with its own lattice
/// structure and the inclusion map.
#[derive(Clone, Debug)]
pub struct Sublattice {
    /// Host indices, ascending.
    pub elements: Vec<usize>,
    pub lattice: FiniteLattice,
    pub inclusion: LatticeHomomorphism,
}

impl Sublattice {
    pub fn new(host: &FiniteLattice, elements: &[usize]) -> Result<Self> {
        let mut elems = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if elems.is_empty() {
            return Err(LatticeError::Empty);
        }
        for &e in &elems {
            host.check_index(e)?;
        }
        for &x in &elems {
            for &y in &elems {
                for z in [host.meet(x, y), host.join(x, y)] {
                    if elems.binary_search(&z).is_err() {
                        return Err(LatticeError::InvalidParameter(format!("subset not closed: {x} and {y} give {z}")));
                    }
                }
            }
        }
        let lattice = FiniteLattice::from_order(elems.len(), |i, j| host.leq(elems[i], elems[j]))?;
        let lattice = match host.labels() {
            Some(_) => lattice.with_labels(elems.iter().map(|&e| host.label(e)).collect())?,
            None => lattice,
        };
        let inclusion = LatticeHomomorphism::new(&lattice, host, elems.clone())?;
        Ok(Sublattice { elements: elems, lattice, inclusion })
    }
}

/// `K` is a congruence-preserving extension of the sublattice on `elements`.
pub fn is_congruence_preserving_extension(k: &FiniteLattice, elements: &[usize]) -> Result<bool> {
    let sub = Sublattice::new(k, elements)?;
    let con_sub = congruence_lattice(&sub.lattice)?;
    let con_k = congruence_lattice(k)?;
    let m = conc_of_hom(&sub.lattice, k, &sub.inclusion, &con_sub, &con_k);
    Ok(m.is_bijective(&con_k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boolean, chain, m_n, n5, stacked_diamonds};
    use crate::order::are_isomorphic;

    /// Every partition of `0..n` as a block assignment (restricted growth strings).
    fn all_partitions(n: usize) -> Vec<Vec<usize>> {
        fn rec(i: usize, n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
            if i == n {
                out.push(cur.clone());
                return;
            }
            for b in 0..=max + 1 {
                cur.push(b);
                rec(i + 1, n, cur, max.max(b), out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        let mut cur = vec![0];
        rec(1, n, &mut cur, 0, &mut out);
        out
    }

    fn brute_force_congruences(l: &FiniteLattice) -> Vec<Congruence> {
        all_partitions(l.size()).into_iter().filter_map(|p| Congruence::from_assignment(l, &p).ok()).collect()
    }

    #[test]
    fn principal_examples() {
        let m3 = m_n(3).unwrap();
        assert!(principal_congruence(&m3, 0, 1).is_full());
        assert!(principal_congruence(&m3, 2, 2).is_identity());
        let c3 = chain(3).unwrap();
        assert_eq!(principal_congruence(&c3, 0, 1).block_list(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn principal_is_least_against_brute_force() {
        for l in [m_n(3).unwrap(), n5(), boolean(3).unwrap(), chain(4).unwrap(), stacked_diamonds(3, 3).unwrap()] {
            let all = brute_force_congruences(&l);
            for a in 0..l.size() {
                for b in l.poset().up_set(a).iter() {
                    let p = principal_congruence(&l, a, b);
                    assert!(all.contains(&p));
                    for c in all.iter().filter(|c| c.related(a, b)) {
                        assert!(p.refines(c));
                    }
                }
            }
            let con = congruence_lattice(&l).unwrap();
            assert_eq!(con.len(), all.len());
        }
    }

    #[test]
    fn congruence_lattice_examples() {
        for n in 3..=6 {
            let con = congruence_lattice(&m_n(n).unwrap()).unwrap();
            assert_eq!(con.len(), 2);
        }
        for k in 1..=4 {
            let con = congruence_lattice(&chain(k + 1).unwrap()).unwrap();
            assert!(are_isomorphic(con.lattice(), &boolean(k).unwrap()));
        }
        let con = congruence_lattice(&boolean(2).unwrap()).unwrap();
        assert!(are_isomorphic(con.lattice(), &boolean(2).unwrap()));
        assert!(congruence_lattice(&n5()).unwrap().boolean_rank().is_none());
        assert!(matches!(congruence_lattice_capped(&chain(5).unwrap(), 8), Err(LatticeError::SizeCapExceeded { .. })));
    }

    #[test]
    fn simplicity() {
        assert!(is_simple(&m_n(3).unwrap()));
        assert!(!is_simple(&chain(3).unwrap()));
        assert!(!is_simple(&chain(1).unwrap()));
        assert!(is_simple(&chain(2).unwrap()));
    }

    #[test]
    fn quotients() {
        let l = n5();
        let id = quotient(&l, &Congruence::identity(5)).unwrap();
        assert!(are_isomorphic(&id.lattice, &l));
        let full = quotient(&l, &Congruence::full(5)).unwrap();
        assert_eq!(full.lattice.size(), 1);
        assert!(quotient(&l, &Congruence { blocks: vec![0, 0, 2, 3, 4] }).is_err());
    }

    #[test]
    fn stacked_quotient_collapsing_upper_diamond() {
        // 0, a1..a3, c, b1..b3, 1: collapse [c, 1].
        let l = stacked_diamonds(3, 3).unwrap();
        let theta = principal_congruence(&l, 4, 5);
        assert_eq!(theta.block_list(), vec![vec![0], vec![1], vec![2], vec![3], vec![4, 5, 6, 7, 8]]);
        let q = quotient(&l, &theta).unwrap();
        assert!(are_isomorphic(&q.lattice, &m_n(3).unwrap()));
    }

    #[test]
    fn homomorphism_checks() {
        let c2 = chain(2).unwrap();
        let m3 = m_n(3).unwrap();
        let f = LatticeHomomorphism::new(&c2, &m3, vec![0, 4]).unwrap();
        assert!(f.preserves_bottom() && f.preserves_top());
        assert!(LatticeHomomorphism::new(&boolean(2).unwrap(), &m3, vec![0, 1, 1, 4]).is_err());
        let id = LatticeHomomorphism::identity(&m3);
        let con = congruence_lattice(&m3).unwrap();
        let m = conc_of_hom(&m3, &m3, &id, &con, &con);
        assert_eq!(m.images(), &[0, 1]);
    }

    #[test]
    fn cpe_trivial_cases() {
        let l = n5();
        assert!(is_congruence_preserving_extension(&l, &[0, 1, 2, 3, 4]).unwrap());
        let m3 = m_n(3).unwrap();
        assert!(is_congruence_preserving_extension(&m3, &[0, 4]).unwrap());
        assert!(is_congruence_preserving_extension(&m3, &[0, 1, 2]).is_err());
    }
}
