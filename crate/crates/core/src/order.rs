//! Finite posets and lattices.
//!
//! Elements are dense indices `0..size`. The order relation is kept as a
//! pair of bit matrices (up-sets and down-sets) and a validated lattice
//! carries full `size × size` meet and join tables, so every order query
//! downstream is a table lookup.

use std::collections::VecDeque;

use crate::bits::BitSet;
use crate::error::{LatticeError, Result};
use crate::search::{self, MapMode};

/// Default cap on the number of chains returned by [`FiniteLattice::maximal_chains`].
pub const DEFAULT_CHAIN_CAP: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct FinitePoset {
    size: usize,
    covers: Vec<(usize, usize)>,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl FinitePoset {
    /// Builds a poset from its covering relation, rejecting cycles and
    /// pairs that are not genuine covers of the generated order.
    pub fn from_covers(size: usize, covers: &[(usize, usize)]) -> Result<Self> {
        if size == 0 {
            return Err(LatticeError::Empty);
        }
        let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(covers.len());
        for &(a, b) in covers {
            for i in [a, b] {
                if i >= size {
                    return Err(LatticeError::IndexOutOfRange { index: i, size });
                }
            }
            if a == b {
                return Err(LatticeError::CyclicCovers(a));
            }
            pairs.push((a, b));
        }
        pairs.sort_unstable();
        pairs.dedup();

        let mut succ = vec![Vec::new(); size];
        let mut indeg = vec![0usize; size];
        for &(a, b) in &pairs {
            succ[a].push(b);
            indeg[b] += 1;
        }
        // Kahn's algorithm; the resulting order is a linear extension.
        let mut queue: VecDeque<usize> = (0..size).filter(|&i| indeg[i] == 0).collect();
        let mut topo = Vec::with_capacity(size);
        while let Some(x) = queue.pop_front() {
            topo.push(x);
            for &y in &succ[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    queue.push_back(y);
                }
            }
        }
        if topo.len() < size {
            let culprit = (0..size).find(|&i| indeg[i] > 0).unwrap_or(0);
            return Err(LatticeError::CyclicCovers(culprit));
        }

        let mut down: Vec<BitSet> = (0..size)
            .map(|i| {
                let mut s = BitSet::new(size);
                s.insert(i);
                s
            })
            .collect();
        for &x in &topo {
            for &y in &succ[x] {
                let dx = down[x].clone();
                down[y].union_with(&dx);
            }
        }
        let mut up = vec![BitSet::new(size); size];
        for (b, row) in down.iter().enumerate() {
            for a in row.iter() {
                up[a].insert(b);
            }
        }
        for &(a, b) in &pairs {
            if up[a].intersection(&down[b]).count() != 2 {
                return Err(LatticeError::NotACover { lower: a, upper: b });
            }
        }
        Ok(Self::assemble(size, pairs, up, down))
    }

    /// Builds a poset from an order predicate. The predicate must describe a
    /// partial order; reflexivity, antisymmetry and transitivity are checked.
    pub fn from_order(size: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        if size == 0 {
            return Err(LatticeError::Empty);
        }
        let mut up = vec![BitSet::new(size); size];
        let mut down = vec![BitSet::new(size); size];
        for a in 0..size {
            for b in 0..size {
                if leq(a, b) {
                    up[a].insert(b);
                    down[b].insert(a);
                }
            }
        }
        for a in 0..size {
            if !up[a].contains(a) {
                return Err(LatticeError::InvalidParameter(format!("order is not reflexive at {a}")));
            }
            for b in up[a].iter() {
                if b != a && up[b].contains(a) {
                    return Err(LatticeError::CyclicCovers(a));
                }
                if !up[b].is_subset(&up[a]) {
                    return Err(LatticeError::InvalidParameter(format!("order is not transitive through {a} <= {b}")));
                }
            }
        }
        let mut covers = Vec::new();
        for a in 0..size {
            for b in up[a].iter() {
                if a != b && up[a].intersection(&down[b]).count() == 2 {
                    covers.push((a, b));
                }
            }
        }
        Ok(Self::assemble(size, covers, up, down))
    }

    fn assemble(size: usize, covers: Vec<(usize, usize)>, up: Vec<BitSet>, down: Vec<BitSet>) -> Self {
        let mut upper_covers = vec![Vec::new(); size];
        let mut lower_covers = vec![Vec::new(); size];
        for &(a, b) in &covers {
            upper_covers[a].push(b);
            lower_covers[b].push(a);
        }
        for v in upper_covers.iter_mut().chain(lower_covers.iter_mut()) {
            v.sort_unstable();
        }
        FinitePoset { size, covers, up, down, upper_covers, lower_covers, labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(LatticeError::InvalidParameter(format!("{} labels for {} elements", labels.len(), self.size)));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Covering pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.upper_covers[a].binary_search(&b).is_ok()
    }

    pub fn up_set(&self, a: usize) -> &BitSet {
        &self.up[a]
    }

    pub fn down_set(&self, a: usize) -> &BitSet {
        &self.down[a]
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper_covers[a]
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower_covers[a]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of an element, falling back to its index.
    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    /// Elements in a linear extension of the order (ascending down-set size).
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.size).collect();
        v.sort_by_key(|&i| (self.down[i].count(), i));
        v
    }

    /// Height of each element: length of the longest chain from a minimal element.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.size];
        for x in self.linear_extension() {
            h[x] = self.lower_covers[x].iter().map(|&y| h[y] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Every element has at most two lower covers.
    pub fn is_2_ladder(&self) -> bool {
        self.lower_covers.iter().all(|c| c.len() <= 2)
    }
}

#[derive(Clone, Debug)]
pub struct FiniteLattice {
    poset: FinitePoset,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

/// Checks that a poset is a lattice and computes its operation tables.
pub fn validate_lattice(p: FinitePoset) -> Result<FiniteLattice> {
    let n = p.size;
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in a..n {
            let lower = p.down[a].intersection(&p.down[b]);
            let m =
                lower.iter().find(|&c| p.down[c] == lower).ok_or(LatticeError::NotALattice { a, b, kind: "meet" })?;
            let upper = p.up[a].intersection(&p.up[b]);
            let j = upper.iter().find(|&c| p.up[c] == upper).ok_or(LatticeError::NotALattice { a, b, kind: "join" })?;
            meet[a * n + b] = m;
            meet[b * n + a] = m;
            join[a * n + b] = j;
            join[b * n + a] = j;
        }
    }
    let bottom = (0..n).find(|&i| p.up[i].count() == n).expect("finite lattice has a bottom");
    let top = (0..n).find(|&i| p.down[i].count() == n).expect("finite lattice has a top");
    Ok(FiniteLattice { poset: p, meet, join, bottom, top })
}

impl FiniteLattice {
    pub fn from_covers(size: usize, covers: &[(usize, usize)]) -> Result<Self> {
        validate_lattice(FinitePoset::from_covers(size, covers)?)
    }

    pub fn from_order(size: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        validate_lattice(FinitePoset::from_order(size, leq)?)
    }

    pub fn with_labels(self, labels: Vec<String>) -> Result<Self> {
        let FiniteLattice { poset, meet, join, bottom, top } = self;
        Ok(FiniteLattice { poset: poset.with_labels(labels)?, meet, join, bottom, top })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn size(&self) -> usize {
        self.poset.size
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.poset.size + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.poset.size + b]
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.poset.lt(a, b)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        self.poset.covers()
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.poset.is_cover(a, b)
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        self.poset.upper_covers(a)
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        self.poset.lower_covers(a)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.poset.labels()
    }

    pub fn label(&self, a: usize) -> String {
        self.poset.label(a)
    }

    pub fn check_index(&self, a: usize) -> Result<()> {
        if a < self.size() {
            Ok(())
        } else {
            Err(LatticeError::IndexOutOfRange { index: a, size: self.size() })
        }
    }

    /// Elements of the interval `[a, b]`, ascending.
    pub fn interval(&self, a: usize, b: usize) -> Vec<usize> {
        self.poset.up_set(a).intersection(self.poset.down_set(b)).iter().collect()
    }

    /// Longest chain length (number of covers) between `a` and `b`.
    pub fn length(&self, a: usize, b: usize) -> Result<usize> {
        self.check_index(a)?;
        self.check_index(b)?;
        if !self.leq(a, b) {
            return Err(LatticeError::NotComparable { a, b });
        }
        let mut best = vec![None::<usize>; self.size()];
        best[a] = Some(0);
        let inside = self.poset.up_set(a).intersection(self.poset.down_set(b));
        for x in self.poset.linear_extension() {
            if !inside.contains(x) {
                continue;
            }
            if let Some(d) = best[x] {
                for &y in self.upper_covers(x) {
                    if inside.contains(y) {
                        best[y] = Some(best[y].map_or(d + 1, |e| e.max(d + 1)));
                    }
                }
            }
        }
        Ok(best[b].expect("b reachable from a"))
    }

    /// Length of the whole lattice.
    pub fn height(&self) -> usize {
        self.length(self.bottom, self.top).expect("bottom <= top")
    }

    pub fn maximal_chains(&self, a: usize, b: usize) -> Result<Vec<Vec<usize>>> {
        self.maximal_chains_capped(a, b, DEFAULT_CHAIN_CAP)
    }

    /// All maximal chains of `[a, b]`, bottom to top, in lexicographic order.
    pub fn maximal_chains_capped(&self, a: usize, b: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
        self.check_index(a)?;
        self.check_index(b)?;
        if !self.leq(a, b) {
            return Err(LatticeError::NotComparable { a, b });
        }
        let mut out = Vec::new();
        let mut path = vec![a];
        self.chains_from(b, &mut path, &mut out, cap)?;
        Ok(out)
    }

    fn chains_from(&self, b: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, cap: usize) -> Result<()> {
        let x = *path.last().unwrap();
        if x == b {
            if out.len() >= cap {
                return Err(LatticeError::ChainCapExceeded { cap });
            }
            out.push(path.clone());
            return Ok(());
        }
        for &y in self.upper_covers(x) {
            if self.leq(y, b) {
                path.push(y);
                self.chains_from(b, path, out, cap)?;
                path.pop();
            }
        }
        Ok(())
    }

    /// First triple `(x, y, z)` with `x <= z` and `x ∨ (y ∧ z) != (x ∨ y) ∧ z`.
    pub fn modular_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.size();
        for x in 0..n {
            for z in self.poset.up_set(x).iter() {
                for y in 0..n {
                    if self.join(x, self.meet(y, z)) != self.meet(self.join(x, y), z) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_modular(&self) -> bool {
        self.modular_witness().is_none()
    }

    /// A sublattice isomorphic to N_5, returned as `[u, x, y, z, v]` with
    /// `u < y < z < v`, `x ∧ y = x ∧ z = u` and `x ∨ y = x ∨ z = v`.
    pub fn find_n5(&self) -> Option<[usize; 5]> {
        let n = self.size();
        for y in 0..n {
            for z in self.poset.up_set(y).iter() {
                if z == y {
                    continue;
                }
                for x in 0..n {
                    let u = self.meet(x, y);
                    let v = self.join(x, y);
                    if self.meet(x, z) == u && self.join(x, z) == v && u != y && v != z {
                        return Some([u, x, y, z, v]);
                    }
                }
            }
        }
        None
    }

    /// First triple violating `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`.
    pub fn distributive_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.size();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributive_witness().is_none()
    }

    pub fn is_2_ladder(&self) -> bool {
        self.poset.is_2_ladder()
    }

    /// The order dual: same elements, order reversed.
    pub fn dual(&self) -> FiniteLattice {
        let n = self.size();
        let mut poset = FinitePoset::assemble(
            n,
            {
                let mut c: Vec<_> = self.covers().iter().map(|&(a, b)| (b, a)).collect();
                c.sort_unstable();
                c
            },
            self.poset.down.clone(),
            self.poset.up.clone(),
        );
        poset.labels = self.poset.labels.clone();
        FiniteLattice { poset, meet: self.join.clone(), join: self.meet.clone(), bottom: self.top, top: self.bottom }
    }

    /// Renames element `i` to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<FiniteLattice> {
        let n = self.size();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(LatticeError::InvalidParameter("relabeling is not a permutation".into()));
        }
        let covers: Vec<_> = self.covers().iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        let l = FiniteLattice::from_covers(n, &covers)?;
        match self.labels() {
            Some(labels) => {
                let mut out = vec![String::new(); n];
                for (i, s) in labels.iter().enumerate() {
                    out[perm[i]] = s.clone();
                }
                l.with_labels(out)
            }
            None => Ok(l),
        }
    }

    /// Checks the lattice axioms directly on the tables.
    pub fn check_axioms(&self) -> bool {
        let n = self.size();
        for a in 0..n {
            if self.meet(a, a) != a || self.join(a, a) != a {
                return false;
            }
            for b in 0..n {
                if self.meet(a, b) != self.meet(b, a) || self.join(a, b) != self.join(b, a) {
                    return false;
                }
                if self.meet(a, self.join(a, b)) != a || self.join(a, self.meet(a, b)) != a {
                    return false;
                }
                if self.leq(a, b) != (self.meet(a, b) == a) {
                    return false;
                }
                for c in 0..n {
                    if self.meet(a, self.meet(b, c)) != self.meet(self.meet(a, b), c)
                        || self.join(a, self.join(b, c)) != self.join(self.join(a, b), c)
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// A lattice isomorphism `a -> b` as an image vector, or `None`.
///
/// The search assigns elements of `a` in index order and tries images in
/// ascending order, so the returned map is the lexicographically smallest.
pub fn find_isomorphism(a: &FiniteLattice, b: &FiniteLattice) -> Option<Vec<usize>> {
    search::first_map(a, b, MapMode::Isomorphism, &[])
}

/// Calls `f` on every isomorphism `a -> b` until it returns `false`.
pub fn for_each_isomorphism(a: &FiniteLattice, b: &FiniteLattice, f: impl FnMut(&[usize]) -> bool) {
    search::for_each_map(a, b, MapMode::Isomorphism, &[], f)
}

pub fn are_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    find_isomorphism(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boolean, chain, m_n, n5};

    fn antichain2() -> Result<FiniteLattice> {
        FiniteLattice::from_covers(2, &[])
    }

    #[test]
    fn validate_degenerate_and_failures() {
        let one = FiniteLattice::from_covers(1, &[]).unwrap();
        assert_eq!(one.size(), 1);
        assert_eq!(one.bottom(), one.top());
        assert!(matches!(antichain2(), Err(LatticeError::NotALattice { .. })));
        assert!(matches!(FiniteLattice::from_covers(2, &[(0, 1), (1, 0)]), Err(LatticeError::CyclicCovers(_))));
        assert!(matches!(
            FiniteLattice::from_covers(3, &[(0, 1), (1, 2), (0, 2)]),
            Err(LatticeError::NotACover { lower: 0, upper: 2 })
        ));
        assert!(matches!(FiniteLattice::from_covers(0, &[]), Err(LatticeError::Empty)));
    }

    #[test]
    fn m3_from_covers() {
        let l = FiniteLattice::from_covers(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap();
        assert_eq!(l.size(), 5);
        assert_eq!(l.meet(1, 2), 0);
        assert_eq!(l.join(1, 3), 4);
        assert!(l.check_axioms());
    }

    #[test]
    fn lengths() {
        assert_eq!(m_n(5).unwrap().height(), 2);
        assert_eq!(chain(4).unwrap().height(), 3);
        let l = chain(3).unwrap();
        assert!(matches!(l.length(2, 0), Err(LatticeError::NotComparable { .. })));
    }

    #[test]
    fn chains_enumeration() {
        assert_eq!(chain(2).unwrap().maximal_chains(0, 1).unwrap(), vec![vec![0, 1]]);
        let m3 = m_n(3).unwrap();
        let ch = m3.maximal_chains(m3.bottom(), m3.top()).unwrap();
        assert_eq!(ch, vec![vec![0, 1, 4], vec![0, 2, 4], vec![0, 3, 4]]);
        let n = n5();
        // u=0, x=1, y=2, z=3, v=4
        assert_eq!(n.maximal_chains(0, 4).unwrap(), vec![vec![0, 1, 4], vec![0, 2, 3, 4]]);
        assert!(matches!(m3.maximal_chains_capped(0, 4, 2), Err(LatticeError::ChainCapExceeded { cap: 2 })));
    }

    #[test]
    fn modularity_and_distributivity() {
        assert!(m_n(4).unwrap().is_modular());
        let n = n5();
        let (x, y, z) = n.modular_witness().unwrap();
        assert!(n.leq(x, z));
        assert_ne!(n.join(x, n.meet(y, z)), n.meet(n.join(x, y), z));
        assert!(n.find_n5().is_some());
        assert!(m_n(4).unwrap().find_n5().is_none());
        assert!(boolean(3).unwrap().is_distributive());
        assert!(!m_n(3).unwrap().is_distributive());
        assert!(chain(5).unwrap().is_distributive());
    }

    #[test]
    fn two_ladders() {
        assert!(chain(4).unwrap().is_2_ladder());
        assert!(boolean(2).unwrap().is_2_ladder());
        assert!(!boolean(3).unwrap().is_2_ladder());
    }

    #[test]
    fn duality() {
        for l in [m_n(3).unwrap(), n5(), boolean(3).unwrap(), chain(4).unwrap()] {
            let dd = l.dual().dual();
            assert_eq!(dd.covers(), l.covers());
            assert!(are_isomorphic(&l.dual(), &l));
            assert!(l.dual().check_axioms());
        }
    }

    #[test]
    fn isomorphisms() {
        assert!(find_isomorphism(&m_n(3).unwrap(), &m_n(4).unwrap()).is_none());
        assert!(find_isomorphism(&chain(4).unwrap(), &boolean(2).unwrap()).is_none());
        let m3 = m_n(3).unwrap();
        assert_eq!(find_isomorphism(&m3, &m3).unwrap(), vec![0, 1, 2, 3, 4]);
        let mut count = 0;
        for_each_isomorphism(&m3, &m3, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 6);
    }

    #[test]
    fn relabel_roundtrip() {
        let l = n5();
        let perm = vec![4, 2, 0, 3, 1];
        let r = l.relabel(&perm).unwrap();
        let iso = find_isomorphism(&l, &r).unwrap();
        assert_eq!(iso, perm);
        assert!(l.relabel(&[0, 0, 1, 2, 3]).is_err());
    }
}
