//! Subspaces of `F^n` in reduced row-echelon form and the lattice `Sub(F^n)`.

use std::collections::HashMap;

use super::field::FiniteField;
use crate::bits::BitSet;
use crate::error::{LatticeError, Result};
use crate::order::FiniteLattice;

/// Default bound on `q^n` for subspace enumeration.
pub const DEFAULT_VECTOR_CAP: usize = 4096;
/// Bound on the number of subspaces (the lattice keeps quadratic tables).
pub const MAX_SUBSPACES: usize = 2048;

/// Row-reduces `rows` in place and drops zero rows; pivots ascend.
pub fn rref(f: &FiniteField, rows: &mut Vec<Vec<usize>>) {
    let n = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let s = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, s);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for j in 0..n {
                    let t = f.mul(factor, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], t);
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
}

/// A subspace of `F^n`, stored as its canonical reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    rows: Vec<Vec<usize>>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { n, rows: Vec::new() }
    }

    pub fn whole(n: usize) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| usize::from(i == j)).collect()).collect();
        Subspace { n, rows }
    }

    /// Row space of `vectors`.
    pub fn span(f: &FiniteField, n: usize, vectors: &[Vec<usize>]) -> Result<Self> {
        for v in vectors {
            if v.len() != n || v.iter().any(|&x| x >= f.order()) {
                return Err(LatticeError::InvalidParameter(format!("bad vector {v:?} for F^{n}")));
            }
        }
        let mut rows = vectors.to_vec();
        rref(f, &mut rows);
        Ok(Subspace { n, rows })
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn sum(&self, f: &FiniteField, other: &Subspace) -> Subspace {
        let mut rows: Vec<_> = self.rows.iter().chain(&other.rows).cloned().collect();
        rref(f, &mut rows);
        Subspace { n: self.n, rows }
    }

    /// All vectors of the subspace, encoded as base-`q` integers.
    pub fn vectors(&self, f: &FiniteField) -> Vec<usize> {
        let q = f.order();
        let d = self.dim();
        let mut out = Vec::with_capacity(q.pow(d as u32));
        let mut coeffs = vec![0usize; d];
        loop {
            let mut v = vec![0usize; self.n];
            for (c, row) in coeffs.iter().zip(&self.rows) {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = f.add(*x, f.mul(*c, r));
                }
            }
            out.push(encode(q, &v));
            let mut i = 0;
            while i < d {
                coeffs[i] += 1;
                if coeffs[i] < q {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
        out
    }

    pub fn intersection(&self, f: &FiniteField, other: &Subspace) -> Subspace {
        let q = f.order();
        let mine: BitSet = self.vectors(f).into_iter().collect_with_len(q.pow(self.n as u32));
        let common: Vec<Vec<usize>> =
            other.vectors(f).into_iter().filter(|&v| mine.contains(v)).map(|v| decode(q, self.n, v)).collect();
        let mut rows = common;
        rref(f, &mut rows);
        Subspace { n: self.n, rows }
    }

    pub fn contains(&self, f: &FiniteField, other: &Subspace) -> bool {
        self.sum(f, other).dim() == self.dim()
    }

    fn display(&self) -> String {
        if self.rows.is_empty() {
            return "0".into();
        }
        let rows: Vec<String> =
            self.rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
        format!("<{}>", rows.join("; "))
    }
}

trait CollectBits {
    fn collect_with_len(self, len: usize) -> BitSet;
}

impl<I: Iterator<Item = usize>> CollectBits for I {
    fn collect_with_len(self, len: usize) -> BitSet {
        let mut b = BitSet::new(len);
        for i in self {
            b.insert(i);
        }
        b
    }
}

fn encode(q: usize, v: &[usize]) -> usize {
    v.iter().rev().fold(0, |acc, &x| acc * q + x)
}

fn decode(q: usize, n: usize, mut e: usize) -> Vec<usize> {
    (0..n)
        .map(|_| {
            let x = e % q;
            e /= q;
            x
        })
        .collect()
}

/// Number of `d`-dimensional subspaces of `F^n` (Gaussian binomial).
pub fn gaussian_count(f: &FiniteField, n: usize, d: usize) -> u128 {
    if d > n {
        return 0;
    }
    let q = f.order() as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..d {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// `Sub(F^n)` with its elements in canonical form and their dimensions.
///
/// Elements are ordered by dimension, then pivot columns, then free entries,
/// so the bottom is index 0 and the top is the last index.
#[derive(Clone, Debug)]
pub struct SubspaceLattice {
    pub field: FiniteField,
    pub n: usize,
    pub subspaces: Vec<Subspace>,
    pub dims: Vec<usize>,
    pub lattice: FiniteLattice,
    index: HashMap<Subspace, usize>,
}

impl SubspaceLattice {
    pub fn index_of(&self, s: &Subspace) -> Option<usize> {
        self.index.get(s).copied()
    }
}

/// Canonical echelon forms of dimension `d` with pivot columns `pivots`.
fn echelon_forms(q: usize, n: usize, pivots: &[usize], out: &mut Vec<Subspace>) {
    let free: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .flat_map(|(r, &c)| ((c + 1)..n).filter(|j| !pivots.contains(j)).map(move |j| (r, j)))
        .collect();
    let mut vals = vec![0usize; free.len()];
    loop {
        let mut rows = vec![vec![0usize; n]; pivots.len()];
        for (r, &c) in pivots.iter().enumerate() {
            rows[r][c] = 1;
        }
        for (&(r, j), &v) in free.iter().zip(&vals) {
            rows[r][j] = v;
        }
        out.push(Subspace { n, rows });
        let mut i = 0;
        while i < vals.len() {
            vals[i] += 1;
            if vals[i] < q {
                break;
            }
            vals[i] = 0;
            i += 1;
        }
        if i == vals.len() {
            break;
        }
    }
}

fn combinations(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            cur.push(c);
            rec(c + 1, n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, d, &mut Vec::new(), &mut out);
    out
}

pub fn subspace_lattice(f: &FiniteField, n: usize) -> Result<SubspaceLattice> {
    subspace_lattice_capped(f, n, DEFAULT_VECTOR_CAP)
}

/// `Sub(F^n)`; meet is intersection and join is sum.
pub fn subspace_lattice_capped(f: &FiniteField, n: usize, vector_cap: usize) -> Result<SubspaceLattice> {
    if n == 0 {
        return Err(LatticeError::InvalidParameter("ambient dimension must be >= 1".into()));
    }
    let q = f.order();
    let vectors = q.checked_pow(n as u32).filter(|&v| v <= vector_cap);
    let Some(vectors) = vectors else {
        return Err(LatticeError::SizeCapExceeded { what: "q^n", cap: vector_cap });
    };
    let total: u128 = (0..=n).map(|d| gaussian_count(f, n, d)).sum();
    if total > MAX_SUBSPACES as u128 {
        return Err(LatticeError::SizeCapExceeded { what: "subspace count", cap: MAX_SUBSPACES });
    }
    let mut subspaces = Vec::with_capacity(total as usize);
    for d in 0..=n {
        for pivots in combinations(n, d) {
            echelon_forms(q, n, &pivots, &mut subspaces);
        }
    }
    let sets: Vec<BitSet> = subspaces.iter().map(|s| s.vectors(f).into_iter().collect_with_len(vectors)).collect();
    let lattice = FiniteLattice::from_order(subspaces.len(), |i, j| sets[i].is_subset(&sets[j]))?;
    let lattice = lattice.with_labels(subspaces.iter().map(Subspace::display).collect())?;
    let dims = subspaces.iter().map(Subspace::dim).collect();
    let index = subspaces.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    Ok(SubspaceLattice { field: f.clone(), n, subspaces, dims, lattice, index })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::is_simple;
    use crate::constructions::m_n;
    use crate::order::are_isomorphic;

    #[test]
    fn counts_match_gaussian_binomials() {
        for (q, n) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2), (4, 3), (5, 2)] {
            let f = FiniteField::new(q).unwrap();
            let s = subspace_lattice(&f, n).unwrap();
            for d in 0..=n {
                let c = s.dims.iter().filter(|&&x| x == d).count() as u128;
                assert_eq!(c, gaussian_count(&f, n, d), "q={q} n={n} d={d}");
            }
        }
        let f2 = FiniteField::new(2).unwrap();
        assert_eq!(gaussian_count(&f2, 3, 1), 7);
        assert_eq!(gaussian_count(&FiniteField::new(3).unwrap(), 2, 1), 4);
        assert_eq!(gaussian_count(&f2, 5, 0), 1);
        assert_eq!(subspace_lattice(&f2, 3).unwrap().lattice.size(), 16);
    }

    #[test]
    fn meet_is_intersection_and_join_is_sum() {
        for (q, n) in [(2, 3), (3, 2), (4, 2), (3, 3)] {
            let f = FiniteField::new(q).unwrap();
            let s = subspace_lattice(&f, n).unwrap();
            let l = &s.lattice;
            assert_eq!(l.bottom(), 0);
            assert_eq!(l.top(), l.size() - 1);
            for i in 0..l.size() {
                for j in 0..l.size() {
                    let a = &s.subspaces[i];
                    let b = &s.subspaces[j];
                    assert_eq!(s.index_of(&a.sum(&f, b)), Some(l.join(i, j)));
                    assert_eq!(s.index_of(&a.intersection(&f, b)), Some(l.meet(i, j)));
                    assert_eq!(l.leq(i, j), b.contains(&f, a));
                }
            }
        }
    }

    #[test]
    fn planes_are_m_q_plus_one() {
        for q in [2, 3, 4, 5] {
            let f = FiniteField::new(q).unwrap();
            let s = subspace_lattice(&f, 2).unwrap();
            assert!(are_isomorphic(&s.lattice, &m_n(q + 1).unwrap()));
        }
    }

    #[test]
    fn modular_simple_and_of_length_n() {
        for (q, n) in [(2, 1), (2, 2), (2, 3), (3, 2), (3, 3), (2, 4)] {
            let f = FiniteField::new(q).unwrap();
            let l = subspace_lattice(&f, n).unwrap().lattice;
            assert!(l.is_modular());
            assert!(is_simple(&l));
            assert_eq!(l.height(), n);
        }
    }

    #[test]
    fn caps() {
        let f = FiniteField::new(2).unwrap();
        assert!(matches!(subspace_lattice(&f, 13), Err(LatticeError::SizeCapExceeded { .. })));
        assert!(subspace_lattice(&f, 0).is_err());
    }

    #[test]
    fn span_normalises() {
        let f = FiniteField::new(3).unwrap();
        let a = Subspace::span(&f, 3, &[vec![2, 2, 0], vec![0, 1, 1]]).unwrap();
        let b = Subspace::span(&f, 3, &[vec![1, 0, 2], vec![1, 1, 0]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert_eq!(Subspace::whole(3).dim(), 3);
        assert!(Subspace::whole(3).contains(&f, &a));
    }
}
