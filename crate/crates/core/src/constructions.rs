//! Built-in lattices and lattice combinators.

use crate::congruence::{LatticeHomomorphism, Sublattice};
use crate::error::{LatticeError, Result};
use crate::order::FiniteLattice;

fn labelled(size: usize, covers: &[(usize, usize)], labels: Vec<String>) -> Result<FiniteLattice> {
    FiniteLattice::from_covers(size, covers)?.with_labels(labels)
}

/// `M_n`: bottom `0`, atoms `a1..an` (indices `1..=n`), top `1` (index `n+1`).
pub fn m_n(n: usize) -> Result<FiniteLattice> {
    if n < 3 {
        return Err(LatticeError::InvalidParameter(format!("M_n needs n >= 3, got {n}")));
    }
    let top = n + 1;
    let mut covers = Vec::with_capacity(2 * n);
    for i in 1..=n {
        covers.push((0, i));
        covers.push((i, top));
    }
    let mut labels = vec!["0".to_string()];
    labels.extend((1..=n).map(|i| format!("a{i}")));
    labels.push("1".into());
    labelled(n + 2, &covers, labels)
}

/// `M_{n,m}`: two diamonds glued along a prime interval.
///
/// Indices: `0`, `a1..an` (`1..=n`), `b1..bm` (`n+1..=n+m`), `1` (`n+m+1`).
/// The lower diamond is `0 < a_i < b1`; the upper one is `an < b_j < 1`, so
/// the shared prime interval is `[an, b1]`. There are `n + m + 2` elements
/// and the length is 3.
pub fn m_nm(n: usize, m: usize) -> Result<FiniteLattice> {
    if n < 3 || m < 3 {
        return Err(LatticeError::InvalidParameter(format!("M_(n,m) needs n, m >= 3, got {n}, {m}")));
    }
    let a = |i: usize| i; // 1..=n
    let b = |j: usize| n + j; // 1..=m
    let top = n + m + 1;
    let mut covers = Vec::new();
    for i in 1..=n {
        covers.push((0, a(i)));
        covers.push((a(i), b(1)));
    }
    for j in 2..=m {
        covers.push((a(n), b(j)));
    }
    for j in 1..=m {
        covers.push((b(j), top));
    }
    let mut labels = vec!["0".to_string()];
    labels.extend((1..=n).map(|i| format!("a{i}")));
    labels.extend((1..=m).map(|j| format!("b{j}")));
    labels.push("1".into());
    labelled(n + m + 2, &covers, labels)
}

/// Two diamonds stacked at a single shared element `c`:
/// `0 < a_i < c < b_j < 1`. Indices `0`, `a1..an`, `c`, `b1..bm`, `1`;
/// `n + m + 3` elements, length 4.
pub fn stacked_diamonds(n: usize, m: usize) -> Result<FiniteLattice> {
    if n < 2 || m < 2 {
        return Err(LatticeError::InvalidParameter(format!("stacked diamonds need n, m >= 2, got {n}, {m}")));
    }
    let c = n + 1;
    let top = n + m + 2;
    let mut covers = Vec::new();
    for i in 1..=n {
        covers.push((0, i));
        covers.push((i, c));
    }
    for j in 1..=m {
        covers.push((c, c + j));
        covers.push((c + j, top));
    }
    let mut labels = vec!["0".to_string()];
    labels.extend((1..=n).map(|i| format!("a{i}")));
    labels.push("c".into());
    labels.extend((1..=m).map(|j| format!("b{j}")));
    labels.push("1".into());
    labelled(n + m + 3, &covers, labels)
}

/// The `k`-element chain `0 < 1 < … < k-1`.
pub fn chain(k: usize) -> Result<FiniteLattice> {
    if k == 0 {
        return Err(LatticeError::InvalidParameter("chain needs at least one element".into()));
    }
    let covers: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
    FiniteLattice::from_covers(k, &covers)
}

/// The Boolean lattice `2^k` on subsets of `{0..k-1}`, element index = bitmask.
pub fn boolean(k: usize) -> Result<FiniteLattice> {
    if k > 16 {
        return Err(LatticeError::InvalidParameter(format!("boolean rank {k} too large")));
    }
    let n = 1usize << k;
    let mut covers = Vec::new();
    for s in 0..n {
        for i in 0..k {
            if s & (1 << i) == 0 {
                covers.push((s, s | (1 << i)));
            }
        }
    }
    FiniteLattice::from_covers(n, &covers)
}

/// `N_5` with elements `u, x, y, z, v` at indices `0..5`:
/// `u < x < v` and `u < y < z < v`.
pub fn n5() -> FiniteLattice {
    labelled(
        5,
        &[(0, 1), (1, 4), (0, 2), (2, 3), (3, 4)],
        ["u", "x", "y", "z", "v"].iter().map(|s| s.to_string()).collect(),
    )
    .expect("N5 is a lattice")
}

/// The 11-element modular lattice of length 4 whose congruence lattice is
/// `2^2` but which is not a congruence-preserving extension of any chain
/// from its bottom `u` to its top `v`.
///
/// Node table (drawing coordinates, index, label):
///
/// | coord   | idx | label |
/// |---------|-----|-------|
/// | (40,0)  | 0   | u     |
/// | (20,20) | 1   | p     |
/// | (60,20) | 2   | q     |
/// | (0,40)  | 3   | l     |
/// | (20,40) | 4   | e     |
/// | (40,40) | 5   | m     |
/// | (60,40) | 6   | f     |
/// | (80,40) | 7   | r     |
/// | (20,60) | 8   | s     |
/// | (60,60) | 9   | t     |
/// | (40,80) | 10  | v     |
///
/// The intervals `[p, s]` and `[q, t]` are diamonds sharing the atom `m`.
pub fn fig_cel() -> FiniteLattice {
    const COVERS: [(usize, usize); 16] = [
        (0, 1),
        (0, 2),
        (1, 3),
        (1, 4),
        (1, 5),
        (2, 5),
        (2, 6),
        (2, 7),
        (3, 8),
        (4, 8),
        (5, 8),
        (5, 9),
        (6, 9),
        (7, 9),
        (8, 10),
        (9, 10),
    ];
    labelled(
        11,
        &COVERS,
        ["u", "p", "q", "l", "e", "m", "f", "r", "s", "t", "v"].iter().map(|s| s.to_string()).collect(),
    )
    .expect("fig_cel is a lattice")
}

/// Direct product; the pair `(a, b)` has index `a + |A|·b`.
pub fn product(a: &FiniteLattice, b: &FiniteLattice) -> Result<FiniteLattice> {
    let na = a.size();
    let n = na * b.size();
    let l = FiniteLattice::from_order(n, |i, j| a.leq(i % na, j % na) && b.leq(i / na, j / na))?;
    let labels = (0..n).map(|i| format!("({},{})", a.label(i % na), b.label(i / na))).collect();
    l.with_labels(labels)
}

/// Iterated product; the empty product is the one-element lattice.
pub fn product_all<'a>(factors: impl IntoIterator<Item = &'a FiniteLattice>) -> Result<FiniteLattice> {
    let mut acc = chain(1)?;
    let mut first = true;
    for f in factors {
        acc = if first { f.clone() } else { product(&acc, f)? };
        first = false;
    }
    Ok(acc)
}

/// Ordinal sum: every element of `lower` lies below every element of `upper`.
/// Elements of `lower` keep their indices; `upper` is shifted by `|lower|`.
pub fn ordinal_sum(lower: &FiniteLattice, upper: &FiniteLattice) -> Result<FiniteLattice> {
    let nl = lower.size();
    let n = nl + upper.size();
    let mut covers: Vec<(usize, usize)> = lower.covers().to_vec();
    covers.extend(upper.covers().iter().map(|&(x, y)| (x + nl, y + nl)));
    covers.push((lower.top(), upper.bottom() + nl));
    let l = FiniteLattice::from_covers(n, &covers)?;
    let mut labels: Vec<String> = (0..nl).map(|i| lower.label(i)).collect();
    labels.extend((0..upper.size()).map(|i| format!("{}'", upper.label(i))));
    l.with_labels(labels)
}

/// `L' = L ⊔ {0, 1}` with a new bottom (index 0) and a new top (last index),
/// together with the inclusion `L → L'`.
pub fn bounded_extension(l: &FiniteLattice) -> Result<(FiniteLattice, LatticeHomomorphism)> {
    let n = l.size();
    let mut covers: Vec<(usize, usize)> = l.covers().iter().map(|&(a, b)| (a + 1, b + 1)).collect();
    covers.push((0, l.bottom() + 1));
    covers.push((l.top() + 1, n + 1));
    let mut labels = vec!["⊥".to_string()];
    labels.extend((0..n).map(|i| l.label(i)));
    labels.push("⊤".into());
    let ext = FiniteLattice::from_covers(n + 2, &covers)?.with_labels(labels)?;
    let inclusion = LatticeHomomorphism::new(l, &ext, (1..=n).collect())?;
    Ok((ext, inclusion))
}

/// Closes `seed` under meet and join.
pub fn closure(l: &FiniteLattice, seed: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; l.size()];
    let mut elems: Vec<usize> = Vec::new();
    for &s in seed {
        if !inside[s] {
            inside[s] = true;
            elems.push(s);
        }
    }
    let mut k = 0;
    while k < elems.len() {
        let x = elems[k];
        k += 1;
        let mut j = 0;
        while j < k {
            let y = elems[j];
            j += 1;
            for z in [l.meet(x, y), l.join(x, y)] {
                if !inside[z] {
                    inside[z] = true;
                    elems.push(z);
                }
            }
        }
    }
    elems.sort_unstable();
    elems
}

/// The sublattice generated by `seed`.
pub fn sublattice_generated(l: &FiniteLattice, seed: &[usize]) -> Result<Sublattice> {
    for &s in seed {
        l.check_index(s)?;
    }
    Sublattice::new(l, &closure(l, seed))
}
