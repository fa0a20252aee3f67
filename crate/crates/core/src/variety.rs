//! Embeddings, Whitman's condition, subdirect decompositions, and finite
//! membership in the variety generated by a finite lattice.

use crate::congruence::{congruence_lattice, quotient, Congruence, LatticeHomomorphism, Quotient, Sublattice};
use crate::constructions::closure;
use crate::error::{LatticeError, Result};
use crate::order::{for_each_isomorphism, FiniteLattice};
use crate::search::{first_map, MapMode};

/// Default bound on `|K|` for the homomorphic-image-of-sublattice search.
pub const DEFAULT_HS_CAP: usize = 64;

/// Extra requirements on an embedding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EmbeddingFlags {
    pub preserve_zero: bool,
    pub preserve_one: bool,
}

/// The lexicographically least injective homomorphism `A → B`, if any.
pub fn find_embedding(a: &FiniteLattice, b: &FiniteLattice) -> Option<LatticeHomomorphism> {
    find_embedding_with(a, b, EmbeddingFlags::default())
}

pub fn find_embedding_with(a: &FiniteLattice, b: &FiniteLattice, flags: EmbeddingFlags) -> Option<LatticeHomomorphism> {
    let mut fixed = Vec::new();
    if flags.preserve_zero {
        fixed.push((a.bottom(), b.bottom()));
    }
    if flags.preserve_one {
        fixed.push((a.top(), b.top()));
    }
    let map = first_map(a, b, MapMode::Embedding, &fixed)?;
    Some(LatticeHomomorphism::new(a, b, map).expect("search returns homomorphisms"))
}

/// An embedding of `A` into some interval `[x, y]` of `B` of length `len`.
pub fn find_embedding_in_interval(
    a: &FiniteLattice,
    b: &FiniteLattice,
    len: usize,
) -> Result<Option<(usize, usize, LatticeHomomorphism)>> {
    for x in 0..b.size() {
        for y in b.poset().up_set(x).iter() {
            if b.length(x, y)? != len {
                continue;
            }
            let sub = Sublattice::new(b, &b.interval(x, y))?;
            if let Some(f) = find_embedding(a, &sub.lattice) {
                let map = f.map().iter().map(|&i| sub.elements[i]).collect();
                return Ok(Some((x, y, LatticeHomomorphism::new(a, b, map)?)));
            }
        }
    }
    Ok(None)
}

/// A quadruple `[a, b, c, d]` with `a ∧ b ≤ c ∨ d` for which none of
/// `a ≤ c∨d`, `b ≤ c∨d`, `a∧b ≤ c`, `a∧b ≤ d` holds.
pub fn whitman_failure(l: &FiniteLattice) -> Option<[usize; 4]> {
    let n = l.size();
    for a in 0..n {
        for b in 0..n {
            let m = l.meet(a, b);
            for c in 0..n {
                if l.leq(m, c) {
                    continue;
                }
                for d in 0..n {
                    let j = l.join(c, d);
                    if l.leq(m, j) && !l.leq(a, j) && !l.leq(b, j) && !l.leq(m, d) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

pub fn satisfies_whitman(l: &FiniteLattice) -> bool {
    whitman_failure(l).is_none()
}

/// One factor `A/θ` of the subdirect decomposition.
#[derive(Clone, Debug)]
pub struct SubdirectFactor {
    pub congruence: Congruence,
    pub quotient: Quotient,
}

/// `A/θ` for every meet-irreducible congruence `θ`; the meet of those
/// congruences is checked to be the identity, so `A` embeds in the product.
pub fn subdirect_decomposition(a: &FiniteLattice) -> Result<Vec<SubdirectFactor>> {
    let con = congruence_lattice(a)?;
    let mut factors = Vec::new();
    let mut meet = Congruence::full(a.size());
    for i in con.meet_irreducibles() {
        let theta = con.get(i).clone();
        meet = meet.meet(&theta);
        let q = quotient(a, &theta)?;
        factors.push(SubdirectFactor { congruence: theta, quotient: q });
    }
    if a.size() > 1 && !meet.is_identity() {
        return Err(LatticeError::HypothesisViolated("meet-irreducibles do not separate points".into()));
    }
    Ok(factors)
}

/// A sublattice of `K` together with a surjective homomorphism onto `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HsWitness {
    /// Elements of `K`, ascending.
    pub sublattice: Vec<usize>,
    /// `image[i]` is the image in `S` of `sublattice[i]`.
    pub image: Vec<usize>,
}

impl HsWitness {
    /// Re-checks closure, the homomorphism laws, and surjectivity.
    pub fn verify(&self, k: &FiniteLattice, s: &FiniteLattice) -> bool {
        let Ok(sub) = Sublattice::new(k, &self.sublattice) else {
            return false;
        };
        if sub.elements != self.sublattice || self.image.len() != sub.elements.len() {
            return false;
        }
        if LatticeHomomorphism::new(&sub.lattice, s, self.image.clone()).is_err() {
            return false;
        }
        let mut hit = vec![false; s.size()];
        for &y in &self.image {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Kernel of the homomorphism, as a congruence of the sublattice.
    pub fn kernel(&self) -> Vec<Vec<usize>> {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut seen: Vec<(usize, usize)> = Vec::new();
        for (i, &y) in self.image.iter().enumerate() {
            match seen.iter().find(|(img, _)| *img == y) {
                Some(&(_, b)) => blocks[b].push(self.sublattice[i]),
                None => {
                    seen.push((y, blocks.len()));
                    blocks.push(vec![self.sublattice[i]]);
                }
            }
        }
        blocks
    }
}

/// Result for one subdirectly irreducible factor.
#[derive(Clone, Debug)]
pub struct FactorVerdict {
    pub factor: FiniteLattice,
    /// `None` when the exhaustive search found no witness.
    pub witness: Option<HsWitness>,
    /// Search nodes visited.
    pub nodes: u64,
}

#[derive(Clone, Debug)]
pub struct VarietyCertificate {
    pub member: bool,
    pub factors: Vec<FactorVerdict>,
}

/// A small generating set of `S`: join-irreducibles (plus the bottom when
/// needed), greedily reduced.
fn generators(s: &FiniteLattice) -> Vec<usize> {
    let mut gens: Vec<usize> = (0..s.size()).filter(|&x| s.lower_covers(x).len() == 1).collect();
    if closure(s, &gens).len() < s.size() {
        gens.insert(0, s.bottom());
    }
    if gens.is_empty() {
        gens.push(s.bottom());
    }
    let mut i = 0;
    while i < gens.len() && gens.len() > 1 {
        let mut trial = gens.clone();
        trial.remove(i);
        if closure(s, &trial).len() == s.size() {
            gens = trial;
        } else {
            i += 1;
        }
    }
    gens
}

/// Every permutation of `gens` extends to an automorphism of `s`.
fn fully_symmetric(s: &FiniteLattice, gens: &[usize]) -> bool {
    let r = gens.len();
    if r <= 1 {
        return true;
    }
    let want: usize = (1..=r).product();
    let mut perms = std::collections::HashSet::new();
    for_each_isomorphism(s, s, |m| {
        let p: Option<Vec<usize>> = gens.iter().map(|&g| gens.iter().position(|&h| h == m[g])).collect();
        if let Some(p) = p {
            perms.insert(p);
        }
        perms.len() < want
    });
    perms.len() == want
}

/// Sublattice of `K × S` generated by chosen pairs, kept as a partial map
/// `K → S` that must stay a function.
struct GraphClosure<'a> {
    k: &'a FiniteLattice,
    s: &'a FiniteLattice,
    img: Vec<Option<usize>>,
    members: Vec<usize>,
}

impl<'a> GraphClosure<'a> {
    fn add(&mut self, x: usize, y: usize) -> bool {
        match self.img[x] {
            Some(z) => return z == y,
            None => {
                self.img[x] = Some(y);
                self.members.push(x);
            }
        }
        let mut k = self.members.len() - 1;
        while k < self.members.len() {
            let e = self.members[k];
            let fe = self.img[e].unwrap();
            k += 1;
            let mut j = 0;
            while j < k {
                let o = self.members[j];
                let fo = self.img[o].unwrap();
                j += 1;
                for (p, q) in [(self.k.meet(e, o), self.s.meet(fe, fo)), (self.k.join(e, o), self.s.join(fe, fo))] {
                    match self.img[p] {
                        Some(z) if z == q => {}
                        Some(_) => return false,
                        None => {
                            self.img[p] = Some(q);
                            self.members.push(p);
                        }
                    }
                }
            }
        }
        true
    }

    fn truncate(&mut self, len: usize) {
        while self.members.len() > len {
            let x = self.members.pop().unwrap();
            self.img[x] = None;
        }
    }
}

/// Searches for a sublattice of `K` mapping homomorphically onto `S`.
///
/// Generators `g_1..g_r` of `S` receive preimages `t_1..t_r` in `K`; the
/// sublattice of `K × S` they generate must be the graph of a function.
/// When every permutation of the generators is induced by an automorphism
/// of `S`, the preimages are taken in increasing index order.
pub fn find_hs_witness(s: &FiniteLattice, k: &FiniteLattice) -> (Option<HsWitness>, u64) {
    let gens = generators(s);
    let ordered = fully_symmetric(s, &gens);
    let mut gc = GraphClosure { k, s, img: vec![None; k.size()], members: Vec::new() };
    let mut nodes = 0u64;
    fn rec(gc: &mut GraphClosure, gens: &[usize], i: usize, start: usize, ordered: bool, nodes: &mut u64) -> bool {
        if i == gens.len() {
            return true;
        }
        for t in start..gc.k.size() {
            *nodes += 1;
            let mark = gc.members.len();
            if gc.add(t, gens[i]) && rec(gc, gens, i + 1, if ordered { t + 1 } else { 0 }, ordered, nodes) {
                return true;
            }
            gc.truncate(mark);
        }
        false
    }
    if !rec(&mut gc, &gens, 0, 0, ordered, &mut nodes) {
        return (None, nodes);
    }
    let mut sublattice = gc.members.clone();
    sublattice.sort_unstable();
    let image = sublattice.iter().map(|&x| gc.img[x].unwrap()).collect();
    (Some(HsWitness { sublattice, image }), nodes)
}

pub fn in_variety(a: &FiniteLattice, k: &FiniteLattice) -> Result<VarietyCertificate> {
    in_variety_capped(a, k, DEFAULT_HS_CAP)
}

/// `A ∈ Var(K)`: every subdirectly irreducible factor of `A` is a
/// homomorphic image of a sublattice of `K`.
pub fn in_variety_capped(a: &FiniteLattice, k: &FiniteLattice, cap: usize) -> Result<VarietyCertificate> {
    if k.size() > cap {
        return Err(LatticeError::SearchCapExceeded { what: "|K| for sublattice search", cap });
    }
    let mut factors = Vec::new();
    let mut member = true;
    for f in subdirect_decomposition(a)? {
        let s = f.quotient.lattice;
        if factors.iter().any(|v: &FactorVerdict| crate::order::are_isomorphic(&v.factor, &s)) {
            continue;
        }
        let (witness, nodes) = if member { find_hs_witness(&s, k) } else { (None, 0) };
        member &= witness.is_some();
        factors.push(FactorVerdict { factor: s, witness, nodes });
    }
    Ok(VarietyCertificate { member, factors })
}

/// Largest family of elements `b_i > u` with `b_i ∧ b_j = u` for `i ≠ j`,
/// together with a lexicographically first family of that size.
pub fn max_meet_u_family(k: &FiniteLattice, u: usize) -> Result<(usize, Vec<usize>)> {
    k.check_index(u)?;
    let cand: Vec<usize> = (0..k.size()).filter(|&b| k.lt(u, b)).collect();
    let mut best: Vec<usize> = Vec::new();
    fn grow(k: &FiniteLattice, u: usize, pool: &[usize], cur: &mut Vec<usize>, best: &mut Vec<usize>) {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        for (i, &b) in pool.iter().enumerate() {
            if cur.len() + pool.len() - i <= best.len() {
                return;
            }
            let rest: Vec<usize> = pool[i + 1..].iter().copied().filter(|&c| k.meet(b, c) == u).collect();
            cur.push(b);
            grow(k, u, &rest, cur, best);
            cur.pop();
        }
    }
    grow(k, u, &cand, &mut Vec::new(), &mut best);
    Ok((best.len(), best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boolean, chain, m_n, n5, product};
    use crate::geometry::{subspace_lattice, FiniteField};

    fn sub(q: usize, n: usize) -> FiniteLattice {
        subspace_lattice(&FiniteField::new(q).unwrap(), n).unwrap().lattice
    }

    /// All meet/join-closed subsets of `b`, by brute force over bitmasks.
    fn closed_subsets(b: &FiniteLattice) -> Vec<Vec<usize>> {
        let n = b.size();
        (1u32..(1 << n))
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|s| s.iter().all(|&x| s.iter().all(|&y| s.contains(&b.meet(x, y)) && s.contains(&b.join(x, y)))))
            .collect()
    }

    #[test]
    fn embedding_examples() {
        assert!(find_embedding(&m_n(3).unwrap(), &sub(2, 2)).is_some());
        assert!(find_embedding(&m_n(5).unwrap(), &sub(3, 3)).is_none());
        let l = n5();
        assert_eq!(find_embedding(&l, &l).unwrap().map(), &[0, 1, 2, 3, 4]);
        let f = find_embedding_with(
            &chain(2).unwrap(),
            &m_n(3).unwrap(),
            EmbeddingFlags { preserve_zero: true, preserve_one: true },
        );
        assert_eq!(f.unwrap().map(), &[0, 4]);
    }

    #[test]
    fn embedding_matches_closed_subsets() {
        let hosts =
            [boolean(3).unwrap(), n5(), product(&chain(2).unwrap(), &chain(3).unwrap()).unwrap(), m_n(4).unwrap()];
        let guests = [chain(3).unwrap(), boolean(2).unwrap(), n5(), m_n(3).unwrap(), chain(4).unwrap()];
        for b in &hosts {
            let subs = closed_subsets(b);
            for a in &guests {
                let oracle = subs.iter().any(|s| {
                    s.len() == a.size() && crate::order::are_isomorphic(a, &Sublattice::new(b, s).unwrap().lattice)
                });
                assert_eq!(find_embedding(a, b).is_some(), oracle);
            }
        }
    }

    #[test]
    fn whitman() {
        assert!(satisfies_whitman(&m_n(4).unwrap()));
        assert!(satisfies_whitman(&chain(3).unwrap()));
        assert!(satisfies_whitman(&boolean(2).unwrap()));
        assert!(satisfies_whitman(&n5()));
        assert!(satisfies_whitman(&boolean(3).unwrap()));
        let l = boolean(4).unwrap();
        let [a, b, c, d] = whitman_failure(&l).unwrap();
        assert!(l.leq(l.meet(a, b), l.join(c, d)));
        assert!(!l.leq(a, l.join(c, d)) && !l.leq(l.meet(a, b), c));
        let c3 = chain(3).unwrap();
        assert!(!satisfies_whitman(&product(&c3, &c3).unwrap()));
    }

    #[test]
    fn decompositions() {
        let m3 = m_n(3).unwrap();
        let d = subdirect_decomposition(&m3).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].quotient.lattice.size(), 5);
        let sq = product(&chain(2).unwrap(), &chain(2).unwrap()).unwrap();
        let d = subdirect_decomposition(&sq).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.iter().all(|f| f.quotient.lattice.size() == 2));
    }

    #[test]
    fn variety_examples() {
        assert!(!in_variety(&m_n(4).unwrap(), &m_n(3).unwrap()).unwrap().member);
        let c = in_variety(&m_n(3).unwrap(), &sub(2, 3)).unwrap();
        assert!(c.member);
        let w = c.factors[0].witness.as_ref().unwrap();
        assert!(w.verify(&sub(2, 3), &c.factors[0].factor));
        for k in [chain(2).unwrap(), n5(), m_n(3).unwrap()] {
            assert!(in_variety(&chain(2).unwrap(), &k).unwrap().member);
        }
        assert!(!in_variety(&n5(), &boolean(3).unwrap()).unwrap().member);
        assert!(in_variety(&boolean(3).unwrap(), &chain(2).unwrap()).unwrap().member);
        assert!(matches!(
            in_variety_capped(&chain(2).unwrap(), &sub(2, 3), 10),
            Err(LatticeError::SearchCapExceeded { .. })
        ));
    }

    #[test]
    fn meet_families() {
        for n in 3..=6 {
            assert_eq!(max_meet_u_family(&m_n(n).unwrap(), 0).unwrap().0, n);
        }
        assert_eq!(max_meet_u_family(&chain(4).unwrap(), 0).unwrap().0, 1);
        assert_eq!(max_meet_u_family(&sub(2, 2), 0).unwrap(), (3, vec![1, 2, 3]));
    }
}
