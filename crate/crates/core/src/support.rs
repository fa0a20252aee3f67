//! Partial-function posets, kernels, the norm-covering of `I_n` at a finite
//! base size `κ`, extreme ideals, free sets, and compatibility witnesses.

use crate::diagram::{build_in, IndexPoset};
use crate::error::{LatticeError, Result};

/// Largest poset size `(1+κ)^n` accepted.
pub const MAX_PARTIAL_FUNCTIONS: usize = 1 << 20;
/// Largest `κ` for pair maps and free-set search (subsets are `u64` masks).
pub const MAX_KAPPA: usize = 64;

/// Partial functions `{0..n-1} ⇀ {0..κ-1}`, ordered by extension.
///
/// Element `u` is written in base `1+κ`, least significant digit first;
/// digit `i` is `0` when `i ∉ dom u` and `u(i) + 1` otherwise. The empty
/// function is `0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartialFunctionPoset {
    n: usize,
    kappa: usize,
    size: usize,
}

impl PartialFunctionPoset {
    pub fn new(n: usize, kappa: usize) -> Result<Self> {
        let size = (kappa + 1)
            .checked_pow(n as u32)
            .filter(|&s| s <= MAX_PARTIAL_FUNCTIONS && n <= 31)
            .ok_or(LatticeError::SizeCapExceeded { what: "(1+κ)^n", cap: MAX_PARTIAL_FUNCTIONS })?;
        Ok(PartialFunctionPoset { n, kappa, size })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bottom(&self) -> usize {
        0
    }

    fn digit(&self, u: usize, i: usize) -> usize {
        u / (self.kappa + 1).pow(i as u32) % (self.kappa + 1)
    }

    /// `u(i)`, if defined.
    pub fn value(&self, u: usize, i: usize) -> Option<usize> {
        self.digit(u, i).checked_sub(1)
    }

    pub fn decode(&self, u: usize) -> Vec<Option<usize>> {
        (0..self.n).map(|i| self.value(u, i)).collect()
    }

    pub fn encode(&self, f: &[Option<usize>]) -> Result<usize> {
        if f.len() != self.n || f.iter().flatten().any(|&v| v >= self.kappa) {
            return Err(LatticeError::InvalidParameter(format!("{f:?} is not a partial function here")));
        }
        Ok(f.iter().rev().fold(0, |acc, v| acc * (self.kappa + 1) + v.map_or(0, |x| x + 1)))
    }

    /// Domain as a bitmask.
    pub fn dom(&self, u: usize) -> u32 {
        (0..self.n).filter(|&i| self.digit(u, i) != 0).fold(0, |m, i| m | 1 << i)
    }

    /// Image as a bitmask of base values.
    pub fn image(&self, u: usize) -> u64 {
        (0..self.n).filter_map(|i| self.value(u, i)).fold(0, |m, v| m | 1 << v)
    }

    /// `u ≤ w`: `w` extends `u`.
    pub fn leq(&self, u: usize, w: usize) -> bool {
        let r = self.kappa + 1;
        let (mut a, mut b) = (u, w);
        for _ in 0..self.n {
            let (da, db) = (a % r, b % r);
            if da != 0 && da != db {
                return false;
            }
            a /= r;
            b /= r;
        }
        true
    }

    pub fn lt(&self, u: usize, w: usize) -> bool {
        u != w && self.leq(u, w)
    }

    /// `u↾mask`.
    pub fn restrict(&self, u: usize, mask: u32) -> usize {
        let f: Vec<Option<usize>> =
            (0..self.n).map(|i| if mask >> i & 1 == 1 { self.value(u, i) } else { None }).collect();
        self.encode(&f).expect("restriction stays in range")
    }

    /// All restrictions of `u`, i.e. its principal ideal.
    pub fn down_set(&self, u: usize) -> Vec<usize> {
        let d = self.dom(u);
        let bits: Vec<u32> = (0..self.n as u32).filter(|i| d >> i & 1 == 1).collect();
        (0u32..1 << bits.len())
            .map(|s| {
                let mask = bits.iter().enumerate().filter(|(k, _)| s >> k & 1 == 1).fold(0, |m, (_, &b)| m | 1 << b);
                self.restrict(u, mask)
            })
            .collect()
    }
}

/// A finite subset `V` such that every `u` has a largest element of `V` below it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    elements: Vec<usize>,
}

/// Largest `v ∈ V` with `v ≤ u`, or `None` when there is no largest one.
fn largest_below(pf: &PartialFunctionPoset, v: &[usize], u: usize) -> Option<usize> {
    let below: Vec<usize> = v.iter().copied().filter(|&x| pf.leq(x, u)).collect();
    below.iter().copied().find(|&m| below.iter().all(|&x| pf.leq(x, m)))
}

impl Kernel {
    /// Checks the kernel condition against every element of the poset.
    pub fn new(pf: &PartialFunctionPoset, elements: &[usize]) -> Result<Self> {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if let Some(&bad) = elements.iter().find(|&&e| e >= pf.size()) {
            return Err(LatticeError::IndexOutOfRange { index: bad, size: pf.size() });
        }
        if let Some(u) = (0..pf.size()).find(|&u| largest_below(pf, &elements, u).is_none()) {
            return Err(LatticeError::NotAKernel(u));
        }
        Ok(Kernel { elements })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, u: usize) -> bool {
        self.elements.binary_search(&u).is_ok()
    }

    pub fn intersection(&self, pf: &PartialFunctionPoset, other: &Kernel) -> Result<Kernel> {
        let common: Vec<usize> = self.elements.iter().copied().filter(|&e| other.contains(e)).collect();
        Kernel::new(pf, &common)
    }
}

/// `V·u`.
pub fn kernel_meet(pf: &PartialFunctionPoset, v: &Kernel, u: usize) -> usize {
    largest_below(pf, &v.elements, u).expect("kernels have a largest element below every point")
}

/// The kernel of all partial functions whose domain lies in the union `D`
/// of the seed domains and whose value at each `x` is one of the seed
/// values at `x`.
pub fn kernel_closure(pf: &PartialFunctionPoset, seed: &[usize]) -> Result<Kernel> {
    let n = pf.arity();
    let mut allowed: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &u in seed {
        if u >= pf.size() {
            return Err(LatticeError::IndexOutOfRange { index: u, size: pf.size() });
        }
        for (x, val) in pf.decode(u).into_iter().enumerate() {
            if let Some(v) = val {
                if !allowed[x].contains(&v) {
                    allowed[x].push(v);
                }
            }
        }
    }
    let mut out = vec![Vec::<Option<usize>>::new()];
    for opts in &allowed {
        let mut next = Vec::with_capacity(out.len() * (opts.len() + 1));
        for f in &out {
            let mut g = f.clone();
            g.push(None);
            next.push(g);
            for &v in opts {
                let mut g = f.clone();
                g.push(Some(v));
                next.push(g);
            }
        }
        out = next;
    }
    let elems: Vec<usize> = out.iter().map(|f| pf.encode(f)).collect::<Result<_>>()?;
    let k = Kernel::new(pf, &elems)?;
    debug_assert!(seed.iter().all(|&s| k.contains(s)));
    Ok(k)
}

/// The partial-function poset with the norm `|u| = dom u` when
/// `|dom u| ≤ 2` and `|u| = {0..n-1}` otherwise.
#[derive(Clone, Debug)]
pub struct NormCovering {
    pub poset: PartialFunctionPoset,
    pub index: IndexPoset,
    full: usize,
}

pub fn build_norm_covering(n: usize, kappa: usize) -> Result<NormCovering> {
    let index = build_in(n)?;
    let poset = PartialFunctionPoset::new(n, kappa)?;
    let full = index.index_of((1u32 << n) - 1).expect("I_n has a top");
    Ok(NormCovering { poset, index, full })
}

impl NormCovering {
    pub fn norm(&self, u: usize) -> usize {
        let d = self.poset.dom(u);
        if d.count_ones() <= 2 {
            self.index.index_of(d).expect("small subsets are in I_n")
        } else {
            self.full
        }
    }

    /// Exhaustive: `u ≤ w` implies `|u| ≤ |w|`.
    pub fn norm_is_order_preserving(&self) -> bool {
        (0..self.poset.size()).all(|w| {
            let nw = self.norm(w);
            self.poset.down_set(w).into_iter().all(|u| self.index.leq(self.norm(u), nw))
        })
    }

    /// Whether `u` (as the principal ideal it generates) is extreme: its
    /// domain lies in `I_n`.
    pub fn is_extreme(&self, u: usize) -> bool {
        let d = self.poset.dom(u);
        d.count_ones() <= 2 || d == (1u32 << self.poset.arity()) - 1
    }
}

/// Extreme ideals, identified with their generators: elements whose domain
/// lies in `I_n`.
///
/// Since the poset is finite, every ideal is principal and sharp.
pub fn extreme_ideals(nc: &NormCovering) -> Vec<usize> {
    (0..nc.poset.size()).filter(|&u| nc.is_extreme(u)).collect()
}

/// Extreme ideals by definition: no strictly larger element has the same
/// norm. Quadratic in the poset size.
pub fn extreme_ideals_by_definition(nc: &NormCovering) -> Vec<usize> {
    let pf = &nc.poset;
    (0..pf.size())
        .filter(|&u| {
            let nu = nc.norm(u);
            !(0..pf.size()).any(|w| pf.lt(u, w) && nc.norm(w) == nu)
        })
        .collect()
}

/// A map from 2-element subsets of `{0..κ-1}` to subsets, as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairMap {
    kappa: usize,
    sets: Vec<u64>,
}

impl PairMap {
    /// The map sending every pair to the empty set.
    pub fn empty(kappa: usize) -> Result<Self> {
        if kappa > MAX_KAPPA {
            return Err(LatticeError::InvalidParameter(format!("κ = {kappa} exceeds {MAX_KAPPA}")));
        }
        Ok(PairMap { kappa, sets: vec![0; kappa * kappa] })
    }

    pub fn constant(kappa: usize, set: &[usize]) -> Result<Self> {
        let mut f = PairMap::empty(kappa)?;
        for b in 0..kappa {
            for c in b + 1..kappa {
                f.set(b, c, set)?;
            }
        }
        Ok(f)
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn set(&mut self, b: usize, c: usize, items: &[usize]) -> Result<()> {
        if b == c || b >= self.kappa || c >= self.kappa || items.iter().any(|&a| a >= self.kappa) {
            return Err(LatticeError::InvalidParameter(format!("bad pair map entry {{{b},{c}}} -> {items:?}")));
        }
        let mask = items.iter().fold(0u64, |m, &a| m | 1 << a);
        self.sets[b * self.kappa + c] = mask;
        self.sets[c * self.kappa + b] = mask;
        Ok(())
    }

    fn add_mask(&mut self, b: usize, c: usize, mask: u64) {
        self.sets[b * self.kappa + c] |= mask;
        self.sets[c * self.kappa + b] |= mask;
    }

    pub fn get(&self, b: usize, c: usize) -> u64 {
        self.sets[b * self.kappa + c]
    }

    pub fn contains(&self, b: usize, c: usize, a: usize) -> bool {
        self.get(b, c) >> a & 1 == 1
    }
}

/// The lexicographically first `m`-subset `Y` of `{0..κ-1}` with
/// `a ∉ f({b, c})` for all distinct `a, b, c ∈ Y`.
pub fn free_set_search(f: &PairMap, m: usize) -> Option<Vec<usize>> {
    fn rec(f: &PairMap, m: usize, start: usize, cur: &mut Vec<usize>) -> bool {
        if cur.len() == m {
            return true;
        }
        for z in start..f.kappa() {
            if f.kappa() - z < m - cur.len() {
                return false;
            }
            let ok = cur.iter().enumerate().all(|(i, &b)| {
                cur[i + 1..].iter().all(|&c| !f.contains(b, c, z))
                    && cur.iter().filter(|&&a| a != b).all(|&a| !f.contains(b, z, a))
            });
            if ok {
                cur.push(z);
                if rec(f, m, z + 1, cur) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }
    let mut cur = Vec::with_capacity(m);
    rec(f, m, 0, &mut cur).then_some(cur)
}

/// `F`: extreme ideals (by generator) to finite subsets of the poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealMap {
    /// `images[u]` for every element `u`; ignored for non-extreme `u`.
    pub images: Vec<Vec<usize>>,
}

impl IdealMap {
    /// `F(u) = ⋃ { r(w) : w ≤ u extreme }`, which is order-preserving.
    pub fn generated(nc: &NormCovering, r: &[Vec<usize>]) -> Result<Self> {
        if r.len() != nc.poset.size() {
            return Err(LatticeError::InvalidParameter("one generating set per element".into()));
        }
        let images = (0..nc.poset.size())
            .map(|u| {
                let mut s: Vec<usize> = nc
                    .poset
                    .down_set(u)
                    .into_iter()
                    .filter(|&w| nc.is_extreme(w))
                    .flat_map(|w| r[w].iter().copied())
                    .collect();
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        Ok(IdealMap { images })
    }

    /// Every extreme ideal goes to the whole poset.
    pub fn everything(nc: &NormCovering) -> Self {
        let all: Vec<usize> = (0..nc.poset.size()).collect();
        IdealMap { images: vec![all; nc.poset.size()] }
    }

    /// `u ≤ w` extreme implies `F(u) ⊆ F(w)`.
    pub fn is_order_preserving(&self, nc: &NormCovering) -> bool {
        (0..nc.poset.size()).filter(|&w| nc.is_extreme(w)).all(|w| {
            nc.poset
                .down_set(w)
                .into_iter()
                .filter(|&u| nc.is_extreme(u))
                .all(|u| self.images[u].iter().all(|x| self.images[w].contains(x)))
        })
    }
}

/// Checks `σ : I_n → extreme ideals`: order-preserving, `|σ(i)| = i`, and
/// `F(σ(i)) ∩ ↓σ(j) ⊆ ↓σ(i)` for all `i ≤ j`.
pub fn check_compatibility_witness(nc: &NormCovering, f: &IdealMap, sigma: &[usize]) -> Result<bool> {
    let ip = nc.index.poset();
    if sigma.len() != ip.size() {
        return Err(LatticeError::InvalidParameter(format!("σ needs {} values", ip.size())));
    }
    if f.images.len() != nc.poset.size() {
        return Err(LatticeError::InvalidParameter("F needs one image per element".into()));
    }
    if let Some(&bad) = sigma.iter().find(|&&s| s >= nc.poset.size()) {
        return Err(LatticeError::IndexOutOfRange { index: bad, size: nc.poset.size() });
    }
    if !f.is_order_preserving(nc) {
        return Err(LatticeError::PreconditionFailed("F is not order-preserving".into()));
    }
    let pf = &nc.poset;
    for i in 0..ip.size() {
        if !nc.is_extreme(sigma[i]) || nc.norm(sigma[i]) != i {
            return Ok(false);
        }
        for j in ip.up_set(i).iter() {
            if !pf.leq(sigma[i], sigma[j]) {
                return Ok(false);
            }
            if f.images[sigma[i]].iter().any(|&v| pf.leq(v, sigma[j]) && !pf.leq(v, sigma[i])) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `σ(P) = w↾P` for a total function `w`.
pub fn sigma_from_total(nc: &NormCovering, w: usize) -> Vec<usize> {
    (0..nc.index.size()).map(|p| nc.poset.restrict(w, nc.index.subset(p).unwrap())).collect()
}

/// Searches every candidate `σ` in order of the total function at the top.
///
/// A `σ` satisfying `|σ(i)| = i` has a total function `w` at the top, and
/// order preservation forces `σ(P) = w↾P` below it, so the candidates are
/// exactly the `κ^n` total functions.
pub fn search_compatibility_witness(nc: &NormCovering, f: &IdealMap) -> Result<Option<Vec<usize>>> {
    let pf = &nc.poset;
    let full = (1u32 << pf.arity()) - 1;
    for w in 0..pf.size() {
        if pf.dom(w) != full {
            continue;
        }
        let sigma = sigma_from_total(nc, w);
        if check_compatibility_witness(nc, f, &sigma)? {
            return Ok(Some(sigma));
        }
    }
    Ok(None)
}

/// `G(s) = ⋃ { im v : u ∈ s^P for P ∈ I_n ∖ {full}, v ∈ F(u) }` for every
/// 2-subset `s` of the base.
pub fn induced_pair_map(nc: &NormCovering, f: &IdealMap) -> Result<PairMap> {
    let pf = &nc.poset;
    let k = pf.kappa();
    let n = pf.arity();
    let mut g = PairMap::empty(k)?;
    let full = (1u32 << n) - 1;
    for u in 0..pf.size() {
        let d = pf.dom(u);
        if d == full && n > 2 || d.count_ones() > 2 {
            continue;
        }
        let img = pf.image(u);
        let mask = f.images[u].iter().fold(0u64, |m, &v| m | pf.image(v));
        // u ∈ s^P exactly when im u ⊆ s
        for b in 0..k {
            for c in b + 1..k {
                if img & !(1u64 << b | 1u64 << c) == 0 {
                    g.add_mask(b, c, mask);
                }
            }
        }
    }
    Ok(g)
}

/// The witness built from a free set: find an `n`-element free set `A` for
/// the induced pair map, let `u(x)` be the `x`-th element of `A`, and set
/// `σ(P) = u↾P`. Returns the free set and `σ`.
pub fn sigma_from_free_set(nc: &NormCovering, f: &IdealMap) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let g = induced_pair_map(nc, f)?;
    let pf = &nc.poset;
    let Some(a) = free_set_search(&g, pf.arity()) else {
        return Ok(None);
    };
    let total: Vec<Option<usize>> = a.iter().map(|&v| Some(v)).collect();
    let w = pf.encode(&total)?;
    Ok(Some((a, sigma_from_total(nc, w))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_basics() {
        let pf = PartialFunctionPoset::new(3, 2).unwrap();
        assert_eq!(pf.size(), 27);
        let u = pf.encode(&[Some(1), None, Some(0)]).unwrap();
        assert_eq!(pf.decode(u), vec![Some(1), None, Some(0)]);
        assert_eq!(pf.dom(u), 0b101);
        assert!(pf.leq(pf.bottom(), u));
        assert!(pf.leq(pf.restrict(u, 0b001), u));
        assert_eq!(pf.down_set(u).len(), 4);
        assert_eq!(PartialFunctionPoset::new(4, 0).unwrap().size(), 1);
        assert!(PartialFunctionPoset::new(30, 6).is_err());
    }

    #[test]
    fn kernel_examples() {
        let pf = PartialFunctionPoset::new(3, 3).unwrap();
        let k0 = kernel_closure(&pf, &[0]).unwrap();
        assert_eq!(k0.elements(), &[0]);
        for u in 0..pf.size() {
            assert_eq!(kernel_meet(&pf, &k0, u), 0);
        }
        let w = pf.encode(&[Some(2), Some(0), None]).unwrap();
        let k = kernel_closure(&pf, &[w]).unwrap();
        assert_eq!(k.len(), 4);
        assert_eq!(kernel_meet(&pf, &k, w), w);
        let w1 = pf.encode(&[Some(1), None, None]).unwrap();
        let w2 = pf.encode(&[None, Some(2), None]).unwrap();
        let k = kernel_closure(&pf, &[w1, w2]).unwrap();
        assert_eq!(k.len(), 4);
        let u = pf.encode(&[Some(1), Some(0), Some(0)]).unwrap();
        assert_eq!(kernel_meet(&pf, &k, u), w1);
        assert!(matches!(Kernel::new(&pf, &[w1, w2]), Err(LatticeError::NotAKernel(_))));
    }

    #[test]
    fn norm_covering_sizes() {
        assert_eq!(build_norm_covering(3, 2).unwrap().poset.size(), 27);
        assert_eq!(build_norm_covering(4, 0).unwrap().poset.size(), 1);
        let nc = build_norm_covering(4, 1).unwrap();
        assert_eq!(extreme_ideals(&nc).len(), 12);
        assert!(nc.norm_is_order_preserving());
        let three = nc.poset.encode(&[Some(0), Some(0), Some(0), None]).unwrap();
        assert!(!extreme_ideals(&nc).contains(&three));
        assert!(extreme_ideals(&nc).contains(&0));
        let nc3 = build_norm_covering(3, 2).unwrap();
        assert_eq!(extreme_ideals(&nc3).len(), 27);
    }

    #[test]
    fn extreme_matches_definition() {
        for n in 3..=4 {
            for k in 0..=3 {
                let nc = build_norm_covering(n, k).unwrap();
                assert_eq!(extreme_ideals(&nc), extreme_ideals_by_definition(&nc), "n={n} κ={k}");
            }
        }
    }

    #[test]
    fn free_sets() {
        let f = PairMap::empty(6).unwrap();
        assert_eq!(free_set_search(&f, 4), Some(vec![0, 1, 2, 3]));
        let f = PairMap::constant(5, &[0]).unwrap();
        assert_eq!(free_set_search(&f, 3), Some(vec![1, 2, 3]));
        let mut f = PairMap::empty(3).unwrap();
        f.set(0, 1, &[2]).unwrap();
        f.set(0, 2, &[1]).unwrap();
        f.set(1, 2, &[0]).unwrap();
        assert_eq!(free_set_search(&f, 3), None);
        assert_eq!(free_set_search(&f, 2), Some(vec![0, 1]));
    }

    #[test]
    fn witnesses() {
        let nc = build_norm_covering(3, 3).unwrap();
        let empty = IdealMap { images: vec![Vec::new(); nc.poset.size()] };
        let w = nc.poset.encode(&[Some(0), Some(1), Some(2)]).unwrap();
        let sigma = sigma_from_total(&nc, w);
        assert!(check_compatibility_witness(&nc, &empty, &sigma).unwrap());
        let mut bad = sigma.clone();
        bad.swap(1, 2);
        assert!(!check_compatibility_witness(&nc, &empty, &bad).unwrap());
        let nc2 = build_norm_covering(3, 2).unwrap();
        let all = IdealMap::everything(&nc2);
        assert_eq!(search_compatibility_witness(&nc2, &all).unwrap(), None);
        assert_eq!(sigma_from_free_set(&nc2, &all).unwrap(), None);
    }

    /// Every order-preserving σ with the right norms, enumerated naively.
    fn naive_sigmas(nc: &NormCovering) -> Vec<Vec<usize>> {
        let ip = nc.index.poset();
        let cands: Vec<Vec<usize>> =
            (0..ip.size()).map(|p| extreme_ideals(nc).into_iter().filter(|&u| nc.norm(u) == p).collect()).collect();
        let mut out = vec![Vec::new()];
        for c in &cands {
            out = out
                .into_iter()
                .flat_map(|s: Vec<usize>| {
                    c.iter().map(move |&u| {
                        let mut t = s.clone();
                        t.push(u);
                        t
                    })
                })
                .collect();
        }
        out.into_iter()
            .filter(|s| (0..ip.size()).all(|i| ip.up_set(i).iter().all(|j| nc.poset.leq(s[i], s[j]))))
            .collect()
    }

    #[test]
    fn sigma_candidates_are_total_functions() {
        let nc = build_norm_covering(3, 2).unwrap();
        let naive = naive_sigmas(&nc);
        assert_eq!(naive.len(), 8);
        let full = 0b111;
        for w in (0..nc.poset.size()).filter(|&w| nc.poset.dom(w) == full) {
            assert!(naive.contains(&sigma_from_total(&nc, w)));
        }
    }
}
