//! Prime intervals, projectivity classes, and dimension vectors of finite
//! modular lattices.

use std::collections::{BTreeSet, HashMap};

use crate::congruence::{congruence_lattice, quotient, Congruence, CongruenceLattice};
use crate::error::{LatticeError, Result};
use crate::geometry::GroupWithUnitSignature;
use crate::order::FiniteLattice;

/// A covering pair `lower ≺ upper`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeInterval {
    pub lower: usize,
    pub upper: usize,
}

/// Partition of the prime intervals under transposition.
///
/// Class ids follow discovery order: classes are numbered by their
/// lexicographically smallest prime interval.
#[derive(Clone, Debug)]
pub struct ProjectivityClasses {
    intervals: Vec<PrimeInterval>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    index: HashMap<(usize, usize), usize>,
}

impl ProjectivityClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// All prime intervals, sorted.
    pub fn intervals(&self) -> &[PrimeInterval] {
        &self.intervals
    }

    /// Members of class `c`, as prime intervals.
    pub fn class(&self, c: usize) -> Vec<PrimeInterval> {
        self.classes[c].iter().map(|&i| self.intervals[i]).collect()
    }

    /// Class of the covering pair `a ≺ b`.
    pub fn class_of(&self, a: usize, b: usize) -> Option<usize> {
        self.index.get(&(a, b)).map(|&i| self.class_of[i])
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Prime intervals `[a, b]` and `[c, d]` are joined when `b ∧ c = a` and
/// `b ∨ c = d`; the classes are the resulting equivalence classes.
pub fn projectivity_classes(l: &FiniteLattice) -> ProjectivityClasses {
    let mut intervals: Vec<PrimeInterval> =
        l.covers().iter().map(|&(lower, upper)| PrimeInterval { lower, upper }).collect();
    intervals.sort();
    let index: HashMap<(usize, usize), usize> =
        intervals.iter().enumerate().map(|(i, p)| ((p.lower, p.upper), i)).collect();
    let mut parent: Vec<usize> = (0..intervals.len()).collect();
    for (i, p) in intervals.iter().enumerate() {
        for c in 0..l.size() {
            if l.meet(p.upper, c) == p.lower {
                if let Some(&j) = index.get(&(c, l.join(p.upper, c))) {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        parent[ri.max(rj)] = ri.min(rj);
                    }
                }
            }
        }
    }
    let mut class_id: HashMap<usize, usize> = HashMap::new();
    let mut class_of = Vec::with_capacity(intervals.len());
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..intervals.len() {
        let r = find(&mut parent, i);
        let next = classes.len();
        let c = *class_id.entry(r).or_insert(next);
        if c == classes.len() {
            classes.push(Vec::new());
        }
        classes[c].push(i);
        class_of.push(c);
    }
    ProjectivityClasses { intervals, class_of, classes, index }
}

/// Occurrence counts indexed by projectivity class (or meet-irreducible
/// congruence).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DimensionVector {
    pub entries: Vec<u64>,
}

impl DimensionVector {
    pub fn zero(len: usize) -> Self {
        DimensionVector { entries: vec![0; len] }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &DimensionVector) -> DimensionVector {
        DimensionVector { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() }
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().sum()
    }
}

impl std::fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let e: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", e.join(","))
    }
}

/// Image of a vector in the maximal semilattice quotient of `N^k`: its support.
pub fn mtol_support(v: &DimensionVector) -> BTreeSet<usize> {
    v.entries.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect()
}

/// A modular lattice together with its projectivity classes.
#[derive(Clone, Debug)]
pub struct Dimension<'a> {
    lattice: &'a FiniteLattice,
    classes: ProjectivityClasses,
}

impl<'a> Dimension<'a> {
    /// Fails with `NotModular` on a non-modular lattice.
    pub fn new(l: &'a FiniteLattice) -> Result<Self> {
        if let Some((x, y, z)) = l.modular_witness() {
            return Err(LatticeError::NotModular(x, y, z));
        }
        Ok(Dimension { lattice: l, classes: projectivity_classes(l) })
    }

    pub fn lattice(&self) -> &FiniteLattice {
        self.lattice
    }

    pub fn classes(&self) -> &ProjectivityClasses {
        &self.classes
    }

    /// Counts the covers of `chain` by class.
    pub fn along_chain(&self, chain: &[usize]) -> Result<DimensionVector> {
        let mut v = DimensionVector::zero(self.classes.len());
        for w in chain.windows(2) {
            let c = self.classes.class_of(w[0], w[1]).ok_or(LatticeError::NotACover { lower: w[0], upper: w[1] })?;
            v.entries[c] += 1;
        }
        Ok(v)
    }

    /// The lexicographically first maximal chain of `[a, b]`.
    pub fn first_chain(&self, a: usize, b: usize) -> Result<Vec<usize>> {
        let l = self.lattice;
        l.check_index(a)?;
        l.check_index(b)?;
        if !l.leq(a, b) {
            return Err(LatticeError::NotComparable { a, b });
        }
        let mut chain = vec![a];
        let mut x = a;
        while x != b {
            x = *l.upper_covers(x).iter().filter(|&&c| l.leq(c, b)).min().expect("a cover below b exists");
            chain.push(x);
        }
        Ok(chain)
    }

    /// `Δ(a, b)` along the lexicographically first maximal chain of `[a, b]`.
    pub fn delta(&self, a: usize, b: usize) -> Result<DimensionVector> {
        self.along_chain(&self.first_chain(a, b)?)
    }
}

pub fn delta(l: &FiniteLattice, a: usize, b: usize) -> Result<DimensionVector> {
    Dimension::new(l)?.delta(a, b)
}

/// For each projectivity class `ξ`, the largest congruence that collapses
/// no prime interval of `ξ`, as an index into the congruence lattice.
///
/// Verified to be a bijection onto the meet-irreducible congruences.
#[derive(Clone, Debug)]
pub struct ClassCongruences {
    pub con: CongruenceLattice,
    /// `theta[ξ]` indexes `con`.
    pub theta: Vec<usize>,
}

pub fn class_congruences(dim: &Dimension) -> Result<ClassCongruences> {
    let l = dim.lattice();
    let con = congruence_lattice(l)?;
    let classes = dim.classes();
    let mut theta = Vec::with_capacity(classes.len());
    for c in 0..classes.len() {
        let members = classes.class(c);
        let mut best = Congruence::identity(l.size());
        for alpha in con.congruences() {
            if members.iter().all(|p| !alpha.related(p.lower, p.upper)) {
                best = best.join(alpha);
            }
        }
        if members.iter().any(|p| best.related(p.lower, p.upper)) {
            return Err(LatticeError::HypothesisViolated(format!("no largest congruence avoiding class {c}")));
        }
        theta.push(con.index_of(&best).expect("joins of congruences are listed"));
    }
    let mut got: Vec<usize> = theta.clone();
    got.sort_unstable();
    let mut want = con.meet_irreducibles();
    want.sort_unstable();
    if got.windows(2).any(|w| w[0] == w[1]) || got != want {
        return Err(LatticeError::HypothesisViolated(
            "class-to-congruence map is not a bijection onto the meet-irreducibles".into(),
        ));
    }
    Ok(ClassCongruences { con, theta })
}

pub fn meet_irreducible_for_class(l: &FiniteLattice, class: usize) -> Result<Congruence> {
    let dim = Dimension::new(l)?;
    if class >= dim.classes().len() {
        return Err(LatticeError::IndexOutOfRange { index: class, size: dim.classes().len() });
    }
    let cc = class_congruences(&dim)?;
    Ok(cc.con.get(cc.theta[class]).clone())
}

/// `(Z^X, (length(L/θ))_{θ ∈ X})`, coordinates in class discovery order.
pub fn gdim_signature(l: &FiniteLattice) -> Result<GroupWithUnitSignature> {
    let dim = Dimension::new(l)?;
    let cc = class_congruences(&dim)?;
    let mut unit = Vec::with_capacity(cc.theta.len());
    for &t in &cc.theta {
        let q = quotient(l, cc.con.get(t))?;
        unit.push(q.lattice.height() as u64);
    }
    GroupWithUnitSignature::new(unit)
}

/// Congruences of `L` matched with class subsets: `θ ↦ {ξ : θ collapses ξ}`.
///
/// The map is checked to be injective, to send each principal congruence
/// `Θ(a, b)` to the support of `Δ(a, b)`, and to carry joins to unions; its
/// image is then the union-closure of the supports.
#[derive(Clone, Debug)]
pub struct SupportCorrespondence {
    pub con: CongruenceLattice,
    pub supports: Vec<BTreeSet<usize>>,
}

pub fn support_correspondence(dim: &Dimension) -> Result<SupportCorrespondence> {
    let l = dim.lattice();
    let con = congruence_lattice(l)?;
    let classes = dim.classes();
    let supports: Vec<BTreeSet<usize>> = con
        .congruences()
        .iter()
        .map(|alpha| {
            (0..classes.len()).filter(|&c| classes.class(c).iter().any(|p| alpha.related(p.lower, p.upper))).collect()
        })
        .collect();
    let bad = |m: String| Err(LatticeError::HypothesisViolated(m));
    let distinct: BTreeSet<&BTreeSet<usize>> = supports.iter().collect();
    if distinct.len() != supports.len() {
        return bad("support map is not injective".into());
    }
    for a in 0..l.size() {
        for b in 0..l.size() {
            if l.leq(a, b) {
                let s = mtol_support(&dim.delta(a, b)?);
                if supports[con.principal(l, a, b)] != s {
                    return bad(format!("support of Δ({a},{b}) differs from Θ({a},{b})"));
                }
            }
        }
    }
    let cl = con.lattice();
    for i in 0..con.len() {
        for j in 0..con.len() {
            let u: BTreeSet<usize> = supports[i].union(&supports[j]).copied().collect();
            if supports[cl.join(i, j)] != u {
                return bad(format!("join of congruences {i} and {j} is not sent to a union"));
            }
        }
    }
    let mut closure: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    closure.insert(BTreeSet::new());
    for a in 0..l.size() {
        for b in 0..l.size() {
            if l.leq(a, b) {
                let s = mtol_support(&dim.delta(a, b)?);
                let more: Vec<BTreeSet<usize>> = closure.iter().map(|t| t.union(&s).copied().collect()).collect();
                closure.extend(more);
            }
        }
    }
    if closure.len() != supports.len() || supports.iter().any(|s| !closure.contains(s)) {
        return bad("supports do not generate the image".into());
    }
    Ok(SupportCorrespondence { con, supports })
}
