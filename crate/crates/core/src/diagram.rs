//! Poset-indexed diagrams of lattices and of join-semilattices with zero.
//!
//! Also: the diagram `A` of sublattices of `M_n` indexed by `I_n`, the
//! congruence functor applied to a diagram, natural-equivalence search, the
//! constraint checks satisfied by congruence liftings of `Con ∘ A`, the
//! extraction of an `M_n` from such a lifting, and congruence-preserving
//! chains in lattices of small length.

use std::collections::HashMap;

use crate::congruence::{
    conc_of_hom, congruence_lattice, is_congruence_preserving_extension, CongruenceLattice, LatticeHomomorphism,
    Sublattice,
};
use crate::constructions::m_n;
use crate::error::{LatticeError, Result};
use crate::order::{for_each_isomorphism, FiniteLattice, FinitePoset};
use crate::variety::find_embedding;

/// Largest `n` accepted by [`build_in`].
pub const MAX_INDEX_N: usize = 12;

/// A finite index poset; elements may carry subsets of `{0..n-1}`.
#[derive(Clone, Debug)]
pub struct IndexPoset {
    poset: FinitePoset,
    subsets: Option<(usize, Vec<u32>)>,
}

impl IndexPoset {
    pub fn new(poset: FinitePoset) -> Self {
        IndexPoset { poset, subsets: None }
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn size(&self) -> usize {
        self.poset.size()
    }

    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.poset.leq(p, q)
    }

    /// `n` when built by [`build_in`].
    pub fn ground(&self) -> Option<usize> {
        self.subsets.as_ref().map(|(n, _)| *n)
    }

    /// The subset carried by element `p`, as a bitmask.
    pub fn subset(&self, p: usize) -> Option<u32> {
        self.subsets.as_ref().map(|(_, s)| s[p])
    }

    /// The element carrying the subset `mask`.
    pub fn index_of(&self, mask: u32) -> Option<usize> {
        self.subsets.as_ref()?.1.iter().position(|&m| m == mask)
    }

    pub fn label(&self, p: usize) -> String {
        self.poset.label(p)
    }
}

fn subset_label(mask: u32, n: usize) -> String {
    if mask == 0 {
        return "∅".into();
    }
    let items: Vec<String> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// `I_n`: subsets of `{0..n-1}` with at most two elements, plus the full set,
/// ordered by inclusion. Listed as `∅`, singletons, pairs (lexicographic),
/// full set.
pub fn build_in(n: usize) -> Result<IndexPoset> {
    if !(3..=MAX_INDEX_N).contains(&n) {
        return Err(LatticeError::InvalidParameter(format!("I_n needs 3 <= n <= {MAX_INDEX_N}, got {n}")));
    }
    let full: u32 = (1 << n) - 1;
    let mut subsets = vec![0u32];
    subsets.extend((0..n).map(|i| 1u32 << i));
    for i in 0..n {
        for j in i + 1..n {
            subsets.push(1 << i | 1 << j);
        }
    }
    if n > 2 && !subsets.contains(&full) {
        subsets.push(full);
    }
    let poset = FinitePoset::from_order(subsets.len(), |p, q| subsets[p] & !subsets[q] == 0)?
        .with_labels(subsets.iter().map(|&m| subset_label(m, n)).collect())?;
    Ok(IndexPoset { poset, subsets: Some((n, subsets)) })
}

/// Whether node objects are lattices with lattice homomorphisms, or
/// join-semilattices with zero and zero-preserving join-homomorphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagramKind {
    Lattice,
    Semilattice,
}

/// A functor from an index poset to finite lattices or semilattices.
///
/// Transition maps are stored for every comparable pair `p ≤ q`.
#[derive(Clone, Debug)]
pub struct Diagram {
    kind: DiagramKind,
    index: IndexPoset,
    nodes: Vec<FiniteLattice>,
    maps: HashMap<(usize, usize), Vec<usize>>,
}

pub type LatticeDiagram = Diagram;
pub type SemilatticeDiagram = Diagram;

fn check_arrow(kind: DiagramKind, s: &FiniteLattice, t: &FiniteLattice, m: &[usize]) -> bool {
    if m.len() != s.size() || m.iter().any(|&x| x >= t.size()) {
        return false;
    }
    match kind {
        DiagramKind::Lattice => LatticeHomomorphism::new(s, t, m.to_vec()).is_ok(),
        DiagramKind::Semilattice => {
            m[s.bottom()] == t.bottom()
                && (0..s.size()).all(|i| (0..s.size()).all(|j| m[s.join(i, j)] == t.join(m[i], m[j])))
        }
    }
}

impl Diagram {
    /// Builds a diagram from maps on (at least) every covering pair of the
    /// index; the remaining maps are composed, and functoriality is checked
    /// on every triple `p ≤ q ≤ r`. Supplied non-cover maps must agree with
    /// the composites.
    pub fn new(
        kind: DiagramKind,
        index: IndexPoset,
        nodes: Vec<FiniteLattice>,
        given: Vec<((usize, usize), Vec<usize>)>,
    ) -> Result<Self> {
        let ip = index.poset();
        let n = ip.size();
        if nodes.len() != n {
            return Err(LatticeError::InvalidDiagram(format!("{} nodes for an index of size {n}", nodes.len())));
        }
        let mut given_map: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for ((p, q), m) in given {
            if p >= n || q >= n || !ip.leq(p, q) {
                return Err(LatticeError::InvalidDiagram(format!("map {p} -> {q} on an incomparable pair")));
            }
            if !check_arrow(kind, &nodes[p], &nodes[q], &m) {
                return Err(LatticeError::InvalidDiagram(format!("map {p} -> {q} is not a morphism")));
            }
            if p == q && m.iter().enumerate().any(|(i, &x)| i != x) {
                return Err(LatticeError::InvalidDiagram(format!("map {p} -> {p} is not the identity")));
            }
            given_map.insert((p, q), m);
        }
        let order = ip.linear_extension();
        let mut maps: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for &p in &order {
            maps.insert((p, p), (0..nodes[p].size()).collect());
            for &r in &order {
                if r == p || !ip.leq(p, r) {
                    continue;
                }
                let q = *ip.lower_covers(r).iter().find(|&&q| ip.leq(p, q)).expect("an interval has covers");
                let cover = given_map
                    .get(&(q, r))
                    .ok_or_else(|| LatticeError::InvalidDiagram(format!("missing map for cover {q} -> {r}")))?;
                let composed: Vec<usize> = maps[&(p, q)].iter().map(|&x| cover[x]).collect();
                maps.insert((p, r), composed);
            }
        }
        for (k, m) in &given_map {
            if &maps[k] != m {
                return Err(LatticeError::InvalidDiagram(format!("map {} -> {} disagrees with composites", k.0, k.1)));
            }
        }
        let d = Diagram { kind, index, nodes, maps };
        d.check_functoriality()?;
        Ok(d)
    }

    /// Identity maps and `f_{p,r} = f_{q,r} ∘ f_{p,q}` for all `p ≤ q ≤ r`.
    pub fn check_functoriality(&self) -> Result<()> {
        let ip = self.index.poset();
        let n = ip.size();
        for p in 0..n {
            if self.map(p, p).iter().enumerate().any(|(i, &x)| i != x) {
                return Err(LatticeError::InvalidDiagram(format!("identity fails at {p}")));
            }
            for q in ip.up_set(p).iter() {
                if !check_arrow(self.kind, &self.nodes[p], &self.nodes[q], self.map(p, q)) {
                    return Err(LatticeError::InvalidDiagram(format!("map {p} -> {q} is not a morphism")));
                }
                for r in ip.up_set(q).iter() {
                    let via: Vec<usize> = self.map(p, q).iter().map(|&x| self.map(q, r)[x]).collect();
                    if via != self.map(p, r) {
                        return Err(LatticeError::InvalidDiagram(format!("composition fails on {p} <= {q} <= {r}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Every node is `l` and every map is the identity.
    pub fn constant(kind: DiagramKind, index: IndexPoset, l: &FiniteLattice) -> Result<Self> {
        let n = index.size();
        let id: Vec<usize> = (0..l.size()).collect();
        let given = index.poset().covers().iter().map(|&(p, q)| ((p, q), id.clone())).collect();
        Diagram::new(kind, index, vec![l.clone(); n], given)
    }

    pub fn kind(&self) -> DiagramKind {
        self.kind
    }

    pub fn index(&self) -> &IndexPoset {
        &self.index
    }

    pub fn node(&self, p: usize) -> &FiniteLattice {
        &self.nodes[p]
    }

    pub fn nodes(&self) -> &[FiniteLattice] {
        &self.nodes
    }

    /// The transition map `p → q`; panics unless `p ≤ q`.
    pub fn map(&self, p: usize, q: usize) -> &[usize] {
        &self.maps[&(p, q)]
    }

    /// Replaces each node `p` by the copy in which element `i` is renamed
    /// `perms[p][i]`, conjugating the transition maps.
    pub fn relabel_nodes(&self, perms: &[Vec<usize>]) -> Result<Diagram> {
        if perms.len() != self.nodes.len() {
            return Err(LatticeError::InvalidParameter("one permutation per node".into()));
        }
        let nodes = self.nodes.iter().zip(perms).map(|(l, p)| l.relabel(p)).collect::<Result<Vec<_>>>()?;
        let given = self
            .index
            .poset()
            .covers()
            .iter()
            .map(|&(p, q)| {
                let mut m = vec![0; self.nodes[p].size()];
                for (i, &x) in self.map(p, q).iter().enumerate() {
                    m[perms[p][i]] = perms[q][x];
                }
                ((p, q), m)
            })
            .collect();
        Diagram::new(self.kind, self.index.clone(), nodes, given)
    }
}

/// The diagram `A` for `M_n`: node `P` is the sublattice
/// `{0, 1} ∪ {a_x : x ∈ P}` of `M_n`, transitions are inclusions.
///
/// Node elements are ordered `0`, atoms by ascending `x`, `1`. At the full
/// set the node is exactly `m_n(n)`, atom `a_x` at index `x + 1`.
pub fn build_a_diagram(n: usize) -> Result<LatticeDiagram> {
    let index = build_in(n)?;
    let host = m_n(n)?;
    let subs: Vec<Sublattice> = (0..index.size())
        .map(|p| {
            let mask = index.subset(p).unwrap();
            let mut elems = vec![0];
            elems.extend((0..n).filter(|x| mask >> x & 1 == 1).map(|x| x + 1));
            elems.push(n + 1);
            Sublattice::new(&host, &elems)
        })
        .collect::<Result<_>>()?;
    let nodes = subs
        .iter()
        .map(|s| {
            let labels = s
                .elements
                .iter()
                .map(|&h| match h {
                    0 => "0".to_string(),
                    h if h == n + 1 => "1".to_string(),
                    h => format!("a{}", h - 1),
                })
                .collect();
            s.lattice.clone().with_labels(labels)
        })
        .collect::<Result<Vec<_>>>()?;
    let given = index
        .poset()
        .covers()
        .iter()
        .map(|&(p, q)| {
            let m = subs[p].elements.iter().map(|h| subs[q].elements.binary_search(h).unwrap()).collect();
            ((p, q), m)
        })
        .collect();
    Diagram::new(DiagramKind::Lattice, index, nodes, given)
}

/// `Con ∘ D`: node congruence lattices and the induced maps.
#[derive(Clone, Debug)]
pub struct ConcDiagram {
    pub cons: Vec<CongruenceLattice>,
    pub diagram: SemilatticeDiagram,
}

pub fn conc_diagram(d: &LatticeDiagram) -> Result<ConcDiagram> {
    if d.kind() != DiagramKind::Lattice {
        return Err(LatticeError::InvalidDiagram("congruences need a lattice diagram".into()));
    }
    let cons: Vec<CongruenceLattice> = d.nodes().iter().map(congruence_lattice).collect::<Result<_>>()?;
    let ip = d.index().poset();
    let mut given = Vec::new();
    for p in 0..ip.size() {
        for q in ip.up_set(p).iter() {
            let f = LatticeHomomorphism::new(d.node(p), d.node(q), d.map(p, q).to_vec())?;
            let m = conc_of_hom(d.node(p), d.node(q), &f, &cons[p], &cons[q]);
            given.push(((p, q), m.images().to_vec()));
        }
    }
    let nodes = cons.iter().map(|c| c.lattice().clone()).collect();
    let diagram = Diagram::new(DiagramKind::Semilattice, d.index().clone(), nodes, given)?;
    Ok(ConcDiagram { cons, diagram })
}

/// Components `ξ_p : D1(p) → D2(p)` of a natural transformation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalTransformation {
    pub components: Vec<Vec<usize>>,
}

impl NaturalTransformation {
    pub fn identity(d: &Diagram) -> Self {
        NaturalTransformation { components: d.nodes().iter().map(|l| (0..l.size()).collect()).collect() }
    }

    /// Each component is a morphism and every square commutes.
    pub fn verify(&self, d1: &Diagram, d2: &Diagram) -> Result<()> {
        let n = d1.index().size();
        if d2.index().size() != n || self.components.len() != n || d1.kind() != d2.kind() {
            return Err(LatticeError::InvalidDiagram("diagrams or components do not match".into()));
        }
        for p in 0..n {
            if !check_arrow(d1.kind(), d1.node(p), d2.node(p), &self.components[p]) {
                return Err(LatticeError::InvalidDiagram(format!("component at {p} is not a morphism")));
            }
        }
        let ip = d1.index().poset();
        for p in 0..n {
            for q in ip.up_set(p).iter() {
                let left = d1.map(p, q).iter().map(|&x| self.components[q][x]);
                let right = self.components[p].iter().map(|&x| d2.map(p, q)[x]);
                if !left.eq(right) {
                    return Err(LatticeError::InvalidDiagram(format!("square {p} -> {q} does not commute")));
                }
            }
        }
        Ok(())
    }

    /// Every component is a bijection.
    pub fn is_equivalence(&self, d2: &Diagram) -> bool {
        self.components.iter().enumerate().all(|(p, c)| {
            let mut s = c.clone();
            s.sort_unstable();
            s.len() == d2.node(p).size() && s.iter().enumerate().all(|(i, &x)| i == x)
        })
    }
}

/// Calls `f` on natural equivalences `D1 → D2` until it returns `false`.
///
/// Nodes are visited in a linear extension of the index; each candidate
/// component is an isomorphism of the node lattices and must commute with
/// the maps from every lower cover.
pub fn for_each_natural_equivalence(d1: &Diagram, d2: &Diagram, mut f: impl FnMut(&NaturalTransformation) -> bool) {
    let n = d1.index().size();
    if d2.index().size() != n || d1.kind() != d2.kind() {
        return;
    }
    let ip = d1.index().poset();
    if (0..n)
        .any(|p| (ip.up_set(p).iter().collect::<Vec<_>>()) != (d2.index().poset().up_set(p).iter().collect::<Vec<_>>()))
    {
        return;
    }
    let order = ip.linear_extension();
    let mut isos: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    for p in 0..n {
        for_each_isomorphism(d1.node(p), d2.node(p), |m| {
            isos[p].push(m.to_vec());
            true
        });
        if isos[p].is_empty() {
            return;
        }
    }
    let mut comps: Vec<Option<usize>> = vec![None; n];
    fn rec(
        k: usize,
        order: &[usize],
        d1: &Diagram,
        d2: &Diagram,
        isos: &[Vec<Vec<usize>>],
        comps: &mut Vec<Option<usize>>,
        f: &mut dyn FnMut(&NaturalTransformation) -> bool,
    ) -> bool {
        if k == order.len() {
            let nt = NaturalTransformation {
                components: comps.iter().enumerate().map(|(p, c)| isos[p][c.unwrap()].clone()).collect(),
            };
            return f(&nt);
        }
        let r = order[k];
        for (ci, cand) in isos[r].iter().enumerate() {
            let ok = d1.index().poset().lower_covers(r).iter().all(|&p| {
                let xp = &isos[p][comps[p].unwrap()];
                d1.map(p, r).iter().map(|&x| cand[x]).eq(xp.iter().map(|&x| d2.map(p, r)[x]))
            });
            if ok {
                comps[r] = Some(ci);
                if !rec(k + 1, order, d1, d2, isos, comps, f) {
                    return false;
                }
                comps[r] = None;
            }
        }
        true
    }
    rec(0, &order, d1, d2, &isos, &mut comps, &mut f);
}

pub fn find_natural_equivalence(d1: &Diagram, d2: &Diagram) -> Option<NaturalTransformation> {
    let mut out = None;
    for_each_natural_equivalence(d1, d2, |nt| {
        out = Some(nt.clone());
        false
    });
    out
}

/// All natural equivalences, stopping after `limit`.
pub fn natural_equivalences(d1: &Diagram, d2: &Diagram, limit: usize) -> Vec<NaturalTransformation> {
    let mut out = Vec::new();
    for_each_natural_equivalence(d1, d2, |nt| {
        out.push(nt.clone());
        out.len() < limit
    });
    out
}

/// Which bound of `A_{x}` pairs with the atom: `Zero` gives `Θ(0, a_x)`,
/// `One` gives `Θ(a_x, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    Zero,
    One,
}

/// A choice of elements at which to evaluate the five implications.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiftingInstance {
    /// `u < v` in the node at `∅`.
    pub u: usize,
    pub v: usize,
    pub x: usize,
    pub y: usize,
    /// In the node at `{x}`, inside the image of `[u, v]`.
    pub bx: usize,
    /// In the node at `{y}`.
    pub by: usize,
    pub c: Bound,
}

/// Hypothesis and conclusion of one implication.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Implication {
    pub hypothesis: bool,
    pub conclusion: bool,
}

impl Implication {
    pub fn holds(&self) -> bool {
        !self.hypothesis || self.conclusion
    }
}

/// The five implications, in order:
/// 1. `Θ(u,b_x) = ξ(Θ(c,a_x))` at `{x}` carries over to `{x,y}`;
/// 2. the same at both `x` and `y` forces `b_x ∧ b_y = u`;
/// 3. `Θ(b_x,v) = ξ(Θ(c,a_x))` at `{x}` carries over to `{x,y}`;
/// 4. the same at both forces `b_x ∨ b_y = v`;
/// 5. `Θ(u,b_x) = ξ(Θ(c,a_x))` and `Θ(b_y,v) = ξ(Θ(c,a_y))` force `b_x ≤ b_y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingReport {
    /// `Θ(u, v)` is the full congruence at every node.
    pub bounds_full: bool,
    pub items: [Implication; 5],
}

impl LiftingReport {
    pub fn all_hold(&self) -> bool {
        self.bounds_full && self.items.iter().all(Implication::holds)
    }
}

/// A verified copy of `M_n` inside the top node of a lifting.
#[derive(Clone, Debug)]
pub struct MnExtraction {
    pub u: usize,
    pub v: usize,
    /// `b[x]` is the middle element of node `{x}`, carried to the top node.
    pub b: Vec<usize>,
    /// `true` when `ξ_{x}` sends `Θ(0, a_x)` to `Θ(u, b_x)` for every `x`;
    /// `false` when it sends it to `Θ(b_x, v)` for every `x`.
    pub lower_branch: bool,
    /// `M_n → B_top` with `m_n` indexing.
    pub embedding: LatticeHomomorphism,
}

/// A lattice diagram `B` on `I_n` with a natural equivalence
/// `ξ : Con ∘ A → Con ∘ B`, checked once and then queried.
#[derive(Clone, Debug)]
pub struct Lifting<'a> {
    n: usize,
    b: &'a LatticeDiagram,
    xi: &'a NaturalTransformation,
    a: LatticeDiagram,
    con_a: ConcDiagram,
    con_b: ConcDiagram,
}

impl<'a> Lifting<'a> {
    pub fn new(b: &'a LatticeDiagram, xi: &'a NaturalTransformation) -> Result<Self> {
        let n = b.index().ground().ok_or_else(|| LatticeError::InvalidDiagram("index is not I_n".into()))?;
        let reference = build_in(n)?;
        if reference.size() != b.index().size()
            || (0..reference.size()).any(|p| reference.subset(p) != b.index().subset(p))
        {
            return Err(LatticeError::InvalidDiagram("index is not I_n".into()));
        }
        if b.kind() != DiagramKind::Lattice {
            return Err(LatticeError::InvalidDiagram("a lifting is a lattice diagram".into()));
        }
        let a = build_a_diagram(n)?;
        let con_a = conc_diagram(&a)?;
        let con_b = conc_diagram(b)?;
        xi.verify(&con_a.diagram, &con_b.diagram)
            .map_err(|e| LatticeError::HypothesisViolated(format!("ξ is not natural: {e}")))?;
        if !xi.is_equivalence(&con_b.diagram) {
            return Err(LatticeError::HypothesisViolated("ξ is not a natural equivalence".into()));
        }
        Ok(Lifting { n, b, xi, a, con_a, con_b })
    }

    fn node(&self, mask: u32) -> usize {
        self.b.index().index_of(mask).expect("subset of I_n")
    }

    /// Index in `Con A_p` of `Θ(c, a_x)`.
    fn theta_a(&self, p: usize, x: usize, c: Bound) -> usize {
        let mask = self.b.index().subset(p).unwrap();
        let pos = 1 + (0..x).filter(|i| mask >> i & 1 == 1).count();
        let top = mask.count_ones() as usize + 1;
        let lat = self.a.node(p);
        match c {
            Bound::Zero => self.con_a.cons[p].principal(lat, 0, pos),
            Bound::One => self.con_a.cons[p].principal(lat, pos, top),
        }
    }

    fn theta_b(&self, p: usize, lo: usize, hi: usize) -> usize {
        self.con_b.cons[p].principal(self.b.node(p), lo, hi)
    }

    pub fn check(&self, inst: &LiftingInstance) -> Result<LiftingReport> {
        let n = self.n;
        let LiftingInstance { u, v, x, y, bx, by, c } = *inst;
        if x >= n || y >= n || x == y {
            return Err(LatticeError::PreconditionFailed(format!("x = {x}, y = {y} must be distinct in 0..{n}")));
        }
        let e = self.node(0);
        let b0 = self.b.node(e);
        if u >= b0.size() || v >= b0.size() || !b0.lt(u, v) {
            return Err(LatticeError::PreconditionFailed(format!("need u < v in the node at ∅, got {u}, {v}")));
        }
        let px = self.node(1 << x);
        let py = self.node(1 << y);
        let pp = self.node(1 << x | 1 << y);
        let (ux, vx) = (self.b.map(e, px)[u], self.b.map(e, px)[v]);
        let (uy, vy) = (self.b.map(e, py)[u], self.b.map(e, py)[v]);
        let lx = self.b.node(px);
        let ly = self.b.node(py);
        if bx >= lx.size() || !lx.leq(ux, bx) || !lx.leq(bx, vx) {
            return Err(LatticeError::PreconditionFailed(format!("b_x = {bx} is outside [u, v]")));
        }
        if by >= ly.size() || !ly.leq(uy, by) || !ly.leq(by, vy) {
            return Err(LatticeError::PreconditionFailed(format!("b_y = {by} is outside [u, v]")));
        }
        let bounds_full = (0..self.b.index().size()).all(|p| {
            let m = self.b.map(e, p);
            self.con_b.cons[p].get(self.theta_b(p, m[u], m[v])).is_full()
        });
        let xi = &self.xi.components;
        let lower_x = self.theta_b(px, ux, bx) == xi[px][self.theta_a(px, x, c)];
        let lower_y = self.theta_b(py, uy, by) == xi[py][self.theta_a(py, y, c)];
        let upper_x = self.theta_b(px, bx, vx) == xi[px][self.theta_a(px, x, c)];
        let upper_y = self.theta_b(py, by, vy) == xi[py][self.theta_a(py, y, c)];
        let lp = self.b.node(pp);
        let (up, vp) = (self.b.map(e, pp)[u], self.b.map(e, pp)[v]);
        let bxp = self.b.map(px, pp)[bx];
        let byp = self.b.map(py, pp)[by];
        let txp = xi[pp][self.theta_a(pp, x, c)];
        let items = [
            Implication { hypothesis: lower_x, conclusion: self.theta_b(pp, up, bxp) == txp },
            Implication { hypothesis: lower_x && lower_y, conclusion: lp.meet(bxp, byp) == up },
            Implication { hypothesis: upper_x, conclusion: self.theta_b(pp, bxp, vp) == txp },
            Implication { hypothesis: upper_x && upper_y, conclusion: lp.join(bxp, byp) == vp },
            Implication { hypothesis: lower_x && upper_y, conclusion: lp.leq(bxp, byp) },
        ];
        Ok(LiftingReport { bounds_full, items })
    }

    /// Every instance: all `u < v` at `∅`, ordered pairs `x ≠ y`, all
    /// `b_x`, `b_y` in the images of `[u, v]`, and both bounds.
    pub fn all_instances(&self) -> Vec<LiftingInstance> {
        let e = self.node(0);
        let b0 = self.b.node(e);
        let mut out = Vec::new();
        for u in 0..b0.size() {
            for v in 0..b0.size() {
                if !b0.lt(u, v) {
                    continue;
                }
                for x in 0..self.n {
                    for y in 0..self.n {
                        if x == y {
                            continue;
                        }
                        let px = self.node(1 << x);
                        let py = self.node(1 << y);
                        let ix = self.b.node(px).interval(self.b.map(e, px)[u], self.b.map(e, px)[v]);
                        let iy = self.b.node(py).interval(self.b.map(e, py)[u], self.b.map(e, py)[v]);
                        for &bx in &ix {
                            for &by in &iy {
                                for c in [Bound::Zero, Bound::One] {
                                    out.push(LiftingInstance { u, v, x, y, bx, by, c });
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Locates `M_n` in the top node.
    ///
    /// Each node `{x}` must be a 3-element chain; `u < v` is the first such
    /// pair at `∅`, `b_x` the middle of node `{x}`. The atoms split by
    /// whether `ξ_{x}` sends `Θ(0, a_x)` to `Θ(u, b_x)` or to `Θ(b_x, v)`;
    /// on a valid lifting one side is empty, and the elements `u`, `b_x`,
    /// `v` then form `M_n`.
    pub fn extract_mn(&self) -> Result<MnExtraction> {
        let n = self.n;
        let e = self.node(0);
        let top = self.node((1u32 << n) - 1);
        let b0 = self.b.node(e);
        let (u, v) = (0..b0.size())
            .flat_map(|u| (0..b0.size()).map(move |v| (u, v)))
            .find(|&(u, v)| b0.lt(u, v))
            .ok_or_else(|| LatticeError::HypothesisViolated("the node at ∅ has a single element".into()))?;
        let mut mids = Vec::with_capacity(n);
        let mut lower = Vec::with_capacity(n);
        for x in 0..n {
            let px = self.node(1 << x);
            let l = self.b.node(px);
            if l.size() != 3 || l.height() != 2 {
                return Err(LatticeError::HypothesisViolated(format!(
                    "node {} is not a 3-element chain",
                    self.b.index().label(px)
                )));
            }
            let (ux, vx) = (self.b.map(e, px)[u], self.b.map(e, px)[v]);
            if ux != l.bottom() || vx != l.top() {
                return Err(LatticeError::HypothesisViolated(format!(
                    "u, v are not the bounds of node {}",
                    self.b.index().label(px)
                )));
            }
            let mid = (0..3).find(|&i| i != ux && i != vx).unwrap();
            let image = self.xi.components[px][self.theta_a(px, x, Bound::Zero)];
            let is_lower = image == self.theta_b(px, ux, mid);
            if !is_lower && image != self.theta_b(px, mid, vx) {
                return Err(LatticeError::HypothesisViolated(format!("ξ at node {{{x}}} maps Θ(0,a) to neither atom")));
            }
            mids.push(mid);
            lower.push(is_lower);
        }
        let n_lower = lower.iter().filter(|&&b| b).count();
        let lower_branch = n_lower >= 2;
        if (lower_branch && n_lower != n) || (!lower_branch && n_lower != 0) {
            return Err(LatticeError::HypothesisViolated("atoms split across both congruence sides".into()));
        }
        let ut = self.b.map(e, top)[u];
        let vt = self.b.map(e, top)[v];
        let b: Vec<usize> = (0..n).map(|x| self.b.map(self.node(1 << x), top)[mids[x]]).collect();
        let mut map = vec![ut];
        map.extend(&b);
        map.push(vt);
        let mn = m_n(n)?;
        let embedding = LatticeHomomorphism::new(&mn, self.b.node(top), map)
            .map_err(|e| LatticeError::HypothesisViolated(format!("extracted elements fail: {e}")))?;
        if !embedding.is_injective() {
            return Err(LatticeError::HypothesisViolated("extracted map is not injective".into()));
        }
        Ok(MnExtraction { u: ut, v: vt, b, lower_branch, embedding })
    }
}

pub fn check_lifting_constraints(
    b: &LatticeDiagram,
    xi: &NaturalTransformation,
    inst: &LiftingInstance,
) -> Result<LiftingReport> {
    Lifting::new(b, xi)?.check(inst)
}

pub fn extract_mn_from_lifting(b: &LatticeDiagram, xi: &NaturalTransformation) -> Result<MnExtraction> {
    Lifting::new(b, xi)?.extract_mn()
}

/// A chain `{u, x, v}` whose inclusion into `L` is a congruence-preserving
/// extension.
///
/// Requires `length(L) ≤ 3`, `Θ(u, v)` full and `Con L ≅ 2^2`. If `[u, v]`
/// has length 2, `x` is its least-index inner element. If it has length 3,
/// a copy `a < x_i < b` of `M_3` is located, and `x` is `b` when `a = u`
/// and `a` otherwise.
pub fn find_chain_cpe(l: &FiniteLattice, u: usize, v: usize) -> Result<[usize; 3]> {
    l.check_index(u)?;
    l.check_index(v)?;
    if l.height() > 3 {
        return Err(LatticeError::PreconditionFailed(format!("length {} exceeds 3", l.height())));
    }
    if !l.lt(u, v) {
        return Err(LatticeError::PreconditionFailed(format!("{u} < {v} fails")));
    }
    let con = congruence_lattice(l)?;
    if !con.get(con.principal(l, u, v)).is_full() {
        return Err(LatticeError::PreconditionFailed(format!("Θ({u},{v}) is not the full congruence")));
    }
    if con.boolean_rank() != Some(2) {
        return Err(LatticeError::PreconditionFailed("Con L is not 2^2".into()));
    }
    let x = match l.length(u, v)? {
        2 => l.interval(u, v).into_iter().find(|&x| x != u && x != v).unwrap(),
        3 => {
            let f = find_embedding(&m_n(3)?, l)
                .ok_or_else(|| LatticeError::HypothesisViolated("no M_3 in a non-distributive lattice".into()))?;
            let (a, b) = (f.apply(0), f.apply(4));
            if a == u {
                b
            } else {
                a
            }
        }
        k => return Err(LatticeError::PreconditionFailed(format!("[u, v] has length {k}"))),
    };
    if !is_congruence_preserving_extension(l, &[u, x, v])? {
        return Err(LatticeError::HypothesisViolated(format!("chain {{{u},{x},{v}}} does not preserve congruences")));
    }
    Ok([u, x, v])
}

/// Every chain from `u` to `v` (any length) of which `L` is a
/// congruence-preserving extension, by exhaustive enumeration of the chains
/// in `[u, v]` containing both ends.
pub fn congruence_preserving_chains(l: &FiniteLattice, u: usize, v: usize) -> Result<Vec<Vec<usize>>> {
    l.check_index(u)?;
    l.check_index(v)?;
    if !l.leq(u, v) {
        return Err(LatticeError::NotComparable { a: u, b: v });
    }
    let inner: Vec<usize> = l.interval(u, v).into_iter().filter(|&x| x != u && x != v).collect();
    let mut out = Vec::new();
    fn rec(
        l: &FiniteLattice,
        inner: &[usize],
        k: usize,
        cur: &mut Vec<usize>,
        v: usize,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        if k == inner.len() {
            let mut c = cur.clone();
            c.push(v);
            if is_congruence_preserving_extension(l, &c)? {
                out.push(c);
            }
            return Ok(());
        }
        rec(l, inner, k + 1, cur, v, out)?;
        let x = inner[k];
        if cur.iter().all(|&y| l.leq(y, x) || l.leq(x, y)) {
            cur.push(x);
            rec(l, inner, k + 1, cur, v, out)?;
            cur.pop();
        }
        Ok(())
    }
    let mut cur = vec![u];
    if u != v {
        rec(l, &inner, 0, &mut cur, v, &mut out)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boolean, chain, fig_cel, m_nm, ordinal_sum};
    use crate::order::are_isomorphic;

    #[test]
    fn index_poset_sizes() {
        assert_eq!(build_in(3).unwrap().size(), 8);
        assert_eq!(build_in(4).unwrap().size(), 12);
        let i5 = build_in(5).unwrap();
        assert_eq!(i5.size(), 17);
        assert_eq!(i5.subset(0), Some(0));
        assert_eq!(i5.subset(16), Some(31));
        assert!((0..17).all(|p| i5.leq(0, p) && i5.leq(p, 16)));
        assert!(build_in(2).is_err());
    }

    #[test]
    fn a_diagram_nodes() {
        let a = build_a_diagram(4).unwrap();
        let ix = a.index();
        assert!(are_isomorphic(a.node(ix.index_of(0).unwrap()), &chain(2).unwrap()));
        assert!(are_isomorphic(a.node(ix.index_of(1).unwrap()), &chain(3).unwrap()));
        assert!(are_isomorphic(a.node(ix.index_of(0b101).unwrap()), &boolean(2).unwrap()));
        assert!(are_isomorphic(a.node(ix.index_of(0b1111).unwrap()), &m_n(4).unwrap()));
    }

    #[test]
    fn conc_node_sizes() {
        for n in 3..=6 {
            let c = conc_diagram(&build_a_diagram(n).unwrap()).unwrap();
            let ix = c.diagram.index().clone();
            for p in 0..ix.size() {
                let k = ix.subset(p).unwrap().count_ones() as usize;
                let want = if k == n || k == 0 { 2 } else { 4 };
                assert_eq!(c.diagram.node(p).size(), want, "n={n} p={}", ix.label(p));
            }
        }
    }

    #[test]
    fn natural_equivalence_examples() {
        let a = build_a_diagram(4).unwrap();
        let ca = conc_diagram(&a).unwrap().diagram;
        let id = find_natural_equivalence(&ca, &ca).unwrap();
        assert_eq!(id, NaturalTransformation::identity(&ca));
        assert_eq!(natural_equivalences(&ca, &ca, 10).len(), 2);
        let two = Diagram::constant(DiagramKind::Semilattice, ca.index().clone(), &chain(2).unwrap()).unwrap();
        assert!(find_natural_equivalence(&ca, &two).is_none());
    }

    #[test]
    fn rejects_non_functorial() {
        let ix = build_in(3).unwrap();
        let c2 = chain(2).unwrap();
        let mut given: Vec<_> = ix.poset().covers().iter().map(|&(p, q)| ((p, q), vec![0, 1])).collect();
        given[0].1 = vec![0, 0];
        // the collapsed edge breaks a commuting square through another singleton
        let err = Diagram::new(DiagramKind::Lattice, ix.clone(), vec![c2.clone(); 8], given);
        assert!(matches!(err, Err(LatticeError::InvalidDiagram(_))));
        let given: Vec<_> = ix.poset().covers().iter().map(|&(p, q)| ((p, q), vec![0, 1])).collect();
        let mut with_bad = given.clone();
        with_bad.push(((0, 7), vec![1, 1]));
        assert!(Diagram::new(DiagramKind::Lattice, ix, vec![c2; 8], with_bad).is_err());
    }

    #[test]
    fn constraints_on_a() {
        let a = build_a_diagram(3).unwrap();
        let ca = conc_diagram(&a).unwrap().diagram;
        let xi = NaturalTransformation::identity(&ca);
        let lift = Lifting::new(&a, &xi).unwrap();
        let inst = LiftingInstance { u: 0, v: 1, x: 0, y: 1, bx: 1, by: 1, c: Bound::Zero };
        let r = lift.check(&inst).unwrap();
        assert!(r.items[1].hypothesis && r.items[1].conclusion);
        let r = lift.check(&LiftingInstance { c: Bound::One, ..inst }).unwrap();
        assert!(r.items[3].hypothesis && r.items[3].conclusion);
        assert!(lift.check(&LiftingInstance { y: 0, ..inst }).is_err());
        for i in lift.all_instances() {
            assert!(lift.check(&i).unwrap().all_hold());
        }
    }

    #[test]
    fn extraction_from_a() {
        for n in 3..=5 {
            let a = build_a_diagram(n).unwrap();
            let ca = conc_diagram(&a).unwrap().diagram;
            for xi in natural_equivalences(&ca, &ca, 10) {
                let got = extract_mn_from_lifting(&a, &xi).unwrap();
                let want: Vec<usize> = (0..n + 2).collect();
                assert_eq!(got.embedding.map(), &want[..]);
            }
        }
    }

    #[test]
    fn extraction_from_bigger_top() {
        let n = 3;
        let a = build_a_diagram(n).unwrap();
        let ix = a.index().clone();
        let full = ix.size() - 1;
        let host = m_nm(3, 3).unwrap();
        // A_P → A_full → M_{3,3}: 0 ↦ 0, a_x ↦ a_{x+1}, 1 ↦ b1.
        let into_host = [0, 1, 2, 3, 4];
        let mut nodes = a.nodes().to_vec();
        nodes[full] = host.clone();
        let given = ix
            .poset()
            .covers()
            .iter()
            .map(|&(p, q)| {
                let m: Vec<usize> = a.map(p, q).iter().map(|&i| if q == full { into_host[i] } else { i }).collect();
                ((p, q), m)
            })
            .collect();
        let b = Diagram::new(DiagramKind::Lattice, ix, nodes, given).unwrap();
        let ca = conc_diagram(&a).unwrap().diagram;
        let cb = conc_diagram(&b).unwrap().diagram;
        let xi = find_natural_equivalence(&ca, &cb).unwrap();
        let got = extract_mn_from_lifting(&b, &xi).unwrap();
        assert_eq!(got.embedding.map(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn extraction_rejects_long_chain() {
        let a = build_a_diagram(3).unwrap();
        let ix = a.index().clone();
        let p0 = ix.index_of(1).unwrap();
        let mut nodes = a.nodes().to_vec();
        nodes[p0] = chain(4).unwrap();
        let given = ix
            .poset()
            .covers()
            .iter()
            .map(|&(p, q)| {
                let m: Vec<usize> = if q == p0 {
                    vec![0, 3]
                } else if p == p0 {
                    let f = a.map(p0, q);
                    vec![f[0], f[1], f[1], f[2]]
                } else {
                    a.map(p, q).to_vec()
                };
                ((p, q), m)
            })
            .collect();
        let b = Diagram::new(DiagramKind::Lattice, ix, nodes, given).unwrap();
        let xi = NaturalTransformation::identity(&conc_diagram(&a).unwrap().diagram);
        let err = Lifting::new(&b, &xi);
        assert!(matches!(err, Err(LatticeError::HypothesisViolated(_))));
    }

    #[test]
    fn chain_cpe_examples() {
        let l = ordinal_sum(&m_n(3).unwrap(), &chain(1).unwrap()).unwrap();
        assert_eq!(find_chain_cpe(&l, 0, 5).unwrap(), [0, 4, 5]);
        let b2 = boolean(2).unwrap();
        assert_eq!(find_chain_cpe(&b2, 0, 3).unwrap(), [0, 1, 3]);
        assert!(matches!(find_chain_cpe(&fig_cel(), 0, 10), Err(LatticeError::PreconditionFailed(_))));
        assert!(congruence_preserving_chains(&fig_cel(), 0, 10).unwrap().is_empty());
        assert_eq!(congruence_preserving_chains(&b2, 0, 3).unwrap().len(), 2);
    }
}
