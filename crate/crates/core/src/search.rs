//! Backtracking search for structure-preserving maps between finite lattices.
//!
//! Elements of the source are assigned in index order, images are tried in
//! ascending order, and every assignment is closed under the meet/join
//! constraints it forces. The first map found is therefore the
//! lexicographically smallest valid one.

use crate::order::FiniteLattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum MapMode {
    /// Bijective homomorphism.
    Isomorphism,
    /// Injective homomorphism.
    Embedding,
}

struct Invariants {
    down: Vec<usize>,
    up: Vec<usize>,
    lower: Vec<usize>,
    upper: Vec<usize>,
}

impl Invariants {
    fn of(l: &FiniteLattice) -> Self {
        let n = l.size();
        Invariants {
            down: (0..n).map(|i| l.poset().down_set(i).count()).collect(),
            up: (0..n).map(|i| l.poset().up_set(i).count()).collect(),
            lower: (0..n).map(|i| l.lower_covers(i).len()).collect(),
            upper: (0..n).map(|i| l.upper_covers(i).len()).collect(),
        }
    }

    fn agree(&self, i: usize, other: &Invariants, j: usize) -> bool {
        self.down[i] == other.down[j]
            && self.up[i] == other.up[j]
            && self.lower[i] == other.lower[j]
            && self.upper[i] == other.upper[j]
    }
}

struct Search<'a> {
    a: &'a FiniteLattice,
    b: &'a FiniteLattice,
    inv: Option<(Invariants, Invariants)>,
    img: Vec<Option<usize>>,
    used: Vec<bool>,
    trail: Vec<usize>,
    assigned: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(a: &'a FiniteLattice, b: &'a FiniteLattice, mode: MapMode) -> Self {
        let inv = match mode {
            MapMode::Isomorphism => Some((Invariants::of(a), Invariants::of(b))),
            MapMode::Embedding => None,
        };
        Search {
            a,
            b,
            inv,
            img: vec![None; a.size()],
            used: vec![false; b.size()],
            trail: Vec::new(),
            assigned: Vec::new(),
        }
    }

    fn admissible(&self, x: usize, y: usize) -> bool {
        if self.used[y] {
            return false;
        }
        match &self.inv {
            Some((ia, ib)) => ia.agree(x, ib, y),
            None => true,
        }
    }

    fn set(&mut self, x: usize, y: usize) {
        self.img[x] = Some(y);
        self.used[y] = true;
        self.trail.push(x);
        self.assigned.push(x);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            let y = self.img[x].take().unwrap();
            self.used[y] = false;
            self.assigned.pop();
        }
    }

    /// Assigns `x ↦ y` and closes under forced meets and joins.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        if !self.admissible(x, y) {
            return false;
        }
        self.set(x, y);
        let mut queue = vec![x];
        while let Some(e) = queue.pop() {
            let fe = self.img[e].unwrap();
            let mut k = 0;
            while k < self.assigned.len() {
                let other = self.assigned[k];
                k += 1;
                let fo = self.img[other].unwrap();
                for (src, tgt) in
                    [(self.a.meet(e, other), self.b.meet(fe, fo)), (self.a.join(e, other), self.b.join(fe, fo))]
                {
                    match self.img[src] {
                        Some(t) if t == tgt => {}
                        Some(_) => return false,
                        None => {
                            if !self.admissible(src, tgt) {
                                return false;
                            }
                            self.set(src, tgt);
                            queue.push(src);
                        }
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, next: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let n = self.a.size();
        let mut x = next;
        while x < n && self.img[x].is_some() {
            x += 1;
        }
        if x == n {
            let map: Vec<usize> = self.img.iter().map(|o| o.unwrap()).collect();
            return f(&map);
        }
        for y in 0..self.b.size() {
            let mark = self.trail.len();
            if self.assign(x, y) && !self.run(x + 1, f) {
                self.undo_to(mark);
                return false;
            }
            self.undo_to(mark);
        }
        true
    }
}

pub(crate) fn for_each_map(
    a: &FiniteLattice,
    b: &FiniteLattice,
    mode: MapMode,
    fixed: &[(usize, usize)],
    mut f: impl FnMut(&[usize]) -> bool,
) {
    if mode == MapMode::Isomorphism && a.size() != b.size() {
        return;
    }
    if a.size() > b.size() {
        return;
    }
    let mut s = Search::new(a, b, mode);
    for &(x, y) in fixed {
        match s.img[x] {
            Some(t) if t == y => continue,
            Some(_) => return,
            None => {
                if !s.assign(x, y) {
                    return;
                }
            }
        }
    }
    s.run(0, &mut f);
}

pub(crate) fn first_map(
    a: &FiniteLattice,
    b: &FiniteLattice,
    mode: MapMode,
    fixed: &[(usize, usize)],
) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_map(a, b, mode, fixed, |m| {
        found = Some(m.to_vec());
        false
    });
    found
}
