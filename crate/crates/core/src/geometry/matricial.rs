//! Matricial algebras `M_{u_1}(F) × … × M_{u_k}(F)` through their ideal
//! lattices and `K₀` signatures.

use super::field::FiniteField;
use super::subspace::subspace_lattice;
use crate::constructions::{chain, product};
use crate::error::{LatticeError, Result};
use crate::order::FiniteLattice;

/// Field plus block sizes `u_1..u_k` of a matricial algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatricialSignature {
    pub field: FiniteField,
    blocks: Vec<usize>,
}

impl MatricialSignature {
    pub fn new(field: FiniteField, blocks: Vec<usize>) -> Result<Self> {
        if blocks.contains(&0) {
            return Err(LatticeError::InvalidParameter("block sizes must be >= 1".into()));
        }
        Ok(MatricialSignature { field, blocks })
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }
}

/// A pre-ordered group `Z^k` (componentwise order) with an order-unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupWithUnitSignature {
    unit: Vec<u64>,
}

impl GroupWithUnitSignature {
    pub fn new(unit: Vec<u64>) -> Result<Self> {
        if unit.contains(&0) {
            return Err(LatticeError::InvalidParameter(format!("{unit:?} is not an order-unit of Z^k")));
        }
        Ok(GroupWithUnitSignature { unit })
    }

    pub fn rank(&self) -> usize {
        self.unit.len()
    }

    pub fn unit(&self) -> &[u64] {
        &self.unit
    }

    /// Same rank and same unit up to a permutation of coordinates.
    pub fn is_isomorphic(&self, other: &GroupWithUnitSignature) -> bool {
        let mut a = self.unit.clone();
        let mut b = other.unit.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }
}

impl std::fmt::Display for GroupWithUnitSignature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let u: Vec<String> = self.unit.iter().map(|x| x.to_string()).collect();
        write!(f, "(Z^{}, ({}))", self.rank(), u.join(","))
    }
}

/// Lattice of principal right ideals: `∏ Sub(F^{u_i})`, factor `i` varying
/// slowest-first as in [`product`].
pub fn matricial_ideal_lattice(sig: &MatricialSignature) -> Result<FiniteLattice> {
    let mut acc: Option<FiniteLattice> = None;
    for &u in &sig.blocks {
        let s = subspace_lattice(&sig.field, u)?.lattice;
        acc = Some(match acc {
            None => s,
            Some(a) => product(&a, &s)?,
        });
    }
    match acc {
        Some(l) => Ok(l),
        None => chain(1),
    }
}

/// `(K₀(R), [R]) = (Z^k, (u_1..u_k))`.
pub fn k0_of_matricial(sig: &MatricialSignature) -> GroupWithUnitSignature {
    GroupWithUnitSignature { unit: sig.blocks.iter().map(|&u| u as u64).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::congruence_lattice;
    use crate::constructions::{boolean, m_n};
    use crate::order::are_isomorphic;

    fn sig(q: usize, blocks: &[usize]) -> MatricialSignature {
        MatricialSignature::new(FiniteField::new(q).unwrap(), blocks.to_vec()).unwrap()
    }

    #[test]
    fn ideal_lattices() {
        assert!(are_isomorphic(&matricial_ideal_lattice(&sig(2, &[1])).unwrap(), &chain(2).unwrap()));
        let l = matricial_ideal_lattice(&sig(2, &[2, 1])).unwrap();
        assert_eq!(l.size(), 10);
        assert!(are_isomorphic(&l, &product(&m_n(3).unwrap(), &chain(2).unwrap()).unwrap()));
        assert_eq!(matricial_ideal_lattice(&sig(2, &[2, 2])).unwrap().size(), 25);
        assert_eq!(matricial_ideal_lattice(&sig(2, &[])).unwrap().size(), 1);
    }

    #[test]
    fn congruences_are_boolean() {
        let l = matricial_ideal_lattice(&sig(3, &[2, 1, 2])).unwrap();
        let con = congruence_lattice(&l).unwrap();
        assert!(are_isomorphic(con.lattice(), &boolean(3).unwrap()));
    }

    #[test]
    fn k0_signatures() {
        assert_eq!(k0_of_matricial(&sig(2, &[2, 3])).unit(), &[2, 3]);
        assert_eq!(k0_of_matricial(&sig(2, &[1])).to_string(), "(Z^1, (1))");
        assert_eq!(k0_of_matricial(&sig(2, &[])).rank(), 0);
        assert!(MatricialSignature::new(FiniteField::new(2).unwrap(), vec![0]).is_err());
        assert!(GroupWithUnitSignature::new(vec![1, 0]).is_err());
    }
}
