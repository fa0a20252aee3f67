use latkit::congruence::{conc_of_hom, congruence_lattice, quotient, LatticeHomomorphism};
use latkit::constructions::{chain, m_n, product};
use latkit::dimension::Dimension;
use latkit::order::{are_isomorphic, find_isomorphism};
use latkit::support::{kernel_closure, Kernel, PartialFunctionPoset};
use latkit::FiniteLattice;
use proptest::prelude::*;

/// Lattice of a closure system on `{0..4}`: the given sets, closed under
/// intersection, plus the full set.
fn closure_lattice(sets: &[u8]) -> FiniteLattice {
    let mut fam: Vec<u8> = vec![0x1f];
    fam.extend(sets.iter().map(|s| s & 0x1f));
    loop {
        let mut more = Vec::new();
        for &a in &fam {
            for &b in &fam {
                if !fam.contains(&(a & b)) && !more.contains(&(a & b)) {
                    more.push(a & b);
                }
            }
        }
        if more.is_empty() {
            break;
        }
        fam.extend(more);
    }
    fam.sort_unstable();
    fam.dedup();
    FiniteLattice::from_order(fam.len(), |i, j| fam[i] & !fam[j] == 0).unwrap()
}

fn random_lattice() -> impl Strategy<Value = FiniteLattice> {
    prop::collection::vec(any::<u8>(), 0..7).prop_map(|s| closure_lattice(&s))
}

fn random_modular() -> impl Strategy<Value = FiniteLattice> {
    (3usize..5, 1usize..4, any::<bool>()).prop_map(|(n, k, twice)| {
        let base = product(&m_n(n).unwrap(), &chain(k).unwrap()).unwrap();
        if twice {
            product(&base, &chain(2).unwrap()).unwrap()
        } else {
            base
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lattice_laws(l in random_lattice()) {
        prop_assert!(l.check_axioms());
        for a in 0..l.size() {
            for b in 0..l.size() {
                prop_assert_eq!(l.meet(a, l.join(a, b)), a);
                prop_assert_eq!(l.join(a, l.meet(a, b)), a);
                prop_assert_eq!(l.meet(a, b), l.meet(b, a));
            }
        }
    }

    #[test]
    fn dual_is_an_involution(l in random_lattice()) {
        let dd = l.dual().dual();
        prop_assert_eq!(dd.covers(), l.covers());
        prop_assert!(are_isomorphic(&dd, &l));
    }

    #[test]
    fn modular_iff_no_n5(l in random_lattice()) {
        prop_assert_eq!(l.is_modular(), l.find_n5().is_none());
    }

    #[test]
    fn isomorphism_is_symmetric(l in random_lattice(), m in random_lattice()) {
        prop_assert_eq!(find_isomorphism(&l, &m).is_some(), find_isomorphism(&m, &l).is_some());
    }

    #[test]
    fn relabeled_copy_is_isomorphic(l in random_lattice(), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..l.size()).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let r = l.relabel(&perm).unwrap();
        let iso = find_isomorphism(&l, &r).unwrap();
        prop_assert!(LatticeHomomorphism::new(&l, &r, iso).is_ok());
    }

    #[test]
    fn jordan_holder(l in random_modular()) {
        let chains = l.maximal_chains(l.bottom(), l.top()).unwrap();
        prop_assert!(chains.iter().all(|c| c.len() == l.height() + 1));
    }

    #[test]
    fn congruences_are_compatible(l in random_lattice()) {
        let con = congruence_lattice(&l).unwrap();
        for c in con.congruences() {
            prop_assert!(c.compatibility_witness(&l).is_none());
            let q = quotient(&l, c).unwrap();
            prop_assert_eq!(q.lattice.size(), c.block_count());
        }
    }

    #[test]
    fn conc_is_functorial(l in random_lattice()) {
        // l → l × 2 → (l × 2) × 2, each x ↦ (x, 0)
        let m = product(&l, &chain(2).unwrap()).unwrap();
        let n = product(&m, &chain(2).unwrap()).unwrap();
        let f = LatticeHomomorphism::new(&l, &m, (0..l.size()).collect()).unwrap();
        let g = LatticeHomomorphism::new(&m, &n, (0..m.size()).collect()).unwrap();
        let (cl, cm, cn) = (congruence_lattice(&l).unwrap(), congruence_lattice(&m).unwrap(), congruence_lattice(&n).unwrap());
        let cf = conc_of_hom(&l, &m, &f, &cl, &cm);
        let cg = conc_of_hom(&m, &n, &g, &cm, &cn);
        let cgf = conc_of_hom(&l, &n, &f.compose(&g), &cl, &cn);
        for i in 0..cl.len() {
            prop_assert_eq!(cgf.apply(i), cg.apply(cf.apply(i)));
        }
        let id = LatticeHomomorphism::identity(&l);
        let cid = conc_of_hom(&l, &l, &id, &cl, &cl);
        prop_assert!((0..cl.len()).all(|i| cid.apply(i) == i));
    }

    #[test]
    fn delta_is_additive(l in random_modular(), picks in prop::collection::vec(any::<usize>(), 3)) {
        let d = Dimension::new(&l).unwrap();
        let mut v: Vec<usize> = picks.iter().map(|p| p % l.size()).collect();
        // make a ≤ b ≤ c
        v[1] = l.join(v[0], v[1]);
        v[2] = l.join(v[1], v[2]);
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(d.delta(a, c).unwrap(), d.delta(a, b).unwrap().add(&d.delta(b, c).unwrap()));
        prop_assert_eq!(d.delta(a, c).unwrap().total(), l.length(a, c).unwrap() as u64);
    }

    #[test]
    fn kernel_intersection(n in 1usize..4, k in 1usize..4, s1 in prop::collection::vec(any::<usize>(), 1..3), s2 in prop::collection::vec(any::<usize>(), 1..3)) {
        let pf = PartialFunctionPoset::new(n, k).unwrap();
        let a: Vec<usize> = s1.iter().map(|x| x % pf.size()).collect();
        let b: Vec<usize> = s2.iter().map(|x| x % pf.size()).collect();
        let ka = kernel_closure(&pf, &a).unwrap();
        let kb = kernel_closure(&pf, &b).unwrap();
        let both = ka.intersection(&pf, &kb).unwrap();
        prop_assert!(Kernel::new(&pf, both.elements()).is_ok());
        prop_assert!(both.elements().iter().all(|&x| ka.contains(x) && kb.contains(x)));
    }
}
