//! Small finite fields as precomputed addition and multiplication tables.

use crate::error::{LatticeError, Result};

/// Largest field order accepted.
pub const MAX_FIELD_ORDER: usize = 1024;

/// `GF(p^k) = GF(p)[x] / (modulus)`.
///
/// Element `e` stands for the polynomial whose base-`p` digits (least
/// significant first) are the coefficients of `1, x, x², …`. So `0` and `1`
/// are the field's zero and one, and `0..p` is the prime subfield.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: usize,
    k: usize,
    q: usize,
    /// Monic modulus, coefficients of `1, x, …, x^k`.
    modulus: Vec<usize>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn prime_power(q: usize) -> Option<(usize, usize)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut r = q;
    let mut k = 0;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// Default moduli for the non-prime orders used most often.
fn builtin_modulus(q: usize) -> Option<(usize, Vec<usize>)> {
    Some(match q {
        4 => (2, vec![1, 1, 1]),        // x² + x + 1
        8 => (2, vec![1, 1, 0, 1]),     // x³ + x + 1
        9 => (3, vec![1, 0, 1]),        // x² + 1
        16 => (2, vec![1, 1, 0, 0, 1]), // x⁴ + x + 1
        25 => (5, vec![2, 0, 1]),       // x² + 2
        27 => (3, vec![1, 2, 0, 1]),    // x³ + 2x + 1
        _ => return None,
    })
}

/// Remainder of `a` modulo the monic `m` over `GF(p)`; coefficient vectors.
fn poly_rem(mut a: Vec<usize>, m: &[usize], p: usize) -> Vec<usize> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap();
        if lead != 0 {
            let shift = a.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - (lead * c) % p) % p;
            }
        }
        while a.last() == Some(&0) && a.len() > dm {
            a.pop();
        }
    }
    a
}

/// `m` has no monic factor of degree `1..=deg/2` (exhaustive trial division).
fn is_irreducible(m: &[usize], p: usize) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        for tail in 0..p.pow(d as u32) {
            let mut f = Vec::with_capacity(d + 1);
            let mut t = tail;
            for _ in 0..d {
                f.push(t % p);
                t /= p;
            }
            f.push(1);
            if poly_rem(m.to_vec(), &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// The field of order `q`: a prime, or one of 4, 8, 9, 16, 25, 27.
    pub fn new(q: usize) -> Result<Self> {
        if is_prime(q) {
            return Self::with_modulus(q, &[0, 1]);
        }
        if prime_power(q).is_none() {
            return Err(LatticeError::InvalidField(format!("{q} is not a prime power")));
        }
        match builtin_modulus(q) {
            Some((p, m)) => Self::with_modulus(p, &m),
            None => Err(LatticeError::InvalidField(format!(
                "no built-in modulus for order {q}; supply one with with_modulus"
            ))),
        }
    }

    /// `GF(p)[x] / (modulus)`; `modulus` lists coefficients of `1, x, …` and
    /// must be monic and irreducible.
    pub fn with_modulus(p: usize, modulus: &[usize]) -> Result<Self> {
        if !is_prime(p) {
            return Err(LatticeError::InvalidField(format!("{p} is not prime")));
        }
        if modulus.len() < 2 || modulus.last() != Some(&1) {
            return Err(LatticeError::InvalidField("modulus must be monic of degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(LatticeError::InvalidField(format!("coefficient out of range for p = {p}")));
        }
        let k = modulus.len() - 1;
        let q = p
            .checked_pow(k as u32)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or_else(|| LatticeError::InvalidField(format!("order {p}^{k} exceeds {MAX_FIELD_ORDER}")))?;
        if !is_irreducible(modulus, p) {
            return Err(LatticeError::InvalidField(format!("modulus {modulus:?} is reducible over GF({p})")));
        }
        let digits = |mut e: usize| -> Vec<usize> {
            (0..k)
                .map(|_| {
                    let d = e % p;
                    e /= p;
                    d
                })
                .collect()
        };
        let encode = |v: &[usize]| v.iter().rev().fold(0, |acc, &d| acc * p + d);
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&s) as u16;
                let mut prod = vec![0; 2 * k - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = poly_rem(prod, modulus, p);
                r.resize(k, 0);
                mul[a * q + b] = encode(&r) as u16;
            }
        }
        let neg: Vec<u16> = (0..q).map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u16).collect();
        let mut inv = vec![0u16; q];
        for a in 1..q {
            inv[a] = (1..q)
                .find(|&b| mul[a * q + b] == 1)
                .ok_or_else(|| LatticeError::InvalidField(format!("{a} has no inverse")))? as u16;
        }
        Ok(FiniteField { p, k, q, modulus: modulus.to_vec(), add, mul, neg, inv })
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn modulus(&self) -> &[usize] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        debug_assert!(a != 0);
        self.inv[a] as usize
    }

    /// Exhaustive check of the field axioms on the tables.
    pub fn check_axioms(&self) -> bool {
        let q = self.q;
        for a in 0..q {
            if self.add(a, 0) != a || self.mul(a, 1) != a || self.add(a, self.neg(a)) != 0 {
                return false;
            }
            if a != 0 && self.mul(a, self.inv(a)) != 1 {
                return false;
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
                for c in 0..q {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                        || self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_fields_satisfy_axioms() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = FiniteField::new(q).unwrap();
            assert_eq!(f.order(), q);
            assert!(f.check_axioms(), "GF({q})");
        }
    }

    #[test]
    fn rejects_bad_moduli() {
        // x² + 1 = (x + 1)² over GF(2)
        assert!(FiniteField::with_modulus(2, &[1, 0, 1]).is_err());
        // x² + 1 has no root mod 3 but x² + 2 = (x+1)(x+2)
        assert!(FiniteField::with_modulus(3, &[2, 0, 1]).is_err());
        assert!(FiniteField::with_modulus(4, &[1, 1]).is_err());
        assert!(FiniteField::new(6).is_err());
        assert!(FiniteField::new(32).is_err());
        // x⁴ + x² + 1 = (x² + x + 1)² over GF(2): no roots, still reducible
        assert!(FiniteField::with_modulus(2, &[1, 0, 1, 0, 1]).is_err());
        assert!(FiniteField::with_modulus(2, &[1, 0, 1, 0, 0, 1]).is_ok());
    }

    #[test]
    fn gf4_arithmetic() {
        let f = FiniteField::new(4).unwrap();
        // x · x = x + 1
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.add(2, 3), 1);
        assert_eq!(f.inv(2), 3);
    }
}
