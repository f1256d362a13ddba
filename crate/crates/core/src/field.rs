//! Table-driven arithmetic in GF(q) for prime powers `q <= 1024`.
//!
//! Elements are indices `0..q`. An index encodes the polynomial
//! `c_0 + c_1 X + ... + c_{e-1} X^{e-1}` over GF(p) by its base-`p` digits,
//! lowest degree first, so index 0 is zero and index 1 is one. For prime `q`
//! the index is simply the residue.

use crate::error::{invalid, Result};
use crate::qcomb::prime_power;

/// A field element, as an index into the tables.
pub type Elem = u16;

/// Largest field order supported.
pub const MAX_ORDER: u64 = 1024;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTables {
    q: usize,
    p: u32,
    e: u32,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    /// Monic modulus coefficients over GF(p), lowest degree first, length e+1.
    irreducible: Vec<u32>,
}

fn digits(mut x: usize, p: usize, e: usize) -> Vec<u32> {
    let mut out = vec![0; e];
    for d in out.iter_mut() {
        *d = (x % p) as u32;
        x /= p;
    }
    out
}

fn undigits(d: &[u32], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c as usize)
}

/// Remainder of `a` modulo monic `b` over GF(p), coefficients low-first.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                let v = &mut r[shift + i];
                *v = (*v + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    // Any factorization has a monic factor of degree <= deg/2.
    for d in 1..=deg / 2 {
        let count = (p as usize).pow(d as u32);
        for low in 0..count {
            let mut g = digits(low, p as usize, d);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The lexicographically smallest monic irreducible of degree `e` over GF(p),
/// comparing coefficients lowest degree first.
pub fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let e = e as usize;
    let count = (p as usize).pow(e as u32);
    for rank in 0..count {
        // c_0 is the most significant digit of `rank`.
        let mut coeffs: Vec<u32> = digits(rank, p as usize, e);
        coeffs.reverse();
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF({p})")
}

impl FieldTables {
    /// Builds GF(q) from the smallest monic irreducible of the right degree.
    pub fn new(q: u64) -> Result<Self> {
        let (p, e) = match prime_power(q) {
            Some(pe) if q <= MAX_ORDER => pe,
            Some(_) => return invalid(format!("field order {q} exceeds {MAX_ORDER}")),
            None => return invalid(format!("q = {q} is not a prime power")),
        };
        let modulus = smallest_irreducible(p as u32, e);
        Self::with_modulus(p as u32, &modulus)
    }

    /// Builds GF(p^e) from an explicit monic irreducible modulus of degree `e`
    /// (coefficients lowest degree first).
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Self> {
        if prime_power(p as u64) != Some((p as u64, 1)) {
            return invalid(format!("characteristic {p} is not prime"));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return invalid("modulus must be monic of degree at least 1");
        }
        if modulus.iter().any(|&c| c >= p) {
            return invalid(format!("modulus coefficients must be below {p}"));
        }
        if !is_irreducible(modulus, p) {
            return invalid(format!("modulus {modulus:?} is reducible over GF({p})"));
        }
        let e = (modulus.len() - 1) as u32;
        let q = (p as u64).pow(e);
        if q > MAX_ORDER {
            return invalid(format!("field order {q} exceeds {MAX_ORDER}"));
        }
        let q = q as usize;
        let pu = p as usize;
        let eu = e as usize;

        let all_digits: Vec<Vec<u32>> = (0..q).map(|x| digits(x, pu, eu)).collect();

        let mut add = vec![0; q * q];
        let mut neg = vec![0; q];
        for a in 0..q {
            let da = &all_digits[a];
            let dn: Vec<u32> = da.iter().map(|&c| (p - c) % p).collect();
            neg[a] = undigits(&dn, pu) as Elem;
            for b in 0..q {
                let s: Vec<u32> = da
                    .iter()
                    .zip(&all_digits[b])
                    .map(|(&x, &y)| (x + y) % p)
                    .collect();
                add[a * q + b] = undigits(&s, pu) as Elem;
            }
        }

        // a * X^j for every a and j < e, then products by linearity in b.
        let times_x: Vec<usize> = (0..q)
            .map(|a| {
                let mut shifted = vec![0u32];
                shifted.extend_from_slice(&all_digits[a]);
                undigits(&poly_rem(&shifted, modulus, p), pu)
            })
            .collect();
        let scale = |a: usize, c: u32| -> usize {
            let d: Vec<u32> = all_digits[a].iter().map(|&x| (x * c) % p).collect();
            undigits(&d, pu)
        };
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let mut power = a;
            let mut partial = vec![0usize; q];
            // partial[b] accumulates a * (sum of b's digits up to degree j)
            for j in 0..eu {
                for (b, digits) in all_digits.iter().enumerate() {
                    let c = digits[j];
                    if c != 0 {
                        let term = if c == 1 { power } else { scale(power, c) };
                        partial[b] = add[partial[b] * q + term] as usize;
                    }
                }
                power = times_x[power];
            }
            for b in 0..q {
                mul[a * q + b] = partial[b] as Elem;
            }
        }

        let mut inv = vec![0; q];
        for a in 1..q {
            inv[a] = (1..q)
                .find(|&b| mul[a * q + b] == 1)
                .expect("nonzero element without inverse: modulus not irreducible")
                as Elem;
        }

        Ok(FieldTables {
            q,
            p,
            e,
            add,
            mul,
            neg,
            inv,
            irreducible: modulus.to_vec(),
        })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Modulus coefficients, lowest degree first.
    pub fn irreducible(&self) -> &[u32] {
        &self.irreducible
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q as Elem
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(f: &FieldTables) {
        let els: Vec<Elem> = f.elements().collect();
        for &a in &els {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in &els {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn axioms_hold_for_small_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            check_axioms(&FieldTables::new(q).unwrap());
        }
    }

    #[test]
    fn gf2_addition_is_xor() {
        let f = FieldTables::new(2).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(f.add(a, b), a ^ b);
            }
        }
    }

    #[test]
    fn gf3_residues() {
        let f = FieldTables::new(3).unwrap();
        assert_eq!(f.add(2, 2), 1);
        assert_eq!(f.mul(2, 2), 1);
        assert_eq!(f.inv(2), Some(2));
        assert_eq!(f.inv(0), None);
    }

    #[test]
    fn gf4_uses_x2_x_1() {
        let f = FieldTables::new(4).unwrap();
        assert_eq!(f.irreducible(), &[1, 1, 1]);
        // x is index 2, x + 1 is index 3
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
    }

    #[test]
    fn smallest_irreducibles() {
        assert_eq!(smallest_irreducible(2, 1), vec![0, 1]);
        assert_eq!(smallest_irreducible(2, 3), vec![1, 0, 1, 1]);
        assert_eq!(smallest_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(smallest_irreducible(2, 4), vec![1, 0, 0, 1, 1]);
    }

    #[test]
    fn rejects_bad_orders_and_moduli() {
        assert!(FieldTables::new(1).is_err());
        assert!(FieldTables::new(6).is_err());
        assert!(FieldTables::new(2048).is_err());
        assert!(FieldTables::with_modulus(2, &[1, 0, 1]).is_err());
        assert!(FieldTables::with_modulus(4, &[1, 1]).is_err());
        assert!(FieldTables::with_modulus(2, &[1, 1, 0]).is_err());
    }

    #[test]
    fn alternative_modulus_is_a_field() {
        let f = FieldTables::with_modulus(2, &[1, 1, 0, 1]).unwrap();
        check_axioms(&f);
        let g = FieldTables::with_modulus(3, &[2, 1, 1]).unwrap();
        check_axioms(&g);
    }

    #[test]
    fn largest_supported_field() {
        let f = FieldTables::new(1024).unwrap();
        assert_eq!(f.degree(), 10);
        let a: Elem = 777;
        assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
    }
}
