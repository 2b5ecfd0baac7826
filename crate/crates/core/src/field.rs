//! Exact arithmetic in finite fields F_{p^r}.
//!
//! Elements are stored as `u32` codes: the polynomial c_0 + c_1 x + ... is
//! coded as the base-p integer sum c_i * p^i. A [`Field`] precomputes
//! discrete-log tables for O(1) multiplication and inversion, plus an
//! addition table for small q. All comparisons are exact; there is no
//! floating point anywhere in this crate.

use crate::error::{Error, Result};
use crate::rng::Rng;
use serde::{Deserialize, Serialize};

/// Largest supported field size.
pub const FIELD_CAP: u64 = 1 << 20;
/// Addition is table-driven below this size, digit-wise above it.
const ADD_TABLE_CAP: u64 = 512;

/// Description of F_{p^r} as F_p[x] modulo a monic irreducible polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub r: u32,
    /// Coefficients of the monic degree-r modulus, low degree first (length r+1).
    pub minpoly: Vec<u64>,
}

impl FieldSpec {
    pub fn q(&self) -> u64 {
        self.p.pow(self.r)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// --- dense polynomial arithmetic over F_p (used only for field setup) ---

fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mul_fp(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` modulo monic `m` over F_p.
fn poly_rem_fp(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    poly_trim(&mut a);
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a[a.len() - 1];
        let shift = a.len() - 1 - dm;
        for (k, &mk) in m.iter().enumerate() {
            let idx = shift + k;
            a[idx] = (a[idx] + p - (lead * mk) % p) % p;
        }
        poly_trim(&mut a);
        if a.is_empty() {
            break;
        }
    }
    a
}

/// Exhaustive irreducibility test: trial division by every monic polynomial
/// of degree 1..=deg/2. Fine at desk scale (deg <= 4, small p).
fn is_irreducible_fp(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        // iterate monic candidates of degree d via base-p counter on low coeffs
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push(c % p);
                c /= p;
            }
            g.push(1);
            if poly_rem_fp(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree r over F_p.
/// This is the deterministic default-modulus table; spot values are frozen
/// in tests.
pub fn default_minpoly(p: u64, r: u32) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r == 1 {
        // F_p[x]/(x): codes are plain residues
        return Ok(vec![0, 1]);
    }
    let count = p
        .checked_pow(r)
        .filter(|&q| q <= FIELD_CAP)
        .ok_or(Error::FieldTooLarge {
            q: u64::MAX,
            cap: FIELD_CAP,
        })?;
    for code in 0..count {
        let mut f = Vec::with_capacity(r as usize + 1);
        let mut c = code;
        for _ in 0..r {
            f.push(c % p);
            c /= p;
        }
        f.push(1);
        if is_irreducible_fp(&f, p) {
            return Ok(f);
        }
    }
    Err(Error::NoDefaultPoly { p, r })
}

/// Runtime context for F_{p^r}: element tables plus the defining data.
#[derive(Debug, Clone)]
pub struct Field {
    spec: FieldSpec,
    q: u32,
    /// exp[i] = g^i for a fixed multiplicative generator g, i in 0..q-1
    exp: Vec<u32>,
    /// log[a] for a != 0; log[0] is unused
    log: Vec<u32>,
    neg_table: Vec<u32>,
    inv_table: Vec<u32>,
    /// q*q addition table when q <= ADD_TABLE_CAP
    add_table: Option<Vec<u32>>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}
impl Eq for Field {}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Field> {
        if !is_prime(spec.p) {
            return Err(Error::NotPrime(spec.p));
        }
        if spec.r == 0
            || spec.minpoly.len() != spec.r as usize + 1
            || spec.minpoly.last() != Some(&1)
            || spec.minpoly.iter().any(|&c| c >= spec.p)
        {
            return Err(Error::BadMinpoly { expected: spec.r });
        }
        if spec.r > 1 && !is_irreducible_fp(&spec.minpoly, spec.p) {
            return Err(Error::ReducibleMinpoly { p: spec.p });
        }
        let q64 = spec
            .p
            .checked_pow(spec.r)
            .filter(|&q| q <= FIELD_CAP)
            .ok_or(Error::FieldTooLarge {
                q: u64::MAX,
                cap: FIELD_CAP,
            })?;
        let q = q64 as u32;

        let p = spec.p;
        let r = spec.r as usize;
        // slow polynomial multiply, used only to build the log tables
        let slow_mul = |a: u32, b: u32| -> u32 {
            let digits = |mut v: u32| {
                let mut d = vec![0u64; r];
                for di in d.iter_mut() {
                    *di = (v as u64) % p;
                    v = (v as u64 / p) as u32;
                }
                d
            };
            let prod = poly_mul_fp(&digits(a), &digits(b), p);
            let rem = poly_rem_fp(&prod, &spec.minpoly, p);
            let mut code = 0u64;
            for (i, &c) in rem.iter().enumerate() {
                code += c * p.pow(i as u32);
            }
            code as u32
        };

        // find a multiplicative generator by direct order computation
        let mut gen = 0u32;
        'outer: for g in 2..q.max(3) {
            if g >= q {
                break;
            }
            let mut x = g;
            let mut ord = 1u32;
            while x != 1 {
                x = slow_mul(x, g);
                ord += 1;
                if ord > q {
                    continue 'outer; // not cyclic reachable; impossible for fields
                }
            }
            if ord == q - 1 {
                gen = g;
                break;
            }
        }
        if q == 2 {
            gen = 1;
        }
        if gen == 0 {
            return Err(Error::Invariant(format!("no generator found for q={q}")));
        }

        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u32;
        for (i, e) in exp.iter_mut().enumerate() {
            *e = acc;
            log[acc as usize] = i as u32;
            acc = slow_mul(acc, gen);
        }
        debug_assert_eq!(acc, 1);

        // digit-wise negation
        let neg_digit = |v: u32| -> u32 {
            let mut code = 0u64;
            let mut x = v as u64;
            for i in 0..r {
                let d = x % p;
                x /= p;
                code += ((p - d) % p) * p.pow(i as u32);
            }
            code as u32
        };
        let neg_table: Vec<u32> = (0..q).map(neg_digit).collect();

        let mut inv_table = vec![0u32; q as usize];
        for a in 1..q {
            let la = log[a as usize];
            inv_table[a as usize] = exp[((q - 1 - la) % (q - 1)) as usize];
        }

        let add_digit = |a: u32, b: u32| -> u32 {
            let (mut x, mut y) = (a as u64, b as u64);
            let mut code = 0u64;
            for i in 0..r {
                let s = (x % p + y % p) % p;
                x /= p;
                y /= p;
                code += s * p.pow(i as u32);
            }
            code as u32
        };
        let add_table = if q64 <= ADD_TABLE_CAP {
            let mut t = vec![0u32; (q as usize) * (q as usize)];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = add_digit(a, b);
                }
            }
            Some(t)
        } else {
            None
        };

        Ok(Field {
            spec,
            q,
            exp,
            log,
            neg_table,
            inv_table,
            add_table,
        })
    }

    /// Field with the crate's deterministic default modulus for (p, r).
    pub fn with_default_poly(p: u64, r: u32) -> Result<Field> {
        Field::new(FieldSpec {
            p,
            r,
            minpoly: default_minpoly(p, r)?,
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }
    pub fn p(&self) -> u64 {
        self.spec.p
    }
    pub fn r(&self) -> u32 {
        self.spec.r
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn zero(&self) -> u32 {
        0
    }
    pub fn one(&self) -> u32 {
        1
    }

    /// Embed an integer as a constant (degree-0) element.
    pub fn elem(&self, n: u64) -> u32 {
        (n % self.spec.p) as u32
    }

    /// Inverse of an integer constant, e.g. |N|^{-1} in the group algebra.
    pub fn elem_inv(&self, n: u64) -> Result<u32> {
        let e = self.elem(n);
        if e == 0 {
            return Err(Error::NotPPrime {
                n: n as usize,
                p: self.spec.p,
            });
        }
        Ok(self.inv(e))
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if let Some(t) = &self.add_table {
            t[(a * self.q + b) as usize]
        } else {
            let p = self.spec.p;
            let (mut x, mut y) = (a as u64, b as u64);
            let mut code = 0u64;
            let mut pw = 1u64;
            for _ in 0..self.spec.r {
                let s = (x % p + y % p) % p;
                x /= p;
                y /= p;
                code += s * pw;
                pw *= p;
            }
            code as u32
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg_table[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            let s = self.log[a as usize] + self.log[b as usize];
            let m = self.q - 1;
            self.exp[(if s >= m { s - m } else { s }) as usize]
        }
    }

    /// Multiplicative inverse of a nonzero element.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert_ne!(a, 0);
        self.inv_table[a as usize]
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Frobenius endomorphism x -> x^p.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.spec.p)
    }

    pub fn random(&self, rng: &mut Rng) -> u32 {
        rng.below(self.q as u64) as u32
    }

    pub fn random_nonzero(&self, rng: &mut Rng) -> u32 {
        1 + rng.below(self.q as u64 - 1) as u32
    }

    /// All element codes, 0..q.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

/// Smallest r such that p^r = 1 mod the p'-part of `exponent`. This is the
/// classical bound for a splitting field of any group of that exponent.
pub fn splitting_degree_bound(p: u64, exponent: u64) -> u32 {
    let mut e = exponent;
    while e % p == 0 {
        e /= p;
    }
    if e <= 1 {
        return 1;
    }
    let mut r = 1u32;
    let mut pw = p % e;
    while pw != 1 {
        pw = (pw * p) % e;
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axioms(f: &Field, seed: u64) {
        let mut rng = Rng::new(seed);
        for _ in 0..200 {
            let a = f.random(&mut rng);
            let b = f.random(&mut rng);
            let c = f.random(&mut rng);
            assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
            assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            assert_eq!(f.add(a, f.neg(a)), 0);
            assert_eq!(f.mul(a, 1), a);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            // Frobenius is additive
            assert_eq!(
                f.frobenius(f.add(a, b)),
                f.add(f.frobenius(a), f.frobenius(b))
            );
        }
    }

    #[test]
    fn axioms_across_default_fields() {
        for &(p, r) in &[
            (2, 1),
            (2, 2),
            (2, 3),
            (2, 4),
            (3, 1),
            (3, 2),
            (5, 1),
            (5, 2),
            (7, 1),
            (7, 3),
        ] {
            let f = Field::with_default_poly(p, r).unwrap();
            assert_eq!(f.q() as u64, p.pow(r));
            axioms(&f, 1000 + p + r as u64);
        }
    }

    #[test]
    fn default_minpolys_frozen() {
        // golden values for the shipped deterministic table
        assert_eq!(default_minpoly(2, 1).unwrap(), vec![0, 1]);
        assert_eq!(default_minpoly(2, 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(default_minpoly(2, 3).unwrap(), vec![1, 1, 0, 1]);
        assert_eq!(default_minpoly(2, 4).unwrap(), vec![1, 1, 0, 0, 1]);
        assert_eq!(default_minpoly(3, 2).unwrap(), vec![1, 0, 1]);
        let f34 = default_minpoly(3, 4).unwrap();
        assert!(is_irreducible_fp(&f34, 3));
        for &(p, r) in &[(5, 2), (5, 3), (5, 4), (7, 2), (7, 3), (7, 4), (3, 3)] {
            assert!(is_irreducible_fp(&default_minpoly(p, r).unwrap(), p));
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(Field::new(FieldSpec {
            p: 4,
            r: 1,
            minpoly: vec![0, 1]
        })
        .is_err());
        // x^2 + 1 factors over F_2
        assert!(Field::new(FieldSpec {
            p: 2,
            r: 2,
            minpoly: vec![1, 0, 1]
        })
        .is_err());
        assert!(Field::new(FieldSpec {
            p: 2,
            r: 2,
            minpoly: vec![1, 1]
        })
        .is_err());
    }

    #[test]
    fn f4_multiplication() {
        // F_4 = F_2[x]/(x^2+x+1): codes 0,1,2(=x),3(=x+1)
        let f = Field::with_default_poly(2, 2).unwrap();
        assert_eq!(f.mul(2, 2), 3); // x^2 = x+1
        assert_eq!(f.mul(2, 3), 1); // x(x+1) = x^2+x = 1
        assert_eq!(f.pow(2, 3), 1);
    }

    #[test]
    fn splitting_bound() {
        // exponent 3, p=2: 2^2 = 4 = 1 mod 3
        assert_eq!(splitting_degree_bound(2, 3), 2);
        // exponent 6, p=2: odd part 3 -> 2
        assert_eq!(splitting_degree_bound(2, 6), 2);
        // exponent 6, p=3: 3'-part 2 -> 3^1 = 1 mod 2
        assert_eq!(splitting_degree_bound(3, 6), 1);
        assert_eq!(splitting_degree_bound(2, 2), 1);
    }
}
