//! Univariate polynomial arithmetic and factorization over F_q.
//!
//! Coefficients are stored low degree first and kept trimmed. Factorization
//! is squarefree + distinct-degree + Cantor-Zassenhaus equal-degree
//! splitting; the randomized step takes a seeded generator.

use crate::field::Field;
use crate::rng::Rng;

pub type Poly = Vec<u32>;

pub fn trim(p: &mut Poly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub fn deg(p: &Poly) -> usize {
    debug_assert!(p.last() != Some(&0));
    p.len().saturating_sub(1)
}

pub fn is_zero(p: &Poly) -> bool {
    p.is_empty()
}

pub fn add(f: &Field, a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0u32; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = f.add(x, y);
    }
    trim(&mut out);
    out
}

pub fn sub(f: &Field, a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0u32; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = f.sub(x, y);
    }
    trim(&mut out);
    out
}

pub fn mul(f: &Field, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj != 0 {
                out[i + j] = f.add(out[i + j], f.mul(ai, bj));
            }
        }
    }
    trim(&mut out);
    out
}

pub fn scale(f: &Field, a: &Poly, c: u32) -> Poly {
    let mut out: Poly = a.iter().map(|&x| f.mul(x, c)).collect();
    trim(&mut out);
    out
}

pub fn make_monic(f: &Field, a: &Poly) -> Poly {
    if a.is_empty() {
        return vec![];
    }
    let lead = *a.last().unwrap();
    scale(f, a, f.inv(lead))
}

/// (quotient, remainder) with b != 0.
pub fn divmod(f: &Field, a: &Poly, b: &Poly) -> (Poly, Poly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = a.clone();
    trim(&mut rem);
    let db = deg(b);
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![0u32; rem.len() - db];
    let lead_inv = f.inv(*b.last().unwrap());
    while !rem.is_empty() && rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = f.mul(*rem.last().unwrap(), lead_inv);
        quot[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            rem[shift + i] = f.sub(rem[shift + i], f.mul(c, bi));
        }
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

pub fn rem(f: &Field, a: &Poly, b: &Poly) -> Poly {
    divmod(f, a, b).1
}

pub fn gcd(f: &Field, a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    if x.is_empty() {
        x
    } else {
        make_monic(f, &x)
    }
}

pub fn eval(f: &Field, p: &Poly, x: u32) -> u32 {
    let mut acc = 0u32;
    for &c in p.iter().rev() {
        acc = f.add(f.mul(acc, x), c);
    }
    acc
}

pub fn derivative(f: &Field, p: &Poly) -> Poly {
    if p.len() <= 1 {
        return vec![];
    }
    let mut out = vec![0u32; p.len() - 1];
    for i in 1..p.len() {
        out[i - 1] = f.mul(p[i], f.elem(i as u64));
    }
    trim(&mut out);
    out
}

/// a^e mod m.
pub fn powmod(f: &Field, a: &Poly, mut e: u64, m: &Poly) -> Poly {
    let mut acc = vec![1u32];
    let mut base = rem(f, a, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &base), m);
        }
        base = rem(f, &mul(f, &base, &base), m);
        e >>= 1;
    }
    acc
}

fn random_poly(f: &Field, max_deg: usize, rng: &mut Rng) -> Poly {
    let mut p: Poly = (0..=max_deg).map(|_| f.random(rng)).collect();
    trim(&mut p);
    p
}

/// Split a squarefree product of k >= 2 irreducibles of common degree d.
fn equal_degree_split(f: &Field, g: &Poly, d: usize, rng: &mut Rng) -> Vec<Poly> {
    if deg(g) == d {
        return vec![make_monic(f, g)];
    }
    let q = f.q() as u64;
    loop {
        let a = random_poly(f, deg(g) - 1, rng);
        if a.len() <= 1 {
            continue; // constants never split
        }
        let candidate = if f.p() == 2 {
            // trace map over F_{2^(r d)}
            let bits = (f.r() as usize) * d;
            let mut t = rem(f, &a, g);
            let mut acc = t.clone();
            for _ in 1..bits {
                t = rem(f, &mul(f, &t, &t), g);
                acc = add(f, &acc, &t);
            }
            gcd(f, &acc, g)
        } else {
            let e = (q.pow(d as u32) - 1) / 2;
            let b = powmod(f, &a, e, g);
            let b1 = sub(f, &b, &vec![1u32]);
            gcd(f, &b1, g)
        };
        if !candidate.is_empty() && deg(&candidate) > 0 && deg(&candidate) < deg(g) {
            let (other, r) = divmod(f, g, &candidate);
            debug_assert!(is_zero(&r));
            let mut out = equal_degree_split(f, &candidate, d, rng);
            out.extend(equal_degree_split(f, &other, d, rng));
            return out;
        }
    }
}

/// Distinct irreducible factors of a squarefree monic polynomial.
fn factor_squarefree(f: &Field, w: &Poly, rng: &mut Rng) -> Vec<Poly> {
    let mut w = make_monic(f, w);
    let mut out = Vec::new();
    let q = f.q() as u64;
    // running x^(q^d) mod w, rebased when w shrinks
    let mut d = 0usize;
    let mut h = vec![0u32, 1]; // x
    while deg(&w) > 0 {
        d += 1;
        if 2 * d > deg(&w) {
            out.push(w.clone());
            break;
        }
        h = powmod_frobenius(f, &h, q, &w);
        let hx = sub(f, &h, &vec![0u32, 1]);
        let g = gcd(f, &hx, &w);
        if deg(&g) > 0 {
            out.extend(equal_degree_split(f, &g, d, rng));
            let (next, r) = divmod(f, &w, &g);
            debug_assert!(is_zero(&r));
            w = next;
            h = rem(f, &h, &w);
        }
    }
    out
}

fn powmod_frobenius(f: &Field, h: &Poly, q: u64, m: &Poly) -> Poly {
    // h^q mod m by square and multiply
    powmod(f, h, q, m)
}

/// Full factorization into (monic irreducible, multiplicity) pairs, sorted
/// for determinism.
pub fn factor(f: &Field, p: &Poly, rng: &mut Rng) -> Vec<(Poly, usize)> {
    let mut p = p.clone();
    trim(&mut p);
    assert!(!p.is_empty(), "factor of zero polynomial");
    let p = make_monic(f, &p);
    let mut factors = factor_rec(f, &p, rng);
    factors.sort();
    factors
}

fn factor_rec(f: &Field, p: &Poly, rng: &mut Rng) -> Vec<(Poly, usize)> {
    let mut p = p.clone();
    if deg(&p) == 0 {
        return vec![];
    }
    // peel p-th powers while the derivative vanishes: p = h(x^ch) = (h^(1/p)(x))^ch
    let mut power_mult = 1usize;
    loop {
        let dp = derivative(f, &p);
        if !is_zero(&dp) || deg(&p) == 0 {
            break;
        }
        let ch = f.p() as usize;
        let root_exp = (f.q() as u64) / f.p(); // c^(q/p) is the p-th root
        let mut h = Vec::with_capacity(deg(&p) / ch + 1);
        for i in (0..p.len()).step_by(ch) {
            h.push(f.pow(p[i], root_exp));
        }
        p = h;
        power_mult *= ch;
    }
    if deg(&p) == 0 {
        return vec![];
    }
    // w carries the irreducibles whose multiplicity is coprime to char
    let dp = derivative(f, &p);
    let g = gcd(f, &p, &dp);
    let w = if deg(&g) == 0 {
        p.clone()
    } else {
        divmod(f, &p, &g).0
    };
    let mut factors = Vec::new();
    let mut rest = p.clone();
    for irr in factor_squarefree(f, &w, rng) {
        let mut m = 0usize;
        loop {
            let (quo, r) = divmod(f, &rest, &irr);
            if is_zero(&r) {
                m += 1;
                rest = quo;
            } else {
                break;
            }
        }
        debug_assert!(m > 0);
        factors.push((irr, m * power_mult));
    }
    // leftover part: factors with multiplicity divisible by char
    if deg(&rest) > 0 {
        for (irr, m) in factor_rec(f, &rest, rng) {
            factors.push((irr, m * power_mult));
        }
    }
    factors
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::with_default_poly(2, 1).unwrap()
    }
    fn f3() -> Field {
        Field::with_default_poly(3, 1).unwrap()
    }
    fn f4() -> Field {
        Field::with_default_poly(2, 2).unwrap()
    }

    #[test]
    fn divmod_round_trip() {
        let f = f3();
        let a = vec![1, 2, 0, 1, 2];
        let b = vec![2, 1, 1];
        let (q, r) = divmod(&f, &a, &b);
        let back = add(&f, &mul(&f, &q, &b), &r);
        assert_eq!(back, a);
        assert!(r.len() < b.len());
    }

    #[test]
    fn factor_x4_minus_x_over_f4() {
        // x^4 - x over F_4 splits into the 4 linear factors
        let f = f4();
        let mut rng = Rng::new(1);
        let p = vec![0, f.neg(1), 0, 0, 1];
        let fac = factor(&f, &p, &mut rng);
        assert_eq!(fac.len(), 4);
        assert!(fac.iter().all(|(g, m)| deg(g) == 1 && *m == 1));
    }

    #[test]
    fn factor_with_multiplicity_char2() {
        // (x+1)^4 over F_2 has zero derivative twice
        let f = f2();
        let mut rng = Rng::new(1);
        let p = vec![1, 0, 0, 0, 1]; // x^4 + 1 = (x+1)^4
        let fac = factor(&f, &p, &mut rng);
        assert_eq!(fac, vec![(vec![1, 1], 4)]);
    }

    #[test]
    fn factor_mixed() {
        let f = f3();
        let mut rng = Rng::new(5);
        // (x^2+1)(x+2)^2 : x^2+1 irreducible over F_3
        let p = mul(&f, &vec![1, 0, 1], &mul(&f, &vec![2, 1], &vec![2, 1]));
        let fac = factor(&f, &p, &mut rng);
        assert_eq!(fac.len(), 2);
        let total: usize = fac.iter().map(|(g, m)| deg(g) * m).sum();
        assert_eq!(total, 4);
        assert!(fac.contains(&(vec![1, 0, 1], 1)));
        assert!(fac.contains(&(vec![2, 1], 2)));
    }

    #[test]
    fn factor_char_divides_multiplicity() {
        // (x+1)^2 (x^2+x+1) over F_2: the squared factor must not be lost
        let f = f2();
        let mut rng = Rng::new(2);
        let p = mul(&f, &mul(&f, &vec![1, 1], &vec![1, 1]), &vec![1, 1, 1]);
        let fac = factor(&f, &p, &mut rng);
        assert!(fac.contains(&(vec![1, 1], 2)));
        assert!(fac.contains(&(vec![1, 1, 1], 1)));
        assert_eq!(fac.len(), 2);
    }

    #[test]
    fn factor_random_products() {
        let f = f2();
        let mut rng = Rng::new(10);
        for _ in 0..20 {
            let a = {
                let mut v = random_poly(&f, 3, &mut rng);
                v.resize(4, 0);
                v[3] = 1;
                v
            };
            let b = {
                let mut v = random_poly(&f, 2, &mut rng);
                v.resize(3, 0);
                v[2] = 1;
                v
            };
            let p = mul(&f, &a, &b);
            let fac = factor(&f, &p, &mut rng);
            // product of factors with multiplicity reassembles p
            let mut prod = vec![1u32];
            for (g, m) in &fac {
                for _ in 0..*m {
                    prod = mul(&f, &prod, g);
                }
            }
            assert_eq!(prod, make_monic(&f, &p));
        }
    }
}
