//! Irreducible factorization over Q at desk-scale degrees.
//!
//! Pipeline: Yun squarefree decomposition, reduction to a monic integer
//! polynomial, Cantor–Zassenhaus factorization mod a good prime, quadratic
//! Hensel lifting to a Mignotte-sized modulus, then subset recombination.

use crate::poly::{Poly, Q};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Factor a monic rational polynomial into monic irreducible factors with
/// multiplicities; the product of the factors is exactly the input.
pub fn factor_monic(f: &Poly) -> Vec<(Poly, u32)> {
    assert!(f.is_monic(), "factor_monic requires a monic polynomial");
    let mut out: Vec<(Poly, u32)> = vec![];
    for (part, mult) in f.squarefree_decomposition() {
        for irr in factor_squarefree_monic(&part) {
            out.push((irr, mult));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn factor_squarefree_monic(f: &Poly) -> Vec<Poly> {
    if f.is_constant() {
        return vec![];
    }
    if f.degree() == 1 {
        return vec![f.clone()];
    }
    let (_, g) = f.primitive_int();
    let lc = g.leading().to_integer();
    // substitute t -> t/lc and scale so the integer polynomial is monic
    let n = g.degree();
    let mut coeffs = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let p = lc.pow((n - 1 - i.min(n - 1)) as u32);
        if i == n {
            coeffs.push(BigInt::one());
        } else {
            coeffs.push(g.coeff(i).to_integer() * p);
        }
    }
    let h = IntPoly { coeffs };
    let factors = factor_monic_int(&h);
    factors
        .into_iter()
        .map(|fi| {
            // undo the substitution: primitive part of fi(lc * t), made monic over Q
            let d = fi.coeffs.len() - 1;
            let qc: Vec<Q> = fi
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| Q::new(c * lc.pow(i as u32), lc.pow(d as u32)))
                .collect();
            Poly::from_coeffs(qc)
        })
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
struct IntPoly {
    coeffs: Vec<BigInt>, // ascending, monic
}

impl IntPoly {
    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn to_poly(&self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| Q::from_integer(c.clone())).collect())
    }

    fn norm2_sq(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }
}

/// Factor a monic squarefree integer polynomial into monic irreducibles.
fn factor_monic_int(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.degree();
    if n == 1 {
        return vec![f.clone()];
    }

    // choose a prime keeping f squarefree mod p; prefer the fewest modular factors
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    let mut p = 3u64;
    while tried < 4 {
        if crate::primes::is_prime_u64(p) {
            let fp = FpPoly::from_int(f, p);
            if fp.coeffs.len() == n + 1 {
                let d = fp.derivative();
                if fp.gcd(&d).degree() == 0 {
                    let factors = cz_factor(&fp.monic());
                    let better = best.as_ref().is_none_or(|(_, b)| factors.len() < b.len());
                    if better {
                        best = Some((p, factors));
                    }
                    tried += 1;
                }
            }
        }
        p += 2;
    }
    let (p, modular) = best.expect("no usable prime found");
    if modular.len() == 1 {
        return vec![f.clone()];
    }

    // Hensel lift to p^k beyond twice the Mignotte bound
    let bound: BigInt = (f.norm2_sq().sqrt() + 1) * BigInt::from(2).pow(n as u32 + 1) + 1;
    let mut modulus = BigInt::from(p);
    let mut k = 1u32;
    while modulus < bound {
        modulus = &modulus * &modulus;
        k *= 2;
    }
    let lifted = hensel_tree(f, &modular, p, k);
    recombine(f, lifted, &modulus)
}

fn recombine(f: &IntPoly, mut lifted: Vec<IntPoly>, modulus: &BigInt) -> Vec<IntPoly> {
    let mut out = vec![];
    let mut remaining = f.clone();
    let mut card = 1usize;
    'outer: while 2 * card <= lifted.len() {
        let idxs: Vec<usize> = (0..lifted.len()).collect();
        for subset in subsets(&idxs, card) {
            let mut prod = IntPoly {
                coeffs: vec![BigInt::one()],
            };
            for &i in &subset {
                prod = mul_mod(&prod, &lifted[i], modulus);
            }
            symmetrize(&mut prod, modulus);
            if divides(&prod, &remaining) {
                remaining = quotient(&remaining, &prod);
                out.push(prod);
                let mut keep = vec![];
                for (i, g) in lifted.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(g);
                    }
                }
                lifted = keep;
                continue 'outer;
            }
        }
        card += 1;
    }
    if remaining.degree() > 0 {
        out.push(remaining);
    }
    out.sort_by(|a, b| (a.degree(), &a.coeffs).cmp(&(b.degree(), &b.coeffs)));
    out
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = vec![];
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

fn mul_mod(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    let mut coeffs = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        for (j, y) in b.coeffs.iter().enumerate() {
            coeffs[i + j] = (&coeffs[i + j] + x * y) % m;
        }
    }
    for c in coeffs.iter_mut() {
        if c.is_negative() {
            *c += m;
        }
    }
    IntPoly { coeffs }
}

fn symmetrize(p: &mut IntPoly, m: &BigInt) {
    let half = m / 2;
    for c in p.coeffs.iter_mut() {
        *c = ((&*c % m) + m) % m;
        if *c > half {
            *c -= m;
        }
    }
}

fn divides(d: &IntPoly, f: &IntPoly) -> bool {
    if d.degree() > f.degree() {
        return false;
    }
    let (_, r) = f.to_poly().divrem(&d.to_poly());
    r.is_zero()
}

fn quotient(f: &IntPoly, d: &IntPoly) -> IntPoly {
    let q = f.to_poly().div_exact(&d.to_poly());
    IntPoly {
        coeffs: q.coeffs().iter().map(|c| c.to_integer()).collect(),
    }
}

// ---- Hensel lifting (monic case) ----

fn int_mod(p: &IntPoly, m: &BigInt) -> IntPoly {
    let coeffs = p
        .coeffs
        .iter()
        .map(|c| ((c % m) + m) % m)
        .collect();
    IntPoly { coeffs }
}

/// Lift the factorization f = prod(factors) mod p to mod p^k (k a power of 2
/// times the steps taken; we lift until the modulus reaches p^k).
fn hensel_tree(f: &IntPoly, factors: &[FpPoly], p: u64, k: u32) -> Vec<IntPoly> {
    if factors.len() == 1 {
        let target = BigInt::from(p).pow(k);
        return vec![int_mod(f, &target)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let g0 = left.iter().fold(FpPoly::one(p), |a, b| a.mul(b));
    let h0 = right.iter().fold(FpPoly::one(p), |a, b| a.mul(b));
    let (s0, t0) = g0.extended_gcd(&h0);
    let (g, h) = hensel_pair(f, &g0, &h0, &s0, &t0, p, k);
    let mut out = hensel_tree(&g, left, p, k);
    out.extend(hensel_tree(&h, right, p, k));
    out
}

/// Quadratic lift of f = g*h from mod p to mod p^(2^j) >= p^k. All monic.
fn hensel_pair(
    f: &IntPoly,
    g0: &FpPoly,
    h0: &FpPoly,
    s0: &FpPoly,
    t0: &FpPoly,
    p: u64,
    k: u32,
) -> (IntPoly, IntPoly) {
    let mut m = BigInt::from(p);
    let target = BigInt::from(p).pow(k);
    let mut g = g0.to_int();
    let mut h = h0.to_int();
    let mut s = s0.to_int();
    let mut t = t0.to_int();
    while m < target {
        let m2 = &m * &m;
        // e = f - g h mod m2
        let e = sub_mod(&int_mod(f, &m2), &mul_mod(&g, &h, &m2), &m2);
        let se = mul_mod(&s, &e, &m2);
        let (q, r) = divrem_mod(&se, &h, &m2);
        let gnew = add3_mod(&g, &mul_mod(&t, &e, &m2), &mul_mod(&q, &g, &m2), &m2);
        let hnew = add_mod(&h, &r, &m2);
        // lift the Bezout pair
        let b = sub_mod(
            &add_mod(&mul_mod(&s, &gnew, &m2), &mul_mod(&t, &hnew, &m2), &m2),
            &IntPoly {
                coeffs: vec![BigInt::one()],
            },
            &m2,
        );
        let sb = mul_mod(&s, &b, &m2);
        let (c, d) = divrem_mod(&sb, &hnew, &m2);
        let snew = sub_mod(&s, &d, &m2);
        let tnew = sub_mod(
            &t,
            &add_mod(&mul_mod(&t, &b, &m2), &mul_mod(&c, &gnew, &m2), &m2),
            &m2,
        );
        g = gnew;
        h = hnew;
        s = snew;
        t = tnew;
        m = m2;
    }
    (g, h)
}

fn trim_int(p: &mut IntPoly) {
    while p.coeffs.len() > 1 && p.coeffs.last().unwrap().is_zero() {
        p.coeffs.pop();
    }
}

fn add_mod(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let zero = BigInt::zero();
    let mut coeffs = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.coeffs.get(i).unwrap_or(&zero);
        let y = b.coeffs.get(i).unwrap_or(&zero);
        coeffs.push(((x + y) % m + m) % m);
    }
    let mut p = IntPoly { coeffs };
    trim_int(&mut p);
    p
}

fn add3_mod(a: &IntPoly, b: &IntPoly, c: &IntPoly, m: &BigInt) -> IntPoly {
    add_mod(&add_mod(a, b, m), c, m)
}

fn sub_mod(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let zero = BigInt::zero();
    let mut coeffs = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.coeffs.get(i).unwrap_or(&zero);
        let y = b.coeffs.get(i).unwrap_or(&zero);
        coeffs.push((((x - y) % m) + m) % m);
    }
    let mut p = IntPoly { coeffs };
    trim_int(&mut p);
    p
}

/// Division with remainder mod m; divisor must be monic.
fn divrem_mod(a: &IntPoly, d: &IntPoly, m: &BigInt) -> (IntPoly, IntPoly) {
    assert!(d.coeffs.last().unwrap().is_one(), "divisor must be monic");
    let mut rem = a.coeffs.clone();
    let dd = d.coeffs.len() - 1;
    if rem.len() <= dd {
        return (
            IntPoly {
                coeffs: vec![BigInt::zero()],
            },
            a.clone(),
        );
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let f = rem[i].clone() % m;
        if f.is_zero() {
            continue;
        }
        quot[i - dd] = f.clone();
        rem[i] = BigInt::zero();
        for j in 0..dd {
            rem[i - dd + j] = (((&rem[i - dd + j] - &f * &d.coeffs[j]) % m) + m) % m;
        }
    }
    let mut q = IntPoly { coeffs: quot };
    let mut r = IntPoly { coeffs: rem };
    trim_int(&mut q);
    r.coeffs.truncate(dd.max(1));
    trim_int(&mut r);
    (q, r)
}

// ---- polynomials over F_p, p < 2^31 ----

#[derive(Clone, PartialEq, Eq, Debug)]
struct FpPoly {
    p: u64,
    coeffs: Vec<u64>, // ascending, last nonzero (or len 1 zero poly [0])
}

impl FpPoly {
    fn from_int(f: &IntPoly, p: u64) -> FpPoly {
        let bp = BigInt::from(p);
        let coeffs = f
            .coeffs
            .iter()
            .map(|c| {
                let r = ((c % &bp) + &bp) % &bp;
                r.to_u64().unwrap()
            })
            .collect();
        let mut g = FpPoly { p, coeffs };
        g.trim();
        g
    }

    fn to_int(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    fn zero(p: u64) -> FpPoly {
        FpPoly { p, coeffs: vec![] }
    }

    fn one(p: u64) -> FpPoly {
        FpPoly { p, coeffs: vec![1] }
    }

    fn x(p: u64) -> FpPoly {
        FpPoly {
            p,
            coeffs: vec![0, 1],
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn mul(&self, other: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p as u128;
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let v = (coeffs[i + j] as u128 + a as u128 * b as u128) % p;
                coeffs[i + j] = v as u64;
            }
        }
        let mut r = FpPoly { p: self.p, coeffs };
        r.trim();
        r
    }

    fn sub(&self, other: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = *self.coeffs.get(i).unwrap_or(&0);
            let b = *other.coeffs.get(i).unwrap_or(&0);
            coeffs.push((a + self.p - b) % self.p);
        }
        let mut r = FpPoly { p: self.p, coeffs };
        r.trim();
        r
    }

    fn scale(&self, c: u64) -> FpPoly {
        let p = self.p as u128;
        let mut r = FpPoly {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .map(|&a| ((a as u128 * c as u128) % p) as u64)
                .collect(),
        };
        r.trim();
        r
    }

    fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(*self.coeffs.last().unwrap(), self.p);
        self.scale(inv)
    }

    fn derivative(&self) -> FpPoly {
        if self.coeffs.len() <= 1 {
            return FpPoly::zero(self.p);
        }
        let p = self.p as u128;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| ((c as u128 * (i as u128 % p)) % p) as u64)
            .collect();
        let mut r = FpPoly { p: self.p, coeffs };
        r.trim();
        r
    }

    fn divrem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero());
        if self.degree() < d.degree() || self.is_zero() {
            return (FpPoly::zero(self.p), self.clone());
        }
        let p = self.p;
        let p128 = p as u128;
        let dlead_inv = inv_mod(*d.coeffs.last().unwrap(), p);
        let dd = d.degree();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i] == 0 {
                continue;
            }
            let f = ((rem[i] as u128 * dlead_inv as u128) % p128) as u64;
            quot[i - dd] = f;
            rem[i] = 0;
            for j in 0..dd {
                let sub = (f as u128 * d.coeffs[j] as u128) % p128;
                rem[i - dd + j] = ((rem[i - dd + j] as u128 + p128 - sub) % p128) as u64;
            }
        }
        let mut q = FpPoly { p, coeffs: quot };
        let mut r = FpPoly { p, coeffs: rem };
        q.trim();
        r.trim();
        (q, r)
    }

    fn rem(&self, d: &FpPoly) -> FpPoly {
        self.divrem(d).1
    }

    fn gcd(&self, other: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Bezout pair (s, t) with s*self + t*other = 1; requires coprimality.
    fn extended_gcd(&self, other: &FpPoly) -> (FpPoly, FpPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let snew = s0.sub(&q.mul(&s1));
            let tnew = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = snew;
            t0 = t1;
            t1 = tnew;
        }
        assert_eq!(r0.degree(), 0, "factors not coprime in extended_gcd");
        let inv = inv_mod(r0.coeffs[0], p);
        (s0.scale(inv), t0.scale(inv))
    }

    fn pow_mod(&self, mut e: BigUint, m: &FpPoly) -> FpPoly {
        let mut base = self.rem(m);
        let mut acc = FpPoly::one(self.p);
        while !e.is_zero() {
            if (&e % 2u32) == BigUint::one() {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat
    let mut acc = 1u128;
    let mut base = a as u128 % p as u128;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    acc as u64
}

/// Cantor–Zassenhaus factorization of a monic squarefree polynomial mod p.
fn cz_factor(f: &FpPoly) -> Vec<FpPoly> {
    let p = f.p;
    let mut out = vec![];
    // distinct-degree
    let mut rest = f.clone();
    let mut h = FpPoly::x(p);
    let mut d = 1usize;
    let mut pieces: Vec<(FpPoly, usize)> = vec![];
    while rest.degree() >= 2 * d {
        h = h.pow_mod(BigUint::from(p), &rest);
        let g = h.sub(&FpPoly::x(p)).gcd(&rest);
        if g.degree() > 0 {
            pieces.push((g.clone(), d));
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
        }
        d += 1;
    }
    if rest.degree() > 0 {
        pieces.push((rest.clone(), rest.degree()));
    }
    // equal-degree splitting
    let mut rng_state = 0x9e3779b97f4a7c15u64;
    for (g, d) in pieces {
        equal_degree(&g, d, &mut rng_state, &mut out);
    }
    out.sort_by(|a, b| (a.degree(), &a.coeffs).cmp(&(b.degree(), &b.coeffs)));
    out
}

fn equal_degree(g: &FpPoly, d: usize, rng: &mut u64, out: &mut Vec<FpPoly>) {
    if g.degree() == d {
        out.push(g.monic());
        return;
    }
    let p = g.p;
    let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        // deterministic xorshift for the random element
        let mut coeffs = vec![];
        for _ in 0..g.degree() {
            *rng ^= *rng << 13;
            *rng ^= *rng >> 7;
            *rng ^= *rng << 17;
            coeffs.push(*rng % p);
        }
        let mut a = FpPoly { p, coeffs };
        a.trim();
        if a.is_zero() || a.degree() == 0 {
            continue;
        }
        let b = a.pow_mod(e.clone(), g).sub(&FpPoly::one(p));
        let h = b.gcd(g);
        if h.degree() > 0 && h.degree() < g.degree() {
            equal_degree(&h, d, rng, out);
            equal_degree(&g.divrem(&h).0, d, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q_ratio;

    fn check_roundtrip(f: &Poly) {
        let factors = factor_monic(f);
        let mut prod = Poly::one();
        for (g, m) in &factors {
            assert!(g.is_monic());
            prod = prod.mul(&g.pow(*m));
        }
        assert_eq!(&prod, f, "factorization product mismatch for {}", f);
    }

    #[test]
    fn factors_difference_of_squares() {
        let f = Poly::from_ints(&[-1, 0, 1]); // t^2 - 1
        let factors = factor_monic(&f);
        assert_eq!(
            factors,
            vec![
                (Poly::from_ints(&[-1, 1]), 1),
                (Poly::from_ints(&[1, 1]), 1)
            ]
        );
    }

    #[test]
    fn keeps_irreducible_quadratic() {
        let f = Poly::from_ints(&[1, 0, 1]); // t^2 + 1
        let factors = factor_monic(&f);
        assert_eq!(factors, vec![(Poly::from_ints(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn factors_with_multiplicity_and_rational_roots() {
        // (t - 1/2)^2 (t^2 + t + 1)
        let lin = Poly::from_coeffs(vec![q_ratio(-1, 2), q_ratio(1, 1)]);
        let f = lin.pow(2).mul(&Poly::from_ints(&[1, 1, 1]));
        let factors = factor_monic(&f);
        assert_eq!(factors.len(), 2);
        check_roundtrip(&f);
        assert!(factors.contains(&(lin, 2)));
    }

    #[test]
    fn factors_products_of_cyclotomics() {
        // (t^2+1)(t^2+t+1)(t-2)(t+3)
        let f = Poly::from_ints(&[1, 0, 1])
            .mul(&Poly::from_ints(&[1, 1, 1]))
            .mul(&Poly::from_ints(&[-2, 1]))
            .mul(&Poly::from_ints(&[3, 1]));
        let factors = factor_monic(&f);
        assert_eq!(factors.len(), 4);
        check_roundtrip(&f);
    }

    #[test]
    fn factors_deg8_with_recombination_pressure() {
        // t^8 - 2 is irreducible over Q but splits mod many primes
        let mut c = vec![0i64; 9];
        c[0] = -2;
        c[8] = 1;
        let f = Poly::from_ints(&c);
        let factors = factor_monic(&f);
        assert_eq!(factors.len(), 1);
        check_roundtrip(&f);
        // (t^4 - 2)(t^4 + 2)
        let mut a = vec![0i64; 5];
        a[0] = -2;
        a[4] = 1;
        let mut b = vec![0i64; 5];
        b[0] = 2;
        b[4] = 1;
        let g = Poly::from_ints(&a).mul(&Poly::from_ints(&b));
        let factors = factor_monic(&g);
        assert_eq!(factors.len(), 2);
        check_roundtrip(&g);
    }
}
