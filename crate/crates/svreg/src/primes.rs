//! Integer factorization for the prime coordinates of constants.
//!
//! Trial division followed by Brent's variant of Pollard rho. Inputs are the
//! numerators/denominators of user-supplied rationals, so sizes stay modest.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Factor n >= 1 into (prime, multiplicity) pairs, primes ascending.
pub fn factor_biguint(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out: Vec<(BigUint, u32)> = vec![];
    if n.is_one() || n.is_zero() {
        return out;
    }
    let mut n = n.clone();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let bp = BigUint::from(p);
        let mut m = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            m += 1;
        }
        if m > 0 {
            out.push((bp, m));
        }
        if n.is_one() {
            return out;
        }
    }
    // trial division by 6k+-1 up to 2^20, then rho
    let mut d = 49u64;
    let mut step = [4u64, 2].into_iter().cycle();
    while d < (1 << 20) {
        let bd = BigUint::from(d);
        if &bd * &bd > n {
            break;
        }
        let mut m = 0;
        while (&n % &bd).is_zero() {
            n /= &bd;
            m += 1;
        }
        if m > 0 {
            out.push((bd, m));
        }
        d += step.next().unwrap();
    }
    if !n.is_one() {
        let mut rest = vec![];
        split(&n, &mut rest);
        rest.sort();
        let mut i = 0;
        while i < rest.len() {
            let mut m = 1;
            while i + 1 < rest.len() && rest[i + 1] == rest[i] {
                m += 1;
                i += 1;
            }
            out.push((rest[i].clone(), m));
            i += 1;
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn split(n: &BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_prime(n) {
        out.push(n.clone());
        return;
    }
    let d = pollard_brent(n);
    split(&d, out);
    split(&(n / &d), out);
}

fn is_prime(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    // Miller-Rabin with fixed bases; deterministic for u128-sized inputs and
    // overwhelmingly reliable beyond.
    let one = BigUint::one();
    let two = &one + &one;
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = BigUint::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = modpow_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn modpow_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_u64(acc, b, m);
        }
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

fn pollard_brent(n: &BigUint) -> BigUint {
    // Brent cycle detection; deterministic restart schedule.
    let one = BigUint::one();
    let two = &one + &one;
    if (n % &two).is_zero() {
        return two;
    }
    let mut c = BigUint::from(1u32);
    loop {
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = BigUint::one();
        let f = |v: &BigUint| (v * v + &c) % n;
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if !d.is_one() && &d != n {
            return d;
        }
        c += &one;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_small_and_composite() {
        let f = factor_biguint(&BigUint::from(12u32));
        assert_eq!(
            f,
            vec![(BigUint::from(2u32), 2), (BigUint::from(3u32), 1)]
        );
        let n = BigUint::from(1000003u64 * 999983);
        let f = factor_biguint(&n);
        assert_eq!(f.len(), 2);
        assert_eq!(&f[0].0 * &f[1].0, n);
    }
}
