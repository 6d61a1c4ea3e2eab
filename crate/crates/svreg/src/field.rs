//! Exact arithmetic in Q(t)* tensor Q: factored elements, places of P^1,
//! valuations, and numerical evaluation over C.
//!
//! An element is sign * prod p^(e_p) * prod q(t)^(e_q) with p prime, q monic
//! irreducible over Q, and rational exponents. The sign is torsion in the
//! Q-vector space and is dropped by `coordinates`, but it is kept in storage
//! so `evaluate` remains an honest function when all exponents are integers.

use crate::error::{Error, Result};
use crate::factor::factor_monic;
use crate::poly::{q_to_f64, Poly, Q};
use crate::primes::factor_biguint;
use num_bigint::{BigInt, BigUint, Sign};
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A basis generator of the Q-vector space Q(t)* tensor Q: a prime integer or
/// a monic irreducible polynomial. Primes sort before polynomials.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Prime(BigUint),
    Poly(Poly),
}

impl Generator {
    pub fn eval_c(&self, z: Complex64) -> Complex64 {
        match self {
            Generator::Prime(p) => Complex64::new(p.to_f64().unwrap_or(f64::MAX), 0.0),
            Generator::Poly(q) => q.eval_c(z),
        }
    }

    pub fn to_field_element(&self) -> FieldElement {
        match self {
            Generator::Prime(p) => {
                let mut c = BTreeMap::new();
                c.insert(p.clone(), Q::one());
                FieldElement {
                    negative: false,
                    constant: c,
                    factors: BTreeMap::new(),
                }
            }
            Generator::Poly(q) => {
                let mut f = BTreeMap::new();
                f.insert(q.clone(), Q::one());
                FieldElement {
                    negative: false,
                    constant: BTreeMap::new(),
                    factors: f,
                }
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Prime(p) => write!(f, "{}", p),
            Generator::Poly(q) => write!(f, "({})", q),
        }
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Sparse coordinate vector over the generator basis.
pub type Coords = BTreeMap<Generator, Q>;

pub fn coords_add_scaled(acc: &mut Coords, v: &Coords, s: &Q) {
    if s.is_zero() {
        return;
    }
    for (g, e) in v {
        let entry = acc.entry(g.clone()).or_insert_with(Q::zero);
        *entry += e * s;
        if entry.is_zero() {
            acc.remove(g);
        }
    }
}

/// A nonzero element of Q(t)* tensor Q in factored form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement {
    negative: bool,
    constant: BTreeMap<BigUint, Q>, // prime -> exponent, exponents nonzero
    factors: BTreeMap<Poly, Q>,    // monic irreducible -> exponent, nonzero
}

impl FieldElement {
    pub fn one() -> Self {
        FieldElement {
            negative: false,
            constant: BTreeMap::new(),
            factors: BTreeMap::new(),
        }
    }

    /// The coordinate variable t.
    pub fn var() -> Self {
        Generator::Poly(Poly::t()).to_field_element()
    }

    pub fn from_rational(c: &Q) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroConstant);
        }
        let mut fe = FieldElement::one();
        fe.negative = c.is_negative();
        fe.mul_rational_pow(&c.abs(), &Q::one());
        Ok(fe)
    }

    /// Normalizing constructor: polynomials are made monic (leading
    /// coefficients folded into the constant), factored into irreducibles,
    /// and exponents of identical irreducibles summed.
    pub fn build(constant: &Q, factor_list: &[(Poly, Q)]) -> Result<Self> {
        if constant.is_zero() {
            return Err(Error::ZeroConstant);
        }
        let mut fe = FieldElement::one();
        fe.negative = constant.is_negative();
        fe.mul_rational_pow(&constant.abs(), &Q::one());
        for (poly, exp) in factor_list {
            if exp.is_zero() {
                continue;
            }
            if poly.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            if poly.is_constant() {
                return Err(Error::ConstantFactor);
            }
            let lc = poly.leading();
            if !lc.is_one() {
                if lc.is_negative() {
                    if exp.is_integer() {
                        if exp.to_integer().bit(0) {
                            fe.negative = !fe.negative;
                        }
                    } else {
                        return Err(Error::FractionalExponent);
                    }
                }
                fe.mul_rational_pow(&lc.abs(), exp);
            }
            for (irr, mult) in factor_monic(&poly.monic()) {
                let e = exp * Q::from_integer(BigInt::from(mult));
                let entry = fe.factors.entry(irr).or_insert_with(Q::zero);
                *entry += e;
            }
        }
        fe.factors.retain(|_, e| !e.is_zero());
        Ok(fe)
    }

    /// Multiply by |c|^exp through the prime coordinates of c.
    fn mul_rational_pow(&mut self, c: &Q, exp: &Q) {
        debug_assert!(c.is_positive());
        for (p, m) in factor_biguint(&c.numer().abs().to_biguint().unwrap()) {
            let e = exp * Q::from_integer(BigInt::from(m));
            let entry = self.constant.entry(p).or_insert_with(Q::zero);
            *entry += e;
        }
        for (p, m) in factor_biguint(&c.denom().abs().to_biguint().unwrap()) {
            let e = exp * Q::from_integer(BigInt::from(m));
            let entry = self.constant.entry(p).or_insert_with(Q::zero);
            *entry -= e;
        }
        self.constant.retain(|_, e| !e.is_zero());
    }

    /// a^q * b^r in the Q-vector space; exact for all rational q, r.
    pub fn group_op(a: &FieldElement, q: &Q, b: &FieldElement, r: &Q) -> FieldElement {
        let mut out = a.pow(q);
        let bp = b.pow(r);
        out.negative ^= bp.negative;
        for (p, e) in bp.constant {
            let entry = out.constant.entry(p).or_insert_with(Q::zero);
            *entry += e;
        }
        for (f, e) in bp.factors {
            let entry = out.factors.entry(f).or_insert_with(Q::zero);
            *entry += e;
        }
        out.constant.retain(|_, e| !e.is_zero());
        out.factors.retain(|_, e| !e.is_zero());
        out
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        FieldElement::group_op(self, &Q::one(), other, &Q::one())
    }

    pub fn div(&self, other: &FieldElement) -> FieldElement {
        FieldElement::group_op(self, &Q::one(), other, &-Q::one())
    }

    pub fn pow(&self, r: &Q) -> FieldElement {
        if r.is_zero() {
            return FieldElement::one();
        }
        let negative = if r.is_integer() {
            self.negative && r.to_integer().bit(0)
        } else {
            // fractional power of the class: torsion is dropped
            false
        };
        FieldElement {
            negative,
            constant: self
                .constant
                .iter()
                .map(|(p, e)| (p.clone(), e * r))
                .collect(),
            factors: self
                .factors
                .iter()
                .map(|(f, e)| (f.clone(), e * r))
                .collect(),
        }
    }

    pub fn invert(&self) -> FieldElement {
        self.pow(&-Q::one())
    }

    /// Multiply by -1 (an honest sign flip; invisible to `coordinates`).
    pub fn negate(&self) -> FieldElement {
        let mut out = self.clone();
        out.negative = !out.negative;
        out
    }

    pub fn is_one(&self) -> bool {
        !self.negative && self.constant.is_empty() && self.factors.is_empty()
    }

    /// True for +1 and -1: the torsion units that die in the vector space.
    pub fn is_torsion_unit(&self) -> bool {
        self.constant.is_empty() && self.factors.is_empty()
    }

    pub fn is_negative_unit(&self) -> bool {
        self.negative && self.constant.is_empty() && self.factors.is_empty()
    }

    pub fn has_integer_exponents(&self) -> bool {
        self.constant.values().all(|e| e.is_integer()) && self.factors.values().all(|e| e.is_integer())
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &BTreeMap<Poly, Q> {
        &self.factors
    }

    /// Recover the constant as an exact rational (integer exponents only).
    pub fn constant_rational(&self) -> Option<Q> {
        let mut c = Q::one();
        for (p, e) in &self.constant {
            if !e.is_integer() {
                return None;
            }
            let k = e.to_integer().to_i64()?;
            let base = Q::from_integer(BigInt::from_biguint(Sign::Plus, p.clone()));
            let mag = if k >= 0 {
                num_traits::pow::pow(base, k as usize)
            } else {
                num_traits::pow::pow(base.recip(), (-k) as usize)
            };
            c *= mag;
        }
        if self.negative {
            c = -c;
        }
        Some(c)
    }

    /// The element as an exact rational number, when it is a constant with
    /// integer exponents.
    pub fn as_rational(&self) -> Option<Q> {
        if self.factors.is_empty() {
            self.constant_rational()
        } else {
            None
        }
    }

    /// Canonical coordinates in the Q-vector space; the sign is dropped.
    pub fn coordinates(&self) -> Coords {
        let mut out = Coords::new();
        for (p, e) in &self.constant {
            out.insert(Generator::Prime(p.clone()), e.clone());
        }
        for (f, e) in &self.factors {
            out.insert(Generator::Poly(f.clone()), e.clone());
        }
        out
    }

    /// Numerator and denominator polynomials of an honest rational function
    /// (integer exponents required); the fraction is in lowest terms.
    pub fn numer_denom(&self) -> Result<(Poly, Poly)> {
        if !self.has_integer_exponents() {
            return Err(Error::FractionalExponent);
        }
        let c = self.constant_rational().unwrap();
        let mut num = Poly::constant(c);
        let mut den = Poly::one();
        for (f, e) in &self.factors {
            let k = e.to_integer().to_i64().ok_or(Error::Invalid(
                "exponent too large".into(),
            ))?;
            if k > 0 {
                num = num.mul(&f.pow(k as u32));
            } else {
                den = den.mul(&f.pow((-k) as u32));
            }
        }
        Ok((num, den))
    }

    /// 1 - f for an honest rational function f != 1. The result of 1 - c for
    /// constant c may be a torsion unit; callers can check `is_torsion_unit`.
    pub fn one_minus(&self) -> Result<FieldElement> {
        let (num, den) = self.numer_denom()?;
        let diff = den.sub(&num);
        if diff.is_zero() {
            return Err(Error::IdenticallyOne);
        }
        let mut constant = Q::one();
        let mut factors = vec![];
        if diff.is_constant() {
            constant *= diff.coeff(0);
        } else {
            factors.push((diff, Q::one()));
        }
        if den.is_constant() {
            constant /= den.coeff(0);
        } else {
            factors.push((den, -Q::one()));
        }
        FieldElement::build(&constant, &factors)
    }

    /// Order of vanishing at a place; rational when exponents are.
    pub fn order_at(&self, place: &Place) -> Q {
        match place {
            Place::Rational(a) => {
                let p = Poly::t_minus(a);
                self.factors.get(&p).cloned().unwrap_or_else(Q::zero)
            }
            Place::Algebraic(p) => self.factors.get(p).cloned().unwrap_or_else(Q::zero),
            Place::Infinity => {
                let mut s = Q::zero();
                for (f, e) in &self.factors {
                    s -= e * Q::from_integer(BigInt::from(f.degree() as i64));
                }
                s
            }
        }
    }

    /// The unit part f * pi^(-ord) at a place, with the uniformizer factor
    /// cancelled exactly in factored form.
    pub fn unit_part_at(&self, place: &Place) -> FieldElement {
        let a = self.order_at(place);
        if a.is_zero() {
            return self.clone();
        }
        FieldElement::group_op(self, &Q::one(), &place.uniformizer(), &-a)
    }

    /// Value at a closed point: evaluate the element at the place, assuming
    /// order 0 there. For the infinite place this is the constant (all monic
    /// factors tend to the monic limit).
    pub fn value_at_embedding(&self, emb: &Embedding) -> Result<Complex64> {
        match emb.place {
            Place::Infinity => {
                // ord 0 at infinity: degrees cancel; the limit is the constant
                Ok(Complex64::new(self.constant_f64(), 0.0))
            }
            _ => self.evaluate(emb.root),
        }
    }

    fn constant_f64(&self) -> f64 {
        let mut ln = 0.0;
        for (p, e) in &self.constant {
            ln += q_to_f64(e) * p.to_f64().unwrap_or(f64::MAX).ln();
        }
        let v = ln.exp();
        if self.negative {
            -v
        } else {
            v
        }
    }

    /// Evaluate over C with principal powers for fractional exponents.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(self.constant_f64(), 0.0);
        for (f, e) in &self.factors {
            let v = f.eval_c(z);
            if e.is_integer() {
                let k = e.to_integer().to_i64().unwrap();
                if v.norm() == 0.0 {
                    if k < 0 {
                        return Err(Error::Pole);
                    }
                    return Ok(Complex64::new(0.0, 0.0));
                }
                acc *= v.powi(k as i32);
            } else {
                if v.norm() == 0.0 {
                    return Err(Error::Pole);
                }
                // a fractional power on the negative real axis has no
                // unambiguous principal value
                if v.im == 0.0 && v.re < 0.0 {
                    return Err(Error::Singular(
                        "principal power of a negative real value".into(),
                    ));
                }
                acc *= (q_to_f64(e) * v.ln()).exp();
            }
        }
        Ok(acc)
    }

    /// log|f(z)|; single-valued for all rational exponents.
    pub fn log_abs(&self, z: Complex64) -> Result<f64> {
        let mut ln = 0.0;
        for (p, e) in &self.constant {
            ln += q_to_f64(e) * p.to_f64().unwrap_or(f64::MAX).ln();
        }
        for (f, e) in &self.factors {
            let v = f.eval_c(z);
            if v.norm() == 0.0 {
                return Err(Error::Pole);
            }
            ln += q_to_f64(e) * v.norm().ln();
        }
        Ok(ln)
    }

    /// f'(z)/f(z) = sum e_i q_i'(z)/q_i(z); the d log f coefficient.
    pub fn dlog_eval(&self, z: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (f, e) in &self.factors {
            let v = f.eval_c(z);
            if v.norm() == 0.0 {
                return Err(Error::Pole);
            }
            acc += q_to_f64(e) * f.derivative().eval_c(z) / v;
        }
        Ok(acc)
    }

    /// Substitute t -> 1/t, staying in factored form. Used for the chart at
    /// infinity in the quadrature routines.
    pub fn substitute_inverse(&self) -> FieldElement {
        let mut out = FieldElement {
            negative: self.negative,
            constant: self.constant.clone(),
            factors: BTreeMap::new(),
        };
        let mut t_exp = Q::zero();
        let t = Poly::t();
        for (f, e) in &self.factors {
            if *f == t {
                t_exp -= e;
                continue;
            }
            let d = f.degree();
            t_exp -= e * Q::from_integer(BigInt::from(d as i64));
            // f(1/s) = c0 * s^(-d) * monic_rev(s) with c0 = f(0) != 0
            let c0 = f.coeff(0);
            let mut rev: Vec<Q> = f.coeffs().iter().rev().cloned().collect();
            for c in rev.iter_mut() {
                *c = &*c / &c0;
            }
            let monic_rev = Poly::from_coeffs(rev);
            if c0.is_negative()
                && e.is_integer()
                    && e.to_integer().bit(0) {
                        out.negative = !out.negative;
                    }
            out.mul_rational_pow(&c0.abs(), e);
            for (irr, mult) in factor_monic(&monic_rev) {
                let add = e * Q::from_integer(BigInt::from(mult));
                let entry = out.factors.entry(irr).or_insert_with(Q::zero);
                *entry += add;
            }
        }
        if !t_exp.is_zero() {
            let entry = out.factors.entry(t).or_insert_with(Q::zero);
            *entry += t_exp;
        }
        out.constant.retain(|_, e| !e.is_zero());
        out.factors.retain(|_, e| !e.is_zero());
        out
    }

    /// All complex points where some factor vanishes (zeros and poles).
    pub fn singular_points(&self, precision: f64) -> Vec<Complex64> {
        let mut out = vec![];
        for f in self.factors.keys() {
            out.extend(roots_of(f, precision));
        }
        out
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_torsion_unit() {
            return write!(f, "{}", if self.negative { "-1" } else { "1" });
        }
        let mut parts: Vec<String> = vec![];
        if let Some(c) = self.constant_rational() {
            if !c.is_one() || self.factors.is_empty() {
                parts.push(format!("{}", c));
            } else if self.negative {
                parts.push("-1".into());
            }
        } else {
            for (p, e) in &self.constant {
                parts.push(format!("{}^({})", p, e));
            }
        }
        for (q, e) in &self.factors {
            if e.is_one() {
                parts.push(format!("({})", q));
            } else {
                parts.push(format!("({})^({})", q, e));
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A closed point of P^1 over Q.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Rational(Q),
    Algebraic(Poly),
    Infinity,
}

impl Place {
    pub fn rational(a: Q) -> Place {
        Place::Rational(a)
    }

    /// Build a place from a monic polynomial; degree-1 inputs become rational
    /// places, higher degrees must be irreducible.
    pub fn from_poly(p: &Poly) -> Result<Place> {
        if p.is_constant() || p.is_zero() {
            return Err(Error::Invalid("place polynomial must be nonconstant".into()));
        }
        let m = p.monic();
        if m.degree() == 1 {
            return Ok(Place::Rational(-m.coeff(0)));
        }
        let factors = factor_monic(&m);
        if factors.len() != 1 || factors[0].1 != 1 {
            return Err(Error::ReduciblePlace(format!("{}", m)));
        }
        Ok(Place::Algebraic(m))
    }

    /// The canonical uniformizer: (t - a), p(t), or 1/t.
    pub fn uniformizer(&self) -> FieldElement {
        match self {
            Place::Rational(a) => {
                Generator::Poly(Poly::t_minus(a)).to_field_element()
            }
            Place::Algebraic(p) => Generator::Poly(p.clone()).to_field_element(),
            Place::Infinity => FieldElement::var().invert(),
        }
    }

    /// The monic polynomial cutting out the place (None at infinity).
    pub fn polynomial(&self) -> Option<Poly> {
        match self {
            Place::Rational(a) => Some(Poly::t_minus(a)),
            Place::Algebraic(p) => Some(p.clone()),
            Place::Infinity => None,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Rational(_) => 1,
            Place::Algebraic(p) => p.degree(),
            Place::Infinity => 1,
        }
    }

    /// All embeddings of the residue field into C, to the requested absolute
    /// precision on the defining root.
    pub fn embeddings(&self, precision: f64) -> Result<Vec<Embedding>> {
        match self {
            Place::Rational(a) => Ok(vec![Embedding {
                place: self.clone(),
                root: Complex64::new(q_to_f64(a), 0.0),
                precision,
            }]),
            Place::Algebraic(p) => {
                let roots = roots_of(p, precision);
                if roots.len() != p.degree() {
                    return Err(Error::Invalid(format!(
                        "root finding found {} of {} roots of {}",
                        roots.len(),
                        p.degree(),
                        p
                    )));
                }
                Ok(roots
                    .into_iter()
                    .map(|root| Embedding {
                        place: self.clone(),
                        root,
                        precision,
                    })
                    .collect())
            }
            Place::Infinity => Err(Error::InfinityEmbedding),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Rational(a) => write!(f, "{}", Poly::t_minus(a)),
            Place::Algebraic(p) => write!(f, "{}", p),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// One complex embedding of the residue field of a place.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub place: Place,
    pub root: Complex64,
    pub precision: f64,
}

/// All complex roots of a polynomial by Durand-Kerner iteration with Newton
/// polish; each root is certified a posteriori against
/// |p(root)| <= precision * (1 + |root|)^deg.
pub fn roots_of(p: &Poly, precision: f64) -> Vec<Complex64> {
    let monic = p.monic();
    let n = monic.degree();
    if n == 0 {
        return vec![];
    }
    if n == 1 {
        return vec![Complex64::new(-q_to_f64(&monic.coeff(0)), 0.0)];
    }
    let coeffs: Vec<f64> = monic.coeffs().iter().map(q_to_f64).collect();
    let bound = 1.0
        + coeffs[..n]
            .iter()
            .map(|c| c.abs())
            .fold(0.0f64, f64::max);
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for c in coeffs[..n].iter().rev() {
            acc = acc * z + Complex64::new(*c, 0.0);
        }
        acc
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n)
        .map(|i| bound * seed.powu(i as u32 + 1))
        .collect();
    for _ in 0..200 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 * bound {
            break;
        }
    }
    // Newton polish against the exact derivative
    let dp = monic.derivative();
    for r in roots.iter_mut() {
        for _ in 0..4 {
            let v = monic.eval_c(*r);
            let d = dp.eval_c(*r);
            if d.norm() > 0.0 {
                *r -= v / d;
            }
        }
        // snap real roots
        if r.im.abs() < precision * (1.0 + r.norm()) {
            let cand = Complex64::new(r.re, 0.0);
            if monic.eval_c(cand).norm() <= monic.eval_c(*r).norm() * 4.0 + precision {
                *r = cand;
            }
        }
    }
    roots.retain(|r| {
        monic.eval_c(*r).norm() <= precision.max(1e-12) * (1.0 + r.norm()).powi(n as i32)
    });
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{q_int, q_ratio};

    fn fe(c: i64, factors: &[(&[i64], i64)]) -> FieldElement {
        let list: Vec<(Poly, Q)> = factors
            .iter()
            .map(|(coeffs, e)| (Poly::from_ints(coeffs), q_int(*e)))
            .collect();
        FieldElement::build(&q_int(c), &list).unwrap()
    }

    #[test]
    fn build_factors_and_normalizes() {
        // (t^2-1)(t-3)^-1 -> {t-1:1, t+1:1, t-3:-1}
        let f = fe(1, &[(&[-1, 0, 1], 1), (&[-3, 1], -1)]);
        let coords = f.coordinates();
        assert_eq!(coords.len(), 3);
        assert_eq!(
            coords.get(&Generator::Poly(Poly::from_ints(&[-1, 1]))),
            Some(&q_int(1))
        );
        assert_eq!(
            coords.get(&Generator::Poly(Poly::from_ints(&[-3, 1]))),
            Some(&q_int(-1))
        );
    }

    #[test]
    fn constant_sign_is_torsion() {
        let f = FieldElement::from_rational(&q_int(-2)).unwrap();
        let coords = f.coordinates();
        assert_eq!(coords.len(), 1);
        assert_eq!(coords.get(&Generator::Prime(2u32.into())), Some(&q_int(1)));
        assert_eq!(f.as_rational(), Some(q_int(-2)));
    }

    #[test]
    fn coordinates_of_mixed_constant_and_factors() {
        // -12 t/(t-1): primes 2^2 * 3, sign dropped
        let f = fe(-12, &[(&[0, 1], 1), (&[-1, 1], -1)]);
        let coords = f.coordinates();
        assert_eq!(coords.len(), 4);
        assert_eq!(coords.get(&Generator::Prime(2u32.into())), Some(&q_int(2)));
        assert_eq!(coords.get(&Generator::Prime(3u32.into())), Some(&q_int(1)));
        assert_eq!(coords.get(&Generator::Poly(Poly::t())), Some(&q_int(1)));
        assert_eq!(
            coords.get(&Generator::Poly(Poly::from_ints(&[-1, 1]))),
            Some(&q_int(-1))
        );
        assert!(FieldElement::one().coordinates().is_empty());
    }

    #[test]
    fn group_op_is_additive_in_coordinates() {
        let a = fe(12, &[(&[0, 1], 1)]);
        let b = fe(1, &[(&[-1, 1], 2), (&[0, 1], -1)]);
        let ab = a.mul(&b);
        let mut expect = a.coordinates();
        coords_add_scaled(&mut expect, &b.coordinates(), &q_int(1));
        assert_eq!(ab.coordinates(), expect);
        // inverse law
        let id = FieldElement::group_op(&a, &q_int(1), &a, &q_int(-1));
        assert!(id.is_one());
    }

    #[test]
    fn rational_exponents_add() {
        let a = fe(1, &[(&[-3, 1], 1)]);
        let h = FieldElement::group_op(&a, &q_ratio(1, 2), &a, &q_ratio(1, 2));
        assert_eq!(h.coordinates(), a.coordinates());
    }

    #[test]
    fn one_minus_examples() {
        // 1 - t = -(t-1)
        let t = FieldElement::var();
        let m = t.one_minus().unwrap();
        assert_eq!(
            m.coordinates().get(&Generator::Poly(Poly::from_ints(&[-1, 1]))),
            Some(&q_int(1))
        );
        // 1 - t^2/(t^2-1) = -1/(t^2-1)
        let f = fe(1, &[(&[0, 1], 2), (&[-1, 0, 1], -1)]);
        let m = f.one_minus().unwrap();
        let c = m.coordinates();
        assert_eq!(
            c.get(&Generator::Poly(Poly::from_ints(&[-1, 1]))),
            Some(&q_int(-1))
        );
        assert_eq!(
            c.get(&Generator::Poly(Poly::from_ints(&[1, 1]))),
            Some(&q_int(-1))
        );
        // 1 - 2 = -1: torsion
        let two = FieldElement::from_rational(&q_int(2)).unwrap();
        let m = two.one_minus().unwrap();
        assert!(m.is_torsion_unit());
        assert!(m.is_negative_unit());
        // 1 - 1 errors
        let one = FieldElement::one();
        assert!(one.one_minus().is_err());
    }

    #[test]
    fn one_minus_agrees_with_evaluation() {
        let f = fe(3, &[(&[1, 1], 1), (&[-2, 1], -1)]);
        let m = f.one_minus().unwrap();
        for z in [
            Complex64::new(0.3, 0.7),
            Complex64::new(-1.4, 0.2),
            Complex64::new(5.0, -3.0),
        ] {
            let lhs = m.evaluate(z).unwrap();
            let rhs = Complex64::new(1.0, 0.0) - f.evaluate(z).unwrap();
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn order_at_places() {
        let f = fe(1, &[(&[-1, 0, 1], 1), (&[-3, 1], -1)]);
        assert_eq!(f.order_at(&Place::Rational(q_int(1))), q_int(1));
        assert_eq!(f.order_at(&Place::Rational(q_int(3))), q_int(-1));
        assert_eq!(f.order_at(&Place::Infinity), q_int(-1));
        let c = FieldElement::from_rational(&q_int(7)).unwrap();
        assert_eq!(c.order_at(&Place::Infinity), q_int(0));
        assert_eq!(c.order_at(&Place::Rational(q_int(0))), q_int(0));
    }

    #[test]
    fn principal_divisor_has_degree_zero() {
        let f = fe(5, &[(&[1, 0, 1], 2), (&[-3, 1], -1), (&[2, 1], -1)]);
        let mut total = Q::zero();
        for (q, _) in f.factors() {
            let place = Place::from_poly(q).unwrap();
            total += f.order_at(&place) * q_int(place.degree() as i64);
        }
        total += f.order_at(&Place::Infinity);
        assert!(total.is_zero());
    }

    #[test]
    fn dlog_matches_difference_quotient() {
        let f = fe(2, &[(&[0, 1], 2), (&[-1, 1], -1)]);
        let z = Complex64::new(3.0, 0.0);
        let d = f.dlog_eval(z).unwrap();
        assert!((d - Complex64::new(2.0 / 3.0 - 0.5, 0.0)).norm() < 1e-12);
        let h = 1e-6;
        let fd = (f.evaluate(z + h).unwrap().ln() - f.evaluate(z - h).unwrap().ln()) / (2.0 * h);
        assert!((d - fd).norm() < 1e-6);
    }

    #[test]
    fn evaluate_at_pole_errors() {
        let f = fe(1, &[(&[0, 1], -1)]);
        assert!(matches!(f.evaluate(Complex64::new(0.0, 0.0)), Err(Error::Pole)));
    }

    #[test]
    fn embeddings_of_places() {
        let p = Place::from_poly(&Poly::from_ints(&[-3, 1])).unwrap();
        let e = p.embeddings(1e-12).unwrap();
        assert_eq!(e.len(), 1);
        assert!((e[0].root - Complex64::new(3.0, 0.0)).norm() < 1e-12);

        let p = Place::from_poly(&Poly::from_ints(&[1, 0, 1])).unwrap();
        let e = p.embeddings(1e-12).unwrap();
        assert_eq!(e.len(), 2);
        assert!((e[0].root - Complex64::new(0.0, -1.0)).norm() < 1e-10);
        assert!((e[1].root - Complex64::new(0.0, 1.0)).norm() < 1e-10);

        let p = Place::from_poly(&Poly::from_ints(&[-2, 0, 1])).unwrap();
        let e = p.embeddings(1e-12).unwrap();
        assert_eq!(e.len(), 2);
        assert!((e[1].root.re - 2f64.sqrt()).abs() < 1e-10);

        assert!(Place::Infinity.embeddings(1e-12).is_err());
        assert!(Place::from_poly(&Poly::from_ints(&[-1, 0, 1])).is_err());
    }

    #[test]
    fn substitute_inverse_on_rational_function() {
        // f = t^2 (t-3)^-1 ; f(1/s) = s^-2 (1/s - 3)^-1 = -1/3 * s^-1 * (s - 1/3)^-1
        let f = fe(1, &[(&[0, 1], 2), (&[-3, 1], -1)]);
        let g = f.substitute_inverse();
        for (z, s) in [
            (Complex64::new(2.0, 1.0), Complex64::new(2.0, 1.0).inv()),
            (Complex64::new(-0.3, 0.8), Complex64::new(-0.3, 0.8).inv()),
        ] {
            let lhs = f.evaluate(z).unwrap();
            let rhs = g.evaluate(s).unwrap();
            assert!((lhs - rhs).norm() < 1e-9 * lhs.norm().max(1.0));
        }
    }

    #[test]
    fn unit_part_cancels_uniformizer() {
        let f = fe(1, &[(&[-3, 1], 2), (&[0, 1], 1)]);
        let x = Place::Rational(q_int(3));
        let u = f.unit_part_at(&x);
        assert_eq!(u.order_at(&x), Q::zero());
        let v = u.evaluate(Complex64::new(3.0, 0.0)).unwrap();
        assert!((v - Complex64::new(3.0, 0.0)).norm() < 1e-12);
    }
}
