//! The weight-n symbol complexes M(n) and M~(n) over Q(t).
//!
//! A degree-p element of the weight-n complex is a Q-combination of terms
//! \[f\]_k (x) g_1 ^ ... ^ g_(p-1) with k = n - p + 1 for p < n. In degree n
//! the M-variant holds group elements h (x) wedge (order 1 here) and the
//! M~-variant holds pure wedges (order 0). Canonical forms expand every
//! linear slot over the generator basis; symbol arguments \[f\]_k for k >= 2
//! stay as honest signed elements.

pub mod correction_form;
pub mod linalg;
pub mod wedge;

use crate::error::{Error, Result};
use crate::field::{Coords, Embedding, FieldElement, Generator, Place};
use crate::poly::{q_to_f64, Q};
use crate::polylog;
use crate::verdict::Verdict;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use wedge::Word;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variant {
    M,
    MTilde,
}

/// coeff * \[arg\]_order (x) wedge. Order 1 encodes a group element in the arg
/// slot; order 0 (M~ top degree) a pure wedge with the arg ignored.
#[derive(Clone, Debug)]
pub struct SymbolTerm {
    pub coeff: Q,
    pub order: u32,
    pub arg: FieldElement,
    pub wedge: Vec<FieldElement>,
}

impl SymbolTerm {
    pub fn new(coeff: Q, order: u32, arg: FieldElement, wedge: Vec<FieldElement>) -> Self {
        SymbolTerm {
            coeff,
            order,
            arg,
            wedge,
        }
    }
}

/// Argument slot of a canonical term.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ArgKey {
    None,
    Gen(Generator),
    Symbol(FieldElement),
}

pub type CanonKey = (u32, ArgKey, Word);

/// Fully expanded canonical form: like terms merged, zero coefficients gone.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CanonicalChain(pub BTreeMap<CanonKey, Q>);

impl CanonicalChain {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add(&mut self, key: CanonKey, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(key.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&key);
        }
    }

    pub fn describe(&self, limit: usize) -> String {
        let mut parts = vec![];
        for ((order, arg, word), c) in self.0.iter().take(limit) {
            let args = match arg {
                ArgKey::None => String::new(),
                ArgKey::Gen(g) => format!("[{}]_1", g),
                ArgKey::Symbol(f) => format!("[{}]_{}", f, order),
            };
            let ws: Vec<String> = word.iter().map(|g| format!("{}", g)).collect();
            parts.push(format!("{} {} (x) {}", c, args, ws.join("^")));
        }
        if self.0.len() > limit {
            parts.push(format!("... ({} terms)", self.0.len()));
        }
        parts.join(" + ")
    }
}

/// A Q-linear combination of symbol terms in a fixed (weight, degree) slot.
#[derive(Clone, Debug)]
pub struct ChainElement {
    pub weight: u32,
    pub degree: u32,
    pub variant: Variant,
    pub terms: Vec<SymbolTerm>,
}

impl ChainElement {
    /// Expected symbol order at this (weight, degree) slot; None when the
    /// degree is out of range.
    pub fn expected_order(weight: u32, degree: u32, variant: Variant) -> Option<u32> {
        if degree < 1 || degree > weight {
            return None;
        }
        if degree < weight {
            Some(weight - degree + 1)
        } else {
            match variant {
                Variant::M => Some(1),
                Variant::MTilde => Some(0),
            }
        }
    }

    pub fn expected_wedge_len(weight: u32, degree: u32, variant: Variant) -> usize {
        if degree < weight {
            (degree - 1) as usize
        } else {
            match variant {
                Variant::M => (weight - 1) as usize,
                Variant::MTilde => weight as usize,
            }
        }
    }

    pub fn new(
        weight: u32,
        degree: u32,
        variant: Variant,
        terms: Vec<SymbolTerm>,
    ) -> Result<ChainElement> {
        if weight < 2 {
            return Err(Error::Invalid("weight must be at least 2".into()));
        }
        let order = Self::expected_order(weight, degree, variant).ok_or_else(|| {
            Error::Invalid(format!("degree {degree} out of range for weight {weight}"))
        })?;
        let wlen = Self::expected_wedge_len(weight, degree, variant);
        for t in &terms {
            if t.order != order {
                return Err(Error::Invalid(format!(
                    "term order {} does not match slot order {}",
                    t.order, order
                )));
            }
            if t.wedge.len() != wlen {
                return Err(Error::Invalid(format!(
                    "term wedge length {} does not match slot length {}",
                    t.wedge.len(),
                    wlen
                )));
            }
            if t.order >= 2 && t.arg.is_torsion_unit() {
                return Err(Error::Invalid(
                    "symbol argument must not be a torsion unit".into(),
                ));
            }
            if t.order == 0 && !t.arg.is_one() {
                return Err(Error::Invalid(
                    "pure wedge terms carry no symbol argument".into(),
                ));
            }
        }
        Ok(ChainElement {
            weight,
            degree,
            variant,
            terms,
        })
    }

    /// Degree-2 element sum c_j \[f_j\]_(n-1) (x) g_j.
    pub fn degree2(
        weight: u32,
        variant: Variant,
        terms: Vec<(Q, FieldElement, FieldElement)>,
    ) -> Result<ChainElement> {
        let order = weight - 1;
        let terms = terms
            .into_iter()
            .map(|(c, f, g)| SymbolTerm::new(c, order, f, vec![g]))
            .collect();
        ChainElement::new(weight, 2, variant, terms)
    }

    /// The canonical expansion of this element.
    pub fn canonical(&self) -> CanonicalChain {
        let mut out = CanonicalChain::default();
        for t in &self.terms {
            let words = wedge::expand_wedge(
                &t.wedge.iter().map(|g| g.coordinates()).collect::<Vec<_>>(),
            );
            match t.order {
                0 => {
                    for (w, c) in words {
                        out.add((0, ArgKey::None, w), &t.coeff * &c);
                    }
                }
                1 => {
                    for (g, e) in t.arg.coordinates() {
                        for (w, c) in &words {
                            out.add((1, ArgKey::Gen(g.clone()), w.clone()), &t.coeff * c * &e);
                        }
                    }
                }
                _ => {
                    for (w, c) in words {
                        out.add((t.order, ArgKey::Symbol(t.arg.clone()), w), &t.coeff * &c);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().is_zero()
    }

    /// Rebuild a terms list from a canonical chain.
    pub fn from_canonical(
        weight: u32,
        degree: u32,
        variant: Variant,
        canon: CanonicalChain,
    ) -> ChainElement {
        let terms = canon
            .0
            .into_iter()
            .map(|((order, arg, word), coeff)| {
                let arg_fe = match &arg {
                    ArgKey::None => FieldElement::one(),
                    ArgKey::Gen(g) => g.to_field_element(),
                    ArgKey::Symbol(f) => f.clone(),
                };
                let wedge = word.iter().map(|g| g.to_field_element()).collect();
                SymbolTerm::new(coeff, order, arg_fe, wedge)
            })
            .collect();
        ChainElement {
            weight,
            degree,
            variant,
            terms,
        }
    }

    /// The complex differential. Termwise, \[f\]_k (x) w maps to
    /// \[f\]_(k-1) (x) f ^ w for k >= 3 and, for k = 2, to (1-f) (x) f ^ w in
    /// the M-variant or the pure wedge (1-f) ^ f ^ w in the M~-variant.
    pub fn differential(&self) -> Result<ChainElement> {
        if self.degree >= self.weight {
            return Err(Error::TopDegree);
        }
        let mut out = CanonicalChain::default();
        for t in &self.terms {
            let words = wedge::expand_wedge(
                &t.wedge.iter().map(|g| g.coordinates()).collect::<Vec<_>>(),
            );
            let fc = t.arg.coordinates();
            if t.order >= 3 {
                for (w, c) in &words {
                    for (w2, c2) in wedge::prepend_vector(&fc, w) {
                        out.add(
                            (t.order - 1, ArgKey::Symbol(t.arg.clone()), w2),
                            &t.coeff * c * &c2,
                        );
                    }
                }
            } else {
                let om = t.arg.one_minus()?;
                match self.variant {
                    Variant::M => {
                        let oc = om.coordinates();
                        for (w, c) in &words {
                            for (w2, c2) in wedge::prepend_vector(&fc, w) {
                                for (g, e) in &oc {
                                    out.add(
                                        (1, ArgKey::Gen(g.clone()), w2.clone()),
                                        &t.coeff * c * &c2 * e,
                                    );
                                }
                            }
                        }
                    }
                    Variant::MTilde => {
                        let oc = om.coordinates();
                        for (w, c) in &words {
                            for (w2, c2) in wedge::prepend_vector(&fc, w) {
                                for (w3, c3) in wedge::prepend_vector(&oc, &w2) {
                                    out.add((0, ArgKey::None, w3), &t.coeff * c * &c2 * &c3);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(ChainElement::from_canonical(
            self.weight,
            self.degree + 1,
            self.variant,
            out,
        ))
    }

    /// M~ normal form: each symbol argument is replaced by the canonical
    /// representative of {f, 1/f} with the sign rule \[1/f\]_k = (-1)^(k+1) \[f\]_k.
    pub fn normalize(&self) -> Result<ChainElement> {
        if self.variant != Variant::MTilde {
            return Err(Error::Invalid("normalize applies to the M~ variant".into()));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                if t.order < 2 {
                    return t.clone();
                }
                let (rep, sign) = mtilde_representative(&t.arg, t.order);
                SymbolTerm::new(
                    &t.coeff * Q::from_integer(BigInt::from(sign)),
                    t.order,
                    rep,
                    t.wedge.clone(),
                )
            })
            .collect();
        let merged = ChainElement {
            weight: self.weight,
            degree: self.degree,
            variant: self.variant,
            terms,
        };
        Ok(ChainElement::from_canonical(
            self.weight,
            self.degree,
            self.variant,
            merged.canonical(),
        ))
    }

    /// Canonical form, after M~ normalization when the variant calls for it.
    pub fn canonical_reduced(&self) -> Result<CanonicalChain> {
        match self.variant {
            Variant::M => Ok(self.canonical()),
            Variant::MTilde => Ok(self.normalize()?.canonical()),
        }
    }

    pub fn scale(&self, c: &Q) -> ChainElement {
        let terms = self
            .terms
            .iter()
            .map(|t| SymbolTerm::new(&t.coeff * c, t.order, t.arg.clone(), t.wedge.clone()))
            .collect();
        ChainElement {
            weight: self.weight,
            degree: self.degree,
            variant: self.variant,
            terms,
        }
    }

    pub fn add(&self, other: &ChainElement) -> Result<ChainElement> {
        if self.weight != other.weight
            || self.degree != other.degree
            || self.variant != other.variant
        {
            return Err(Error::Invalid("chain slots differ".into()));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(ChainElement {
            weight: self.weight,
            degree: self.degree,
            variant: self.variant,
            terms,
        })
    }

    /// The boundary map delta_x at a place, landing over the residue field.
    /// Each wedge entry splits as pi^a * unit; sp keeps symbol arguments that
    /// are units at x (value 1 included) and kills the rest. Degree n picks
    /// up the extra minus sign.
    pub fn boundary(&self, x: &Place) -> Result<ResidueCombination> {
        let mut terms: Vec<ResidueTerm> = vec![];
        let canon = match self.variant {
            Variant::M if self.degree == self.weight => {
                // project F* (x) wedge into the top wedge of M~ first
                let mut proj = CanonicalChain::default();
                for ((order, arg, word), c) in self.canonical().0 {
                    debug_assert_eq!(order, 1);
                    if let ArgKey::Gen(g) = arg {
                        if let Some((w, sign)) = wedge::prepend_generator(&word, &g) {
                            proj.add((0, ArgKey::None, w), c * Q::from_integer(sign.into()));
                        }
                    }
                }
                proj
            }
            _ => self.canonical(),
        };
        let top = self.degree == self.weight;
        for ((order, arg, word), coeff) in canon.0 {
            // split each wedge slot and expand the tame-symbol boundary
            let orders: Vec<Q> = word.iter().map(|g| generator_order(g, x)).collect();
            for (i, a) in orders.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let mut c = &coeff * a;
                if i % 2 == 1 {
                    c = -c;
                }
                if top {
                    c = -c;
                }
                let units: Vec<FieldElement> = word
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, g)| g.to_field_element().unit_part_at(x))
                    .collect();
                match &arg {
                    ArgKey::None => {
                        terms.push(ResidueTerm {
                            coeff: c,
                            order: 0,
                            sp: None,
                            wedge: units,
                        });
                    }
                    ArgKey::Gen(g) => {
                        let f = g.to_field_element();
                        if !f.order_at(x).is_zero() {
                            continue; // sp kills non-units
                        }
                        terms.push(ResidueTerm {
                            coeff: c,
                            order: 1,
                            sp: Some(f),
                            wedge: units,
                        });
                    }
                    ArgKey::Symbol(f) => {
                        if !f.order_at(x).is_zero() {
                            continue;
                        }
                        terms.push(ResidueTerm {
                            coeff: c,
                            order,
                            sp: Some(f.clone()),
                            wedge: units,
                        });
                    }
                }
            }
        }
        Ok(ResidueCombination {
            place: x.clone(),
            terms,
        })
    }

    /// All generators appearing anywhere in the element.
    pub fn generator_support(&self) -> BTreeSet<Generator> {
        let mut out = BTreeSet::new();
        for t in &self.terms {
            for (g, _) in t.arg.coordinates() {
                out.insert(g);
            }
            for w in &t.wedge {
                for (g, _) in w.coordinates() {
                    out.insert(g);
                }
            }
        }
        out
    }

    /// The finite set of places where the element can have boundary: support
    /// of every f_j, 1 - f_j and wedge entry, plus infinity.
    pub fn support_places(&self) -> Vec<Place> {
        let mut polys: BTreeSet<crate::poly::Poly> = BTreeSet::new();
        for t in &self.terms {
            for p in t.arg.factors().keys() {
                polys.insert(p.clone());
            }
            if t.order >= 2 && t.arg.has_integer_exponents() {
                if let Ok(om) = t.arg.one_minus() {
                    for p in om.factors().keys() {
                        polys.insert(p.clone());
                    }
                }
            }
            for w in &t.wedge {
                for p in w.factors().keys() {
                    polys.insert(p.clone());
                }
            }
        }
        let mut out: Vec<Place> = polys
            .into_iter()
            .filter_map(|p| Place::from_poly(&p).ok())
            .collect();
        out.push(Place::Infinity);
        out
    }

    /// Equality oracle for globality: at every support place the boundary
    /// must vanish under the number-field regulator at every embedding.
    pub fn is_global(&self, tol: f64, precision: f64) -> Result<Verdict> {
        if self.degree != 2 {
            return Err(Error::Invalid("is_global expects a degree-2 element".into()));
        }
        let n = self.weight - 1;
        let mut parts = vec![];
        for place in self.support_places() {
            let b = self.boundary(&place)?;
            for (label, value) in b.regulator_vector(n, false, precision)? {
                parts.push(Verdict::residual(
                    format!("boundary at {} / {}", place, label),
                    value.coeff,
                    tol,
                ));
            }
        }
        Ok(Verdict::all("is_global", parts))
    }
}

impl fmt::Display for ChainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let ws: Vec<String> = t.wedge.iter().map(|g| format!("{}", g)).collect();
                let head = match t.order {
                    0 => String::new(),
                    1 => format!("({})", t.arg),
                    k => format!("[{}]_{}", t.arg, k),
                };
                if ws.is_empty() {
                    format!("{}*{}", t.coeff, head)
                } else if head.is_empty() {
                    format!("{}*{}", t.coeff, ws.join("^"))
                } else {
                    format!("{}*{} (x) {}", t.coeff, head, ws.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The canonical {f, 1/f} representative: the one whose first nonzero
/// canonical coordinate is positive, with the inversion-subcomplex sign rule.
pub fn mtilde_representative(f: &FieldElement, order: u32) -> (FieldElement, i64) {
    let coords = f.coordinates();
    let invert = match coords.values().next() {
        Some(e) => e.is_negative(),
        None => false,
    };
    if invert {
        let sign = if order.is_multiple_of(2) { -1 } else { 1 };
        (f.invert(), sign)
    } else {
        (f.clone(), 1)
    }
}

fn generator_order(g: &Generator, x: &Place) -> Q {
    match (g, x) {
        (Generator::Prime(_), Place::Infinity) => Q::zero(),
        (Generator::Prime(_), _) => Q::zero(),
        (Generator::Poly(q), Place::Infinity) => -Q::from_integer(BigInt::from(q.degree() as i64)),
        (Generator::Poly(q), Place::Rational(a)) => {
            if *q == crate::poly::Poly::t_minus(a) {
                Q::from_integer(1.into())
            } else {
                Q::zero()
            }
        }
        (Generator::Poly(q), Place::Algebraic(p)) => {
            if q == p {
                Q::from_integer(1.into())
            } else {
                Q::zero()
            }
        }
    }
}

/// One boundary term over the residue field of a place: coeff * \[sp\]_order
/// (x) wedge of units, all evaluable at every embedding.
#[derive(Clone, Debug)]
pub struct ResidueTerm {
    pub coeff: Q,
    pub order: u32,
    pub sp: Option<FieldElement>,
    pub wedge: Vec<FieldElement>,
}

/// A formal combination over the residue field of one place.
#[derive(Clone, Debug)]
pub struct ResidueCombination {
    pub place: Place,
    pub terms: Vec<ResidueTerm>,
}

impl ResidueCombination {
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn embeddings(&self, precision: f64) -> Result<Vec<Embedding>> {
        match self.place {
            Place::Infinity => Ok(vec![Embedding {
                place: Place::Infinity,
                root: Complex64::new(f64::INFINITY, 0.0),
                precision,
            }]),
            _ => self.place.embeddings(precision),
        }
    }

    /// Number-field regulator per embedding: (n-1)! * sum c_i P_n^mod(y_i)
    /// when include_factor, else the bare sum. Only symbol terms with empty
    /// wedge contribute (the degree-1 shape of the target complex).
    pub fn regulator_vector(
        &self,
        n: u32,
        include_factor: bool,
        precision: f64,
    ) -> Result<Vec<(String, polylog::PolylogValue)>> {
        let mut out = vec![];
        for (i, emb) in self.embeddings(precision)?.into_iter().enumerate() {
            let mut terms: Vec<(f64, Complex64)> = vec![];
            for t in &self.terms {
                if t.order != n || !t.wedge.is_empty() {
                    continue;
                }
                let y = t
                    .sp
                    .as_ref()
                    .expect("order >= 1 residue terms carry sp values")
                    .value_at_embedding(&emb)?;
                terms.push((q_to_f64(&t.coeff), y));
            }
            let v = polylog::nf_regulator_at(n, &terms, include_factor)?;
            let label = match self.place {
                Place::Infinity => "embedding inf".to_string(),
                _ => format!("embedding {} ({:.6}+{:.6}i)", i, emb.root.re, emb.root.im),
            };
            out.push((label, v));
        }
        Ok(out)
    }
}

/// The symbolic representative of a residue-field value: the reduction of an
/// order-0-at-x element modulo the place polynomial (a polynomial of degree
/// below deg x), via the extended Euclidean inverse of the denominator.
/// Rational places reduce to constants; the infinite place to the element's
/// constant.
pub fn residue_value_mod_place(f: &FieldElement, x: &Place) -> Result<crate::poly::Poly> {
    use crate::poly::Poly;
    if !f.order_at(x).is_zero() {
        return Err(Error::Invalid("not a unit at the place".into()));
    }
    let p = match x {
        Place::Infinity => {
            let c = f
                .constant_rational()
                .ok_or(Error::FractionalExponent)?;
            return Ok(Poly::constant(c));
        }
        _ => x.polynomial().expect("finite place"),
    };
    let (num, den) = f.numer_denom()?;
    let num = num.rem(&p);
    let den = den.rem(&p);
    // invert den modulo p by the extended Euclidean algorithm over Q[t]
    let (mut r0, mut r1) = (p.clone(), den);
    let (mut s0, mut s1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1);
        let snew = s0.sub(&q.mul(&s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = snew;
    }
    if r0.is_constant() && !r0.is_zero() {
        let inv = s0.scale(&r0.coeff(0).recip());
        Ok(num.mul(&inv).rem(&p))
    } else {
        Err(Error::Invalid(
            "denominator shares a factor with the place".into(),
        ))
    }
}

/// Chosen Q-basis A_1..A_l of <f_j, g_j> with exact reconstruction matrices
/// f_j = prod A_k^(s_kj), g_j = prod A_k^(t_kj).
#[derive(Clone, Debug)]
pub struct SymbolBasis {
    pub generators: Vec<FieldElement>,
    pub s: Vec<Vec<Q>>,    // l x J
    pub tmat: Vec<Vec<Q>>, // l x J
}

/// Basis extraction for a degree-2 element: pivots are chosen among the f_j
/// first, then among the g_j, by Gaussian elimination on coordinates.
pub fn extract_basis(e: &ChainElement) -> Result<SymbolBasis> {
    if e.degree != 2 {
        return Err(Error::Invalid("extract_basis expects degree 2".into()));
    }
    let pairs: Vec<(&FieldElement, &FieldElement)> = e
        .terms
        .iter()
        .map(|t| {
            if t.wedge.len() != 1 {
                Err(Error::Invalid("expected single-slot wedges".into()))
            } else {
                Ok((&t.arg, &t.wedge[0]))
            }
        })
        .collect::<Result<_>>()?;
    let mut generators: Vec<FieldElement> = vec![];
    let mut gen_coords: Vec<Coords> = vec![];
    for fe in pairs
        .iter()
        .map(|(f, _)| *f)
        .chain(pairs.iter().map(|(_, g)| *g))
    {
        let c = fe.coordinates();
        if c.is_empty() {
            continue; // torsion: contributes nothing to the span
        }
        if !linalg::in_span(&gen_coords, &c) {
            generators.push(fe.clone());
            gen_coords.push(c);
        }
    }
    let l = generators.len();
    let jn = pairs.len();
    let mut s = vec![vec![Q::zero(); jn]; l];
    let mut tmat = vec![vec![Q::zero(); jn]; l];
    for (j, (f, g)) in pairs.iter().enumerate() {
        let sf = linalg::solve_in_span(&gen_coords, &f.coordinates())
            .ok_or_else(|| Error::Invalid("basis does not span f_j".into()))?;
        let sg = linalg::solve_in_span(&gen_coords, &g.coordinates())
            .ok_or_else(|| Error::Invalid("basis does not span g_j".into()))?;
        for k in 0..l {
            s[k][j] = sf[k].clone();
            tmat[k][j] = sg[k].clone();
        }
    }
    Ok(SymbolBasis {
        generators,
        s,
        tmat,
    })
}

/// A weight-2 relation pool member: sum e_i \[h_i\]_2 with a verified symbolic
/// certificate (admission happens in the relations module).
#[derive(Clone, Debug)]
pub struct PoolRelation {
    pub name: String,
    pub terms: Vec<(Q, FieldElement)>,
}

#[derive(Clone, Debug, Default)]
pub struct RelationPool {
    pub relations: Vec<PoolRelation>,
}

/// Cocycle test: d(e) must vanish strictly, or lie in the span of pool
/// relations tensored with wedge words over the element's generators.
pub fn is_cocycle(e: &ChainElement, pool: &RelationPool) -> Result<Verdict> {
    if e.degree != 2 {
        return Err(Error::Invalid("is_cocycle expects degree 2".into()));
    }
    if e.degree == e.weight {
        return Ok(Verdict::pass("is_cocycle").with_trail("top degree: d = 0 vacuously"));
    }
    let d = e.differential()?;
    let dred = d.canonical_reduced()?;
    if dred.is_zero() {
        return Ok(Verdict::pass("is_cocycle").with_trail("strict: d(e) = 0 exactly"));
    }
    // pool-assisted route: residual terms must be order-2 symbols
    let order_ok = dred.0.keys().all(|(order, _, _)| *order == 2);
    if !pool.relations.is_empty() && order_ok {
        let cols = pool_columns(e, &dred, pool)?;
        if linalg::in_span(&cols.1, &dred.0) {
            let mut v = Verdict::pass("is_cocycle");
            v.note("pool-assisted: d(e) lies in the relation span".to_string());
            return Ok(v);
        }
    }
    let mut v = Verdict::fail("is_cocycle");
    v.note(format!("residual d(e) = {}", dred.describe(8)));
    Ok(v)
}

type PoolColumns = (Vec<String>, Vec<BTreeMap<CanonKey, Q>>);

/// Columns R (x) omega for every pool relation R and 2-letter wedge word
/// omega over the generators supporting e and d(e).
fn pool_columns(
    e: &ChainElement,
    dred: &CanonicalChain,
    pool: &RelationPool,
) -> Result<PoolColumns> {
    let mut gens = e.generator_support();
    for (_, _, word) in dred.0.keys() {
        for g in word {
            gens.insert(g.clone());
        }
    }
    let gens: Vec<Generator> = gens.into_iter().collect();
    let mut names = vec![];
    let mut cols = vec![];
    for rel in &pool.relations {
        for i in 0..gens.len() {
            for j in (i + 1)..gens.len() {
                let word = vec![gens[i].clone(), gens[j].clone()];
                let mut col = CanonicalChain::default();
                for (c, h) in &rel.terms {
                    let (rep, sign) = match e.variant {
                        Variant::MTilde => mtilde_representative(h, 2),
                        Variant::M => (h.clone(), 1),
                    };
                    if rep.is_torsion_unit() {
                        continue;
                    }
                    col.add(
                        (2, ArgKey::Symbol(rep), word.clone()),
                        c * Q::from_integer(sign.into()),
                    );
                }
                if !col.is_zero() {
                    names.push(format!("{} (x) {}^{}", rel.name, gens[i], gens[j]));
                    cols.push(col.0);
                }
            }
        }
    }
    Ok((names, cols))
}

/// Exact kernel of c -> residual-of-d over the strict (pool-extended) model.
/// Returns one ChainElement per kernel basis vector; each passes is_cocycle.
pub fn solve_cocycles(
    weight: u32,
    variant: Variant,
    term_pool: &[SymbolTerm],
    pool: &RelationPool,
) -> Result<Vec<ChainElement>> {
    let singles: Vec<ChainElement> = term_pool
        .iter()
        .map(|t| ChainElement::new(weight, 2, variant, vec![t.clone()]))
        .collect::<Result<_>>()?;
    let d_cols: Vec<BTreeMap<CanonKey, Q>> = singles
        .iter()
        .map(|e| Ok(e.differential()?.canonical_reduced()?.0))
        .collect::<Result<_>>()?;
    let probe = ChainElement::new(weight, 2, variant, term_pool.to_vec())?;
    let mut all_cols = d_cols.clone();
    if weight == 4 && !pool.relations.is_empty() {
        let mut dsum = CanonicalChain::default();
        for c in &d_cols {
            for (k, v) in c {
                dsum.add(k.clone(), v.clone());
            }
        }
        let (_, pcols) = pool_columns(&probe, &dsum, pool)?;
        all_cols.extend(pcols);
    }
    let kernel = linalg::kernel_basis(&all_cols);
    let n_terms = term_pool.len();
    // project kernel vectors onto the term coordinates and re-reduce
    let mut coords_cols: Vec<BTreeMap<usize, Q>> = vec![];
    let mut picked: Vec<Vec<Q>> = vec![];
    for v in kernel {
        let cvec: BTreeMap<usize, Q> = (0..n_terms)
            .filter(|i| !v[*i].is_zero())
            .map(|i| (i, v[i].clone()))
            .collect();
        if cvec.is_empty() {
            continue; // pure pool combination
        }
        if !linalg::in_span(&coords_cols, &cvec) {
            coords_cols.push(cvec);
            picked.push(v[..n_terms].to_vec());
        }
    }
    picked
        .into_iter()
        .map(|c| {
            let terms: Vec<SymbolTerm> = c
                .iter()
                .zip(term_pool)
                .filter(|(ci, _)| !ci.is_zero())
                .map(|(ci, t)| SymbolTerm::new(ci.clone(), t.order, t.arg.clone(), t.wedge.clone()))
                .collect();
            ChainElement::new(weight, 2, variant, terms)
        })
        .collect()
}

// ---- the exact identity suite for weight-4 cocycles ----

type Tensor2 = BTreeMap<(Generator, Generator), Q>;
type Tensor3 = BTreeMap<(Generator, Generator, Generator), Q>;

fn add_tensor2(acc: &mut Tensor2, a: &Coords, b: &Coords, s: &Q) {
    if s.is_zero() {
        return;
    }
    for (ga, ea) in a {
        for (gb, eb) in b {
            let key = (ga.clone(), gb.clone());
            let entry = acc.entry(key.clone()).or_insert_with(Q::zero);
            *entry += ea * eb * s;
            if entry.is_zero() {
                acc.remove(&key);
            }
        }
    }
}

fn add_tensor3(acc: &mut Tensor3, a: &Coords, b: &Coords, c: &Coords, s: &Q) {
    if s.is_zero() {
        return;
    }
    for (ga, ea) in a {
        for (gb, eb) in b {
            for (gc, ec) in c {
                let key = (ga.clone(), gb.clone(), gc.clone());
                let entry = acc.entry(key.clone()).or_insert_with(Q::zero);
                *entry += ea * eb * ec * s;
                if entry.is_zero() {
                    acc.remove(&key);
                }
            }
        }
    }
}

/// Exact verification of the identities a weight-4 degree-2 cocycle must
/// satisfy: strict vanishing of d, the antisymmetric and mixed tensor
/// identities in exact coordinates for all basis indices, the symbol-class
/// symmetry (grouped by M~-class, with a numeric fallback), and the
/// weight-reduced vanishing in the strict model.
pub fn identity_suite(e: &ChainElement) -> Result<Verdict> {
    if e.weight != 4 || e.degree != 2 {
        return Err(Error::Invalid(
            "identity_suite expects a weight-4 degree-2 element".into(),
        ));
    }
    let e = match e.variant {
        Variant::MTilde => e.normalize()?,
        Variant::M => e.clone(),
    };
    let basis = extract_basis(&e)?;
    let l = basis.generators.len();
    let mut parts: Vec<Verdict> = vec![];

    // coefficient/element views
    let cj: Vec<Q> = e.terms.iter().map(|t| t.coeff.clone()).collect();
    let fj: Vec<&FieldElement> = e.terms.iter().map(|t| &t.arg).collect();
    let gj: Vec<&FieldElement> = e.terms.iter().map(|t| &t.wedge[0]).collect();
    let jn = e.terms.len();
    let one_minus: Vec<FieldElement> = fj
        .iter()
        .map(|f| f.one_minus())
        .collect::<Result<_>>()?;

    // strict d-vanishing: sum c_j [f_j]_2 (x) f_j ^ g_j = 0
    {
        let d = e.differential()?.canonical_reduced()?;
        let mut v = if d.is_zero() {
            Verdict::pass("d(e) strict: sum c_j [f_j]_2 (x) f_j^g_j = 0")
        } else {
            Verdict::fail("d(e) strict: sum c_j [f_j]_2 (x) f_j^g_j = 0")
        };
        if !d.is_zero() {
            v.note(format!("residual {}", d.describe(6)));
        }
        parts.push(v);
    }

    // for all k: sum c_j s_kj (1-f_j) (x) (f_j (x) g_j - g_j (x) f_j) = 0
    for k in 0..l {
        let mut t3 = Tensor3::new();
        for j in 0..jn {
            let s = &cj[j] * &basis.s[k][j];
            let oc = one_minus[j].coordinates();
            let fc = fj[j].coordinates();
            let gc = gj[j].coordinates();
            add_tensor3(&mut t3, &oc, &fc, &gc, &s);
            add_tensor3(&mut t3, &oc, &gc, &fc, &(-s));
        }
        let name = format!("one-minus antisymmetric tensor k={}", k);
        parts.push(if t3.is_empty() {
            Verdict::pass(name)
        } else {
            Verdict::fail(name).with_trail(format!("{} nonzero tensor entries", t3.len()))
        });
    }

    // for all k, l: sum c_j s_kj s_lj (1-f_j) (x) g_j
    //              = sum c_j s_kj t_lj (1-f_j) (x) f_j
    for k in 0..l {
        for m in 0..l {
            let mut t2 = Tensor2::new();
            for j in 0..jn {
                let oc = one_minus[j].coordinates();
                add_tensor2(
                    &mut t2,
                    &oc,
                    &gj[j].coordinates(),
                    &(&cj[j] * &basis.s[k][j] * &basis.s[m][j]),
                );
                add_tensor2(
                    &mut t2,
                    &oc,
                    &fj[j].coordinates(),
                    &(-(&cj[j] * &basis.s[k][j] * &basis.tmat[m][j])),
                );
            }
            let name = format!("mixed tensor k={},l={}", k, m);
            parts.push(if t2.is_empty() {
                Verdict::pass(name)
            } else {
                Verdict::fail(name).with_trail(format!("{} nonzero tensor entries", t2.len()))
            });
        }
    }

    // for all k, l: sum c_j (s_kj t_lj - s_lj t_kj) [f_j]_2 = 0, grouped
    // by M~-class; numeric fallback through P_2^mod sampling.
    for k in 0..l {
        for m in (k + 1)..l {
            let mut by_class: BTreeMap<FieldElement, Q> = BTreeMap::new();
            let mut weights: Vec<Q> = vec![];
            for j in 0..jn {
                let w = &cj[j]
                    * (&basis.s[k][j] * &basis.tmat[m][j] - &basis.s[m][j] * &basis.tmat[k][j]);
                weights.push(w.clone());
                if w.is_zero() {
                    continue;
                }
                let (rep, sign) = mtilde_representative(fj[j], 2);
                let entry = by_class.entry(rep).or_insert_with(Q::zero);
                *entry += w * Q::from_integer(sign.into());
            }
            by_class.retain(|_, c| !c.is_zero());
            let name = format!("symbol-class symmetry k={},l={}", k, m);
            if by_class.is_empty() {
                parts.push(Verdict::pass(name).with_trail("formal equality in M~ classes"));
            } else {
                // numeric fallback: sample sum w_j P_2^mod(f_j(z)) at 50 points
                let mut worst: f64 = 0.0;
                let mut samples = 0;
                let mut tries = 0;
                let mut z = Complex64::new(0.31, 0.47);
                let rot = Complex64::from_polar(1.13, 0.73);
                while samples < 50 && tries < 2500 {
                    tries += 1;
                    z = z * rot + Complex64::new(0.05, -0.02);
                    if z.norm() > 30.0 {
                        z = Complex64::new(0.17, -0.39);
                    }
                    let mut acc = Complex64::new(0.0, 0.0);
                    let mut ok = true;
                    for j in 0..jn {
                        if weights[j].is_zero() {
                            continue;
                        }
                        let Ok(fz) = fj[j].evaluate(z) else {
                            ok = false;
                            break;
                        };
                        match polylog::p_mod_value(2, polylog::SpherePoint::Finite(fz)) {
                            Ok(v) => acc += q_to_f64(&weights[j]) * v,
                            Err(_) => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if !ok {
                        continue;
                    }
                    worst = worst.max(acc.norm());
                    samples += 1;
                }
                let pass = worst < 1e-8;
                let mut v = if pass {
                    Verdict::pass(name)
                } else {
                    Verdict::fail(name)
                };
                v.residual = Some(worst);
                v.tolerance = Some(1e-8);
                v.note("formal equality failed; numeric P_2^mod fallback applied");
                parts.push(v);
            }
        }
    }

    // weight-reduced vanishing, strict shadow: for all k the element
    // sum_j c_j s_kj [f_j]_2 (x) g_j lies in the span of [phi]_2 (x) phi
    // over the M~-classes phi (i.e. vanishes in H^2 of the weight-3 complex).
    for k in 0..l {
        let mut by_class: BTreeMap<FieldElement, Coords> = BTreeMap::new();
        for j in 0..jn {
            let w = &cj[j] * &basis.s[k][j];
            if w.is_zero() {
                continue;
            }
            let (rep, sign) = mtilde_representative(fj[j], 2);
            let entry = by_class.entry(rep).or_default();
            crate::field::coords_add_scaled(
                entry,
                &gj[j].coordinates(),
                &(w * Q::from_integer(sign.into())),
            );
        }
        let mut ok = true;
        let mut detail = String::new();
        for (rep, vec) in &by_class {
            let mut v = vec.clone();
            v.retain(|_, c| !c.is_zero());
            if v.is_empty() {
                continue;
            }
            let rc = rep.coordinates();
            // v must be a rational multiple of coords(rep)
            let Some((g0, e0)) = rc.iter().next() else {
                ok = false;
                continue;
            };
            let lambda = v.get(g0).cloned().unwrap_or_else(Q::zero) / e0.clone();
            let mut rhs = Coords::new();
            crate::field::coords_add_scaled(&mut rhs, &rc, &lambda);
            if rhs != v {
                ok = false;
                detail = format!("class {} sum is not proportional to the class", rep);
            }
        }
        let name = format!("weight-reduced vanishing k={}", k);
        parts.push(if ok {
            Verdict::pass(name)
        } else {
            Verdict::fail(name).with_trail(detail)
        });
    }

    Ok(Verdict::all("identity_suite", parts))
}
