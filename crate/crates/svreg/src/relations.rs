//! Functional-equation relations of the di- and trilogarithm: the five-term
//! relation, its inversion/one-minus/duplication corollaries, and the
//! 22-term weight-3 relation, each with a symbolic certificate (the
//! constancy hypothesis in Sym^(n-2) F* (x) wedge^2 F*) and a numeric check
//! through P_n^mod.

use crate::error::{Error, Result};
use crate::field::{FieldElement, Generator};
use crate::poly::{q_int, q_to_f64, Q};
use crate::polylog::{p_mod_value, SpherePoint};
use crate::symbols::{PoolRelation, RelationPool};
use crate::verdict::Verdict;
use num_complex::Complex64;
use num_traits::Zero;
use std::collections::BTreeMap;

/// A formal Q-combination of weight-n symbols with named provenance.
#[derive(Clone, Debug)]
pub struct FormalRelation {
    pub weight: u32,
    pub terms: Vec<(Q, FieldElement)>,
    pub provenance: String,
}

fn nondegenerate(x: &FieldElement, what: &str) -> Result<()> {
    if x.is_one() {
        return Err(Error::Invalid(format!("{what} is identically 1")));
    }
    Ok(())
}

/// {x}_2 + {y}_2 + {(1-x)/(1-xy)}_2 + {1-xy}_2 + {(1-y)/(1-xy)}_2.
pub fn five_term(x: &FieldElement, y: &FieldElement) -> Result<FormalRelation> {
    nondegenerate(x, "x")?;
    nondegenerate(y, "y")?;
    let xy = x.mul(y);
    nondegenerate(&xy, "xy")?;
    let one_m_x = x.one_minus()?;
    let one_m_y = y.one_minus()?;
    let one_m_xy = xy.one_minus()?;
    if one_m_xy.is_torsion_unit() && !one_m_xy.is_negative_unit() {
        return Err(Error::Invalid("1 - xy degenerates".into()));
    }
    let h3 = one_m_x.div(&one_m_xy);
    let h5 = one_m_y.div(&one_m_xy);
    Ok(FormalRelation {
        weight: 2,
        terms: vec![
            (q_int(1), x.clone()),
            (q_int(1), y.clone()),
            (q_int(1), h3),
            (q_int(1), one_m_xy),
            (q_int(1), h5),
        ],
        provenance: format!("five_term(x={}, y={})", x, y),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuxKind {
    Inversion,
    OneMinus,
    Duplication,
}

/// {x}_2 + {1/x}_2, {x}_2 + {1-x}_2, or {x^2}_2 - 2{x}_2 - 2{-x}_2.
pub fn aux_relation(kind: AuxKind, x: &FieldElement) -> Result<FormalRelation> {
    nondegenerate(x, "x")?;
    if x.is_torsion_unit() {
        return Err(Error::Invalid("x must not be a torsion unit".into()));
    }
    let (terms, name) = match kind {
        AuxKind::Inversion => (
            vec![(q_int(1), x.clone()), (q_int(1), x.invert())],
            "inversion",
        ),
        AuxKind::OneMinus => (
            vec![(q_int(1), x.clone()), (q_int(1), x.one_minus()?)],
            "one_minus",
        ),
        AuxKind::Duplication => (
            vec![
                (q_int(1), x.pow(&q_int(2))),
                (q_int(-2), x.clone()),
                (q_int(-2), x.negate()),
            ],
            "duplication",
        ),
    };
    Ok(FormalRelation {
        weight: 2,
        terms,
        provenance: format!("{}(x={})", name, x),
    })
}

/// The 22-term weight-3 relation with beta_i = 1 - alpha_i (1 - alpha_(i-1)),
/// indices mod 3, closed by -3{1}_3 + {-a1 a2 a3}_3.
#[allow(clippy::needless_range_loop)]
pub fn goncharov_22(a: [&FieldElement; 3]) -> Result<FormalRelation> {
    let nonconstant = a.iter().filter(|x| !x.is_constant()).count();
    if nonconstant > 1 {
        return Err(Error::Invalid(
            "at most one parameter may be a function of t".into(),
        ));
    }
    let alpha = |i: usize| a[(i + 2) % 3]; // alpha_(i-1) for 0-based i
    let mut beta = vec![];
    for i in 0..3 {
        let prev = alpha(i);
        let b = a[i].mul(&prev.one_minus()?).one_minus()?;
        if b.is_torsion_unit() && !b.is_negative_unit() {
            // b == 1 is fine as a symbol; b == 0 cannot arise from one_minus
        }
        beta.push(b);
    }
    let mut terms: Vec<(Q, FieldElement)> = vec![];
    for i in 0..3 {
        let im1 = (i + 2) % 3;
        let ip1 = (i + 1) % 3;
        let ai = a[i];
        let aim1 = a[im1];
        let bi = &beta[i];
        let bim1 = &beta[im1];
        let bip1 = &beta[ip1];
        terms.push((q_int(1), ai.clone()));
        terms.push((q_int(1), bi.clone()));
        terms.push((q_int(-1), bi.div(aim1)));
        terms.push((q_int(1), bi.div(&aim1.mul(ai))));
        terms.push((q_int(1), ai.mul(bim1).div(bip1)));
        terms.push((q_int(1), bi.div(&ai.mul(bim1)).negate()));
        terms.push((q_int(-1), ai.mul(aim1).mul(bip1).div(bi)));
    }
    terms.push((q_int(-3), FieldElement::one()));
    terms.push((
        q_int(1),
        a[0].mul(a[1]).mul(a[2]).negate(),
    ));
    Ok(FormalRelation {
        weight: 3,
        terms,
        provenance: format!("goncharov22(a1={}, a2={}, a3={})", a[0], a[1], a[2]),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Symbolic,
    Numeric,
    Both,
}

/// The constancy-hypothesis certificate: sum c_i h_i^(x)(n-2) (x)
/// (h_i ^ (1-h_i)) = 0 exactly in Sym^(n-2) F* (x) wedge^2 F*.
/// Torsion arguments contribute nothing (their class is zero).
pub fn symbolic_certificate(terms: &[(Q, FieldElement)], n: u32) -> Result<bool> {
    let k = (n - 2) as usize;
    // key: (sorted multiset of generators, generator pair)
    type Key = (Vec<Generator>, (Generator, Generator));
    let mut acc: BTreeMap<Key, Q> = BTreeMap::new();
    for (c, h) in terms {
        let v = h.coordinates();
        if v.is_empty() {
            continue;
        }
        let w = h.one_minus()?.coordinates();
        // wedge part over pairs
        let vk: Vec<(&Generator, &Q)> = v.iter().collect();
        let mut pair_vals: Vec<((Generator, Generator), Q)> = vec![];
        let mut gens: Vec<&Generator> = v.keys().collect();
        for g in w.keys() {
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
        gens.sort();
        for i in 0..gens.len() {
            for j in (i + 1)..gens.len() {
                let (a, b) = (gens[i], gens[j]);
                let va = v.get(a).cloned().unwrap_or_else(Q::zero);
                let vb = v.get(b).cloned().unwrap_or_else(Q::zero);
                let wa = w.get(a).cloned().unwrap_or_else(Q::zero);
                let wb = w.get(b).cloned().unwrap_or_else(Q::zero);
                let val = &va * &wb - &vb * &wa;
                if !val.is_zero() {
                    pair_vals.push(((a.clone(), b.clone()), val));
                }
            }
        }
        if pair_vals.is_empty() {
            continue;
        }
        // symmetric part: all multisets of size k from the support of v
        let mut multisets: Vec<(Vec<Generator>, Q)> = vec![(vec![], Q::from_integer(1.into()))];
        for _ in 0..k {
            let mut next = vec![];
            for (ms, val) in &multisets {
                for (g, e) in &vk {
                    if let Some(last) = ms.last() {
                        if *g < last {
                            continue; // keep multisets sorted to avoid duplicates
                        }
                    }
                    let mut ms2 = ms.clone();
                    ms2.push((*g).clone());
                    next.push((ms2, val.clone() * (*e).clone()));
                }
            }
            multisets = next;
        }
        for (ms, sval) in &multisets {
            for (pair, pval) in &pair_vals {
                let key = (ms.clone(), pair.clone());
                let entry = acc.entry(key.clone()).or_insert_with(Q::zero);
                *entry += c * sval * pval;
                if entry.is_zero() {
                    acc.remove(&key);
                }
            }
        }
    }
    Ok(acc.is_empty())
}

/// Numeric residual |sum c_i P_n^mod(h_i(z))| at one sample point.
pub fn numeric_residual_at(terms: &[(Q, FieldElement)], n: u32, z: Complex64) -> Result<f64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (c, h) in terms {
        let hz = if h.is_constant() {
            h.evaluate(Complex64::new(0.0, 0.0))?
        } else {
            h.evaluate(z)?
        };
        acc += q_to_f64(c) * p_mod_value(n, SpherePoint::Finite(hz))?;
    }
    Ok(acc.norm())
}

/// Verify a relation symbolically, numerically, or both.
pub fn verify_relation(r: &FormalRelation, n: u32, mode: VerifyMode, tol: f64) -> Result<Verdict> {
    if n != r.weight {
        return Err(Error::Invalid(format!(
            "weight mismatch: relation has weight {}, asked for {}",
            r.weight, n
        )));
    }
    let mut parts = vec![];
    if mode != VerifyMode::Numeric {
        let ok = symbolic_certificate(&r.terms, n)?;
        parts.push(if ok {
            Verdict::pass("symbolic certificate")
        } else {
            Verdict::fail("symbolic certificate")
        });
    }
    if mode != VerifyMode::Symbolic {
        let mut worst: f64 = 0.0;
        let all_const = r.terms.iter().all(|(_, h)| h.is_constant());
        let samples = if all_const { 1 } else { 25 };
        let mut z = Complex64::new(0.43, 0.29);
        let rot = Complex64::from_polar(1.07, 0.83);
        let mut taken = 0;
        let mut tries = 0;
        while taken < samples && tries < 50 * samples {
            tries += 1;
            z = z * rot + Complex64::new(0.011, 0.007);
            if z.norm() > 20.0 {
                z = Complex64::new(-0.37, 0.21);
            }
            match numeric_residual_at(&r.terms, n, z) {
                Ok(v) if v.is_finite() => {
                    worst = worst.max(v);
                    taken += 1;
                }
                _ => continue,
            }
        }
        let mut v = Verdict::residual("numeric residual", worst, tol);
        v.note(format!("{} sample points", taken));
        parts.push(v);
    }
    Ok(Verdict::all(format!("verify {}", r.provenance), parts))
}

/// Pool admission: exactly the relations passing the symbolic certificate
/// are accepted.
pub fn admit_to_pool(pool: &mut RelationPool, r: &FormalRelation) -> Result<bool> {
    if r.weight != 2 {
        return Err(Error::Invalid("pools hold weight-2 relations".into()));
    }
    if !symbolic_certificate(&r.terms, 2)? {
        return Ok(false);
    }
    pool.relations.push(PoolRelation {
        name: r.provenance.clone(),
        terms: r.terms.clone(),
    });
    Ok(true)
}

/// |D(x) + D(y) + D((1-x)/(1-xy)) + D(1-xy) + D((1-y)/(1-xy))| at numeric
/// arguments; the five-term sum through the Bloch-Wigner function.
pub fn five_term_dsum(x: Complex64, y: Complex64) -> Result<f64> {
    let one = Complex64::new(1.0, 0.0);
    let xy = x * y;
    if (one - xy).norm() < 1e-12 {
        return Err(Error::Singular("1 - xy".into()));
    }
    let args = [x, y, (one - x) / (one - xy), one - xy, (one - y) / (one - xy)];
    let mut acc = Complex64::new(0.0, 0.0);
    for a in args {
        acc += p_mod_value(2, SpherePoint::Finite(a))?;
    }
    Ok(acc.norm())
}

/// Numeric 22-term residual |sum c_i P_3^mod(h_i)| at rational parameters.
pub fn goncharov_psum(a1: f64, a2: f64, a3: f64) -> Result<f64> {
    let a = [
        Complex64::new(a1, 0.0),
        Complex64::new(a2, 0.0),
        Complex64::new(a3, 0.0),
    ];
    let one = Complex64::new(1.0, 0.0);
    let beta = |i: usize| one - a[i] * (one - a[(i + 2) % 3]);
    let b = [beta(0), beta(1), beta(2)];
    for x in b.iter() {
        if x.norm() < 1e-12 {
            return Err(Error::Singular("beta_i = 0".into()));
        }
    }
    let mut terms: Vec<(f64, Complex64)> = vec![];
    #[allow(clippy::needless_range_loop)]
    for i in 0..3 {
        let im1 = (i + 2) % 3;
        let ip1 = (i + 1) % 3;
        terms.push((1.0, a[i]));
        terms.push((1.0, b[i]));
        terms.push((-1.0, b[i] / a[im1]));
        terms.push((1.0, b[i] / (a[im1] * a[i])));
        terms.push((1.0, a[i] * b[im1] / b[ip1]));
        terms.push((1.0, -b[i] / (a[i] * b[im1])));
        terms.push((-1.0, a[i] * a[im1] * b[ip1] / b[i]));
    }
    terms.push((-3.0, one));
    terms.push((1.0, -a[0] * a[1] * a[2]));
    let mut acc = Complex64::new(0.0, 0.0);
    for (c, h) in terms {
        acc += c * p_mod_value(3, SpherePoint::Finite(h))?;
    }
    Ok(acc.norm())
}
