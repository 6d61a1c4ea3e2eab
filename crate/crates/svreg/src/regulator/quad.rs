//! Quadrature: adaptive Gauss-Kronrod in one dimension, spectrally accurate
//! trapezoid sums on circles, and polar two-chart integration over P^1 with
//! exact arc exclusion around singular discs.

use crate::error::{Error, Result};
use num_complex::Complex64;

// G7-K15 nodes and weights on [-1, 1] (positive half; symmetric).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// One G7-K15 panel; returns (kronrod value, error estimate).
pub fn gk15(f: &mut dyn FnMut(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kron = Complex64::new(0.0, 0.0);
    let mut gauss = Complex64::new(0.0, 0.0);
    for (i, &x) in XGK.iter().enumerate() {
        let w = WGK[i];
        if x == 0.0 {
            let v = f(c);
            kron += w * v;
            gauss += WG[3] * v;
        } else {
            let v1 = f(c - h * x);
            let v2 = f(c + h * x);
            kron += w * (v1 + v2);
            if i % 2 == 1 {
                gauss += WG[i / 2] * (v1 + v2);
            }
        }
    }
    kron *= h;
    gauss *= h;
    (kron, (kron - gauss).norm())
}

/// Adaptive bisection on [a, b] to absolute tolerance.
pub fn adaptive(
    f: &mut dyn FnMut(f64) -> Complex64,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: u32,
) -> Result<Complex64> {
    fn rec(
        f: &mut dyn FnMut(f64) -> Complex64,
        a: f64,
        b: f64,
        tol: f64,
        depth: u32,
        budget: &mut u64,
    ) -> Result<Complex64> {
        if *budget == 0 {
            return Err(Error::QuadratureFailure("panel budget exhausted".into()));
        }
        *budget -= 1;
        let (v, e) = gk15(f, a, b);
        if e <= tol || depth == 0 {
            return Ok(v);
        }
        let m = 0.5 * (a + b);
        let left = rec(f, a, m, 0.5 * tol, depth - 1, budget)?;
        let right = rec(f, m, b, 0.5 * tol, depth - 1, budget)?;
        Ok(left + right)
    }
    let mut budget = 200_000u64;
    rec(f, a, b, tol, max_depth, &mut budget)
}

/// Trapezoid sum around the circle center + r e^(i theta), doubling nodes
/// until successive values differ by less than `tol`. The integrand receives
/// (z, dz/dtheta).
pub fn circle_integral(
    f: &mut dyn FnMut(Complex64, Complex64) -> Result<Complex64>,
    center: Complex64,
    r: f64,
    start_nodes: usize,
    tol: f64,
) -> Result<Complex64> {
    let mut n = start_nodes.max(8);
    let mut prev: Option<Complex64> = None;
    loop {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..n {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
            let e = Complex64::from_polar(1.0, theta);
            let z = center + r * e;
            let dz = Complex64::new(0.0, 1.0) * r * e;
            acc += f(z, dz)?;
        }
        acc *= 2.0 * std::f64::consts::PI / (n as f64);
        if let Some(p) = prev {
            if (acc - p).norm() < tol {
                return Ok(acc);
            }
        }
        prev = Some(acc);
        n *= 2;
        if n > 1 << 17 {
            return Err(Error::QuadratureFailure(format!(
                "circle integral did not settle below {tol:.1e} by {n} nodes"
            )));
        }
    }
}

/// Blocked angular intervals on the circle |z| = r from the exclusion discs.
fn blocked_arcs(r: f64, exclusions: &[(Complex64, f64)]) -> Vec<(f64, f64)> {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut arcs = vec![];
    for (p, eps) in exclusions {
        let d = p.norm();
        if d == 0.0 {
            continue; // radial exclusion handled by the r-range
        }
        let cosv = (r * r + d * d - eps * eps) / (2.0 * r * d);
        if cosv >= 1.0 {
            continue;
        }
        if cosv <= -1.0 {
            return vec![(0.0, two_pi)];
        }
        let phi = p.arg();
        let delta = cosv.acos();
        let (lo, hi) = (phi - delta, phi + delta);
        // normalize into [0, 2pi), possibly splitting
        let lo_m = lo.rem_euclid(two_pi);
        let hi_m = hi.rem_euclid(two_pi);
        if lo_m <= hi_m {
            arcs.push((lo_m, hi_m));
        } else {
            arcs.push((lo_m, two_pi));
            arcs.push((0.0, hi_m));
        }
    }
    arcs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    // merge overlaps
    let mut merged: Vec<(f64, f64)> = vec![];
    for (lo, hi) in arcs {
        if let Some(last) = merged.last_mut() {
            if lo <= last.1 {
                last.1 = last.1.max(hi);
                continue;
            }
        }
        merged.push((lo, hi));
    }
    merged
}

/// Integral over the unit disc of one chart, in polar coordinates, skipping
/// the exclusion discs exactly (arc complement per radius). The density is
/// the 2-form coefficient against dx ^ dy.
pub fn disc_integral(
    density: &mut dyn FnMut(Complex64) -> Complex64,
    exclusions: &[(Complex64, f64)],
    r_min: f64,
    tol: f64,
) -> Result<Complex64> {
    let two_pi = 2.0 * std::f64::consts::PI;
    // radial breakpoints at disc tangencies keep the slices smooth
    let mut breaks = vec![r_min, 1.0];
    for (p, eps) in exclusions {
        for r in [p.norm() - eps, p.norm() + eps] {
            if r > r_min && r < 1.0 {
                breaks.push(r);
            }
        }
    }
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    let mut total = Complex64::new(0.0, 0.0);
    for win in breaks.windows(2) {
        let (ra, rb) = (win[0], win[1]);
        if rb - ra < 1e-14 {
            continue;
        }
        let mut radial = |r: f64| -> Complex64 {
            if r <= 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let blocked = blocked_arcs(r, exclusions);
            let mut arcs: Vec<(f64, f64)> = vec![];
            let mut cur = 0.0;
            for (lo, hi) in &blocked {
                if *lo > cur {
                    arcs.push((cur, *lo));
                }
                cur = cur.max(*hi);
            }
            if cur < two_pi {
                arcs.push((cur, two_pi));
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for (lo, hi) in arcs {
                if hi - lo < 1e-13 {
                    continue;
                }
                let mut f = |theta: f64| density(Complex64::from_polar(r, theta));
                match adaptive(&mut f, lo, hi, tol * 0.1, 12) {
                    Ok(v) => acc += v,
                    Err(_) => {
                        // fall back to a fixed fine grid on this arc
                        let n = 512;
                        let h = (hi - lo) / n as f64;
                        let mut s = Complex64::new(0.0, 0.0);
                        for k in 0..n {
                            s += density(Complex64::from_polar(r, lo + (k as f64 + 0.5) * h));
                        }
                        acc += s * h;
                    }
                }
            }
            acc * r
        };
        total += adaptive(&mut radial, ra, rb, tol, 10)?;
    }
    Ok(total)
}

/// Fit value(r) = A + B r log r + C r (plus D r log^2 r when four or more
/// radii are supplied) and return A.
#[allow(clippy::needless_range_loop)]
pub fn radius_extrapolate(radii: &[f64], values: &[Complex64]) -> Result<Complex64> {
    if radii.len() != values.len() || radii.len() < 3 {
        return Err(Error::QuadratureFailure(
            "need at least three radii for extrapolation".into(),
        ));
    }
    let n = radii.len();
    let k = if n >= 4 { 4 } else { 3 };
    let basis = |r: f64| [1.0, r * r.ln(), r, r * r.ln() * r.ln()];
    let mut ata = [[0.0f64; 4]; 4];
    let mut atb = [Complex64::new(0.0, 0.0); 4];
    for i in 0..n {
        let ph = basis(radii[i]);
        for a in 0..k {
            for b in 0..k {
                ata[a][b] += ph[a] * ph[b];
            }
            atb[a] += ph[a] * values[i];
        }
    }
    let mut m = ata;
    let mut rhs = atb;
    for col in 0..k {
        let piv = (col..k)
            .max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())
            .unwrap();
        if m[piv][col].abs() < 1e-300 {
            return Err(Error::QuadratureFailure("singular extrapolation system".into()));
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        for i in 0..k {
            if i != col {
                let f = m[i][col] / m[col][col];
                for j in col..k {
                    m[i][j] -= f * m[col][j];
                }
                rhs[i] -= f * rhs[col];
            }
        }
    }
    Ok(rhs[0] / m[0][0])
}
