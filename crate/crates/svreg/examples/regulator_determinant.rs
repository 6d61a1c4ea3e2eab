//! The regulator determinant det(R) / ((2 pi i)^(n r) det(T)).
//!
//!     cargo run --example regulator_determinant

use num_complex::Complex64;
use svreg::regulator::regulator_determinant;

fn main() -> svreg::Result<()> {
    let i = Complex64::new(0.0, 1.0);
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);

    // 1x1: R = (2 pi i)^n i q against T = (i) recovers q
    let n = 2;
    let q = 0.75;
    let (val, resid) = regulator_determinant(&[vec![two_pi_i.powu(n) * i * q]], &[vec![i]], n)?;
    println!("1x1 case: c = {val:.15} (imaginary residual {resid:.1e})");

    // 2x2 diagonal with T = identity
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let r_mat = vec![
        vec![Complex64::new(0.0, 2.0), zero],
        vec![zero, Complex64::new(0.0, -3.0)],
    ];
    let t_mat = vec![vec![one, zero], vec![zero, one]];
    let (val, _) = regulator_determinant(&r_mat, &t_mat, 1)?;
    println!("2x2 diagonal: c = {val:.15}");

    // non-imaginary entries are rejected
    let bad = regulator_determinant(&[vec![Complex64::new(1.0, 1.0)]], &[vec![one]], 1);
    println!("non-imaginary R rejected: {}", bad.is_err());
    Ok(())
}
