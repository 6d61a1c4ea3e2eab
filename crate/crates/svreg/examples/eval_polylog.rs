//! Single-valued polylogarithms: special values, twists, and the inversion
//! functional equation.
//!
//!     cargo run --example eval_polylog

use num_complex::Complex64;
use svreg::polylog::{li, p_mod, p_zag, project, SpherePoint};

fn main() -> svreg::Result<()> {
    // classical values
    println!("Li_2(1/2)   = {:.15}", li(2, Complex64::new(0.5, 0.0))?.re);
    println!("Li_2(1)     = {:.15}  (zeta(2))", li(2, Complex64::new(1.0, 0.0))?.re);

    // P_2^mod(i) is Catalan's constant, living in R(1)
    let v = p_mod(2, SpherePoint::finite(0.0, 1.0))?;
    println!("P_2^mod(i)  = {:.15} * i^{}   (Catalan)", v.coeff, v.twist);

    // P_3^mod(1) = zeta(3); even weights vanish at 1
    let v = p_mod(3, SpherePoint::finite(1.0, 0.0))?;
    println!("P_3^mod(1)  = {:.15} * i^{}   (zeta(3))", v.coeff, v.twist);
    let v = p_mod(4, SpherePoint::finite(1.0, 0.0))?;
    println!("P_4^mod(1)  = {:.15} * i^{}", v.coeff, v.twist);

    // continuity on the whole sphere
    println!("P_3^mod(0)  = {}", p_mod(3, SpherePoint::finite(0.0, 0.0))?.coeff);
    println!("P_3^mod(oo) = {}", p_mod(3, SpherePoint::Infinity)?.coeff);

    // the inversion functional equation P_n(z) + (-1)^n P_n(1/z) = 0
    let z = Complex64::new(2.0, 1.0);
    for n in 2..=5 {
        let a = p_mod(n, SpherePoint::Finite(z))?;
        let b = p_mod(n, SpherePoint::Finite(z.inv()))?;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        println!(
            "n={}  P(z) + (-1)^n P(1/z) = {:+.3e}",
            n,
            a.coeff + sign * b.coeff
        );
    }

    // P_n,Zag differs from P_n^mod by an elementary log correction at n = 3
    let zag = p_zag(3, z)?;
    let pm = p_mod(3, SpherePoint::Finite(z))?;
    let corr = z.norm().ln().powi(2) * (Complex64::new(1.0, 0.0) - z).norm().ln() / 6.0;
    println!(
        "P_3,Zag - P_3^mod + log^2|z| log|1-z|/6 = {:+.3e}",
        zag.coeff - pm.coeff + corr
    );

    // projections onto R(m)
    let w = Complex64::new(3.0, 4.0);
    println!(
        "project(3+4i, 0) = {}, project(3+4i, 1) = {}",
        project(w, 0).coeff,
        project(w, 1).coeff
    );
    Ok(())
}
