//! Constancy families: combinations whose Sym^(n-2) F* (x) wedge^2 F*
//! hypothesis holds exactly have constant P_n^mod sums along the curve.
//!
//!     cargo run --example constancy

use svreg::field::FieldElement;
use svreg::poly::{q_int, q_ratio};
use svreg::regulator::constancy_check;
use svreg::relations::{five_term, goncharov_22};

fn main() -> svreg::Result<()> {
    let t = FieldElement::var();
    let half = FieldElement::from_rational(&q_ratio(1, 2))?;

    // the five-term family in t at weight 2: constant (identically zero)
    let rel = five_term(&t, &half)?;
    let v = constancy_check(&rel.terms, 2, 100, 1e-8)?;
    println!("five-term family (x = t, y = 1/2), n = 2:");
    for line in &v.trail {
        println!("  {line}");
    }

    // the 22-term family in t at weight 3
    let a2 = FieldElement::from_rational(&q_int(2))?;
    let a3 = FieldElement::from_rational(&q_int(3))?;
    let rel = goncharov_22([&t, &a2, &a3])?;
    let v = constancy_check(&rel.terms, 3, 100, 1e-8)?;
    println!("\n22-term family (a1 = t, a2 = 2, a3 = 3), n = 3:");
    for line in &v.trail {
        println!("  {line}");
    }

    // negative control: a single symbol fails the hypothesis and is not
    // constant; the numeric part still runs for diagnostics
    let v = constancy_check(&[(q_int(1), t.clone())], 3, 40, 1e-8)?;
    println!("\n[t]_3 alone (hypothesis fails, nonconstant): pass = {}", v.pass);
    for line in &v.trail {
        println!("  {line}");
    }
    Ok(())
}
