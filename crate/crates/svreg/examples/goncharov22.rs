//! Goncharov's 22-term trilogarithm relation: the 23-term formal combination
//! (including -3{1}_3, which contributes -3 zeta(3)), checked through
//! P_3^mod sums and the exact weight-3 constancy certificate.
//!
//!     cargo run --example goncharov22

use svreg::field::FieldElement;
use svreg::poly::q_int;
use svreg::relations::{goncharov_22, goncharov_psum, verify_relation, VerifyMode};

fn main() -> svreg::Result<()> {
    let a1 = FieldElement::from_rational(&q_int(2))?;
    let a2 = FieldElement::from_rational(&q_int(3))?;
    let a3 = FieldElement::from_rational(&q_int(5))?;
    let rel = goncharov_22([&a1, &a2, &a3])?;
    println!("{} with {} terms:", rel.provenance, rel.terms.len());
    for (c, h) in &rel.terms {
        println!("  {:+} {{{}}}_3", c, h);
    }
    let v = verify_relation(&rel, 3, VerifyMode::Numeric, 1e-8)?;
    println!("numeric verdict: pass = {}", v.pass);

    println!("\nresiduals at random rational triples:");
    for (x, y, z) in [(2.0, 3.0, 5.0), (7.0, 2.0, 9.0), (0.25, 4.0, -1.5)] {
        println!("  |sum c_i P_3^mod| at ({x},{y},{z}) = {:.3e}", goncharov_psum(x, y, z)?);
    }

    // one function slot keeps the symbolic certificate univariate: the
    // constancy hypothesis holds exactly, so the numeric sum is constant in t
    let t = FieldElement::var();
    let rel = goncharov_22([&t, &a2, &a3])?;
    let v = verify_relation(&rel, 3, VerifyMode::Both, 1e-8)?;
    println!("\ngoncharov22(t, 3, 5): pass = {}", v.pass);
    for line in &v.trail {
        println!("  {line}");
    }
    Ok(())
}
