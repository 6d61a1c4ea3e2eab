//! The five-term relation of the dilogarithm and its corollaries, verified
//! symbolically (exact wedge certificate) and numerically (Bloch-Wigner sums).
//!
//!     cargo run --example five_term

use num_complex::Complex64;
use svreg::field::FieldElement;
use svreg::manifest::parse_expr;
use svreg::poly::q_ratio;
use svreg::relations::{aux_relation, five_term, five_term_dsum, verify_relation, AuxKind, VerifyMode};

fn main() -> svreg::Result<()> {
    // the relation with one function slot and one constant slot
    let x = FieldElement::var();
    let y = FieldElement::from_rational(&q_ratio(1, 2))?;
    let rel = five_term(&x, &y)?;
    println!("generator: {}", rel.provenance);
    for (c, h) in &rel.terms {
        println!("  {:+} {{{}}}_2", c, h);
    }
    let v = verify_relation(&rel, 2, VerifyMode::Both, 1e-9)?;
    println!("five_term(t, 1/2): pass = {}", v.pass);
    for line in &v.trail {
        println!("  {line}");
    }

    // numeric sums at complex parameters
    for (x, y) in [
        (Complex64::new(0.3, 0.4), Complex64::new(-2.0, 0.0)),
        (Complex64::new(1.7, -0.6), Complex64::new(0.2, 0.9)),
    ] {
        println!("|sum of five D values| at ({x}, {y}) = {:.3e}", five_term_dsum(x, y)?);
    }

    // the corollary relations
    for kind in [AuxKind::Inversion, AuxKind::OneMinus, AuxKind::Duplication] {
        let r = aux_relation(kind, &parse_expr("t-3")?)?;
        let v = verify_relation(&r, 2, VerifyMode::Both, 1e-9)?;
        println!("{}: pass = {}", r.provenance, v.pass);
    }
    Ok(())
}
