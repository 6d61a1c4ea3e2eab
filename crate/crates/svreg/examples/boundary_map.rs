//! The boundary map delta_x: tame-symbol splitting of wedge entries,
//! specialization of symbol arguments, and the globality oracle through the
//! number-field regulator.
//!
//!     cargo run --example boundary_map

use svreg::field::Place;
use svreg::manifest::{parse_expr, parse_place};
use svreg::poly::q_int;
use svreg::symbols::{ChainElement, Variant};

fn main() -> svreg::Result<()> {
    let t = parse_expr("t")?;
    let t3 = parse_expr("t-3")?;

    // boundary([t]_3 (x) (t-3)) at t-3 is [3]_3
    let e = ChainElement::degree2(4, Variant::MTilde, vec![(q_int(1), t.clone(), t3.clone())])?;
    let x = Place::Rational(q_int(3));
    let b = e.boundary(&x)?;
    for term in &b.terms {
        println!(
            "delta_(t-3): {} * [{}]_{} evaluated at the place",
            term.coeff,
            term.sp.as_ref().unwrap(),
            term.order
        );
    }
    for (label, v) in b.regulator_vector(3, true, 1e-12)? {
        println!("  regulator ({label}): {:.12} * i^{}", v.coeff, v.twist);
    }

    // sp kills the argument when it vanishes at the place
    let e0 = ChainElement::degree2(4, Variant::MTilde, vec![(q_int(1), t.clone(), t.clone())])?;
    println!(
        "\nboundary([t]_3 (x) t) at t = 0 has {} terms (sp kills [t]_3)",
        e0.boundary(&Place::Rational(q_int(0)))?.terms.len()
    );

    // globality: zero boundary, zero-by-inversion, and a nonzero residual at
    // the primitive sixth root of unity
    println!("\nis_global verdicts:");
    let v = e0.is_global(1e-8, 1e-12)?;
    println!("  [t]_3 (x) t: {}", v.pass);

    let pair = ChainElement::degree2(
        4,
        Variant::MTilde,
        vec![
            (q_int(1), t.clone(), t3),
            (q_int(1), t.invert(), parse_expr("t/(t-3)")?),
        ],
    )?;
    let v = pair.is_global(1e-8, 1e-12)?;
    println!("  inversion pair (P_3(3) = P_3(1/3)): {}", v.pass);

    let w6 = ChainElement::degree2(3, Variant::MTilde, vec![(q_int(1), t, parse_expr("t^2-t+1")?)])?;
    let v = w6.is_global(1e-8, 1e-12)?;
    println!(
        "  [t]_2 (x) (t^2-t+1): {} (residual {:.10} = max of the Bloch-Wigner function)",
        v.pass,
        v.residual.unwrap()
    );
    let _ = parse_place("t^2-t+1")?;
    Ok(())
}
