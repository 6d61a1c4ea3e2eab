//! The exact identity suite on weight-4 cocycles: basis extraction and the
//! tensor identities it implies, with a corrupted-coefficient negative
//! control.
//!
//!     cargo run --example identity_suite

use svreg::manifest::parse_expr;
use svreg::poly::q_int;
use svreg::symbols::{extract_basis, identity_suite, ChainElement, Variant};

fn main() -> svreg::Result<()> {
    let t = parse_expr("t")?;
    let t3 = parse_expr("t-3")?;
    let e = ChainElement::degree2(
        4,
        Variant::MTilde,
        vec![
            (q_int(1), t.clone(), t3.clone()),
            (q_int(1), t.invert(), parse_expr("t/(t-3)")?),
        ],
    )?;

    let n = e.normalize()?;
    println!("element (normalized): {n}");
    let basis = extract_basis(&n)?;
    println!("basis A_k:");
    for a in &basis.generators {
        println!("  {a}");
    }
    let show = |m: &Vec<Vec<svreg::poly::Q>>| -> String {
        m.iter()
            .map(|row| {
                row.iter()
                    .map(|q| format!("{}", q))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("; ")
    };
    println!("s matrix: [{}]", show(&basis.s));
    println!("t matrix: [{}]", show(&basis.tmat));

    let v = identity_suite(&e)?;
    println!("\nidentity suite: pass = {}", v.pass);
    for line in &v.trail {
        println!("  {line}");
    }

    // corrupting one coefficient breaks the strict d-vanishing loudly
    let bad = ChainElement::degree2(
        4,
        Variant::MTilde,
        vec![
            (q_int(2), t.clone(), t3),
            (q_int(1), t.invert(), parse_expr("t/(t-3)")?),
        ],
    )?;
    let v = identity_suite(&bad)?;
    println!("\ncorrupted element: pass = {}", v.pass);
    Ok(())
}
