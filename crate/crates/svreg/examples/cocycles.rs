//! Symbol complexes: differentials, the M~ inversion normal form, cocycle
//! detection (strict and pool-assisted), and exact kernel solving.
//!
//!     cargo run --example cocycles

use svreg::manifest::parse_expr;
use svreg::poly::q_int;
use svreg::relations::{admit_to_pool, aux_relation, AuxKind};
use svreg::symbols::{is_cocycle, solve_cocycles, ChainElement, RelationPool, SymbolTerm, Variant};

fn main() -> svreg::Result<()> {
    let t = parse_expr("t")?;
    let t3 = parse_expr("t-3")?;
    let ratio = parse_expr("t/(t-3)")?;

    // d([t]_3 (x) t) = [t]_2 (x) t ^ t = 0: a strict cocycle
    let e = ChainElement::degree2(4, Variant::MTilde, vec![(q_int(1), t.clone(), t.clone())])?;
    println!("e = {e}");
    println!("d(e) = {}", e.differential()?);
    println!("strict cocycle: {}\n", is_cocycle(&e, &RelationPool::default())?.pass);

    // the inversion pair: strict in M~ after normalization, pool-assisted in M
    let pair = vec![
        (q_int(1), t.clone(), t3.clone()),
        (q_int(1), t.invert(), ratio.clone()),
    ];
    let e = ChainElement::degree2(4, Variant::MTilde, pair.clone())?;
    println!("e = {e}");
    println!("normalized: {}", e.normalize()?);
    println!("M~ verdict: {}", is_cocycle(&e, &RelationPool::default())?.pass);

    let e_m = ChainElement::degree2(4, Variant::M, pair)?;
    let empty = RelationPool::default();
    println!("M strict verdict: {}", is_cocycle(&e_m, &empty)?.pass);
    let mut pool = RelationPool::default();
    admit_to_pool(&mut pool, &aux_relation(AuxKind::Inversion, &t)?)?;
    let v = is_cocycle(&e_m, &pool)?;
    println!("M with {{x}}_2 + {{1/x}}_2 in the pool: {}", v.pass);
    for line in &v.trail {
        println!("  {line}");
    }

    // exact kernel of the differential over a term pool
    let terms = vec![
        SymbolTerm::new(q_int(1), 3, t.clone(), vec![t.clone()]),
        SymbolTerm::new(q_int(1), 3, t.clone(), vec![t3.clone()]),
        SymbolTerm::new(q_int(1), 3, t.invert(), vec![ratio]),
    ];
    let kernel = solve_cocycles(4, Variant::MTilde, &terms, &RelationPool::default())?;
    println!("\nkernel of d over the 3-term pool ({} elements):", kernel.len());
    for e in &kernel {
        println!("  {e}");
    }
    Ok(())
}
