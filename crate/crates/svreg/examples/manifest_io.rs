//! Manifest round-trips and library-level dispatch: the same machinery the
//! `svreg` binary drives.
//!
//!     cargo run --example manifest_io

use svreg::manifest::{dispatch, Command, Manifest};

fn main() -> svreg::Result<()> {
    let json = r#"{
        "weight": 4,
        "variant": "Mtilde",
        "terms": [
            {"coeff": "1", "order": 3, "arg": "t", "wedge": ["t-3"]},
            {"coeff": "1", "order": 3, "arg": "t^-1", "wedge": ["t/(t-3)"]}
        ],
        "relation_pool": ["inversion(x=t)"],
        "task": {"place": "t-3", "tol": 1e-4}
    }"#;
    let mut warnings = vec![];
    let manifest = Manifest::from_json(json, true, &mut warnings)?;
    let chain = manifest.chain()?;
    println!("parsed element: {chain}");

    // canonical re-serialization is stable after the first round
    let again = Manifest::from_chain(&chain, &manifest.relation_pool, manifest.task.clone());
    println!("\ncanonicalized manifest:\n{}", serde_json::to_string_pretty(&again).unwrap());

    // dispatch exactly as the binary does
    let report = dispatch(&Command::CheckCocycle { manifest })?;
    print!("\n{}", report.render_human());
    println!("machine format: {}", serde_json::to_string(&report.verdicts).unwrap());
    Ok(())
}
