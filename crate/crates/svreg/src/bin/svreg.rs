//! Thin command-line front end; all work happens in the library.
//!
//! Exit codes: 0 all verdicts pass, 1 some verdict failed, 2 usage or
//! input error.

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use svreg::manifest::{
    dispatch, parse_complex, parse_expr, parse_place, parse_relation, Command as LibCommand,
    Manifest, Report,
};
use svreg::relations::VerifyMode;

#[derive(Parser)]
#[command(name = "svreg", version, about = "single-valued polylogarithms, symbol complexes, and regulator integrals")]
struct Cli {
    /// Write the machine-readable report to this file as JSON
    #[arg(long, global = true)]
    report: Option<std::path::PathBuf>,
    /// Accept unknown manifest fields with a warning instead of rejecting
    #[arg(long, global = true)]
    lenient: bool,
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Args, Clone)]
struct ManifestArg {
    /// Path to a JSON manifest
    #[arg(long)]
    manifest: std::path::PathBuf,
}

#[derive(Subcommand, Clone)]
enum CliCommand {
    /// Evaluate P_n^mod(z)
    EvalPmod {
        #[arg(long)]
        n: u32,
        /// complex point, e.g. "0+1i"
        #[arg(long)]
        z: String,
    },
    /// Evaluate P_n,Zag(z)
    EvalPzag {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        z: String,
    },
    /// Evaluate Li_n(z) on the principal branch
    EvalLi {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        z: String,
    },
    /// Check whether a manifest element is a cocycle (strict or pool-assisted)
    CheckCocycle {
        #[command(flatten)]
        manifest: ManifestArg,
    },
    /// Print the boundary of a manifest element at a place
    Boundary {
        #[command(flatten)]
        manifest: ManifestArg,
        /// Place (falls back to the manifest task block)
        #[arg(long)]
        place: Option<String>,
    },
    /// Test boundary vanishing at every support place through the regulator
    IsGlobal {
        #[command(flatten)]
        manifest: ManifestArg,
        /// Tolerance (falls back to the manifest task block, then 1e-8)
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Compare the contour residue against the boundary prediction
    VerifyBoundary {
        #[command(flatten)]
        manifest: ManifestArg,
        /// Place (falls back to the manifest task block)
        #[arg(long)]
        place: Option<String>,
        /// Tolerance (falls back to the manifest task block, then 1e-4)
        #[arg(long)]
        tol: Option<f64>,
        /// Prediction factor (default -6; change for negative controls)
        #[arg(long, default_value_t = -6.0, allow_hyphen_values = true)]
        factor: f64,
    },
    /// Contour residue of the weight-4 residue form at a place
    Residue {
        #[command(flatten)]
        manifest: ManifestArg,
        /// Place (falls back to the manifest task block)
        #[arg(long)]
        place: Option<String>,
    },
    /// Constancy check for a certified relation family
    Constancy {
        /// Relation generator, e.g. "five_term(x=t, y=1/2)"
        #[arg(long)]
        relation: String,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Standard P^1 integrals (diarg-dlog, diarg-diarg, dlog-dlogbar, bump, dh)
    StandardIntegral {
        #[arg(long)]
        which: String,
        #[arg(long, default_value = "2")]
        c: String,
    },
    /// Pointwise inversion vanishing of the transformed regulator integrand
    Thm34Check {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Verify a named relation symbolically and/or numerically
    Relation {
        #[arg(long)]
        relation: String,
        #[arg(long)]
        n: u32,
        /// symbolic | numeric | both
        #[arg(long, default_value = "both")]
        mode: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Formal cancellation checker for the bump-correction form
    #[command(name = "lemma419")]
    FormalCancellation {
        #[arg(long)]
        n: u32,
    },
    /// Exact identity suite on a weight-4 cocycle
    Identities {
        #[command(flatten)]
        manifest: ManifestArg,
    },
    /// Regulator determinant det(R)/((2 pi i)^(n r) det(T))
    RegDet {
        /// JSON array of rows of complex strings, e.g. [["0+2i"]]
        #[arg(long)]
        r_matrix: String,
        #[arg(long)]
        t_matrix: String,
        #[arg(long)]
        n: u32,
    },
}

fn load_manifest(path: &std::path::Path, lenient: bool, warnings: &mut Vec<String>) -> svreg::Result<Manifest> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| svreg::Error::Manifest(format!("cannot read {}: {e}", path.display())))?;
    Manifest::from_json(&text, !lenient, warnings)
}

fn place_of(
    flag: &Option<String>,
    manifest: &Manifest,
) -> svreg::Result<svreg::field::Place> {
    let text = flag
        .clone()
        .or_else(|| manifest.task.place.clone())
        .ok_or_else(|| {
            svreg::Error::Invalid("no --place given and the manifest task has none".into())
        })?;
    parse_place(&text)
}

fn parse_matrix(text: &str) -> svreg::Result<Vec<Vec<Complex64>>> {
    let rows: Vec<Vec<String>> = serde_json::from_str(text)
        .map_err(|e| svreg::Error::Invalid(format!("bad matrix JSON: {e}")))?;
    rows.iter()
        .map(|row| row.iter().map(|s| parse_complex(s)).collect())
        .collect()
}

fn build_command(cli: &Cli, warnings: &mut Vec<String>) -> svreg::Result<LibCommand> {
    Ok(match &cli.command {
        CliCommand::EvalPmod { n, z } => LibCommand::EvalPmod {
            n: *n,
            z: parse_complex(z)?,
        },
        CliCommand::EvalPzag { n, z } => LibCommand::EvalPzag {
            n: *n,
            z: parse_complex(z)?,
        },
        CliCommand::EvalLi { n, z } => LibCommand::EvalLi {
            n: *n,
            z: parse_complex(z)?,
        },
        CliCommand::CheckCocycle { manifest } => LibCommand::CheckCocycle {
            manifest: load_manifest(&manifest.manifest, cli.lenient, warnings)?,
        },
        CliCommand::Boundary { manifest, place } => {
            let manifest = load_manifest(&manifest.manifest, cli.lenient, warnings)?;
            let place = place_of(place, &manifest)?;
            LibCommand::Boundary { manifest, place }
        }
        CliCommand::IsGlobal { manifest, tol } => {
            let manifest = load_manifest(&manifest.manifest, cli.lenient, warnings)?;
            let tol = tol.or(manifest.task.tol).unwrap_or(1e-8);
            LibCommand::IsGlobal { manifest, tol }
        }
        CliCommand::VerifyBoundary {
            manifest,
            place,
            tol,
            factor,
        } => {
            let manifest = load_manifest(&manifest.manifest, cli.lenient, warnings)?;
            let place = place_of(place, &manifest)?;
            let tol = tol.or(manifest.task.tol).unwrap_or(1e-4);
            LibCommand::VerifyBoundary {
                manifest,
                place,
                tol,
                factor: *factor,
            }
        }
        CliCommand::Residue { manifest, place } => {
            let manifest = load_manifest(&manifest.manifest, cli.lenient, warnings)?;
            let place = place_of(place, &manifest)?;
            LibCommand::Residue { manifest, place }
        }
        CliCommand::Constancy {
            relation,
            n,
            samples,
            tol,
        } => LibCommand::Constancy {
            relation: parse_relation(relation)?,
            n: *n,
            samples: *samples,
            tol: *tol,
        },
        CliCommand::StandardIntegral { which, c } => LibCommand::StandardIntegral {
            which: which.clone(),
            c: parse_complex(c)?,
        },
        CliCommand::Thm34Check { f, g, n, samples } => LibCommand::Thm34Check {
            f: parse_expr(f)?,
            g: parse_expr(g)?,
            n: *n,
            samples: *samples,
        },
        CliCommand::Relation {
            relation,
            n,
            mode,
            tol,
        } => LibCommand::Relation {
            relation: parse_relation(relation)?,
            n: *n,
            mode: match mode.as_str() {
                "symbolic" => VerifyMode::Symbolic,
                "numeric" => VerifyMode::Numeric,
                "both" => VerifyMode::Both,
                other => {
                    return Err(svreg::Error::Invalid(format!(
                        "unknown mode '{other}' (symbolic, numeric, both)"
                    )))
                }
            },
            tol: *tol,
        },
        CliCommand::FormalCancellation { n } => LibCommand::FormalCancellation { n: *n },
        CliCommand::Identities { manifest } => LibCommand::Identities {
            manifest: load_manifest(&manifest.manifest, cli.lenient, warnings)?,
        },
        CliCommand::RegDet {
            r_matrix,
            t_matrix,
            n,
        } => LibCommand::RegDet {
            r_mat: parse_matrix(r_matrix)?,
            t_mat: parse_matrix(t_matrix)?,
            n: *n,
        },
    })
}

fn main() {
    let cli = Cli::parse();
    let mut warnings = vec![];
    let cmd = match build_command(&cli, &mut warnings) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    };
    let mut report: Report = match dispatch(&cmd) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    };
    report.warnings.extend(warnings);
    print!("{}", report.render_human());
    if let Some(path) = &cli.report {
        match serde_json::to_string_pretty(&report) {
            Ok(json) => {
                if let Err(e) = std::fs::write(path, json) {
                    eprintln!("error writing report: {e}");
                    std::process::exit(2);
                }
            }
            Err(e) => {
                eprintln!("error serializing report: {e}");
                std::process::exit(2);
            }
        }
    }
    std::process::exit(if report.all_pass() { 0 } else { 1 });
}
