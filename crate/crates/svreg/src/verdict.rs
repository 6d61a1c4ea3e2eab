//! Structured comparison results.

use serde::Serialize;

/// Outcome of one check: what was claimed, what was computed, at which
/// tolerance, and the diagnostic trail that led there.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claimed: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub trail: Vec<String>,
}

impl Verdict {
    pub fn pass(name: impl Into<String>) -> Verdict {
        Verdict {
            name: name.into(),
            pass: true,
            claimed: None,
            computed: None,
            residual: None,
            tolerance: None,
            trail: vec![],
        }
    }

    pub fn fail(name: impl Into<String>) -> Verdict {
        Verdict {
            pass: false,
            ..Verdict::pass(name)
        }
    }

    /// Numeric comparison: |computed - claimed| <= tol.
    pub fn compare(name: impl Into<String>, claimed: f64, computed: f64, tol: f64) -> Verdict {
        let residual = (computed - claimed).abs();
        Verdict {
            name: name.into(),
            pass: residual <= tol,
            claimed: Some(format!("{claimed}")),
            computed: Some(format!("{computed}")),
            residual: Some(residual),
            tolerance: Some(tol),
            trail: vec![],
        }
    }

    /// Residual test: |residual| <= tol.
    pub fn residual(name: impl Into<String>, residual: f64, tol: f64) -> Verdict {
        Verdict {
            name: name.into(),
            pass: residual.abs() <= tol,
            claimed: Some("0".into()),
            computed: None,
            residual: Some(residual.abs()),
            tolerance: Some(tol),
            trail: vec![],
        }
    }

    pub fn with_trail(mut self, line: impl Into<String>) -> Verdict {
        self.trail.push(line.into());
        self
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.trail.push(line.into());
    }

    /// Conjunction: passes iff all parts pass; parts become the trail.
    pub fn all(name: impl Into<String>, parts: Vec<Verdict>) -> Verdict {
        let pass = parts.iter().all(|v| v.pass);
        let trail = parts
            .iter()
            .map(|v| {
                format!(
                    "{}: {}{}",
                    v.name,
                    if v.pass { "pass" } else { "FAIL" },
                    v.residual
                        .map(|r| format!(" (residual {r:.3e})"))
                        .unwrap_or_default()
                )
            })
            .collect();
        Verdict {
            name: name.into(),
            pass,
            claimed: None,
            computed: None,
            residual: parts.iter().filter_map(|v| v.residual).fold(None, |a, b| {
                Some(a.map_or(b, |x: f64| x.max(b)))
            }),
            tolerance: None,
            trail,
        }
    }
}
