//! Expression grammar, manifest and report formats, and command dispatch.
//!
//! Expressions use rational constants (`3`, `-2/5`), the variable `t`, the
//! operators `+ - * / ^` (integer exponents only), and parentheses. Places
//! are written `t-3`, `t^2+1`, or `inf`. All interchange coefficients are
//! exact rational strings; floating-point coefficients are rejected.

use crate::error::{Error, Result};
use crate::field::{FieldElement, Place};
use crate::poly::{Poly, Q};
use crate::polylog;
use crate::regulator;
use crate::relations::{self, AuxKind, FormalRelation, VerifyMode};
use crate::symbols::{self, ChainElement, RelationPool, SymbolTerm, Variant};
use crate::verdict::Verdict;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::str::FromStr;

// ---- expression parsing ----

struct Frac {
    num: Poly,
    den: Poly,
}

impl Frac {
    fn constant(c: Q) -> Frac {
        Frac {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }
    fn t() -> Frac {
        Frac {
            num: Poly::t(),
            den: Poly::one(),
        }
    }
    fn add(&self, o: &Frac) -> Frac {
        Frac {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
    }
    fn sub(&self, o: &Frac) -> Frac {
        Frac {
            num: self.num.mul(&o.den).sub(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
    }
    fn mul(&self, o: &Frac) -> Frac {
        Frac {
            num: self.num.mul(&o.num),
            den: self.den.mul(&o.den),
        }
    }
    fn div(&self, o: &Frac, pos: usize) -> Result<Frac> {
        if o.num.is_zero() {
            return Err(Error::Parse {
                pos,
                msg: "division by the zero function".into(),
            });
        }
        Ok(Frac {
            num: self.num.mul(&o.den),
            den: self.den.mul(&o.num),
        })
    }
    fn pow(&self, e: i64, pos: usize) -> Result<Frac> {
        let (num, den) = if e >= 0 {
            (self.num.clone(), self.den.clone())
        } else {
            if self.num.is_zero() {
                return Err(Error::Parse {
                    pos,
                    msg: "negative power of the zero function".into(),
                });
            }
            (self.den.clone(), self.num.clone())
        };
        let k = e.unsigned_abs() as u32;
        Ok(Frac {
            num: num.pow(k),
            den: den.pow(k),
        })
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expr(&mut self) -> Result<Frac> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = acc.add(&rhs);
                }
                Some(b'-') => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = acc.sub(&rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Frac> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = acc.mul(&rhs);
                }
                Some(b'/') => {
                    self.bump();
                    let p = self.pos;
                    let rhs = self.factor()?;
                    acc = acc.div(&rhs, p)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Frac> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let p = self.pos;
            let e = self.integer_exponent()?;
            return base.pow(e, p);
        }
        Ok(base)
    }

    fn integer_exponent(&mut self) -> Result<i64> {
        // a bare integer, optionally negative, optionally parenthesized
        let mut depth = 0usize;
        while self.peek() == Some(b'(') {
            self.bump();
            depth += 1;
        }
        let mut neg = false;
        if self.peek() == Some(b'-') {
            self.bump();
            neg = true;
        }
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an integer exponent (rational powers enter only via the group operations)");
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let v: i64 = digits
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "exponent out of range".into(),
            })?;
        for _ in 0..depth {
            if self.peek() != Some(b')') {
                return self.err("expected an integer exponent (rational powers enter only via the group operations)");
            }
            self.bump();
        }
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<Frac> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.bump();
                Ok(inner)
            }
            Some(b'-') => {
                self.bump();
                let inner = self.factor()?;
                Ok(Frac::constant(-Q::one()).mul(&inner))
            }
            Some(b't') => {
                self.bump();
                Ok(Frac::t())
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if self.bytes.get(self.pos) == Some(&b'.') {
                    return Err(Error::Parse {
                        pos: self.pos,
                        msg: "floating-point literals are rejected; use exact rationals p/q".into(),
                    });
                }
                let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                let n = BigInt::from_str(digits).map_err(|_| Error::Parse {
                    pos: start,
                    msg: "bad integer literal".into(),
                })?;
                Ok(Frac::constant(Q::from_integer(n)))
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse an expression into a normalized field element.
pub fn parse_expr(text: &str) -> Result<FieldElement> {
    let mut p = Parser::new(text);
    let frac = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(Error::Parse {
            pos: p.pos,
            msg: "trailing input".into(),
        });
    }
    if frac.num.is_zero() {
        return Err(Error::Parse {
            pos: 0,
            msg: "the zero function is not a group element".into(),
        });
    }
    let mut constant = Q::one();
    let mut factors = vec![];
    if frac.num.is_constant() {
        constant *= frac.num.coeff(0);
    } else {
        factors.push((frac.num.clone(), Q::one()));
    }
    if frac.den.is_constant() {
        constant /= frac.den.coeff(0);
    } else {
        factors.push((frac.den.clone(), -Q::one()));
    }
    FieldElement::build(&constant, &factors)
}

/// Parse a place: `inf`, or a polynomial expression cutting out the place.
pub fn parse_place(text: &str) -> Result<Place> {
    let t = text.trim();
    if t == "inf" || t == "infinity" {
        return Ok(Place::Infinity);
    }
    let fe = parse_expr(t)?;
    let (num, den) = fe.numer_denom()?;
    if !den.is_constant() {
        return Err(Error::Invalid("a place polynomial must be polynomial".into()));
    }
    Place::from_poly(&num)
}

/// Parse an exact rational "p/q" (or "p"); floats are rejected.
pub fn parse_rational(text: &str) -> Result<Q> {
    let t = text.trim();
    if t.contains('.') || t.contains('e') || t.contains('E') {
        return Err(Error::Manifest(format!(
            "coefficient '{t}' must be an exact rational string p/q"
        )));
    }
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| Error::Manifest(format!("bad rational '{t}'")))?;
    let d = BigInt::from_str(den).map_err(|_| Error::Manifest(format!("bad rational '{t}'")))?;
    if d.is_zero() {
        return Err(Error::Manifest("zero denominator".into()));
    }
    Ok(Q::new(n, d))
}

/// Parse a complex "a+bi" / "a-bi" / "a" / "bi" with decimal parts allowed.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let t: String = text.trim().replace(' ', "");
    if t.is_empty() {
        return Err(Error::Invalid("empty complex literal".into()));
    }
    let parse_f = |s: &str| -> Result<f64> {
        if s.is_empty() || s == "+" {
            return Ok(1.0);
        }
        if s == "-" {
            return Ok(-1.0);
        }
        s.parse::<f64>()
            .map_err(|_| Error::Invalid(format!("bad number '{s}'")))
    };
    if let Some(body) = t.strip_suffix('i') {
        // find the split between real and imaginary parts
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-')
                && bytes[k - 1] != b'e'
                && bytes[k - 1] != b'E'
            {
                split = Some(k);
                break;
            }
        }
        match split {
            Some(k) => Ok(Complex64::new(parse_f(&body[..k])?, parse_f(&body[k..])?)),
            None => Ok(Complex64::new(0.0, parse_f(body)?)),
        }
    } else {
        Ok(Complex64::new(parse_f(&t)?, 0.0))
    }
}

/// Parse a named relation generator: `five_term(x=.., y=..)`,
/// `inversion(x=..)`, `one_minus(x=..)`, `duplication(x=..)`,
/// `goncharov22(a1=.., a2=.., a3=..)`.
pub fn parse_relation(text: &str) -> Result<FormalRelation> {
    let t = text.trim();
    let open = t
        .find('(')
        .ok_or_else(|| Error::Manifest(format!("bad relation '{t}'")))?;
    if !t.ends_with(')') {
        return Err(Error::Manifest(format!("bad relation '{t}'")));
    }
    let name = t[..open].trim();
    let args_text = &t[open + 1..t.len() - 1];
    let mut args = std::collections::BTreeMap::new();
    // split on commas at depth 0
    let mut depth = 0;
    let mut start = 0;
    let mut pieces = vec![];
    for (i, c) in args_text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                pieces.push(&args_text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if start < args_text.len() {
        pieces.push(&args_text[start..]);
    }
    for piece in pieces {
        let (k, v) = piece
            .split_once('=')
            .ok_or_else(|| Error::Manifest(format!("bad relation argument '{piece}'")))?;
        args.insert(k.trim().to_string(), parse_expr(v.trim())?);
    }
    let get = |k: &str| -> Result<&FieldElement> {
        args.get(k)
            .ok_or_else(|| Error::Manifest(format!("relation '{name}' needs argument '{k}'")))
    };
    match name {
        "five_term" | "five-term" => relations::five_term(get("x")?, get("y")?),
        "inversion" => relations::aux_relation(AuxKind::Inversion, get("x")?),
        "one_minus" => relations::aux_relation(AuxKind::OneMinus, get("x")?),
        "duplication" => relations::aux_relation(AuxKind::Duplication, get("x")?),
        "goncharov22" | "goncharov_22" => {
            relations::goncharov_22([get("a1")?, get("a2")?, get("a3")?])
        }
        _ => Err(Error::Manifest(format!("unknown relation generator '{name}'"))),
    }
}

// ---- manifest ----

pub const MANIFEST_FORMAT: &str = "svreg-manifest-v1";
pub const REPORT_FORMAT: &str = "svreg-report-v1";

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestTerm {
    pub coeff: String,
    pub order: u32,
    pub arg: String,
    #[serde(default)]
    pub wedge: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[derive(Default)]
pub struct TaskParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub place: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radii: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
}


#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default = "default_format")]
    pub format: String,
    pub weight: u32,
    pub variant: String,
    pub terms: Vec<ManifestTerm>,
    #[serde(default)]
    pub relation_pool: Vec<String>,
    #[serde(default)]
    pub task: TaskParams,
}

fn default_format() -> String {
    MANIFEST_FORMAT.to_string()
}

impl Manifest {
    /// Parse from JSON. Strict mode rejects unknown fields; lenient mode
    /// strips them with a warning pushed into `warnings`.
    pub fn from_json(text: &str, strict: bool, warnings: &mut Vec<String>) -> Result<Manifest> {
        if strict {
            let m: Manifest = serde_json::from_str(text)
                .map_err(|e| Error::Manifest(format!("{e}")))?;
            m.validate()?;
            Ok(m)
        } else {
            let mut v: serde_json::Value =
                serde_json::from_str(text).map_err(|e| Error::Manifest(format!("{e}")))?;
            let known = ["format", "weight", "variant", "terms", "relation_pool", "task"];
            if let Some(obj) = v.as_object_mut() {
                let unknown: Vec<String> = obj
                    .keys()
                    .filter(|k| !known.contains(&k.as_str()))
                    .cloned()
                    .collect();
                for k in unknown {
                    warnings.push(format!("ignoring unknown manifest field '{k}'"));
                    obj.remove(&k);
                }
            }
            let m: Manifest = serde_json::from_value(v)
                .map_err(|e| Error::Manifest(format!("{e}")))?;
            m.validate()?;
            Ok(m)
        }
    }

    fn validate(&self) -> Result<()> {
        if self.format != MANIFEST_FORMAT {
            return Err(Error::Manifest(format!(
                "unsupported manifest format '{}' (expected {MANIFEST_FORMAT})",
                self.format
            )));
        }
        Ok(())
    }

    pub fn variant(&self) -> Result<Variant> {
        match self.variant.as_str() {
            "M" => Ok(Variant::M),
            "Mtilde" | "M~" | "MTilde" => Ok(Variant::MTilde),
            v => Err(Error::Manifest(format!("unknown variant '{v}'"))),
        }
    }

    pub fn chain(&self) -> Result<ChainElement> {
        let variant = self.variant()?;
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let coeff = parse_rational(&t.coeff)?;
                let arg = parse_expr(&t.arg)?;
                let wedge = t
                    .wedge
                    .iter()
                    .map(|w| parse_expr(w))
                    .collect::<Result<Vec<_>>>()?;
                Ok(SymbolTerm::new(coeff, t.order, arg, wedge))
            })
            .collect::<Result<Vec<_>>>()?;
        // degree recovered from the term shape
        let degree = if let Some(t) = self.terms.first() {
            if t.order == 0 || (t.order == 1 && self.weight > 1) {
                self.weight
            } else {
                self.weight + 1 - t.order
            }
        } else {
            2
        };
        ChainElement::new(self.weight, degree, variant, terms)
    }

    pub fn pool(&self) -> Result<RelationPool> {
        let mut pool = RelationPool::default();
        for text in &self.relation_pool {
            let rel = parse_relation(text)?;
            if !relations::admit_to_pool(&mut pool, &rel)? {
                return Err(Error::Manifest(format!(
                    "relation '{text}' failed its symbolic certificate"
                )));
            }
        }
        Ok(pool)
    }

    /// Serialize a chain back into manifest form (canonicalized terms).
    pub fn from_chain(e: &ChainElement, pool: &[String], task: TaskParams) -> Manifest {
        Manifest {
            format: MANIFEST_FORMAT.to_string(),
            weight: e.weight,
            variant: match e.variant {
                Variant::M => "M".to_string(),
                Variant::MTilde => "Mtilde".to_string(),
            },
            terms: e
                .terms
                .iter()
                .map(|t| ManifestTerm {
                    coeff: format!("{}", t.coeff),
                    order: t.order,
                    arg: format!("{}", t.arg),
                    wedge: t.wedge.iter().map(|w| format!("{}", w)).collect(),
                })
                .collect(),
            relation_pool: pool.to_vec(),
            task,
        }
    }
}

// ---- report ----

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub format: String,
    pub task: String,
    pub inputs: serde_json::Value,
    pub verdicts: Vec<Verdict>,
    pub values: Vec<ReportValue>,
    pub warnings: Vec<String>,
    pub wall_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportValue {
    pub name: String,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub provenance: String,
}

impl Report {
    pub fn new(task: &str, inputs: serde_json::Value) -> Report {
        Report {
            format: REPORT_FORMAT.to_string(),
            task: task.to_string(),
            inputs,
            verdicts: vec![],
            values: vec![],
            warnings: vec![],
            wall_ms: 0,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("task: {}\n", self.task));
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        for v in &self.values {
            out.push_str(&format!(
                "  {} = {}{}   [{}]\n",
                v.name,
                v.value,
                v.tolerance
                    .map(|t| format!(" (tol {t:.1e})"))
                    .unwrap_or_default(),
                v.provenance
            ));
        }
        for v in &self.verdicts {
            out.push_str(&format!(
                "  [{}] {}{}\n",
                if v.pass { "pass" } else { "FAIL" },
                v.name,
                v.residual
                    .map(|r| format!(" (residual {r:.3e}, tol {})", v.tolerance.map(|t| format!("{t:.1e}")).unwrap_or_else(|| "-".into())))
                    .unwrap_or_default(),
            ));
            for line in &v.trail {
                out.push_str(&format!("      {line}\n"));
            }
        }
        out.push_str(&format!(
            "result: {} ({} ms)\n",
            if self.all_pass() { "PASS" } else { "FAIL" },
            self.wall_ms
        ));
        out
    }
}

// ---- dispatch ----

/// All CLI commands, pre-parsed.
#[derive(Clone, Debug)]
pub enum Command {
    EvalPmod { n: u32, z: Complex64 },
    EvalPzag { n: u32, z: Complex64 },
    EvalLi { n: u32, z: Complex64 },
    CheckCocycle { manifest: Manifest },
    Boundary { manifest: Manifest, place: Place },
    IsGlobal { manifest: Manifest, tol: f64 },
    VerifyBoundary { manifest: Manifest, place: Place, tol: f64, factor: f64 },
    Residue { manifest: Manifest, place: Place },
    Constancy { relation: FormalRelation, n: u32, samples: usize, tol: f64 },
    StandardIntegral { which: String, c: Complex64 },
    Thm34Check { f: FieldElement, g: FieldElement, n: u32, samples: usize },
    Relation { relation: FormalRelation, n: u32, mode: VerifyMode, tol: f64 },
    FormalCancellation { n: u32 },
    Identities { manifest: Manifest },
    RegDet { r_mat: Vec<Vec<Complex64>>, t_mat: Vec<Vec<Complex64>>, n: u32 },
}

pub fn dispatch(cmd: &Command) -> Result<Report> {
    let start = std::time::Instant::now();
    let mut report = match cmd {
        Command::EvalPmod { n, z } => {
            let mut r = Report::new("eval-pmod", serde_json::json!({"n": n, "z": format!("{z}")}));
            let v = polylog::p_mod(*n, polylog::SpherePoint::Finite(*z))?;
            if polylog::near_one_accuracy_flag(*z) {
                r.warnings.push("within 1e-8 of z = 1: accuracy degraded".into());
            }
            r.values.push(ReportValue {
                name: "coefficient".into(),
                value: format!("{:.16e}", v.coeff),
                tolerance: Some(1e-12),
                provenance: "polylog::p_mod".into(),
            });
            r.values.push(ReportValue {
                name: "twist".into(),
                value: format!("{}", v.twist),
                tolerance: None,
                provenance: "polylog::p_mod".into(),
            });
            r
        }
        Command::EvalPzag { n, z } => {
            let mut r = Report::new("eval-pzag", serde_json::json!({"n": n, "z": format!("{z}")}));
            let v = polylog::p_zag(*n, *z)?;
            r.values.push(ReportValue {
                name: "coefficient".into(),
                value: format!("{:.16e}", v.coeff),
                tolerance: Some(1e-12),
                provenance: "polylog::p_zag".into(),
            });
            r.values.push(ReportValue {
                name: "twist".into(),
                value: format!("{}", v.twist),
                tolerance: None,
                provenance: "polylog::p_zag".into(),
            });
            r
        }
        Command::EvalLi { n, z } => {
            let mut r = Report::new("eval-li", serde_json::json!({"n": n, "z": format!("{z}")}));
            let v = polylog::li(*n, *z)?;
            if polylog::near_one_accuracy_flag(*z) {
                r.warnings.push("within 1e-8 of z = 1: accuracy degraded".into());
            }
            r.values.push(ReportValue {
                name: "value".into(),
                value: format!("{:.16e}+{:.16e}i", v.re, v.im),
                tolerance: Some(1e-12),
                provenance: "polylog::li".into(),
            });
            r
        }
        Command::CheckCocycle { manifest } => {
            let mut r = Report::new("check-cocycle", serde_json::to_value(manifest).unwrap());
            let e = manifest.chain()?;
            let pool = manifest.pool()?;
            r.verdicts.push(symbols::is_cocycle(&e, &pool)?);
            r
        }
        Command::Boundary { manifest, place } => {
            let mut r = Report::new("boundary", serde_json::to_value(manifest).unwrap());
            let e = manifest.chain()?;
            let b = e.boundary(place)?;
            if b.terms.is_empty() {
                r.values.push(ReportValue {
                    name: format!("boundary at {place}"),
                    value: "0".into(),
                    tolerance: None,
                    provenance: "symbols::boundary".into(),
                });
            }
            for t in &b.terms {
                let head = match (&t.sp, t.order) {
                    (Some(y), m) if m >= 1 => {
                        let rep = symbols::residue_value_mod_place(y, place)
                            .map(|p| format!("{p} mod ({place})"))
                            .unwrap_or_else(|_| format!("{y} at {place}"));
                        format!("[{rep}]_{m}")
                    }
                    _ => "residue wedge".to_string(),
                };
                r.values.push(ReportValue {
                    name: format!("boundary at {place}"),
                    value: format!("{} * {}", t.coeff, head),
                    tolerance: None,
                    provenance: "symbols::boundary".into(),
                });
            }
            r
        }
        Command::IsGlobal { manifest, tol } => {
            let mut r = Report::new("is-global", serde_json::to_value(manifest).unwrap());
            let e = manifest.chain()?;
            r.verdicts.push(e.is_global(*tol, 1e-12)?);
            r
        }
        Command::VerifyBoundary {
            manifest,
            place,
            tol,
            factor,
        } => {
            let mut r = Report::new("verify-boundary", serde_json::to_value(manifest).unwrap());
            let e = manifest.chain()?;
            r.verdicts.push(regulator::verify_boundary_with_factor(
                &e, place, *tol, *factor, 1e-12,
            )?);
            r
        }
        Command::Residue { manifest, place } => {
            let mut r = Report::new("residue", serde_json::to_value(manifest).unwrap());
            let e = manifest.chain()?;
            let integrand = regulator::ResidueIntegrand::new(&e, regulator::ResidueVersion::PMod)?;
            let radii = manifest.task.radii.clone();
            let with_radii = |mut spec: regulator::ContourSpec| {
                if let Some(radii) = &radii {
                    spec.radii = radii.clone();
                }
                spec
            };
            match place {
                Place::Infinity => {
                    let sub = integrand.substitute_inverse();
                    let spec = with_radii(regulator::ContourSpec::around(Complex64::new(0.0, 0.0)));
                    let v = regulator::contour_residue(&sub, &spec)?;
                    r.values.push(ReportValue {
                        name: "contour residue at inf".into(),
                        value: format!("{v}"),
                        tolerance: Some(1e-4),
                        provenance: "regulator::contour_residue".into(),
                    });
                }
                _ => {
                    for emb in place.embeddings(1e-12)? {
                        let spec = with_radii(regulator::ContourSpec::around(emb.root));
                        let v = regulator::contour_residue(&integrand, &spec)?;
                        r.values.push(ReportValue {
                            name: format!("contour residue at {place}, root {}", emb.root),
                            value: format!("{v}"),
                            tolerance: Some(1e-4),
                            provenance: "regulator::contour_residue".into(),
                        });
                    }
                }
            }
            r
        }
        Command::Constancy {
            relation,
            n,
            samples,
            tol,
        } => {
            let mut r = Report::new(
                "constancy",
                serde_json::json!({"relation": relation.provenance, "n": n}),
            );
            r.verdicts
                .push(regulator::constancy_check(&relation.terms, *n, *samples, *tol)?);
            r
        }
        Command::StandardIntegral { which, c } => {
            let kind = match which.as_str() {
                "diarg-dlog" => regulator::StandardIntegral::DiargDlog,
                "diarg-diarg" => regulator::StandardIntegral::DiargDiarg,
                "dlog-dlogbar" => regulator::StandardIntegral::DlogDlogbar,
                "bump" => regulator::StandardIntegral::Bump,
                "dh" => regulator::StandardIntegral::Dh,
                other => {
                    return Err(Error::Invalid(format!(
                        "unknown standard integral '{other}' (diarg-dlog, diarg-diarg, dlog-dlogbar, bump, dh)"
                    )))
                }
            };
            let mut r = Report::new(
                "standard-integral",
                serde_json::json!({"which": which, "c": format!("{c}")}),
            );
            r.verdicts.push(regulator::standard_integral(kind, *c)?);
            r
        }
        Command::Thm34Check { f, g, n, samples } => {
            let mut r = Report::new(
                "thm34-check",
                serde_json::json!({"f": format!("{f}"), "g": format!("{g}"), "n": n}),
            );
            r.verdicts
                .push(regulator::inversion_vanish_check(f, g, *n, *samples, 1e-12)?);
            r
        }
        Command::Relation {
            relation,
            n,
            mode,
            tol,
        } => {
            let mut r = Report::new(
                "relation",
                serde_json::json!({"relation": relation.provenance, "n": n}),
            );
            r.verdicts
                .push(relations::verify_relation(relation, *n, *mode, *tol)?);
            r
        }
        Command::FormalCancellation { n } => {
            let mut r = Report::new("lemma419", serde_json::json!({ "n": n }));
            r.verdicts.push(symbols::correction_form::cancellation_check(*n));
            r
        }
        Command::Identities { manifest } => {
            let mut r = Report::new("identities", serde_json::to_value(manifest).unwrap());
            let e = manifest.chain()?;
            r.verdicts.push(symbols::identity_suite(&e)?);
            r
        }
        Command::RegDet { r_mat, t_mat, n } => {
            let mut r = Report::new("reg-det", serde_json::json!({ "n": n }));
            let (val, resid) = regulator::regulator_determinant(r_mat, t_mat, *n)?;
            r.values.push(ReportValue {
                name: "c_{n+1}".into(),
                value: format!("{val:.16e}"),
                tolerance: Some(1e-12),
                provenance: "regulator::regulator_determinant".into(),
            });
            r.values.push(ReportValue {
                name: "imaginary residual".into(),
                value: format!("{resid:.3e}"),
                tolerance: Some(1e-9),
                provenance: "regulator::regulator_determinant".into(),
            });
            r
        }
    };
    report.wall_ms = start.elapsed().as_millis();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Generator;
    use crate::poly::q_int;

    #[test]
    fn parses_rational_functions() {
        let f = parse_expr("(t^2-1)/(t-3)").unwrap();
        let c = f.coordinates();
        assert_eq!(c.len(), 3);
        assert_eq!(
            c.get(&Generator::Poly(Poly::from_ints(&[-3, 1]))),
            Some(&q_int(-1))
        );
        // matches the one_minus example
        let g = parse_expr("1 - t^2/(t^2-1)").unwrap();
        let c = g.coordinates();
        assert_eq!(
            c.get(&Generator::Poly(Poly::from_ints(&[-1, 1]))),
            Some(&q_int(-1))
        );
        assert_eq!(
            c.get(&Generator::Poly(Poly::from_ints(&[1, 1]))),
            Some(&q_int(-1))
        );
    }

    #[test]
    fn rejects_fractional_exponents_and_floats() {
        assert!(matches!(parse_expr("t^(1/2)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("1.5*t"), Err(Error::Parse { .. })));
        assert!(parse_expr("t^-2").is_ok());
    }

    #[test]
    fn reports_error_positions() {
        let Err(Error::Parse { pos, .. }) = parse_expr("t + (t*") else {
            panic!("expected parse error");
        };
        assert!(pos >= 6);
        assert!(matches!(parse_expr("1/(t-t)"), Err(Error::Parse { .. })));
    }

    #[test]
    fn parses_places() {
        assert!(matches!(parse_place("t-3").unwrap(), Place::Rational(_)));
        assert!(matches!(parse_place("t^2+1").unwrap(), Place::Algebraic(_)));
        assert!(matches!(parse_place("inf").unwrap(), Place::Infinity));
        assert!(parse_place("t^2-1").is_err());
    }

    #[test]
    fn parses_complex_literals() {
        assert_eq!(parse_complex("3").unwrap(), Complex64::new(3.0, 0.0));
        assert_eq!(parse_complex("0+1i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("-2.5-0.5i").unwrap(), Complex64::new(-2.5, -0.5));
        assert_eq!(parse_complex("1e-3+2e-4i").unwrap(), Complex64::new(1e-3, 2e-4));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
    }

    #[test]
    fn manifest_roundtrip_is_idempotent_after_canonicalization() {
        let json = r#"{
            "weight": 4, "variant": "Mtilde",
            "terms": [
                {"coeff": "1", "order": 3, "arg": "t", "wedge": ["t-3"]},
                {"coeff": "1", "order": 3, "arg": "t^-1", "wedge": ["t/(t-3)"]}
            ],
            "relation_pool": ["inversion(x=t)"],
            "task": {"place": "t-3", "tol": 1e-4}
        }"#;
        let mut warn = vec![];
        let m = Manifest::from_json(json, true, &mut warn).unwrap();
        let e = m.chain().unwrap();
        assert_eq!(e.degree, 2);
        let m2 = Manifest::from_chain(&e, &m.relation_pool, m.task.clone());
        let e2 = m2.chain().unwrap();
        let m3 = Manifest::from_chain(&e2, &m2.relation_pool, m2.task.clone());
        assert_eq!(
            serde_json::to_string(&m2).unwrap(),
            serde_json::to_string(&m3).unwrap()
        );
        assert_eq!(e.canonical(), e2.canonical());
    }

    #[test]
    fn strict_mode_rejects_unknown_fields() {
        let json = r#"{"weight": 3, "variant": "M", "terms": [], "extra": 1}"#;
        let mut warn = vec![];
        assert!(Manifest::from_json(json, true, &mut warn).is_err());
        let m = Manifest::from_json(json, false, &mut warn).unwrap();
        assert_eq!(m.weight, 3);
        assert_eq!(warn.len(), 1);
    }

    #[test]
    fn rejects_float_coefficients() {
        let json = r#"{
            "weight": 3, "variant": "M",
            "terms": [{"coeff": "0.5", "order": 2, "arg": "t", "wedge": ["t-1"]}]
        }"#;
        let mut warn = vec![];
        let m = Manifest::from_json(json, true, &mut warn).unwrap();
        assert!(m.chain().is_err());
    }

    #[test]
    fn relation_strings_parse() {
        let r = parse_relation("five_term(x=t, y=1/2)").unwrap();
        assert_eq!(r.terms.len(), 5);
        let r = parse_relation("goncharov22(a1=2, a2=3, a3=5)").unwrap();
        assert_eq!(r.terms.len(), 23);
        assert!(parse_relation("unknown(x=1)").is_err());
    }
}
