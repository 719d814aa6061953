//! JSON problem descriptions: parsing with path-located diagnostics and
//! canonical emission.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "name": "translations-r2",
//!   "lie_algebra": {
//!     "dim": 2,
//!     "basis": ["e1", "e2"],
//!     "brackets": [{ "left": "e1", "right": "e2", "value": "0" }]
//!   },
//!   "r": [["e1", "e2", "1"]],
//!   "action": { "coords": ["x", "y"], "fields": { "e1": ["1", "0"], "e2": ["0", "1"] } },
//!   "cometric": [["1", "0"], ["0", "1"]],
//!   "volume": "1",
//!   "probes": [["0", "0"], ["1", "-1/2"]],
//!   "parallel_candidates": [["1", "0"], ["0", "1"]],
//!   "base_point": ["0", "0"],
//!   "expect": { "freeness": "fail" }
//! }
//! ```
//!
//! Every coefficient is a string in the polynomial expression grammar.
//! Bracket values are linear combinations of basis names. `r` entries
//! `[a, b, c]` set `r^{ab} = c` (so `r^{ba} = -c`). All coordinate-dependent
//! fields need `action`.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Map, Value};

use crate::geomcalc::{Chart, KForm, VectorField};
use crate::liealg::{AlgBivector, BracketTable};
use crate::pipeline::{CheckName, Verdict};
use crate::polyalg::{parse_poly, vars, MultiPoly, Rat, Vars};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ErrorCode {
    JsonSyntax,
    Schema,
    SchemaVersion,
    UnknownIdentifier,
    MalformedExpression,
    NonAntisymmetricR,
    DuplicateName,
    BracketOrder,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::JsonSyntax => "E001-json-syntax",
            ErrorCode::Schema => "E002-schema",
            ErrorCode::SchemaVersion => "E003-schema-version",
            ErrorCode::UnknownIdentifier => "E004-unknown-identifier",
            ErrorCode::MalformedExpression => "E005-malformed-expression",
            ErrorCode::NonAntisymmetricR => "E006-non-antisymmetric-r",
            ErrorCode::DuplicateName => "E007-duplicate-name",
            ErrorCode::BracketOrder => "E008-bracket-order",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemError {
    pub code: ErrorCode,
    /// JSON path of the offending value, e.g. `$.lie_algebra.brackets[1].value`.
    pub path: String,
    pub message: String,
}

impl fmt::Display for ProblemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.code.as_str(), self.path, self.message)
    }
}

impl std::error::Error for ProblemError {}

fn err(code: ErrorCode, path: &str, message: impl Into<String>) -> ProblemError {
    ProblemError {
        code,
        path: path.to_string(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionSpec {
    pub coords: Vec<String>,
    /// One component list per basis element, in basis order.
    pub fields: Vec<Vec<MultiPoly>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSpec {
    pub name: Option<String>,
    pub description: Option<String>,
    pub basis: Vec<String>,
    /// `(i, j, [u_i, u_j])` with `i < j`.
    pub brackets: Vec<(usize, usize, Vec<Rat>)>,
    /// `(a, b, r^{ab})` as written.
    pub r: Vec<(usize, usize, Rat)>,
    pub action: Option<ActionSpec>,
    pub cometric: Option<Vec<Vec<MultiPoly>>>,
    pub volume: Option<MultiPoly>,
    pub probes: Vec<Vec<Rat>>,
    pub parallel_candidates: Vec<Vec<MultiPoly>>,
    pub base_point: Option<Vec<Rat>>,
    pub expect: BTreeMap<CheckName, Verdict>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn obj<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, ProblemError> {
    v.as_object()
        .ok_or_else(|| err(ErrorCode::Schema, path, "expected an object"))
}

fn arr<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, ProblemError> {
    v.as_array()
        .ok_or_else(|| err(ErrorCode::Schema, path, "expected an array"))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str, ProblemError> {
    v.as_str()
        .ok_or_else(|| err(ErrorCode::Schema, path, "expected a string"))
}

fn reject_unknown(m: &Map<String, Value>, allowed: &[&str], path: &str) -> Result<(), ProblemError> {
    for k in m.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(err(ErrorCode::Schema, &format!("{path}.{k}"), "unknown field"));
        }
    }
    Ok(())
}

fn names(v: &Value, path: &str) -> Result<Vec<String>, ProblemError> {
    let a = arr(v, path)?;
    let mut out: Vec<String> = Vec::new();
    for (i, x) in a.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let s = string(x, &p)?;
        if !is_identifier(s) {
            return Err(err(ErrorCode::Schema, &p, format!("`{s}` is not an identifier")));
        }
        if out.iter().any(|o| o == s) {
            return Err(err(ErrorCode::DuplicateName, &p, format!("`{s}` appears twice")));
        }
        out.push(s.to_string());
    }
    if out.is_empty() {
        return Err(err(ErrorCode::Schema, path, "must not be empty"));
    }
    Ok(out)
}

fn expression(v: &Value, path: &str, vs: &Vars) -> Result<MultiPoly, ProblemError> {
    let s = string(v, path)?;
    parse_poly(s, vs).map_err(|e| {
        let code = match e {
            crate::polyalg::ExprError::UnknownIdentifier { .. } => ErrorCode::UnknownIdentifier,
            _ => ErrorCode::MalformedExpression,
        };
        err(code, path, e.to_string())
    })
}

fn rational(v: &Value, path: &str) -> Result<Rat, ProblemError> {
    let empty = vars::<&str>(&[]);
    let p = expression(v, path, &empty)?;
    p.as_constant()
        .ok_or_else(|| err(ErrorCode::MalformedExpression, path, "expected a rational constant"))
}

fn point(v: &Value, path: &str, dim: usize) -> Result<Vec<Rat>, ProblemError> {
    let a = arr(v, path)?;
    if a.len() != dim {
        return Err(err(ErrorCode::Schema, path, format!("expected {dim} coordinates, got {}", a.len())));
    }
    a.iter()
        .enumerate()
        .map(|(i, x)| rational(x, &format!("{path}[{i}]")))
        .collect()
}

fn expr_list(v: &Value, path: &str, len: usize, vs: &Vars) -> Result<Vec<MultiPoly>, ProblemError> {
    let a = arr(v, path)?;
    if a.len() != len {
        return Err(err(ErrorCode::Schema, path, format!("expected {len} entries, got {}", a.len())));
    }
    a.iter()
        .enumerate()
        .map(|(i, x)| expression(x, &format!("{path}[{i}]"), vs))
        .collect()
}

fn index(basis: &[String], name: &str, path: &str) -> Result<usize, ProblemError> {
    basis
        .iter()
        .position(|b| b == name)
        .ok_or_else(|| err(ErrorCode::UnknownIdentifier, path, format!("unknown basis element `{name}`")))
}

pub fn parse_problem(text: &[u8]) -> Result<ProblemSpec, ProblemError> {
    let root: Value = serde_json::from_slice(text)
        .map_err(|e| err(ErrorCode::JsonSyntax, "$", e.to_string()))?;
    let top = obj(&root, "$")?;
    reject_unknown(
        top,
        &[
            "schema_version",
            "name",
            "description",
            "lie_algebra",
            "r",
            "action",
            "cometric",
            "volume",
            "probes",
            "parallel_candidates",
            "base_point",
            "expect",
        ],
        "$",
    )?;
    match top.get("schema_version") {
        None => return Err(err(ErrorCode::SchemaVersion, "$.schema_version", "missing")),
        Some(v) if v.as_u64() == Some(SCHEMA_VERSION) => {}
        Some(v) => {
            return Err(err(
                ErrorCode::SchemaVersion,
                "$.schema_version",
                format!("unsupported version {v}, expected {SCHEMA_VERSION}"),
            ))
        }
    }
    let opt_string = |k: &str| -> Result<Option<String>, ProblemError> {
        top.get(k)
            .map(|v| string(v, &format!("$.{k}")).map(str::to_string))
            .transpose()
    };
    let name = opt_string("name")?;
    let description = opt_string("description")?;

    let la = obj(
        top.get("lie_algebra")
            .ok_or_else(|| err(ErrorCode::Schema, "$.lie_algebra", "missing"))?,
        "$.lie_algebra",
    )?;
    reject_unknown(la, &["dim", "basis", "brackets"], "$.lie_algebra")?;
    let basis = names(
        la.get("basis")
            .ok_or_else(|| err(ErrorCode::Schema, "$.lie_algebra.basis", "missing"))?,
        "$.lie_algebra.basis",
    )?;
    let n = basis.len();
    match la.get("dim").and_then(Value::as_u64) {
        Some(d) if d as usize == n => {}
        Some(d) => {
            return Err(err(
                ErrorCode::Schema,
                "$.lie_algebra.dim",
                format!("dim {d} does not match {n} basis names"),
            ))
        }
        None => return Err(err(ErrorCode::Schema, "$.lie_algebra.dim", "missing or not an integer")),
    }
    let bvars = vars(&basis);
    let mut brackets: Vec<(usize, usize, Vec<Rat>)> = Vec::new();
    if let Some(bv) = la.get("brackets") {
        for (k, b) in arr(bv, "$.lie_algebra.brackets")?.iter().enumerate() {
            let p = format!("$.lie_algebra.brackets[{k}]");
            let bo = obj(b, &p)?;
            reject_unknown(bo, &["left", "right", "value"], &p)?;
            let get = |f: &str| {
                bo.get(f)
                    .ok_or_else(|| err(ErrorCode::Schema, &format!("{p}.{f}"), "missing"))
            };
            let i = index(&basis, string(get("left")?, &format!("{p}.left"))?, &format!("{p}.left"))?;
            let j = index(&basis, string(get("right")?, &format!("{p}.right"))?, &format!("{p}.right"))?;
            if i >= j {
                return Err(err(
                    ErrorCode::BracketOrder,
                    &p,
                    "brackets are given only for left before right in basis order",
                ));
            }
            if brackets.iter().any(|(a, b, _)| (*a, *b) == (i, j)) {
                return Err(err(ErrorCode::DuplicateName, &p, "bracket given twice"));
            }
            let vp = format!("{p}.value");
            let val = expression(get("value")?, &vp, &bvars)?;
            let mut coeffs = vec![Rat::zero(); n];
            for (m, c) in val.terms() {
                match m.0.iter().position(|&e| e == 1) {
                    Some(pos) if m.degree() == 1 => coeffs[pos] = c.clone(),
                    _ => {
                        return Err(err(
                            ErrorCode::MalformedExpression,
                            &vp,
                            "bracket value must be a linear combination of basis elements",
                        ))
                    }
                }
            }
            brackets.push((i, j, coeffs));
        }
    }
    brackets.sort_by_key(|(i, j, _)| (*i, *j));

    let mut r = Vec::new();
    let mut seen: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
    let rv = top
        .get("r")
        .ok_or_else(|| err(ErrorCode::Schema, "$.r", "missing"))?;
    for (k, t) in arr(rv, "$.r")?.iter().enumerate() {
        let p = format!("$.r[{k}]");
        let ta = arr(t, &p)?;
        if ta.len() != 3 {
            return Err(err(ErrorCode::Schema, &p, "expected [basis, basis, coefficient]"));
        }
        let a = index(&basis, string(&ta[0], &format!("{p}[0]"))?, &format!("{p}[0]"))?;
        let b = index(&basis, string(&ta[1], &format!("{p}[1]"))?, &format!("{p}[1]"))?;
        let c = rational(&ta[2], &format!("{p}[2]"))?;
        if a == b {
            if !c.is_zero() {
                return Err(err(ErrorCode::NonAntisymmetricR, &p, "nonzero diagonal entry"));
            }
        } else {
            let (key, val) = if a < b { ((a, b), c.clone()) } else { ((b, a), -&c) };
            if let Some(prev) = seen.get(&key) {
                if *prev != val {
                    return Err(err(
                        ErrorCode::NonAntisymmetricR,
                        &p,
                        "entry contradicts an earlier entry for the same pair",
                    ));
                }
            }
            seen.insert(key, val);
        }
        r.push((a, b, c));
    }

    let action = match top.get("action") {
        None => None,
        Some(av) => {
            let ao = obj(av, "$.action")?;
            reject_unknown(ao, &["coords", "fields"], "$.action")?;
            let coords = names(
                ao.get("coords")
                    .ok_or_else(|| err(ErrorCode::Schema, "$.action.coords", "missing"))?,
                "$.action.coords",
            )?;
            let cv = vars(&coords);
            let fo = obj(
                ao.get("fields")
                    .ok_or_else(|| err(ErrorCode::Schema, "$.action.fields", "missing"))?,
                "$.action.fields",
            )?;
            for k in fo.keys() {
                index(&basis, k, &format!("$.action.fields.{k}"))?;
            }
            let mut fields = Vec::with_capacity(n);
            for b in &basis {
                let p = format!("$.action.fields.{b}");
                let v = fo
                    .get(b)
                    .ok_or_else(|| err(ErrorCode::Schema, &p, "missing field for basis element"))?;
                fields.push(expr_list(v, &p, coords.len(), &cv)?);
            }
            Some(ActionSpec { coords, fields })
        }
    };

    let needs_action = |k: &str| -> Result<&ActionSpec, ProblemError> {
        action
            .as_ref()
            .ok_or_else(|| err(ErrorCode::Schema, &format!("$.{k}"), "requires `action` for coordinates"))
    };
    let cometric = match top.get("cometric") {
        None => None,
        Some(v) => {
            let a = needs_action("cometric")?;
            let m = a.coords.len();
            let cv = vars(&a.coords);
            let rows = arr(v, "$.cometric")?;
            if rows.len() != m {
                return Err(err(ErrorCode::Schema, "$.cometric", format!("expected {m} rows")));
            }
            Some(
                rows.iter()
                    .enumerate()
                    .map(|(i, row)| expr_list(row, &format!("$.cometric[{i}]"), m, &cv))
                    .collect::<Result<Vec<_>, _>>()?,
            )
        }
    };
    let volume = match top.get("volume") {
        None => None,
        Some(v) => {
            let a = needs_action("volume")?;
            Some(expression(v, "$.volume", &vars(&a.coords))?)
        }
    };
    let probes = match top.get("probes") {
        None => Vec::new(),
        Some(v) => {
            let a = needs_action("probes")?;
            arr(v, "$.probes")?
                .iter()
                .enumerate()
                .map(|(i, p)| point(p, &format!("$.probes[{i}]"), a.coords.len()))
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    let parallel_candidates = match top.get("parallel_candidates") {
        None => Vec::new(),
        Some(v) => {
            let a = needs_action("parallel_candidates")?;
            let cv = vars(&a.coords);
            arr(v, "$.parallel_candidates")?
                .iter()
                .enumerate()
                .map(|(i, p)| expr_list(p, &format!("$.parallel_candidates[{i}]"), a.coords.len(), &cv))
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    let base_point = match top.get("base_point") {
        None => None,
        Some(v) => {
            let a = needs_action("base_point")?;
            Some(point(v, "$.base_point", a.coords.len())?)
        }
    };
    let mut expect = BTreeMap::new();
    if let Some(v) = top.get("expect") {
        for (k, x) in obj(v, "$.expect")? {
            let p = format!("$.expect.{k}");
            let check = CheckName::parse(k)
                .ok_or_else(|| err(ErrorCode::UnknownIdentifier, &p, format!("unknown check `{k}`")))?;
            let s = string(x, &p)?;
            let verdict = Verdict::parse(s)
                .ok_or_else(|| err(ErrorCode::Schema, &p, format!("unknown verdict `{s}`")))?;
            expect.insert(check, verdict);
        }
    }

    Ok(ProblemSpec {
        name,
        description,
        basis,
        brackets,
        r,
        action,
        cometric,
        volume,
        probes,
        parallel_candidates,
        base_point,
        expect,
    })
}

impl ProblemSpec {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn table(&self) -> BracketTable {
        let mut t = BracketTable::new(self.basis.clone());
        for (i, j, v) in &self.brackets {
            t.set(*i, *j, v.clone()).expect("bracket indices validated at parse time");
        }
        t
    }

    pub fn r_bivector(&self) -> AlgBivector {
        let mut seen = BTreeMap::new();
        for (a, b, c) in &self.r {
            if a < b {
                seen.insert((*a, *b), c.clone());
            } else if a > b {
                seen.insert((*b, *a), -c);
            }
        }
        let terms: Vec<(usize, usize, Rat)> = seen.into_iter().map(|((a, b), c)| (a, b, c)).collect();
        AlgBivector::from_terms(self.dim(), &terms).expect("r entries validated at parse time")
    }

    pub fn chart(&self) -> Option<Chart> {
        self.action
            .as_ref()
            .map(|a| Chart::new(&a.coords).expect("coordinates validated at parse time"))
    }

    pub fn fields(&self) -> Option<Vec<VectorField>> {
        let chart = self.chart()?;
        let a = self.action.as_ref()?;
        Some(
            a.fields
                .iter()
                .map(|f| VectorField::new(&chart, f.clone()).expect("field shape validated at parse time"))
                .collect(),
        )
    }

    pub fn candidates(&self) -> Vec<KForm> {
        let Some(chart) = self.chart() else {
            return Vec::new();
        };
        self.parallel_candidates
            .iter()
            .map(|c| KForm::one_form(&chart, c.clone()).expect("candidate shape validated at parse time"))
            .collect()
    }

    /// `base_point`, else the first probe, else the origin.
    pub fn effective_base_point(&self) -> Option<Vec<Rat>> {
        let a = self.action.as_ref()?;
        Some(
            self.base_point
                .clone()
                .or_else(|| self.probes.first().cloned())
                .unwrap_or_else(|| vec![Rat::zero(); a.coords.len()]),
        )
    }

    /// Canonical JSON; `parse_problem` of the result reproduces `self`.
    pub fn to_json(&self) -> Value {
        let mut top = Map::new();
        top.insert("schema_version".into(), json!(SCHEMA_VERSION));
        if let Some(n) = &self.name {
            top.insert("name".into(), json!(n));
        }
        if let Some(d) = &self.description {
            top.insert("description".into(), json!(d));
        }
        let bvars = vars(&self.basis);
        let brackets: Vec<Value> = self
            .brackets
            .iter()
            .map(|(i, j, v)| {
                let mut p = MultiPoly::zero(&bvars);
                for (k, c) in v.iter().enumerate() {
                    p = &p + &MultiPoly::var_at(&bvars, k).scale(c);
                }
                json!({ "left": self.basis[*i], "right": self.basis[*j], "value": p.to_string() })
            })
            .collect();
        top.insert(
            "lie_algebra".into(),
            json!({ "dim": self.dim(), "basis": self.basis, "brackets": brackets }),
        );
        let r: Vec<Value> = self
            .r
            .iter()
            .map(|(a, b, c)| json!([self.basis[*a], self.basis[*b], c.to_string()]))
            .collect();
        top.insert("r".into(), Value::Array(r));
        let strs = |v: &[MultiPoly]| -> Value { v.iter().map(|p| p.to_string()).collect() };
        let rats = |v: &[Rat]| -> Value { v.iter().map(|p| p.to_string()).collect() };
        if let Some(a) = &self.action {
            let mut fields = Map::new();
            for (b, f) in self.basis.iter().zip(&a.fields) {
                fields.insert(b.clone(), strs(f));
            }
            top.insert("action".into(), json!({ "coords": a.coords, "fields": fields }));
        }
        if let Some(g) = &self.cometric {
            top.insert("cometric".into(), g.iter().map(|r| strs(r)).collect());
        }
        if let Some(v) = &self.volume {
            top.insert("volume".into(), json!(v.to_string()));
        }
        if !self.probes.is_empty() {
            top.insert("probes".into(), self.probes.iter().map(|p| rats(p)).collect());
        }
        if !self.parallel_candidates.is_empty() {
            top.insert(
                "parallel_candidates".into(),
                self.parallel_candidates.iter().map(|c| strs(c)).collect(),
            );
        }
        if let Some(b) = &self.base_point {
            top.insert("base_point".into(), rats(b));
        }
        if !self.expect.is_empty() {
            let e: Map<String, Value> = self
                .expect
                .iter()
                .map(|(k, v)| (k.as_str().to_string(), json!(v.as_str())))
                .collect();
            top.insert("expect".into(), Value::Object(e));
        }
        Value::Object(top)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("JSON values serialize")
    }
}

/// Probe points from a standalone JSON file: an array of points.
pub fn parse_probes(text: &[u8], dim: usize) -> Result<Vec<Vec<Rat>>, ProblemError> {
    let root: Value = serde_json::from_slice(text)
        .map_err(|e| err(ErrorCode::JsonSyntax, "$", e.to_string()))?;
    arr(&root, "$")?
        .iter()
        .enumerate()
        .map(|(i, p)| point(p, &format!("$[{i}]"), dim))
        .collect()
}
