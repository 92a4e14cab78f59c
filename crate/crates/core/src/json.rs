//! JSON input schemas and output forms.
//!
//! Every input declares its ring as `"vars": [...]` with an optional
//! `"order": "grevlex" | "lex"`. Polynomials are expression strings parsed
//! against that ring. Errors name the offending field, e.g.
//! `entries[1][0]: syntax error at 3: ...`.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::complexes::{be_complex, koszul_complex, ChainComplex, ChainMapReport};
use crate::error::{Error, Result};
use crate::linalg::{PolyMatrix, SkewMatrix};
use crate::ring::{parse, Ctx, Ideal, MonomialOrder, Polynomial, VarContext};
use crate::unproj::{
    CiData, Intermediate, JerryData, JerryIndex, Kind, TomData, TomIndex, UnprojectionInput,
    UnprojectionResult,
};

fn at(path: &str, e: Error) -> Error {
    Error::InvalidInput(format!("{path}: {e}"))
}

/// Parses a whole JSON document, reporting line and column on failure.
pub fn from_str<T: for<'de> Deserialize<'de>>(source: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("{source}: {e}")))
}

/// Builds the ring; `order` overrides the document's `"order"` when given.
pub fn ring(vars: &[String], order: Option<&str>, override_order: Option<MonomialOrder>) -> Result<Ctx> {
    let order = match (override_order, order) {
        (Some(o), _) => o,
        (None, Some(s)) => s.parse().map_err(|e| at("order", e))?,
        (None, None) => MonomialOrder::default(),
    };
    VarContext::new(vars, order).map_err(|e| at("vars", e))
}

pub fn poly(ctx: &Ctx, path: &str, text: &str) -> Result<Polynomial> {
    parse(ctx, text).map_err(|e| at(path, e))
}

pub fn polys(ctx: &Ctx, path: &str, texts: &[String]) -> Result<Vec<Polynomial>> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| poly(ctx, &format!("{path}[{i}]"), t))
        .collect()
}

fn required<'a, T>(field: &'a Option<T>, name: &str) -> Result<&'a T> {
    field
        .as_ref()
        .ok_or_else(|| Error::InvalidInput(format!("missing field \"{name}\"")))
}

/// A matrix: either full `entries` (row lists) or, for skew matrices,
/// `size` plus the strict `upper` triangle row by row.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    pub entries: Option<Vec<Vec<String>>>,
    pub size: Option<usize>,
    pub upper: Option<Vec<String>>,
}

impl MatrixSpec {
    pub fn matrix(&self, ctx: &Ctx, path: &str) -> Result<PolyMatrix> {
        if self.upper.is_some() {
            return Ok(self.skew(ctx, path)?.into_matrix());
        }
        let entries = self
            .entries
            .as_ref()
            .ok_or_else(|| Error::InvalidInput(format!("{path}: needs \"entries\" or \"size\"/\"upper\"")))?;
        if entries.is_empty() || entries[0].is_empty() {
            return Err(Error::InvalidInput(format!("{path}.entries: matrix must be nonempty")));
        }
        let mut rows = Vec::with_capacity(entries.len());
        for (i, row) in entries.iter().enumerate() {
            if row.len() != entries[0].len() {
                return Err(Error::InvalidInput(format!(
                    "{path}.entries[{i}]: row has {} entries, expected {}",
                    row.len(),
                    entries[0].len()
                )));
            }
            rows.push(polys(ctx, &format!("{path}.entries[{i}]"), row)?);
        }
        let m = PolyMatrix::from_rows(ctx, rows).map_err(|e| at(path, e))?;
        if let Some(r) = self.rows {
            if r != m.rows() {
                return Err(Error::InvalidInput(format!(
                    "{path}.rows: declared {r}, entries have {}",
                    m.rows()
                )));
            }
        }
        if let Some(c) = self.cols {
            if c != m.cols() {
                return Err(Error::InvalidInput(format!(
                    "{path}.cols: declared {c}, entries have {}",
                    m.cols()
                )));
            }
        }
        Ok(m)
    }

    pub fn skew(&self, ctx: &Ctx, path: &str) -> Result<SkewMatrix> {
        match (&self.upper, self.size) {
            (Some(upper), Some(size)) => {
                let upper = polys(ctx, &format!("{path}.upper"), upper)?;
                SkewMatrix::from_upper(ctx, size, upper).map_err(|e| at(path, e))
            }
            (Some(_), None) => Err(Error::InvalidInput(format!("{path}: \"upper\" needs \"size\""))),
            _ => SkewMatrix::from_matrix(self.matrix(ctx, path)?).map_err(|e| at(path, e)),
        }
    }
}

/// Input of `pfaffian`, `det` and `wedge`: a ring plus the fields of
/// [`MatrixSpec`] at the top level.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixInput {
    pub vars: Vec<String>,
    pub order: Option<String>,
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    pub entries: Option<Vec<Vec<String>>>,
    pub size: Option<usize>,
    pub upper: Option<Vec<String>>,
}

impl MatrixInput {
    pub fn spec(&self) -> MatrixSpec {
        MatrixSpec {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.clone(),
            size: self.size,
            upper: self.upper.clone(),
        }
    }
}

/// A complex: `{"koszul": [...]}`, `{"be": matrix}` or `{"diffs": [matrix, ...]}`
/// with `diffs[0] = d_1`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub koszul: Option<Vec<String>>,
    pub be: Option<MatrixSpec>,
    pub diffs: Option<Vec<MatrixSpec>>,
}

impl ComplexSpec {
    pub fn build(&self, ctx: &Ctx, path: &str) -> Result<ChainComplex> {
        match (&self.koszul, &self.be, &self.diffs) {
            (Some(w), None, None) => {
                koszul_complex(&polys(ctx, &format!("{path}.koszul"), w)?).map_err(|e| at(path, e))
            }
            (None, Some(m), None) => {
                be_complex(&m.skew(ctx, &format!("{path}.be"))?).map_err(|e| at(path, e))
            }
            (None, None, Some(ds)) => {
                let mats = ds
                    .iter()
                    .enumerate()
                    .map(|(i, m)| m.matrix(ctx, &format!("{path}.diffs[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                ChainComplex::new(ctx, mats).map_err(|e| at(path, e))
            }
            _ => Err(Error::InvalidInput(format!(
                "{path}: give exactly one of \"koszul\", \"be\", \"diffs\""
            ))),
        }
    }
}

/// Input of `koszul`: either `"w"` (Koszul complex) or `"skew"` (the
/// Pfaffian complex of an odd skew matrix).
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KoszulInput {
    pub vars: Vec<String>,
    pub order: Option<String>,
    pub w: Option<Vec<String>>,
    pub skew: Option<MatrixSpec>,
}

impl KoszulInput {
    pub fn build(&self, ctx: &Ctx) -> Result<ChainComplex> {
        match (&self.w, &self.skew) {
            (Some(w), None) => koszul_complex(&polys(ctx, "w", w)?).map_err(|e| at("w", e)),
            (None, Some(m)) => be_complex(&m.skew(ctx, "skew")?).map_err(|e| at("skew", e)),
            _ => Err(Error::InvalidInput(
                "give exactly one of \"w\" and \"skew\"".into(),
            )),
        }
    }
}

/// Input of `unproject`.
///
/// Tom and Jerry take `"x"`, `"z"` and `"coeffs"` (names such as `a24_1`
/// or `b3_4`; missing ones are zero). CI takes `"q"` (an `r x (r+1)` row
/// list) and `"w"`, with `"v"` optional and checked against `Q w`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnprojectInput {
    pub kind: Option<String>,
    pub vars: Vec<String>,
    pub order: Option<String>,
    pub x: Option<Vec<String>>,
    pub z: Option<Vec<String>>,
    #[serde(default)]
    pub coeffs: BTreeMap<String, String>,
    pub q: Option<Vec<Vec<String>>>,
    pub v: Option<Vec<String>>,
    pub w: Option<Vec<String>>,
    pub tname: Option<String>,
}

impl UnprojectInput {
    pub fn kind(&self, flag: Option<Kind>) -> Result<Kind> {
        let given = self
            .kind
            .as_deref()
            .map(|k| k.parse::<Kind>().map_err(|e| at("kind", e)))
            .transpose()?;
        match (flag, given) {
            (Some(a), Some(b)) if a != b => Err(Error::InvalidInput(format!(
                "kind: --kind {a} disagrees with input kind {b}"
            ))),
            (Some(k), _) | (None, Some(k)) => Ok(k),
            (None, None) => Err(Error::InvalidInput("missing field \"kind\"".into())),
        }
    }

    pub fn build(&self, ctx: &Ctx, kind: Kind) -> Result<UnprojectionInput> {
        let field = |f: &Option<Vec<String>>, name: &str| -> Result<Vec<Polynomial>> {
            polys(ctx, name, required(f, name)?)
        };
        match kind {
            Kind::Ci => {
                if !self.coeffs.is_empty() || self.x.is_some() || self.z.is_some() {
                    return Err(Error::InvalidInput(
                        "ci input takes \"q\", \"w\" and optional \"v\" only".into(),
                    ));
                }
                let rows = required(&self.q, "q")?;
                let spec = MatrixSpec {
                    entries: Some(rows.clone()),
                    ..MatrixSpec::default()
                };
                let q = spec.matrix(ctx, "q")?;
                let w = field(&self.w, "w")?;
                let d = match &self.v {
                    Some(v) => CiData::new(polys(ctx, "v", v)?, w, q),
                    None => CiData::from_q(q, w),
                };
                Ok(UnprojectionInput::Ci(d.map_err(|e| at("q", e))?))
            }
            Kind::Tom => {
                if self.q.is_some() || self.v.is_some() || self.w.is_some() {
                    return Err(Error::InvalidInput(
                        "tom input takes \"x\", \"z\" and \"coeffs\" only".into(),
                    ));
                }
                let mut coeffs = Vec::new();
                for (k, v) in &self.coeffs {
                    let path = format!("coeffs.{k}");
                    let idx = TomIndex::parse(k).map_err(|e| at(&path, e))?;
                    coeffs.push((idx, poly(ctx, &path, v)?));
                }
                let d = TomData::new(ctx, field(&self.x, "x")?, field(&self.z, "z")?, coeffs)?;
                Ok(UnprojectionInput::Tom(d))
            }
            Kind::Jerry => {
                if self.q.is_some() || self.v.is_some() || self.w.is_some() {
                    return Err(Error::InvalidInput(
                        "jerry input takes \"x\", \"z\" and \"coeffs\" only".into(),
                    ));
                }
                let mut coeffs = Vec::new();
                for (k, v) in &self.coeffs {
                    let path = format!("coeffs.{k}");
                    let idx = JerryIndex::parse(k).map_err(|e| at(&path, e))?;
                    coeffs.push((idx, poly(ctx, &path, v)?));
                }
                let d = JerryData::new(ctx, field(&self.x, "x")?, field(&self.z, "z")?, coeffs)?;
                Ok(UnprojectionInput::Jerry(d))
            }
        }
    }
}

/// Input of `verify member`, `verify equal` and `verify chain-map`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyInput {
    pub vars: Vec<String>,
    pub order: Option<String>,
    pub ideal: Option<Vec<String>>,
    pub poly: Option<String>,
    pub polys: Option<Vec<String>>,
    pub left: Option<Vec<String>>,
    pub right: Option<Vec<String>>,
    pub tvar: Option<String>,
    pub source: Option<ComplexSpec>,
    pub target: Option<ComplexSpec>,
    pub verticals: Option<Vec<MatrixSpec>>,
}

impl VerifyInput {
    pub fn member(&self, ctx: &Ctx) -> Result<(Ideal, Vec<Polynomial>)> {
        let ideal = Ideal::new(ctx, polys(ctx, "ideal", required(&self.ideal, "ideal")?)?)?;
        let ps = match (&self.poly, &self.polys) {
            (Some(p), None) => vec![poly(ctx, "poly", p)?],
            (None, Some(ps)) => polys(ctx, "polys", ps)?,
            _ => {
                return Err(Error::InvalidInput(
                    "give exactly one of \"poly\" and \"polys\"".into(),
                ))
            }
        };
        Ok((ideal, ps))
    }

    pub fn equal(&self, ctx: &Ctx) -> Result<(Ideal, Ideal)> {
        let left = Ideal::new(ctx, polys(ctx, "left", required(&self.left, "left")?)?)?;
        let right = Ideal::new(ctx, polys(ctx, "right", required(&self.right, "right")?)?)?;
        Ok((left, right))
    }

    pub fn chain_map(&self, ctx: &Ctx) -> Result<(ChainComplex, ChainComplex, Vec<PolyMatrix>)> {
        let source = required(&self.source, "source")?.build(ctx, "source")?;
        let target = required(&self.target, "target")?.build(ctx, "target")?;
        let verticals = required(&self.verticals, "verticals")?
            .iter()
            .enumerate()
            .map(|(i, m)| m.matrix(ctx, &format!("verticals[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        Ok((source, target, verticals))
    }
}

pub fn texts(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

pub fn matrix_value(m: &PolyMatrix) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m.to_rows_text(),
    })
}

pub fn complex_value(c: &ChainComplex) -> Value {
    json!({
        "vars": c.context().names(),
        "diffs": c.diffs().iter().map(matrix_value).collect::<Vec<_>>(),
    })
}

pub fn report_value(r: &ChainMapReport) -> Value {
    let squares: Vec<Value> = r
        .squares
        .iter()
        .map(|s| {
            json!({
                "index": s.index,
                "commutes": s.commutes(),
                "difference": s.difference.as_ref().map(matrix_value),
                "shape_error": s.shape_error,
            })
        })
        .collect();
    json!({ "pass": r.pass(), "squares": squares })
}

pub fn unprojection_value(r: &UnprojectionResult, show_work: bool) -> Value {
    let mut out = Map::new();
    out.insert("kind".into(), json!(r.kind().as_str()));
    out.insert("vars".into(), json!(r.context().names()));
    out.insert("tname".into(), json!(r.unproj_var));
    out.insert("ideal".into(), json!(texts(r.ideal.gens())));
    out.insert("g".into(), json!(texts(&r.g)));
    if show_work {
        let work: Vec<Value> = r
            .work
            .iter()
            .map(|(name, item)| match item {
                Intermediate::Matrix(m) => json!({ "name": name, "matrix": matrix_value(m) }),
                Intermediate::List(l) => json!({ "name": name, "list": texts(l) }),
            })
            .collect();
        out.insert("work".into(), Value::Array(work));
    }
    Value::Object(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_input_forms() {
        let m: MatrixInput = from_str("t", r#"{"vars":["a"],"entries":[["0","a"],["-a","0"]]}"#).unwrap();
        let ctx = ring(&m.vars, m.order.as_deref(), None).unwrap();
        let spec = m.spec();
        assert_eq!(spec.skew(&ctx, "").unwrap().size(), 2);
        let u: MatrixInput = from_str("t", r#"{"vars":["a"],"size":2,"upper":["a"]}"#).unwrap();
        let spec = u.spec();
        assert_eq!(spec.matrix(&ctx, "").unwrap().to_rows_text(), [["0", "a"], ["-a", "0"]]);
    }

    #[test]
    fn errors_name_the_field() {
        let m: MatrixInput = from_str("t", r#"{"vars":["a"],"entries":[["0","a"],["-a","b"]]}"#).unwrap();
        let ctx = ring(&m.vars, None, None).unwrap();
        let e = m.spec().matrix(&ctx, "matrix").unwrap_err();
        assert!(e.to_string().contains("matrix.entries[1][1]"), "{e}");

        let e = from_str::<MatrixInput>("in.json", "{\"vars\": [\"a\"],\n \"bogus\": 1}").unwrap_err();
        assert!(e.to_string().contains("in.json") && e.to_string().contains("line 2"), "{e}");

        let e = ring(&["a".into(), "a".into()], None, None).unwrap_err();
        assert!(e.to_string().starts_with("invalid input: vars"), "{e}");
        let e = ring(&["a".into()], Some("deglex"), None).unwrap_err();
        assert!(e.to_string().contains("order"), "{e}");
    }

    #[test]
    fn unproject_inputs() {
        let text = r#"{"kind":"tom","vars":["x1","x2","x3","x4","z1","z2","z3","z4"],
            "x":["x1","x2","x3","x4"],"z":["z1","z2","z3","z4"],
            "coeffs":{"a24_1":"1","a25_2":"1","a34_3":"1","a35_4":"1"}}"#;
        let u: UnprojectInput = from_str("t", text).unwrap();
        let ctx = ring(&u.vars, None, None).unwrap();
        assert_eq!(u.kind(None).unwrap(), Kind::Tom);
        assert!(u.kind(Some(Kind::Jerry)).is_err());
        assert!(u.build(&ctx, Kind::Tom).is_ok());
        assert!(u.build(&ctx, Kind::Ci).is_err());

        let bad = text.replace("a35_4", "a35_5");
        let u: UnprojectInput = from_str("t", &bad).unwrap();
        let e = u.build(&ctx, Kind::Tom).unwrap_err();
        assert!(e.to_string().contains("coeffs.a35_5"), "{e}");

        let ci = r#"{"kind":"ci","vars":["x","y"],"q":[["y","x"]],"w":["x","y"],"v":["x*y"]}"#;
        let u: UnprojectInput = from_str("t", ci).unwrap();
        let ctx = ring(&u.vars, None, None).unwrap();
        assert!(u.build(&ctx, Kind::Ci).is_err());
    }

    #[test]
    fn complex_specs() {
        let v: VerifyInput = from_str(
            "t",
            r#"{"vars":["x","y"],"source":{"koszul":["x","y"]},"target":{"koszul":["x","y"]},
               "verticals":[{"entries":[["1"]]},{"entries":[["1","0"],["0","1"]]},{"entries":[["1"]]}]}"#,
        )
        .unwrap();
        let ctx = ring(&v.vars, None, None).unwrap();
        let (s, t, d) = v.chain_map(&ctx).unwrap();
        assert!(crate::complexes::verify_chain_map(&s, &t, &d).unwrap().pass());
        let bad: ComplexSpec = from_str("t", r#"{"koszul":["x"],"diffs":[]}"#).unwrap();
        assert!(bad.build(&ctx, "source").is_err());
    }
}
