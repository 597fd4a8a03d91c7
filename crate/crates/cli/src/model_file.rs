//! JSON model files. Scalars are strings `"p/q"` (or JSON integers) or
//! `{"re": .., "im": ..}` objects; all indices are 1-based.

use algebroid_core::algebroid::Presentation;
use algebroid_core::linalg::Matrix;
use algebroid_core::scalar::{format_rational, parse_rational};
use algebroid_core::Rational;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::error::CliError;

/// A parsed model, kept close to the file layout so that serializing and
/// re-parsing is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelFile {
    pub rank: usize,
    /// `(i, j, k, c)` with `i < j`, 0-based.
    pub structure: Vec<(usize, usize, usize, Rational)>,
    pub anchor: Option<Matrix<Rational>>,
    pub metric: Option<Matrix<Rational>>,
    pub complex_structure: Option<Matrix<Rational>>,
    /// `(i, j, c)` with `i < j`, 0-based.
    pub omega: Vec<(usize, usize, Rational)>,
    pub has_omega: bool,
    pub eta: Option<Rational>,
}

fn err(path: &str, message: impl Into<String>) -> CliError {
    CliError::Parse {
        location: path.to_string(),
        message: message.into(),
    }
}

fn parse_scalar(v: &Value, path: &str) -> Result<Rational, CliError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| err(path, e.0)),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::from_integer(i.into())),
            None => Err(err(path, format!("{n} is not an exact integer; write fractions as \"p/q\""))),
        },
        Value::Object(o) => {
            let re = o.get("re").map(|x| parse_scalar(x, &format!("{path}.re"))).transpose()?;
            let im = o.get("im").map(|x| parse_scalar(x, &format!("{path}.im"))).transpose()?;
            if let Some(key) = o.keys().find(|k| *k != "re" && *k != "im") {
                return Err(err(path, format!("unexpected key \"{key}\" in complex scalar")));
            }
            if im.as_ref().is_some_and(|x| !x.is_zero()) {
                return Err(err(path, "model data must be real; imaginary part is nonzero"));
            }
            Ok(re.unwrap_or_else(Rational::zero))
        }
        _ => Err(err(path, "expected a scalar string \"p/q\" or {\"re\", \"im\"}")),
    }
}

fn parse_index(v: Option<&Value>, path: &str, rank: usize) -> Result<usize, CliError> {
    let v = v.ok_or_else(|| err(path, "missing index"))?;
    let n = v
        .as_u64()
        .ok_or_else(|| err(path, "index must be a positive integer"))? as usize;
    if n == 0 || n > rank {
        return Err(err(path, format!("index {n} outside 1..{rank}")));
    }
    Ok(n - 1)
}

fn parse_matrix(v: &Value, path: &str, rows: usize, cols: usize) -> Result<Matrix<Rational>, CliError> {
    let arr = v.as_array().ok_or_else(|| err(path, "expected an array of rows"))?;
    if arr.len() != rows {
        return Err(err(path, format!("expected {rows} rows, found {}", arr.len())));
    }
    let mut out = Vec::with_capacity(rows);
    for (i, row) in arr.iter().enumerate() {
        let rp = format!("{path}[{i}]");
        let r = row.as_array().ok_or_else(|| err(&rp, "expected a row array"))?;
        if r.len() != cols {
            return Err(err(&rp, format!("expected {cols} entries, found {}", r.len())));
        }
        out.push(
            r.iter()
                .enumerate()
                .map(|(j, x)| parse_scalar(x, &format!("{rp}[{j}]")))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok(if rows == 0 { Matrix::zeros(0, cols) } else { Matrix::from_rows(out) })
}

fn entries<'a>(doc: &'a Map<String, Value>, key: &str) -> Result<&'a [Value], CliError> {
    match doc.get(key) {
        None | Some(Value::Null) => Ok(&[]),
        Some(Value::Array(a)) => Ok(a),
        Some(_) => Err(err(key, "expected an array")),
    }
}

impl ModelFile {
    /// Parses a model; JSON syntax errors carry line and column, semantic
    /// errors a JSON path.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let value: Value = serde_json::from_str(text).map_err(|e| CliError::Parse {
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        Self::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Result<Self, CliError> {
        let doc = value.as_object().ok_or_else(|| err("$", "expected a JSON object"))?;
        const KEYS: [&str; 7] = ["rank", "structure", "anchor", "metric", "J", "omega", "eta"];
        if let Some(k) = doc.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(err(k, "unknown key"));
        }
        let rank = doc
            .get("rank")
            .and_then(Value::as_u64)
            .ok_or_else(|| err("rank", "missing or not a nonnegative integer"))? as usize;
        if rank > 16 {
            return Err(err("rank", "ranks above 16 are not supported"));
        }
        let mut structure = Vec::new();
        for (n, e) in entries(doc, "structure")?.iter().enumerate() {
            let p = format!("structure[{n}]");
            let (i, j, k) = (
                parse_index(e.get("i"), &format!("{p}.i"), rank)?,
                parse_index(e.get("j"), &format!("{p}.j"), rank)?,
                parse_index(e.get("k"), &format!("{p}.k"), rank)?,
            );
            if i >= j {
                return Err(err(&p, "entries need i < j"));
            }
            let c = parse_scalar(e.get("c").ok_or_else(|| err(&p, "missing c"))?, &format!("{p}.c"))?;
            structure.push((i, j, k, c));
        }
        let anchor = match doc.get("anchor") {
            None | Some(Value::Null) => None,
            Some(a) => {
                let target = a
                    .get("target_dim")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| err("anchor.target_dim", "missing or not a nonnegative integer"))?
                    as usize;
                let m = a.get("matrix").ok_or_else(|| err("anchor", "missing matrix"))?;
                Some(parse_matrix(m, "anchor.matrix", rank, target)?)
            }
        };
        let square = |key: &str| -> Result<Option<Matrix<Rational>>, CliError> {
            match doc.get(key) {
                None | Some(Value::Null) => Ok(None),
                Some(v) => parse_matrix(v, key, rank, rank).map(Some),
            }
        };
        let metric = square("metric")?;
        let complex_structure = square("J")?;
        let has_omega = !matches!(doc.get("omega"), None | Some(Value::Null));
        let mut omega = Vec::new();
        for (n, e) in entries(doc, "omega")?.iter().enumerate() {
            let p = format!("omega[{n}]");
            let i = parse_index(e.get("i"), &format!("{p}.i"), rank)?;
            let j = parse_index(e.get("j"), &format!("{p}.j"), rank)?;
            if i >= j {
                return Err(err(&p, "entries need i < j"));
            }
            let c = parse_scalar(e.get("c").ok_or_else(|| err(&p, "missing c"))?, &format!("{p}.c"))?;
            omega.push((i, j, c));
        }
        let eta = match doc.get("eta") {
            None | Some(Value::Null) => None,
            Some(v) => Some(parse_scalar(v, "eta")?),
        };
        Ok(Self {
            rank,
            structure,
            anchor,
            metric,
            complex_structure,
            omega,
            has_omega,
            eta,
        })
    }

    /// Builds the presentation; data-level errors (asymmetric metric, J² ≠ −1)
    /// are input errors.
    pub fn to_presentation(&self) -> Result<Presentation, CliError> {
        let at = |key: &'static str| move |e: algebroid_core::Error| err(key, e.to_string());
        let mut p = Presentation::new(self.rank);
        for (n, (i, j, k, c)) in self.structure.iter().enumerate() {
            let prior = p.structure_constant(*i, *j, *k).clone();
            p.set_bracket(*i, *j, *k, prior + c.clone())
                .map_err(|e| err(&format!("structure[{n}]"), e.to_string()))?;
        }
        if let Some(a) = &self.anchor {
            p = p.with_anchor(a.clone()).map_err(at("anchor"))?;
        }
        if let Some(g) = &self.metric {
            p = p.with_metric(g.clone()).map_err(at("metric"))?;
        }
        if let Some(j) = &self.complex_structure {
            p = p.with_complex_structure(j.clone()).map_err(at("J"))?;
        }
        if self.has_omega {
            let ext = p.exterior();
            let mut om = ext.zero_form(2);
            for (i, j, c) in &self.omega {
                let term = ext.form_from_terms(2, &[(&[*i, *j], c.clone())]);
                om = om.add(&term);
            }
            p = p.with_omega(om).map_err(at("omega"))?;
        }
        if let Some(eta) = &self.eta {
            p = p.with_eta(eta.clone()).map_err(at("eta"))?;
        }
        Ok(p)
    }

    pub fn from_presentation(p: &Presentation) -> Self {
        let r = p.rank();
        let mut structure = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                for k in 0..r {
                    let c = p.structure_constant(i, j, k);
                    if !c.is_zero() {
                        structure.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        let ext = p.exterior();
        let omega = p
            .omega()
            .map(|om| {
                ext.basis(2)
                    .iter()
                    .zip(&om.coeffs)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(idx, c)| {
                        let ij = idx.indices();
                        (ij[0], ij[1], c.clone())
                    })
                    .collect()
            })
            .unwrap_or_default();
        Self {
            rank: r,
            structure,
            anchor: (p.base_dim() > 0).then(|| p.anchor().clone()),
            metric: p.metric().cloned(),
            complex_structure: p.complex_structure().cloned(),
            omega,
            has_omega: p.omega().is_some(),
            eta: p.eta().cloned(),
        }
    }

    pub fn to_value(&self) -> Value {
        let s = |q: &Rational| Value::String(format_rational(q));
        let matrix = |m: &Matrix<Rational>| -> Value {
            Value::Array(m.to_rows().iter().map(|row| Value::Array(row.iter().map(s).collect())).collect())
        };
        let mut doc = Map::new();
        doc.insert("rank".into(), json!(self.rank));
        doc.insert(
            "structure".into(),
            Value::Array(
                self.structure
                    .iter()
                    .map(|(i, j, k, c)| json!({"i": i + 1, "j": j + 1, "k": k + 1, "c": s(c)}))
                    .collect(),
            ),
        );
        if let Some(a) = &self.anchor {
            doc.insert("anchor".into(), json!({"target_dim": a.cols(), "matrix": matrix(a)}));
        }
        if let Some(g) = &self.metric {
            doc.insert("metric".into(), matrix(g));
        }
        if let Some(j) = &self.complex_structure {
            doc.insert("J".into(), matrix(j));
        }
        if self.has_omega {
            doc.insert(
                "omega".into(),
                Value::Array(
                    self.omega
                        .iter()
                        .map(|(i, j, c)| json!({"i": i + 1, "j": j + 1, "c": s(c)}))
                        .collect(),
                ),
            );
        }
        if let Some(e) = &self.eta {
            doc.insert("eta".into(), s(e));
        }
        Value::Object(doc)
    }

    /// Canonical serialization, also the input of the model hash.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("values serialize")
    }

    pub fn sha256(&self) -> String {
        use sha2::{Digest, Sha256};
        format!("{:x}", Sha256::digest(self.to_json().as_bytes()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use algebroid_core::constructions::presets::{abelian, euclidean_flat, kodaira_thurston};

    #[test]
    fn presets_round_trip() {
        for p in [abelian(2), kodaira_thurston(), euclidean_flat()] {
            let file = ModelFile::from_presentation(&p);
            let again = ModelFile::parse(&file.to_json()).unwrap();
            assert_eq!(again, file);
            assert_eq!(again.to_presentation().unwrap(), p);
        }
    }

    #[test]
    fn zero_index_is_located() {
        let e = ModelFile::parse(r#"{"rank": 2, "structure": [{"i": 0, "j": 2, "k": 1, "c": "1"}]}"#).unwrap_err();
        assert_eq!(e.to_string(), "structure[0].i: index 0 outside 1..2");
    }

    #[test]
    fn syntax_error_has_line_and_column() {
        let e = ModelFile::parse("{\n  \"rank\": 2,\n  oops\n}").unwrap_err();
        assert!(e.to_string().starts_with("line 3, column 3"), "{e}");
    }

    #[test]
    fn complex_scalars_must_be_real() {
        let ok = ModelFile::parse(r#"{"rank": 2, "eta": {"re": "1/2", "im": "0"}}"#).unwrap();
        assert_eq!(ok.eta, Some(algebroid_core::scalar::rational(1, 2)));
        let bad = ModelFile::parse(r#"{"rank": 2, "eta": {"re": "1", "im": "1"}}"#).unwrap_err();
        assert!(bad.to_string().starts_with("eta:"));
        assert!(ModelFile::parse(r#"{"rank": 2, "eta": 0.5}"#).is_err());
    }
}
