//! The BQD file format: a JSON object with `name`, `mode`, `q`, `omega`
//! and the eight tensors as nested arrays of scalar literals.
//!
//! | field | nesting          | entry                              |
//! |-------|------------------|------------------------------------|
//! | `A`   | `[α][i][j]`      | coefficient of `y_α` in `A(x_i⊗x_j)` |
//! | `a`   | `[i][j][α]`      | coefficient of `x_i⊗x_j` in `a(y_α)` |
//! | `B`   | `[i][α][β]`      | coefficient of `x_i` in `B(y_α⊗y_β)` |
//! | `b`   | `[α][β][i]`      | coefficient of `y_α⊗y_β` in `b(x_i)` |
//! | `C`   | `[α][i]`         | `C(y_α⊗x_i)`                       |
//! | `c`   | `[i][α]`         | coefficient of `x_i⊗y_α` in `c(1)` |
//! | `D`   | `[i][α]`         | `D(x_i⊗y_α)`                       |
//! | `d`   | `[α][i]`         | coefficient of `y_α⊗x_i` in `d(1)` |
//!
//! Each nesting is the row-major storage of the corresponding matrix.

use std::path::Path;

use serde_json::{Map, Value};
use thiserror::Error;

use crate::bqd::{tensor_signatures, Bqd, BqdError, K, TENSOR_NAMES};
use crate::linalg::Mat;
use crate::scalars::{parse_scalar, BaseField, Mode};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("field `{0}` is missing")]
    MissingField(String),
    #[error("field `{field}`: {message}")]
    BadField { field: String, message: String },
    #[error("file is in {file} mode but the session is {session}")]
    ModeMismatch { file: Mode, session: Mode },
    #[error(transparent)]
    Bqd(#[from] BqdError),
}

fn bad(field: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::BadField { field: field.into(), message: message.into() }
}

/// `[3,3,3]` for the 27-entry tensors, `[3,3]` for the pairings.
fn nesting(entries: usize) -> &'static [usize] {
    if entries == 27 {
        &[3, 3, 3]
    } else {
        &[3, 3]
    }
}

fn nest(flat: &[String], dims: &[usize]) -> Value {
    if dims.len() == 1 {
        return Value::Array(flat.iter().cloned().map(Value::String).collect());
    }
    let step = flat.len() / dims[0];
    Value::Array(flat.chunks(step).map(|c| nest(c, &dims[1..])).collect())
}

fn flatten(v: &Value, dims: &[usize], field: &str, out: &mut Vec<String>) -> Result<(), FormatError> {
    let arr = v.as_array().ok_or_else(|| bad(field, "expected an array"))?;
    if arr.len() != dims[0] {
        return Err(bad(field, format!("expected {} entries, found {}", dims[0], arr.len())));
    }
    for (i, x) in arr.iter().enumerate() {
        let sub = format!("{field}[{i}]");
        if dims.len() == 1 {
            match x {
                Value::String(s) => out.push(s.clone()),
                Value::Number(n) => out.push(n.to_string()),
                _ => return Err(bad(sub, "expected a scalar literal")),
            }
        } else {
            flatten(x, &dims[1..], &sub, out)?;
        }
    }
    Ok(())
}

/// Serialize to the file format.
pub fn to_json<B: BaseField>(bqd: &Bqd<B>) -> Value {
    let mut m = Map::new();
    m.insert("name".into(), Value::String(bqd.name().to_string()));
    m.insert("mode".into(), Value::String(B::MODE.to_string()));
    m.insert("q".into(), Value::String(bqd.q().to_string()));
    m.insert("omega".into(), Value::String(bqd.omega().to_string()));
    for (name, mat) in TENSOR_NAMES.iter().zip(bqd.mats()) {
        let flat: Vec<String> = mat.data().iter().map(ToString::to_string).collect();
        m.insert((*name).into(), nest(&flat, nesting(flat.len())));
    }
    Value::Object(m)
}

pub fn to_string<B: BaseField>(bqd: &Bqd<B>) -> String {
    let mut s = serde_json::to_string_pretty(&to_json(bqd)).expect("serializable");
    s.push('\n');
    s
}

fn scalar<B: BaseField>(text: &str, field: &str) -> Result<K<B>, FormatError> {
    parse_scalar::<B>(text).map_err(|e| bad(field, format!("`{text}`: {e}")))
}

/// Parse the file format, requiring its mode to match the session.
pub fn from_json<B: BaseField>(v: &Value) -> Result<Bqd<B>, FormatError> {
    let obj = v.as_object().ok_or_else(|| FormatError::Json("top level is not an object".into()))?;
    let get = |f: &str| obj.get(f).ok_or_else(|| FormatError::MissingField(f.into()));
    let text = |f: &str| -> Result<String, FormatError> {
        get(f)?.as_str().map(str::to_string).ok_or_else(|| bad(f, "expected a string"))
    };
    let name = text("name")?;
    let mode: Mode = text("mode")?.parse().map_err(|e: String| bad("mode", e))?;
    if mode != B::MODE {
        return Err(FormatError::ModeMismatch { file: mode, session: B::MODE });
    }
    let q = scalar::<B>(&text("q")?, "q")?;
    let omega = scalar::<B>(&text("omega")?, "omega")?;
    let sigs = tensor_signatures();
    let mut mats = Vec::with_capacity(8);
    for (name, (dom, cod)) in TENSOR_NAMES.iter().zip(sigs) {
        let (rows, cols) = (cod.dim(), dom.dim());
        let mut flat = Vec::new();
        flatten(get(name)?, nesting(rows * cols), name, &mut flat)?;
        let data = flat
            .iter()
            .enumerate()
            .map(|(i, s)| scalar::<B>(s, &format!("{name}#{i}")))
            .collect::<Result<Vec<_>, _>>()?;
        mats.push(Mat::from_vec(rows, cols, data));
    }
    let mats: [Mat<K<B>>; 8] = mats.try_into().expect("eight tensors");
    Ok(Bqd::from_mats(name, q, omega, mats)?)
}

pub fn from_str<B: BaseField>(s: &str) -> Result<Bqd<B>, FormatError> {
    let v: Value = serde_json::from_str(s).map_err(|e| FormatError::Json(e.to_string()))?;
    from_json(&v)
}

/// The `mode` field of a file, without parsing the tensors.
pub fn peek_mode(s: &str) -> Result<Mode, FormatError> {
    let v: Value = serde_json::from_str(s).map_err(|e| FormatError::Json(e.to_string()))?;
    let m = v.get("mode").ok_or_else(|| FormatError::MissingField("mode".into()))?;
    m.as_str().ok_or_else(|| bad("mode", "expected a string"))?.parse().map_err(|e: String| bad("mode", e))
}

pub fn load<B: BaseField>(path: &Path) -> Result<Bqd<B>, FormatError> {
    let s = std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })?;
    from_str(&s)
}

pub fn save<B: BaseField>(bqd: &Bqd<B>, path: &Path) -> Result<(), FormatError> {
    std::fs::write(path, to_string(bqd)).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{instantiate, CaseId, CaseSpec};
    use crate::scalars::{RatFunc, Rational};

    #[test]
    fn round_trip_numeric() {
        for case in CaseId::ALL {
            let b = instantiate(&CaseSpec::<Rational>::default_for(case)).unwrap();
            let s = to_string(&b);
            let back: Bqd<Rational> = from_str(&s).unwrap();
            assert_eq!(back, b, "{case}");
            assert_eq!(to_string(&back), s);
        }
    }

    #[test]
    fn round_trip_symbolic() {
        let b = instantiate(&CaseSpec::<RatFunc>::default_for(CaseId::IIb)).unwrap();
        let back: Bqd<RatFunc> = from_str(&to_string(&b)).unwrap();
        assert_eq!(back, b);
    }

    #[test]
    fn layout_matches_matrices() {
        let b = instantiate(&CaseSpec::<Rational>::default_for(CaseId::IIIa)).unwrap();
        let v = to_json(&b);
        assert_eq!(v["A"][2][0][1].as_str().unwrap(), b.A().get(2, 1).to_string());
        assert_eq!(v["a"][1][2][0].as_str().unwrap(), b.a().get(5, 0).to_string());
        assert_eq!(v["C"][2][0].as_str().unwrap(), b.C().get(0, 6).to_string());
        assert_eq!(v["d"][0][2].as_str().unwrap(), b.d().get(2, 0).to_string());
    }

    #[test]
    fn errors_name_the_field() {
        let b = instantiate(&CaseSpec::<Rational>::default_for(CaseId::Ia)).unwrap();
        let mut v = to_json(&b);
        v.as_object_mut().unwrap().remove("D");
        let e = from_json::<Rational>(&v).unwrap_err();
        assert!(matches!(&e, FormatError::MissingField(f) if f == "D"), "{e}");

        let mut v = to_json(&b);
        v["a"][1] = Value::Array(vec![]);
        let e = from_json::<Rational>(&v).unwrap_err();
        assert!(e.to_string().contains("a[1]"), "{e}");

        let mut v = to_json(&b);
        v["q"] = Value::String("2/".into());
        assert!(from_json::<Rational>(&v).unwrap_err().to_string().contains("`q`"));

        let s = to_string(&b);
        let cut = &s[..s.len() / 2];
        assert!(matches!(from_str::<Rational>(cut), Err(FormatError::Json(_))));
    }

    #[test]
    fn mode_mismatch() {
        let b = instantiate(&CaseSpec::<Rational>::default_for(CaseId::Ia)).unwrap();
        let s = to_string(&b);
        assert!(matches!(from_str::<RatFunc>(&s), Err(FormatError::ModeMismatch { .. })));
        assert_eq!(peek_mode(&s).unwrap(), Mode::Numeric);
    }
}
