//! Field flags and the matrix JSON format.

use serde_json::{json, Value};
use sl2pf::certificate::FieldSpec;
use sl2pf::{Error, Field, Mat2, PolyRing, Result};

/// `p[,n[,modulus]]` where the modulus is a polynomial over `F_p` in `T`,
/// for example `3,2,T^2+1`.
pub fn parse_field_flag(text: &str) -> Result<FieldSpec> {
    let mut parts = text.splitn(3, ',');
    let num = |s: Option<&str>, what: &str| -> Result<Option<u64>> {
        match s.map(str::trim) {
            None | Some("") => Ok(None),
            Some(t) => t.parse().map(Some).map_err(|_| Error::Parse(format!("bad {what} in --field: {t}"))),
        }
    };
    let p = num(parts.next(), "characteristic")?.ok_or_else(|| Error::Parse("empty --field".into()))?;
    let n = num(parts.next(), "degree")?.unwrap_or(1);
    let n = u32::try_from(n).map_err(|_| Error::Parse("extension degree too large".into()))?;
    let modulus = match parts.next() {
        None => None,
        Some(m) => {
            let base = PolyRing::new(Field::prime(p)?);
            let poly = base.parse(m)?;
            Some(poly.coeffs().iter().map(|c| c.index()).collect())
        }
    };
    Ok(FieldSpec { p, n, modulus })
}

/// A matrix document: `{"v":1,"field":{...},"matrix":[["a","b"],["c","d"]]}`.
/// A missing field falls back to `default`; a conflicting one is an error.
pub fn parse_matrix(text: &str, default: Option<&FieldSpec>) -> Result<(PolyRing, Mat2)> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = doc.as_object().ok_or_else(|| Error::Parse("matrix document must be an object".into()))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "v" | "field" | "matrix") {
            return Err(Error::Parse(format!("unknown key {key}")));
        }
    }
    if let Some(v) = obj.get("v") {
        if v.as_u64() != Some(1) {
            return Err(Error::Parse(format!("unsupported version {v}")));
        }
    }
    let spec = match obj.get("field") {
        Some(f) => {
            let spec: FieldSpec = serde_json::from_value(f.clone()).map_err(|e| Error::Parse(e.to_string()))?;
            if let Some(d) = default {
                if !same_field(d, &spec)? {
                    return Err(Error::FieldMismatch);
                }
            }
            spec
        }
        None => default.cloned().unwrap_or(FieldSpec { p: 3, n: 1, modulus: None }),
    };
    let r = PolyRing::new(spec.build()?);
    let rows = obj
        .get("matrix")
        .and_then(Value::as_array)
        .filter(|rows| rows.len() == 2)
        .ok_or_else(|| Error::Parse("matrix must have two rows".into()))?;
    let mut entries = Vec::with_capacity(4);
    for row in rows {
        let row =
            row.as_array().filter(|r| r.len() == 2).ok_or_else(|| Error::Parse("rows must have two entries".into()))?;
        for e in row {
            let s = e.as_str().ok_or_else(|| Error::Parse("entries must be strings".into()))?;
            entries.push(r.parse(s)?);
        }
    }
    let mut it = entries.into_iter();
    let mut next = || it.next().expect("four entries");
    let m = Mat2::new(next(), next(), next(), next());
    Ok((r, m))
}

pub fn format_matrix(r: &PolyRing, m: &Mat2) -> String {
    let doc = json!({
        "v": 1,
        "field": FieldSpec::of(r.field()),
        "matrix": m.format(r),
    });
    serde_json::to_string(&doc).expect("plain data")
}

/// Equal after resolving default moduli.
pub fn same_field(x: &FieldSpec, y: &FieldSpec) -> Result<bool> {
    Ok(FieldSpec::of(&x.build()?) == FieldSpec::of(&y.build()?))
}
