//! Matrix file formats.
//!
//! The canonical format is JSON:
//!
//! ```text
//! {"d": 6, "entries": [[[re, im], ...], ...]}
//! ```
//!
//! with rows outermost. Floats are written with 17 significant digits so a
//! write/read cycle is bit-exact. An optional `"provenance"` object records the
//! family and parameters that produced the matrix; readers ignore it.
//!
//! The plain-text format has one row per line with whitespace-separated
//! tokens of the form `a+bi` / `a-bi`.

use serde_json::Value;

use crate::error::{ChmError, Result};
use crate::matrix::{CMatrix, C64};

/// 17 significant digits in exponent notation.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn to_json_string(m: &CMatrix, provenance: Option<&Value>) -> String {
    let mut s = String::new();
    s.push_str(&format!("{{\"d\": {}, \"entries\": [\n", m.rows()));
    for r in 0..m.rows() {
        s.push_str("  [");
        let row: Vec<String> = m
            .row(r)
            .iter()
            .map(|z| format!("[{}, {}]", fmt_f64(z.re), fmt_f64(z.im)))
            .collect();
        s.push_str(&row.join(", "));
        s.push(']');
        if r + 1 < m.rows() {
            s.push(',');
        }
        s.push('\n');
    }
    s.push(']');
    if let Some(p) = provenance {
        s.push_str(", \"provenance\": ");
        s.push_str(&serde_json::to_string(p).expect("json value serializes"));
    }
    s.push_str("}\n");
    s
}

fn number(v: &Value, what: &str) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| ChmError::Parse(format!("{what} is not a number")))
}

pub fn from_json_str(text: &str) -> Result<CMatrix> {
    let v: Value = serde_json::from_str(text).map_err(|e| ChmError::Parse(e.to_string()))?;
    let d = v
        .get("d")
        .and_then(Value::as_u64)
        .ok_or_else(|| ChmError::Parse("missing integer field `d`".into()))? as usize;
    let rows = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| ChmError::Parse("missing array field `entries`".into()))?;
    if rows.len() != d {
        return Err(ChmError::Parse(format!(
            "`entries` has {} rows, expected {d}",
            rows.len()
        )));
    }
    let mut out = Vec::with_capacity(d);
    for (r, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| ChmError::Parse(format!("row {r} is not an array")))?;
        if row.len() != d {
            return Err(ChmError::Parse(format!(
                "row {r} has {} entries, expected {d}",
                row.len()
            )));
        }
        let mut vals = Vec::with_capacity(d);
        for (c, e) in row.iter().enumerate() {
            let pair = e.as_array().filter(|p| p.len() == 2).ok_or_else(|| {
                ChmError::Parse(format!("entry ({r},{c}) is not a [re, im] pair"))
            })?;
            vals.push(C64::new(
                number(&pair[0], "real part")?,
                number(&pair[1], "imaginary part")?,
            ));
        }
        out.push(vals);
    }
    CMatrix::from_rows(out)
}

/// Parses a token like `1.5-2e-3i`, `-i`, `0.25` or `3i`.
pub fn parse_complex_token(tok: &str) -> Result<C64> {
    let bad = || ChmError::Parse(format!("bad complex token `{tok}`"));
    let t = tok.trim();
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| C64::new(re, 0.0)).map_err(|_| bad());
    };
    // Split at the last sign that is not leading and not part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_s, im_s) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im_s {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => s.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re_s.parse::<f64>().map_err(|_| bad())?;
    Ok(C64::new(re, im))
}

pub fn from_text_str(text: &str) -> Result<CMatrix> {
    let rows: Vec<Vec<C64>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().map(parse_complex_token).collect())
        .collect::<Result<_>>()?;
    let m = CMatrix::from_rows(rows)?;
    if !m.is_square() {
        return Err(ChmError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(m)
}

pub fn to_text_string(m: &CMatrix) -> String {
    let mut s = String::new();
    for r in 0..m.rows() {
        let toks: Vec<String> = m
            .row(r)
            .iter()
            .map(|z| format!("{}{:+.16e}i", fmt_f64(z.re), z.im))
            .collect();
        s.push_str(&toks.join(" "));
        s.push('\n');
    }
    s
}

/// Reads either format, choosing JSON when the first non-blank character is `{`.
pub fn from_str_auto(text: &str) -> Result<CMatrix> {
    if text.trim_start().starts_with('{') {
        from_json_str(text)
    } else {
        from_text_str(text)
    }
}
