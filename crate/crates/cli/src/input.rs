//! δ-vector records, one per line: `{"delta": ["1", "0", "14/1"]}` or a
//! bare comma-separated list of integers.

use std::fmt;
use std::io::BufRead;

use serde_json::Value;
use ssnn::rational::parse_rational;
use ssnn::BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub line: usize,
    pub label: Option<String>,
    pub delta: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn json_entry(v: &Value) -> Result<BigRational, String> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| e.to_string()),
        Value::Number(n) if n.is_i64() || n.is_u64() => {
            parse_rational(&n.to_string()).map_err(|e| e.to_string())
        }
        Value::Number(n) => Err(format!(
            "non-integer number {n}; write rationals as \"p/q\" strings"
        )),
        other => Err(format!("unexpected entry {other}")),
    }
}

/// `Ok(None)` for blank lines and `#` comments.
pub fn parse_record(line: usize, text: &str) -> Result<Option<Record>, ParseError> {
    let text = text.trim();
    if text.is_empty() || text.starts_with('#') {
        return Ok(None);
    }
    let err = |message: String| ParseError { line, message };
    if text.starts_with('{') {
        let obj: Value =
            serde_json::from_str(text).map_err(|e| err(format!("invalid JSON: {e}")))?;
        let entries = obj
            .get("delta")
            .and_then(Value::as_array)
            .ok_or_else(|| err("missing \"delta\" array".into()))?;
        let delta = entries
            .iter()
            .map(json_entry)
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        let label = obj.get("label").and_then(Value::as_str).map(str::to_string);
        return Ok(Some(Record { line, label, delta }));
    }
    let delta = text
        .split(',')
        .map(|field| {
            let field = field.trim();
            field
                .parse::<i64>()
                .map(|n| BigRational::from_integer(n.into()))
                .map_err(|_| err(format!("CSV input takes integers, got {field:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Some(Record {
        line,
        label: None,
        delta,
    }))
}

/// Parses every line; bad lines come back as errors in place.
pub fn read_records<R: BufRead>(reader: R) -> std::io::Result<Vec<Result<Record, ParseError>>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        match parse_record(i + 1, &line?) {
            Ok(Some(r)) => out.push(Ok(r)),
            Ok(None) => {}
            Err(e) => out.push(Err(e)),
        }
    }
    Ok(out)
}
