//! JSON documents for series, tensors and reports, shared by the `dmr` binary
//! and its tests.
//!
//! A series document looks like
//!
//! ```json
//! {"N": 1, "alphabet": "X", "truncation": 2, "mode": "rational",
//!  "terms": [{"word": [-1, 0], "coeff": "1/1"}, {"word": [0, -1], "coeff": "-1/1"}]}
//! ```
//!
//! X-words are token arrays (−1 for x₀, k for x_{ξᵏ}); Y-words are arrays of
//! `[n, k]` pairs. Complex documents carry `"mode": "complex"`, a
//! `"precision"` field (significant digits) and coefficients `["re", "im"]`.

pub mod decimal;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use dmr_core::dmr::Report;
use dmr_core::{Alphabet, CNum, CyclicGroup, Error, Result, Scalar, Series, Tensor, Word, YLetter, YWord, Q};

/// Significant digits written for double-double coefficients.
pub const PRECISION: usize = 30;

/// Coefficient rings that have a document encoding.
pub trait Coeff: Scalar {
    const MODE: &'static str;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl Coeff for Q {
    const MODE: &'static str = "rational";

    fn to_json(&self) -> Value {
        Value::String(format!("{}/{}", self.numer(), self.denom()))
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => Ok(Q::from_integer(BigInt::from(n.as_i64().unwrap_or(0)))),
            _ => Err(parse_err(format!("rational coefficient expected, got {v}"))),
        }
    }
}

impl Coeff for CNum {
    const MODE: &'static str = "complex";

    fn to_json(&self) -> Value {
        json!([decimal::format(self.re, PRECISION), decimal::format(self.im, PRECISION)])
    }

    fn from_json(v: &Value) -> Result<Self> {
        let parts =
            v.as_array().filter(|a| a.len() == 2).ok_or_else(|| parse_err("complex coefficient must be [re, im]"))?;
        let part = |x: &Value| -> Result<dmr_core::Real> {
            match x {
                Value::String(s) => decimal::parse(s),
                Value::Number(n) => n.as_f64().map(dmr_core::Real::from).ok_or_else(|| parse_err("bad number")),
                _ => Err(parse_err("complex parts must be decimal strings")),
            }
        };
        Ok(CNum::new(part(&parts[0])?, part(&parts[1])?))
    }
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Parses `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: BigInt = p.trim().parse().map_err(|_| parse_err(format!("bad rational {s:?}")))?;
    let q: BigInt = q.trim().parse().map_err(|_| parse_err(format!("bad rational {s:?}")))?;
    if q.is_zero() {
        return Err(parse_err(format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(p, q))
}

/// A parsed series in either coefficient mode.
#[derive(Clone, Debug, PartialEq)]
pub enum AnySeries {
    Exact(Series<Q>),
    Numeric(Series<CNum>),
}

impl AnySeries {
    pub fn group(&self) -> CyclicGroup {
        match self {
            AnySeries::Exact(s) => s.group(),
            AnySeries::Numeric(s) => s.group(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnySeries::Exact(s) => series_to_json(s),
            AnySeries::Numeric(s) => series_to_json(s),
        }
    }
}

fn word_to_json(w: &Word, alphabet: Alphabet) -> Value {
    match alphabet {
        Alphabet::X => json!(w.tokens()),
        Alphabet::Y => {
            let y = w.to_y().expect("Y-series words never end in x₀");
            Value::Array(y.0.iter().map(|l| json!([l.n, l.nu])).collect())
        }
    }
}

fn word_from_json(v: &Value, alphabet: Alphabet, group: CyclicGroup) -> Result<Word> {
    let items = v.as_array().ok_or_else(|| parse_err("word must be an array"))?;
    match alphabet {
        Alphabet::X => {
            let tokens: Vec<i64> = items
                .iter()
                .map(|t| t.as_i64().ok_or_else(|| parse_err("X-letters are integers")))
                .collect::<Result<_>>()?;
            Word::from_tokens(&tokens, group).map_err(|e| parse_err(e.to_string()))
        }
        Alphabet::Y => {
            let mut letters = Vec::with_capacity(items.len());
            for p in items {
                let pair =
                    p.as_array().filter(|a| a.len() == 2).ok_or_else(|| parse_err("Y-letters are [n, k] pairs"))?;
                let n = pair[0].as_u64().filter(|&n| n >= 1).ok_or_else(|| parse_err("Y-letter needs n ≥ 1"))?;
                let nu = pair[1]
                    .as_u64()
                    .filter(|&k| k < group.order() as u64)
                    .ok_or_else(|| parse_err("Y-letter color out of range"))?;
                letters.push(YLetter { n: n as u32, nu: nu as u32 });
            }
            Ok(YWord(letters).to_x())
        }
    }
}

fn header(group: CyclicGroup, alphabet: Alphabet, trunc: usize, mode: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("N".into(), json!(group.order()));
    m.insert("alphabet".into(), json!(if alphabet == Alphabet::X { "X" } else { "Y" }));
    m.insert("truncation".into(), json!(trunc));
    m.insert("mode".into(), json!(mode));
    if mode == CNum::MODE {
        m.insert("precision".into(), json!(PRECISION));
    }
    m
}

pub fn series_to_json<C: Coeff>(s: &Series<C>) -> Value {
    let mut m = header(s.group(), s.alphabet(), s.trunc(), C::MODE);
    let terms = s.iter().map(|(w, c)| json!({"word": word_to_json(w, s.alphabet()), "coeff": c.to_json()})).collect();
    m.insert("terms".into(), Value::Array(terms));
    Value::Object(m)
}

pub fn tensor_to_json<C: Coeff>(t: &Tensor<C>) -> Value {
    let mut m = header(t.group(), t.alphabet(), t.trunc(), C::MODE);
    m.insert("kind".into(), json!("tensor"));
    let terms = t
        .terms()
        .iter()
        .map(|((u, v), c)| json!({"left": word_to_json(u, t.alphabet()), "right": word_to_json(v, t.alphabet()), "coeff": c.to_json()}))
        .collect();
    m.insert("terms".into(), Value::Array(terms));
    Value::Object(m)
}

fn field<'a>(m: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    m.get(key).ok_or_else(|| parse_err(format!("missing field {key:?}")))
}

fn series_from_map<C: Coeff>(
    m: &Map<String, Value>,
    group: CyclicGroup,
    alphabet: Alphabet,
    trunc: usize,
) -> Result<Series<C>> {
    let terms = field(m, "terms")?.as_array().ok_or_else(|| parse_err("terms must be an array"))?;
    let mut seen = std::collections::BTreeSet::new();
    let mut parsed = Vec::with_capacity(terms.len());
    for t in terms {
        let t = t.as_object().ok_or_else(|| parse_err("term must be an object"))?;
        let w = word_from_json(field(t, "word")?, alphabet, group)?;
        if w.weight() > trunc {
            return Err(parse_err(format!("word {w} exceeds truncation {trunc}")));
        }
        if !seen.insert(w.clone()) {
            return Err(parse_err(format!("duplicate word {w}")));
        }
        parsed.push((w, C::from_json(field(t, "coeff")?)?));
    }
    Series::from_terms(group, alphabet, trunc, parsed).map_err(|e| parse_err(e.to_string()))
}

/// Parses a series document in either mode.
pub fn parse_series(text: &str) -> Result<AnySeries> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_err(format!("invalid JSON: {e}")))?;
    series_from_value(&v)
}

pub fn series_from_value(v: &Value) -> Result<AnySeries> {
    let m = v.as_object().ok_or_else(|| parse_err("document must be an object"))?;
    if m.get("kind").and_then(Value::as_str) == Some("tensor") {
        return Err(parse_err("expected a series document, got a tensor"));
    }
    let n = field(m, "N")?
        .as_u64()
        .filter(|&n| n >= 1 && n <= u32::MAX as u64)
        .ok_or_else(|| parse_err("N must be a positive integer"))?;
    let group = CyclicGroup::new(n as u32).map_err(|e| parse_err(e.to_string()))?;
    let alphabet = match field(m, "alphabet")?.as_str() {
        Some("X") => Alphabet::X,
        Some("Y") => Alphabet::Y,
        _ => return Err(parse_err("alphabet must be \"X\" or \"Y\"")),
    };
    let trunc = field(m, "truncation")?
        .as_u64()
        .ok_or_else(|| parse_err("truncation must be a non-negative integer"))? as usize;
    match field(m, "mode")?.as_str() {
        Some("rational") => Ok(AnySeries::Exact(series_from_map(m, group, alphabet, trunc)?)),
        Some("complex") => Ok(AnySeries::Numeric(series_from_map(m, group, alphabet, trunc)?)),
        _ => Err(parse_err("mode must be \"rational\" or \"complex\"")),
    }
}

/// Report of a constraint check.
pub fn report_to_json(report: &Report) -> Value {
    let families: Vec<Value> = report
        .families
        .iter()
        .map(|f| json!({"name": f.name, "passed": f.passed, "max_residual": f.max_residual, "witness": f.witness}))
        .collect();
    json!({"passed": report.passed(), "families": families})
}

/// A complex value with an error bar.
pub fn value_to_json(z: &CNum, error: f64) -> Value {
    json!({"value": z.to_json(), "error": error})
}

/// Renders a Y-word as `[[n, k], ...]`.
pub fn y_word_to_json(y: &YWord) -> Value {
    Value::Array(y.0.iter().map(|l| json!([l.n, l.nu])).collect())
}

/// Parses a lambda for numeric use: `p/q`, a decimal, or `re,im`.
pub fn parse_complex(s: &str) -> Result<CNum> {
    match s.split_once(',') {
        Some((re, im)) => Ok(CNum::new(decimal::parse(re.trim())?, decimal::parse(im.trim())?)),
        None => match parse_rational(s) {
            Ok(q) => Ok(CNum::from_rational(&q)),
            Err(_) => Ok(CNum::new(decimal::parse(s.trim())?, dmr_core::Real::zero())),
        },
    }
}
