//! JSON forms for polynomials, sign patterns and reports.
//!
//! Rationals travel as strings, `"-3"` or `"7/2"`. Hermitian polynomials list
//! entries `(α, β)` with `α <= β`; a missing mirror entry is the conjugate.

use std::collections::BTreeSet;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bounds::{BoundReport, PigeonholeCertificate};
use crate::error::{Error, Result};
use crate::inertia::Inertia;
use crate::poly::{GaussianRational, HermitianPoly, MultiIndex, Rational, RealSparsePoly, SignaturePair};
use crate::psi::{Certificate, PsiReport};
use crate::reduction::{HyperbolicStep, Reduction};
use crate::search::{SearchResult, SignPattern, Strategy};

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// A coefficient given either as a string or as a JSON integer.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Coef {
    Text(String),
    Int(i64),
}

impl Coef {
    fn value(&self) -> Result<Rational> {
        match self {
            Coef::Text(s) => parse_rational(s),
            Coef::Int(i) => Ok(Rational::from_integer(BigInt::from(*i))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u32>,
    coef: Coef,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    n: usize,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    alpha: Vec<u32>,
    beta: Vec<u32>,
    re: Coef,
    im: Coef,
}

#[derive(Serialize, Deserialize)]
struct HermJson {
    n: usize,
    entries: Vec<EntryJson>,
}

#[derive(Serialize, Deserialize)]
struct PatternJson {
    n: usize,
    #[serde(rename = "D")]
    degree: u32,
    pos: Vec<Vec<u32>>,
    neg: Vec<Vec<u32>>,
}

fn index(v: Vec<u32>, n: usize) -> Result<MultiIndex> {
    if v.is_empty() || v.len() != n {
        let len = v.len();
        return Err(Error::Parse(format!("exponent vector {v:?} has length {len}, expected {n}")));
    }
    Ok(MultiIndex::new(v))
}

fn from_value<T: for<'de> Deserialize<'de>>(v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn poly_to_json(p: &RealSparsePoly) -> Value {
    let terms: Vec<Value> = p.terms().map(|(a, c)| json!({"exp": a.exps(), "coef": c.to_string()})).collect();
    json!({"n": p.nvars(), "terms": terms})
}

/// Reads the polynomial format; repeated exponents are rejected.
pub fn poly_from_json(v: &Value) -> Result<RealSparsePoly> {
    let raw: PolyJson = from_value(v)?;
    if raw.n == 0 {
        return Err(Error::Parse("n must be at least 1".into()));
    }
    let mut seen = BTreeSet::new();
    let mut terms = Vec::with_capacity(raw.terms.len());
    for t in raw.terms {
        let alpha = index(t.exp, raw.n)?;
        if !seen.insert(alpha.clone()) {
            return Err(Error::Parse(format!("exponent {alpha} listed twice")));
        }
        terms.push((alpha, t.coef.value()?));
    }
    RealSparsePoly::from_terms(raw.n, terms)
}

pub fn herm_to_json(r: &HermitianPoly) -> Value {
    let entries: Vec<Value> = r
        .entries()
        .filter(|(a, b, _)| a <= b)
        .map(|(a, b, c)| json!({"alpha": a.exps(), "beta": b.exps(), "re": c.re.to_string(), "im": c.im.to_string()}))
        .collect();
    json!({"n": r.nvars(), "entries": entries})
}

/// Reads the Hermitian format and validates symmetry of the completed
/// matrix.
pub fn herm_from_json(v: &Value) -> Result<HermitianPoly> {
    let raw: HermJson = from_value(v)?;
    if raw.n == 0 {
        return Err(Error::Parse("n must be at least 1".into()));
    }
    let mut entries = Vec::with_capacity(raw.entries.len());
    for e in raw.entries {
        let c = GaussianRational::new(e.re.value()?, e.im.value()?);
        entries.push((index(e.alpha, raw.n)?, index(e.beta, raw.n)?, c));
    }
    HermitianPoly::from_entries(raw.n, entries)
}

pub fn pattern_to_json(p: &SignPattern) -> Value {
    let pos: Vec<&[u32]> = p.positive().map(|a| a.exps()).collect();
    let neg: Vec<&[u32]> = p.negative().map(|a| a.exps()).collect();
    json!({"n": p.nvars(), "D": p.degree(), "pos": pos, "neg": neg})
}

pub fn pattern_from_json(v: &Value) -> Result<SignPattern> {
    let raw: PatternJson = from_value(v)?;
    let pos = raw.pos.into_iter().map(|e| index(e, raw.n)).collect::<Result<Vec<_>>>()?;
    let neg = raw.neg.into_iter().map(|e| index(e, raw.n)).collect::<Result<Vec<_>>>()?;
    SignPattern::from_sets(raw.n, raw.degree, pos, neg)
}

fn signature_json(s: SignaturePair) -> Value {
    json!({"n_plus": s.n_plus, "n_minus": s.n_minus})
}

fn signature_from(v: &Value) -> Result<SignaturePair> {
    from_value(v)
}

pub fn search_result_to_json(r: &SearchResult) -> Value {
    json!({
        "n": r.n,
        "D": r.degree,
        "d": r.d,
        "strategy": r.strategy.to_string(),
        "seed": r.seed,
        "evaluations": r.evaluations,
        "signature": signature_json(r.best.counts()),
        "ratio": r.ratio.to_string(),
        "pattern": pattern_to_json(&r.best),
        "realized": poly_to_json(&r.realized),
    })
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn uint(v: &Value, key: &str) -> Result<u64> {
    field(v, key)?.as_u64().ok_or_else(|| Error::Parse(format!("field {key:?} is not a nonnegative integer")))
}

fn text<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    field(v, key)?.as_str().ok_or_else(|| Error::Parse(format!("field {key:?} is not a string")))
}

fn boolean(v: &Value, key: &str) -> Result<bool> {
    field(v, key)?.as_bool().ok_or_else(|| Error::Parse(format!("field {key:?} is not a boolean")))
}

pub fn search_result_from_json(v: &Value) -> Result<SearchResult> {
    Ok(SearchResult {
        n: uint(v, "n")? as usize,
        degree: uint(v, "D")? as u32,
        d: uint(v, "d")? as u32,
        strategy: Strategy::from_str(text(v, "strategy")?)?,
        seed: uint(v, "seed")?,
        evaluations: uint(v, "evaluations")?,
        ratio: parse_rational(text(v, "ratio")?)?,
        best: pattern_from_json(field(v, "pattern")?)?,
        realized: poly_from_json(field(v, "realized")?)?,
    })
}

pub fn bound_report_to_json(r: &BoundReport) -> Value {
    json!({
        "n": r.n,
        "d": r.d,
        "signature": signature_json(r.signature),
        "bound": r.bound.to_string(),
        "satisfied": r.satisfied,
        "strict": r.strict,
    })
}

pub fn bound_report_from_json(v: &Value) -> Result<BoundReport> {
    Ok(BoundReport {
        n: uint(v, "n")? as usize,
        d: uint(v, "d")? as u32,
        signature: signature_from(field(v, "signature")?)?,
        bound: parse_rational(text(v, "bound")?)?,
        satisfied: boolean(v, "satisfied")?,
        strict: boolean(v, "strict")?,
    })
}

fn inertia_json(i: &Inertia) -> Value {
    json!({"n_plus": i.n_plus, "n_minus": i.n_minus, "n_zero": i.n_zero})
}

fn gauss_json(g: &GaussianRational) -> Value {
    json!({"re": g.re.to_string(), "im": g.im.to_string()})
}

pub fn psi_report_to_json(r: &PsiReport) -> Value {
    let certificate = match &r.certificate {
        Certificate::NonnegativeProduct { terms } => json!({"kind": "nonnegative_product", "terms": terms}),
        Certificate::NegativeCoefficient { monomial, value } => {
            json!({"kind": "negative_coefficient", "monomial": monomial.exps(), "value": value.to_string()})
        }
        Certificate::Psd { inertia, .. } => json!({"kind": "psd", "inertia": inertia_json(inertia)}),
        Certificate::NegativeDirection { basis, witness, value } => json!({
            "kind": "negative_direction",
            "basis": basis.iter().map(|b| b.exps()).collect::<Vec<_>>(),
            "witness": witness.iter().map(gauss_json).collect::<Vec<_>>(),
            "value": value.to_string(),
        }),
    };
    json!({"d": r.d, "member": r.member, "certificate": certificate})
}

pub fn certificate_to_json(c: &PigeonholeCertificate) -> Value {
    let assignment: Vec<Value> = c
        .assignment
        .iter()
        .map(|(a, b)| json!({"negative": a.exps(), "positive": b.exps()}))
        .collect();
    json!({
        "assignment": assignment,
        "max_fiber": c.max_fiber,
        "least_monomial": c.least_monomial.as_ref().map(|m| m.exps()),
    })
}

fn complex_json(z: &Complex64) -> Value {
    json!([z.re, z.im])
}

fn rows_json(rows: &[Vec<Complex64>]) -> Value {
    Value::Array(rows.iter().map(|r| Value::Array(r.iter().map(complex_json).collect())).collect())
}

pub fn step_to_json(s: &HyperbolicStep) -> Value {
    json!({
        "pivot_col": s.pivot_col,
        "rows": [s.rows.0, s.rows.1],
        "lambda": s.lambda_used.as_ref().map(|l| l.to_string()),
        "t": [[complex_json(&s.t[0][0]), complex_json(&s.t[0][1])], [complex_json(&s.t[1][0]), complex_json(&s.t[1][1])]],
    })
}

pub fn reduction_to_json(r: &Reduction) -> Value {
    json!({
        "signature": signature_json(r.origin_signature),
        "steps": r.steps.iter().map(step_to_json).collect::<Vec<_>>(),
        "reconstruction_error": r.reconstruction_error(),
        "max_j_defect": r.max_j_defect_ratio(),
        "form": {
            "n": r.form.n,
            "basis": r.form.basis.iter().map(|b| b.exps()).collect::<Vec<_>>(),
            "plus_rows": rows_json(&r.form.plus_rows),
            "minus_rows": rows_json(&r.form.minus_rows),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    #[test]
    fn polynomial_round_trip() {
        let text = r#"{"n": 3, "terms": [{"exp": [2,1,3], "coef": "-1"}, {"exp": [0,0,6], "coef": "7/2"}]}"#;
        let p = poly_from_json(&parse_json(text).unwrap()).unwrap();
        assert_eq!(p.coeff(&MultiIndex::from([2, 1, 3])), rat(-1));
        assert_eq!(p.coeff(&MultiIndex::from([0, 0, 6])), ratio(7, 2));
        assert_eq!(poly_from_json(&poly_to_json(&p)).unwrap(), p);
    }

    #[test]
    fn polynomial_rejects_bad_input() {
        for text in [
            r#"{"n": 2, "terms": [{"exp": [1], "coef": "1"}]}"#,
            r#"{"n": 2, "terms": [{"exp": [1,0], "coef": "1/0"}]}"#,
            r#"{"n": 2, "terms": [{"exp": [1,0], "coef": "x"}]}"#,
            r#"{"n": 2, "terms": [{"exp": [1,0], "coef": "1"}, {"exp": [1,0], "coef": "2"}]}"#,
        ] {
            assert!(poly_from_json(&parse_json(text).unwrap()).is_err(), "{text}");
        }
    }

    #[test]
    fn hermitian_mirror_rules() {
        let ok = r#"{"n": 2, "entries": [{"alpha": [1,0], "beta": [0,1], "re": "1/2", "im": "-1"}]}"#;
        let r = herm_from_json(&parse_json(ok).unwrap()).unwrap();
        let back = r.entry(&MultiIndex::from([0, 1]), &MultiIndex::from([1, 0]));
        assert_eq!(back, GaussianRational::new(ratio(1, 2), rat(1)));
        assert_eq!(herm_from_json(&herm_to_json(&r)).unwrap(), r);
        let bad = r#"{"n": 2, "entries": [
            {"alpha": [1,0], "beta": [0,1], "re": "1", "im": "1"},
            {"alpha": [0,1], "beta": [1,0], "re": "1", "im": "1"}]}"#;
        assert!(matches!(herm_from_json(&parse_json(bad).unwrap()), Err(Error::NotHermitian(..))));
    }

    #[test]
    fn pattern_round_trip() {
        let text = r#"{"n":3, "D":2, "pos":[[2,0,0],[0,2,0],[1,0,1]], "neg":[[1,1,0]]}"#;
        let p = pattern_from_json(&parse_json(text).unwrap()).unwrap();
        assert_eq!(p.counts(), SignaturePair::new(3, 1));
        assert_eq!(pattern_from_json(&pattern_to_json(&p)).unwrap(), p);
    }
}
