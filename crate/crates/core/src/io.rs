//! JSON input documents and canonical JSON output.
//!
//! Output is canonical: object keys are sorted, integers are exact JSON
//! numbers of any size, and non-integral rationals are reduced strings.

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Map, Number, Value};

use crate::corpus::{self, Shape};
use crate::count::RationalPolytope;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::polytope::{AlmostIntegralPolytope, LatticePolytope};
use crate::quasipoly::QuasiPolynomial;
use crate::scalar::{is_integral, parse_rational, Rational};
use crate::zonotope::ZonotopeSpec;

/// A parsed input file, before any geometry is built.
#[derive(Clone, Debug, PartialEq)]
pub enum InputDocument {
    Vertices { vertices: Vec<Vec<Rational>>, translate: Option<Vec<Rational>> },
    Generators { generators: Vec<Vec<BigInt>>, translate: Option<Vec<Rational>> },
    Corpus { name: String, params: Map<String, Value> },
}

/// The geometric object an input describes.
#[derive(Clone, Debug)]
pub enum Input {
    Polytope(AlmostIntegralPolytope),
    /// Rational vertices with a translate kept apart.
    Rational(RationalPolytope, Vec<Rational>),
    Zonotope(ZonotopeSpec),
    WeightedSimplex(Vec<u64>),
}

fn rational_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(Error::Parse(format!("expected a rational, found {other}"))),
    }
}

fn integer_value(v: &Value) -> Result<BigInt> {
    let r = rational_value(v)?;
    if !r.is_integer() {
        return Err(Error::Parse(format!("expected an integer, found {r}")));
    }
    Ok(r.to_integer())
}

fn vector<T>(v: &Value, item: impl Fn(&Value) -> Result<T>) -> Result<Vec<T>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array, found {v}")))?
        .iter()
        .map(item)
        .collect()
}

fn same_dim<T>(rows: &[Vec<T>], d: usize) -> Result<()> {
    match rows.iter().find(|r| r.len() != d) {
        Some(r) => Err(Error::DimensionMismatch { expected: d, found: r.len() }),
        None => Ok(()),
    }
}

pub fn parse_input(text: &str) -> Result<InputDocument> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::Parse("input must be a JSON object".into()))?;
    let translate = obj
        .get("translate")
        .map(|t| vector(t, rational_value))
        .transpose()?;
    if let Some(name) = obj.get("corpus") {
        let name = name
            .as_str()
            .ok_or_else(|| Error::Parse("`corpus` must be a string".into()))?
            .to_string();
        let params = match obj.get("params") {
            None => Map::new(),
            Some(Value::Object(m)) => m.clone(),
            Some(_) => return Err(Error::Parse("`params` must be an object".into())),
        };
        return Ok(InputDocument::Corpus { name, params });
    }
    if let Some(vs) = obj.get("vertices") {
        let vertices = vector(vs, |r| vector(r, rational_value))?;
        let d = vertices.first().ok_or(Error::EmptyPolytope)?.len();
        same_dim(&vertices, d)?;
        if let Some(t) = &translate {
            same_dim(std::slice::from_ref(t), d)?;
        }
        return Ok(InputDocument::Vertices { vertices, translate });
    }
    if let Some(gs) = obj.get("generators") {
        let generators = vector(gs, |r| vector(r, integer_value))?;
        return Ok(InputDocument::Generators { generators, translate });
    }
    Err(Error::Parse("input needs `vertices`, `generators` or `corpus`".into()))
}

impl InputDocument {
    pub fn resolve(self) -> Result<Input> {
        match self {
            InputDocument::Vertices { vertices, translate } => {
                let d = vertices[0].len();
                let c = translate.unwrap_or_else(|| vec![Rational::zero(); d]);
                if vertices.iter().all(|v| is_integral(v)) {
                    let base = LatticePolytope::new(vertices.iter().map(|v| v.iter().map(|x| x.to_integer()).collect()).collect())?;
                    Ok(Input::Polytope(AlmostIntegralPolytope::new(base, c)?))
                } else {
                    Ok(Input::Rational(RationalPolytope::new(vertices)?, c))
                }
            }
            InputDocument::Generators { generators, translate } => {
                let d = match (&translate, generators.first()) {
                    (Some(t), _) => t.len(),
                    (None, Some(g)) => g.len(),
                    (None, None) => return Err(Error::Parse("a zonotope needs generators or a translate".into())),
                };
                let c = translate.unwrap_or_else(|| vec![Rational::zero(); d]);
                Ok(Input::Zonotope(ZonotopeSpec::new(d, generators, c)?))
            }
            InputDocument::Corpus { name, params } => {
                let entry = corpus::build(&name, &params)?;
                Ok(match entry.shape {
                    Shape::Polytope(p) => Input::Polytope(p),
                    Shape::Rational(r) => {
                        let d = r.vertices()[0].len();
                        Input::Rational(r, vec![Rational::zero(); d])
                    }
                    Shape::WeightedSimplex(w) => Input::WeightedSimplex(w),
                })
            }
        }
    }
}

pub fn integer_json(n: &BigInt) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("decimal integers are JSON numbers"))
}

/// Integers as numbers, everything else as a reduced `"p/q"` string.
pub fn rational_json(r: &Rational) -> Value {
    if r.is_integer() {
        integer_json(&r.to_integer())
    } else {
        Value::String(r.to_string())
    }
}

pub fn vector_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_json).collect())
}

/// Ascending coefficients.
pub fn poly_json(p: &Polynomial<Rational>) -> Value {
    Value::Array(p.coeffs().iter().map(rational_json).collect())
}

/// `{"period": ρ, "constituents": [f_1, …, f_ρ]}`; the last entry is the
/// constituent for `t ≡ 0`.
pub fn quasi_json(q: &QuasiPolynomial<Rational>) -> Value {
    let constituents: Vec<Value> = (1..=q.period()).map(|k| poly_json(q.constituent(k))).collect();
    json!({ "period": q.period(), "constituents": constituents })
}

/// Pretty-printed with sorted keys and a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn parses_documents() {
        let d = parse_input(r#"{"vertices": [[1,0],[0,1],["0","2"],[1,3],[2,1]], "translate": ["3/4", "3/4"]}"#).unwrap();
        let Input::Polytope(p) = d.resolve().unwrap() else { panic!() };
        assert_eq!(p.translate, vec![rat(3, 4), rat(3, 4)]);
        assert_eq!(p.base.vertices().len(), 5);

        let d = parse_input(r#"{"generators": [[1,0],[0,1]], "translate": ["1/2", 0]}"#).unwrap();
        assert!(matches!(d.resolve().unwrap(), Input::Zonotope(z) if z.generators.len() == 2));

        let d = parse_input(r#"{"corpus": "alcove", "params": {"type": "G2"}}"#).unwrap();
        assert!(matches!(d.resolve().unwrap(), Input::WeightedSimplex(w) if w == [2, 3]));

        let d = parse_input(r#"{"vertices": [["1/2",0],[0,1],[1,1]]}"#).unwrap();
        assert!(matches!(d.resolve().unwrap(), Input::Rational(..)));
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(parse_input("{"), Err(Error::Parse(_))));
        assert!(matches!(parse_input(r#"{"vertices": [["1/0", 1]]}"#), Err(Error::Parse(_))));
        assert!(matches!(parse_input(r#"{"vertices": [["1.5", 1]]}"#), Err(Error::Parse(_))));
        assert!(matches!(parse_input(r#"{"vertices": [[1, 1], [1]]}"#), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(parse_input(r#"{"vertices": [[1, 1]], "translate": [0]}"#), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(parse_input(r#"{"generators": [["1/2"]]}"#), Err(Error::Parse(_))));
        let gens = parse_input(r#"{"generators": [[1, 0]], "translate": [0]}"#).unwrap();
        assert!(matches!(gens.resolve(), Err(Error::DimensionMismatch { .. })));
        let low = parse_input(r#"{"vertices": [["1/2", 0], [1, 0]]}"#).unwrap();
        assert!(matches!(low.resolve(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn canonical_output() {
        let p = Polynomial::new(vec![rat(0, 1), rat(-4, 3), rat(0, 1), rat(4, 3)]);
        assert_eq!(serde_json::to_string(&poly_json(&p)).unwrap(), r#"[0,"-4/3",0,"4/3"]"#);
        let big = int(10).pow(40);
        assert_eq!(serde_json::to_string(&integer_json(&big)).unwrap(), format!("1{}", "0".repeat(40)));
        let v = json!({"zeta": 1, "alpha": 2});
        assert!(to_canonical_string(&v).find("alpha") < to_canonical_string(&v).find("zeta"));
    }
}
