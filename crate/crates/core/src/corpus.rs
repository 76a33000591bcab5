//! Named polytopes from the literature, with recorded expectations.

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{Map, Value};

use crate::count::{count_points, count_weighted_simplex, ehrhart_quasi, weighted_simplex_quasi, RationalPolytope};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::polytope::{AlmostIntegralPolytope, LatticePolytope};
use crate::quasipoly::QuasiPolynomial;
use crate::scalar::{int, rat, rat_int, Rational};

pub const NAMES: &[&str] = &[
    "cube",
    "cross_polytope",
    "pentagon_s3",
    "p1_ninth_cube",
    "p2_shifted_octahedron",
    "p3_shifted_cube",
    "counterexample_pn",
    "alcove",
];

pub const ALCOVES: &[(&str, &[u64])] = &[
    ("E6", &[1, 1, 2, 2, 2, 3]),
    ("E7", &[1, 2, 2, 2, 3, 3, 4]),
    ("E8", &[2, 2, 3, 3, 4, 4, 5, 6]),
    ("F4", &[2, 2, 3, 4]),
    ("G2", &[2, 3]),
];

/// Where an expected value comes from. `Disputed` marks a printed value that
/// direct counting contradicts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Published,
    Derived,
    Disputed,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Published => "published",
            Provenance::Derived => "derived",
            Provenance::Disputed => "disputed",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expected {
    MinimalPeriod(usize),
    GcdProperty(bool),
    Symmetric(bool),
    /// Constituent for `t ≡ residue`, with `residue = ρ` standing for 0.
    Constituent { residue: usize, poly: Polynomial<Rational> },
    /// Lattice points in the `t`-th dilate.
    Count { t: u64, count: BigInt },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub value: Expected,
    pub provenance: Provenance,
}

#[derive(Clone, Debug)]
pub enum Shape {
    Polytope(AlmostIntegralPolytope),
    Rational(RationalPolytope),
    /// `{x ≥ 0 : Σ wᵢ xᵢ ≤ 1}`.
    WeightedSimplex(Vec<u64>),
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub params: Map<String, Value>,
    pub shape: Shape,
    pub expected: Vec<Expectation>,
}

/// Outcome of re-deriving one expectation.
#[derive(Clone, Debug)]
pub struct Check {
    pub expectation: Expectation,
    pub computed: String,
    pub holds: bool,
}

impl CorpusEntry {
    pub fn quasi(&self) -> Result<QuasiPolynomial<Rational>> {
        match &self.shape {
            Shape::Polytope(p) => ehrhart_quasi(p),
            Shape::Rational(r) => r.ehrhart_quasi(),
            Shape::WeightedSimplex(w) => weighted_simplex_quasi(w),
        }
    }

    /// `#(t·Q ∩ Z^d)` for the entry's polytope `Q`.
    pub fn count(&self, t: u64) -> Result<BigInt> {
        match &self.shape {
            Shape::Polytope(p) => {
                let tc: Vec<Rational> = p.translate.iter().map(|x| x * rat_int(&BigInt::from(t))).collect();
                count_points(&p.base, &tc, t)
            }
            Shape::Rational(r) => r.count_dilate(&vec![Rational::zero(); r.vertices()[0].len()], t),
            Shape::WeightedSimplex(w) => count_weighted_simplex(w, t),
        }
    }

    /// Recomputes every expectation from scratch.
    pub fn verify(&self) -> Result<Vec<Check>> {
        let needs_quasi = self.expected.iter().any(|e| !matches!(e.value, Expected::Count { .. }));
        let q = if needs_quasi { Some(self.quasi()?) } else { None };
        let mut out = Vec::new();
        for e in &self.expected {
            let (computed, holds) = match &e.value {
                Expected::MinimalPeriod(p) => {
                    let m = q.as_ref().unwrap().minimal_period().period();
                    (m.to_string(), m == *p)
                }
                Expected::GcdProperty(b) => {
                    let v = q.as_ref().unwrap().has_gcd_property();
                    (v.to_string(), v == *b)
                }
                Expected::Symmetric(b) => {
                    let v = q.as_ref().unwrap().is_symmetric();
                    (v.to_string(), v == *b)
                }
                Expected::Constituent { residue, poly } => {
                    let f = q.as_ref().unwrap().constituent(*residue);
                    (f.to_string(), f == poly)
                }
                Expected::Count { t, count } => {
                    let n = self.count(*t)?;
                    (n.to_string(), &n == count)
                }
            };
            out.push(Check { expectation: e.clone(), computed, holds });
        }
        Ok(out)
    }
}

fn expect(value: Expected, provenance: Provenance) -> Expectation {
    Expectation { value, provenance }
}

fn poly(c: &[(i64, i64)]) -> Polynomial<Rational> {
    Polynomial::new(c.iter().map(|&(n, d)| rat(n, d)).collect())
}

fn lattice(points: Vec<Vec<i64>>) -> Result<LatticePolytope> {
    LatticePolytope::new(points.into_iter().map(|p| p.into_iter().map(int).collect()).collect())
}

pub fn unit_cube(d: usize) -> Result<LatticePolytope> {
    lattice(
        (0..1u64 << d)
            .map(|m| (0..d).map(|i| ((m >> i) & 1) as i64).collect())
            .collect(),
    )
}

pub fn cross_polytope(d: usize) -> Result<LatticePolytope> {
    lattice(
        (0..2 * d)
            .map(|j| {
                let mut v = vec![0; d];
                v[j / 2] = if j % 2 == 0 { 1 } else { -1 };
                v
            })
            .collect(),
    )
}

pub fn pentagon() -> LatticePolytope {
    lattice(vec![vec![1, 0], vec![0, 1], vec![0, 2], vec![1, 3], vec![2, 1]]).expect("fixed data")
}

/// `conv{0, ne₁, ne₂, n(e₁+e₂), e₃, ne₂+e₃, (1−n)e₃}`.
pub fn counterexample_polytope(n: i64) -> Result<LatticePolytope> {
    if n <= 7 {
        return Err(Error::BadParams(format!("counterexample_pn needs n > 7, got {n}")));
    }
    lattice(vec![
        vec![0, 0, 0],
        vec![n, 0, 0],
        vec![0, n, 0],
        vec![n, n, 0],
        vec![0, 0, 1],
        vec![0, n, 1],
        vec![0, 0, 1 - n],
    ])
}

/// `(2n³ + 3n² + 19n + 12) / 6`.
pub fn base_count_closed_form(n: i64) -> BigInt {
    let n = BigInt::from(n);
    (&n * &n * &n * 2 + &n * &n * 3 + &n * 19 + 12) / 6
}

/// `k(n+1) − k² − 2n − 1`.
pub fn alpha_closed_form(n: i64, k: i64) -> BigInt {
    let (n, k) = (BigInt::from(n), BigInt::from(k));
    &k * (&n + 1) - &k * &k - &n * 2 - 1
}

/// `|P_n ∩ Z³|` by direct counting.
pub fn counterexample_base_count(n: i64) -> Result<BigInt> {
    count_points(&counterexample_polytope(n)?, &[rat(0, 1), rat(0, 1), rat(0, 1)], 1)
}

/// `|(c_k + P_n) ∩ Z³| − |P_n ∩ Z³|` by direct counting, `c_k = (k/n)e₃`.
pub fn counterexample_alpha(n: i64, k: i64) -> Result<BigInt> {
    if !(0 < k && k < n) {
        return Err(Error::BadParams(format!("need 0 < k < n, got k = {k}, n = {n}")));
    }
    let p = counterexample_polytope(n)?;
    let shifted = count_points(&p, &[rat(0, 1), rat(0, 1), rat(k, n)], 1)?;
    Ok(shifted - counterexample_base_count(n)?)
}

fn int_param(params: &Map<String, Value>, key: &str) -> Result<Option<i64>> {
    match params.get(key) {
        None => Ok(None),
        Some(v) => v
            .as_i64()
            .or_else(|| v.as_str().and_then(|s| s.parse().ok()))
            .map(Some)
            .ok_or_else(|| Error::BadParams(format!("parameter `{key}` must be an integer"))),
    }
}

fn dim_param(params: &Map<String, Value>) -> Result<usize> {
    match int_param(params, "d")? {
        None => Ok(3),
        Some(d) if (1..=12).contains(&d) => Ok(d as usize),
        Some(d) => Err(Error::BadParams(format!("dimension must be in 1..=12, got {d}"))),
    }
}

/// Builds a corpus entry. `name` may carry positional arguments, as in
/// `alcove(G2)` or `counterexample_pn(8,3)`; they fill `params` in order.
pub fn build(name: &str, params: &Map<String, Value>) -> Result<CorpusEntry> {
    let (base, mut params) = split_name(name, params)?;
    let d3 = || vec![rat(0, 1); 3];
    let (shape, expected) = match base.as_str() {
        "cube" => {
            let d = dim_param(&params)?;
            let p = AlmostIntegralPolytope::new(unit_cube(d)?, vec![rat(0, 1); d])?;
            let mut f = Polynomial::constant(rat(1, 1));
            for _ in 0..d {
                f = &f * &poly(&[(1, 1), (1, 1)]);
            }
            let e = vec![
                expect(Expected::Constituent { residue: 1, poly: f }, Provenance::Derived),
                expect(Expected::GcdProperty(true), Provenance::Derived),
            ];
            (Shape::Polytope(p), e)
        }
        "cross_polytope" => {
            let d = dim_param(&params)?;
            let p = AlmostIntegralPolytope::new(cross_polytope(d)?, vec![rat(0, 1); d])?;
            let e = vec![expect(Expected::Count { t: 1, count: BigInt::from(2 * d + 1) }, Provenance::Derived)];
            (Shape::Polytope(p), e)
        }
        "pentagon_s3" => {
            let p = AlmostIntegralPolytope::new(pentagon(), vec![rat(3, 4), rat(3, 4)])?;
            let e = vec![
                expect(Expected::Constituent { residue: 1, poly: poly(&[(0, 1), (3, 2), (7, 2)]) }, Provenance::Published),
                expect(Expected::Constituent { residue: 4, poly: poly(&[(1, 1), (5, 2), (7, 2)]) }, Provenance::Published),
                expect(Expected::Count { t: 1, count: int(5) }, Provenance::Published),
                expect(Expected::Count { t: 2, count: int(17) }, Provenance::Published),
            ];
            (Shape::Polytope(p), e)
        }
        "p1_ninth_cube" => {
            let verts = (0..8)
                .map(|m: i64| (0..3).map(|i| rat((m >> i) & 1, 9)).collect())
                .collect();
            let mut e = vec![expect(Expected::MinimalPeriod(9), Provenance::Published)];
            for k in 0..9i64 {
                let lin = poly(&[(9 - k, 9), (1, 9)]);
                let f = &(&lin * &lin) * &lin;
                let residue = if k == 0 { 9 } else { k as usize };
                e.push(expect(Expected::Constituent { residue, poly: f }, Provenance::Published));
            }
            (Shape::Rational(RationalPolytope::new(verts)?), e)
        }
        "p2_shifted_octahedron" => {
            let p = AlmostIntegralPolytope::new(cross_polytope(3)?, vec![rat(5, 9), rat(5, 9), rat(2, 3)])?;
            let table = [
                (&[1usize, 8][..], poly(&[(0, 1), (-4, 3), (0, 1), (4, 3)])),
                (&[2, 7], poly(&[(0, 1), (2, 3), (0, 1), (4, 3)])),
                (&[3, 6], poly(&[(0, 1), (2, 3), (1, 1), (4, 3)])),
                (&[4, 5], poly(&[(0, 1), (-1, 3), (0, 1), (4, 3)])),
                (&[9], poly(&[(1, 1), (8, 3), (2, 1), (4, 3)])),
            ];
            let mut e = vec![
                expect(Expected::MinimalPeriod(9), Provenance::Published),
                expect(Expected::Symmetric(true), Provenance::Published),
                expect(Expected::GcdProperty(false), Provenance::Derived),
            ];
            for (residues, f) in table {
                for &residue in residues {
                    e.push(expect(Expected::Constituent { residue, poly: f.clone() }, Provenance::Published));
                }
            }
            (Shape::Polytope(p), e)
        }
        "p3_shifted_cube" => {
            let p = AlmostIntegralPolytope::new(unit_cube(3)?, vec![rat(1, 9), rat(2, 9), rat(1, 3)])?;
            let mut e = vec![
                expect(Expected::MinimalPeriod(9), Provenance::Published),
                expect(Expected::GcdProperty(true), Provenance::Published),
                expect(Expected::Constituent { residue: 9, poly: poly(&[(1, 1), (3, 1), (3, 1), (1, 1)]) }, Provenance::Published),
            ];
            for residue in [1usize, 2, 4, 5, 7, 8] {
                e.push(expect(Expected::Constituent { residue, poly: poly(&[(0, 1), (0, 1), (0, 1), (1, 1)]) }, Provenance::Published));
            }
            for residue in [3usize, 6] {
                e.push(expect(Expected::Constituent { residue, poly: poly(&[(0, 1), (1, 1), (0, 1), (1, 1)]) }, Provenance::Disputed));
                e.push(expect(Expected::Constituent { residue, poly: poly(&[(0, 1), (0, 1), (1, 1), (1, 1)]) }, Provenance::Derived));
            }
            e.push(expect(Expected::Count { t: 3, count: int(36) }, Provenance::Derived));
            (Shape::Polytope(p), e)
        }
        "counterexample_pn" => {
            let n = int_param(&params, "n")?.ok_or_else(|| Error::BadParams("counterexample_pn needs `n`".into()))?;
            let p = counterexample_polytope(n)?;
            let base_count = base_count_closed_form(n);
            let (c, count) = match int_param(&params, "k")? {
                None => (d3(), base_count),
                Some(k) if 0 < k && k < n => (vec![rat(0, 1), rat(0, 1), rat(k, n)], base_count + alpha_closed_form(n, k)),
                Some(k) => return Err(Error::BadParams(format!("need 0 < k < n, got k = {k}, n = {n}"))),
            };
            let e = vec![expect(Expected::Count { t: 1, count }, Provenance::Published)];
            (Shape::Polytope(AlmostIntegralPolytope::new(p, c)?), e)
        }
        "alcove" => {
            let root = match params.get("type") {
                Some(Value::String(s)) => s.clone(),
                _ => return Err(Error::BadParams("alcove needs `type` (E6, E7, E8, F4 or G2)".into())),
            };
            let (_, weights) = ALCOVES
                .iter()
                .find(|(n, _)| n.eq_ignore_ascii_case(&root))
                .ok_or_else(|| Error::BadParams(format!("unknown alcove type `{root}`")))?;
            let period = weights.iter().fold(1u64, |a, &b| num_integer::lcm(a, b)) as usize;
            params.insert("type".into(), Value::String(root.to_uppercase()));
            let e = vec![
                expect(Expected::MinimalPeriod(period), Provenance::Published),
                expect(Expected::GcdProperty(true), Provenance::Published),
            ];
            (Shape::WeightedSimplex(weights.to_vec()), e)
        }
        _ => return Err(Error::UnknownName(base)),
    };
    Ok(CorpusEntry { name: base, params, shape, expected })
}

/// `name(a,b)` → (`name`, params with positional arguments filled in).
fn split_name(name: &str, params: &Map<String, Value>) -> Result<(String, Map<String, Value>)> {
    let mut params = params.clone();
    let name = name.trim();
    let Some(open) = name.find('(') else {
        return Ok((name.to_string(), params));
    };
    let inner = name[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in `{name}`")))?;
    let base = name[..open].trim().to_string();
    let keys: &[&str] = match base.as_str() {
        "cube" | "cross_polytope" => &["d"],
        "counterexample_pn" => &["n", "k"],
        "alcove" => &["type"],
        _ => &[],
    };
    let args: Vec<&str> = inner.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if args.len() > keys.len() {
        return Err(Error::BadParams(format!("too many arguments for `{base}`")));
    }
    for (key, arg) in keys.iter().zip(args) {
        let v = match arg.parse::<i64>() {
            Ok(i) => Value::from(i),
            Err(_) => Value::String(arg.to_string()),
        };
        params.insert((*key).to_string(), v);
    }
    Ok((base, params))
}
