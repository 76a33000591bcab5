//! The reproduction suite: every published table and verdict, recomputed.

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::corpus::{self, alpha_closed_form, base_count_closed_form, counterexample_alpha, counterexample_base_count, Expected, Provenance};
use crate::count::{count_points, ehrhart_quasi, lost_new_counts, translated_enumerator, weighted_simplex_quasi};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::polytope::AlmostIntegralPolytope;
use crate::scalar::{rat, rat_int, Rational};

pub const GROUPS: &[&str] = &["pentagon", "period_nine", "octahedron_mod5", "alcoves", "counterexample_pn"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The printed value disagrees with direct counting, as recorded.
    Disputed,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Disputed => "disputed",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReproCheck {
    pub group: &'static str,
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
}

impl ReproCheck {
    fn new(group: &'static str, name: impl Into<String>, expected: impl ToString, computed: impl ToString) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let status = if expected == computed { Status::Pass } else { Status::Fail };
        Self { group, name: name.into(), expected, computed, status }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group,
            "name": self.name,
            "expected": self.expected,
            "computed": self.computed,
            "status": self.status.name(),
        })
    }
}

/// Runs the named groups, or all of them when `only` is empty.
pub fn run(only: &[String]) -> Result<Vec<ReproCheck>> {
    for g in only {
        if !GROUPS.contains(&g.as_str()) {
            return Err(Error::UnknownName(g.clone()));
        }
    }
    let mut out = Vec::new();
    for g in GROUPS {
        if only.is_empty() || only.iter().any(|o| o == g) {
            out.extend(run_group(g)?);
        }
    }
    Ok(out)
}

pub fn all_pass(checks: &[ReproCheck]) -> bool {
    checks.iter().all(|c| c.status != Status::Fail)
}

pub fn run_group(group: &str) -> Result<Vec<ReproCheck>> {
    match group {
        "pentagon" => pentagon(),
        "period_nine" => period_nine(),
        "octahedron_mod5" => octahedron_mod5(),
        "alcoves" => alcoves(),
        "counterexample_pn" => counterexample_pn(),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

fn poly(c: &[(i64, i64)]) -> Polynomial<Rational> {
    Polynomial::new(c.iter().map(|&(n, d)| rat(n, d)).collect())
}

fn fit(samples: &[BigInt]) -> Polynomial<Rational> {
    let pts: Vec<(Rational, Rational)> = samples
        .iter()
        .enumerate()
        .map(|(t, n)| (rat(t as i64, 1), rat_int(n)))
        .collect();
    Polynomial::interpolate(&pts)
}

fn pentagon() -> Result<Vec<ReproCheck>> {
    const G: &str = "pentagon";
    let p = corpus::pentagon();
    let c = vec![rat(3, 4), rat(3, 4)];
    let zero = vec![Rational::zero(); 2];
    let table: [(&str, [i64; 3]); 4] = [
        ("L_(P,c)", [0, 5, 17]),
        ("L_P", [1, 7, 20]),
        ("lost", [1, 4, 7]),
        ("new", [0, 2, 4]),
    ];
    let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); 4];
    for t in 0..4u64 {
        let (lost, new) = lost_new_counts(&p, &c, t)?;
        rows[0].push(count_points(&p, &c, t)?);
        rows[1].push(count_points(&p, &zero, t)?);
        rows[2].push(lost);
        rows[3].push(new);
    }
    let mut out = Vec::new();
    for ((label, expected), row) in table.iter().zip(&rows) {
        for t in 0..3 {
            out.push(ReproCheck::new(G, format!("{label}({t})"), expected[t], &row[t]));
        }
    }
    let polys = [
        ("L_(P,c)", poly(&[(0, 1), (3, 2), (7, 2)]), translated_enumerator(&p, &c)?),
        ("L_P", poly(&[(1, 1), (5, 2), (7, 2)]), translated_enumerator(&p, &zero)?),
        ("lost", poly(&[(1, 1), (3, 1)]), fit(&rows[2])),
        ("new", poly(&[(0, 1), (2, 1)]), fit(&rows[3])),
    ];
    for (label, expected, computed) in polys {
        out.push(ReproCheck::new(G, format!("{label}(t)"), expected, computed));
    }
    Ok(out)
}

fn describe(e: &Expected) -> (String, String) {
    match e {
        Expected::MinimalPeriod(p) => ("minimal period".into(), p.to_string()),
        Expected::GcdProperty(b) => ("gcd property".into(), b.to_string()),
        Expected::Symmetric(b) => ("symmetric".into(), b.to_string()),
        Expected::Constituent { residue, poly } => (format!("f_{residue}"), poly.to_string()),
        Expected::Count { t, count } => (format!("count at t={t}"), count.to_string()),
    }
}

fn period_nine() -> Result<Vec<ReproCheck>> {
    let mut out = Vec::new();
    for name in ["p1_ninth_cube", "p2_shifted_octahedron", "p3_shifted_cube"] {
        let entry = corpus::build(name, &Default::default())?;
        for check in entry.verify()? {
            let (label, expected) = describe(&check.expectation.value);
            let status = match (check.holds, check.expectation.provenance) {
                (true, _) => Status::Pass,
                (false, Provenance::Disputed) => Status::Disputed,
                (false, _) => Status::Fail,
            };
            out.push(ReproCheck {
                group: "period_nine",
                name: format!("{name}: {label} [{}]", check.expectation.provenance.name()),
                expected,
                computed: check.computed,
                status,
            });
        }
    }
    Ok(out)
}

fn octahedron_mod5() -> Result<Vec<ReproCheck>> {
    const G: &str = "octahedron_mod5";
    let a = AlmostIntegralPolytope::new(corpus::cross_polytope(3)?, vec![rat(1, 5); 3])?;
    let q = ehrhart_quasi(&a)?;
    let f14 = poly(&[(0, 1), (-1, 3), (0, 1), (4, 3)]);
    let f23 = poly(&[(0, 1), (-4, 3), (0, 1), (4, 3)]);
    let f0 = poly(&[(1, 1), (8, 3), (2, 1), (4, 3)]);
    let mut out = vec![ReproCheck::new(G, "period", 5, q.period())];
    for (k, f) in [(0, &f0), (1, &f14), (2, &f23), (3, &f23), (4, &f14)] {
        out.push(ReproCheck::new(G, format!("f_{k}"), f, q.constituent(k)));
    }
    out.push(ReproCheck::new(G, "gcd property", false, q.has_gcd_property()));
    Ok(out)
}

fn alcoves() -> Result<Vec<ReproCheck>> {
    corpus::ALCOVES
        .iter()
        .map(|(name, weights)| {
            let expected = match *name {
                "E6" | "G2" => 6,
                "E7" | "F4" => 12,
                _ => 60,
            };
            let q = weighted_simplex_quasi(weights)?;
            let computed = format!("period {}, gcd {}", q.minimal_period().period(), q.has_gcd_property());
            Ok(ReproCheck::new("alcoves", *name, format!("period {expected}, gcd true"), computed))
        })
        .collect()
}

fn counterexample_pn() -> Result<Vec<ReproCheck>> {
    const G: &str = "counterexample_pn";
    let mut out = Vec::new();
    for n in 8..=12i64 {
        out.push(ReproCheck::new(G, format!("|P_{n}|"), base_count_closed_form(n), counterexample_base_count(n)?));
        let mut best: Option<(i64, BigInt)> = None;
        for k in 1..n {
            let a = counterexample_alpha(n, k)?;
            out.push(ReproCheck::new(G, format!("alpha({n},{k})"), alpha_closed_form(n, k), &a));
            if best.as_ref().is_none_or(|(_, b)| &a > b) {
                best = Some((k, a));
            }
        }
        if n % 2 == 1 {
            let (k, a) = best.expect("n > 1");
            let expected = format!("k={}, alpha={}", (n + 1) / 2, (n * n - 6 * n - 3) / 4);
            out.push(ReproCheck::new(G, format!("max alpha({n},k)"), expected, format!("k={k}, alpha={a}")));
        }
    }
    Ok(out)
}
