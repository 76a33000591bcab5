//! Witness searches: translations `c` that break symmetry or the
//! GCD-property of `L_{c+P}`, plus a one-stop classifier.
//!
//! A search only ever refutes. Running out of budget says nothing about the
//! polytope.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::count::{count_points, translated_enumerator};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::polytope::{Face, FacetViolation, LatticePolytope};
use crate::scalar::{den, rat_int, Rational};

pub const DEFAULT_BUDGET: u64 = 10_000;

/// Candidates evaluated together; acceptance is still first-in-order.
const BATCH: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    Asymmetry,
    GcdViolation,
}

impl WitnessKind {
    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::Asymmetry => "asymmetry",
            WitnessKind::GcdViolation => "gcd_violation",
        }
    }
}

/// Two constituents of `L_{c+P}` that should agree but do not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence {
    pub period: usize,
    pub residues: (usize, usize),
    pub constituents: (Polynomial<Rational>, Polynomial<Rational>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub kind: WitnessKind,
    pub translate: Option<Vec<Rational>>,
    pub evidence: Option<Evidence>,
    pub attempts: u64,
}

impl WitnessReport {
    pub fn found(&self) -> bool {
        self.translate.is_some()
    }

    /// The report, or `BudgetExhausted` if nothing was found.
    pub fn require(self) -> Result<Self> {
        if self.found() {
            Ok(self)
        } else {
            Err(Error::BudgetExhausted { attempts: self.attempts })
        }
    }
}

fn scale(c: &[Rational], k: usize) -> Vec<Rational> {
    let k = rat_int(&BigInt::from(k));
    c.iter().map(|x| x * &k).collect()
}

/// Whether `L_{(P,a)} ≠ L_{(P,b)}`; both have degree at most `dim P`, so
/// `dim P + 1` samples decide it. `t = 1` goes first as the cheap filter.
fn enumerators_differ(p: &LatticePolytope, a: &[Rational], b: &[Rational]) -> Result<bool> {
    for t in 1..=p.dim() as u64 + 1 {
        if count_points(p, a, t)? != count_points(p, b, t)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Evidence that constituents `k` and `l` of `L_{c+P}` differ, if they do.
fn compare_constituents(p: &LatticePolytope, c: &[Rational], k: usize, l: usize) -> Result<Option<Evidence>> {
    let period = den(c)
        .to_usize()
        .ok_or_else(|| Error::Unsupported("period too large".into()))?;
    let (ck, cl) = (scale(c, k), scale(c, l));
    if !enumerators_differ(p, &ck, &cl)? {
        return Ok(None);
    }
    Ok(Some(Evidence {
        period,
        residues: (k, l),
        constituents: (translated_enumerator(p, &ck)?, translated_enumerator(p, &cl)?),
    }))
}

/// Constituents `1` and `ρ − 1` of `L_{c+P}`, when they differ.
pub fn check_asymmetry(p: &LatticePolytope, c: &[Rational]) -> Result<Option<Evidence>> {
    let rho = den(c);
    if rho <= BigInt::from(2) {
        return Ok(None);
    }
    let rho = rho.to_usize().ok_or_else(|| Error::Unsupported("period too large".into()))?;
    compare_constituents(p, c, 1, rho - 1)
}

/// Constituents `1` and `2` of `L_{c+P}` when `den(c)` is odd, so that
/// `gcd(ρ, 1) = gcd(ρ, 2)`, and they differ.
pub fn check_gcd_violation(p: &LatticePolytope, c: &[Rational]) -> Result<Option<Evidence>> {
    let rho = den(c);
    if rho.is_even() || rho.is_one() {
        return Ok(None);
    }
    compare_constituents(p, c, 1, 2)
}

/// `Σ (j_i / q) b_i` over the lattice basis of `aff_0(P)`.
fn lattice_combination(p: &LatticePolytope, coeffs: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); p.ambient_dim()];
    for (b, x) in p.affine_hull().lattice_basis.iter().zip(coeffs) {
        for (o, bi) in out.iter_mut().zip(b) {
            *o += x * bi;
        }
    }
    out
}

/// Grid points `(1/q) Z^m ∩ [0,1)^m` in lattice coordinates, for each `q`
/// from `qs`, skipping points whose denominator is a proper divisor of `q`.
fn grid<'a>(p: &'a LatticePolytope, qs: impl Iterator<Item = u64> + 'a) -> impl Iterator<Item = Vec<Rational>> + 'a {
    let m = p.dim() as u32;
    qs.take_while(move |_| m > 0)
        .map_while(move |q| q.checked_pow(m).map(|n| (q, n)))
        .flat_map(move |(q, n)| {
            (0..n).filter_map(move |mut idx| {
                let mut js = Vec::with_capacity(m as usize);
                let mut g = q;
                for _ in 0..m {
                    let j = idx % q;
                    idx /= q;
                    g = g.gcd(&j);
                    js.push(j);
                }
                (g == 1).then(|| {
                    let qq = BigInt::from(q);
                    let coeffs: Vec<Rational> = js.iter().map(|&j| Rational::new(BigInt::from(j), qq.clone())).collect();
                    lattice_combination(p, &coeffs)
                })
            })
        })
}

/// `(j/q)·w` for each direction `w` and each reduced `j/q ∈ (0,1)`.
fn scalings(directions: Vec<Vec<BigInt>>, qs: Vec<u64>) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for q in qs {
        for w in &directions {
            for j in (1..q).filter(|j| j.gcd(&q) == 1) {
                let x = Rational::new(BigInt::from(j), BigInt::from(q));
                out.push(w.iter().map(|a| &x * a).collect());
            }
        }
    }
    out
}

/// Runs `accept` over unique candidates in order, `BATCH` at a time, and
/// reports the first success.
fn search(
    kind: WitnessKind,
    candidates: impl Iterator<Item = Vec<Rational>>,
    budget: u64,
    accept: impl Fn(&[Rational]) -> Result<Option<Evidence>> + Sync,
) -> Result<WitnessReport> {
    let mut seen = HashSet::new();
    let mut unique = candidates.filter(|c| seen.insert(c.clone()));
    let mut attempts = 0u64;
    loop {
        let room = (budget - attempts).min(BATCH as u64) as usize;
        let batch: Vec<Vec<Rational>> = unique.by_ref().take(room).collect();
        if batch.is_empty() {
            return Ok(WitnessReport { kind, translate: None, evidence: None, attempts });
        }
        let verdicts: Vec<Result<Option<Evidence>>> = batch.par_iter().map(|c| accept(c)).collect();
        for (c, v) in batch.into_iter().zip(verdicts) {
            attempts += 1;
            if let Some(evidence) = v? {
                return Ok(WitnessReport {
                    kind,
                    translate: Some(c),
                    evidence: Some(evidence),
                    attempts,
                });
            }
        }
    }
}

/// Searches for `c` with `L_{(P,c)} ≠ L_{(P,−c)}`, i.e. constituents `1` and
/// `ρ − 1` of `L_{c+P}` differ.
///
/// Candidates: small multiples of facet normals and facet edges for facets
/// without a matching opposite facet, then a grid in `aff_0(P)` with growing
/// denominator.
pub fn asymmetry_witness(p: &LatticePolytope, budget: u64) -> Result<WitnessReport> {
    let mut directions = Vec::new();
    for FacetViolation { facet, .. } in p.minkowski_facet_check() {
        let h = &p.hrep().inequalities[facet];
        directions.push(h.normal.clone());
        let f = p.facet_polytope(facet);
        let v0 = &f.vertices()[0];
        for v in &f.vertices()[1..] {
            directions.push(v.iter().zip(v0).map(|(a, b)| a - b).collect());
        }
    }
    let guided = scalings(directions, (3..=8).collect());
    let candidates = guided.into_iter().chain(grid(p, 3..));
    search(WitnessKind::Asymmetry, candidates, budget, |c| check_asymmetry(p, c))
}

/// Searches for `c` of odd denominator with `L_{(P,c)} ≠ L_{(P,2c)}`, which
/// breaks the GCD-property of `L_{c+P}` at residues `1` and `2`.
///
/// Candidates: odd-denominator scalings `x·c₀` of small integer directions
/// `c₀` in `aff_0(P)`, then a grid of odd denominators.
pub fn gcd_violation_witness(p: &LatticePolytope, budget: u64) -> Result<WitnessReport> {
    let basis = &p.affine_hull().lattice_basis;
    let m = basis.len();
    let mut coeffs: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..m).map(|j| i64::from(i == j)).collect())
        .collect();
    coeffs.push(vec![1; m]);
    if m <= 4 {
        // {−1, 0, 1} combinations up to sign: first nonzero entry positive
        for idx in 0..3u32.pow(m as u32) {
            let v: Vec<i64> = (0..m).map(|i| (idx / 3u32.pow(i as u32) % 3) as i64 - 1).collect();
            if v.iter().find(|&&x| x != 0) == Some(&1) {
                coeffs.push(v);
            }
        }
    }
    let directions: Vec<Vec<BigInt>> = coeffs
        .iter()
        .map(|k| {
            (0..p.ambient_dim())
                .map(|r| basis.iter().zip(k).map(|(b, &x)| &b[r] * x).sum())
                .collect()
        })
        .collect();
    let odd = || (3u64..).step_by(2);
    let guided = if m == 0 { Vec::new() } else { scalings(directions, odd().take(7).collect()) };
    let candidates = guided.into_iter().chain(grid(p, odd()));
    search(WitnessKind::GcdViolation, candidates, budget, |c| check_gcd_violation(p, c))
}

/// Which searches `classify` should run.
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { budget: DEFAULT_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub dim: usize,
    /// `c` with `P = c + (−P)`.
    pub center: Option<Vec<Rational>>,
    pub facet_violations: Vec<FacetViolation>,
    pub zonotope: bool,
    pub asymmetric_face: Option<Face>,
    pub asymmetry_witness: Option<WitnessReport>,
    pub gcd_witness: Option<WitnessReport>,
}

impl Classification {
    pub fn centrally_symmetric(&self) -> bool {
        self.center.is_some()
    }
}

/// Structural verdicts, plus witness searches for whatever the structure
/// leaves open when `search` is given.
pub fn classify(p: &LatticePolytope, search: Option<SearchOptions>) -> Result<Classification> {
    let center = p.is_centrally_symmetric();
    let verdict = p.is_zonotope();
    let mut out = Classification {
        dim: p.dim(),
        facet_violations: p.minkowski_facet_check(),
        zonotope: verdict.zonotope,
        asymmetric_face: verdict.asymmetric_face,
        asymmetry_witness: None,
        gcd_witness: None,
        center,
    };
    if let Some(opts) = search {
        if out.center.is_none() {
            out.asymmetry_witness = Some(asymmetry_witness(p, opts.budget)?);
        }
        if !out.zonotope {
            out.gcd_witness = Some(gcd_violation_witness(p, opts.budget)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::ehrhart_quasi;
    use crate::polytope::AlmostIntegralPolytope;
    use crate::scalar::rat;

    fn poly(v: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::from_i64(v).unwrap()
    }

    fn simplex() -> LatticePolytope {
        poly(&[&[0, 0], &[1, 0], &[0, 1]])
    }

    fn octahedron() -> LatticePolytope {
        poly(&[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1]])
    }

    fn cube() -> LatticePolytope {
        poly(&[
            &[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1],
            &[1, 1, 0], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1],
        ])
    }

    /// Re-derives the evidence from the full quasi-polynomial.
    fn reverify(p: &LatticePolytope, r: &WitnessReport) {
        let c = r.translate.clone().unwrap();
        let e = r.evidence.clone().unwrap();
        let q = ehrhart_quasi(&AlmostIntegralPolytope::new(p.clone(), c).unwrap()).unwrap();
        let (k, l) = e.residues;
        assert_eq!(q.period(), e.period);
        assert_eq!(q.constituent(k), &e.constituents.0);
        assert_eq!(q.constituent(l), &e.constituents.1);
        assert_ne!(e.constituents.0, e.constituents.1);
        match r.kind {
            WitnessKind::Asymmetry => assert_eq!(k + l, e.period),
            WitnessKind::GcdViolation => assert_eq!(e.period.gcd(&k), e.period.gcd(&l)),
        }
    }

    #[test]
    fn simplex_asymmetry() {
        let c = vec![rat(1, 3), rat(1, 3)];
        let neg = vec![rat(-1, 3), rat(-1, 3)];
        assert_eq!(count_points(&simplex(), &c, 1).unwrap(), BigInt::zero());
        assert_eq!(count_points(&simplex(), &neg, 1).unwrap(), BigInt::one());
        assert!(check_asymmetry(&simplex(), &c).unwrap().is_some());
        let r = asymmetry_witness(&simplex(), 100).unwrap();
        reverify(&simplex(), &r);
        let r = gcd_violation_witness(&simplex(), 500).unwrap();
        assert!(den(r.translate.as_ref().unwrap()).is_odd());
        reverify(&simplex(), &r);
    }

    #[test]
    fn pentagon_asymmetry() {
        let p = poly(&[&[1, 0], &[0, 1], &[0, 2], &[1, 3], &[2, 1]]);
        let r = asymmetry_witness(&p, 1000).unwrap().require().unwrap();
        assert!(den(r.translate.as_ref().unwrap()) <= BigInt::from(8));
        reverify(&p, &r);
    }

    #[test]
    fn octahedron_witnesses() {
        let p = octahedron();
        let c = vec![rat(1, 5); 3];
        let e = check_gcd_violation(&p, &c).unwrap().unwrap();
        assert_eq!(e.residues, (1, 2));
        let r = gcd_violation_witness(&p, 2000).unwrap().require().unwrap();
        reverify(&p, &r);
        let r = asymmetry_witness(&p, 300).unwrap();
        assert!(!r.found());
        assert_eq!(r.attempts, 300);
    }

    #[test]
    fn cube_exhausts() {
        let r = gcd_violation_witness(&cube(), 300).unwrap();
        assert!(!r.found());
        assert!(matches!(r.require(), Err(Error::BudgetExhausted { attempts: 300 })));
        assert!(!asymmetry_witness(&cube(), 300).unwrap().found());
    }

    #[test]
    fn lower_dimensional() {
        let tri = poly(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let r = asymmetry_witness(&tri, 500).unwrap().require().unwrap();
        reverify(&tri, &r);
        let point = poly(&[&[1, 2]]);
        assert_eq!(asymmetry_witness(&point, 10).unwrap().attempts, 0);
    }

    #[test]
    fn classification() {
        let c = classify(&cube(), Some(SearchOptions::default())).unwrap();
        assert!(c.centrally_symmetric() && c.zonotope);
        assert!(c.asymmetry_witness.is_none() && c.gcd_witness.is_none());
        let o = classify(&octahedron(), Some(SearchOptions { budget: 2000 })).unwrap();
        assert!(o.centrally_symmetric() && !o.zonotope);
        assert!(o.gcd_witness.unwrap().found());
    }
}
