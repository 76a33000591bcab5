//! Exact lattice-point counting in dilated, translated polytopes.
//!
//! The workhorse is [`count_in_dilate`]: a full-dimensional polytope
//! `γ + s·conv(μ)` with integer `μ` and rational `γ`, `s`. All constraints are
//! scaled to integers and the last coordinate of every fibre is counted as an
//! interval, so the cost is one pass over the bounding box of the remaining
//! coordinates. Coordinates that fit comfortably in machine words are counted
//! in `i128`; anything larger falls back to `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{dot, solve};
use crate::poly::Polynomial;
use crate::polytope::{AlmostIntegralPolytope, LatticePolytope};
use crate::quasipoly::QuasiPolynomial;
use crate::scalar::{ceil_to_int, den, floor_to_int, is_integral, rat_int, rat_vec, LatticeInt, Rational};

fn check_dim(p: &LatticePolytope, c: &[Rational]) -> Result<()> {
    if c.len() != p.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: p.ambient_dim(),
            found: c.len(),
        });
    }
    Ok(())
}

/// One evaluation of the counting function: `#((x·c + t·P) ∩ Z^d)` where the
/// scan factor `x` defaults to 1.
#[derive(Clone, Debug)]
pub struct CountQuery {
    pub base: LatticePolytope,
    pub translate: Vec<Rational>,
    pub dilation: u64,
    pub scale: Option<Rational>,
}

impl CountQuery {
    pub fn run(&self) -> Result<BigInt> {
        match &self.scale {
            None => count_points(&self.base, &self.translate, self.dilation),
            Some(x) => {
                let c: Vec<Rational> = self.translate.iter().map(|ci| ci * x).collect();
                count_points(&self.base, &c, self.dilation)
            }
        }
    }
}

/// `#((c + t·P) ∩ Z^d)`; for `t = 0` this is `[c ∈ Z^d]`.
pub fn count_points(p: &LatticePolytope, c: &[Rational], t: u64) -> Result<BigInt> {
    check_dim(p, c)?;
    let indicator = |b: bool| if b { BigInt::one() } else { BigInt::zero() };
    if t == 0 {
        return Ok(indicator(is_integral(c)));
    }
    let t = BigInt::from(t);
    let base: Vec<Rational> = p.vertices()[0]
        .iter()
        .zip(c)
        .map(|(v, ci)| ci + rat_int(&(v * &t)))
        .collect();
    let m = p.dim();
    if m == 0 {
        return Ok(indicator(is_integral(&base)));
    }
    let offset = if m == p.ambient_dim() {
        base
    } else {
        match slice_offset(p, &base) {
            Some(g) => g,
            None => return Ok(BigInt::zero()),
        }
    };
    Ok(count_in_dilate(
        p.local_vertices(),
        p.local_inequalities(),
        &offset,
        &rat_int(&t),
    ))
}

/// For `w ∈ Q^d`, the local coordinates of `w − q` for an integer point `q`
/// with `w − q ∈ aff_0(P)`, or `None` if `w + aff_0(P)` misses `Z^d`.
fn slice_offset(p: &LatticePolytope, w: &[Rational]) -> Option<Vec<Rational>> {
    let frame = p.frame();
    let d = p.ambient_dim();
    let y: Vec<Rational> = (0..d)
        .map(|i| frame.u.row(i).iter().zip(w).map(|(a, b)| b * a).sum())
        .collect();
    if !y[frame.rank..].iter().all(|v| v.is_integer()) {
        return None;
    }
    let y_int: Vec<BigInt> = (0..d)
        .map(|i| if i < frame.rank { BigInt::zero() } else { y[i].to_integer() })
        .collect();
    let q: Vec<BigInt> = (0..d).map(|i| dot(frame.u_inv.row(i), &y_int)).collect();
    let basis = &p.affine_hull().lattice_basis;
    let rows: Vec<Vec<Rational>> = (0..d)
        .map(|i| basis.iter().map(|b| rat_int(&b[i])).collect())
        .collect();
    let rhs: Vec<Rational> = w.iter().zip(&q).map(|(a, b)| a - rat_int(b)).collect();
    solve(&rows, basis.len(), &rhs)
}

/// `#((γ + s·conv(μ)) ∩ Z^m)` for a full-dimensional integer polytope
/// `conv(μ) = {y : a·y ≤ b}`.
pub(crate) fn count_in_dilate<'a>(
    vertices: &[Vec<BigInt>],
    facets: impl Iterator<Item = (&'a [BigInt], &'a BigInt)>,
    gamma: &[Rational],
    s: &Rational,
) -> BigInt {
    let m = gamma.len();
    let scale = den(gamma).lcm(s.denom());
    let scale_q = rat_int(&scale);
    // a·y ≤ s·b + a·γ, times `scale`
    let (a, beta): (Vec<Vec<BigInt>>, Vec<BigInt>) = facets
        .map(|(a, b)| {
            let rhs = (s * rat_int(b) + gamma.iter().zip(a).map(|(g, ai)| g * ai).sum::<Rational>()) * &scale_q;
            debug_assert!(rhs.is_integer());
            (a.iter().map(|x| x * &scale).collect(), rhs.to_integer())
        })
        .unzip();
    let mut lo = Vec::with_capacity(m);
    let mut hi = Vec::with_capacity(m);
    for j in 0..m {
        let min = vertices.iter().map(|v| &v[j]).min().expect("non-empty");
        let max = vertices.iter().map(|v| &v[j]).max().expect("non-empty");
        let (x, y) = (&gamma[j] + s * rat_int(min), &gamma[j] + s * rat_int(max));
        lo.push(ceil_to_int(&x.clone().min(y.clone())));
        hi.push(floor_to_int(&x.max(y)));
    }
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return BigInt::zero();
    }

    const LIMIT: i64 = 1 << 40;
    let fits = |v: &BigInt| v.to_i64().is_some_and(|x| x.abs() < LIMIT);
    let small = a.iter().flatten().chain(&beta).chain(&lo).chain(&hi).all(fits);
    if small {
        let cv = |v: &[BigInt]| -> Vec<i128> { v.iter().map(|x| x.to_i128().unwrap()).collect() };
        let a: Vec<Vec<i128>> = a.iter().map(|r| cv(r)).collect();
        BigInt::from(FibreCounter::new(a, cv(&beta), cv(&lo), cv(&hi)).count())
    } else {
        FibreCounter::new(a, beta, lo, hi).count()
    }
}

/// Integer points of `{y : A y ≤ β} ∩ [lo, hi]`, last coordinate by intervals.
struct FibreCounter<T> {
    a: Vec<Vec<T>>,
    beta: Vec<T>,
    lo: Vec<T>,
    hi: Vec<T>,
    /// `slack[j][i]` = minimum of `Σ_{k ≥ j} A_ik y_k` over the box.
    slack: Vec<Vec<T>>,
}

impl<T: LatticeInt> FibreCounter<T> {
    fn new(a: Vec<Vec<T>>, beta: Vec<T>, lo: Vec<T>, hi: Vec<T>) -> Self {
        let m = lo.len();
        let mut slack = vec![vec![T::zero(); a.len()]; m + 1];
        for j in (0..m).rev() {
            for (i, row) in a.iter().enumerate() {
                let x = row[j].clone() * lo[j].clone();
                let y = row[j].clone() * hi[j].clone();
                slack[j][i] = slack[j + 1][i].clone() + x.min(y);
            }
        }
        Self { a, beta, lo, hi, slack }
    }

    fn count(&self) -> T {
        let mut partial = vec![T::zero(); self.a.len()];
        self.level(0, &mut partial)
    }

    fn level(&self, j: usize, partial: &mut Vec<T>) -> T {
        let m = self.lo.len();
        if j + 1 == m {
            let mut lo = self.lo[j].clone();
            let mut hi = self.hi[j].clone();
            for (i, row) in self.a.iter().enumerate() {
                let room = self.beta[i].clone() - partial[i].clone();
                let c = &row[j];
                if c.is_zero() {
                    if room.is_negative() {
                        return T::zero();
                    }
                } else if c.is_positive() {
                    hi = hi.min(room.div_floor(c));
                } else {
                    lo = lo.max(room.div_ceil(c));
                }
            }
            return if hi < lo { T::zero() } else { hi - lo + T::one() };
        }
        let mut total = T::zero();
        let mut y = self.lo[j].clone();
        while y <= self.hi[j] {
            let mut feasible = true;
            for (i, row) in self.a.iter().enumerate() {
                partial[i] = partial[i].clone() + row[j].clone() * y.clone();
                if partial[i].clone() + self.slack[j + 1][i].clone() > self.beta[i] {
                    feasible = false;
                }
            }
            if feasible {
                total = total + self.level(j + 1, partial);
            }
            for (i, row) in self.a.iter().enumerate() {
                partial[i] = partial[i].clone() - row[j].clone() * y.clone();
            }
            y = y + T::one();
        }
        total
    }
}

/// `L_{(P,c)}(t) = #((c + tP) ∩ Z^d)` as a polynomial in `t`, interpolated
/// from `t = 1..=dim P + 1` and checked at `t = dim P + 2`.
pub fn translated_enumerator(p: &LatticePolytope, c: &[Rational]) -> Result<Polynomial<Rational>> {
    check_dim(p, c)?;
    let m = p.dim() as u64;
    let counts: Vec<BigInt> = (1..=m + 2)
        .into_par_iter()
        .map(|t| count_points(p, c, t))
        .collect::<Result<_>>()?;
    interpolate_guarded(&counts, |i| i as u64 + 1)
}

/// Interpolates `counts[0..n-1]` at abscissae `at(i)` and checks the last one.
fn interpolate_guarded(counts: &[BigInt], at: impl Fn(usize) -> u64) -> Result<Polynomial<Rational>> {
    let n = counts.len() - 1;
    let pts: Vec<(Rational, Rational)> = (0..n)
        .map(|i| (rat_int(&BigInt::from(at(i))), rat_int(&counts[i])))
        .collect();
    let f = Polynomial::interpolate(&pts);
    let t = at(n);
    let predicted = f.eval(&rat_int(&BigInt::from(t)));
    if predicted != rat_int(&counts[n]) {
        return Err(Error::InterpolationGuardFailed {
            t,
            expected: predicted.to_string(),
            counted: counts[n].to_string(),
        });
    }
    Ok(f)
}

fn period_of(den: &BigInt) -> Result<usize> {
    den.to_usize()
        .ok_or_else(|| Error::Unsupported(format!("period {den} is too large to tabulate")))
}

/// Ehrhart quasi-polynomial of `c + P`: period `den(c)`, with the `k`-th
/// constituent equal to `L_{(P, k·c)}`.
pub fn ehrhart_quasi(q: &AlmostIntegralPolytope) -> Result<QuasiPolynomial<Rational>> {
    let rho = period_of(&q.den())?;
    let constituents = (1..=rho)
        .into_par_iter()
        .map(|k| {
            let kc: Vec<Rational> = q.translate.iter().map(|x| x * rat_int(&BigInt::from(k))).collect();
            translated_enumerator(&q.base, &kc)
        })
        .collect::<Result<Vec<_>>>()?;
    QuasiPolynomial::new(constituents)
}

/// Lattice points lost and gained when `t·P` is slid along `[0, c]`.
///
/// `lost = ((tP + [0,c]) \ (c + tP)) ∩ Z^d`, `new = ((tP + [0,c]) \ tP) ∩ Z^d`.
pub fn lost_new_counts(p: &LatticePolytope, c: &[Rational], t: u64) -> Result<(BigInt, BigInt)> {
    check_dim(p, c)?;
    let d = p.ambient_dim();
    let tq = rat_int(&BigInt::from(t));
    let zero = vec![Rational::zero(); d];
    let mut lo = Vec::with_capacity(d);
    let mut hi = Vec::with_capacity(d);
    for j in 0..d {
        let vals: Vec<Rational> = p
            .vertices()
            .iter()
            .flat_map(|v| {
                let x = rat_int(&v[j]) * &tq;
                [x.clone(), x + &c[j]]
            })
            .collect();
        lo.push(ceil_to_int(vals.iter().min().unwrap()));
        hi.push(floor_to_int(vals.iter().max().unwrap()));
    }
    let hrep = p.hrep();
    let in_sweep = |x: &[Rational]| -> bool {
        let mut smin = Rational::zero();
        let mut smax = Rational::one();
        for (h, eq) in hrep
            .inequalities
            .iter()
            .map(|h| (h, false))
            .chain(hrep.equalities.iter().map(|h| (h, true)))
        {
            // n·(x − s c) ≤ t·b  ⇔  r ≤ s·g
            let r = h.value(x) - &h.offset * &tq;
            let g = h.value(c);
            if g.is_zero() {
                if r.is_positive() || (eq && !r.is_zero()) {
                    return false;
                }
                continue;
            }
            let s = &r / &g;
            if eq {
                smin = smin.max(s.clone());
                smax = smax.min(s);
            } else if g.is_positive() {
                smin = smin.max(s);
            } else {
                smax = smax.min(s);
            }
        }
        smin <= smax
    };
    let mut lost = BigInt::zero();
    let mut new = BigInt::zero();
    let mut x = lo.clone();
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return Ok((lost, new));
    }
    loop {
        let xq = rat_vec(&x);
        if in_sweep(&xq) {
            if !hrep.contains_dilate(&xq, &tq, c) {
                lost += 1;
            }
            if !hrep.contains_dilate(&xq, &tq, &zero) {
                new += 1;
            }
        }
        let mut j = 0;
        loop {
            if j == d {
                return Ok((lost, new));
            }
            x[j] += 1;
            if x[j] <= hi[j] {
                break;
            }
            x[j] = lo[j].clone();
            j += 1;
        }
    }
}

/// `x ↦ #((x·c + P) ∩ Z^d)` at each sample.
pub fn scan_scaled_translate(p: &LatticePolytope, c: &[Rational], xs: &[Rational]) -> Result<Vec<BigInt>> {
    check_dim(p, c)?;
    xs.par_iter()
        .map(|x| {
            let xc: Vec<Rational> = c.iter().map(|ci| ci * x).collect();
            count_points(p, &xc, 1)
        })
        .collect()
}

/// Number of `x ∈ Z^d_{≥0}` with `Σ wᵢ xᵢ = s`, for every `s ≤ max`.
fn weighted_compositions(weights: &[u64], max: u64) -> Result<Vec<BigInt>> {
    if let Some(bad) = weights.iter().find(|&&w| w == 0) {
        return Err(Error::BadParams(format!("weights must be positive, got {bad}")));
    }
    let n = max as usize;
    let mut ways = vec![BigInt::zero(); n + 1];
    ways[0] = BigInt::one();
    for &w in weights {
        let w = w as usize;
        for s in w..=n {
            let prev = ways[s - w].clone();
            ways[s] += prev;
        }
    }
    Ok(ways)
}

/// Cumulative counts `#{x ≥ 0 : Σ wᵢ xᵢ ≤ t}` for `t = 0..=max`.
pub fn weighted_simplex_counts(weights: &[u64], max: u64) -> Result<Vec<BigInt>> {
    let ways = weighted_compositions(weights, max)?;
    let mut acc = BigInt::zero();
    Ok(ways
        .into_iter()
        .map(|w| {
            acc += w;
            acc.clone()
        })
        .collect())
}

/// `#{x ∈ Z^d_{≥0} : Σ wᵢ xᵢ ≤ t}`.
pub fn count_weighted_simplex(weights: &[u64], t: u64) -> Result<BigInt> {
    Ok(weighted_simplex_counts(weights, t)?.pop().expect("t + 1 entries"))
}

/// Per-residue interpolation of a counting function with known period and
/// degree: constituent `k` through `t = k, k+ρ, …, k+dρ`, guarded at `k+(d+1)ρ`.
fn quasi_from_counts(period: u64, degree: usize, count: impl Fn(u64) -> BigInt + Sync) -> Result<QuasiPolynomial<Rational>> {
    let constituents = (1..=period)
        .into_par_iter()
        .map(|k| {
            let at = |i: usize| k + i as u64 * period;
            let counts: Vec<BigInt> = (0..=degree + 1).map(|i| count(at(i))).collect();
            interpolate_guarded(&counts, at)
        })
        .collect::<Result<Vec<_>>>()?;
    QuasiPolynomial::new(constituents)
}

/// Ehrhart quasi-polynomial of the simplex `{x ≥ 0 : Σ wᵢ xᵢ ≤ 1}` with
/// period `lcm(w)`.
pub fn weighted_simplex_quasi(weights: &[u64]) -> Result<QuasiPolynomial<Rational>> {
    let period = weights.iter().fold(1u64, |acc, &w| acc.lcm(&w.max(1)));
    let degree = weights.len();
    let max = period * (degree as u64 + 2);
    let table = weighted_simplex_counts(weights, max)?;
    quasi_from_counts(period, degree, |t| table[t as usize].clone())
}

/// A full-dimensional polytope with rational vertices, counted through its
/// integral multiple `L·Q`.
#[derive(Clone, Debug)]
pub struct RationalPolytope {
    vertices: Vec<Vec<Rational>>,
    denominator: BigInt,
    scaled: LatticePolytope,
}

impl RationalPolytope {
    pub fn new(vertices: Vec<Vec<Rational>>) -> Result<Self> {
        let d = vertices.first().ok_or(Error::EmptyPolytope)?.len();
        let denominator = vertices.iter().fold(BigInt::one(), |acc, v| acc.lcm(&den(v)));
        let l = rat_int(&denominator);
        let scaled = LatticePolytope::new(
            vertices
                .iter()
                .map(|v| v.iter().map(|x| (x * &l).to_integer()).collect())
                .collect(),
        )?;
        if scaled.dim() != d {
            return Err(Error::Unsupported(
                "rational polytopes must be full-dimensional".into(),
            ));
        }
        Ok(Self {
            vertices,
            denominator,
            scaled,
        })
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    /// lcm of all vertex denominators; a period of the quasi-polynomial.
    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn dim(&self) -> usize {
        self.scaled.dim()
    }

    /// `#((c + tQ) ∩ Z^d)`.
    pub fn count_dilate(&self, c: &[Rational], t: u64) -> Result<BigInt> {
        check_dim(&self.scaled, c)?;
        let s = Rational::new(BigInt::from(t), self.denominator.clone());
        let gamma: Vec<Rational> = self.scaled.vertices()[0]
            .iter()
            .zip(c)
            .map(|(v, ci)| ci + rat_int(v) * &s)
            .collect();
        if t == 0 {
            return Ok(if is_integral(c) { BigInt::one() } else { BigInt::zero() });
        }
        Ok(count_in_dilate(
            self.scaled.local_vertices(),
            self.scaled.local_inequalities(),
            &gamma,
            &s,
        ))
    }

    pub fn ehrhart_quasi(&self) -> Result<QuasiPolynomial<Rational>> {
        let period = self
            .denominator
            .to_u64()
            .ok_or_else(|| Error::Unsupported("period too large".into()))?;
        let zero = vec![Rational::zero(); self.scaled.ambient_dim()];
        let counts: std::result::Result<Vec<_>, _> = (1..=period * (self.dim() as u64 + 2))
            .into_par_iter()
            .map(|t| self.count_dilate(&zero, t))
            .collect();
        let counts = counts?;
        quasi_from_counts(period, self.dim(), |t| counts[t as usize - 1].clone())
    }
}
