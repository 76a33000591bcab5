//! Almost integral zonotopes `c + Z(U)` given by generators.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::count::count_points;
use crate::error::{Error, Result};
use crate::linalg::{snf, tail_integral, IntMatrix, SnfDecomposition};
use crate::poly::Polynomial;
use crate::polytope::{AlmostIntegralPolytope, LatticePolytope};
use crate::quasipoly::QuasiPolynomial;
use crate::scalar::{den, is_integral, rat_int, Rational};

/// Largest generator list accepted by the vertex conversion.
pub const MAX_GENERATORS: usize = 20;

/// `c + Σ [0, u_i]`. Generators form a multiset; repeats are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZonotopeSpec {
    pub ambient_dim: usize,
    pub generators: Vec<Vec<BigInt>>,
    pub translate: Vec<Rational>,
}

impl ZonotopeSpec {
    pub fn new(ambient_dim: usize, generators: Vec<Vec<BigInt>>, translate: Vec<Rational>) -> Result<Self> {
        for v in generators.iter().map(Vec::len).chain([translate.len()]) {
            if v != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: v });
            }
        }
        if generators.iter().any(|g| g.iter().all(Zero::is_zero)) {
            return Err(Error::BadParams("zonotope generators must be nonzero".into()));
        }
        Ok(Self { ambient_dim, generators, translate })
    }

    pub fn den(&self) -> BigInt {
        den(&self.translate)
    }
}

/// A linearly independent subset `W` with its Smith form and `relvol(Z(W))`.
struct Independent {
    size: usize,
    frame: SnfDecomposition,
    volume: BigInt,
}

fn independent_subsets(z: &ZonotopeSpec) -> Vec<Independent> {
    let d = z.ambient_dim;
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn walk(z: &ZonotopeSpec, d: usize, start: usize, stack: &mut Vec<usize>, out: &mut Vec<Independent>) {
        let cols: Vec<Vec<BigInt>> = stack.iter().map(|&i| z.generators[i].clone()).collect();
        let frame = snf(&IntMatrix::from_columns(d, &cols).expect("consistent dimensions"));
        if frame.rank < stack.len() {
            return;
        }
        let volume = frame.invariant_factors().into_iter().fold(BigInt::one(), |a, b| a * b);
        out.push(Independent { size: stack.len(), frame, volume });
        if stack.len() == d {
            return;
        }
        for j in start..z.generators.len() {
            stack.push(j);
            walk(z, d, j + 1, stack, out);
            stack.pop();
        }
    }
    walk(z, d, 0, &mut stack, &mut out);
    out
}

/// The Ardila–Beck–McWhirter formula: constituent `k` is
/// `Σ_W [(k·c + span W) ∩ Z^d ≠ ∅] · relvol(Z(W)) · t^{|W|}`.
pub fn abm_quasi(z: &ZonotopeSpec) -> Result<QuasiPolynomial<Rational>> {
    let rho = num_traits::ToPrimitive::to_usize(&z.den())
        .ok_or_else(|| Error::Unsupported("period too large to tabulate".into()))?;
    let subsets = independent_subsets(z);
    let constituents: Vec<Polynomial<Rational>> = (1..=rho)
        .into_par_iter()
        .map(|k| {
            let kc: Vec<Rational> = z.translate.iter().map(|x| x * rat_int(&BigInt::from(k))).collect();
            let mut coeffs = vec![Rational::zero(); z.ambient_dim + 1];
            for w in &subsets {
                if w.size == 0 {
                    if is_integral(&kc) {
                        coeffs[0] += Rational::one();
                    }
                } else if tail_integral(&w.frame, &kc) {
                    coeffs[w.size] += rat_int(&w.volume);
                }
            }
            Polynomial::new(coeffs)
        })
        .collect();
    QuasiPolynomial::new(constituents)
}

/// Vertex description of `c + Z(U)` as an integral zonotope plus translate.
///
/// Built by repeated Minkowski sums with one segment at a time, keeping only
/// hull vertices after each step.
pub fn zonotope_vertices(z: &ZonotopeSpec) -> Result<AlmostIntegralPolytope> {
    if z.generators.len() > MAX_GENERATORS {
        return Err(Error::TooManyGenerators { count: z.generators.len(), limit: MAX_GENERATORS });
    }
    let mut current = LatticePolytope::new(vec![vec![BigInt::zero(); z.ambient_dim]])?;
    for g in &z.generators {
        let mut pts = current.vertices().to_vec();
        pts.extend(current.vertices().iter().map(|v| v.iter().zip(g).map(|(a, b)| a + b).collect()));
        current = LatticePolytope::new(pts)?;
    }
    AlmostIntegralPolytope::new(current, z.translate.clone())
}

/// Counts behind `#((c+Z) ∩ Z^d) ≤ #(Z ∩ Z^d)`, with equality iff `c ∈ Z^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointBound {
    pub translated: BigInt,
    pub base: BigInt,
    pub inequality_holds: bool,
    pub equality_iff_integral: bool,
}

pub fn zonotope_point_bound_check(z: &ZonotopeSpec) -> Result<PointBound> {
    let p = zonotope_vertices(z)?;
    let zero = vec![Rational::zero(); z.ambient_dim];
    let translated = count_points(&p.base, &z.translate, 1)?;
    let base = count_points(&p.base, &zero, 1)?;
    let inequality_holds = translated <= base;
    let equality_iff_integral = (translated == base) == is_integral(&z.translate);
    Ok(PointBound { translated, base, inequality_holds, equality_iff_integral })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::ehrhart_quasi;
    use crate::scalar::{int, rat};
    use proptest::prelude::*;

    fn spec(gens: &[&[i64]], c: &[(i64, i64)]) -> ZonotopeSpec {
        let d = c.len();
        ZonotopeSpec::new(
            d,
            gens.iter().map(|g| g.iter().map(|&x| int(x)).collect()).collect(),
            c.iter().map(|&(n, m)| rat(n, m)).collect(),
        )
        .unwrap()
    }

    fn p(c: &[i64]) -> Polynomial<Rational> {
        Polynomial::new(c.iter().map(|&x| rat(x, 1)).collect())
    }

    #[test]
    fn examples() {
        let seg = abm_quasi(&spec(&[&[1]], &[(0, 1)])).unwrap();
        assert_eq!(seg.period(), 1);
        assert_eq!(seg.constituent(0), &p(&[1, 1]));

        let z = spec(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[(1, 9), (2, 9), (1, 3)]);
        let q = abm_quasi(&z).unwrap();
        assert_eq!(q.period(), 9);
        assert_eq!(q.constituent(9), &p(&[1, 3, 3, 1]));
        assert_eq!(q.constituent(1), &p(&[0, 0, 0, 1]));
        assert_eq!(q.constituent(3), &p(&[0, 0, 1, 1]));
        assert!(q.has_gcd_property());

        let hex = spec(&[&[1, 0], &[1, 1], &[0, 1]], &[(0, 1), (0, 1)]);
        assert_eq!(abm_quasi(&hex).unwrap().constituent(0), &p(&[1, 3, 3]));
        assert_eq!(zonotope_vertices(&hex).unwrap().base.vertices().len(), 6);
        // brute force for the hexagon: points (x, y) with 0 ≤ x, y ≤ 2t and |x − y| ≤ t
        for t in 1..=3i64 {
            let n = (0..=2 * t)
                .flat_map(|x| (0..=2 * t).map(move |y| (x, y)))
                .filter(|(x, y)| (x - y).abs() <= t)
                .count() as i64;
            assert_eq!(n, 3 * t * t + 3 * t + 1);
        }

        let sq = zonotope_vertices(&spec(&[&[1, 0], &[0, 1]], &[(0, 1), (0, 1)])).unwrap();
        assert_eq!(sq.base.vertices().len(), 4);
        let s = zonotope_vertices(&spec(&[&[2, 4]], &[(1, 2), (0, 1)])).unwrap();
        assert_eq!(s.base.vertices(), &[vec![int(0), int(0)], vec![int(2), int(4)]]);
        assert_eq!(s.translate, vec![rat(1, 2), rat(0, 1)]);
    }

    #[test]
    fn point_bounds() {
        let b = zonotope_point_bound_check(&spec(&[&[1, 0], &[0, 1]], &[(1, 2), (1, 2)])).unwrap();
        assert_eq!((b.translated.clone(), b.base.clone()), (int(1), int(4)));
        assert!(b.inequality_holds && b.equality_iff_integral);
        let b = zonotope_point_bound_check(&spec(&[&[1, 0], &[0, 1]], &[(1, 1), (0, 1)])).unwrap();
        assert_eq!((b.translated.clone(), b.base.clone()), (int(4), int(4)));
        assert!(b.equality_iff_integral);
        let b = zonotope_point_bound_check(&spec(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[(1, 9), (2, 9), (1, 3)])).unwrap();
        assert_eq!((b.translated, b.base), (int(1), int(8)));
    }

    #[test]
    fn rejects_bad_input() {
        let zero = ZonotopeSpec::new(2, vec![vec![int(0), int(0)]], vec![rat(0, 1); 2]);
        assert!(matches!(zero, Err(Error::BadParams(_))));
        let many = ZonotopeSpec::new(1, vec![vec![int(1)]; 21], vec![rat(0, 1)]).unwrap();
        assert!(matches!(zonotope_vertices(&many), Err(Error::TooManyGenerators { count: 21, limit: 20 })));
        let empty = ZonotopeSpec::new(2, vec![], vec![rat(1, 2), rat(0, 1)]).unwrap();
        let q = abm_quasi(&empty).unwrap();
        assert_eq!(q.constituents(), &[Polynomial::zero(), p(&[1])][..]);
    }

    fn arb_zonotope() -> impl Strategy<Value = ZonotopeSpec> {
        (1usize..=3).prop_flat_map(|d| {
            (
                prop::collection::vec(prop::collection::vec(-3i64..=3, d), 0..=4)
                    .prop_map(|gs| gs.into_iter().filter(|g| g.iter().any(|&x| x != 0)).collect::<Vec<_>>()),
                prop::collection::vec((-4i64..=4, 1i64..=4), d),
            )
                .prop_map(move |(gs, c)| {
                    let gs: Vec<&[i64]> = gs.iter().map(Vec::as_slice).collect();
                    spec(&gs, &c)
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn abm_matches_counting(z in arb_zonotope()) {
            let q = abm_quasi(&z).unwrap();
            let p = zonotope_vertices(&z).unwrap();
            for t in 1..=8u64 {
                let tc: Vec<Rational> = z.translate.iter().map(|x| x * rat(t as i64, 1)).collect();
                prop_assert_eq!(q.evaluate(t), rat_int(&count_points(&p.base, &tc, t).unwrap()));
            }
            prop_assert_eq!(&q, &ehrhart_quasi(&p).unwrap());
        }

        #[test]
        fn zonotopes_have_gcd_property(z in arb_zonotope()) {
            let q = abm_quasi(&z).unwrap();
            prop_assert!(q.has_gcd_property());
            prop_assert_eq!(q.minimal_period().period(), q.period());
            for k in 1..=q.period() {
                let kc: Vec<Rational> = z.translate.iter().map(|x| x * rat(k as i64, 1)).collect();
                let expect = if is_integral(&kc) { Rational::one() } else { Rational::zero() };
                prop_assert_eq!(q.constituent(k).coeff(0), expect);
            }
            let b = zonotope_point_bound_check(&z).unwrap();
            prop_assert!(b.inequality_holds && b.equality_iff_integral);
        }
    }
}
