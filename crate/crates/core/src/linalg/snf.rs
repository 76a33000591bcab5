use num_bigint::BigInt;

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{LatticeInt, Rational};

/// `U · W · V = D` with `U`, `V` unimodular and `D` diagonal, `d_1 | d_2 | … | d_r`.
///
/// `u_inv` is tracked alongside `U` so lattice bases can be read off without
/// inverting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition<T = BigInt> {
    pub u: Matrix<T>,
    pub u_inv: Matrix<T>,
    pub v: Matrix<T>,
    pub d: Matrix<T>,
    pub rank: usize,
}

impl<T: LatticeInt> SnfDecomposition<T> {
    /// The nonzero diagonal entries `d_1, …, d_r`.
    pub fn invariant_factors(&self) -> Vec<T> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct Work<T> {
    d: Matrix<T>,
    u: Matrix<T>,
    u_inv: Matrix<T>,
    v: Matrix<T>,
}

impl<T: LatticeInt> Work<T> {
    // row_i -= q * row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &T) {
        for m in [&mut self.d, &mut self.u] {
            for j in 0..m.cols() {
                let v = m.get(i, j).clone() - q.clone() * m.get(t, j).clone();
                m.set(i, j, v);
            }
        }
        let ui = &mut self.u_inv;
        for r in 0..ui.rows() {
            let v = ui.get(r, t).clone() + q.clone() * ui.get(r, i).clone();
            ui.set(r, t, v);
        }
    }

    // row_t += row_i
    fn row_add(&mut self, t: usize, i: usize) {
        for m in [&mut self.d, &mut self.u] {
            for j in 0..m.cols() {
                let v = m.get(t, j).clone() + m.get(i, j).clone();
                m.set(t, j, v);
            }
        }
        let ui = &mut self.u_inv;
        for r in 0..ui.rows() {
            let v = ui.get(r, i).clone() - ui.get(r, t).clone();
            ui.set(r, i, v);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn negate_row(&mut self, t: usize) {
        for m in [&mut self.d, &mut self.u] {
            for j in 0..m.cols() {
                let v = -m.get(t, j).clone();
                m.set(t, j, v);
            }
        }
        let ui = &mut self.u_inv;
        for r in 0..ui.rows() {
            let v = -ui.get(r, t).clone();
            ui.set(r, t, v);
        }
    }

    // col_j -= q * col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &T) {
        for m in [&mut self.d, &mut self.v] {
            for i in 0..m.rows() {
                let v = m.get(i, j).clone() - q.clone() * m.get(i, t).clone();
                m.set(i, j, v);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
    }
}

/// Smith normal form with smallest-entry pivoting; deterministic for a given input.
pub fn snf<T: LatticeInt>(w: &Matrix<T>) -> SnfDecomposition<T> {
    let (rows, cols) = (w.rows(), w.cols());
    let mut s = Work {
        d: w.clone(),
        u: Matrix::identity(rows),
        u_inv: Matrix::identity(rows),
        v: Matrix::identity(cols),
    };
    let mut rank = 0;
    for t in 0..rows.min(cols) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = s.d.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => x.abs() < s.d.get(pi, pj).abs(),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish(s, rank);
            };
            s.swap_rows(t, pi);
            s.swap_cols(t, pj);

            let p = s.d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = s.d.get(i, t).clone() / p.clone();
                if !q.is_zero() {
                    s.row_sub(i, t, &q);
                }
                clean &= s.d.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = s.d.get(t, j).clone() / p.clone();
                if !q.is_zero() {
                    s.col_sub(j, t, &q);
                }
                clean &= s.d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !s.d.get(i, j).is_multiple_of(&p))
            });
            match offender {
                Some(i) => s.row_add(t, i),
                None => break,
            }
        }
        if s.d.get(t, t).is_negative() {
            s.negate_row(t);
        }
        rank = t + 1;
    }
    finish(s, rank)
}

fn finish<T: LatticeInt>(s: Work<T>, rank: usize) -> SnfDecomposition<T> {
    SnfDecomposition {
        u: s.u,
        u_inv: s.u_inv,
        v: s.v,
        d: s.d,
        rank,
    }
}

/// gcd of the maximal minors of a full-column-rank integer matrix.
///
/// For linearly independent generators this is the relative volume of the
/// parallelepiped they span.
pub fn gcd_maximal_minors<T: LatticeInt>(w: &Matrix<T>) -> Result<T> {
    let dec = snf(w);
    if dec.rank < w.cols() {
        return Err(Error::RankDeficient);
    }
    Ok(dec
        .invariant_factors()
        .into_iter()
        .fold(T::one(), |acc, x| acc * x))
}

/// Whether `v + span_Q(W)` contains an integer point.
pub fn affine_lattice_nonempty(w: &Matrix<BigInt>, v: &[Rational]) -> Result<bool> {
    if v.len() != w.rows() {
        return Err(Error::DimensionMismatch {
            expected: w.rows(),
            found: v.len(),
        });
    }
    let dec = snf(w);
    Ok(tail_integral(&dec, v))
}

/// Given the decomposition of `W`, whether `(U v)_i ∈ Z` for all `i ≥ rank`.
pub(crate) fn tail_integral(dec: &SnfDecomposition<BigInt>, v: &[Rational]) -> bool {
    (dec.rank..dec.u.rows()).all(|i| {
        let y: Rational = dec
            .u
            .row(i)
            .iter()
            .zip(v)
            .map(|(a, b)| b * a)
            .sum();
        y.is_integer()
    })
}

/// Row Hermite normal form: echelon rows, positive pivots, entries above each
/// pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hnf_rows<T: LatticeInt>(rows: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut a: Vec<Vec<T>> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        loop {
            let best = (r..a.len())
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&x, &y| a[x][c].abs().cmp(&a[y][c].abs()));
            let Some(b) = best else { break };
            a.swap(r, b);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].clone() / a[r][c].clone();
                for j in 0..ncols {
                    let v = a[i][j].clone() - q.clone() * a[r][j].clone();
                    a[i][j] = v;
                }
                done &= a[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if !q.is_zero() {
                for j in 0..ncols {
                    let v = a[i][j].clone() - q.clone() * a[r][j].clone();
                    a[i][j] = v;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Canonical (HNF) basis of `span_R(vectors) ∩ Z^dim`.
pub fn saturated_basis(vectors: &[Vec<BigInt>], dim: usize) -> Result<Vec<Vec<BigInt>>> {
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let w = Matrix::from_columns(dim, vectors)?;
    let dec = snf(&w);
    let basis: Vec<Vec<BigInt>> = (0..dec.rank).map(|j| dec.u_inv.column(j)).collect();
    Ok(hnf_rows(&basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{determinant, IntMatrix};
    use crate::scalar::{int, rat};
    use num_integer::Integer;
    use num_traits::{Signed, Zero};
    use proptest::prelude::*;

    fn m(rows: usize, cols: usize, v: &[i64]) -> IntMatrix {
        Matrix::from_vec(rows, cols, v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    fn check(w: &IntMatrix) -> SnfDecomposition {
        let dec = snf(w);
        assert_eq!(dec.u.mul(w).unwrap().mul(&dec.v).unwrap(), dec.d);
        assert!(dec.d.is_diagonal());
        assert_eq!(determinant(&dec.u).unwrap().abs(), int(1));
        assert_eq!(determinant(&dec.v).unwrap().abs(), int(1));
        assert_eq!(dec.u.mul(&dec.u_inv).unwrap(), Matrix::identity(w.rows()));
        let f = dec.invariant_factors();
        for i in 0..f.len() {
            assert!(f[i] > int(0));
            if i + 1 < f.len() {
                assert!(f[i + 1].is_multiple_of(&f[i]));
            }
        }
        for i in dec.rank..w.rows().min(w.cols()) {
            assert_eq!(dec.d.get(i, i), &int(0));
        }
        dec
    }

    #[test]
    fn identity_is_fixed() {
        let dec = check(&m(2, 2, &[1, 0, 0, 1]));
        assert_eq!(dec.u, Matrix::identity(2));
        assert_eq!(dec.v, Matrix::identity(2));
        assert_eq!(dec.d, Matrix::identity(2));
    }

    #[test]
    fn single_column() {
        let dec = check(&m(2, 1, &[2, 4]));
        assert_eq!(dec.invariant_factors(), vec![int(2)]);
    }

    #[test]
    fn two_columns_unit_factors() {
        let dec = check(&m(3, 2, &[1, 0, 1, 1, 0, 1]));
        assert_eq!(dec.invariant_factors(), vec![int(1), int(1)]);
    }

    #[test]
    fn classic_example() {
        let dec = check(&m(3, 3, &[2, 4, 4, -6, 6, 12, 10, -4, -16]));
        assert_eq!(dec.invariant_factors(), vec![int(2), int(6), int(12)]);
    }

    #[test]
    fn empty_matrices() {
        let dec = check(&Matrix::zeros(0, 0));
        assert_eq!(dec.rank, 0);
        let dec = check(&Matrix::zeros(3, 0));
        assert_eq!(dec.u, Matrix::identity(3));
    }

    #[test]
    fn maximal_minors() {
        assert_eq!(gcd_maximal_minors(&m(2, 1, &[2, 4])).unwrap(), int(2));
        assert_eq!(gcd_maximal_minors(&IntMatrix::identity(3)).unwrap(), int(1));
        assert_eq!(gcd_maximal_minors(&m(3, 2, &[1, 0, 1, 1, 0, 1])).unwrap(), int(1));
        assert_eq!(
            gcd_maximal_minors(&m(2, 2, &[1, 2, 2, 4])),
            Err(Error::RankDeficient)
        );
    }

    #[test]
    fn affine_slices() {
        let empty = Matrix::zeros(2, 0);
        assert!(affine_lattice_nonempty(&empty, &[rat(1, 1), rat(0, 1)]).unwrap());
        assert!(!affine_lattice_nonempty(&empty, &[rat(1, 2), rat(0, 1)]).unwrap());
        let w = m(3, 2, &[1, 0, 0, 1, 0, 0]);
        assert!(affine_lattice_nonempty(&w, &[rat(1, 3), rat(2, 3), rat(1, 1)]).unwrap());
        assert!(!affine_lattice_nonempty(&w, &[rat(1, 9), rat(2, 9), rat(1, 3)]).unwrap());
        assert!(affine_lattice_nonempty(&w, &[rat(1, 3)]).is_err());
    }

    #[test]
    fn saturation() {
        assert_eq!(saturated_basis(&[vec![int(2), int(4)]], 2).unwrap(), vec![vec![int(1), int(2)]]);
        let cube = vec![
            vec![int(1), int(0), int(0)],
            vec![int(0), int(1), int(0)],
            vec![int(0), int(0), int(1)],
            vec![int(1), int(1), int(1)],
        ];
        assert_eq!(
            saturated_basis(&cube, 3).unwrap(),
            IntMatrix::identity(3).to_rows()
        );
    }

    #[test]
    fn hnf_canonical() {
        let a = hnf_rows(&[vec![int(4), int(6)], vec![int(2), int(4)]]);
        assert_eq!(a, vec![vec![int(2), int(0)], vec![int(0), int(2)]]);
    }

    /// Brute-force gcd over all k×k minors.
    fn minors_gcd(w: &IntMatrix) -> BigInt {
        let k = w.cols();
        let mut g = BigInt::zero();
        let mut pick = Vec::new();
        fn rec(w: &IntMatrix, k: usize, start: usize, pick: &mut Vec<usize>, g: &mut BigInt) {
            if pick.len() == k {
                let rows: Vec<Vec<BigInt>> = pick.iter().map(|&i| w.row(i).to_vec()).collect();
                let sub = Matrix::from_rows(k, &rows).unwrap();
                *g = g.gcd(&determinant(&sub).unwrap());
                return;
            }
            for i in start..w.rows() {
                pick.push(i);
                rec(w, k, i + 1, pick, g);
                pick.pop();
            }
        }
        rec(w, k, 0, &mut pick, &mut g);
        g
    }

    fn matrix_strategy(max: usize) -> impl Strategy<Value = IntMatrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-20i64..=20, r * c)
                .prop_map(move |v| Matrix::from_vec(r, c, v.into_iter().map(int).collect()).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn snf_round_trip(w in matrix_strategy(8)) {
            check(&w);
        }

        #[test]
        fn minors_match_invariant_factors(w in matrix_strategy(4)) {
            let dec = snf(&w);
            if dec.rank == w.cols() {
                prop_assert_eq!(gcd_maximal_minors(&w).unwrap(), minors_gcd(&w));
            } else {
                prop_assert_eq!(minors_gcd(&w), BigInt::zero());
            }
        }

        #[test]
        fn integer_shift_invariance(
            w in proptest::collection::vec(-4i64..=4, 6),
            num in proptest::collection::vec(-6i64..=6, 3),
            den in 1i64..=4,
            z in proptest::collection::vec(-3i64..=3, 3),
        ) {
            let w = Matrix::from_vec(3, 2, w.into_iter().map(int).collect()).unwrap();
            let v: Vec<Rational> = num.iter().map(|&n| rat(n, den)).collect();
            let shifted: Vec<Rational> = v.iter().zip(&z).map(|(a, &b)| a + rat(b, 1)).collect();
            prop_assert_eq!(
                affine_lattice_nonempty(&w, &v).unwrap(),
                affine_lattice_nonempty(&w, &shifted).unwrap()
            );
        }

        /// Brute force over λ ∈ (1/N)Z^k ∩ [0,1)^k with N = den(v)·det(W_indep).
        /// Solutions are closed under Z^k shifts and have denominators dividing
        /// N, so the grid is exhaustive.
        #[test]
        fn affine_slice_matches_grid_search(
            rows in 2usize..=3,
            w in proptest::collection::vec(-3i64..=3, 6),
            num in proptest::collection::vec(0i64..6, 3),
            den in 1i64..=3,
        ) {
            let cols = 2;
            let w = Matrix::from_vec(rows, cols, w[..rows * cols].iter().map(|&x| int(x)).collect()).unwrap();
            let v: Vec<Rational> = num[..rows].iter().map(|&n| rat(n, den)).collect();
            let expected = grid_search(&w, &v);
            prop_assert_eq!(affine_lattice_nonempty(&w, &v).unwrap(), expected);
        }
    }

    fn grid_search(w: &IntMatrix, v: &[Rational]) -> bool {
        // Restrict to an independent subset of columns: span is unchanged.
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        for j in 0..w.cols() {
            let mut cand = cols.clone();
            cand.push(w.column(j));
            if snf(&Matrix::from_columns(w.rows(), &cand).unwrap()).rank == cand.len() {
                cols = cand;
            }
        }
        if cols.is_empty() {
            return v.iter().all(|x| x.is_integer());
        }
        let basis = Matrix::from_columns(w.rows(), &cols).unwrap();
        let det = gcd_maximal_minors(&basis).unwrap();
        let den_v = crate::scalar::den(v);
        let scale: i64 = (det * den_v).try_into().unwrap();
        let k = cols.len();
        let mut idx = vec![0i64; k];
        loop {
            let lam: Vec<Rational> = idx.iter().map(|&a| rat(a, scale)).collect();
            let ok = (0..w.rows()).all(|i| {
                let mut s = v[i].clone();
                for j in 0..k {
                    s += Rational::from_integer(cols[j][i].clone()) * &lam[j];
                }
                s.is_integer()
            });
            if ok {
                return true;
            }
            let mut p = 0;
            loop {
                if p == k {
                    return false;
                }
                idx[p] += 1;
                if idx[p] < scale {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
        }
    }
}
