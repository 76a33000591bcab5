use crate::scalar::Field;

/// Reduced row echelon form in place; returns the pivot columns.
fn rref<T: Field>(a: &mut [Vec<T>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = T::one() / a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..a[i].len() {
                    let v = a[i][j].clone() - f.clone() * a[r][j].clone();
                    a[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    pivots
}

pub fn rank<T: Field>(rows: &[Vec<T>]) -> usize {
    let Some(cols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut a = rows.to_vec();
    rref(&mut a, cols).len()
}

/// Basis of `{x : A x = 0}` for `A` given by rows of width `cols`.
pub fn nullspace<T: Field>(rows: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    let mut a = rows.to_vec();
    let pivots = rref(&mut a, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![T::zero(); cols];
            x[f] = T::one();
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = -a[i][f].clone();
            }
            x
        })
        .collect()
}

/// Some solution of `A x = b`, or `None` if inconsistent.
pub fn solve<T: Field>(rows: &[Vec<T>], cols: usize, b: &[T]) -> Option<Vec<T>> {
    let mut a: Vec<Vec<T>> = rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut a, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![T::zero(); cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = a[i][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};
    use num_rational::Ratio;

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = vec![r(&[1, 2, 3]), r(&[2, 4, 6]), r(&[1, 0, 1])];
        assert_eq!(rank(&a), 2);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            let s: Rational = row.iter().zip(&ns[0]).map(|(x, y)| x * y).sum();
            assert_eq!(s, rat(0, 1));
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = vec![r(&[2, 0]), r(&[0, 4])];
        assert_eq!(solve(&a, 2, &r(&[1, 1])), Some(vec![rat(1, 2), rat(1, 4)]));
        let a = vec![r(&[1, 1]), r(&[1, 1])];
        assert_eq!(solve(&a, 2, &r(&[1, 2])), None);
    }

    #[test]
    fn works_over_small_rationals() {
        let a: Vec<Vec<Ratio<i64>>> = vec![
            vec![Ratio::from_integer(1), Ratio::from_integer(1)],
            vec![Ratio::from_integer(1), Ratio::from_integer(-1)],
        ];
        assert_eq!(rank(&a), 2);
    }
}
