//! Exact beneath-beyond convex hull for full-dimensional integer point sets.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::linalg::{dot, nullspace, primitive, rank};
use crate::scalar::{rat_int, Rational};

#[derive(Clone, Debug)]
pub(crate) struct HullFacet {
    /// Outward primitive normal.
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
    /// Indices of the vertices on this facet, ascending.
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct Hull {
    /// Indices of input points that are vertices, ascending.
    pub vertices: Vec<usize>,
    pub facets: Vec<HullFacet>,
}

/// Affine dimension of a point subset (−1 encoded as `None` for the empty set).
pub(crate) fn affine_dim(points: &[Vec<BigInt>], subset: &[usize]) -> Option<usize> {
    let (&first, rest) = subset.split_first()?;
    let rows: Vec<Vec<Rational>> = rest
        .iter()
        .map(|&i| {
            points[i]
                .iter()
                .zip(&points[first])
                .map(|(a, b)| rat_int(&(a - b)))
                .collect()
        })
        .collect();
    Some(rank(&rows))
}

/// Hyperplane through `m` affinely independent points of `Z^m`.
fn hyperplane(points: &[Vec<BigInt>], through: &[usize], m: usize) -> Option<(Vec<BigInt>, BigInt)> {
    let base = &points[through[0]];
    let rows: Vec<Vec<Rational>> = through[1..]
        .iter()
        .map(|&i| points[i].iter().zip(base).map(|(a, b)| rat_int(&(a - b))).collect())
        .collect();
    let ns = nullspace(&rows, m);
    if ns.len() != 1 {
        return None;
    }
    let den = ns[0]
        .iter()
        .fold(BigInt::from(1), |acc, x| num_integer::lcm(acc, x.denom().clone()));
    let ints: Vec<BigInt> = ns[0]
        .iter()
        .map(|x| (x * rat_int(&den)).to_integer())
        .collect();
    let normal = primitive(&ints);
    let offset = dot(&normal, base);
    Some((normal, offset))
}

/// Greedy affinely independent subset of `candidates` with `size` elements.
fn independent_subset(points: &[Vec<BigInt>], candidates: &[usize], size: usize) -> Option<Vec<usize>> {
    let mut chosen: Vec<usize> = Vec::new();
    for &c in candidates {
        chosen.push(c);
        if affine_dim(points, &chosen) != Some(chosen.len() - 1) {
            chosen.pop();
        } else if chosen.len() == size {
            return Some(chosen);
        }
    }
    None
}

struct Builder<'a> {
    points: &'a [Vec<BigInt>],
    m: usize,
    /// Sum of the initial simplex vertices; `interior / (m+1)` is strictly inside.
    interior: Vec<BigInt>,
    facets: Vec<HullFacet>,
}

impl Builder<'_> {
    /// Orients `(a, b)` outward and records every processed point on it.
    fn make_facet(&self, mut normal: Vec<BigInt>, mut offset: BigInt, processed: &[usize]) -> HullFacet {
        let scale = BigInt::from(self.m as u64 + 1);
        if dot(&normal, &self.interior) > &offset * &scale {
            normal = normal.iter().map(|x| -x).collect();
            offset = -offset;
        }
        let mut on: Vec<usize> = processed
            .iter()
            .copied()
            .filter(|&i| dot(&normal, &self.points[i]) == offset)
            .collect();
        on.sort_unstable();
        HullFacet {
            normal,
            offset,
            vertices: on,
        }
    }

    fn insert(&mut self, facet: HullFacet) {
        match self
            .facets
            .iter_mut()
            .find(|f| f.normal == facet.normal && f.offset == facet.offset)
        {
            Some(f) => {
                f.vertices.extend(facet.vertices);
                f.vertices.sort_unstable();
                f.vertices.dedup();
            }
            None => self.facets.push(facet),
        }
    }
}

/// Convex hull of distinct points affinely spanning `R^m`, `m ≥ 1`.
pub(crate) fn convex_hull(points: &[Vec<BigInt>], m: usize) -> Hull {
    assert!(m >= 1 && !points.is_empty());
    if m == 1 {
        let lo = (0..points.len()).min_by(|&a, &b| points[a][0].cmp(&points[b][0])).unwrap();
        let hi = (0..points.len()).max_by(|&a, &b| points[a][0].cmp(&points[b][0])).unwrap();
        let mut vertices = vec![lo, hi];
        vertices.sort_unstable();
        return Hull {
            vertices,
            facets: vec![
                HullFacet {
                    normal: vec![BigInt::from(-1)],
                    offset: -points[lo][0].clone(),
                    vertices: vec![lo],
                },
                HullFacet {
                    normal: vec![BigInt::from(1)],
                    offset: points[hi][0].clone(),
                    vertices: vec![hi],
                },
            ],
        };
    }

    let all: Vec<usize> = (0..points.len()).collect();
    let simplex = independent_subset(points, &all, m + 1).expect("points span the space");
    let mut interior = vec![BigInt::zero(); m];
    for &i in &simplex {
        for (acc, x) in interior.iter_mut().zip(&points[i]) {
            *acc += x;
        }
    }
    let mut b = Builder {
        points,
        m,
        interior,
        facets: Vec::new(),
    };
    let mut processed = simplex.clone();
    for skip in 0..=m {
        let through: Vec<usize> = simplex
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != skip)
            .map(|(_, &i)| i)
            .collect();
        let (a, off) = hyperplane(points, &through, m).expect("simplex facets are hyperplanes");
        let f = b.make_facet(a, off, &processed);
        b.insert(f);
    }

    for p in 0..points.len() {
        if simplex.contains(&p) {
            continue;
        }
        let x = &points[p];
        let visible: Vec<usize> = (0..b.facets.len())
            .filter(|&f| dot(&b.facets[f].normal, x) > b.facets[f].offset)
            .collect();
        processed.push(p);
        if visible.is_empty() {
            for f in b.facets.iter_mut() {
                if dot(&f.normal, x) == f.offset {
                    f.vertices.push(p);
                }
            }
            continue;
        }
        let mut created = Vec::new();
        for &vf in &visible {
            for g in 0..b.facets.len() {
                if visible.contains(&g) {
                    continue;
                }
                let ridge: Vec<usize> = b.facets[vf]
                    .vertices
                    .iter()
                    .copied()
                    .filter(|i| b.facets[g].vertices.contains(i))
                    .collect();
                if affine_dim(points, &ridge) != Some(m - 2) {
                    continue;
                }
                let Some(mut through) = independent_subset(points, &ridge, m - 1) else {
                    continue;
                };
                through.push(p);
                if affine_dim(points, &through) != Some(m - 1) {
                    continue;
                }
                if let Some((a, off)) = hyperplane(points, &through, m) {
                    created.push(b.make_facet(a, off, &processed));
                }
            }
        }
        let mut keep = Vec::with_capacity(b.facets.len());
        for (i, mut f) in std::mem::take(&mut b.facets).into_iter().enumerate() {
            if visible.contains(&i) {
                continue;
            }
            if dot(&f.normal, x) == f.offset {
                f.vertices.push(p);
                f.vertices.sort_unstable();
            }
            keep.push(f);
        }
        b.facets = keep;
        for f in created {
            b.insert(f);
        }
    }

    // Final incidences over all points, then drop non-vertices.
    for f in b.facets.iter_mut() {
        f.vertices = (0..points.len())
            .filter(|&i| dot(&f.normal, &points[i]) == f.offset)
            .collect();
    }
    let vertices: Vec<usize> = (0..points.len())
        .filter(|&i| {
            let normals: Vec<Vec<Rational>> = b
                .facets
                .iter()
                .filter(|f| f.vertices.contains(&i))
                .map(|f| f.normal.iter().map(rat_int).collect())
                .collect();
            rank(&normals) == m
        })
        .collect();
    for f in b.facets.iter_mut() {
        f.vertices.retain(|i| vertices.contains(i));
    }
    debug_assert!(b.facets.iter().all(|f| f.normal.iter().any(|x| !x.is_zero())));
    debug_assert!(b
        .facets
        .iter()
        .all(|f| points.iter().all(|x| dot(&f.normal, x) <= f.offset)));
    Hull {
        vertices,
        facets: b.facets,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use proptest::prelude::*;

    fn pts(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|p| p.iter().map(|&x| int(x)).collect()).collect()
    }

    /// Facets by brute force: every hyperplane through m affinely independent
    /// points that supports the set and contains m independent points.
    fn brute_facets(points: &[Vec<BigInt>], m: usize) -> Vec<(Vec<BigInt>, BigInt)> {
        let n = points.len();
        let mut out: Vec<(Vec<BigInt>, BigInt)> = Vec::new();
        let mut idx: Vec<usize> = (0..m).collect();
        loop {
            if let Some((a, b)) = hyperplane(points, &idx, m) {
                for (a, b) in [(a.clone(), b.clone()), (a.iter().map(|x| -x).collect(), -b)] {
                    if points.iter().all(|x| dot(&a, x) <= b) && !out.contains(&(a.clone(), b.clone())) {
                        out.push((a, b));
                    }
                }
            }
            let mut k = m;
            loop {
                if k == 0 {
                    out.sort();
                    return out;
                }
                k -= 1;
                if idx[k] < n - m + k {
                    idx[k] += 1;
                    for j in k + 1..m {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn cube_with_interior_and_edge_points() {
        let p = pts(&[
            &[1, 1, 1], &[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1],
            &[1, 1, 0], &[1, 0, 1], &[0, 1, 1], &[0, 0, 2], &[0, 2, 0],
        ]);
        // not a cube anymore: (0,0,2),(0,2,0) stick out; check vertex count
        let h = convex_hull(&p, 3);
        let mut got: Vec<_> = h.facets.iter().map(|f| (f.normal.clone(), f.offset.clone())).collect();
        got.sort();
        assert_eq!(got, brute_facets(&p, 3));
    }

    #[test]
    fn square_midpoints_are_not_vertices() {
        let p = pts(&[&[0, 0], &[1, 0], &[2, 0], &[2, 2], &[0, 2], &[1, 1], &[0, 1]]);
        let h = convex_hull(&p, 2);
        assert_eq!(h.vertices, vec![0, 2, 3, 4]);
        assert_eq!(h.facets.len(), 4);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(150))]
        #[test]
        fn matches_brute_force(raw in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 3), 4..12)) {
            let mut p: Vec<Vec<BigInt>> = raw.iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect();
            p.sort();
            p.dedup();
            let all: Vec<usize> = (0..p.len()).collect();
            prop_assume!(affine_dim(&p, &all) == Some(3));
            let h = convex_hull(&p, 3);
            let mut got: Vec<_> = h.facets.iter().map(|f| (f.normal.clone(), f.offset.clone())).collect();
            got.sort();
            let expected: Vec<_> = brute_facets(&p, 3)
                .into_iter()
                .filter(|(a, b)| {
                    let on: Vec<usize> = (0..p.len()).filter(|&i| &dot(a, &p[i]) == b).collect();
                    affine_dim(&p, &on) == Some(2)
                })
                .collect();
            prop_assert_eq!(got, expected);
        }
    }
}
