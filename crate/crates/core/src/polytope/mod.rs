//! Lattice polytopes: vertex and inequality descriptions, faces, relative
//! volume, and the central-symmetry and zonotope classifiers.
//!
//! All combinatorics runs in *local coordinates*: an integer basis of
//! `aff_0(P) ∩ Z^d` turns a lower-dimensional lattice polytope into a
//! full-dimensional one with integer vertices, without changing which points
//! are lattice points.

mod hull;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{determinant, dot, nullspace, primitive, saturated_basis, snf, solve, IntMatrix, Matrix, SnfDecomposition};
use crate::scalar::{den, rat_int, rat_vec, Rational};
use hull::{affine_dim, convex_hull, HullFacet};

/// A point set's affine hull with an integer basis of `aff_0 ∩ Z^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineHull {
    pub dim: usize,
    pub origin: Vec<Rational>,
    pub lattice_basis: Vec<Vec<BigInt>>,
}

/// `normal · x ≤ offset` (or `=` for equalities).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: Vec<BigInt>,
    pub offset: Rational,
}

impl Halfspace {
    pub fn value(&self, x: &[Rational]) -> Rational {
        self.normal.iter().zip(x).map(|(a, b)| b * a).sum()
    }
}

/// Irredundant inequality description; normals are primitive and the
/// inequalities are sorted by normal. Equalities cut out `aff(P)` when `P` is
/// not full-dimensional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub ambient_dim: usize,
    pub inequalities: Vec<Halfspace>,
    pub equalities: Vec<Halfspace>,
}

impl HRep {
    /// Whether `x ∈ c + tP`, given this description of `P`.
    pub fn contains_dilate(&self, x: &[Rational], t: &Rational, c: &[Rational]) -> bool {
        let shift = |h: &Halfspace| &h.offset * t + h.value(c);
        self.inequalities.iter().all(|h| h.value(x) <= shift(h))
            && self.equalities.iter().all(|h| h.value(x) == shift(h))
    }
}

/// Face given by the indices of its vertices in the parent polytope.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    pub vertex_indices: Vec<usize>,
    pub dim: usize,
}

/// Convex hull of finitely many integer points. Only vertices are kept.
#[derive(Clone, Debug)]
pub struct LatticePolytope {
    ambient_dim: usize,
    vertices: Vec<Vec<BigInt>>,
    hull: AffineHull,
    local: Vec<Vec<BigInt>>,
    local_facets: Vec<HullFacet>,
    hrep: HRep,
    frame: SnfDecomposition,
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.vertices == other.vertices
    }
}

impl Eq for LatticePolytope {}

/// Coordinates of `x − origin` in the given lattice basis (exact solve).
fn local_coords(basis: &[Vec<BigInt>], origin: &[BigInt], x: &[BigInt], d: usize) -> Vec<Rational> {
    let rows: Vec<Vec<Rational>> = (0..d)
        .map(|i| basis.iter().map(|b| rat_int(&b[i])).collect())
        .collect();
    let rhs: Vec<Rational> = x.iter().zip(origin).map(|(a, b)| rat_int(&(a - b))).collect();
    solve(&rows, basis.len(), &rhs).expect("point lies in the affine hull")
}

fn scale_to_primitive(v: &[Rational]) -> Vec<BigInt> {
    let l = den(v);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * rat_int(&l)).to_integer()).collect();
    primitive(&ints)
}

impl LatticePolytope {
    /// Convex hull of `points`; points that are not vertices are dropped.
    pub fn new(points: Vec<Vec<BigInt>>) -> Result<Self> {
        let d = points.first().ok_or(Error::EmptyPolytope)?.len();
        if let Some(bad) = points.iter().find(|p| p.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: bad.len(),
            });
        }
        let mut pts = points;
        pts.sort();
        pts.dedup();

        let diffs: Vec<Vec<BigInt>> = pts[1..]
            .iter()
            .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| a - b).collect())
            .collect();
        let basis = saturated_basis(&diffs, d)?;
        let m = basis.len();

        let vertices = if m == 0 {
            vec![pts[0].clone()]
        } else {
            let local = Self::localize(&basis, &pts, d);
            let h = convex_hull(&local, m);
            h.vertices.iter().map(|&i| pts[i].clone()).collect()
        };
        Ok(Self::from_vertices(vertices, basis, d))
    }

    pub fn from_i64(points: &[&[i64]]) -> Result<Self> {
        Self::new(
            points
                .iter()
                .map(|p| p.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    fn localize(basis: &[Vec<BigInt>], pts: &[Vec<BigInt>], d: usize) -> Vec<Vec<BigInt>> {
        pts.iter()
            .map(|p| {
                local_coords(basis, &pts[0], p, d)
                    .into_iter()
                    .map(|x| {
                        debug_assert!(x.is_integer());
                        x.to_integer()
                    })
                    .collect()
            })
            .collect()
    }

    /// `vertices` must be sorted, distinct, and exactly the vertex set.
    fn from_vertices(vertices: Vec<Vec<BigInt>>, basis: Vec<Vec<BigInt>>, d: usize) -> Self {
        let m = basis.len();
        let local = Self::localize(&basis, &vertices, d);
        let mut local_facets = if m == 0 {
            Vec::new()
        } else {
            convex_hull(&local, m).facets
        };

        // Ambient normal of a local facet a·μ ≤ b: the element of span(B)
        // pairing with B like a, i.e. B (BᵀB)⁻¹ a, scaled to a primitive vector.
        let gram: Vec<Vec<Rational>> = (0..m)
            .map(|i| (0..m).map(|j| rat_int(&dot(&basis[i], &basis[j]))).collect())
            .collect();
        let ambient_normal = |a: &[BigInt]| -> Vec<BigInt> {
            let y = solve(&gram, m, &rat_vec(a)).expect("Gram matrix of a basis is invertible");
            let n: Vec<Rational> = (0..d)
                .map(|i| (0..m).map(|j| &y[j] * rat_int(&basis[j][i])).sum())
                .collect();
            scale_to_primitive(&n)
        };
        let mut keyed: Vec<(Vec<BigInt>, HullFacet)> = local_facets
            .drain(..)
            .map(|f| (ambient_normal(&f.normal), f))
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let inequalities = keyed
            .iter()
            .map(|(n, f)| Halfspace {
                offset: rat_int(&dot(n, &vertices[f.vertices[0]])),
                normal: n.clone(),
            })
            .collect();
        let local_facets = keyed.into_iter().map(|(_, f)| f).collect();

        let bt: Vec<Vec<Rational>> = basis.iter().map(|b| rat_vec(b)).collect();
        let complement: Vec<Vec<BigInt>> = nullspace(&bt, d).iter().map(|v| scale_to_primitive(v)).collect();
        let mut equalities: Vec<Halfspace> = saturated_basis(&complement, d)
            .expect("dimensions agree")
            .into_iter()
            .map(|e| Halfspace {
                offset: rat_int(&dot(&e, &vertices[0])),
                normal: e,
            })
            .collect();
        equalities.sort();

        let frame = snf(&Matrix::from_columns(d, &basis).expect("basis vectors have length d"));
        let hull = AffineHull {
            dim: m,
            origin: rat_vec(&vertices[0]),
            lattice_basis: basis,
        };
        Self {
            ambient_dim: d,
            vertices,
            hull,
            local,
            local_facets,
            hrep: HRep {
                ambient_dim: d,
                inequalities,
                equalities,
            },
            frame,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[Vec<BigInt>] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.hull.dim
    }

    pub fn affine_hull(&self) -> &AffineHull {
        &self.hull
    }

    pub fn hrep(&self) -> &HRep {
        &self.hrep
    }

    /// Vertex coordinates in the lattice basis, relative to the first vertex.
    pub(crate) fn local_vertices(&self) -> &[Vec<BigInt>] {
        &self.local
    }

    /// Local facet inequalities `a·μ ≤ b`, in the same order as `hrep().inequalities`.
    pub(crate) fn local_inequalities(&self) -> impl Iterator<Item = (&[BigInt], &BigInt)> {
        self.local_facets.iter().map(|f| (f.normal.as_slice(), &f.offset))
    }

    /// Smith form of the `d × m` lattice basis matrix.
    pub(crate) fn frame(&self) -> &SnfDecomposition {
        &self.frame
    }

    /// `t·P` scaled by an integer.
    pub fn dilate(&self, k: &BigInt) -> LatticePolytope {
        let vs = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * k).collect())
            .collect();
        Self::new(vs).expect("dilate of a non-empty polytope")
    }

    /// `P + z` for an integer vector `z`.
    pub fn translate_integral(&self, z: &[BigInt]) -> Result<LatticePolytope> {
        if z.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: z.len(),
            });
        }
        let vs = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(z).map(|(a, b)| a + b).collect())
            .collect();
        Self::new(vs)
    }

    fn subset_dim(&self, subset: &[usize]) -> Option<usize> {
        affine_dim(&self.local, subset)
    }

    fn facet_sets(&self) -> Vec<Vec<usize>> {
        self.local_facets.iter().map(|f| f.vertices.clone()).collect()
    }

    /// All `j`-dimensional faces, each once, sorted by vertex indices.
    pub fn faces_of_dim(&self, j: usize) -> Vec<Face> {
        let m = self.dim();
        if j > m {
            return Vec::new();
        }
        if j == m {
            return vec![Face {
                vertex_indices: (0..self.vertices.len()).collect(),
                dim: m,
            }];
        }
        let facets = self.facet_sets();
        let mut level: BTreeSet<Vec<usize>> = facets.iter().cloned().collect();
        for k in (j + 1..m).rev() {
            level = self.subfaces(&level, &facets, k);
        }
        level
            .into_iter()
            .map(|vertex_indices| Face { vertex_indices, dim: j })
            .collect()
    }

    /// `(k−1)`-faces of the given `k`-faces.
    fn subfaces(&self, faces: &BTreeSet<Vec<usize>>, facets: &[Vec<usize>], k: usize) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for s in faces {
            out.extend(self.facets_of_face(s, facets, k));
        }
        out
    }

    fn facets_of_face(&self, face: &[usize], facets: &[Vec<usize>], k: usize) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        if k == 0 {
            return out;
        }
        for f in facets {
            let t: Vec<usize> = face.iter().copied().filter(|i| f.contains(i)).collect();
            if !t.is_empty() && self.subset_dim(&t) == Some(k - 1) {
                out.insert(t);
            }
        }
        out
    }

    /// Pulling triangulation of a `k`-face from its smallest vertex.
    fn triangulate(&self, face: &[usize], k: usize, facets: &[Vec<usize>]) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![face[0]]];
        }
        let apex = face[0];
        let mut out = Vec::new();
        for sub in self.facets_of_face(face, facets, k) {
            if sub.contains(&apex) {
                continue;
            }
            for mut simplex in self.triangulate(&sub, k - 1, facets) {
                simplex.push(apex);
                out.push(simplex);
            }
        }
        out
    }

    /// Volume normalised so that a fundamental cell of `aff(P) ∩ Z^d` has
    /// volume 1. A point has relative volume 1.
    pub fn relative_volume(&self) -> Rational {
        let m = self.dim();
        if m == 0 {
            return Rational::one();
        }
        let facets = self.facet_sets();
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let mut total = BigInt::zero();
        for simplex in self.triangulate(&all, m, &facets) {
            let apex = &self.local[simplex[m]];
            let rows: Vec<Vec<BigInt>> = simplex[..m]
                .iter()
                .map(|&i| self.local[i].iter().zip(apex).map(|(a, b)| a - b).collect())
                .collect();
            let det = determinant(&IntMatrix::from_rows(m, &rows).expect("square")).expect("square");
            total += det.abs();
        }
        let fact: BigInt = (1..=m as u64).map(BigInt::from).product();
        Rational::new(total, fact)
    }

    /// The facet with inequality index `i` as a lattice polytope.
    pub fn facet_polytope(&self, i: usize) -> LatticePolytope {
        let vs = self.local_facets[i]
            .vertices
            .iter()
            .map(|&v| self.vertices[v].clone())
            .collect();
        Self::new(vs).expect("facets are non-empty")
    }

    /// Face as a lattice polytope.
    pub fn face_polytope(&self, face: &Face) -> LatticePolytope {
        Self::new(face.vertex_indices.iter().map(|&i| self.vertices[i].clone()).collect())
            .expect("faces are non-empty")
    }

    /// `Some(c)` with `P = c + (−P)` when `P` is centrally symmetric.
    pub fn is_centrally_symmetric(&self) -> Option<Vec<Rational>> {
        symmetric_center(&self.vertices)
    }

    /// Facets without a parallel partner of equal relative volume.
    pub fn minkowski_facet_check(&self) -> Vec<FacetViolation> {
        let ineq = &self.hrep.inequalities;
        let volumes: Vec<Rational> = (0..ineq.len()).map(|i| self.facet_polytope(i).relative_volume()).collect();
        let mut out = Vec::new();
        for (i, h) in ineq.iter().enumerate() {
            let neg: Vec<BigInt> = h.normal.iter().map(|x| -x).collect();
            match ineq.iter().position(|g| g.normal == neg) {
                None => out.push(FacetViolation {
                    facet: i,
                    opposite: None,
                    volume: volumes[i].clone(),
                    opposite_volume: Rational::zero(),
                }),
                Some(j) if volumes[i] != volumes[j] => out.push(FacetViolation {
                    facet: i,
                    opposite: Some(j),
                    volume: volumes[i].clone(),
                    opposite_volume: volumes[j].clone(),
                }),
                Some(_) => {}
            }
        }
        out
    }

    /// Zonotope test through central symmetry of 2-faces.
    pub fn is_zonotope(&self) -> ZonotopeVerdict {
        match self.dim() {
            0 | 1 => ZonotopeVerdict { zonotope: true, asymmetric_face: None },
            2 => {
                let whole = self.faces_of_dim(2).remove(0);
                let sym = self.is_centrally_symmetric().is_some();
                ZonotopeVerdict {
                    zonotope: sym,
                    asymmetric_face: (!sym).then_some(whole),
                }
            }
            _ => {
                let bad = self.faces_of_dim(2).into_iter().find(|f| {
                    let vs: Vec<Vec<BigInt>> = f.vertex_indices.iter().map(|&i| self.vertices[i].clone()).collect();
                    symmetric_center(&vs).is_none()
                });
                ZonotopeVerdict {
                    zonotope: bad.is_none(),
                    asymmetric_face: bad,
                }
            }
        }
    }
}

/// A facet failing the parallel-partner test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetViolation {
    /// Index into `hrep().inequalities`.
    pub facet: usize,
    pub opposite: Option<usize>,
    pub volume: Rational,
    /// Zero when there is no parallel facet.
    pub opposite_volume: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZonotopeVerdict {
    pub zonotope: bool,
    /// A 2-face (or the polygon itself) that is not centrally symmetric.
    pub asymmetric_face: Option<Face>,
}

/// Reflection of the vertex set through its centroid.
fn symmetric_center(vertices: &[Vec<BigInt>]) -> Option<Vec<Rational>> {
    let n = BigInt::from(vertices.len());
    let d = vertices.first()?.len();
    let sum: Vec<BigInt> = (0..d).map(|i| vertices.iter().map(|v| &v[i]).sum()).collect();
    // 2·centroid must be integral since antipodal vertices sum to it.
    let two_sum: Vec<BigInt> = sum.iter().map(|s| s * 2).collect();
    if !two_sum.iter().all(|s| s.is_multiple_of(&n)) {
        return None;
    }
    let center: Vec<BigInt> = two_sum.iter().map(|s| s / &n).collect();
    let set: BTreeSet<&Vec<BigInt>> = vertices.iter().collect();
    let reflected_ok = vertices.iter().all(|v| {
        let r: Vec<BigInt> = center.iter().zip(v).map(|(c, x)| c - x).collect();
        set.contains(&r)
    });
    reflected_ok.then(|| rat_vec(&center))
}

/// A lattice polytope translated by a rational vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostIntegralPolytope {
    pub base: LatticePolytope,
    pub translate: Vec<Rational>,
}

impl AlmostIntegralPolytope {
    pub fn new(base: LatticePolytope, translate: Vec<Rational>) -> Result<Self> {
        if translate.len() != base.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: base.ambient_dim(),
                found: translate.len(),
            });
        }
        Ok(Self { base, translate })
    }

    /// lcm of the translation's coordinate denominators.
    pub fn den(&self) -> BigInt {
        den(&self.translate)
    }
}
