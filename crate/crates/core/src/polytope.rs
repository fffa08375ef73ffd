//! Convex polytopes with synchronized vertex and facet descriptions.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dd;
use crate::error::{Error, Result};
use crate::lattice::{IntVector, SupportSet};
use crate::linalg::{self, Q};

/// The half-space `{x : normal . x <= offset}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfSpace {
    pub normal: IntVector,
    pub offset: Q,
}

/// The hyperplane `{x : normal . x = offset}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hyperplane {
    pub normal: IntVector,
    pub offset: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polytope {
    pub ambient_dim: usize,
    /// Extreme points in lexicographic order.
    pub vertices: Vec<Vec<Q>>,
    /// Facet inequalities with primitive outer normals. Empty for points.
    pub facets: Vec<HalfSpace>,
    /// Equations of the affine hull; empty when full-dimensional.
    pub equations: Vec<Hyperplane>,
    pub dim: usize,
    /// For each facet, the indices of the vertices on it.
    pub incidence: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub vertex_indices: Vec<usize>,
    pub dim: usize,
    pub exposing_vector: Option<IntVector>,
}

fn affine_dim(points: &[&Vec<Q>]) -> usize {
    let Some(p0) = points.first() else {
        return 0;
    };
    let diffs: Vec<Vec<Q>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(p0.iter()).map(|(a, b)| a - b).collect())
        .collect();
    linalg::rank(&diffs)
}

impl Polytope {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(|v| v.iter().all(|x| x.is_integer()))
    }

    /// Integer vertices. Fails when some vertex is not a lattice point.
    pub fn integer_vertices(&self) -> Result<Vec<IntVector>> {
        self.vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| if x.is_integer() { Ok(x.to_integer()) } else { Err(Error::NotLattice) })
                    .collect()
            })
            .collect()
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.equations.iter().all(|e| linalg::dot_iq(&e.normal, x) == e.offset)
            && self.facets.iter().all(|f| linalg::dot_iq(&f.normal, x) <= f.offset)
    }

    pub fn contains_int(&self, x: &[BigInt]) -> bool {
        self.contains(&linalg::to_q(x))
    }

    /// Barycenter of the vertices, a relative interior point.
    pub fn centroid(&self) -> Vec<Q> {
        let k = Q::from_integer(BigInt::from(self.vertices.len()));
        (0..self.ambient_dim)
            .map(|i| self.vertices.iter().fold(Q::zero(), |s, v| s + &v[i]) / &k)
            .collect()
    }

    pub fn translate(&self, t: &[Q]) -> Polytope {
        let mut p = self.clone();
        for v in p.vertices.iter_mut() {
            for (x, s) in v.iter_mut().zip(t) {
                *x += s;
            }
        }
        for f in p.facets.iter_mut() {
            f.offset += linalg::dot_iq(&f.normal, t);
        }
        for e in p.equations.iter_mut() {
            e.offset += linalg::dot_iq(&e.normal, t);
        }
        p
    }
}

/// Convex hull of rational points.
pub fn convex_hull(points: &[Vec<Q>]) -> Result<Polytope> {
    let Some(first) = points.first() else {
        return Err(Error::InvalidInput("convex hull of no points".into()));
    };
    let n = first.len();
    if let Some(bad) = points.iter().find(|p| p.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
    }
    let pts: Vec<Vec<Q>> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let l = pts
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let lq = linalg::qi(&l);
    let lifted: Vec<IntVector> = pts
        .iter()
        .map(|p| {
            std::iter::once(l.clone())
                .chain(p.iter().map(|x| (x * &lq).to_integer()))
                .collect()
        })
        .collect();
    let cf = dd::cone_facets(&lifted, n + 1);

    let equations: Vec<Hyperplane> = cf
        .equations
        .iter()
        .map(|e| {
            let g = linalg::gcd_all(&e[1..]);
            Hyperplane {
                normal: e[1..].iter().map(|x| x / &g).collect(),
                offset: -Q::new(e[0].clone(), g),
            }
        })
        .collect();
    let dim = n - equations.len();

    // The cone over a single point is a ray whose only facet is its apex.
    let facet_normals: &[IntVector] = if dim == 0 { &[] } else { &cf.facets };
    let mut facets: Vec<HalfSpace> = facet_normals
        .iter()
        .map(|a| {
            let g = linalg::gcd_all(&a[1..]);
            HalfSpace {
                normal: a[1..].iter().map(|x| -(x / &g)).collect(),
                offset: Q::new(a[0].clone(), g),
            }
        })
        .collect();
    facets.sort();

    let eq_rows: Vec<Vec<Q>> = cf.equations.iter().map(|e| linalg::to_q(e)).collect();
    let vertex_flags: Vec<bool> = lifted
        .iter()
        .map(|x| {
            let mut rows = eq_rows.clone();
            rows.extend(
                facet_normals
                    .iter()
                    .filter(|a| linalg::dot_int(a, x).is_zero())
                    .map(|a| linalg::to_q(a)),
            );
            linalg::rank(&rows) == n
        })
        .collect();
    let vertices: Vec<Vec<Q>> = pts
        .into_iter()
        .zip(vertex_flags)
        .filter_map(|(p, keep)| keep.then_some(p))
        .collect();
    let incidence = facets
        .iter()
        .map(|f| {
            (0..vertices.len())
                .filter(|&i| linalg::dot_iq(&f.normal, &vertices[i]) == f.offset)
                .collect()
        })
        .collect();
    Ok(Polytope { ambient_dim: n, vertices, facets, equations, dim, incidence })
}

pub fn convex_hull_int(points: &[IntVector]) -> Result<Polytope> {
    let q: Vec<Vec<Q>> = points.iter().map(|p| linalg::to_q(p)).collect();
    convex_hull(&q)
}

/// Convex hull of a support set. An empty set with ambient dimension 0 is not allowed.
pub fn convex_hull_support(a: &SupportSet) -> Result<Polytope> {
    convex_hull_int(&a.points)
}

/// `h_P(w)`, the maximum of `w . x` over the polytope.
pub fn support_function(p: &Polytope, w: &[BigInt]) -> Result<Q> {
    if w.len() != p.ambient_dim {
        return Err(Error::DimensionMismatch { expected: p.ambient_dim, found: w.len() });
    }
    Ok(p.vertices.iter().map(|v| linalg::dot_iq(w, v)).max().expect("nonempty polytope"))
}

/// Points of `a` maximizing `w . a`, in their original order.
pub fn exposed_subset(a: &SupportSet, w: &[BigInt]) -> Result<SupportSet> {
    if w.len() != a.ambient_dim {
        return Err(Error::DimensionMismatch { expected: a.ambient_dim, found: w.len() });
    }
    let Some(h) = a.points.iter().map(|p| linalg::dot_int(w, p)).max() else {
        return Ok(a.clone());
    };
    let keep: Vec<usize> =
        (0..a.points.len()).filter(|&i| linalg::dot_int(w, &a.points[i]) == h).collect();
    Ok(SupportSet {
        ambient_dim: a.ambient_dim,
        points: keep.iter().map(|&i| a.points[i].clone()).collect(),
        labels: a.labels.as_ref().map(|l| keep.iter().map(|&i| l[i].clone()).collect()),
    })
}

pub fn exposed_face(p: &Polytope, w: &[BigInt]) -> Result<Face> {
    let h = support_function(p, w)?;
    let idx: Vec<usize> =
        (0..p.vertices.len()).filter(|&i| linalg::dot_iq(w, &p.vertices[i]) == h).collect();
    let pts: Vec<&Vec<Q>> = idx.iter().map(|&i| &p.vertices[i]).collect();
    Ok(Face { dim: affine_dim(&pts), vertex_indices: idx, exposing_vector: Some(w.to_vec()) })
}

/// All nonempty faces, grouped by dimension (`result[d]` holds the `d`-faces).
pub fn face_lattice(p: &Polytope) -> Vec<Vec<Face>> {
    let all: BTreeSet<usize> = (0..p.vertices.len()).collect();
    let mut sets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    sets.insert(all.clone());
    let facet_sets: Vec<BTreeSet<usize>> =
        p.incidence.iter().map(|s| s.iter().copied().collect()).collect();
    let mut frontier: Vec<BTreeSet<usize>> = facet_sets.clone();
    while let Some(s) = frontier.pop() {
        if s.is_empty() || !sets.insert(s.clone()) {
            continue;
        }
        for f in &facet_sets {
            let t: BTreeSet<usize> = s.intersection(f).copied().collect();
            if !t.is_empty() && !sets.contains(&t) {
                frontier.push(t);
            }
        }
    }
    let mut out: Vec<Vec<Face>> = vec![Vec::new(); p.dim + 1];
    for s in sets {
        let pts: Vec<&Vec<Q>> = s.iter().map(|&i| &p.vertices[i]).collect();
        let d = affine_dim(&pts);
        let mut w = vec![BigInt::zero(); p.ambient_dim];
        for (f, inc) in p.facets.iter().zip(&p.incidence) {
            if s.iter().all(|i| inc.contains(i)) {
                for (x, y) in w.iter_mut().zip(&f.normal) {
                    *x += y;
                }
            }
        }
        out[d].push(Face { vertex_indices: s.into_iter().collect(), dim: d, exposing_vector: Some(w) });
    }
    out
}

pub fn scale(p: &Polytope, lambda: &Q) -> Result<Polytope> {
    if lambda.is_negative() {
        return Err(Error::InvalidInput("negative scaling factor".into()));
    }
    if lambda.is_zero() {
        return convex_hull(&[vec![Q::zero(); p.ambient_dim]]);
    }
    let mut s = p.clone();
    for v in s.vertices.iter_mut() {
        for x in v.iter_mut() {
            *x *= lambda;
        }
    }
    for f in s.facets.iter_mut() {
        f.offset *= lambda;
    }
    for e in s.equations.iter_mut() {
        e.offset *= lambda;
    }
    Ok(s)
}

pub fn minkowski_sum(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    if p.ambient_dim != q.ambient_dim {
        return Err(Error::DimensionMismatch { expected: p.ambient_dim, found: q.ambient_dim });
    }
    let sums: Vec<Vec<Q>> = p
        .vertices
        .iter()
        .flat_map(|a| q.vertices.iter().map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect()))
        .collect();
    convex_hull(&sums)
}

/// Minkowski sum of several polytopes, each scaled by a nonnegative rational.
pub fn weighted_sum(ps: &[&Polytope], lambdas: &[Q]) -> Result<Polytope> {
    let first = ps.first().ok_or_else(|| Error::InvalidInput("empty Minkowski sum".into()))?;
    let mut acc = scale(first, &lambdas[0])?;
    for (p, l) in ps.iter().zip(lambdas).skip(1) {
        acc = minkowski_sum(&acc, &scale(p, l)?)?;
    }
    Ok(acc)
}
