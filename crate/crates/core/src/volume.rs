//! Volumes, lattice point counts, Ehrhart polynomials and mixed volumes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{self, IntVector};
use crate::linalg::{self, q, Q};
use crate::polytope::{self, Polytope};

/// Univariate polynomial with rational coefficients, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolynomialQ {
    pub coefficients: Vec<Q>,
}

impl PolynomialQ {
    pub fn new(mut coefficients: Vec<Q>) -> Self {
        while coefficients.last().is_some_and(|c| c.is_zero()) {
            coefficients.pop();
        }
        PolynomialQ { coefficients }
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Q {
        self.coefficients.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coefficients.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// Interpolating polynomial through `(x0 + i, values[i])`.
    pub fn interpolate(x0: i64, values: &[Q]) -> Self {
        let n = values.len();
        let rows: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                let x = q(x0 + i as i64);
                let mut p = Q::one();
                (0..n)
                    .map(|_| {
                        let c = p.clone();
                        p *= &x;
                        c
                    })
                    .collect()
            })
            .collect();
        let c = linalg::solve(&rows, values).expect("Vandermonde system is nonsingular");
        PolynomialQ::new(c)
    }
}

impl std::fmt::Display for PolynomialQ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "d".to_string(),
                _ => format!("d^{i}"),
            };
            terms.push(if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else {
                format!("{c}*{mono}")
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Homogeneous polynomial in `nvars` variables; exponents map to coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiPolynomialQ {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, Q>,
}

impl MultiPolynomialQ {
    pub fn eval(&self, x: &[Q]) -> Q {
        self.terms.iter().fold(Q::zero(), |acc, (e, c)| {
            let m = e.iter().zip(x).fold(Q::one(), |m, (&k, xi)| {
                m * num_traits::pow(xi.clone(), k as usize)
            });
            acc + c * m
        })
    }

    pub fn coefficient(&self, exponent: &[u32]) -> Q {
        self.terms.get(exponent).cloned().unwrap_or_else(Q::zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedVolumeResult {
    pub mv: Q,
    /// `n! * mv`; an integer for lattice polytopes.
    pub normalized: Q,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

fn simplex_volume(s: &[Vec<Q>]) -> Q {
    let v0 = &s[0];
    let m: Vec<Vec<Q>> = s[1..]
        .iter()
        .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
        .collect();
    linalg::det(&m).abs() / linalg::qi(&factorial(m.len()))
}

/// Facets of the face `g` (vertex indices, dimension `dim`): the inclusion-maximal proper
/// intersections of `g` with the facets of `p`.
fn subfacets(p: &Polytope, g: &[usize]) -> Vec<Vec<usize>> {
    let mut cands: Vec<Vec<usize>> = Vec::new();
    for inc in &p.incidence {
        let s: Vec<usize> = g.iter().copied().filter(|v| inc.binary_search(v).is_ok()).collect();
        if !s.is_empty() && s.len() < g.len() && !cands.contains(&s) {
            cands.push(s);
        }
    }
    let subset = |a: &[usize], b: &[usize]| a.len() < b.len() && a.iter().all(|v| b.binary_search(v).is_ok());
    cands.iter().filter(|s| !cands.iter().any(|t| subset(s, t))).cloned().collect()
}

fn pull(p: &Polytope, g: &[usize], dim: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if dim == 0 || g.len() == dim + 1 {
        let mut s = prefix.clone();
        s.extend_from_slice(g);
        out.push(s);
        return;
    }
    let apex = g[0];
    prefix.push(apex);
    for f in subfacets(p, g) {
        if !f.contains(&apex) {
            pull(p, &f, dim - 1, prefix, out);
        }
    }
    prefix.pop();
}

/// Simplices of a pulling triangulation of the face `g`, as vertex indices.
fn triangulate_face(p: &Polytope, g: &[usize], dim: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    pull(p, g, dim, &mut Vec::new(), &mut out);
    out
}

fn sorted_incidence(p: &Polytope) -> Polytope {
    let mut q = p.clone();
    for inc in &mut q.incidence {
        inc.sort_unstable();
    }
    q
}

/// Simplices (as vertex lists) triangulating `p`, by pulling the first vertex recursively.
pub fn triangulate(p: &Polytope) -> Vec<Vec<Vec<Q>>> {
    let q = sorted_incidence(p);
    let all: Vec<usize> = (0..q.vertices.len()).collect();
    triangulate_face(&q, &all, q.dim)
        .into_iter()
        .map(|s| s.into_iter().map(|i| q.vertices[i].clone()).collect())
        .collect()
}

/// Volumes of the pyramids from the centroid over each facet, in facet order.
pub fn facet_pyramid_volumes(p: &Polytope) -> Vec<Q> {
    if !p.is_full_dimensional() {
        return vec![Q::zero(); p.facets.len()];
    }
    let q = sorted_incidence(p);
    let c = q.centroid();
    q.incidence
        .iter()
        .map(|inc| {
            triangulate_face(&q, inc, q.dim - 1)
                .into_iter()
                .map(|s| {
                    let mut pts = vec![c.clone()];
                    pts.extend(s.into_iter().map(|i| q.vertices[i].clone()));
                    simplex_volume(&pts)
                })
                .fold(Q::zero(), |a, b| a + b)
        })
        .collect()
}

/// Euclidean `n`-dimensional volume; zero unless the polytope is full-dimensional.
pub fn volume(p: &Polytope) -> Q {
    if !p.is_full_dimensional() {
        return Q::zero();
    }
    if p.dim == 0 {
        return Q::one();
    }
    triangulate(p).iter().map(|s| simplex_volume(s)).fold(Q::zero(), |a, b| a + b)
}

pub fn normalized_volume(p: &Polytope) -> Q {
    volume(p) * linalg::qi(&factorial(p.ambient_dim))
}

/// Coordinates of the vertices in a basis of the lattice of the affine span,
/// with the first vertex at the origin. Returns the coordinates and the basis.
fn span_coordinates(p: &Polytope) -> (Vec<Vec<Q>>, Vec<IntVector>) {
    let v0 = &p.vertices[0];
    let diffs: Vec<Vec<Q>> = p
        .vertices
        .iter()
        .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
        .collect();
    let int_diffs: Vec<IntVector> = diffs.iter().map(|d| linalg::clear_denominators(d)).collect();
    let basis = lattice::saturated_basis(&int_diffs, p.ambient_dim);
    // Solve B^T z = d for each difference.
    let bt: Vec<Vec<Q>> = (0..p.ambient_dim)
        .map(|i| basis.iter().map(|b| linalg::qi(&b[i])).collect())
        .collect();
    let coords = diffs
        .iter()
        .map(|d| linalg::solve(&bt, d).expect("difference lies in the span"))
        .collect();
    (coords, basis)
}

/// Volume in the affine span, normalized so a fundamental domain of the span's lattice has volume 1.
///
/// This is the leading coefficient of the Ehrhart polynomial of a lattice polytope.
pub fn intrinsic_volume(p: &Polytope) -> Q {
    if p.dim == 0 {
        return Q::one();
    }
    let (coords, _) = span_coordinates(p);
    volume(&polytope::convex_hull(&coords).expect("nonempty"))
}

/// Square of the Euclidean volume in the affine span. The Euclidean volume itself is
/// generally irrational (it carries the square root of a Gram determinant).
pub fn intrinsic_volume_euclidean_squared(p: &Polytope) -> Q {
    if p.dim == 0 {
        return Q::one();
    }
    let (coords, basis) = span_coordinates(p);
    let v = volume(&polytope::convex_hull(&coords).expect("nonempty"));
    let gram: Vec<Vec<Q>> = basis
        .iter()
        .map(|a| basis.iter().map(|b| linalg::qi(&linalg::dot_int(a, b))).collect())
        .collect();
    &v * &v * linalg::det(&gram)
}

/// Number of lattice points in the polytope, by scanning its bounding box.
pub fn count_lattice_points(p: &Polytope) -> BigInt {
    let n = p.ambient_dim;
    let lo: Vec<i64> = (0..n)
        .map(|i| p.vertices.iter().map(|v| v[i].ceil()).min().unwrap().to_integer().to_i64().unwrap())
        .collect();
    let hi: Vec<i64> = (0..n)
        .map(|i| p.vertices.iter().map(|v| v[i].floor()).max().unwrap().to_integer().to_i64().unwrap())
        .collect();
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return BigInt::zero();
    }
    let mut x = lo.clone();
    let mut count = BigInt::zero();
    loop {
        let xq: Vec<Q> = x.iter().map(|&v| q(v)).collect();
        if p.contains(&xq) {
            count += 1;
        }
        let mut k = 0;
        while k < n {
            x[k] += 1;
            if x[k] <= hi[k] {
                break;
            }
            x[k] = lo[k];
            k += 1;
        }
        if k == n {
            return count;
        }
    }
}

/// Ehrhart polynomial of a lattice polytope, constant term first.
pub fn ehrhart(p: &Polytope) -> Result<PolynomialQ> {
    if !p.is_lattice() {
        return Err(Error::NotLattice);
    }
    let values: Vec<Q> = (0..=p.dim)
        .map(|d| {
            let dp = polytope::scale(p, &q(d as i64)).expect("nonnegative");
            linalg::qi(&count_lattice_points(&dp))
        })
        .collect();
    Ok(PolynomialQ::interpolate(0, &values))
}

fn check_dims(ps: &[&Polytope]) -> Result<usize> {
    let n = ps.first().ok_or_else(|| Error::InvalidInput("no polytopes".into()))?.ambient_dim;
    for p in ps {
        if p.ambient_dim != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.ambient_dim });
        }
    }
    Ok(n)
}

/// Mixed volume of `n` polytopes in `R^n` by inclusion-exclusion over nonempty subsets.
pub fn mixed_volume(ps: &[&Polytope]) -> Result<MixedVolumeResult> {
    let n = check_dims(ps)?;
    if ps.len() != n {
        return Err(Error::WrongCount { expected: n, found: ps.len() });
    }
    let mut total = Q::zero();
    for mask in 1u64..(1u64 << n) {
        let chosen: Vec<&Polytope> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| ps[i]).collect();
        let ones = vec![Q::one(); chosen.len()];
        let v = volume(&polytope::weighted_sum(&chosen, &ones)?);
        if (n - chosen.len()) % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    let mv = &total / linalg::qi(&factorial(n));
    Ok(MixedVolumeResult { mv, normalized: total })
}

/// `Vol(l_1 P_1 + ... + l_r P_r)` as a homogeneous polynomial of degree `n` in the `l_i`.
pub fn minkowski_volume_polynomial(ps: &[&Polytope]) -> Result<MultiPolynomialQ> {
    let n = check_dims(ps)?;
    let r = ps.len();
    let mut terms = BTreeMap::new();
    // Each exponent vector alpha with |alpha| = n gets n!/alpha! MV(P_1^alpha_1, ...).
    let mut alpha = vec![0u32; r];
    fn rec(
        i: usize,
        left: u32,
        alpha: &mut Vec<u32>,
        ps: &[&Polytope],
        n: usize,
        terms: &mut BTreeMap<Vec<u32>, Q>,
    ) -> Result<()> {
        if i + 1 == alpha.len() {
            alpha[i] = left;
            let list: Vec<&Polytope> = alpha
                .iter()
                .enumerate()
                .flat_map(|(j, &k)| std::iter::repeat(ps[j]).take(k as usize))
                .collect();
            let mv = if n == 0 { Q::one() } else { mixed_volume(&list)?.mv };
            let denom = alpha.iter().fold(BigInt::one(), |a, &k| a * factorial(k as usize));
            let c = mv * linalg::qi(&factorial(n)) / linalg::qi(&denom);
            if !c.is_zero() {
                terms.insert(alpha.clone(), c);
            }
            return Ok(());
        }
        for k in 0..=left {
            alpha[i] = k;
            rec(i + 1, left - k, alpha, ps, n, terms)?;
        }
        alpha[i] = 0;
        Ok(())
    }
    rec(0, n as u32, &mut alpha, ps, n, &mut terms)?;
    Ok(MultiPolynomialQ { nvars: r, terms })
}
