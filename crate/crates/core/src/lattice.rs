//! Integer lattices: Hermite and Smith forms, kernels, ranks and indices, lifts.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Q};

pub type IntVector = Vec<BigInt>;

pub fn ivec(v: &[i64]) -> IntVector {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Dense integer matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Build from a list of rows. All rows must have the same length.
    pub fn from_rows(rows: &[IntVector]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        let rows: Vec<IntVector> = rows.iter().map(|r| ivec(r)).collect();
        Self::from_rows(&rows)
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<IntVector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let m: Vec<Vec<Q>> = self.to_rows().iter().map(|r| linalg::to_q(r)).collect();
        Ok(linalg::det(&m).to_integer())
    }
}

/// An ordered list of distinct lattice points, the columns of a matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SupportSet {
    pub ambient_dim: usize,
    pub points: Vec<IntVector>,
    pub labels: Option<Vec<String>>,
}

impl SupportSet {
    pub fn new(ambient_dim: usize, points: Vec<IntVector>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (i, p) in points.iter().enumerate() {
            if p.len() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: p.len() });
            }
            if !seen.insert(p.clone()) {
                return Err(Error::DuplicatePoint { index: i });
            }
        }
        Ok(SupportSet { ambient_dim, points, labels: None })
    }

    /// Points given as rows of machine integers.
    pub fn from_points(ambient_dim: usize, points: &[Vec<i64>]) -> Result<Self> {
        Self::new(ambient_dim, points.iter().map(|p| ivec(p)).collect())
    }

    /// Points given as the columns of a matrix entered one coordinate per row.
    pub fn from_columns(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let count = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != count) {
            return Err(Error::DimensionMismatch { expected: count, found: bad.len() });
        }
        let pts = (0..count).map(|j| (0..n).map(|i| BigInt::from(rows[i][j])).collect()).collect();
        Self::new(n, pts)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.points.len() {
            return Err(Error::DimensionMismatch { expected: self.points.len(), found: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Matrix with one column per point.
    pub fn matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.ambient_dim, self.points.len());
        for (j, p) in self.points.iter().enumerate() {
            for (i, x) in p.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    /// `A u`, the image of a coefficient vector.
    pub fn apply(&self, u: &[BigInt]) -> Result<IntVector> {
        if u.len() != self.points.len() {
            return Err(Error::DimensionMismatch { expected: self.points.len(), found: u.len() });
        }
        let mut out = vec![BigInt::zero(); self.ambient_dim];
        for (p, c) in self.points.iter().zip(u) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(p) {
                *o += c * x;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self
            .points
            .iter()
            .map(|p| {
                let s: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                format!("({})", s.join(","))
            })
            .collect();
        write!(f, "{{{}}}", pts.join(", "))
    }
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

fn combine_rows(m: &mut [IntVector], i: usize, k: usize, x: &BigInt, y: &BigInt, a: &BigInt, b: &BigInt) {
    // row_i <- x row_i + y row_k ; row_k <- -b row_i + a row_k
    for j in 0..m[i].len() {
        let ri = m[i][j].clone();
        let rk = m[k][j].clone();
        m[i][j] = x * &ri + y * &rk;
        m[k][j] = a * &rk - b * &ri;
    }
}

fn sub_row_multiple(m: &mut [IntVector], target: usize, src: usize, q: &BigInt) {
    for j in 0..m[target].len() {
        let t = q * &m[src][j];
        m[target][j] -= t;
    }
}

/// Row-style Hermite normal form on plain rows. Returns `(h, u, rank)` with `h = u m`.
pub(crate) fn hermite_rows(m: &[IntVector], ncols: usize) -> (Vec<IntVector>, Vec<IntVector>, usize) {
    let r = m.len();
    let mut h = m.to_vec();
    let mut u: Vec<IntVector> = (0..r)
        .map(|i| (0..r).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut pr = 0;
    for j in 0..ncols {
        if pr == r {
            break;
        }
        for i in pr + 1..r {
            if h[i][j].is_zero() {
                continue;
            }
            let (g, x, y) = ext_gcd(&h[pr][j], &h[i][j]);
            let a = &h[pr][j] / &g;
            let b = &h[i][j] / &g;
            combine_rows(&mut h, pr, i, &x, &y, &a, &b);
            combine_rows(&mut u, pr, i, &x, &y, &a, &b);
        }
        if h[pr][j].is_zero() {
            continue;
        }
        if h[pr][j].is_negative() {
            for v in h[pr].iter_mut().chain(u[pr].iter_mut()) {
                *v = -&*v;
            }
        }
        for i in 0..pr {
            let q = h[i][j].div_floor(&h[pr][j]);
            if !q.is_zero() {
                sub_row_multiple(&mut h, i, pr, &q);
                sub_row_multiple(&mut u, i, pr, &q);
            }
        }
        pr += 1;
    }
    (h, u, pr)
}

/// Hermite normal form `h = u m` with `u` unimodular.
///
/// Pivots are positive and entries above each pivot lie in `[0, pivot)`. Zero rows sit at the bottom.
pub fn hermite_form(m: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    if m.rows == 0 {
        return Err(Error::InvalidInput("empty matrix".into()));
    }
    let (h, u, _) = hermite_rows(&m.to_rows(), m.cols);
    Ok((IntMatrix::from_rows(&h)?, IntMatrix::from_rows(&u)?))
}

/// Nonzero rows of the Hermite form: a canonical basis of the row lattice.
pub fn lattice_basis(rows: &[IntVector], ncols: usize) -> Vec<IntVector> {
    if rows.is_empty() {
        return Vec::new();
    }
    let (h, _, rank) = hermite_rows(rows, ncols);
    h.into_iter().take(rank).collect()
}

/// Canonical basis of `{x in Z^ncols : M x = 0}` for `M` given by rows.
pub fn integer_kernel(rows: &[IntVector], ncols: usize) -> Vec<IntVector> {
    if ncols == 0 {
        return Vec::new();
    }
    // Columns of M become rows of M^T; row operations there are column operations on M.
    let t: Vec<IntVector> = (0..ncols).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect();
    let (_, u, rank) = hermite_rows(&t, rows.len());
    let kernel: Vec<IntVector> = u.into_iter().skip(rank).collect();
    lattice_basis(&kernel, ncols)
}

/// Basis of the lattice of integer relations `{u : A u = 0}`.
///
/// Vectors are Hermite-reduced, so the first nonzero entry of each is positive.
pub fn kernel_basis(a: &SupportSet) -> Vec<IntVector> {
    let m = a.matrix();
    integer_kernel(&m.to_rows(), a.points.len())
}

/// Rank of the lattice spanned by the points, and its index in `Z^n` when that rank is `n`.
pub fn lattice_rank_index(a: &SupportSet) -> (usize, Option<BigInt>) {
    let basis = lattice_basis(&a.points, a.ambient_dim);
    let rank = basis.len();
    if rank < a.ambient_dim {
        return (rank, None);
    }
    let mut index = BigInt::one();
    for row in &basis {
        index *= row.iter().find(|x| !x.is_zero()).expect("nonzero basis row");
    }
    (rank, Some(index))
}

/// Smith invariant factors of the row lattice of `m` (nonzero ones, in divisibility order).
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let mut rows = m.to_rows();
    let mut ncols = m.cols;
    if rows.is_empty() {
        return Vec::new();
    }
    loop {
        let basis = lattice_basis(&rows, ncols);
        if basis.is_empty() {
            return Vec::new();
        }
        let diagonal = basis
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, x)| (i == j) == !x.is_zero()));
        if diagonal {
            let mut d: Vec<BigInt> = basis.iter().enumerate().map(|(i, r)| r[i].abs()).collect();
            for i in 0..d.len() {
                for j in i + 1..d.len() {
                    let g = d[i].gcd(&d[j]);
                    let l = d[i].lcm(&d[j]);
                    d[i] = g;
                    d[j] = l;
                }
            }
            return d;
        }
        let r = basis.len();
        rows = (0..ncols).map(|j| basis.iter().map(|b| b[j].clone()).collect()).collect();
        ncols = r;
    }
}

/// Whether the differences `b - a_0` generate all of `Z^n`.
pub fn integral_affine_span_is_full(a: &SupportSet) -> bool {
    let Some(a0) = a.points.first() else {
        return a.ambient_dim == 0;
    };
    let diffs: Vec<IntVector> = a.points[1..]
        .iter()
        .map(|b| b.iter().zip(a0).map(|(x, y)| x - y).collect())
        .collect();
    let basis = lattice_basis(&diffs, a.ambient_dim);
    basis.len() == a.ambient_dim
        && basis
            .iter()
            .all(|r| r.iter().find(|x| !x.is_zero()).is_some_and(|p| p.is_one()))
}

/// A primitive `w` and `c != 0` with `w . a = c` for every point, when one exists.
pub fn affine_hyperplane_witness(a: &SupportSet) -> Option<(IntVector, BigInt)> {
    if a.points.is_empty() {
        return None;
    }
    let rows: Vec<Vec<Q>> = a.points.iter().map(|p| linalg::to_q(p)).collect();
    let ones = vec![Q::one(); rows.len()];
    let sol = linalg::solve(&rows, &ones)?;
    let w = linalg::clear_denominators(&sol);
    let c = linalg::dot_int(&w, &a.points[0]);
    Some((w, c))
}

/// Prepend a coordinate equal to 1 to every point.
pub fn lift(a: &SupportSet) -> SupportSet {
    let points = a
        .points
        .iter()
        .map(|p| std::iter::once(BigInt::one()).chain(p.iter().cloned()).collect())
        .collect();
    SupportSet { ambient_dim: a.ambient_dim + 1, points, labels: a.labels.clone() }
}

/// Integer coefficients `c` with `sum c_i rows_i = target`, when the target lies in the row lattice.
pub fn lattice_solve(rows: &[IntVector], target: &[BigInt]) -> Option<IntVector> {
    let ncols = target.len();
    if rows.is_empty() {
        return target.iter().all(|x| x.is_zero()).then(Vec::new);
    }
    let (h, u, rank) = hermite_rows(rows, ncols);
    let mut residual = target.to_vec();
    let mut y = Vec::with_capacity(rank);
    for row in h.iter().take(rank) {
        let p = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
        let (c, rem) = residual[p].div_rem(&row[p]);
        if !rem.is_zero() {
            return None;
        }
        for (r, x) in residual.iter_mut().zip(row) {
            *r -= &c * x;
        }
        y.push(c);
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut out = vec![BigInt::zero(); rows.len()];
    for (c, urow) in y.iter().zip(&u) {
        for (o, x) in out.iter_mut().zip(urow) {
            *o += c * x;
        }
    }
    Some(out)
}

/// Vectors extending a basis of a saturated sublattice to a basis of `Z^n`.
///
/// Unit vectors are preferred, taking the lexicographically first subset that works.
pub fn complete_basis(basis: &[IntVector], n: usize) -> Vec<IntVector> {
    let k = basis.len();
    let unit = |i: usize| -> IntVector { (0..n).map(|j| BigInt::from((i == j) as i64)).collect() };
    let unimodular = |extra: &[IntVector]| -> bool {
        let rows: Vec<Vec<Q>> = basis.iter().chain(extra).map(|v| linalg::to_q(v)).collect();
        linalg::det(&rows).abs() == Q::one()
    };
    let mut choice: Vec<usize> = (0..n - k).collect();
    loop {
        let extra: Vec<IntVector> = choice.iter().map(|&i| unit(i)).collect();
        if unimodular(&extra) {
            return extra;
        }
        // next combination in lexicographic order
        let Some(pos) = (0..choice.len()).rev().find(|&p| choice[p] < k + p) else {
            break;
        };
        choice[pos] += 1;
        for t in pos + 1..choice.len() {
            choice[t] = choice[t - 1] + 1;
        }
    }
    // u * B^T = H with H zero below its first k rows, so the last columns of u^-1 complete B.
    let bt: Vec<IntVector> = (0..n).map(|i| basis.iter().map(|b| b[i].clone()).collect()).collect();
    let (_, u, _) = hermite_rows(&bt, k);
    let uq: Vec<Vec<Q>> = u.iter().map(|r| linalg::to_q(r)).collect();
    let inv = linalg::inverse(&uq).expect("unimodular");
    (k..n).map(|j| (0..n).map(|i| inv[i][j].to_integer()).collect()).collect()
}

/// Basis of `span_Q(vectors) ∩ Z^n`.
pub fn saturated_basis(vectors: &[IntVector], n: usize) -> Vec<IntVector> {
    let rows: Vec<Vec<Q>> = vectors.iter().map(|v| linalg::to_q(v)).collect();
    let perp: Vec<IntVector> = linalg::nullspace(&rows, n)
        .iter()
        .map(|v| linalg::clear_denominators(v))
        .collect();
    if perp.is_empty() {
        return (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
    }
    integer_kernel(&perp, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn twisted_cubic() -> SupportSet {
        SupportSet::from_columns(&[vec![3, 2, 1, 0], vec![0, 1, 2, 3]]).unwrap()
    }

    fn in_span(basis: &[IntVector], v: &IntVector) -> bool {
        let mut rows: Vec<Vec<Q>> = basis.iter().map(|b| linalg::to_q(b)).collect();
        let r = linalg::rank(&rows);
        rows.push(linalg::to_q(v));
        linalg::rank(&rows) == r
    }

    #[test]
    fn hermite_identity_and_diagonal() {
        let id = IntMatrix::identity(2);
        let (h, u) = hermite_form(&id).unwrap();
        assert_eq!(h, id);
        assert_eq!(u, id);
        let d = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]).unwrap();
        let (h, u) = hermite_form(&d).unwrap();
        assert_eq!(h, d);
        assert_eq!(u, id);
    }

    #[test]
    fn hermite_single_row() {
        let m = IntMatrix::from_i64(&[&[2, 3]]).unwrap();
        let (h, u) = hermite_form(&m).unwrap();
        assert_eq!(*h.get(0, 0), BigInt::from(2));
        assert_eq!(u.det().unwrap().abs(), BigInt::one());
        assert_eq!(u.mul(&m).unwrap(), h);
        let col = IntMatrix::from_i64(&[&[2], &[3]]).unwrap();
        let (h, u) = hermite_form(&col).unwrap();
        assert_eq!(h, IntMatrix::from_i64(&[&[1], &[0]]).unwrap());
        assert_eq!(u.mul(&col).unwrap(), h);
    }

    #[test]
    fn kernels() {
        let a = SupportSet::from_points(1, &[vec![2], vec![3]]).unwrap();
        assert_eq!(kernel_basis(&a), vec![ivec(&[3, -2])]);
        let tc = twisted_cubic();
        let k = kernel_basis(&tc);
        assert_eq!(k.len(), 2);
        for rel in [[1, -2, 1, 0], [1, -1, -1, 1], [0, 1, -2, 1]] {
            assert!(in_span(&k, &ivec(&rel)));
        }
        for u in &k {
            assert!(tc.apply(u).unwrap().iter().all(|x| x.is_zero()));
            assert!(u.iter().find(|x| !x.is_zero()).unwrap().is_positive());
        }
        let std = SupportSet::from_points(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert!(kernel_basis(&std).is_empty());
    }

    #[test]
    fn rank_index() {
        assert_eq!(lattice_rank_index(&twisted_cubic()), (2, Some(BigInt::from(3))));
        let std = SupportSet::from_points(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(lattice_rank_index(&std), (2, Some(BigInt::one())));
        let col = SupportSet::from_points(2, &[vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(lattice_rank_index(&col), (1, None));
        let sm = smith_invariants(&twisted_cubic().matrix().transpose());
        assert_eq!(sm, vec![BigInt::one(), BigInt::from(3)]);
    }

    #[test]
    fn affine_span() {
        let a = SupportSet::from_points(1, &[vec![0], vec![2], vec![3]]).unwrap();
        assert!(integral_affine_span_is_full(&a));
        let b = SupportSet::from_points(1, &[vec![0], vec![2], vec![4]]).unwrap();
        assert!(!integral_affine_span_is_full(&b));
        assert!(!integral_affine_span_is_full(&twisted_cubic()));
    }

    #[test]
    fn hyperplane_witness() {
        assert_eq!(affine_hyperplane_witness(&twisted_cubic()), Some((ivec(&[1, 1]), BigInt::from(3))));
        let l = lift(&SupportSet::from_points(1, &[vec![0], vec![2], vec![3]]).unwrap());
        assert_eq!(affine_hyperplane_witness(&l), Some((ivec(&[1, 0]), BigInt::one())));
        let a = SupportSet::from_points(1, &[vec![0], vec![1]]).unwrap();
        assert_eq!(affine_hyperplane_witness(&a), None);
    }

    #[test]
    fn lifts() {
        let a = SupportSet::from_points(1, &[vec![0], vec![2], vec![3]]).unwrap();
        let l = lift(&a);
        assert_eq!(l, SupportSet::from_columns(&[vec![1, 1, 1], vec![0, 2, 3]]).unwrap());
        let hex = SupportSet::from_points(
            2,
            &[vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1], vec![-1, 0], vec![-1, -1], vec![0, -1]],
        )
        .unwrap();
        let lh = lift(&hex);
        assert_eq!(lh.len(), 7);
        assert!(lh.points.iter().all(|p| p[0].is_one()));
        let pt = SupportSet::new(0, vec![vec![]]).unwrap();
        assert_eq!(lift(&pt).points, vec![ivec(&[1])]);
    }

    #[test]
    fn completing_bases() {
        let c = complete_basis(&[ivec(&[1, -1])], 2);
        assert_eq!(c, vec![ivec(&[1, 0])]);
        for b in [vec![ivec(&[2, 3])], vec![ivec(&[2, 3, 5])], vec![ivec(&[1, 2, 2]), ivec(&[0, 3, 2])]] {
            let n = b[0].len();
            let full: Vec<Vec<Q>> = b.iter().chain(&complete_basis(&b, n)).map(|v| linalg::to_q(v)).collect();
            assert_eq!(linalg::det(&full).abs(), Q::one());
        }
    }

    #[test]
    fn solving_in_lattice() {
        let rows = vec![ivec(&[1, 0]), ivec(&[1, 2]), ivec(&[1, 3])];
        let c = lattice_solve(&rows, &ivec(&[2, 4])).unwrap();
        let s: IntVector = (0..2).map(|j| rows.iter().zip(&c).map(|(r, x)| &r[j] * x).sum()).collect();
        assert_eq!(s, ivec(&[2, 4]));
        let even = vec![ivec(&[2, 0]), ivec(&[0, 2])];
        assert!(lattice_solve(&even, &ivec(&[1, 0])).is_none());
        assert!(lattice_solve(&[ivec(&[1, 1])], &ivec(&[1, 2])).is_none());
    }

    #[test]
    fn rejects_duplicates() {
        assert_eq!(
            SupportSet::from_points(2, &[vec![0, 0], vec![0, 0]]),
            Err(Error::DuplicatePoint { index: 1 })
        );
    }

    /// Index of the lattice generated by `pts` in `Z^2` as the gcd of all 2x2 minors.
    fn minors_index(pts: &[Vec<i64>]) -> Option<i64> {
        let mut g = 0i64;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                g = g.gcd(&(pts[i][0] * pts[j][1] - pts[i][1] * pts[j][0]));
            }
        }
        (g != 0).then_some(g)
    }

    proptest! {
        #[test]
        fn hermite_is_unimodular(rows in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 3), 1..4)) {
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let m = IntMatrix::from_i64(&refs).unwrap();
            let (h, u) = hermite_form(&m).unwrap();
            prop_assert_eq!(u.det().unwrap().abs(), BigInt::one());
            prop_assert_eq!(u.mul(&m).unwrap(), h);
        }

        #[test]
        fn kernel_rank_sum(pts in proptest::collection::hash_set(proptest::collection::vec(-3i64..=3, 2), 1..6)) {
            let pts: Vec<Vec<i64>> = pts.into_iter().collect();
            let a = SupportSet::from_points(2, &pts).unwrap();
            let k = kernel_basis(&a);
            let (rank, _) = lattice_rank_index(&a);
            prop_assert_eq!(k.len() + rank, a.len());
            for u in &k {
                prop_assert!(a.apply(u).unwrap().iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn lift_witness_is_first_axis(pts in proptest::collection::hash_set(proptest::collection::vec(-3i64..=3, 2), 1..6)) {
            let pts: Vec<Vec<i64>> = pts.into_iter().collect();
            let a = lift(&SupportSet::from_points(2, &pts).unwrap());
            prop_assert_eq!(affine_hyperplane_witness(&a), Some((ivec(&[1, 0, 0]), BigInt::one())));
        }

        #[test]
        fn index_matches_minors(pts in proptest::collection::hash_set(proptest::collection::vec(-3i64..=3, 2), 1..5)) {
            let pts: Vec<Vec<i64>> = pts.into_iter().collect();
            let a = SupportSet::from_points(2, &pts).unwrap();
            let (rank, index) = lattice_rank_index(&a);
            let oracle = minors_index(&pts);
            if rank == 2 {
                prop_assert_eq!(Some(i64::try_from(index.unwrap()).unwrap()), oracle);
            } else {
                prop_assert!(index.is_none());
                prop_assert!(oracle.is_none());
            }
        }
    }
}
