//! Hilbert functions of projective toric varieties and the semigroup gap data
//! comparing `N A+` with its saturation.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{self, IntVector, SupportSet};
use crate::linalg::{self, q, Q};
use crate::lp::{self, LpResult};
use crate::volume::PolynomialQ;

fn small_points(a: &SupportSet) -> Result<Vec<Vec<i64>>> {
    a.points
        .iter()
        .map(|p| p.iter().map(|x| x.to_i64().ok_or(Error::Overflow)).collect())
        .collect()
}

/// Sizes `|dA|` of the iterated sumsets for `d = 0..=max_d`.
pub fn sumset_sizes(a: &SupportSet, max_d: usize) -> Result<Vec<usize>> {
    let pts = small_points(a)?;
    let mut sizes = vec![1];
    let mut cur: HashSet<Vec<i64>> = HashSet::from([vec![0; a.ambient_dim]]);
    for _ in 0..max_d {
        let mut next = HashSet::with_capacity(cur.len() * 2);
        for x in &cur {
            for p in &pts {
                let s: Option<Vec<i64>> = x.iter().zip(p).map(|(u, v)| u.checked_add(*v)).collect();
                next.insert(s.ok_or(Error::Overflow)?);
            }
        }
        cur = next;
        sizes.push(cur.len());
    }
    Ok(sizes)
}

/// `HF(d) = |dA|`, the number of distinct sums of `d` points of `A`.
pub fn hilbert_function(a: &SupportSet, d: usize) -> Result<BigInt> {
    Ok(BigInt::from(sumset_sizes(a, d)?[d]))
}

/// The polynomial agreeing with the Hilbert function for all large `d`.
pub fn hilbert_polynomial(a: &SupportSet) -> Result<PolynomialQ> {
    if a.is_empty() {
        return Ok(PolynomialQ::new(Vec::new()));
    }
    let lifted = lattice::lift(a);
    let (rank, _) = lattice::lattice_rank_index(&lifted);
    let r = rank - 1;
    let gap = semigroup_gap_data(a)?;
    let nu = gap.nu.to_usize().ok_or(Error::Overflow)?;
    let cap = nu * a.len() + r + 5;
    let limit = cap + 50;
    let mut values = sumset_sizes(a, cap.max(r + 4))?;
    for d0 in 0..=limit {
        let check_to = (d0 + r + 3).max(cap);
        if values.len() <= check_to {
            values = sumset_sizes(a, check_to)?;
        }
        let window: Vec<Q> = values[d0..=d0 + r].iter().map(|&v| q(v as i64)).collect();
        let p = PolynomialQ::interpolate(d0 as i64, &window);
        if (d0 + r + 1..=check_to).all(|d| p.eval(&q(d as i64)) == q(values[d] as i64)) {
            return Ok(p);
        }
    }
    Err(Error::Unsupported(format!("Hilbert function not polynomial by degree {limit}")))
}

/// The finite data controlling the gap between `N A+` and the saturated semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapData {
    /// Points of the lattice `Z A+` in the half-open zonotope `sum [0,1) (1,a)`, sorted.
    pub b_set: Vec<IntVector>,
    /// For each element of `b_set`, a fixed integer expression in terms of `A+`.
    pub beta: Vec<IntVector>,
    pub nu: BigInt,
    /// `nu * sum (1,a)`.
    pub v: IntVector,
    /// `sum nu_a (1,a)` with `nu_a` the largest negative coefficient of `(1,a)` in any `beta`.
    pub v_prime: IntVector,
}

/// Whether `x = sum l_j p_j` for some `l` in `[0,1)^N`, by maximizing the slack `t`
/// in `l_j + t <= 1`.
fn in_half_open_zonotope(pts: &[IntVector], x: &[BigInt]) -> bool {
    let n = pts.len();
    let m = x.len();
    // variables: l_0..l_{n-1}, t, s_0..s_{n-1}
    let nv = 2 * n + 1;
    let mut rows = Vec::with_capacity(m + n);
    let mut rhs = Vec::with_capacity(m + n);
    for k in 0..m {
        let mut r = vec![Q::zero(); nv];
        for (j, p) in pts.iter().enumerate() {
            r[j] = linalg::qi(&p[k]);
        }
        rows.push(r);
        rhs.push(linalg::qi(&x[k]));
    }
    for j in 0..n {
        let mut r = vec![Q::zero(); nv];
        r[j] = Q::one();
        r[n] = Q::one();
        r[n + 1 + j] = Q::one();
        rows.push(r);
        rhs.push(Q::one());
    }
    let mut c = vec![Q::zero(); nv];
    c[n] = Q::one();
    match lp::maximize(&rows, &rhs, &c) {
        LpResult::Optimal { value, .. } => value.is_positive(),
        _ => false,
    }
}

/// Hull of the subset sums, when there are few enough generators to enumerate them.
fn closed_zonotope(pts: &[IntVector]) -> Option<crate::polytope::Polytope> {
    if pts.len() > 12 {
        return None;
    }
    let m = pts.first()?.len();
    let sums: Vec<Vec<Q>> = (0u32..1 << pts.len())
        .map(|mask| {
            let mut v = vec![Q::zero(); m];
            for (j, p) in pts.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    for (a, b) in v.iter_mut().zip(p) {
                        *a += linalg::qi(b);
                    }
                }
            }
            v
        })
        .collect();
    crate::polytope::convex_hull(&sums).ok()
}

fn linf(v: &[BigInt]) -> BigInt {
    linalg::abs_max(v)
}

/// Integer solution of `sum u_j p_j = b` with the smallest largest entry. Ties prefer the
/// largest minimum entry, then the lexicographically largest vector.
fn minimal_expression(pts: &[IntVector], kernel: &[IntVector], b: &[BigInt]) -> Option<IntVector> {
    let p = lattice::lattice_solve(pts, b)?;
    let k = kernel.len();
    if k == 0 {
        return Some(p);
    }
    let n = pts.len();
    // M has the kernel vectors as columns; choose k independent rows.
    let m_rows: Vec<Vec<Q>> = (0..n).map(|i| kernel.iter().map(|v| linalg::qi(&v[i])).collect()).collect();
    let idx = linalg::independent_rows(&m_rows);
    let sub: Vec<Vec<Q>> = idx.iter().map(|&i| m_rows[i].clone()).collect();
    let inv = linalg::inverse(&sub).expect("independent rows");
    let combine = |z: &[BigInt]| -> IntVector {
        let mut u = p.clone();
        for (c, v) in z.iter().zip(kernel) {
            for (x, y) in u.iter_mut().zip(v) {
                *x += c * y;
            }
        }
        u
    };
    // Start from the rounded solution cancelling the chosen coordinates of p.
    let z0: Vec<BigInt> = (0..k)
        .map(|j| {
            idx.iter()
                .enumerate()
                .fold(Q::zero(), |s, (t, &i)| s - &inv[j][t] * linalg::qi(&p[i]))
                .round()
                .to_integer()
        })
        .collect();
    let start = combine(&z0);
    let r = linalg::qi(&linf(&start));
    // |z_j| <= sum_t |inv[j][t]| (R + |p_i|) for any solution with entries bounded by R.
    let bounds: Vec<BigInt> = (0..k)
        .map(|j| {
            idx.iter()
                .enumerate()
                .fold(Q::zero(), |s, (t, &i)| s + inv[j][t].abs() * (&r + linalg::qi(&p[i].abs())))
                .floor()
                .to_integer()
        })
        .collect();
    let key = |u: &IntVector| (linf(u), -u.iter().min().cloned().unwrap_or_default());
    let mut best = start;
    let mut z: Vec<BigInt> = bounds.iter().map(|b| -b).collect();
    loop {
        let u = combine(&z);
        let (ku, kb) = (key(&u), key(&best));
        if ku < kb || (ku == kb && u > best) {
            best = u;
        }
        let mut j = 0;
        while j < k {
            z[j] += 1;
            if z[j] <= bounds[j] {
                break;
            }
            z[j] = -bounds[j].clone();
            j += 1;
        }
        if j == k {
            return Some(best);
        }
    }
}

pub fn semigroup_gap_data(a: &SupportSet) -> Result<GapData> {
    if a.is_empty() {
        return Err(Error::InvalidInput("empty point configuration".into()));
    }
    let lifted = lattice::lift(a);
    let pts = &lifted.points;
    let m = lifted.ambient_dim;
    let lo: Vec<i64> = (0..m)
        .map(|k| pts.iter().map(|p| p[k].clone().min(BigInt::zero())).sum::<BigInt>().to_i64())
        .collect::<Option<_>>()
        .ok_or(Error::Overflow)?;
    let hi: Vec<i64> = (0..m)
        .map(|k| pts.iter().map(|p| p[k].clone().max(BigInt::zero())).sum::<BigInt>().to_i64())
        .collect::<Option<_>>()
        .ok_or(Error::Overflow)?;
    let kernel = lattice::kernel_basis(&lifted);
    let (h, _, rank) = lattice::hermite_rows(pts, m);
    let in_lattice = |x: &[BigInt]| {
        let mut residual = x.to_vec();
        for row in h.iter().take(rank) {
            let p = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
            let (c, rem) = residual[p].div_rem(&row[p]);
            if !rem.is_zero() {
                return false;
            }
            for (r, x) in residual.iter_mut().zip(row) {
                *r -= &c * x;
            }
        }
        residual.iter().all(Zero::is_zero)
    };
    let zonotope = closed_zonotope(pts);
    let in_zonotope = |x: &[BigInt]| match &zonotope {
        Some(z) => {
            let xq = linalg::to_q(x);
            let mut boundary = false;
            for f in &z.facets {
                match linalg::dot_iq(&f.normal, &xq).cmp(&f.offset) {
                    std::cmp::Ordering::Greater => return false,
                    std::cmp::Ordering::Equal => boundary = true,
                    std::cmp::Ordering::Less => {}
                }
            }
            // Relative interior points of a zonotope have representations with all
            // coefficients in (0,1).
            !boundary || in_half_open_zonotope(pts, x)
        }
        None => in_half_open_zonotope(pts, x),
    };
    let mut b_set = Vec::new();
    let mut x = lo.clone();
    loop {
        let xb: IntVector = x.iter().map(|&v| BigInt::from(v)).collect();
        if in_lattice(&xb) && in_zonotope(&xb) {
            b_set.push(xb);
        }
        let mut k = 0;
        while k < m {
            x[k] += 1;
            if x[k] <= hi[k] {
                break;
            }
            x[k] = lo[k];
            k += 1;
        }
        if k == m {
            break;
        }
    }
    b_set.sort();
    let beta: Vec<IntVector> = b_set
        .iter()
        .map(|b| minimal_expression(pts, &kernel, b).expect("point lies in the lattice"))
        .collect();
    let nu_a: Vec<BigInt> = (0..pts.len())
        .map(|j| beta.iter().map(|e| -&e[j]).max().unwrap_or_default().max(BigInt::zero()))
        .collect();
    let nu = nu_a.iter().max().cloned().unwrap_or_default();
    let total: IntVector = (0..m).map(|k| pts.iter().map(|p| &p[k]).sum()).collect();
    let v = total.iter().map(|t| t * &nu).collect();
    let v_prime = (0..m)
        .map(|k| pts.iter().zip(&nu_a).map(|(p, c)| &p[k] * c).sum())
        .collect();
    Ok(GapData { b_set, beta, nu, v, v_prime })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ivec;
    use crate::polytope;
    use crate::volume;

    fn cusp() -> SupportSet {
        SupportSet::from_points(1, &[vec![0], vec![2], vec![3]]).unwrap()
    }

    #[test]
    fn cuspidal_hilbert_function() {
        let hf: Vec<usize> = sumset_sizes(&cusp(), 4).unwrap();
        assert_eq!(hf, vec![1, 3, 6, 9, 12]);
        assert_eq!(hilbert_function(&cusp(), 3).unwrap(), BigInt::from(9));
        assert_eq!(hilbert_polynomial(&cusp()).unwrap(), PolynomialQ::new(vec![q(0), q(3)]));
    }

    #[test]
    fn simple_hilbert_polynomials() {
        let seg = SupportSet::from_points(1, &[vec![0], vec![1]]).unwrap();
        assert_eq!(hilbert_polynomial(&seg).unwrap(), PolynomialQ::new(vec![q(1), q(1)]));
        let tc = SupportSet::from_columns(&[vec![3, 2, 1, 0], vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(sumset_sizes(&tc, 4).unwrap(), vec![1, 4, 7, 10, 13]);
        assert_eq!(hilbert_polynomial(&tc).unwrap(), PolynomialQ::new(vec![q(1), q(3)]));
    }

    #[test]
    fn cuspidal_gap_data() {
        let g = semigroup_gap_data(&cusp()).unwrap();
        let want: Vec<IntVector> = [[0, 0], [1, 1], [1, 2], [2, 3], [2, 4]].iter().map(|p| ivec(p)).collect();
        assert_eq!(g.b_set, want);
        assert_eq!(g.beta[1], ivec(&[1, -1, 1]));
        assert_eq!(g.beta[4], ivec(&[0, 2, 0]));
        assert_eq!(g.nu, BigInt::one());
        assert_eq!(g.v, ivec(&[3, 5]));
        assert_eq!(g.v_prime, ivec(&[1, 2]));
    }

    #[test]
    fn saturated_gap_data() {
        let seg = SupportSet::from_points(1, &[vec![0], vec![1]]).unwrap();
        let g = semigroup_gap_data(&seg).unwrap();
        assert_eq!(g.b_set, vec![ivec(&[0, 0])]);
        assert_eq!(g.nu, BigInt::zero());
        assert_eq!(g.v, ivec(&[0, 0]));
        assert_eq!(g.v_prime, ivec(&[0, 0]));
        let even = SupportSet::from_points(1, &[vec![0], vec![2]]).unwrap();
        let g = semigroup_gap_data(&even).unwrap();
        assert_eq!(g.b_set, vec![ivec(&[0, 0])]);
        assert_eq!(g.nu, BigInt::zero());
    }

    /// Whether `x` (lifted, level first) lies in `N A+`: its tail must be a sum of `level` points.
    fn in_semigroup(sums: &[HashSet<Vec<i64>>], x: &[i64]) -> bool {
        x[0] >= 0 && sums[x[0] as usize].contains(&x[1..].to_vec())
    }

    fn sumsets(a: &SupportSet, max_d: usize) -> Vec<HashSet<Vec<i64>>> {
        let pts = small_points(a).unwrap();
        let mut out = vec![HashSet::from([vec![0; a.ambient_dim]])];
        for _ in 0..max_d {
            let mut next = HashSet::new();
            for x in out.last().unwrap() {
                for p in &pts {
                    next.insert(x.iter().zip(p).map(|(u, v)| u + v).collect::<Vec<i64>>());
                }
            }
            out.push(next);
        }
        out
    }

    #[test]
    fn shifted_saturation_lies_in_semigroup() {
        for pts in [vec![vec![0], vec![2], vec![3]], vec![vec![0], vec![3], vec![5]], vec![vec![0], vec![1], vec![4]]] {
            let a = SupportSet::from_points(1, &pts).unwrap();
            let g = semigroup_gap_data(&a).unwrap();
            let vp: Vec<i64> = g.v_prime.iter().map(|x| x.to_i64().unwrap()).collect();
            let top = g.nu.to_usize().unwrap() * a.len() + 3;
            let sums = sumsets(&a, top + vp[0] as usize);
            let lifted = lattice::lift(&a);
            let p = polytope::convex_hull_support(&a).unwrap();
            for level in 0..=top as i64 {
                let dp = polytope::scale(&p, &q(level)).unwrap();
                let lo = dp.vertices[0][0].to_integer().to_i64().unwrap();
                let hi = dp.vertices.last().unwrap()[0].to_integer().to_i64().unwrap();
                for t in lo..=hi {
                    let s = ivec(&[level, t]);
                    if lattice::lattice_solve(&lifted.points, &s).is_none() {
                        continue;
                    }
                    let shifted = [vp[0] + level, vp[1] + t];
                    assert!(in_semigroup(&sums, &shifted), "{pts:?}: v' + {s:?}");
                }
            }
        }
    }

    #[test]
    fn hilbert_function_bounded_by_ehrhart() {
        let a = SupportSet::from_points(2, &[vec![0, 0], vec![2, 1], vec![1, 3], vec![3, 3]]).unwrap();
        let p = polytope::convex_hull_support(&a).unwrap();
        let hf = sumset_sizes(&a, 5).unwrap();
        for (d, v) in hf.iter().enumerate() {
            let dp = polytope::scale(&p, &q(d as i64)).unwrap();
            assert!(BigInt::from(*v) <= volume::count_lattice_points(&dp));
        }
    }
}
