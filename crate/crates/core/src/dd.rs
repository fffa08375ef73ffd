//! Double description: facets of a cone spanned by integer generators.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::lattice::IntVector;
use crate::linalg::{self, Q};

/// Facet description of `cone(gens)`.
///
/// The cone equals `{x : e.x = 0 for e in equations, f.x >= 0 for f in facets}`.
/// Facet normals are primitive and lie in the linear span of the generators, which makes
/// them unique; equations are a canonical integer basis of the orthogonal complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeFacets {
    pub facets: Vec<IntVector>,
    pub equations: Vec<IntVector>,
}

pub fn cone_facets(gens: &[IntVector], m: usize) -> ConeFacets {
    let gens: Vec<&IntVector> = gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).collect();
    let qrows: Vec<Vec<Q>> = gens.iter().map(|g| linalg::to_q(g)).collect();
    let perp: Vec<IntVector> = linalg::nullspace(&qrows, m)
        .iter()
        .map(|v| linalg::clear_denominators(v))
        .collect();
    let equations = crate::lattice::lattice_basis(&perp, m);
    let basis_idx = linalg::independent_rows(&qrows);
    let k = basis_idx.len();
    if k == 0 {
        return ConeFacets { facets: Vec::new(), equations };
    }
    let basis: Vec<&IntVector> = basis_idx.iter().map(|&i| gens[i]).collect();
    // Constraint rows in the coordinates z of y = sum z_j b_j.
    let rows: Vec<IntVector> = gens
        .iter()
        .map(|g| basis.iter().map(|b| linalg::dot_int(b, g)).collect())
        .collect();
    let rays = extreme_rays(&rows, k);
    let mut facets: Vec<IntVector> = rays
        .iter()
        .map(|z| {
            let mut y = vec![BigInt::zero(); m];
            for (zj, b) in z.iter().zip(&basis) {
                for (yi, bi) in y.iter_mut().zip(b.iter()) {
                    *yi += zj * bi;
                }
            }
            linalg::primitive(&y)
        })
        .collect();
    facets.sort();
    facets.dedup();
    ConeFacets { facets, equations }
}

/// Extreme rays of the pointed cone `{z in R^k : r.z >= 0 for every row r}`.
///
/// The rows must have rank `k`.
pub fn extreme_rays(rows: &[IntVector], k: usize) -> Vec<IntVector> {
    let qrows: Vec<Vec<Q>> = rows.iter().map(|r| linalg::to_q(r)).collect();
    let init = linalg::independent_rows(&qrows);
    assert_eq!(init.len(), k, "constraint matrix must have full column rank");
    let sub: Vec<Vec<Q>> = init.iter().map(|&i| qrows[i].clone()).collect();
    let inv = linalg::inverse(&sub).expect("independent rows");
    let nrows = rows.len();
    let mut order: Vec<usize> = init.clone();
    order.extend((0..nrows).filter(|i| !init.contains(i)));

    struct Ray {
        v: IntVector,
        zeros: FixedBitSet,
    }
    let mut rays: Vec<Ray> = (0..k)
        .map(|j| {
            let col: Vec<Q> = (0..k).map(|i| inv[i][j].clone()).collect();
            let v = linalg::clear_denominators(&col);
            let mut zeros = FixedBitSet::with_capacity(nrows);
            for (pos, &r) in order.iter().take(k).enumerate() {
                if linalg::dot_int(&rows[r], &v).is_zero() {
                    zeros.insert(pos);
                }
            }
            Ray { v, zeros }
        })
        .collect();

    for (pos, &ri) in order.iter().enumerate().skip(k) {
        let row = &rows[ri];
        let vals: Vec<BigInt> = rays.iter().map(|r| linalg::dot_int(row, &r.v)).collect();
        let pos_idx: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg_idx: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg_idx.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zeros.insert(pos);
                }
            }
            continue;
        }
        let mut new_rays = Vec::new();
        for &p in &pos_idx {
            for &n in &neg_idx {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[n].zeros);
                if common.count_ones(..) + 2 < k {
                    continue;
                }
                // Adjacent iff no third ray is tight on every common constraint.
                let adjacent = (0..rays.len())
                    .all(|t| t == p || t == n || !common.is_subset(&rays[t].zeros));
                if !adjacent {
                    continue;
                }
                let v: IntVector = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(xn, xp)| &vals[p] * xn - &vals[n] * xp)
                    .collect();
                let v = linalg::primitive(&v);
                let mut zeros = common;
                zeros.insert(pos);
                new_rays.push(Ray { v, zeros });
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            if vals[i].is_zero() {
                r.zeros.insert(pos);
            }
            kept.push(r);
        }
        kept.extend(new_rays);
        rays = kept;
    }
    let mut out: Vec<IntVector> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    out
}

/// True when `x` is a nonnegative combination of the generators.
pub fn in_cone(f: &ConeFacets, x: &[BigInt]) -> bool {
    f.equations.iter().all(|e| linalg::dot_int(e, x).is_zero())
        && f.facets.iter().all(|a| !linalg::dot_int(a, x).is_negative())
}
