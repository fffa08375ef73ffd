//! Binomials `z^{u+} - z^{u-}` and their relation to the point configuration.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{IntVector, SupportSet};
use crate::linalg::{self, Q};

/// The binomial `z^{u+} - z^{u-}` for an integer vector `u`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Binomial {
    pub u: IntVector,
}

impl Binomial {
    pub fn new(u: IntVector) -> Self {
        Binomial { u }
    }

    /// `z^a - z^b` for nonnegative exponent vectors; common factors cancel in `u = a - b`.
    pub fn from_parts(a: &[BigInt], b: &[BigInt]) -> Self {
        Binomial { u: a.iter().zip(b).map(|(x, y)| x - y).collect() }
    }

    pub fn plus(&self) -> IntVector {
        self.u.iter().map(|x| if x.is_positive() { x.clone() } else { BigInt::zero() }).collect()
    }

    pub fn minus(&self) -> IntVector {
        self.u.iter().map(|x| if x.is_negative() { -x } else { BigInt::zero() }).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.u.iter().all(|x| x.is_zero())
    }

    /// Render with variable names, e.g. `z1^2 - z0*z2`.
    pub fn format_with(&self, names: &[String]) -> String {
        let mono = |e: &IntVector| -> String {
            let parts: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| !k.is_zero())
                .map(|(i, k)| if k == &BigInt::from(1) { names[i].clone() } else { format!("{}^{k}", names[i]) })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        };
        if self.is_zero() {
            return "0".into();
        }
        format!("{} - {}", mono(&self.plus()), mono(&self.minus()))
    }
}

fn check_nonneg(v: &[BigInt]) -> Result<()> {
    match v.iter().position(|x| x.is_negative()) {
        Some(index) => Err(Error::NegativeEntry { index }),
        None => Ok(()),
    }
}

/// Whether `z^u - z^v` lies in the toric ideal, that is `A u = A v`.
pub fn binomial_membership(u: &[BigInt], v: &[BigInt], a: &SupportSet) -> Result<bool> {
    check_nonneg(u)?;
    check_nonneg(v)?;
    Ok(a.apply(u)? == a.apply(v)?)
}

/// Split `u = r + w+` and `v = r + w-` with `r = min(u, v)` and disjointly supported `w+-`.
pub fn factor_primitive(u: &[BigInt], v: &[BigInt]) -> Result<(IntVector, IntVector, IntVector)> {
    check_nonneg(u)?;
    check_nonneg(v)?;
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch { expected: u.len(), found: v.len() });
    }
    let r: IntVector = u.iter().zip(v).map(|(x, y)| x.min(y).clone()).collect();
    let wp = u.iter().zip(&r).map(|(x, y)| x - y).collect();
    let wm = v.iter().zip(&r).map(|(x, y)| x - y).collect();
    Ok((r, wp, wm))
}

/// Whether the points lie on an affine hyperplane missing the origin.
pub fn is_homogeneous(a: &SupportSet) -> bool {
    crate::lattice::affine_hyperplane_witness(a).is_some()
}

/// A point lying in the convex hulls of the supports of both sides of a homogeneous binomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoincidentCombination {
    pub point: Vec<Q>,
    /// Weights `u_a / d` on the support of `u`, as `(index, weight)`.
    pub lambda: Vec<(usize, Q)>,
    /// Weights `v_a / d` on the support of `v`.
    pub mu: Vec<(usize, Q)>,
}

pub fn coincident_combination(u: &[BigInt], v: &[BigInt], a: &SupportSet) -> Result<CoincidentCombination> {
    if !is_homogeneous(a) {
        return Err(Error::Inhomogeneous);
    }
    if !binomial_membership(u, v, a)? {
        return Err(Error::NotInIdeal);
    }
    let d: BigInt = u.iter().sum();
    if d.is_zero() {
        return Err(Error::InvalidInput("zero binomial has no convex combination".into()));
    }
    let dq = linalg::qi(&d);
    let weights = |e: &[BigInt]| -> Vec<(usize, Q)> {
        e.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, linalg::qi(x) / &dq))
            .collect()
    };
    let lambda = weights(u);
    let mu = weights(v);
    let point = (0..a.ambient_dim)
        .map(|j| lambda.iter().fold(Q::zero(), |s, (i, l)| s + l * linalg::qi(&a.points[*i][j])))
        .collect();
    Ok(CoincidentCombination { point, lambda, mu })
}

/// Nonnegative exponent vector as machine integers.
pub(crate) fn to_u32(v: &[BigInt]) -> Result<Vec<u32>> {
    v.iter().map(|x| x.to_u32().ok_or(Error::Overflow)).collect()
}
