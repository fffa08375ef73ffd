//! The monomial map `x -> (x^a : a in A)` and the moment map onto `conv(A)`.

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::SupportSet;
use crate::linalg::Q;

fn exponents(a: &SupportSet, nvars: usize) -> Result<Vec<Vec<i32>>> {
    if nvars != a.ambient_dim {
        return Err(Error::DimensionMismatch { expected: a.ambient_dim, found: nvars });
    }
    a.points
        .iter()
        .map(|p| p.iter().map(|e| e.to_i32().ok_or(Error::Overflow)).collect())
        .collect()
}

/// `(x^a : a in A)` over the rationals.
pub fn monomial_map_eval(a: &SupportSet, x: &[Q]) -> Result<Vec<Q>> {
    let exps = exponents(a, x.len())?;
    exps.iter()
        .map(|e| {
            e.iter().zip(x).try_fold(Q::from_integer(1.into()), |acc, (&k, xi)| {
                if k < 0 && xi.is_zero() {
                    return Err(Error::InvalidInput("zero base with negative exponent".into()));
                }
                Ok(acc * num_traits::pow::Pow::pow(xi, k))
            })
        })
        .collect()
}

/// `(x^a : a in A)` over the complex numbers.
pub fn monomial_map_eval_complex(a: &SupportSet, x: &[Complex64]) -> Result<Vec<Complex64>> {
    let exps = exponents(a, x.len())?;
    exps.iter()
        .map(|e| {
            e.iter().zip(x).try_fold(Complex64::new(1.0, 0.0), |acc, (&k, xi)| {
                if k < 0 && xi.norm() == 0.0 {
                    return Err(Error::InvalidInput("zero base with negative exponent".into()));
                }
                Ok(acc * xi.powi(k))
            })
        })
        .collect()
}

/// `sum |z_a| a / sum |z_a|` for rational homogeneous coordinates `z` indexed by `A`.
pub fn moment_map_eval(a: &SupportSet, z: &[Q]) -> Result<Vec<Q>> {
    if z.len() != a.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: z.len() });
    }
    let total: Q = z.iter().map(|c| c.abs()).sum();
    if total.is_zero() {
        return Err(Error::InvalidInput("moment map of the zero vector".into()));
    }
    Ok((0..a.ambient_dim)
        .map(|k| {
            a.points
                .iter()
                .zip(z)
                .map(|(p, c)| Q::from_integer(p[k].clone()) * c.abs())
                .sum::<Q>()
                / &total
        })
        .collect())
}

/// The moment map for complex coordinates.
pub fn moment_map_eval_complex(a: &SupportSet, z: &[Complex64]) -> Result<Vec<f64>> {
    if z.len() != a.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: z.len() });
    }
    let total: f64 = z.iter().map(|c| c.norm()).sum();
    if total == 0.0 {
        return Err(Error::InvalidInput("moment map of the zero vector".into()));
    }
    Ok((0..a.ambient_dim)
        .map(|k| {
            a.points
                .iter()
                .zip(z)
                .map(|(p, c)| p[k].to_f64().unwrap_or(f64::NAN) * c.norm())
                .sum::<f64>()
                / total
        })
        .collect())
}
