//! Torus solutions of two Laurent polynomials in two variables by elimination.
//!
//! The resultant with respect to `y` is computed exactly; its square-free factors are
//! solved numerically in extended precision, each root is lifted to the `y` values it
//! shares with both polynomials, and every solution is polished by Newton's method.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bigfloat::{aberth_roots, horner, BigComplex, BigFloat};
use crate::error::{Error, Result};
use crate::linalg::{self, q, Q};
use crate::sparse::polynomial::{PolySystem, SparsePolynomial};
use crate::sparse::univariate;
use crate::volume::PolynomialQ;

pub const DEFAULT_TOL: f64 = 1e-10;
const START_PREC: u32 = 192;
const MAX_PREC: u32 = 1024;
const MAX_ITER: usize = 800;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorusSolution {
    pub coordinates: Vec<Complex64>,
    /// Real and imaginary parts of each coordinate to 30 significant digits.
    pub coordinates_text: Vec<[String; 2]>,
    pub multiplicity: u32,
    /// Largest modulus of the two polynomials at the returned point.
    pub residual: f64,
    /// Set when several solutions share an `x` coordinate, where the multiplicity split
    /// between them is a heuristic.
    pub shared_fiber: bool,
}

/// Dense coefficients `c[i][j]` of `x^i y^j`.
type Dense = Vec<Vec<Q>>;

fn dense(f: &SparsePolynomial) -> Result<Dense> {
    let f = f.cleared();
    let exps: Vec<(usize, usize)> = f
        .support
        .points
        .iter()
        .map(|p| Some((p[0].to_usize()?, p[1].to_usize()?)))
        .collect::<Option<_>>()
        .ok_or(Error::Overflow)?;
    let dx = exps.iter().map(|e| e.0).max().unwrap_or(0);
    let dy = exps.iter().map(|e| e.1).max().unwrap_or(0);
    let mut c = vec![vec![Q::zero(); dy + 1]; dx + 1];
    for ((i, j), v) in exps.into_iter().zip(&f.coefficients) {
        c[i][j] = v.clone();
    }
    Ok(c)
}

fn deg_x(c: &Dense) -> usize {
    c.len() - 1
}

fn deg_y(c: &Dense) -> usize {
    c[0].len() - 1
}

/// `f(x0, y)` as a polynomial in `y`, constant first, of formal degree `deg_y`.
fn specialize_q(c: &Dense, x0: &Q) -> Vec<Q> {
    (0..=deg_y(c))
        .map(|j| c.iter().rev().fold(Q::zero(), |acc, row| acc * x0 + &row[j]))
        .collect()
}

fn sylvester_det(f: &[Q], g: &[Q]) -> Q {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    if size == 0 {
        return q(1);
    }
    let mut rows = vec![vec![Q::zero(); size]; size];
    for r in 0..n {
        for (j, c) in f.iter().rev().enumerate() {
            rows[r][r + j] = c.clone();
        }
    }
    for r in 0..m {
        for (j, c) in g.iter().rev().enumerate() {
            rows[n + r][r + j] = c.clone();
        }
    }
    linalg::det(&rows)
}

/// The Sylvester resultant with respect to `y`, by evaluation at `x = 0, 1, ...` and
/// interpolation.
fn resultant_y(f: &Dense, g: &Dense) -> PolynomialQ {
    let bound = deg_x(f) * deg_y(g) + deg_x(g) * deg_y(f);
    let values: Vec<Q> = (0..=bound as i64)
        .map(|x| sylvester_det(&specialize_q(f, &q(x)), &specialize_q(g, &q(x))))
        .collect();
    PolynomialQ::interpolate(0, &values)
}

fn to_big(c: &Dense, prec: u32) -> Vec<Vec<BigComplex>> {
    c.iter().map(|row| row.iter().map(|v| BigComplex::from_q(v, prec)).collect()).collect()
}

/// Coefficients in `y` of `f(x0, y)` with, for each, the sum of the moduli of its terms.
fn specialize(c: &[Vec<BigComplex>], x0: &BigComplex) -> Vec<(BigComplex, f64)> {
    let prec = x0.re.prec;
    let ax = x0.abs_f64();
    let ny = c[0].len();
    (0..ny)
        .map(|j| {
            let mut v = BigComplex::zero(prec);
            let mut scale = 0.0;
            for row in c.iter().rev() {
                v = &(&v * x0) + &row[j];
                scale = scale * ax + row[j].abs_f64();
            }
            (v, scale)
        })
        .collect()
}

/// Drops coefficients that vanish to working precision, from the top.
fn trim(coeffs: Vec<(BigComplex, f64)>, prec: u32) -> Vec<BigComplex> {
    let eps = 2f64.powf(-(prec as f64) / 2.0);
    let mut v: Vec<(BigComplex, f64)> = coeffs;
    while v.last().is_some_and(|(c, s)| c.abs_f64() <= eps * s.max(f64::MIN_POSITIVE)) {
        v.pop();
    }
    v.into_iter().map(|(c, _)| c).collect()
}

/// Value and partial derivatives of `sum c[i][j] x^i y^j`.
fn eval2(c: &[Vec<BigComplex>], x: &BigComplex, y: &BigComplex) -> (BigComplex, BigComplex, BigComplex) {
    // p_i(y) and p_i'(y) per row, then Horner in x.
    let rows: Vec<(BigComplex, BigComplex)> = c.iter().map(|row| horner(row, y)).collect();
    let vals: Vec<BigComplex> = rows.iter().map(|r| r.0.clone()).collect();
    let dys: Vec<BigComplex> = rows.iter().map(|r| r.1.clone()).collect();
    let (v, dx) = horner(&vals, x);
    let (dy, _) = horner(&dys, x);
    (v, dx, dy)
}

fn relative_value(coeffs: &[BigComplex], y: &BigComplex) -> f64 {
    let (v, _) = horner(coeffs, y);
    let ay = y.abs_f64();
    let scale = coeffs.iter().rev().fold(0.0, |acc, c| acc * ay + c.abs_f64());
    if scale == 0.0 {
        return 0.0;
    }
    v.abs_f64() / scale
}

fn newton_polish(
    f: &[Vec<BigComplex>],
    g: &[Vec<BigComplex>],
    mut x: BigComplex,
    mut y: BigComplex,
    prec: u32,
) -> (BigComplex, BigComplex) {
    for _ in 0..60 {
        let (fv, fx, fy) = eval2(f, &x, &y);
        let (gv, gx, gy) = eval2(g, &x, &y);
        let det = &(&fx * &gy) - &(&fy * &gx);
        if det.is_zero() {
            break;
        }
        let dx = &(&(&fv * &gy) - &(&fy * &gv)) / &det;
        let dy = &(&(&fx * &gv) - &(&fv * &gx)) / &det;
        let size = x.log2_abs().max(y.log2_abs()).max(0.0);
        let step = dx.log2_abs().max(dy.log2_abs());
        if !step.is_finite() && step < 0.0 {
            break;
        }
        // Stop if the correction is wild; the starting point came from exact elimination.
        if step > size + 1.0 {
            break;
        }
        x = &x - &dx;
        y = &y - &dy;
        if step - size < -(prec as f64) + 8.0 {
            break;
        }
    }
    (x, y)
}

struct Candidate {
    x: BigComplex,
    y: BigComplex,
    multiplicity: u32,
    shared: bool,
}

enum Attempt {
    Done(Vec<Candidate>),
    NeedPrecision,
}

fn attempt(
    f: &Dense,
    g: &Dense,
    factors: &[(PolynomialQ, usize)],
    prec: u32,
) -> Result<Attempt> {
    let fb = to_big(f, prec);
    let gb = to_big(g, prec);
    let mut out = Vec::new();
    let accept = 2f64.powf(-(prec as f64) / 3.0);
    for (s, mult) in factors {
        let coeffs: Vec<BigComplex> = s.coefficients.iter().map(|c| BigComplex::from_q(c, prec)).collect();
        let Some(xs) = aberth_roots(&coeffs, prec, MAX_ITER) else {
            return Ok(Attempt::NeedPrecision);
        };
        for x0 in xs {
            let fy = trim(specialize(&fb, &x0), prec);
            let gy = trim(specialize(&gb, &x0), prec);
            let (primary, other) = match (fy.is_empty(), gy.is_empty()) {
                (true, true) => return Err(Error::NonIsolated),
                (true, false) => (gy, None),
                (false, true) => (fy, None),
                (false, false) => {
                    if fy.len() <= gy.len() {
                        (fy, Some(gy))
                    } else {
                        (gy, Some(fy))
                    }
                }
            };
            if primary.len() < 2 {
                continue;
            }
            let Some(ys) = aberth_roots(&primary, prec, MAX_ITER) else {
                return Ok(Attempt::NeedPrecision);
            };
            let mut fiber: Vec<BigComplex> = Vec::new();
            for y in ys {
                if let Some(o) = &other {
                    if relative_value(o, &y) > accept {
                        continue;
                    }
                }
                let close = fiber.iter().any(|z| {
                    let d = (z - &y).abs_f64();
                    d <= accept.sqrt() * y.abs_f64().max(1.0)
                });
                if !close {
                    fiber.push(y);
                }
            }
            let k = fiber.len() as u32;
            for y in fiber {
                let (x, y) = newton_polish(&fb, &gb, x0.clone(), y, prec);
                out.push(Candidate { x, y, multiplicity: (*mult as u32 / k).max(1), shared: k > 1 });
            }
        }
    }
    Ok(Attempt::Done(out))
}

/// All isolated solutions in `(C*)^2` of a system of two Laurent polynomials in two
/// variables, sorted by the real and then imaginary parts of the coordinates.
pub fn solve_bivariate(system: &PolySystem, tol: f64) -> Result<Vec<TorusSolution>> {
    if system.nvars() != 2 || system.polynomials.len() != 2 {
        return Err(Error::WrongCount { expected: 2, found: system.polynomials.len() });
    }
    if system.polynomials.iter().any(|p| p.is_zero()) {
        return Err(Error::ZeroPolynomial);
    }
    let f = dense(&system.polynomials[0])?;
    let g = dense(&system.polynomials[1])?;
    if deg_y(&f) == 0 && deg_y(&g) == 0 {
        let pf = PolynomialQ::new(f.iter().map(|r| r[0].clone()).collect());
        let pg = PolynomialQ::new(g.iter().map(|r| r[0].clone()).collect());
        let (common, _) = univariate::strip_zero_roots(&univariate::gcd(&pf, &pg));
        if common.degree().is_some_and(|d| d > 0) {
            return Err(Error::NonIsolated);
        }
        return Ok(Vec::new());
    }
    let res = resultant_y(&f, &g);
    if res.degree().is_none() {
        return Err(Error::NonIsolated);
    }
    let (res, _) = univariate::strip_zero_roots(&res);
    let factors = univariate::squarefree_decomposition(&res);
    let mut prec = START_PREC;
    let candidates = loop {
        match attempt(&f, &g, &factors, prec)? {
            Attempt::Done(c) => break c,
            Attempt::NeedPrecision if prec < MAX_PREC => prec *= 2,
            Attempt::NeedPrecision => {
                return Err(Error::Numerical("root finding did not converge".into()));
            }
        }
    };
    // Residuals are measured on the original Laurent polynomials.
    let fl = to_big(&f, prec);
    let gl = to_big(&g, prec);
    let shift_f = system.polynomials[0].min_exponent();
    let shift_g = system.polynomials[1].min_exponent();
    let mut out = Vec::new();
    for mut c in candidates {
        snap_to_axes(&mut c.x, prec);
        snap_to_axes(&mut c.y, prec);
        let xv = c.x.to_c64();
        let yv = c.y.to_c64();
        if xv.norm() < tol || yv.norm() < tol {
            continue;
        }
        let r = laurent_residual(&fl, &gl, &c.x, &c.y, &shift_f, &shift_g);
        if !(r < tol) {
            continue;
        }
        out.push(TorusSolution {
            coordinates: vec![xv, yv],
            coordinates_text: [&c.x, &c.y].iter().map(|z| [z.re.to_decimal(30), z.im.to_decimal(30)]).collect(),
            multiplicity: c.multiplicity,
            residual: r,
            shared_fiber: c.shared,
        });
    }
    out.sort_by(|a, b| {
        let key = |s: &TorusSolution| [s.coordinates[0].re, s.coordinates[0].im, s.coordinates[1].re, s.coordinates[1].im];
        key(a).partial_cmp(&key(b)).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(out)
}

/// Zeroes a real or imaginary part below half the working precision relative to `|z|`.
fn snap_to_axes(z: &mut BigComplex, prec: u32) {
    let cutoff = z.log2_abs() - f64::from(prec / 2);
    for part in [&mut z.re, &mut z.im] {
        if !part.is_zero() && part.log2_abs() < cutoff {
            *part = BigFloat::zero(prec);
        }
    }
}

/// Residual of the original system: the cleared polynomials times `x^-a y^-b`.
fn laurent_residual(
    f: &[Vec<BigComplex>],
    g: &[Vec<BigComplex>],
    x: &BigComplex,
    y: &BigComplex,
    sf: &[num_bigint::BigInt],
    sg: &[num_bigint::BigInt],
) -> f64 {
    let mono = |s: &[num_bigint::BigInt]| -> f64 {
        let a = s[0].to_f64().unwrap_or(0.0);
        let b = s[1].to_f64().unwrap_or(0.0);
        x.abs_f64().powf(a) * y.abs_f64().powf(b)
    };
    let fv = eval2(f, x, y).0.abs_f64() * mono(sf);
    let gv = eval2(g, x, y).0.abs_f64() * mono(sg);
    fv.max(gv)
}

/// Total number of solutions counted with multiplicity.
pub fn count_with_multiplicity(solutions: &[TorusSolution]) -> u64 {
    solutions.iter().map(|s| s.multiplicity as u64).sum()
}
