//! Arithmetic on univariate rational polynomials: division, gcd and square-free parts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::linalg::Q;
use crate::volume::PolynomialQ;

pub fn add(a: &PolynomialQ, b: &PolynomialQ) -> PolynomialQ {
    let n = a.coefficients.len().max(b.coefficients.len());
    let z = Q::zero();
    PolynomialQ::new(
        (0..n)
            .map(|i| a.coefficients.get(i).unwrap_or(&z) + b.coefficients.get(i).unwrap_or(&z))
            .collect(),
    )
}

pub fn scale(a: &PolynomialQ, c: &Q) -> PolynomialQ {
    PolynomialQ::new(a.coefficients.iter().map(|x| x * c).collect())
}

pub fn sub(a: &PolynomialQ, b: &PolynomialQ) -> PolynomialQ {
    add(a, &scale(b, &-Q::one()))
}

pub fn mul(a: &PolynomialQ, b: &PolynomialQ) -> PolynomialQ {
    if a.coefficients.is_empty() || b.coefficients.is_empty() {
        return PolynomialQ::new(Vec::new());
    }
    let mut out = vec![Q::zero(); a.coefficients.len() + b.coefficients.len() - 1];
    for (i, x) in a.coefficients.iter().enumerate() {
        for (j, y) in b.coefficients.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    PolynomialQ::new(out)
}

pub fn derivative(a: &PolynomialQ) -> PolynomialQ {
    PolynomialQ::new(
        a.coefficients
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Q::from_integer((i as i64).into()))
            .collect(),
    )
}

/// Quotient and remainder. Panics on division by zero.
pub fn div_rem(a: &PolynomialQ, b: &PolynomialQ) -> (PolynomialQ, PolynomialQ) {
    let db = b.degree().expect("division by the zero polynomial");
    let lead = b.leading_coefficient();
    let mut r = a.coefficients.clone();
    let Some(da) = a.degree() else {
        return (PolynomialQ::new(Vec::new()), PolynomialQ::new(Vec::new()));
    };
    if da < db {
        return (PolynomialQ::new(Vec::new()), a.clone());
    }
    let mut q = vec![Q::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = &r[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.coefficients.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    r.truncate(db);
    (PolynomialQ::new(q), PolynomialQ::new(r))
}

pub fn monic(a: &PolynomialQ) -> PolynomialQ {
    if a.coefficients.is_empty() {
        return a.clone();
    }
    scale(a, &a.leading_coefficient().recip())
}

/// Monic greatest common divisor; zero when both inputs are zero. Runs a primitive
/// pseudo-remainder sequence over the integers to keep coefficients small.
pub fn gcd(a: &PolynomialQ, b: &PolynomialQ) -> PolynomialQ {
    let (mut x, mut y) = (primitive(a), primitive(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = primitive_int(pseudo_rem(&x, &y));
        x = y;
        y = r;
    }
    monic(&PolynomialQ::new(x.into_iter().map(Q::from_integer).collect()))
}

/// Integer primitive part of a rational polynomial, trailing zeros removed.
fn primitive(a: &PolynomialQ) -> Vec<BigInt> {
    let den = a.coefficients.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let mut v: Vec<BigInt> = a.coefficients.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    primitive_int(v)
}

fn primitive_int(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in &mut v {
            *c /= &g;
        }
    }
    v
}

/// `lc(b)^k a mod b` for the least `k` that keeps the division integral.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lead = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let top = r.pop().expect("nonempty");
        let shift = r.len() - db;
        if top.is_zero() {
            continue;
        }
        for c in r.iter_mut() {
            *c *= lead;
        }
        for (j, bj) in b[..db].iter().enumerate() {
            r[shift + j] -= &top * bj;
        }
        let g = r.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if !g.is_zero() && !g.is_one() {
            for c in r.iter_mut() {
                *c /= &g;
            }
        }
    }
    r
}

/// Exact quotient `a / b`.
pub fn div_exact(a: &PolynomialQ, b: &PolynomialQ) -> PolynomialQ {
    let (q, r) = div_rem(a, b);
    debug_assert!(r.coefficients.is_empty(), "inexact division");
    q
}

/// Yun's algorithm: monic square-free `s_i` with `a = c * prod s_i^i`, listed with `i`.
/// Constant factors are omitted.
pub fn squarefree_decomposition(a: &PolynomialQ) -> Vec<(PolynomialQ, usize)> {
    if a.degree().is_none_or(|d| d == 0) {
        return Vec::new();
    }
    let a = monic(a);
    let da = derivative(&a);
    let mut g = gcd(&a, &da);
    let mut b = div_exact(&a, &g);
    let mut c = div_exact(&da, &g);
    let mut d = sub(&c, &derivative(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree().is_some_and(|d| d > 0) {
        g = gcd(&b, &d);
        if g.degree().is_some_and(|d| d > 0) {
            out.push((g.clone(), i));
        }
        b = div_exact(&b, &g);
        c = div_exact(&d, &g);
        d = sub(&c, &derivative(&b));
        i += 1;
    }
    out
}

/// Removes factors of the variable, returning the power removed.
pub fn strip_zero_roots(a: &PolynomialQ) -> (PolynomialQ, usize) {
    let k = a.coefficients.iter().take_while(|c| c.is_zero()).count();
    (PolynomialQ::new(a.coefficients[k.min(a.coefficients.len())..].to_vec()), k)
}
