//! Binary floating point with a big-integer mantissa, complex numbers over it, and
//! simultaneous polynomial root finding.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::linalg::Q;

/// `mantissa * 2^exponent`, rounded to `prec` significant bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigFloat {
    pub mantissa: BigInt,
    pub exponent: i64,
    pub prec: u32,
}

fn shift(m: &BigInt, by: i64) -> BigInt {
    if by >= 0 {
        m << by as usize
    } else {
        m >> (-by) as usize
    }
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat { mantissa: BigInt::zero(), exponent: 0, prec }
    }

    fn normalized(mut self) -> Self {
        let bits = self.mantissa.bits() as i64;
        let extra = bits - self.prec as i64;
        if extra > 0 {
            // round half away from zero
            let half = BigInt::from(1) << (extra - 1) as usize;
            let m = if self.mantissa.is_negative() { &self.mantissa - &half } else { &self.mantissa + &half };
            let (q, _) = m.div_rem(&(BigInt::from(1) << extra as usize));
            self.mantissa = q;
            self.exponent += extra;
        }
        if self.mantissa.is_zero() {
            self.exponent = 0;
        }
        self
    }

    pub fn from_int(n: &BigInt, prec: u32) -> Self {
        BigFloat { mantissa: n.clone(), exponent: 0, prec }.normalized()
    }

    pub fn from_q(x: &Q, prec: u32) -> Self {
        if x.is_zero() {
            return Self::zero(prec);
        }
        let num = x.numer();
        let den = x.denom();
        let s = prec as i64 + den.bits() as i64 - num.bits() as i64 + 2;
        let m = shift(num, s.max(0)) / shift(den, (-s).max(0));
        BigFloat { mantissa: m, exponent: -s, prec }.normalized()
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        if x == 0.0 || !x.is_finite() {
            return Self::zero(prec);
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
        BigFloat { mantissa: BigInt::from(m) * sign, exponent: e, prec }.normalized()
    }

    pub fn to_f64(&self) -> f64 {
        if self.mantissa.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits() as i64;
        let drop = (bits - 60).max(0);
        let top = shift(&self.mantissa, -drop).to_f64().unwrap_or(0.0);
        let e = self.exponent + drop;
        if e > 2000 {
            return top.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        // split the scaling to avoid intermediate overflow
        let half = e / 2;
        top * 2f64.powi(half as i32) * 2f64.powi((e - half) as i32)
    }

    /// Base-2 logarithm of the magnitude, approximately; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.mantissa.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.mantissa.bits() as i64;
        let drop = (bits - 60).max(0);
        let top = shift(&self.mantissa, -drop).to_f64().unwrap_or(1.0).abs();
        top.log2() + (self.exponent + drop) as f64
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn abs(&self) -> Self {
        BigFloat { mantissa: self.mantissa.abs(), ..self.clone() }
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        BigFloat { prec, ..self.clone() }.normalized()
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.mantissa.is_zero() {
            return "0".to_string();
        }
        // value = m * 2^e; choose k with |value| * 10^k having about `digits` digits
        let log10 = self.log2_abs() * std::f64::consts::LOG10_2;
        let k = digits as i64 - 1 - log10.floor() as i64;
        let ten = BigInt::from(10);
        let mut num = self.mantissa.clone();
        let mut den = BigInt::from(1);
        if k >= 0 {
            num *= num_traits::pow::<BigInt>(ten.clone(), k as usize);
        } else {
            den *= num_traits::pow::<BigInt>(ten.clone(), (-k) as usize);
        }
        if self.exponent >= 0 {
            num <<= self.exponent as usize;
        } else {
            den <<= (-self.exponent) as usize;
        }
        let neg = num.is_negative();
        let scaled: BigInt = (num.abs() * 2 + &den) / (den * 2);
        let s = scaled.to_string();
        let point = s.len() as i64 - k;
        let body = if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), s)
        } else if point as usize >= s.len() {
            format!("{}{}", s, "0".repeat(point as usize - s.len()))
        } else {
            format!("{}.{}", &s[..point as usize], &s[point as usize..])
        };
        let body = if body.contains('.') {
            body.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            body
        };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }
}

impl Add for &BigFloat {
    type Output = BigFloat;
    fn add(self, o: &BigFloat) -> BigFloat {
        let prec = self.prec.max(o.prec);
        if self.is_zero() {
            return o.with_prec(prec);
        }
        if o.is_zero() {
            return self.with_prec(prec);
        }
        // An operand far below the other's last bit only matters for rounding.
        let top_s = self.exponent + self.mantissa.bits() as i64;
        let top_o = o.exponent + o.mantissa.bits() as i64;
        if top_s - top_o > prec as i64 + 2 {
            return self.with_prec(prec);
        }
        if top_o - top_s > prec as i64 + 2 {
            return o.with_prec(prec);
        }
        let e = self.exponent.min(o.exponent);
        let m = shift(&self.mantissa, self.exponent - e) + shift(&o.mantissa, o.exponent - e);
        BigFloat { mantissa: m, exponent: e, prec }.normalized()
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat { mantissa: -&self.mantissa, ..self.clone() }
    }
}

impl Sub for &BigFloat {
    type Output = BigFloat;
    fn sub(self, o: &BigFloat) -> BigFloat {
        self + &(-o)
    }
}

impl Mul for &BigFloat {
    type Output = BigFloat;
    fn mul(self, o: &BigFloat) -> BigFloat {
        BigFloat {
            mantissa: &self.mantissa * &o.mantissa,
            exponent: self.exponent + o.exponent,
            prec: self.prec.max(o.prec),
        }
        .normalized()
    }
}

impl Div for &BigFloat {
    type Output = BigFloat;
    fn div(self, o: &BigFloat) -> BigFloat {
        assert!(!o.is_zero(), "division by zero");
        let prec = self.prec.max(o.prec);
        let s = prec as i64 + o.mantissa.bits() as i64 - self.mantissa.bits() as i64 + 2;
        let m = shift(&self.mantissa, s.max(0)) / shift(&o.mantissa, (-s).max(0));
        BigFloat { mantissa: m, exponent: self.exponent - o.exponent - s, prec }.normalized()
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        let d = self - o;
        Some(match d.mantissa.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        })
    }
}

/// A complex number with [`BigFloat`] parts.
#[derive(Debug, Clone, PartialEq)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn zero(prec: u32) -> Self {
        BigComplex { re: BigFloat::zero(prec), im: BigFloat::zero(prec) }
    }

    pub fn from_q(x: &Q, prec: u32) -> Self {
        BigComplex { re: BigFloat::from_q(x, prec), im: BigFloat::zero(prec) }
    }

    pub fn from_c64(z: Complex64, prec: u32) -> Self {
        BigComplex { re: BigFloat::from_f64(z.re, prec), im: BigFloat::from_f64(z.im, prec) }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        BigComplex { re: self.re.with_prec(prec), im: self.im.with_prec(prec) }
    }

    pub fn norm_sqr(&self) -> BigFloat {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    /// Approximate base-2 logarithm of the modulus.
    pub fn log2_abs(&self) -> f64 {
        let a = self.re.log2_abs();
        let b = self.im.log2_abs();
        let m = a.max(b);
        if m == f64::NEG_INFINITY {
            return m;
        }
        m + 0.5 * (1.0 + 2f64.powf(2.0 * (a.min(b) - m))).log2()
    }

    pub fn abs_f64(&self) -> f64 {
        let l = self.log2_abs();
        if l == f64::NEG_INFINITY {
            0.0
        } else {
            2f64.powf(l)
        }
    }

    pub fn powi(&self, k: u32) -> Self {
        let prec = self.re.prec;
        let mut acc = BigComplex::from_q(&Q::from_integer(1.into()), prec);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }
}

impl Add for &BigComplex {
    type Output = BigComplex;
    fn add(self, o: &BigComplex) -> BigComplex {
        BigComplex { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &BigComplex {
    type Output = BigComplex;
    fn sub(self, o: &BigComplex) -> BigComplex {
        BigComplex { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { re: -&self.re, im: -&self.im }
    }
}

impl Mul for &BigComplex {
    type Output = BigComplex;
    fn mul(self, o: &BigComplex) -> BigComplex {
        BigComplex {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }
}

impl Div for &BigComplex {
    type Output = BigComplex;
    fn div(self, o: &BigComplex) -> BigComplex {
        let d = o.norm_sqr();
        let re = &(&self.re * &o.re) + &(&self.im * &o.im);
        let im = &(&self.im * &o.re) - &(&self.re * &o.im);
        BigComplex { re: &re / &d, im: &im / &d }
    }
}

/// Value and derivative of `sum c_k z^k` (constant term first) by Horner's rule.
pub fn horner(coeffs: &[BigComplex], z: &BigComplex) -> (BigComplex, BigComplex) {
    let prec = z.re.prec;
    let mut p = BigComplex::zero(prec);
    let mut dp = BigComplex::zero(prec);
    for c in coeffs.iter().rev() {
        dp = &(&dp * z) + &p;
        p = &(&p * z) + c;
    }
    (p, dp)
}

/// All complex roots of a polynomial with nonzero leading coefficient, by Aberth's method.
///
/// Returns `None` when the iteration fails to converge to the working precision.
pub fn aberth_roots(coeffs: &[BigComplex], prec: u32, max_iter: usize) -> Option<Vec<BigComplex>> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Some(Vec::new());
    }
    let coeffs: Vec<BigComplex> = coeffs.iter().map(|c| c.with_prec(prec)).collect();
    // Starting points on a circle sized by the moduli of the coefficients.
    let lead = coeffs[n].log2_abs();
    let radius = (0..n)
        .filter(|&k| !coeffs[k].is_zero())
        .map(|k| (coeffs[k].log2_abs() - lead) / (n - k) as f64)
        .fold(f64::NEG_INFINITY, f64::max);
    let radius = if radius.is_finite() { 2f64.powf(radius) } else { 1.0 };
    let mut z: Vec<BigComplex> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            BigComplex::from_c64(Complex64::from_polar(radius, t), prec)
        })
        .collect();
    let target = -(prec as f64) + 16.0;
    let mut done = vec![false; n];
    for _ in 0..max_iter {
        let mut all = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, dp) = horner(&coeffs, &z[i]);
            if p.is_zero() {
                done[i] = true;
                continue;
            }
            if dp.is_zero() {
                all = false;
                z[i] = &z[i] + &BigComplex::from_c64(Complex64::new(1e-3, 1e-3), prec);
                continue;
            }
            let ratio = &p / &dp;
            let mut s = BigComplex::zero(prec);
            for j in 0..n {
                if j != i {
                    let d = &z[i] - &z[j];
                    if !d.is_zero() {
                        s = &s + &(&BigComplex::from_q(&Q::from_integer(1.into()), prec) / &d);
                    }
                }
            }
            let one = BigComplex::from_q(&Q::from_integer(1.into()), prec);
            let denom = &one - &(&ratio * &s);
            let w = if denom.is_zero() { ratio.clone() } else { &ratio / &denom };
            z[i] = &z[i] - &w;
            let scale = z[i].log2_abs().max(0.0);
            if w.log2_abs() - scale < target {
                done[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            return Some(z);
        }
    }
    None
}
