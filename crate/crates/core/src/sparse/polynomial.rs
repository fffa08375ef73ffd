//! Sparse Laurent polynomials with rational coefficients and their text syntax.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{IntVector, SupportSet};
use crate::linalg::Q;

/// A Laurent polynomial: one nonzero coefficient per support point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SparsePolynomial {
    pub support: SupportSet,
    pub coefficients: Vec<Q>,
}

impl PartialEq for SparsePolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.support.ambient_dim == other.support.ambient_dim && self.terms() == other.terms()
    }
}

impl Eq for SparsePolynomial {}

impl SparsePolynomial {
    /// Merges like terms, keeping first appearance order and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (IntVector, Q)>>(nvars: usize, terms: I) -> Result<Self> {
        let mut order: Vec<IntVector> = Vec::new();
        let mut sums: BTreeMap<IntVector, Q> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: e.len() });
            }
            match sums.get_mut(&e) {
                Some(s) => *s += c,
                None => {
                    order.push(e.clone());
                    sums.insert(e, c);
                }
            }
        }
        let mut points = Vec::new();
        let mut coefficients = Vec::new();
        for e in order {
            let c = sums.remove(&e).expect("recorded term");
            if !c.is_zero() {
                points.push(e);
                coefficients.push(c);
            }
        }
        Ok(SparsePolynomial { support: SupportSet::new(nvars, points)?, coefficients })
    }

    pub fn zero(nvars: usize) -> Self {
        SparsePolynomial { support: SupportSet { ambient_dim: nvars, points: Vec::new(), labels: None }, coefficients: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.support.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.coefficients.len() == 1
    }

    pub fn terms(&self) -> BTreeMap<IntVector, Q> {
        self.support.points.iter().cloned().zip(self.coefficients.iter().cloned()).collect()
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shifted(&self, shift: &[BigInt]) -> Self {
        let points = self
            .support
            .points
            .iter()
            .map(|p| p.iter().zip(shift).map(|(a, b)| a + b).collect())
            .collect();
        SparsePolynomial {
            support: SupportSet { ambient_dim: self.nvars(), points, labels: None },
            coefficients: self.coefficients.clone(),
        }
    }

    /// The componentwise minimum of the exponents.
    pub fn min_exponent(&self) -> IntVector {
        (0..self.nvars())
            .map(|k| self.support.points.iter().map(|p| p[k].clone()).min().unwrap_or_default())
            .collect()
    }

    /// The same zero set in the torus with all exponents nonnegative and minimal.
    pub fn cleared(&self) -> Self {
        let m: IntVector = self.min_exponent().iter().map(|x| -x).collect();
        self.shifted(&m)
    }

    pub fn eval(&self, x: &[Q]) -> Result<Q> {
        let mut total = Q::zero();
        for (p, c) in self.support.points.iter().zip(&self.coefficients) {
            let mut t = c.clone();
            for (e, xi) in p.iter().zip(x) {
                let k = e.to_i32().ok_or(Error::Overflow)?;
                if k < 0 && xi.is_zero() {
                    return Err(Error::InvalidInput("zero base with negative exponent".into()));
                }
                t *= num_traits::pow::Pow::pow(xi, k);
            }
            total += t;
        }
        Ok(total)
    }

    pub fn eval_complex(&self, x: &[Complex64]) -> Complex64 {
        self.support
            .points
            .iter()
            .zip(&self.coefficients)
            .map(|(p, c)| {
                p.iter().zip(x).fold(Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0), |t, (e, xi)| {
                    t * xi.powi(e.to_i32().unwrap_or(i32::MAX))
                })
            })
            .sum()
    }

    /// Renders the polynomial with the given variable names.
    pub fn format_with(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (p, c)) in self.support.points.iter().zip(&self.coefficients).enumerate() {
            let mono: Vec<String> = p
                .iter()
                .zip(vars)
                .filter(|(e, _)| !e.is_zero())
                .map(|(e, v)| if e.is_one() { v.clone() } else { format!("{v}^{e}") })
                .collect();
            let mono = mono.join("*");
            let neg = c.is_negative();
            let a = c.abs();
            let body = if mono.is_empty() {
                a.to_string()
            } else if a.is_one() {
                mono
            } else {
                format!("{a}*{mono}")
            };
            if i == 0 {
                out.push_str(if neg { "-" } else { "" });
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

/// A square system of Laurent polynomials in named variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolySystem {
    pub variables: Vec<String>,
    pub polynomials: Vec<SparsePolynomial>,
}

impl PolySystem {
    pub fn new(variables: Vec<String>, polynomials: Vec<SparsePolynomial>) -> Result<Self> {
        let n = variables.len();
        for p in &polynomials {
            if p.nvars() != n {
                return Err(Error::DimensionMismatch { expected: n, found: p.nvars() });
            }
        }
        Ok(PolySystem { variables, polynomials })
    }

    pub fn parse(variables: &[&str], texts: &[&str]) -> Result<Self> {
        let vars: Vec<String> = variables.iter().map(|s| s.to_string()).collect();
        let polys = texts.iter().map(|t| parse_polynomial(t, &vars)).collect::<Result<_>>()?;
        Self::new(vars, polys)
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    /// Errors unless there are as many polynomials as variables.
    pub fn check_square(&self) -> Result<()> {
        if self.polynomials.len() != self.nvars() {
            return Err(Error::WrongCount { expected: self.nvars(), found: self.polynomials.len() });
        }
        Ok(())
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
    vars: Vec<(usize, &'a str)>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map(|&(i, _)| i).unwrap_or(self.text.len())
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.offset(), msg: msg.to_string() })
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        s.parse().ok()
    }

    fn number(&mut self) -> Result<Q> {
        let n = self.digits().expect("caller checked for a digit");
        if self.peek() == Some('/') {
            self.pos += 1;
            let Some(d) = self.digits() else {
                return self.err("expected denominator");
            };
            if d.is_zero() {
                return self.err("zero denominator");
            }
            return Ok(Q::new(n, d));
        }
        Ok(Q::from_integer(n))
    }

    /// Longest variable name matching at the cursor, ignoring whitespace inside it.
    fn variable(&mut self) -> Option<usize> {
        let rest: String = self.chars[self.pos..].iter().map(|&(_, c)| c).collect();
        let (len, idx) = self
            .vars
            .iter()
            .filter(|(_, name)| rest.starts_with(name))
            .map(|&(i, name)| (name.chars().count(), i))
            .max()?;
        self.pos += len;
        Some(idx)
    }

    fn exponent(&mut self) -> Result<BigInt> {
        let neg = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let brace = self.peek() == Some('(');
        if brace {
            self.pos += 1;
        }
        let Some(e) = self.digits() else {
            return self.err("expected exponent");
        };
        if brace {
            if self.peek() != Some(')') {
                return self.err("expected ')'");
            }
            self.pos += 1;
        }
        Ok(if neg { -e } else { e })
    }

    fn term(&mut self, n: usize) -> Result<(IntVector, Q)> {
        let mut coeff = Q::one();
        let mut exps = vec![BigInt::zero(); n];
        let mut factors = 0;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => coeff *= self.number()?,
                Some('*') if factors > 0 => {
                    self.pos += 1;
                    continue;
                }
                Some(c) if c.is_alphabetic() || c == '_' => {
                    let Some(i) = self.variable() else {
                        let start = self.pos;
                        while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                            self.pos += 1;
                        }
                        let name: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
                        return Err(Error::UnknownVariable(name));
                    };
                    let e = if self.peek() == Some('^') {
                        self.pos += 1;
                        self.exponent()?
                    } else {
                        BigInt::one()
                    };
                    exps[i] += e;
                }
                _ => break,
            }
            factors += 1;
        }
        if factors == 0 {
            return self.err("expected a term");
        }
        if self.chars.get(self.pos.wrapping_sub(1)).is_some_and(|&(_, c)| c == '*') {
            return self.err("dangling '*'");
        }
        Ok((exps, coeff))
    }
}

/// Parses text such as `x^2y + 2xy^2 - 1 + xy` or `3/2*x^-1*y`.
///
/// Juxtaposition multiplies, `*` is optional, whitespace is ignored and variable names
/// are matched greedily by length.
pub fn parse_polynomial(text: &str, variables: &[String]) -> Result<SparsePolynomial> {
    let n = variables.len();
    let mut vars: Vec<(usize, &str)> = variables.iter().map(|s| s.as_str()).enumerate().collect();
    vars.sort_by_key(|(_, s)| std::cmp::Reverse(s.len()));
    if let Some((_, v)) = vars.iter().find(|(_, v)| v.is_empty() || v.chars().any(|c| !(c.is_alphanumeric() || c == '_'))) {
        return Err(Error::InvalidInput(format!("bad variable name {v:?}")));
    }
    let mut p = Parser {
        chars: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
        pos: 0,
        text,
        vars,
    };
    if p.chars.is_empty() {
        return p.err("empty polynomial");
    }
    let mut terms = Vec::new();
    let mut first = true;
    while p.pos < p.chars.len() {
        let neg = match p.peek() {
            Some('+') => {
                p.pos += 1;
                false
            }
            Some('-') => {
                p.pos += 1;
                true
            }
            _ if first => false,
            _ => return p.err("expected '+' or '-'"),
        };
        first = false;
        let (e, c) = p.term(n)?;
        terms.push((e, if neg { -c } else { c }));
    }
    SparsePolynomial::from_terms(n, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ivec;
    use crate::linalg::q;

    fn xy() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn parses_the_cubic_example() {
        let f = parse_polynomial("x^2y+2xy^2-1+xy", &xy()).unwrap();
        assert_eq!(f.support.points, vec![ivec(&[2, 1]), ivec(&[1, 2]), ivec(&[0, 0]), ivec(&[1, 1])]);
        assert_eq!(f.coefficients, vec![q(1), q(2), q(-1), q(1)]);
        assert_eq!(f.format_with(&xy()), "x^2*y + 2*x*y^2 - 1 + x*y");
    }

    #[test]
    fn merging_and_order() {
        let x = vec!["x".to_string()];
        let f = parse_polynomial("x + x", &x).unwrap();
        assert_eq!(f.support.points, vec![ivec(&[1])]);
        assert_eq!(f.coefficients, vec![q(2)]);
        assert!(parse_polynomial("x - x", &x).unwrap().is_zero());
    }

    #[test]
    fn commuted_terms_have_equal_values() {
        let x = vec!["x".to_string()];
        let a = parse_polynomial("1 + x", &x).unwrap();
        let b = parse_polynomial("x + 1", &x).unwrap();
        assert_eq!(a, b);
        for v in -3..4 {
            assert_eq!(a.eval(&[q(v)]).unwrap(), b.eval(&[q(v)]).unwrap());
        }
    }

    #[test]
    fn laurent_rational_and_spacing() {
        let f = parse_polynomial(" 3/2 * x^-1 y^2 - x ^ -2 + 2/4", &xy()).unwrap();
        assert_eq!(f.support.points, vec![ivec(&[-1, 2]), ivec(&[-2, 0]), ivec(&[0, 0])]);
        assert_eq!(f.coefficients, vec![Q::new(3.into(), 2.into()), q(-1), Q::new(1.into(), 2.into())]);
        assert_eq!(f.cleared().support.points, vec![ivec(&[1, 2]), ivec(&[0, 0]), ivec(&[2, 0])]);
    }

    #[test]
    fn greedy_variable_names() {
        let vars: Vec<String> = vec!["x".into(), "x1".into(), "y".into()];
        let f = parse_polynomial("x1x^2 y", &vars).unwrap();
        assert_eq!(f.support.points, vec![ivec(&[2, 1, 1])]);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_polynomial("x + z", &xy()), Err(Error::UnknownVariable(v)) if v == "z"));
        assert!(matches!(parse_polynomial("x + ", &xy()), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_polynomial("x ^", &xy()), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("1/0", &xy()), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("x)", &xy()), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse_polynomial("", &xy()), Err(Error::Parse { pos: 0, .. })));
    }
}
