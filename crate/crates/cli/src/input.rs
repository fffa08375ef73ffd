//! Reading support sets, systems, cones and points from JSON, with JSON-pointer diagnostics.

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use serde_json::Value;
use toric_kit::linalg::Q;
use toric_kit::sparse::{parse_polynomial, PolySystem};
use toric_kit::{IntVector, SupportSet};

/// An input problem located by a JSON pointer into the offending document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub source: String,
    pub pointer: String,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ptr = if self.pointer.is_empty() { "/" } else { &self.pointer };
        write!(f, "{} at {}: {}", self.source, ptr, self.message)
    }
}

impl std::error::Error for InputError {}

type Res<T> = std::result::Result<T, InputError>;

struct Ctx<'a> {
    source: &'a str,
}

impl Ctx<'_> {
    fn err(&self, pointer: impl Into<String>, message: impl Into<String>) -> InputError {
        InputError { source: self.source.to_string(), pointer: pointer.into(), message: message.into() }
    }

    fn integer(&self, v: &Value, ptr: &str) -> Res<BigInt> {
        match v {
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(BigInt::from(i))
                } else if let Some(u) = n.as_u64() {
                    Ok(BigInt::from(u))
                } else {
                    Err(self.err(ptr, "expected an integer"))
                }
            }
            Value::String(s) => s.trim().parse::<BigInt>().map_err(|_| self.err(ptr, "expected an integer")),
            _ => Err(self.err(ptr, "expected an integer")),
        }
    }

    fn int_vector(&self, v: &Value, ptr: &str) -> Res<IntVector> {
        let arr = v.as_array().ok_or_else(|| self.err(ptr, "expected an array of integers"))?;
        arr.iter().enumerate().map(|(i, x)| self.integer(x, &format!("{ptr}/{i}"))).collect()
    }

    /// A list of equal-length integer vectors; the length is `dim` when given.
    fn int_vectors(&self, v: &Value, ptr: &str, dim: Option<usize>) -> Res<(usize, Vec<IntVector>)> {
        let arr = v.as_array().ok_or_else(|| self.err(ptr, "expected an array of points"))?;
        let mut dim = dim;
        let mut out = Vec::with_capacity(arr.len());
        for (i, p) in arr.iter().enumerate() {
            let pp = format!("{ptr}/{i}");
            let x = self.int_vector(p, &pp)?;
            match dim {
                Some(d) if d != x.len() => {
                    return Err(self.err(pp, format!("expected {d} coordinates, found {}", x.len())))
                }
                None => dim = Some(x.len()),
                _ => {}
            }
            out.push(x);
        }
        let dim = dim.ok_or_else(|| self.err(ptr, "dimension cannot be inferred from an empty list"))?;
        Ok((dim, out))
    }

    fn support(&self, v: &Value) -> Res<SupportSet> {
        let (dim, points) = match v {
            Value::Array(_) => self.int_vectors(v, "", None)?,
            Value::Object(map) => {
                for k in map.keys() {
                    if k != "dim" && k != "points" && k != "labels" {
                        return Err(self.err(format!("/{k}"), "unknown field"));
                    }
                }
                let dim = match map.get("dim") {
                    Some(d) => Some(
                        d.as_u64()
                            .and_then(|d| usize::try_from(d).ok())
                            .ok_or_else(|| self.err("/dim", "expected a nonnegative integer"))?,
                    ),
                    None => return Err(self.err("", "missing field `dim`")),
                };
                let pts = map.get("points").ok_or_else(|| self.err("", "missing field `points`"))?;
                self.int_vectors(pts, "/points", dim)?
            }
            _ => return Err(self.err("", "expected a support set object or an array of points")),
        };
        let prefix = if v.is_array() { "" } else { "/points" };
        for (i, p) in points.iter().enumerate() {
            if let Some(j) = points[..i].iter().position(|q| q == p) {
                return Err(self.err(
                    format!("{prefix}/{i}"),
                    format!("duplicate point {} (first listed at {prefix}/{j})", fmt_vec(p)),
                ));
            }
        }
        let mut s = SupportSet::new(dim, points).map_err(|e| self.err(prefix, e.to_string()))?;
        if let Some(labels) = v.get("labels") {
            let arr = labels.as_array().ok_or_else(|| self.err("/labels", "expected an array of strings"))?;
            let names = arr
                .iter()
                .enumerate()
                .map(|(i, x)| x.as_str().map(String::from).ok_or_else(|| self.err(format!("/labels/{i}"), "expected a string")))
                .collect::<Res<Vec<_>>>()?;
            s = s.with_labels(names).map_err(|e| self.err("/labels", e.to_string()))?;
        }
        Ok(s)
    }

    fn system(&self, v: &Value) -> Res<PolySystem> {
        let map = v.as_object().ok_or_else(|| self.err("", "expected a system object"))?;
        for k in map.keys() {
            if k != "variables" && k != "polynomials" {
                return Err(self.err(format!("/{k}"), "unknown field"));
            }
        }
        let vars = map.get("variables").ok_or_else(|| self.err("", "missing field `variables`"))?;
        let vars = vars.as_array().ok_or_else(|| self.err("/variables", "expected an array of strings"))?;
        let mut names: Vec<String> = Vec::with_capacity(vars.len());
        for (i, x) in vars.iter().enumerate() {
            let s = x.as_str().ok_or_else(|| self.err(format!("/variables/{i}"), "expected a string"))?;
            if s.is_empty() || !s.chars().all(|c| c.is_alphanumeric() || c == '_') || s.starts_with(|c: char| c.is_ascii_digit()) {
                return Err(self.err(format!("/variables/{i}"), format!("invalid variable name `{s}`")));
            }
            if names.iter().any(|n| n == s) {
                return Err(self.err(format!("/variables/{i}"), format!("duplicate variable `{s}`")));
            }
            names.push(s.to_string());
        }
        let polys = map.get("polynomials").ok_or_else(|| self.err("", "missing field `polynomials`"))?;
        let polys = polys.as_array().ok_or_else(|| self.err("/polynomials", "expected an array of strings"))?;
        let mut out = Vec::with_capacity(polys.len());
        for (i, p) in polys.iter().enumerate() {
            let ptr = format!("/polynomials/{i}");
            let text = p.as_str().ok_or_else(|| self.err(&ptr, "expected a string"))?;
            out.push(parse_polynomial(text, &names).map_err(|e| self.err(&ptr, e.to_string()))?);
        }
        PolySystem::new(names, out).map_err(|e| self.err("", e.to_string()))
    }

    fn rational(&self, v: &Value, ptr: &str) -> Res<Q> {
        match v {
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    return Ok(Q::from_integer(i.into()));
                }
                let f = n.as_f64().ok_or_else(|| self.err(ptr, "expected a number"))?;
                Q::from_float(f).ok_or_else(|| self.err(ptr, "expected a finite number"))
            }
            Value::String(s) => parse_rational(s).ok_or_else(|| self.err(ptr, "expected a rational such as \"3/4\"")),
            _ => Err(self.err(ptr, "expected a number or a rational string")),
        }
    }
}

fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            (b != BigInt::from(0)).then(|| Q::new(a, b))
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

pub fn fmt_vec(p: &[BigInt]) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Parses JSON text, reporting syntax errors with line and column.
pub fn parse_json(text: &str, source: &str) -> Res<Value> {
    serde_json::from_str(text).map_err(|e| InputError {
        source: source.to_string(),
        pointer: String::new(),
        message: format!("invalid JSON (line {}, column {}): {e}", e.line(), e.column()),
    })
}

pub fn read_file(path: &Path) -> Res<Value> {
    let source = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| InputError {
        source: source.clone(),
        pointer: String::new(),
        message: format!("cannot read file: {e}"),
    })?;
    parse_json(&text, &source)
}

/// A support set from `{"dim": n, "points": [...]}` or a bare array of points.
pub fn support_from_value(v: &Value, source: &str) -> Res<SupportSet> {
    Ctx { source }.support(v)
}

/// A system from `{"variables": [...], "polynomials": [...]}`.
pub fn system_from_value(v: &Value, source: &str) -> Res<PolySystem> {
    Ctx { source }.system(v)
}

/// Integer vectors of a common length, e.g. cone generators.
pub fn vectors_from_value(v: &Value, source: &str) -> Res<(usize, Vec<IntVector>)> {
    Ctx { source }.int_vectors(v, "", None)
}

pub fn int_vector_from_value(v: &Value, source: &str) -> Res<IntVector> {
    Ctx { source }.int_vector(v, "")
}

/// Rational coordinates, as numbers or strings like `"3/4"`.
pub fn rationals_from_value(v: &Value, source: &str) -> Res<Vec<Q>> {
    let c = Ctx { source };
    let arr = v.as_array().ok_or_else(|| c.err("", "expected an array of numbers"))?;
    arr.iter().enumerate().map(|(i, x)| c.rational(x, &format!("/{i}"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn support(text: &str) -> Res<SupportSet> {
        support_from_value(&parse_json(text, "input").unwrap(), "input")
    }

    #[test]
    fn support_sets() {
        let s = support(r#"{"dim":1,"points":[[0],[2],[3]]}"#).unwrap();
        assert_eq!(s.points, SupportSet::from_points(1, &[vec![0], vec![2], vec![3]]).unwrap().points);
        assert_eq!(support("[[0,1],[1,0]]").unwrap().ambient_dim, 2);
    }

    #[test]
    fn support_errors_carry_pointers() {
        let e = support(r#"{"dim":2,"points":[[0,0],[0,0]]}"#).unwrap_err();
        assert_eq!(e.pointer, "/points/1");
        assert!(e.message.contains("duplicate point"));
        let e = support(r#"{"dim":2,"points":[[0,0],[1,"a"]]}"#).unwrap_err();
        assert_eq!(e.pointer, "/points/1/1");
        let e = support(r#"{"dim":3,"points":[[0,0]]}"#).unwrap_err();
        assert_eq!(e.pointer, "/points/0");
        let e = support(r#"{"points":[[0]]}"#).unwrap_err();
        assert!(e.message.contains("dim"));
        let e = support(r#"{"dim":1,"points":[[0]],"extra":1}"#).unwrap_err();
        assert_eq!(e.pointer, "/extra");
    }

    #[test]
    fn systems() {
        let v = parse_json(r#"{"variables":["x","y"],"polynomials":["x+2y","1"]}"#, "s").unwrap();
        let s = system_from_value(&v, "s").unwrap();
        assert_eq!(s.polynomials.len(), 2);
        let v = parse_json(r#"{"variables":["x","y"],"polynomials":["x+z"]}"#, "s").unwrap();
        assert_eq!(system_from_value(&v, "s").unwrap_err().pointer, "/polynomials/0");
        let v = parse_json(r#"{"variables":["x","x"],"polynomials":[]}"#, "s").unwrap();
        assert_eq!(system_from_value(&v, "s").unwrap_err().pointer, "/variables/1");
    }

    #[test]
    fn rationals() {
        let v = parse_json(r#"[1, "3/4", 0.5]"#, "r").unwrap();
        let r = rationals_from_value(&v, "r").unwrap();
        assert_eq!(r[1], Q::new(3.into(), 4.into()));
        assert_eq!(r[2], Q::new(1.into(), 2.into()));
    }
}
