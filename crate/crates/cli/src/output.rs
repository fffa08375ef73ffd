//! JSON encodings of the library types. Integers that fit in 64 bits are JSON numbers,
//! larger ones are decimal strings; non-integral rationals are strings `"p/q"`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use toric_kit::cones::{Fan, RationalCone};
use toric_kit::linalg::Q;
use toric_kit::polytope::Polytope;
use toric_kit::sparse::{FacialSystem, GenericityReport, PolySystem, SparsePolynomial, TorusSolution};
use toric_kit::toric::binomial::Binomial;
use toric_kit::toric::{GapData, GroebnerBasis};
use toric_kit::SupportSet;

pub fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) => Value::from(i),
        None => Value::from(x.to_string()),
    }
}

pub fn rat(x: &Q) -> Value {
    if x.is_integer() {
        int(x.numer())
    } else {
        Value::from(x.to_string())
    }
}

pub fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn rats(v: &[Q]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

pub fn int_rows(rows: &[Vec<BigInt>]) -> Value {
    Value::Array(rows.iter().map(|r| ints(r)).collect())
}

pub fn polytope(p: &Polytope) -> Value {
    json!({
        "ambient_dim": p.ambient_dim,
        "dim": p.dim,
        "vertices": Value::Array(p.vertices.iter().map(|v| rats(v)).collect()),
        "facets": p.facets.iter().zip(&p.incidence).map(|(h, inc)| json!({
            "normal": ints(&h.normal),
            "offset": rat(&h.offset),
            "vertices": inc,
        })).collect::<Vec<_>>(),
        "equations": p.equations.iter().map(|h| json!({
            "normal": ints(&h.normal),
            "offset": rat(&h.offset),
        })).collect::<Vec<_>>(),
    })
}

pub fn cone(c: &RationalCone) -> Value {
    json!({
        "ambient_dim": c.ambient_dim,
        "dim": c.dim,
        "rays": int_rows(&c.rays),
        "lineality": int_rows(&c.lineality),
        "halfspaces": int_rows(&c.halfspaces),
        "equations": int_rows(&c.equations),
    })
}

pub fn fan(f: &Fan) -> Value {
    let mut m = Map::new();
    m.insert("ambient_dim".into(), json!(f.ambient_dim));
    m.insert("complete".into(), json!(f.complete));
    m.insert("cones".into(), Value::Array(f.cones.iter().map(cone).collect()));
    m.insert("maximal".into(), json!(f.maximal_cones()));
    m.insert("rays".into(), int_rows(&f.rays()));
    m.insert("containment".into(), json!(f.containment.iter().map(|(i, j)| [i, j]).collect::<Vec<_>>()));
    if let Some(p) = &f.provenance {
        m.insert("provenance".into(), json!(p));
    }
    Value::Object(m)
}

/// Variable names `z(a1,...,an)` indexed by the points of `a`, or its labels.
pub fn variable_names(a: &SupportSet) -> Vec<String> {
    match &a.labels {
        Some(l) => l.clone(),
        None => a
            .points
            .iter()
            .map(|p| format!("z({})", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect(),
    }
}

pub fn binomial(b: &Binomial, names: &[String]) -> Value {
    json!({
        "plus": ints(&b.plus()),
        "minus": ints(&b.minus()),
        "text": b.format_with(names),
    })
}

pub fn groebner(gb: &GroebnerBasis, a: &SupportSet, order: &str) -> Value {
    let names = variable_names(a);
    json!({
        "variables": names,
        "points": int_rows(&a.points),
        "order": order,
        "reduced": gb.reduced,
        "binomials": gb.generators.iter().map(|b| binomial(b, &names)).collect::<Vec<_>>(),
    })
}

pub fn gap(g: &GapData) -> Value {
    json!({
        "B": int_rows(&g.b_set),
        "beta": int_rows(&g.beta),
        "nu": int(&g.nu),
        "v": ints(&g.v),
        "v_prime": ints(&g.v_prime),
    })
}

pub fn poly(f: &SparsePolynomial, vars: &[String]) -> Value {
    Value::from(f.format_with(vars))
}

pub fn facial(entries: &[FacialSystem], s: &PolySystem) -> Value {
    json!({
        "entries": entries.iter().map(|e| json!({
            "w": ints(&e.w),
            "cone_rays": int_rows(&e.cone.rays),
            "cone_lineality": int_rows(&e.cone.lineality),
            "faces": e.faces.iter().map(|f| poly(f, &s.variables)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn genericity(r: &GenericityReport, s: &PolySystem) -> Value {
    json!({
        "verdict": r.verdict,
        "witness": r.witness.as_ref().map(|w| ints(w)),
        "entries": r.entries.iter().map(|e| json!({
            "w": ints(&e.w),
            "faces": e.faces.iter().map(|f| poly(f, &s.variables)).collect::<Vec<_>>(),
            "status": e.status,
        })).collect::<Vec<_>>(),
    })
}

pub fn solutions(sol: &[TorusSolution], count: u64) -> Value {
    json!({
        "count": count,
        "solutions": sol.iter().map(|t| json!({
            "coordinates": t.coordinates_text,
            "multiplicity": t.multiplicity,
            "residual": t.residual,
            "shared_fiber": t.shared_fiber,
        })).collect::<Vec<_>>(),
    })
}

/// Human-readable rendering: one `key: value` line per top-level field, with arrays of
/// strings or objects spread over indented lines.
pub fn text(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_string()) => {
                        out.push_str(&format!("{k}:\n"));
                        for i in items {
                            match i {
                                Value::String(s) => out.push_str(&format!("  {s}\n")),
                                Value::Object(o) => {
                                    let parts: Vec<String> = o.iter().map(|(a, b)| format!("{a}={}", scalar(b))).collect();
                                    out.push_str(&format!("  {}\n", parts.join("  ")));
                                }
                                other => out.push_str(&format!("  {}\n", scalar(other))),
                            }
                        }
                    }
                    _ => out.push_str(&format!("{k}: {}\n", scalar(x))),
                }
            }
        }
        other => out.push_str(&format!("{}\n", scalar(other))),
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers() {
        assert_eq!(int(&BigInt::from(-3)), json!(-3));
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(int(&big), json!("123456789012345678901234567890"));
        assert_eq!(rat(&Q::new(5.into(), 2.into())), json!("5/2"));
        assert_eq!(rat(&Q::new(4.into(), 2.into())), json!(2));
    }

    #[test]
    fn text_mode() {
        let t = text(&json!({"bound": 6, "binomials": ["a - b"]}));
        assert_eq!(t, "binomials:\n  a - b\nbound: 6\n");
    }
}
