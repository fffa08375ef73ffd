//! Newton polytopes, root-count bounds, initial forms and facial systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cones::{self, Fan, RationalCone};
use crate::error::{Error, Result};
use crate::lattice::{IntVector, SupportSet};
use crate::linalg::{self, Q};
use crate::polytope::{self, Polytope};
use crate::sparse::polynomial::{PolySystem, SparsePolynomial};
use crate::sparse::univariate;
use crate::volume::{self, PolynomialQ};

pub fn newton_polytope(f: &SparsePolynomial) -> Result<Polytope> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    polytope::convex_hull_support(&f.support)
}

fn integral(x: &Q) -> Result<BigInt> {
    if !x.is_integer() {
        return Err(Error::Numerical(format!("expected an integer volume, got {x}")));
    }
    Ok(x.to_integer())
}

/// `n! Vol(conv A)`, the generic number of torus solutions of a system with support `A`.
pub fn kushnirenko_bound(a: &SupportSet) -> Result<BigInt> {
    if a.is_empty() {
        return Err(Error::InvalidInput("empty support".into()));
    }
    integral(&volume::normalized_volume(&polytope::convex_hull_support(a)?))
}

/// `n! MV(P_1, ..., P_n)` for the Newton polytopes of a square system.
pub fn bernstein_bound(system: &PolySystem) -> Result<BigInt> {
    system.check_square()?;
    let ps: Vec<Polytope> = system.polynomials.iter().map(newton_polytope).collect::<Result<_>>()?;
    let refs: Vec<&Polytope> = ps.iter().collect();
    integral(&volume::mixed_volume(&refs)?.normalized)
}

/// The terms of `f` whose exponents maximize `w . a`.
pub fn initial_form(f: &SparsePolynomial, w: &[BigInt]) -> Result<SparsePolynomial> {
    if w.len() != f.nvars() {
        return Err(Error::DimensionMismatch { expected: f.nvars(), found: w.len() });
    }
    let Some(h) = f.support.points.iter().map(|p| linalg::dot_int(w, p)).max() else {
        return Ok(f.clone());
    };
    SparsePolynomial::from_terms(
        f.nvars(),
        f.support
            .points
            .iter()
            .zip(&f.coefficients)
            .filter(|(p, _)| linalg::dot_int(w, p) == h)
            .map(|(p, c)| (p.clone(), c.clone())),
    )
}

/// The initial forms of a system along a cone of the common refinement of its normal fans.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacialSystem {
    /// A primitive vector in the relative interior of `cone`.
    pub w: IntVector,
    pub cone: RationalCone,
    pub faces: Vec<SparsePolynomial>,
}

fn refinement(system: &PolySystem) -> Result<Fan> {
    let fans: Vec<Fan> = system
        .polynomials
        .iter()
        .map(|f| cones::normal_fan(&newton_polytope(f)?))
        .collect::<Result<_>>()?;
    let refs: Vec<&Fan> = fans.iter().collect();
    cones::common_refinement(&refs)
}

fn facial_entries(system: &PolySystem, fan: &Fan) -> Result<Vec<FacialSystem>> {
    let mut out = Vec::new();
    for c in &fan.cones {
        let w = c.interior_vector();
        if w.iter().all(|x| x.is_zero()) {
            continue;
        }
        let faces = system.polynomials.iter().map(|f| initial_form(f, &w)).collect::<Result<_>>()?;
        out.push(FacialSystem { w, cone: c.clone(), faces });
    }
    Ok(out)
}

/// One facial system per nonzero cone of the common refinement of the normal fans.
/// The Newton polytopes must be full-dimensional.
pub fn facial_systems(system: &PolySystem) -> Result<Vec<FacialSystem>> {
    if system.polynomials.is_empty() {
        return Err(Error::WrongCount { expected: system.nvars(), found: 0 });
    }
    for f in &system.polynomials {
        let p = newton_polytope(f)?;
        if !p.is_full_dimensional() {
            return Err(Error::LowerDimensional { dim: p.dim, ambient: p.ambient_dim });
        }
    }
    facial_entries(system, &refinement(system)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FaceStatus {
    /// No solutions in the torus.
    Empty,
    Nonempty,
    Undecided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Generic,
    Degenerate,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacialCheck {
    pub w: IntVector,
    pub faces: Vec<SparsePolynomial>,
    pub status: FaceStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericityReport {
    pub verdict: Verdict,
    /// A `w` whose facial system has torus solutions, when degenerate.
    pub witness: Option<IntVector>,
    pub entries: Vec<FacialCheck>,
}

/// Coefficients of `f = x^base * p(x^d)` as a polynomial `p` in one variable, for `f`
/// supported on a line with primitive direction `d`.
fn along_direction(f: &SparsePolynomial, d: &[BigInt]) -> PolynomialQ {
    let dd = linalg::dot_int(d, d);
    let params: Vec<BigInt> = f.support.points.iter().map(|p| linalg::dot_int(p, d)).collect();
    let lo = params.iter().min().cloned().unwrap_or_default();
    let mut coeffs: Vec<Q> = Vec::new();
    for (t, c) in params.iter().zip(&f.coefficients) {
        let (k, r) = (t - &lo).div_rem(&dd);
        debug_assert!(r.is_zero());
        let k: usize = k.try_into().expect("small exponent");
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Q::zero());
        }
        coeffs[k] += c;
    }
    PolynomialQ::new(coeffs)
}

/// Exact torus emptiness of a facial system in two variables, where both faces are
/// parallel to the line orthogonal to `w`.
fn planar_face_status(faces: &[SparsePolynomial], w: &[BigInt]) -> FaceStatus {
    if faces.iter().any(|f| f.is_monomial()) {
        return FaceStatus::Empty;
    }
    let d = linalg::primitive(&[-w[1].clone(), w[0].clone()]);
    let p = along_direction(&faces[0], &d);
    let q = along_direction(&faces[1], &d);
    let g = univariate::gcd(&p, &q);
    if g.degree().is_some_and(|k| k > 0) {
        FaceStatus::Nonempty
    } else {
        FaceStatus::Empty
    }
}

/// Checks that no facial system has a solution in the torus.
///
/// Decided exactly in one and two variables. With three or more variables only facial
/// systems containing a monomial are decided; the rest are reported as undecided.
pub fn genericity_check(system: &PolySystem) -> Result<GenericityReport> {
    system.check_square()?;
    let n = system.nvars();
    let fan = refinement(system)?;
    let mut entries = Vec::new();
    for fs in facial_entries(system, &fan)? {
        let status = if fs.faces.iter().any(|f| f.is_monomial()) {
            FaceStatus::Empty
        } else if n == 2 {
            planar_face_status(&fs.faces, &fs.w)
        } else {
            FaceStatus::Undecided
        };
        entries.push(FacialCheck { w: fs.w, faces: fs.faces, status });
    }
    let witness = entries.iter().find(|e| e.status == FaceStatus::Nonempty).map(|e| e.w.clone());
    let verdict = if witness.is_some() {
        Verdict::Degenerate
    } else if entries.iter().any(|e| e.status == FaceStatus::Undecided) {
        Verdict::Undecided
    } else {
        Verdict::Generic
    };
    Ok(GenericityReport { verdict, witness, entries })
}

/// Whether `w` is (up to positive scaling) in the set of rays checked by `facial_systems`.
pub fn covers_direction(entries: &[FacialSystem], w: &[BigInt]) -> bool {
    entries.iter().any(|e| e.cone.contains(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ivec;
    use crate::sparse::polynomial::parse_polynomial;

    fn mixed() -> PolySystem {
        PolySystem::parse(
            &["x", "y"],
            &["x + 2y + 3xy + 5x^2y + 7y^2 + 11xy^2", "1 + 3xy + 9x^2y + 27xy^2"],
        )
        .unwrap()
    }

    fn xy() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn newton_polytopes() {
        let f = parse_polynomial("x^2y+2xy^2-1+xy", &xy()).unwrap();
        let p = newton_polytope(&f).unwrap();
        assert_eq!(p.vertices.len(), 3);
        assert!(p.contains_int(&ivec(&[1, 1])));
        assert!(p.facets.iter().all(|h| linalg::dot_iq(&h.normal, &linalg::to_q(&ivec(&[1, 1]))) < h.offset));
        assert_eq!(kushnirenko_bound(&f.support).unwrap(), BigInt::from(3));
        let m = parse_polynomial("3x^2y", &xy()).unwrap();
        assert_eq!(newton_polytope(&m).unwrap().dim, 0);
    }

    #[test]
    fn bounds() {
        assert_eq!(bernstein_bound(&mixed()).unwrap(), BigInt::from(6));
        let dense = PolySystem::parse(&["x", "y"], &["1 + x + y + x^2 + xy + y^2", "1 + x + y + x^2 + x^2y + x^3 + y^3 + xy + y^2 + xy^2"]).unwrap();
        assert_eq!(bernstein_bound(&dense).unwrap(), BigInt::from(6));
        let unit = SupportSet::from_points(2, &[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(kushnirenko_bound(&unit).unwrap(), BigInt::from(1));
    }

    #[test]
    fn bernstein_is_translation_invariant() {
        let s = mixed();
        let mut t = s.clone();
        t.polynomials[1] = t.polynomials[1].shifted(&ivec(&[-2, 3]));
        assert_eq!(bernstein_bound(&s).unwrap(), bernstein_bound(&t).unwrap());
    }

    #[test]
    fn initial_forms() {
        let s = mixed();
        let f = &s.polynomials[0];
        assert_eq!(initial_form(f, &ivec(&[1, 1])).unwrap(), parse_polynomial("5x^2y + 11xy^2", &xy()).unwrap());
        assert_eq!(&initial_form(f, &ivec(&[0, 0])).unwrap(), f);
        assert_eq!(initial_form(&s.polynomials[1], &ivec(&[-1, -1])).unwrap(), parse_polynomial("1", &xy()).unwrap());
        let init = initial_form(f, &ivec(&[2, -1])).unwrap();
        let exposed = polytope::exposed_subset(&f.support, &ivec(&[2, -1])).unwrap();
        assert_eq!(init.support.points, exposed.points);
    }

    #[test]
    fn facial_systems_of_segments() {
        let s = PolySystem::parse(&["x"], &["1 + x", "2 - 3x"]).unwrap();
        let fs = facial_systems(&s).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].w, ivec(&[-1]));
        assert_eq!(fs[0].faces[0], parse_polynomial("1", &["x".to_string()]).unwrap());
        assert_eq!(fs[1].w, ivec(&[1]));
        assert!(fs[1].faces.iter().all(|f| f.is_monomial()));
    }

    #[test]
    fn facial_systems_of_the_mixed_example() {
        let s = mixed();
        let fs = facial_systems(&s).unwrap();
        let e = fs.iter().find(|e| e.w == ivec(&[-1, -1])).unwrap();
        assert_eq!(e.faces[0], parse_polynomial("x + 2y", &xy()).unwrap());
        assert_eq!(e.faces[1], parse_polynomial("1", &xy()).unwrap());
        for f in &s.polynomials {
            let fan = cones::normal_fan(&newton_polytope(f).unwrap()).unwrap();
            for r in fan.rays() {
                assert!(covers_direction(&fs, &r));
            }
        }
        let r = genericity_check(&s).unwrap();
        assert_eq!(r.verdict, Verdict::Generic);
    }

    #[test]
    fn unmixed_refinement_is_the_normal_fan() {
        let s = PolySystem::parse(&["x", "y"], &["1 + x + y + xy", "2 - x + 3y - xy"]).unwrap();
        let fs = facial_systems(&s).unwrap();
        let fan = cones::normal_fan(&newton_polytope(&s.polynomials[0]).unwrap()).unwrap();
        assert_eq!(fs.len(), fan.cones.len() - 1);
    }

    #[test]
    fn parallel_segments_are_degenerate() {
        let s = PolySystem::parse(&["x", "y"], &["1 + xy", "xy + x^2y^2"]).unwrap();
        assert_eq!(bernstein_bound(&s).unwrap(), BigInt::zero());
        assert!(matches!(facial_systems(&s), Err(Error::LowerDimensional { .. })));
        let r = genericity_check(&s).unwrap();
        assert_eq!(r.verdict, Verdict::Degenerate);
        let w = r.witness.unwrap();
        let e = r.entries.iter().find(|e| e.w == w).unwrap();
        assert_eq!(e.faces, s.polynomials);
    }

    #[test]
    fn univariate_systems_are_generic() {
        let s = PolySystem::parse(&["x"], &["1 + 5x^2 - 7x^3"]).unwrap();
        assert_eq!(genericity_check(&s).unwrap().verdict, Verdict::Generic);
    }

    #[test]
    fn degenerate_edge() {
        // Both edges with outer normal (1, 1) carry (x - y) as a factor.
        let s = PolySystem::parse(&["x", "y"], &["1 + x^2 - y^2", "2 + x - y + 3x^2 - 3y^2"]).unwrap();
        let r = genericity_check(&s).unwrap();
        assert_eq!(r.verdict, Verdict::Degenerate);
    }

    #[test]
    fn three_variables_are_undecided_unless_monomial() {
        let s = PolySystem::parse(&["x", "y", "z"], &["1 + x + y + z", "1 + 2x + 3y + 5z", "1 + x + 7y + 2z"]).unwrap();
        let r = genericity_check(&s).unwrap();
        assert_eq!(r.verdict, Verdict::Undecided);
        assert!(r.entries.iter().any(|e| e.status == FaceStatus::Empty));
    }
}
