//! Rational polyhedral cones, fans, Hilbert bases and the toric ideals of affine patches.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dd;
use crate::error::{Error, Result};
use crate::lattice::{self, IntVector, SupportSet};
use crate::linalg::{self, Q};
use crate::polytope::{self, Polytope};
use crate::toric::{toric_groebner_with, GroebnerBasis, GroebnerConfig, TermOrder};

/// Largest ambient dimension accepted by [`hilbert_basis`].
pub const HILBERT_BASIS_MAX_DIM: usize = 4;

/// Seed for the random directions used to test fan completeness.
pub const COMPLETENESS_SEED: u64 = 0x746f_7269_635f_6b69;
const COMPLETENESS_SAMPLES: usize = 256;

/// A cone `cone(rays) + lineality`, stored with its facet description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalCone {
    pub ambient_dim: usize,
    /// Primitive generators of the cone modulo its lineality space, orthogonal to it.
    pub rays: Vec<IntVector>,
    /// Inner facet normals `a`, so the cone lies in `{x : a.x >= 0}`.
    pub halfspaces: Vec<IntVector>,
    /// Normals of the linear span: `e.x = 0` on the cone.
    pub equations: Vec<IntVector>,
    /// Basis of the saturated lattice of the lineality space.
    pub lineality: Vec<IntVector>,
    pub lineality_dim: usize,
    pub dim: usize,
}

fn negate(v: &[BigInt]) -> IntVector {
    v.iter().map(|x| -x).collect()
}

/// The primitive integer direction of `g` minus its projection onto `span(basis)`.
fn project_away(g: &[BigInt], basis: &[IntVector]) -> IntVector {
    if basis.is_empty() {
        return linalg::primitive(g);
    }
    let gram: Vec<Vec<Q>> = basis
        .iter()
        .map(|b| basis.iter().map(|c| linalg::qi(&linalg::dot_int(b, c))).collect())
        .collect();
    let rhs: Vec<Q> = basis.iter().map(|b| linalg::qi(&linalg::dot_int(b, g))).collect();
    let c = linalg::solve(&gram, &rhs).expect("independent basis");
    let mut v: Vec<Q> = linalg::to_q(g);
    for (ci, b) in c.iter().zip(basis) {
        for (x, bi) in v.iter_mut().zip(b) {
            *x -= ci * linalg::qi(bi);
        }
    }
    linalg::primitive(&linalg::clear_denominators(&v))
}

impl RationalCone {
    /// The cone generated by `gens`. Zero generators are ignored.
    pub fn from_rays(ambient_dim: usize, gens: &[IntVector]) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.len() != ambient_dim) {
            return Err(Error::DimensionMismatch { expected: ambient_dim, found: g.len() });
        }
        let cf = dd::cone_facets(gens, ambient_dim);
        let dim = ambient_dim - cf.equations.len();
        let mut constraints: Vec<IntVector> = cf.equations.clone();
        constraints.extend(cf.facets.iter().cloned());
        let qrows: Vec<Vec<Q>> = constraints.iter().map(|r| linalg::to_q(r)).collect();
        let lin_vectors: Vec<IntVector> = linalg::nullspace(&qrows, ambient_dim)
            .iter()
            .map(|v| linalg::clear_denominators(v))
            .collect();
        let lineality = if lin_vectors.is_empty() {
            Vec::new()
        } else {
            lattice::saturated_basis(&lin_vectors, ambient_dim)
        };
        let lineality_dim = lineality.len();
        let eq_q: Vec<Vec<Q>> = cf.equations.iter().map(|r| linalg::to_q(r)).collect();
        let mut rays: Vec<IntVector> = gens
            .iter()
            .filter(|g| cf.facets.iter().any(|f| !linalg::dot_int(f, g).is_zero()))
            .filter(|g| {
                let mut rows = eq_q.clone();
                rows.extend(
                    cf.facets
                        .iter()
                        .filter(|f| linalg::dot_int(f, g).is_zero())
                        .map(|f| linalg::to_q(f)),
                );
                linalg::rank(&rows) + lineality_dim + 1 == ambient_dim
            })
            .map(|g| project_away(g, &lineality))
            .collect();
        rays.sort();
        rays.dedup();
        Ok(RationalCone {
            ambient_dim,
            rays,
            halfspaces: cf.facets,
            equations: cf.equations,
            lineality,
            lineality_dim,
            dim,
        })
    }

    pub fn from_i64(ambient_dim: usize, gens: &[Vec<i64>]) -> Result<Self> {
        let g: Vec<IntVector> = gens.iter().map(|v| lattice::ivec(v)).collect();
        Self::from_rays(ambient_dim, &g)
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self::from_rays(ambient_dim, &[]).expect("zero cone")
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality_dim == 0
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim
    }

    /// Rays together with both signs of the lineality basis.
    pub fn generators(&self) -> Vec<IntVector> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(negate(l));
        }
        g
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.equations.iter().all(|e| linalg::dot_int(e, x).is_zero())
            && self.halfspaces.iter().all(|a| !linalg::dot_int(a, x).is_negative())
    }

    pub fn contains_cone(&self, other: &RationalCone) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    /// Whether `x` lies in the relative interior.
    pub fn contains_in_relative_interior(&self, x: &[BigInt]) -> bool {
        self.equations.iter().all(|e| linalg::dot_int(e, x).is_zero())
            && self.halfspaces.iter().all(|a| linalg::dot_int(a, x).is_positive())
    }

    /// The primitive sum of the rays and the lineality basis, a relative-interior point.
    pub fn interior_vector(&self) -> IntVector {
        let mut s = vec![BigInt::zero(); self.ambient_dim];
        for r in self.rays.iter().chain(&self.lineality) {
            for (x, y) in s.iter_mut().zip(r) {
                *x += y;
            }
        }
        if s.iter().all(|x| x.is_zero()) {
            return s;
        }
        linalg::primitive(&s)
    }

    /// All faces, including the cone itself and its lineality space.
    pub fn faces(&self) -> Vec<RationalCone> {
        let all: BTreeSet<usize> = (0..self.rays.len()).collect();
        let tight: Vec<BTreeSet<usize>> = self
            .halfspaces
            .iter()
            .map(|a| all.iter().copied().filter(|&i| linalg::dot_int(a, &self.rays[i]).is_zero()).collect())
            .collect();
        let mut sets: BTreeSet<BTreeSet<usize>> = BTreeSet::from([all.clone(), BTreeSet::new()]);
        let mut frontier: Vec<BTreeSet<usize>> = tight.clone();
        while let Some(s) = frontier.pop() {
            if !sets.insert(s.clone()) {
                continue;
            }
            for t in &tight {
                let i: BTreeSet<usize> = s.intersection(t).copied().collect();
                if !sets.contains(&i) {
                    frontier.push(i);
                }
            }
        }
        let mut out: Vec<RationalCone> = sets
            .iter()
            .map(|s| {
                let mut g: Vec<IntVector> = s.iter().map(|&i| self.rays[i].clone()).collect();
                for l in &self.lineality {
                    g.push(l.clone());
                    g.push(negate(l));
                }
                RationalCone::from_rays(self.ambient_dim, &g).expect("same dimension")
            })
            .collect();
        out.sort_by(cone_order);
        out.dedup();
        out
    }

    /// Whether `self` is a face of `other`.
    pub fn is_face_of(&self, other: &RationalCone) -> bool {
        if !other.contains_cone(self) {
            return false;
        }
        let tight: Vec<&IntVector> = other
            .halfspaces
            .iter()
            .filter(|a| self.generators().iter().all(|g| linalg::dot_int(a, g).is_zero()))
            .collect();
        other
            .rays
            .iter()
            .filter(|r| tight.iter().all(|a| linalg::dot_int(a, r).is_zero()))
            .all(|r| self.contains(r))
            && other.lineality.iter().all(|l| self.contains(l) && self.contains(&negate(l)))
    }
}

fn cone_order(a: &RationalCone, b: &RationalCone) -> std::cmp::Ordering {
    (a.dim, &a.rays, &a.lineality).cmp(&(b.dim, &b.rays, &b.lineality))
}

/// `sigma^v = {x : w.x >= 0 for all w in sigma}`.
pub fn dual_cone(sigma: &RationalCone) -> RationalCone {
    let mut gens = sigma.halfspaces.clone();
    for e in &sigma.equations {
        gens.push(e.clone());
        gens.push(negate(e));
    }
    RationalCone::from_rays(sigma.ambient_dim, &gens).expect("same dimension")
}

/// Intersection of cones in a common ambient space.
pub fn intersect(cones: &[&RationalCone]) -> Result<RationalCone> {
    let Some(first) = cones.first() else {
        return Err(Error::InvalidInput("intersection of no cones".into()));
    };
    let n = first.ambient_dim;
    let mut gens = Vec::new();
    for c in cones {
        if c.ambient_dim != n {
            return Err(Error::DimensionMismatch { expected: n, found: c.ambient_dim });
        }
        gens.extend(dual_cone(c).generators());
    }
    Ok(dual_cone(&RationalCone::from_rays(n, &gens)?))
}

/// The minimal generating set of the semigroup `sigma ∩ Z^n`, sorted in decreasing
/// lexicographic order.
pub fn hilbert_basis(sigma: &RationalCone) -> Result<SupportSet> {
    if !sigma.is_pointed() {
        return Err(Error::NotPointed(sigma.lineality_dim));
    }
    let n = sigma.ambient_dim;
    if n > HILBERT_BASIS_MAX_DIM {
        return Err(Error::Unsupported(format!(
            "Hilbert bases are limited to dimension {HILBERT_BASIS_MAX_DIM}"
        )));
    }
    // Every irreducible element lies in the zonotope of the rays, inside this box.
    let bound = |k: usize, f: fn(BigInt, BigInt) -> BigInt| -> Result<i64> {
        sigma
            .rays
            .iter()
            .map(|r| f(r[k].clone(), BigInt::zero()))
            .sum::<BigInt>()
            .to_i64()
            .ok_or(Error::Overflow)
    };
    let lo: Vec<i64> = (0..n).map(|k| bound(k, BigInt::min)).collect::<Result<_>>()?;
    let hi: Vec<i64> = (0..n).map(|k| bound(k, BigInt::max)).collect::<Result<_>>()?;
    let w: IntVector = (0..n).map(|k| sigma.halfspaces.iter().map(|a| &a[k]).sum()).collect();
    let mut candidates: Vec<(BigInt, IntVector)> = Vec::new();
    if !sigma.rays.is_empty() {
        let mut x = lo.clone();
        loop {
            let xb: IntVector = x.iter().map(|&v| BigInt::from(v)).collect();
            if xb.iter().any(|v| !v.is_zero()) && sigma.contains(&xb) {
                candidates.push((linalg::dot_int(&w, &xb), xb));
            }
            let mut k = 0;
            while k < n {
                x[k] += 1;
                if x[k] <= hi[k] {
                    break;
                }
                x[k] = lo[k];
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
    candidates.sort();
    // w is positive on the nonzero points of the cone, so a decomposition of x only
    // involves basis elements found earlier.
    let mut basis: Vec<IntVector> = Vec::new();
    for (_, x) in candidates {
        let reducible = basis.iter().any(|g| {
            let d: IntVector = x.iter().zip(g).map(|(a, b)| a - b).collect();
            sigma.contains(&d)
        });
        if !reducible {
            basis.push(x);
        }
    }
    basis.sort_by(|a, b| b.cmp(a));
    SupportSet::new(n, basis)
}

/// Generators of the semigroup `sigma^v ∩ Z^n` used as variables of the patch ideal:
/// a lattice basis of the lineality space, its negatives, then lifts of the Hilbert basis
/// of the pointed quotient.
pub fn affine_patch_generators(sigma: &RationalCone) -> Result<SupportSet> {
    let dual = dual_cone(sigma);
    let n = dual.ambient_dim;
    if dual.is_pointed() {
        return hilbert_basis(&dual);
    }
    let lin = dual.lineality.clone();
    let k = lin.len();
    let comp = lattice::complete_basis(&lin, n);
    // Columns of `full` are the new basis; coordinates come from its inverse.
    let full: Vec<&IntVector> = lin.iter().chain(&comp).collect();
    let m: Vec<Vec<Q>> = (0..n).map(|i| full.iter().map(|b| linalg::qi(&b[i])).collect()).collect();
    let inv = linalg::inverse(&m).expect("unimodular basis");
    let quotient = |x: &IntVector| -> IntVector {
        (k..n)
            .map(|j| linalg::dot_iq(x, &inv[j]).to_integer())
            .collect()
    };
    let qrays: Vec<IntVector> = dual.rays.iter().map(quotient).collect();
    let qcone = RationalCone::from_rays(n - k, &qrays)?;
    let qbasis = hilbert_basis(&qcone)?;
    let mut points: Vec<IntVector> = lin.clone();
    points.extend(lin.iter().map(|l| negate(l)));
    for h in &qbasis.points {
        let mut p = vec![BigInt::zero(); n];
        for (c, b) in h.iter().zip(&comp) {
            for (x, y) in p.iter_mut().zip(b) {
                *x += c * y;
            }
        }
        points.push(p);
    }
    SupportSet::new(n, points)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatchIdeal {
    pub generators: SupportSet,
    pub gb: GroebnerBasis,
}

/// The toric ideal of the affine patch `V_sigma`, with variables indexed by
/// [`affine_patch_generators`]. The order must have one variable per generator.
pub fn affine_patch_ideal(sigma: &RationalCone, order: &TermOrder) -> Result<PatchIdeal> {
    affine_patch_ideal_with(sigma, order, &GroebnerConfig::default())
}

pub fn affine_patch_ideal_with(
    sigma: &RationalCone,
    order: &TermOrder,
    config: &GroebnerConfig,
) -> Result<PatchIdeal> {
    let generators = affine_patch_generators(sigma)?;
    let gb = toric_groebner_with(&generators, order, config)?;
    Ok(PatchIdeal { generators, gb })
}

/// A fan, closed under faces, with cones sorted by dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub ambient_dim: usize,
    pub cones: Vec<RationalCone>,
    /// Pairs `(i, j)` with cone `i` a proper face of cone `j`.
    pub containment: Vec<(usize, usize)>,
    pub complete: bool,
    /// For a common refinement: for each cone, the index in each source fan of the
    /// smallest cone containing it.
    pub provenance: Option<Vec<Vec<usize>>>,
}

impl Fan {
    /// The fan formed by the given cones and all of their faces.
    pub fn from_cones(ambient_dim: usize, cones: &[RationalCone]) -> Result<Fan> {
        let mut all: Vec<RationalCone> = Vec::new();
        for c in cones {
            if c.ambient_dim != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: c.ambient_dim });
            }
            all.extend(c.faces());
        }
        all.sort_by(cone_order);
        all.dedup();
        let mut containment = Vec::new();
        for (j, big) in all.iter().enumerate() {
            for (i, small) in all.iter().enumerate() {
                if small.dim < big.dim && small.is_face_of(big) {
                    containment.push((i, j));
                }
            }
        }
        let mut fan = Fan { ambient_dim, cones: all, containment, complete: false, provenance: None };
        fan.complete = fan.covers_random_directions(COMPLETENESS_SEED);
        Ok(fan)
    }

    /// Tests completeness on seeded random integer directions.
    pub fn covers_random_directions(&self, seed: u64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..COMPLETENESS_SAMPLES).all(|_| {
            let x: IntVector = (0..self.ambient_dim).map(|_| BigInt::from(rng.gen_range(-1000i64..=1000))).collect();
            self.cones.iter().any(|c| c.contains(&x))
        })
    }

    pub fn maximal_cones(&self) -> Vec<usize> {
        (0..self.cones.len())
            .filter(|&j| !self.containment.iter().any(|&(i, _)| i == j))
            .collect()
    }

    /// All rays of all cones, sorted.
    pub fn rays(&self) -> Vec<IntVector> {
        let set: BTreeSet<IntVector> = self.cones.iter().flat_map(|c| c.rays.iter().cloned()).collect();
        set.into_iter().collect()
    }

    /// Index of the smallest cone containing `x`.
    pub fn locate(&self, x: &[BigInt]) -> Option<usize> {
        self.cones.iter().position(|c| c.contains(x))
    }

    /// Index of the smallest cone containing `c`.
    pub fn locate_cone(&self, c: &RationalCone) -> Option<usize> {
        self.cones.iter().position(|d| d.contains_cone(c))
    }
}

/// Normal fan of a polytope: one cone of outer normals per face. For a lower-dimensional
/// polytope every cone contains the orthogonal complement of its affine hull.
pub fn normal_fan(p: &Polytope) -> Result<Fan> {
    let mut cones = Vec::new();
    for face in polytope::face_lattice(p).iter().flatten() {
        let mut normals: Vec<IntVector> = p
            .facets
            .iter()
            .zip(&p.incidence)
            .filter(|(_, inc)| face.vertex_indices.iter().all(|v| inc.contains(v)))
            .map(|(f, _)| f.normal.clone())
            .collect();
        for e in &p.equations {
            normals.push(e.normal.clone());
            normals.push(negate(&e.normal));
        }
        cones.push(RationalCone::from_rays(p.ambient_dim, &normals)?);
    }
    Fan::from_cones(p.ambient_dim, &cones)
}

/// The fan of all intersections of one cone from each input fan.
pub fn common_refinement(fans: &[&Fan]) -> Result<Fan> {
    let Some(first) = fans.first() else {
        return Err(Error::InvalidInput("refinement of no fans".into()));
    };
    let n = first.ambient_dim;
    for f in fans {
        if f.ambient_dim != n {
            return Err(Error::DimensionMismatch { expected: n, found: f.ambient_dim });
        }
        if !f.complete {
            return Err(Error::InvalidInput("common refinement needs complete fans".into()));
        }
    }
    let maximal: Vec<Vec<usize>> = fans.iter().map(|f| f.maximal_cones()).collect();
    let mut pieces: Vec<RationalCone> = Vec::new();
    let mut idx = vec![0usize; fans.len()];
    loop {
        let cs: Vec<&RationalCone> = idx.iter().enumerate().map(|(k, &i)| &fans[k].cones[maximal[k][i]]).collect();
        let c = intersect(&cs)?;
        if c.is_full_dimensional() {
            pieces.push(c);
        }
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < maximal[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            break;
        }
    }
    let mut fan = Fan::from_cones(n, &pieces)?;
    let provenance = fan
        .cones
        .iter()
        .map(|c| fans.iter().map(|f| f.locate_cone(c).expect("complete fan")).collect())
        .collect();
    fan.provenance = Some(provenance);
    Ok(fan)
}
