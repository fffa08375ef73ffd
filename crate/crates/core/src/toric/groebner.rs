//! Buchberger's algorithm specialized to pure difference binomials, and toric ideals.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::binomial::Binomial;
use super::order::TermOrder;
use crate::dd;
use crate::error::{Error, Result};
use crate::lattice::{self, IntVector, SupportSet};

pub const DEFAULT_BUDGET: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroebnerConfig {
    /// Maximum number of S-pairs examined before giving up.
    pub budget: usize,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig { budget: DEFAULT_BUDGET }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerBasis {
    /// Monic binomials; the leading term of each is `z^{u+}`.
    pub generators: Vec<Binomial>,
    pub order: TermOrder,
    pub reduced: bool,
}

type Mono = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Bin {
    lead: Mono,
    tail: Mono,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// `m / d * t`, with overflow checking.
fn shift(m: &[u32], d: &[u32], t: &[u32]) -> Result<Mono> {
    m.iter()
        .zip(d)
        .zip(t)
        .map(|((x, y), z)| (x - y).checked_add(*z).ok_or(Error::Overflow))
        .collect()
}

fn orient(a: Mono, b: Mono, order: &TermOrder) -> Option<Bin> {
    match order.cmp(&a, &b) {
        Ordering::Equal => None,
        Ordering::Greater => Some(Bin { lead: a, tail: b }),
        Ordering::Less => Some(Bin { lead: b, tail: a }),
    }
}

fn normal_form(mut m: Mono, basis: &[Bin], skip: Option<usize>) -> Result<Mono> {
    'outer: loop {
        for (i, g) in basis.iter().enumerate() {
            if Some(i) != skip && divides(&g.lead, &m) {
                m = shift(&m, &g.lead, &g.tail)?;
                continue 'outer;
            }
        }
        return Ok(m);
    }
}

fn reduce_bin(a: Mono, b: Mono, basis: &[Bin], order: &TermOrder) -> Result<Option<Bin>> {
    let na = normal_form(a, basis, None)?;
    let nb = normal_form(b, basis, None)?;
    Ok(orient(na, nb, order))
}

fn total_degree(m: &[u32]) -> u64 {
    m.iter().map(|&x| x as u64).sum()
}

/// Buchberger with the product and chain criteria, followed by interreduction.
fn buchberger(input: Vec<Bin>, order: &TermOrder, budget: usize) -> Result<Vec<Bin>> {
    let mut basis: Vec<Bin> = Vec::new();
    for g in input {
        if let Some(h) = reduce_bin(g.lead, g.tail, &basis, order)? {
            basis.push(h);
        }
    }
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    let mut examined = 0usize;
    while !pending.is_empty() {
        let &(i, j) = pending
            .iter()
            .min_by(|p, q| {
                let lp = lcm(&basis[p.0].lead, &basis[p.1].lead);
                let lq = lcm(&basis[q.0].lead, &basis[q.1].lead);
                total_degree(&lp)
                    .cmp(&total_degree(&lq))
                    .then_with(|| order.cmp(&lp, &lq))
                    .then_with(|| p.cmp(q))
            })
            .expect("nonempty");
        pending.remove(&(i, j));
        examined += 1;
        if examined > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        let (gi, gj) = (&basis[i], &basis[j]);
        if coprime(&gi.lead, &gj.lead) {
            continue;
        }
        let l = lcm(&gi.lead, &gj.lead);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(&basis[k].lead, &l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let a = shift(&l, &gi.lead, &gi.tail)?;
        let b = shift(&l, &gj.lead, &gj.tail)?;
        if let Some(h) = reduce_bin(a, b, &basis, order)? {
            let k = basis.len();
            basis.push(h);
            for i in 0..k {
                pending.insert((i, k));
            }
        }
    }
    interreduce(basis, order)
}

fn interreduce(mut basis: Vec<Bin>, order: &TermOrder) -> Result<Vec<Bin>> {
    basis.sort_by(|a, b| order.cmp(&a.lead, &b.lead));
    let mut minimal: Vec<Bin> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(k, h)| k != i && divides(&h.lead, &g.lead) && (h.lead != g.lead || k < i));
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let tail = normal_form(minimal[i].tail.clone(), &minimal, Some(i))?;
        out.push(Bin { lead: minimal[i].lead.clone(), tail });
    }
    Ok(out)
}

fn from_binomial(b: &Binomial, order: &TermOrder) -> Result<Option<Bin>> {
    let p = super::binomial::to_u32(&b.plus())?;
    let m = super::binomial::to_u32(&b.minus())?;
    Ok(orient(p, m, order))
}

fn to_binomial(b: &Bin) -> Binomial {
    Binomial {
        u: b.lead.iter().zip(&b.tail).map(|(&x, &y)| BigInt::from(x as i64 - y as i64)).collect(),
    }
}

fn package(basis: Vec<Bin>, order: &TermOrder) -> GroebnerBasis {
    GroebnerBasis { generators: basis.iter().map(to_binomial).collect(), order: order.clone(), reduced: true }
}

/// Reduced Gröbner basis of the ideal generated by the given binomials (no saturation).
pub fn binomial_groebner(gens: &[Binomial], order: &TermOrder, config: &GroebnerConfig) -> Result<GroebnerBasis> {
    let n = gens.first().map_or(order.nvars(), |g| g.u.len());
    order.validate(n)?;
    let bins = gens
        .iter()
        .map(|g| from_binomial(g, order))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(package(buchberger(bins, order, config.budget)?, order))
}

/// Positive integer degrees `w . a` for a `w` strictly positive on every point, when one exists.
pub fn positive_grading(a: &SupportSet) -> Option<Vec<i64>> {
    if a.points.iter().any(|p| p.iter().all(|x| x.is_zero())) {
        return None;
    }
    let cf = dd::cone_facets(&a.points, a.ambient_dim);
    let mut w = vec![BigInt::zero(); a.ambient_dim];
    for f in &cf.facets {
        for (x, y) in w.iter_mut().zip(f) {
            *x += y;
        }
    }
    let degs: Vec<BigInt> = a.points.iter().map(|p| crate::linalg::dot_int(&w, p)).collect();
    if degs.iter().all(|d| d.is_positive()) {
        degs.iter().map(|d| d.to_i64()).collect()
    } else {
        None
    }
}

fn lattice_bins(kernel: &[IntVector], order: &TermOrder) -> Result<Vec<Bin>> {
    Ok(kernel
        .iter()
        .map(|u| from_binomial(&Binomial::new(u.clone()), order))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect())
}

fn saturate_graded(mut gens: Vec<Bin>, degs: &[i64], order: &TermOrder, budget: usize) -> Result<Vec<Bin>> {
    let n = degs.len();
    for i in 0..n {
        let vars: Vec<usize> = (0..n).filter(|&v| v != i).chain([i]).collect();
        let oi = TermOrder::weighted(degs.to_vec(), TermOrder::RevLex(vars));
        let gb = buchberger(gens, &oi, budget)?;
        gens = gb
            .into_iter()
            .filter_map(|mut g| {
                let k = g.lead[i].min(g.tail[i]);
                g.lead[i] -= k;
                g.tail[i] -= k;
                orient(g.lead, g.tail, &oi)
            })
            .collect();
    }
    let reoriented = gens.into_iter().filter_map(|g| orient(g.lead, g.tail, order)).collect();
    buchberger(reoriented, order, budget)
}

fn saturate_eliminating(gens: Vec<Bin>, n: usize, order: &TermOrder, budget: usize) -> Result<Vec<Bin>> {
    let mut weights = vec![0i64; n + 1];
    weights[n] = 1;
    let elim = TermOrder::weighted(weights, order.extend_by_one());
    let mut ext: Vec<Bin> = gens
        .into_iter()
        .filter_map(|g| {
            let mut a = g.lead;
            let mut b = g.tail;
            a.push(0);
            b.push(0);
            orient(a, b, &elim)
        })
        .collect();
    ext.extend(orient(vec![1; n + 1], vec![0; n + 1], &elim));
    let gb = buchberger(ext, &elim, budget)?;
    let kept: Vec<Bin> = gb
        .into_iter()
        .filter(|g| g.lead[n] == 0 && g.tail[n] == 0)
        .filter_map(|mut g| {
            g.lead.pop();
            g.tail.pop();
            orient(g.lead, g.tail, order)
        })
        .collect();
    buchberger(kept, order, budget)
}

/// Reduced Gröbner basis of the toric ideal, starting from the binomials of a given
/// basis of the relation lattice.
pub fn toric_groebner_from_lattice(
    a: &SupportSet,
    order: &TermOrder,
    kernel: &[IntVector],
    config: &GroebnerConfig,
) -> Result<GroebnerBasis> {
    let n = a.points.len();
    order.validate(n)?;
    for u in kernel {
        if u.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: u.len() });
        }
        if a.apply(u)?.iter().any(|x| !x.is_zero()) {
            return Err(Error::NotInIdeal);
        }
    }
    let gens = lattice_bins(kernel, order)?;
    let basis = if gens.is_empty() {
        Vec::new()
    } else {
        match positive_grading(a) {
            Some(degs) => saturate_graded(gens, &degs, order, config.budget)?,
            None => saturate_eliminating(gens, n, order, config.budget)?,
        }
    };
    Ok(package(basis, order))
}

pub fn toric_groebner_with(a: &SupportSet, order: &TermOrder, config: &GroebnerConfig) -> Result<GroebnerBasis> {
    toric_groebner_from_lattice(a, order, &lattice::kernel_basis(a), config)
}

/// Reduced Gröbner basis of the toric ideal `I_A` under `order`.
pub fn toric_groebner(a: &SupportSet, order: &TermOrder) -> Result<GroebnerBasis> {
    toric_groebner_with(a, order, &GroebnerConfig::default())
}

impl GroebnerBasis {
    fn bins(&self) -> Vec<Bin> {
        self.generators
            .iter()
            .filter_map(|g| from_binomial(g, &self.order).ok().flatten())
            .collect()
    }

    /// Normal form of a monomial.
    pub fn normal_form(&self, m: &[BigInt]) -> Result<IntVector> {
        let m = super::binomial::to_u32(m)?;
        let nf = normal_form(m, &self.bins(), None)?;
        Ok(nf.into_iter().map(BigInt::from).collect())
    }

    /// Whether `z^a - z^b` lies in the ideal.
    pub fn contains(&self, a: &[BigInt], b: &[BigInt]) -> Result<bool> {
        Ok(self.normal_form(a)? == self.normal_form(b)?)
    }

    /// Every S-pair of the generators reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> Result<bool> {
        let bins = self.bins();
        for j in 0..bins.len() {
            for i in 0..j {
                let l = lcm(&bins[i].lead, &bins[j].lead);
                let a = shift(&l, &bins[i].lead, &bins[i].tail)?;
                let b = shift(&l, &bins[j].lead, &bins[j].tail)?;
                if reduce_bin(a, b, &bins, &self.order)?.is_some() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// No leading term divides a term of another generator, and each leading term is `z^{u+}`.
    pub fn is_reduced(&self) -> bool {
        let bins = self.bins();
        bins.iter().zip(&self.generators).all(|(b, g)| {
            super::binomial::to_u32(&g.plus()).is_ok_and(|p| p == b.lead)
        }) && bins.iter().enumerate().all(|(i, g)| {
            bins.iter()
                .enumerate()
                .all(|(k, h)| k == i || (!divides(&h.lead, &g.lead) && !divides(&h.lead, &g.tail)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ivec;
    use crate::toric::binomial::binomial_membership;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn gens_set(gb: &GroebnerBasis) -> BTreeSet<IntVector> {
        gb.generators.iter().map(|g| g.u.clone()).collect()
    }

    fn twisted_cubic() -> SupportSet {
        SupportSet::from_columns(&[vec![3, 2, 1, 0], vec![0, 1, 2, 3]]).unwrap()
    }

    #[test]
    fn twisted_cubic_degrevlex() {
        let gb = toric_groebner(&twisted_cubic(), &TermOrder::degrevlex(4)).unwrap();
        // z1^2 - z0 z2, z1 z2 - z0 z3, z2^2 - z1 z3
        let want: BTreeSet<IntVector> =
            [ivec(&[-1, 2, -1, 0]), ivec(&[-1, 1, 1, -1]), ivec(&[0, -1, 2, -1])].into_iter().collect();
        assert_eq!(gens_set(&gb), want);
        assert!(gb.is_reduced());
        assert!(gb.s_pairs_reduce_to_zero().unwrap());
    }

    #[test]
    fn two_by_two_minors() {
        let a = SupportSet::from_points(4, &[vec![1, 0, 1, 0], vec![1, 0, 0, 1], vec![0, 1, 1, 0], vec![0, 1, 0, 1]])
            .unwrap();
        let gb = toric_groebner(&a, &TermOrder::degrevlex(4)).unwrap();
        assert_eq!(gb.generators.len(), 1);
        let u = &gb.generators[0].u;
        assert!(u == &ivec(&[1, -1, -1, 1]) || u == &ivec(&[-1, 1, 1, -1]));
    }

    #[test]
    fn cuspidal_cubic() {
        let a = SupportSet::from_points(1, &[vec![2], vec![3]]).unwrap();
        let gb = toric_groebner(&a, &TermOrder::degrevlex(2)).unwrap();
        // z2^3 - z3^2 up to sign; degrevlex leads with the cube.
        assert_eq!(gens_set(&gb), [ivec(&[3, -2])].into_iter().collect());
    }

    #[test]
    fn units_need_elimination() {
        // Points (1,-1), (-1,1), (1,0): the semigroup has units.
        let a = SupportSet::from_points(2, &[vec![1, -1], vec![-1, 1], vec![1, 0]]).unwrap();
        assert!(positive_grading(&a).is_none());
        let gb = toric_groebner(&a, &TermOrder::degrevlex(3)).unwrap();
        assert_eq!(gens_set(&gb), [ivec(&[1, 1, 0])].into_iter().collect());
        let with_zero = SupportSet::from_points(1, &[vec![0], vec![1]]).unwrap();
        let gb = toric_groebner(&with_zero, &TermOrder::degrevlex(2)).unwrap();
        assert_eq!(gens_set(&gb), [ivec(&[1, 0])].into_iter().collect());
    }

    #[test]
    fn budget_is_enforced() {
        let cfg = GroebnerConfig { budget: 0 };
        let a = SupportSet::from_columns(&[vec![4, 3, 2, 1, 0], vec![0, 1, 2, 3, 4]]).unwrap();
        assert_eq!(toric_groebner_with(&a, &TermOrder::degrevlex(5), &cfg), Err(Error::BudgetExceeded(0)));
    }

    #[test]
    fn saturation_is_needed() {
        // The lattice basis binomials alone generate a smaller ideal for this configuration.
        let a = SupportSet::from_columns(&[vec![4, 3, 1, 0], vec![0, 1, 3, 4]]).unwrap();
        let gb = toric_groebner(&a, &TermOrder::degrevlex(4)).unwrap();
        let lat: Vec<Binomial> = lattice::kernel_basis(&a).into_iter().map(Binomial::new).collect();
        let partial = binomial_groebner(&lat, &TermOrder::degrevlex(4), &GroebnerConfig::default()).unwrap();
        // z1 z2 - z0 z3 lies in the toric ideal.
        assert!(gb.contains(&ivec(&[0, 1, 1, 0]), &ivec(&[1, 0, 0, 1])).unwrap());
        assert!(gens_set(&gb).len() >= gens_set(&partial).len());
        for g in &gb.generators {
            assert!(binomial_membership(&g.plus(), &g.minus(), &a).unwrap());
        }
    }

    fn random_unimodular(k: usize, seed: &[i64]) -> Vec<Vec<i64>> {
        let mut m: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| (i == j) as i64).collect()).collect();
        for (t, &s) in seed.iter().enumerate() {
            if k < 2 {
                break;
            }
            let i = t % k;
            let j = (t + 1 + (s.unsigned_abs() as usize)) % k;
            if i == j {
                continue;
            }
            for c in 0..k {
                let v = m[j][c];
                m[i][c] += s * v;
            }
        }
        m
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn independent_of_lattice_basis(
            pts in proptest::collection::btree_set(proptest::collection::vec(0i64..=3, 2), 3..6),
            seed in proptest::collection::vec(-2i64..=2, 6),
        ) {
            let pts: Vec<Vec<i64>> = pts.into_iter().map(|p| vec![1, p[0], p[1]]).collect();
            let a = SupportSet::from_points(3, &pts).unwrap();
            let order = TermOrder::degrevlex(a.len());
            let gb = toric_groebner(&a, &order).unwrap();
            let k = lattice::kernel_basis(&a);
            let t = random_unimodular(k.len(), &seed);
            let other: Vec<IntVector> = t
                .iter()
                .map(|row| {
                    let mut v = vec![BigInt::zero(); a.len()];
                    for (c, u) in row.iter().zip(&k) {
                        for (x, y) in v.iter_mut().zip(u) {
                            *x += y * c;
                        }
                    }
                    v
                })
                .collect();
            let gb2 = toric_groebner_from_lattice(&a, &order, &other, &GroebnerConfig::default()).unwrap();
            prop_assert_eq!(gens_set(&gb), gens_set(&gb2));
            prop_assert!(gb.s_pairs_reduce_to_zero().unwrap());
            prop_assert!(gb.is_reduced());
            for g in &gb.generators {
                prop_assert!(binomial_membership(&g.plus(), &g.minus(), &a).unwrap());
                let dp: BigInt = g.plus().iter().sum();
                let dm: BigInt = g.minus().iter().sum();
                prop_assert_eq!(dp, dm);
            }
        }
    }
}
