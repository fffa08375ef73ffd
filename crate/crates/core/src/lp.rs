//! Exact two-phase simplex for `max c.x` subject to `A x = b`, `x >= 0`.

use num_traits::{Signed, Zero};

use crate::linalg::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpResult {
    Optimal { value: Q, x: Vec<Q> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    obj: Vec<Q>,
    basis: Vec<usize>,
    rhs: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                *x -= &f * p;
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (x, p) in self.obj.iter_mut().zip(&prow) {
                *x -= &f * p;
            }
        }
        self.basis[r] = c;
    }

    fn set_objective(&mut self, c: &[Q]) {
        self.obj = vec![Q::zero(); self.rhs + 1];
        self.obj[..c.len()].clone_from_slice(c);
        for i in 0..self.rows.len() {
            let b = self.basis[i];
            if !self.obj[b].is_zero() {
                let f = self.obj[b].clone();
                for (x, p) in self.obj.iter_mut().zip(&self.rows[i]) {
                    *x -= &f * p;
                }
            }
        }
    }

    /// Runs Bland's rule over columns `< ncols`. Returns false when unbounded.
    fn run(&mut self, ncols: usize) -> bool {
        loop {
            let Some(enter) = (0..ncols).find(|&j| self.obj[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rows[i][self.rhs] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, enter);
        }
    }

    fn value(&self) -> Q {
        -self.obj[self.rhs].clone()
    }
}

pub fn maximize(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> LpResult {
    let m = a.len();
    let n = c.len();
    let rhs = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut r: Vec<Q> = row.iter().map(|x| if flip { -x } else { x.clone() }).collect();
        r.resize(rhs + 1, Q::zero());
        r[n + i] = Q::from_integer(1.into());
        r[rhs] = if flip { -bi } else { bi.clone() };
        rows.push(r);
    }
    let mut t = Tableau { rows, obj: Vec::new(), basis: (n..n + m).collect(), rhs };
    let mut phase1 = vec![Q::zero(); n + m];
    for x in phase1[n..].iter_mut() {
        *x = Q::from_integer((-1).into());
    }
    t.set_objective(&phase1);
    t.run(n + m);
    if t.value().is_negative() {
        return LpResult::Infeasible;
    }
    // Drive artificial variables out of the basis, dropping redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, j);
            } else {
                t.rows.remove(i);
                t.basis.remove(i);
                continue;
            }
        }
        i += 1;
    }
    t.set_objective(c);
    if !t.run(n) {
        return LpResult::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        x[bv] = t.rows[i][rhs].clone();
    }
    LpResult::Optimal { value: t.value(), x }
}

/// Some `x >= 0` with `A x = b`, if one exists.
pub fn feasible_point(a: &[Vec<Q>], b: &[Q], nvars: usize) -> Option<Vec<Q>> {
    match maximize(a, b, &vec![Q::zero(); nvars]) {
        LpResult::Optimal { x, .. } => Some(x),
        _ => None,
    }
}
