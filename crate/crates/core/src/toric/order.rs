//! Term orders on monomials in the variables `z_a`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monomial order. Variable lists name the variables from most to least significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TermOrder {
    Lex(Vec<usize>),
    DegRevLex(Vec<usize>),
    /// Reverse lexicographic comparison alone. Only a term order when used as the
    /// tie-break of a weight with positive entries.
    RevLex(Vec<usize>),
    /// Compare by `weights . a` first, then by `tie`.
    Weighted { weights: Vec<i64>, tie: Box<TermOrder> },
}

impl TermOrder {
    /// Degree reverse lexicographic with `z_0 > z_1 > ... > z_{n-1}`.
    pub fn degrevlex(n: usize) -> Self {
        TermOrder::DegRevLex((0..n).collect())
    }

    pub fn lex(n: usize) -> Self {
        TermOrder::Lex((0..n).collect())
    }

    pub fn weighted(weights: Vec<i64>, tie: TermOrder) -> Self {
        TermOrder::Weighted { weights, tie: Box::new(tie) }
    }

    pub fn nvars(&self) -> usize {
        match self {
            TermOrder::Lex(v) | TermOrder::DegRevLex(v) | TermOrder::RevLex(v) => v.len(),
            TermOrder::Weighted { weights, .. } => weights.len(),
        }
    }

    /// Checks that variable lists are permutations of `0..n` and weights have length `n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            TermOrder::Lex(v) | TermOrder::DegRevLex(v) | TermOrder::RevLex(v) => {
                let mut s = v.clone();
                s.sort_unstable();
                if s != (0..n).collect::<Vec<_>>() {
                    return Err(Error::InvalidInput(format!(
                        "variable order must be a permutation of 0..{n}"
                    )));
                }
                Ok(())
            }
            TermOrder::Weighted { weights, tie } => {
                if weights.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: weights.len() });
                }
                if weights.iter().any(|&w| w < 0) {
                    return Err(Error::InvalidInput("weights must be nonnegative".into()));
                }
                if matches!(**tie, TermOrder::RevLex(_)) && weights.iter().any(|&w| w == 0) {
                    return Err(Error::InvalidInput(
                        "reverse lexicographic tie-break needs positive weights".into(),
                    ));
                }
                tie.validate(n)
            }
        }
    }

    /// The same order on `n + 1` variables, with the new last variable least significant.
    pub(crate) fn extend_by_one(&self) -> TermOrder {
        let n = self.nvars();
        match self {
            TermOrder::Lex(v) => TermOrder::Lex(v.iter().copied().chain([n]).collect()),
            TermOrder::DegRevLex(v) => TermOrder::DegRevLex(v.iter().copied().chain([n]).collect()),
            TermOrder::RevLex(v) => TermOrder::RevLex(v.iter().copied().chain([n]).collect()),
            TermOrder::Weighted { weights, tie } => TermOrder::Weighted {
                weights: weights.iter().copied().chain([0]).collect(),
                tie: Box::new(tie.extend_by_one()),
            },
        }
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            TermOrder::Lex(vars) => {
                for &v in vars {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            TermOrder::DegRevLex(vars) => {
                let da: u64 = a.iter().map(|&x| x as u64).sum();
                let db: u64 = b.iter().map(|&x| x as u64).sum();
                da.cmp(&db).then_with(|| revlex(vars, a, b))
            }
            TermOrder::RevLex(vars) => revlex(vars, a, b),
            TermOrder::Weighted { weights, tie } => {
                let wa: i128 = weights.iter().zip(a).map(|(&w, &x)| w as i128 * x as i128).sum();
                let wb: i128 = weights.iter().zip(b).map(|(&w, &x)| w as i128 * x as i128).sum();
                wa.cmp(&wb).then_with(|| tie.cmp(a, b))
            }
        }
    }
}

fn revlex(vars: &[usize], a: &[u32], b: &[u32]) -> Ordering {
    for &v in vars.iter().rev() {
        match a[v].cmp(&b[v]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_basics() {
        let o = TermOrder::degrevlex(3);
        // x^2 > xy > y^2 > xz > yz > z^2
        let mons = [[2, 0, 0], [1, 1, 0], [0, 2, 0], [1, 0, 1], [0, 1, 1], [0, 0, 2]];
        for w in mons.windows(2) {
            assert_eq!(o.cmp(&w[0], &w[1]), Ordering::Greater);
        }
        assert_eq!(o.cmp(&[0, 0, 1], &[1, 1, 0]), Ordering::Less);
    }

    #[test]
    fn lex_and_weighted() {
        let o = TermOrder::Lex(vec![1, 0]);
        assert_eq!(o.cmp(&[5, 0], &[0, 1]), Ordering::Less);
        let w = TermOrder::weighted(vec![1, 3], TermOrder::lex(2));
        assert_eq!(w.cmp(&[2, 0], &[0, 1]), Ordering::Less);
        assert_eq!(w.cmp(&[3, 0], &[0, 1]), Ordering::Greater);
        assert!(TermOrder::weighted(vec![0, 1], TermOrder::RevLex(vec![0, 1])).validate(2).is_err());
        assert!(TermOrder::Lex(vec![0, 0]).validate(2).is_err());
    }

    #[test]
    fn multiplicative() {
        let o = TermOrder::degrevlex(3);
        let a = [1, 0, 2];
        let b = [0, 2, 1];
        let c = [3, 1, 1];
        let ac: Vec<u32> = a.iter().zip(&c).map(|(x, y)| x + y).collect();
        let bc: Vec<u32> = b.iter().zip(&c).map(|(x, y)| x + y).collect();
        assert_eq!(o.cmp(&a, &b), o.cmp(&ac, &bc));
    }
}
