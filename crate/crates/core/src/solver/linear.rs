//! Affine systems over `F_p` with certificates of inconsistency.

use serde::{Deserialize, Serialize};

use crate::residue::{add_mod, inv_mod, mul_mod, sub_mod};

/// One equation `coeffs . x = rhs (mod p)`, tagged with the relator and
/// matrix entry (0-based) it was read off.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub coeffs: Vec<u64>,
    pub rhs: u64,
    pub relator: usize,
    pub entry: [usize; 2],
}

/// An affine system over the prime field `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSystemFp {
    pub p: u64,
    pub num_vars: usize,
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// One value per variable satisfying every row.
    Solution(Vec<u64>),
    /// One multiplier per row; the weighted sum of rows reads `0 = 1`.
    Inconsistency(Vec<u64>),
}

impl SolveOutcome {
    pub fn is_consistent(&self) -> bool {
        matches!(self, SolveOutcome::Solution(_))
    }
}

impl AffineSystemFp {
    pub fn new(p: u64, num_vars: usize) -> Self {
        AffineSystemFp {
            p,
            num_vars,
            rows: Vec::new(),
        }
    }

    /// The subsystem made of the listed rows, in the given order.
    pub fn restrict(&self, rows: &[usize]) -> AffineSystemFp {
        AffineSystemFp {
            p: self.p,
            num_vars: self.num_vars,
            rows: rows.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    pub fn is_satisfied_by(&self, x: &[u64]) -> bool {
        x.len() == self.num_vars
            && self.rows.iter().all(|r| {
                let lhs = r.coeffs.iter().zip(x).fold(0, |acc, (&c, &v)| {
                    add_mod(acc, mul_mod(c, v, self.p), self.p)
                });
                lhs == r.rhs % self.p
            })
    }

    /// Whether `multipliers` combine the rows into `0 = c` with `c != 0`.
    pub fn is_refuted_by(&self, multipliers: &[u64]) -> bool {
        if multipliers.len() != self.rows.len()
            || self.rows.iter().any(|r| r.coeffs.len() != self.num_vars)
        {
            return false;
        }
        let p = self.p;
        let mut combined = vec![0u64; self.num_vars];
        let mut rhs = 0u64;
        for (row, &m) in self.rows.iter().zip(multipliers) {
            let m = m % p;
            if m == 0 {
                continue;
            }
            for (acc, &c) in combined.iter_mut().zip(&row.coeffs) {
                *acc = add_mod(*acc, mul_mod(m, c, p), p);
            }
            rhs = add_mod(rhs, mul_mod(m, row.rhs, p), p);
        }
        combined.iter().all(|&c| c == 0) && rhs != 0
    }
}

/// Gauss-Jordan elimination over `F_p`, tracking how each working row was
/// formed from the input rows. Pivots are the first nonzero entry in
/// column order, so results are reproducible.
pub fn solve_affine_fp(sys: &AffineSystemFp) -> SolveOutcome {
    let p = sys.p;
    let m = sys.rows.len();
    let v = sys.num_vars;
    // Working row layout: v coefficients, rhs, then m combination weights.
    let width = v + 1 + m;
    let mut work: Vec<Vec<u64>> = sys
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut w = vec![0u64; width];
            for (dst, &c) in w.iter_mut().zip(&r.coeffs) {
                *dst = c % p;
            }
            w[v] = r.rhs % p;
            w[v + 1 + i] = 1;
            w
        })
        .collect();

    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..v {
        let Some(found) = (next..m).find(|&r| work[r][col] != 0) else {
            continue;
        };
        work.swap(next, found);
        let inv = inv_mod(work[next][col], p).expect("nonzero in a field");
        for x in work[next].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for r in 0..m {
            if r == next || work[r][col] == 0 {
                continue;
            }
            let f = work[r][col];
            let (pivot_row, target) = if r < next {
                let (a, b) = work.split_at_mut(next);
                (&b[0], &mut a[r])
            } else {
                let (a, b) = work.split_at_mut(r);
                (&a[next], &mut b[0])
            };
            for (t, &s) in target.iter_mut().zip(pivot_row.iter()) {
                *t = sub_mod(*t, mul_mod(f, s, p), p);
            }
        }
        pivots.push((next, col));
        next += 1;
    }

    if let Some(bad) = work[next..].iter().find(|w| w[v] != 0) {
        // Scale so the combination reads 0 = 1.
        let inv = inv_mod(bad[v], p).expect("nonzero in a field");
        let multipliers = bad[v + 1..].iter().map(|&c| mul_mod(c, inv, p)).collect();
        return SolveOutcome::Inconsistency(multipliers);
    }
    let mut x = vec![0u64; v];
    for (row, col) in pivots {
        x[col] = work[row][v];
    }
    SolveOutcome::Solution(x)
}

/// Greedily drops rows from the support of an inconsistency certificate
/// while the remainder stays inconsistent, then re-solves the survivors.
/// The result is inclusion-minimal.
pub fn minimize_certificate(sys: &AffineSystemFp, multipliers: &[u64]) -> Vec<u64> {
    let mut support: Vec<usize> = multipliers
        .iter()
        .enumerate()
        .filter(|(_, &m)| m % sys.p != 0)
        .map(|(i, _)| i)
        .collect();
    let mut i = 0;
    while i < support.len() {
        let mut trial = support.clone();
        trial.remove(i);
        if !solve_affine_fp(&sys.restrict(&trial)).is_consistent() {
            support = trial;
        } else {
            i += 1;
        }
    }
    let SolveOutcome::Inconsistency(local) = solve_affine_fp(&sys.restrict(&support)) else {
        unreachable!("support stays inconsistent");
    };
    let mut out = vec![0u64; sys.rows.len()];
    for (&row, &m) in support.iter().zip(&local) {
        out[row] = m;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(coeffs: &[u64], rhs: u64) -> Row {
        Row {
            coeffs: coeffs.to_vec(),
            rhs,
            relator: 0,
            entry: [0, 0],
        }
    }

    fn system(p: u64, rows: Vec<Row>) -> AffineSystemFp {
        AffineSystemFp {
            p,
            num_vars: rows.first().map_or(0, |r| r.coeffs.len()),
            rows,
        }
    }

    #[test]
    fn empty_system_is_solved_by_zero() {
        let sys = AffineSystemFp::new(3, 4);
        assert_eq!(solve_affine_fp(&sys), SolveOutcome::Solution(vec![0; 4]));
    }

    #[test]
    fn contradictory_pair() {
        let sys = system(2, vec![row(&[1], 1), row(&[1], 0)]);
        let SolveOutcome::Inconsistency(m) = solve_affine_fp(&sys) else {
            panic!("expected inconsistency");
        };
        assert_eq!(m, vec![1, 1]);
        assert!(sys.is_refuted_by(&m));
    }

    #[test]
    fn solves_consistent_system() {
        // x + 2y = 1, 2x + y = 2 over F_5 -> x = 1, y = 0.
        let sys = system(5, vec![row(&[1, 2], 1), row(&[2, 1], 2)]);
        let SolveOutcome::Solution(x) = solve_affine_fp(&sys) else {
            panic!("expected solution");
        };
        assert!(sys.is_satisfied_by(&x));
        assert_eq!(x, vec![1, 0]);
    }

    #[test]
    fn underdetermined_system() {
        let sys = system(3, vec![row(&[1, 1, 0], 2), row(&[2, 2, 0], 1)]);
        let SolveOutcome::Solution(x) = solve_affine_fp(&sys) else {
            panic!("expected solution");
        };
        assert!(sys.is_satisfied_by(&x));
    }

    #[test]
    fn minimization_drops_redundant_rows() {
        let sys = system(
            3,
            vec![
                row(&[1, 0], 1),
                row(&[0, 1], 2),
                row(&[1, 1], 1),
                row(&[2, 0], 2),
            ],
        );
        let SolveOutcome::Inconsistency(m) = solve_affine_fp(&sys) else {
            panic!("expected inconsistency");
        };
        assert!(sys.is_refuted_by(&m));
        let min = minimize_certificate(&sys, &m);
        assert!(sys.is_refuted_by(&min));
        assert_eq!(min.iter().filter(|&&c| c != 0).count(), 3);
        assert!(!sys.is_refuted_by(&[0, 0, 0, 0]));
    }
}
