//! Phase-one simplex for small dense equality systems `A x = b, x >= 0`.
//!
//! Minimizes the sum of artificial variables with Bland's anti-cycling rule,
//! which guarantees termination. On success the basic solution is returned;
//! on failure the simplex multipliers form a Farkas certificate: a row
//! combination that every nonnegative solution satisfies with value at most
//! zero while the right-hand side combines to something positive.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

const MAX_PIVOTS: usize = 1_000_000;

#[derive(Debug, Clone)]
pub(crate) enum PhaseOneOutcome<T> {
    /// Nonzero coordinates `(column, value)` of a feasible basic solution.
    Feasible { solution: Vec<(usize, T)> },
    /// Farkas multipliers, one per original row.
    Infeasible { multipliers: Vec<T> },
}

pub(crate) fn phase_one<T: Scalar>(
    rows: &[Vec<T>],
    rhs: &[T],
    tolerance: T,
) -> Result<PhaseOneOutcome<T>> {
    let m = rows.len();
    let n = if m == 0 { 0 } else { rows[0].len() };
    if m == 0 {
        return Ok(PhaseOneOutcome::Feasible { solution: vec![] });
    }
    let pivot_eps = tolerance * T::from_f64(0.01).unwrap();

    // Normalize to b >= 0, remembering flipped rows for the certificate.
    let mut table: Vec<Vec<T>> = Vec::with_capacity(m);
    let mut b: Vec<T> = Vec::with_capacity(m);
    let mut row_sign: Vec<T> = Vec::with_capacity(m);
    for (row, &r) in rows.iter().zip(rhs) {
        debug_assert_eq!(row.len(), n);
        let sign = if r < T::zero() { -T::one() } else { T::one() };
        let mut extended: Vec<T> = row.iter().map(|&x| x * sign).collect();
        extended.resize(n + m, T::zero());
        table.push(extended);
        b.push(r * sign);
        row_sign.push(sign);
    }
    for (i, row) in table.iter_mut().enumerate() {
        row[n + i] = T::one();
    }

    // Reduced-cost row for minimizing the artificial sum, priced out
    // against the all-artificial starting basis.
    let total = n + m;
    let mut cost = vec![T::zero(); total];
    for j in 0..n {
        let mut s = T::zero();
        for row in &table {
            s += row[j];
        }
        cost[j] = -s;
    }
    let mut objective = b.iter().copied().fold(T::zero(), |a, x| a + x);
    let mut basis: Vec<usize> = (n..n + m).collect();

    for _ in 0..MAX_PIVOTS {
        // Bland: lowest-index column with negative reduced cost.
        let entering = (0..total).find(|&j| cost[j] < -pivot_eps);
        let entering = match entering {
            Some(j) => j,
            None => break,
        };

        // Ratio test; ties resolved toward the lowest basic variable index.
        let mut leaving: Option<usize> = None;
        let mut best_ratio = T::infinity();
        for i in 0..m {
            let a = table[i][entering];
            if a > pivot_eps {
                let ratio = b[i] / a;
                let better = match leaving {
                    None => true,
                    Some(prev) => {
                        ratio < best_ratio - pivot_eps
                            || (ratio <= best_ratio + pivot_eps && basis[i] < basis[prev])
                    }
                };
                if better {
                    best_ratio = ratio;
                    leaving = Some(i);
                }
            }
        }
        let leaving = match leaving {
            // A negative-cost column with no positive entry would make the
            // artificial sum unbounded below, which cannot happen.
            None => return Err(Error::Numerical("phase-one column unbounded")),
            Some(i) => i,
        };

        let pivot = table[leaving][entering];
        for x in table[leaving].iter_mut() {
            *x /= pivot;
        }
        b[leaving] /= pivot;
        let pivot_rhs = b[leaving];
        for i in 0..m {
            if i == leaving {
                continue;
            }
            let factor = table[i][entering];
            if factor == T::zero() {
                continue;
            }
            let (pivot_row, target_row) = if i < leaving {
                let (head, tail) = table.split_at_mut(leaving);
                (&tail[0], &mut head[i])
            } else {
                let (head, tail) = table.split_at_mut(i);
                (&head[leaving], &mut tail[0])
            };
            for j in 0..total {
                target_row[j] -= factor * pivot_row[j];
            }
            b[i] -= factor * pivot_rhs;
        }
        let factor = cost[entering];
        for j in 0..total {
            cost[j] -= factor * table[leaving][j];
        }
        // The objective stores w itself; the entering reduced cost is
        // negative, so w decreases by |factor| * pivot_rhs.
        objective += factor * pivot_rhs;
        basis[leaving] = entering;
    }

    if objective.abs() <= tolerance {
        let mut solution = Vec::new();
        for (i, &var) in basis.iter().enumerate() {
            if var < n && b[i] > T::zero() {
                solution.push((var, b[i]));
            }
        }
        solution.sort_by_key(|&(col, _)| col);
        Ok(PhaseOneOutcome::Feasible { solution })
    } else {
        // Multipliers recovered from the artificial reduced costs
        // (artificial j carries cost 1 and column e_j).
        let multipliers = (0..m)
            .map(|i| (T::one() - cost[n + i]) * row_sign[i])
            .collect();
        Ok(PhaseOneOutcome::Infeasible { multipliers })
    }
}
