//! Exact dictionary simplex with Bland's rule for
//! `max c·x  s.t.  A x <= b, x >= 0` with `b >= 0`.

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub value: Rational,
    pub x: Vec<Rational>,
    pub pivots: usize,
}

/// The origin is feasible because `b >= 0`, so no phase one is needed.
pub fn maximize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> Result<LpSolution> {
    let n = c.len();
    let m = a.len();
    if b.len() != m {
        return Err(Error::Dimension { expected: m, got: b.len() });
    }
    if let Some(row) = a.iter().find(|row| row.len() != n) {
        return Err(Error::Dimension { expected: n, got: row.len() });
    }
    if let Some(bad) = b.iter().find(|x| x.is_negative()) {
        return Err(Error::Domain(format!("negative right-hand side {bad}")));
    }

    // x_basic[i] = rhs[i] - Σ_j coef[i][j] · x_nonbasic[j]
    // z = z0 + Σ_j obj[j] · x_nonbasic[j]
    let mut coef: Vec<Vec<Rational>> = a.to_vec();
    let mut rhs: Vec<Rational> = b.to_vec();
    let mut obj: Vec<Rational> = c.to_vec();
    let mut z0 = Rational::zero();
    let mut nonbasic: Vec<usize> = (0..n).collect();
    let mut basic: Vec<usize> = (n..n + m).collect();
    let mut pivots = 0usize;

    loop {
        // Bland: entering variable with the smallest index among improving ones
        let entering = (0..n)
            .filter(|&j| obj[j] > Rational::zero())
            .min_by_key(|&j| nonbasic[j]);
        let Some(s) = entering else { break };

        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if coef[i][s] <= Rational::zero() {
                continue;
            }
            let ratio = &rhs[i] / &coef[i][s];
            let better = match &leave {
                None => true,
                Some((r, best)) => ratio < *best || (ratio == *best && basic[i] < basic[*r]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((r, _)) = leave else {
            return Err(Error::Domain("linear program is unbounded".into()));
        };

        let pivot = coef[r][s].clone();
        let inv = pivot.recip();
        rhs[r] = &rhs[r] * &inv;
        for j in 0..n {
            coef[r][j] = if j == s { inv.clone() } else { &coef[r][j] * &inv };
        }
        let (pivot_row, pivot_rhs) = (coef[r].clone(), rhs[r].clone());
        for i in 0..m {
            if i == r || coef[i][s].is_zero() {
                continue;
            }
            let f = coef[i][s].clone();
            rhs[i] = &rhs[i] - &f * &pivot_rhs;
            for j in 0..n {
                coef[i][j] = if j == s {
                    -(&f * &inv)
                } else {
                    &coef[i][j] - &f * &pivot_row[j]
                };
            }
        }
        let f = obj[s].clone();
        z0 = &z0 + &f * &pivot_rhs;
        for j in 0..n {
            obj[j] = if j == s { -(&f * &inv) } else { &obj[j] - &f * &pivot_row[j] };
        }
        std::mem::swap(&mut basic[r], &mut nonbasic[s]);
        pivots += 1;
    }

    let mut x = vec![Rational::zero(); n];
    for (i, &var) in basic.iter().enumerate() {
        if var < n {
            x[var] = rhs[i].clone();
        }
    }
    Ok(LpSolution { value: z0, x, pivots })
}
