//! Independent oracles shared by the integration targets.
#![allow(dead_code)]

use itertools::Itertools;
use misobc::{ratio, Rational};
use rand::Rng;

/// `K / Σ_{k=1}^{K} 1/min{k,M}`, straight from the definition.
pub fn lambda(m: usize, k: usize) -> Rational {
    let mut h = Rational::zero();
    for pos in 1..=k {
        h = h + Rational::from(pos.min(m)).recip();
    }
    Rational::from(k) / h
}

/// Solves the square system `a x = b` exactly; `None` when singular.
pub fn solve_exact(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] = &a[r][c] - t;
            }
            let t = &f * &b[col];
            b[r] = &b[r] - t;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Every constraint of the region as `(row, rhs)` with `row·d ≤ rhs`:
/// one per permutation, the unit box, nonnegativity and `Σ d ≤ min{K,M}`.
pub fn region_halfspaces(m: usize, k: usize, alpha: &[Rational]) -> Vec<(Vec<Rational>, Rational)> {
    let mk = Rational::from(m.min(k));
    let mut out = Vec::new();
    for perm in (0..k).permutations(k) {
        let mut row = vec![Rational::zero(); k];
        let mut rhs = Rational::one();
        for (pos, &u) in perm.iter().enumerate() {
            let w = Rational::from((pos + 1).min(m)).recip();
            row[u] = w.clone();
            if pos + 1 < k {
                rhs = rhs + (w - mk.recip()) * &alpha[u];
            }
        }
        out.push((row, rhs));
    }
    for u in 0..k {
        let mut e = vec![Rational::zero(); k];
        e[u] = Rational::one();
        out.push((e.clone(), Rational::one()));
        out.push((e.iter().map(|x| -x.clone()).collect(), Rational::zero()));
    }
    out.push((vec![Rational::one(); k], mk));
    out
}

/// Maximum of `Σ d` by enumerating every vertex of the region: each choice of
/// `K` constraints made tight, kept when the solution is feasible.
pub fn lp_by_vertices(m: usize, k: usize, alpha: &[Rational]) -> Rational {
    let hs = region_halfspaces(m, k, alpha);
    let mut best: Option<Rational> = None;
    for pick in (0..hs.len()).combinations(k) {
        let a = pick.iter().map(|&i| hs[i].0.clone()).collect();
        let b = pick.iter().map(|&i| hs[i].1.clone()).collect();
        let Some(x) = solve_exact(a, b) else { continue };
        let feasible = hs.iter().all(|(row, rhs)| {
            let lhs: Rational = row.iter().zip(&x).map(|(r, v)| r * v).sum();
            lhs <= *rhs
        });
        if feasible {
            let s: Rational = x.iter().sum();
            if best.as_ref().is_none_or(|b| s > *b) {
                best = Some(s);
            }
        }
    }
    best.expect("origin is a vertex")
}

/// Random rational in `[0, 1]` with denominator at most `max_den`.
pub fn unit_rational<R: Rng>(rng: &mut R, max_den: i64) -> Rational {
    let q = rng.random_range(1..=max_den);
    ratio(rng.random_range(0..=q), q)
}

/// Random integer budgets `b_k ∈ [0, n]` with `Σ b_k = s·n`, returned as
/// fractions `b_k / n`.
pub fn feasible_budgets<R: Rng>(rng: &mut R, k: usize, s: usize, n: usize) -> Vec<Rational> {
    let mut b = vec![0usize; k];
    let mut left = s * n;
    while left > 0 {
        let u = rng.random_range(0..k);
        if b[u] < n {
            b[u] += 1;
            left -= 1;
        }
    }
    b.into_iter().map(|x| ratio(x as i64, n as i64)).collect()
}
