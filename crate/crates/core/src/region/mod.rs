//! The permutation-indexed DoF region outer bound as a computable polytope.
//!
//! For an ordering `π` of the users, the region requires
//!
//! ```text
//! Σ_k d_π(k) / min{k,M}  <=  1 + Σ_{k<K} (1/min{k,M} − 1/min{K,M}) · ᾱ_π(k)
//! ```
//!
//! together with `d_k <= 1`. User ids and permutations are 1-based
//! throughout this module.

pub mod assignment;
pub mod simplex;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{DoFPoint, SystemConfig};
use crate::rational::Rational;

/// Largest `K` for which the `K!` constraints are enumerated explicitly.
pub const MAX_ENUMERATED_USERS: usize = 6;

/// One inequality of the region, instantiated for a permutation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegionConstraint {
    /// `permutation[k-1]` is the user placed at position `k`.
    pub permutation: Vec<usize>,
    /// Coefficient `1/min{k,M}` applied to `d_π(k)`.
    pub lhs_coeffs: Vec<Rational>,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipVerdict {
    pub inside: bool,
    pub tightest: RegionConstraint,
    /// `rhs − lhs` of the tightest constraint; negative when violated.
    pub slack: Rational,
}

/// `1/min{k,M}` for positions `k = 1..K`.
pub fn position_weights(cfg: SystemConfig) -> Vec<Rational> {
    (1..=cfg.k())
        .map(|k| Rational::from(cfg.streams_at(k)).recip())
        .collect()
}

/// Right-hand-side coefficients `1/min{k,M} − 1/min{K,M}`; zero at `k = K`.
pub fn feedback_weights(cfg: SystemConfig) -> Vec<Rational> {
    let last = Rational::from(cfg.streams_at(cfg.k())).recip();
    position_weights(cfg).into_iter().map(|w| w - &last).collect()
}

fn check_permutation(k: usize, permutation: &[usize]) -> Result<()> {
    if permutation.len() != k {
        return Err(Error::InvalidPermutation(format!(
            "expected {k} entries, got {}",
            permutation.len()
        )));
    }
    let mut seen = vec![false; k];
    for &u in permutation {
        if u == 0 || u > k || std::mem::replace(&mut seen[u - 1], true) {
            return Err(Error::InvalidPermutation(format!(
                "{permutation:?} is not a bijection on 1..={k}"
            )));
        }
    }
    Ok(())
}

fn check_inputs(cfg: SystemConfig, averages: &[Rational], point: Option<&DoFPoint>) -> Result<()> {
    if averages.len() != cfg.k() {
        return Err(Error::Dimension { expected: cfg.k(), got: averages.len() });
    }
    for a in averages {
        a.check_unit_interval()?;
    }
    if let Some(p) = point {
        if p.len() != cfg.k() {
            return Err(Error::Dimension { expected: cfg.k(), got: p.len() });
        }
    }
    Ok(())
}

/// The constraint for one permutation, without a query point.
pub fn constraint_for(
    cfg: SystemConfig,
    averages: &[Rational],
    permutation: &[usize],
) -> Result<RegionConstraint> {
    check_inputs(cfg, averages, None)?;
    check_permutation(cfg.k(), permutation)?;
    let rhs = Rational::one()
        + feedback_weights(cfg)
            .iter()
            .zip(permutation)
            .map(|(c, &u)| c * &averages[u - 1])
            .sum::<Rational>();
    Ok(RegionConstraint {
        permutation: permutation.to_vec(),
        lhs_coeffs: position_weights(cfg),
        rhs,
    })
}

/// `(lhs, rhs)` of the constraint for `permutation` at `point`.
pub fn evaluate_constraint(
    cfg: SystemConfig,
    averages: &[Rational],
    point: &DoFPoint,
    permutation: &[usize],
) -> Result<(Rational, Rational)> {
    check_inputs(cfg, averages, Some(point))?;
    let c = constraint_for(cfg, averages, permutation)?;
    let lhs = c
        .lhs_coeffs
        .iter()
        .zip(permutation)
        .map(|(w, &u)| w * &point.values()[u - 1])
        .sum();
    Ok((lhs, c.rhs))
}

fn verdict(
    cfg: SystemConfig,
    averages: &[Rational],
    point: &DoFPoint,
    permutation: Vec<usize>,
) -> Result<MembershipVerdict> {
    let (lhs, _) = evaluate_constraint(cfg, averages, point, &permutation)?;
    let tightest = constraint_for(cfg, averages, &permutation)?;
    let slack = &tightest.rhs - lhs;
    let in_box = point.values().iter().all(|d| *d <= Rational::one());
    Ok(MembershipVerdict {
        inside: in_box && !slack.is_negative(),
        tightest,
        slack,
    })
}

/// Finds the tightest constraint at `point` by solving a linear assignment
/// problem: placing user `u` at position `k` earns
/// `d_u/min{k,M} − c_k·ᾱ_u`, and the tightest permutation maximizes the total.
/// Ties go to the lexicographically smallest permutation.
pub fn tightest_permutation(
    cfg: SystemConfig,
    averages: &[Rational],
    point: &DoFPoint,
) -> Result<MembershipVerdict> {
    check_inputs(cfg, averages, Some(point))?;
    let w = position_weights(cfg);
    let c = feedback_weights(cfg);
    // cost[user][position], minimized
    let cost: Vec<Vec<Rational>> = (0..cfg.k())
        .map(|u| {
            (0..cfg.k())
                .map(|pos| &c[pos] * &averages[u] - &w[pos] * &point.values()[u])
                .collect()
        })
        .collect();
    let users = assignment::lexicographic_min(&cost);
    verdict(cfg, averages, point, users.into_iter().map(|u| u + 1).collect())
}

/// Exhaustive scan over all `K!` permutations, split across threads by the
/// first user and reduced deterministically (smallest slack, then
/// lexicographically smallest permutation).
pub fn tightest_permutation_brute_force(
    cfg: SystemConfig,
    averages: &[Rational],
    point: &DoFPoint,
) -> Result<MembershipVerdict> {
    check_inputs(cfg, averages, Some(point))?;
    let k = cfg.k();
    let w = position_weights(cfg);
    let c = feedback_weights(cfg);
    let slack_of = |perm: &[usize]| -> Rational {
        perm.iter()
            .enumerate()
            .map(|(pos, &u)| &c[pos] * &averages[u] - &w[pos] * &point.values()[u])
            .sum::<Rational>()
            + Rational::one()
    };
    let best = (0..k)
        .into_par_iter()
        .map(|first| {
            let rest: Vec<usize> = (0..k).filter(|&u| u != first).collect();
            rest.iter()
                .copied()
                .permutations(k - 1)
                .map(|tail| {
                    let mut perm = Vec::with_capacity(k);
                    perm.push(first);
                    perm.extend(tail);
                    (slack_of(&perm), perm)
                })
                .min()
                .expect("nonempty")
        })
        .min()
        .expect("K >= 1");
    verdict(cfg, averages, point, best.1.into_iter().map(|u| u + 1).collect())
}

/// Result of maximizing the sum DoF over the region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LpOptimum {
    pub value: Rational,
    pub argmax: DoFPoint,
}

/// Exact maximum of `Σ d_k` over the region intersected with the box and
/// the full-CSIT ceiling `Σ d_k <= min{K,M}`.
pub fn max_sum_dof_lp(cfg: SystemConfig, averages: &[Rational]) -> Result<LpOptimum> {
    check_inputs(cfg, averages, None)?;
    let k = cfg.k();
    if k > MAX_ENUMERATED_USERS {
        return Err(Error::Unsupported(format!(
            "K={k} exceeds {MAX_ENUMERATED_USERS} for explicit constraint enumeration; \
             use the closed-form sum-DoF outer bound instead"
        )));
    }
    let w = position_weights(cfg);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for perm in (1..=k).permutations(k) {
        let con = constraint_for(cfg, averages, &perm)?;
        let mut row = vec![Rational::zero(); k];
        for (pos, &u) in perm.iter().enumerate() {
            row[u - 1] = w[pos].clone();
        }
        a.push(row);
        b.push(con.rhs);
    }
    for u in 0..k {
        let mut row = vec![Rational::zero(); k];
        row[u] = Rational::one();
        a.push(row);
        b.push(Rational::one());
    }
    a.push(vec![Rational::one(); k]);
    b.push(Rational::from(cfg.min_mk()));

    let sol = simplex::maximize(&vec![Rational::one(); k], &a, &b)?;
    Ok(LpOptimum {
        value: sol.value,
        argmax: DoFPoint::new(sol.x)?,
    })
}

/// The sum-DoF bound obtained by adding the constraints of all `K` cyclic
/// shifts of `ordering`, as an affine function of the averages:
/// `Σ d_k <= constant + Σ_u coeffs[u]·ᾱ_u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineBound {
    pub constant: Rational,
    pub coeffs: Vec<Rational>,
}

pub fn cyclic_sum_bound(cfg: SystemConfig, ordering: &[usize]) -> Result<AffineBound> {
    let k = cfg.k();
    check_permutation(k, ordering)?;
    let w = position_weights(cfg);
    let c = feedback_weights(cfg);
    let mut d_coeff = vec![Rational::zero(); k];
    let mut alpha_coeff = vec![Rational::zero(); k];
    let mut constant = Rational::zero();
    for shift in 0..k {
        for pos in 0..k {
            let u = ordering[(pos + shift) % k] - 1;
            d_coeff[u] += &w[pos];
            alpha_coeff[u] += &c[pos];
        }
        constant += Rational::one();
    }
    // every user sits at every position once, so the d-coefficients agree
    let scale = d_coeff[0].clone();
    if d_coeff.iter().any(|x| *x != scale) {
        return Err(Error::Domain("cyclic shifts did not balance the users".into()));
    }
    Ok(AffineBound {
        constant: constant / &scale,
        coeffs: alpha_coeff.into_iter().map(|x| x / &scale).collect(),
    })
}
