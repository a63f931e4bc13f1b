//! Closed-form sum-DoF bounds and optimal characterizations.
//!
//! Everything here is exact. `delta` always denotes a symmetric per-user
//! feedback fraction (perfect current CSIT unless stated otherwise).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::SystemConfig;
use crate::rational::{ratio, Rational};

fn r(n: usize) -> Rational {
    Rational::from(n)
}

fn min_r(a: Rational, b: Rational) -> Rational {
    if a <= b {
        a
    } else {
        b
    }
}

/// Delayed-CSIT (MAT) sum DoF `Λ = K / Σ_{k=1}^{K} 1/min{k,M}`.
pub fn mat_dof(cfg: SystemConfig) -> Rational {
    let denom: Rational = (1..=cfg.k()).map(|k| r(cfg.streams_at(k)).recip()).sum();
    r(cfg.k()) / denom
}

/// `Γ(M, K)`, the delayed-CSIT sum DoF of the round-robin MAT variant used
/// for `M < K`. Uses `0^0 = 1`, so `Γ(1, K) = 1`.
pub fn gamma_dof(cfg: SystemConfig) -> Result<Rational> {
    let (m, k) = (cfg.m(), cfg.k());
    if m >= k {
        return Err(Error::Domain(format!(
            "Γ defined only for M<K (M={m}, K={k})"
        )));
    }
    let q = ratio(m as i64 - 1, m as i64);
    let head: Rational = (1..=k - m)
        .map(|i| r(i).recip() * q.pow((i - 1) as u32))
        .sum();
    let tail: Rational = (k - m + 1..=k).map(|i| r(i).recip()).sum();
    Ok(r(m) / (head + q.pow((k - m) as u32) * tail))
}

/// Unclamped general outer bound `Λ + (1 − Λ/min{K,M}) Σ ᾱ_k`.
pub fn sum_dof_outer_unclamped(cfg: SystemConfig, averages: &[Rational]) -> Result<Rational> {
    check_averages(cfg, averages)?;
    let lambda = mat_dof(cfg);
    let slope = Rational::one() - &lambda / r(cfg.min_mk());
    let total: Rational = averages.iter().sum();
    Ok(lambda + slope * total)
}

/// General sum-DoF outer bound, clamped at the full-CSIT value `min{K,M}`.
pub fn sum_dof_outer(cfg: SystemConfig, averages: &[Rational]) -> Result<Rational> {
    Ok(min_r(
        sum_dof_outer_unclamped(cfg, averages)?,
        r(cfg.min_mk()),
    ))
}

/// Outer bound for symmetric alternating CSIT:
/// `Λ + (K − KΛ/min{K,M})·min{δ, min{K,M}/K}`.
pub fn sum_dof_outer_alternating(cfg: SystemConfig, delta: &Rational) -> Result<Rational> {
    delta.check_unit_interval()?;
    let lambda = mat_dof(cfg);
    let (k, mk) = (r(cfg.k()), r(cfg.min_mk()));
    let slope = &k - &k * &lambda / &mk;
    Ok(&lambda + slope * min_r(delta.clone(), mk / k))
}

/// Optimal sum DoF for `M ≥ K`: `(K − Λ) min{δ, 1} + Λ`.
pub fn optimal_sum_dof_m_ge_k(cfg: SystemConfig, delta: &Rational) -> Result<Rational> {
    if cfg.m() < cfg.k() {
        return Err(Error::Domain(format!(
            "optimal characterization needs M>=K (M={}, K={})",
            cfg.m(),
            cfg.k()
        )));
    }
    delta.check_unit_interval()?;
    let lambda = mat_dof(cfg);
    Ok((r(cfg.k()) - &lambda) * min_r(delta.clone(), Rational::one()) + lambda)
}

/// Minimum total perfect-CSIT cost for the three-user two-antenna channel:
/// `C_P* = (4·d − 6)^+`.
pub fn min_cost_m2k3(target: &Rational) -> Result<Rational> {
    if target.is_negative() {
        return Err(Error::Range {
            value: target.to_string(),
            range: "[0, 2]".into(),
        });
    }
    if *target > r(2) {
        return Err(Error::Infeasible(format!(
            "target sum DoF {target} exceeds min{{M,K}} = 2"
        )));
    }
    Ok((r(4) * target - r(6)).positive_part())
}

/// Optimal sum DoF for `(M,K) = (2,3)` with symmetric alternating CSIT:
/// `min{3(2+δ)/4, 2}`.
pub fn optimal_sum_dof_m2k3(delta: &Rational) -> Result<Rational> {
    delta.check_unit_interval()?;
    Ok(min_r(ratio(3, 4) * (r(2) + delta), r(2)))
}

/// Answer to "what does the maximum sum DoF `min{M,K}` cost?".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinCostForMaxDof {
    /// Minimum total perfect-CSIT feedback cost.
    pub cost: Rational,
    /// General lower bound `min{K,M}` on the current-CSIT cost; only
    /// meaningful when `min{M,K} > 1`.
    pub lower_bound: Option<Rational>,
    /// `min{M,K} = 1`: TDMA is already optimal and needs no CSIT.
    pub tdma_optimal: bool,
}

pub fn min_cost_max_dof(cfg: SystemConfig) -> MinCostForMaxDof {
    let mk = cfg.min_mk();
    if mk == 1 {
        MinCostForMaxDof {
            cost: Rational::zero(),
            lower_bound: None,
            tdma_optimal: true,
        }
    } else {
        MinCostForMaxDof {
            cost: r(mk),
            lower_bound: Some(r(mk)),
            tdma_optimal: false,
        }
    }
}

/// Best known inner bound for symmetric alternating CSIT: the maximum of
/// every applicable time-sharing construction for `(M, K)`.
pub fn inner_sum_dof(cfg: SystemConfig, delta: &Rational) -> Result<Rational> {
    delta.check_unit_interval()?;
    let (m, k) = (cfg.m(), cfg.k());
    if m >= k {
        return optimal_sum_dof_m_ge_k(cfg, delta);
    }
    // MAT round robin time-shared with alternating feedback at δ = M/K
    let gamma = gamma_dof(cfg)?;
    let (mr, kr) = (r(m), r(k));
    let mut best = (&kr - &kr * &gamma / &mr) * min_r(delta.clone(), &mr / &kr) + gamma;
    if m == 2 && k >= 3 {
        let two_user = ratio(3, 2) + &kr / r(4) * min_r(delta.clone(), r(2) / &kr);
        if two_user > best {
            best = two_user;
        }
    }
    Ok(best)
}

/// Inner bound with delayed CSIT only (`M = 2`, `K ≥ 3`):
/// `min{1 + (K/2)δ_D, 12/11 + (4K/11)δ_D, 3/2}`.
pub fn inner_sum_dof_delayed(k: usize, delta_d: &Rational) -> Result<Rational> {
    if k < 3 {
        return Err(Error::Domain(format!("delayed inner bound needs K>=3 (K={k})")));
    }
    delta_d.check_unit_interval()?;
    let kr = r(k);
    let a = Rational::one() + &kr / r(2) * delta_d;
    let b = ratio(12, 11) + r(4) * &kr / r(11) * delta_d;
    Ok(min_r(min_r(a, b), ratio(3, 2)))
}

/// Minimum number of users that must feed back perfect current CSIT in
/// every slot to reach `min{M,K}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ActiveUsers {
    pub count: usize,
    /// Set when `min{M,K} = 1`: TDMA suffices and no current CSIT is needed.
    pub tdma_suffices: bool,
}

pub fn min_active_users_for_max_dof(cfg: SystemConfig) -> ActiveUsers {
    let mk = cfg.min_mk();
    ActiveUsers {
        count: mk,
        tdma_suffices: mk == 1,
    }
}

/// Sum-DoF values for one configuration and feedback profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub lambda_mat: Rational,
    pub gamma: Option<Rational>,
    pub outer_sum_dof: Rational,
    pub outer_unclamped: Rational,
    pub inner_sum_dof: Rational,
    pub optimal_sum_dof: Option<Rational>,
}

/// Collects all bounds. The inner bound is evaluated at the symmetric
/// fraction `min_k ᾱ_k`, which every user can afford.
pub fn bound_report(cfg: SystemConfig, averages: &[Rational]) -> Result<BoundReport> {
    let outer_unclamped = sum_dof_outer_unclamped(cfg, averages)?;
    let outer = min_r(outer_unclamped.clone(), r(cfg.min_mk()));
    let delta = averages.iter().min().cloned().unwrap_or_else(Rational::zero);
    let inner = inner_sum_dof(cfg, &delta)?;
    let gamma = if cfg.m() < cfg.k() {
        Some(gamma_dof(cfg)?)
    } else {
        None
    };
    Ok(BoundReport {
        lambda_mat: mat_dof(cfg),
        gamma,
        optimal_sum_dof: (inner == outer).then(|| outer.clone()),
        outer_sum_dof: outer,
        outer_unclamped,
        inner_sum_dof: inner,
    })
}

fn check_averages(cfg: SystemConfig, averages: &[Rational]) -> Result<()> {
    if averages.len() != cfg.k() {
        return Err(Error::Dimension {
            expected: cfg.k(),
            got: averages.len(),
        });
    }
    for a in averages {
        a.check_unit_interval()?;
    }
    Ok(())
}
