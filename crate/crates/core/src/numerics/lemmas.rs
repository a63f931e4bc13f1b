use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use super::linalg::{householder, CMatrix};
use super::{c64, check_alphas, mean_stderr, per_trial, snr_linear, trial_rng, CurvePoint, SlopeReport};
use crate::error::{Error, Result};

/// `A·P = Q·R` with greedy largest-column pivoting.
#[derive(Debug, Clone)]
pub struct PivotedQr {
    /// `permutation[i]` is the original column placed at position `i`.
    pub permutation: Vec<usize>,
    pub q: CMatrix,
    pub r: CMatrix,
}

impl PivotedQr {
    /// Relative Frobenius residual of `A·P − Q·R`.
    pub fn residual(&self, a: &CMatrix) -> f64 {
        let ap = a.select_columns(&self.permutation);
        ap.sub(&self.q.matmul(&self.r)).frobenius_norm() / a.frobenius_norm().max(f64::MIN_POSITIVE)
    }
}

pub fn pivoted_qr_lemma2(a: &CMatrix) -> PivotedQr {
    let (q, r, permutation) = householder(a, true);
    PivotedQr { permutation, q, r }
}

#[derive(Debug, Clone, Serialize)]
pub struct Lemma2Check {
    pub residual: f64,
    /// `min_i (r_ii² − λ_i/(m−i+1))`, normalized by `max(1, λ_1)`.
    pub worst_margin: f64,
    pub violations: usize,
}

/// Checks `r_ii² ≥ λ_i(AᴴA)/(m−i+1)` for every `i`, with slack
/// `1e-9·max(1, λ_1)`.
pub fn lemma2_check(a: &CMatrix) -> Lemma2Check {
    let qr = pivoted_qr_lemma2(a);
    let eig = a.adjoint().matmul(a).hermitian_eigenvalues();
    let m = eig.len();
    let scale = eig[0].max(1.0);
    let mut worst = f64::INFINITY;
    let mut violations = 0;
    for i in 0..m.min(qr.r.rows()) {
        let rii = qr.r[(i, i)].re;
        let margin = (rii * rii - eig[i] / (m - i) as f64) / scale;
        worst = worst.min(margin);
        if margin < -1e-9 {
            violations += 1;
        }
    }
    Lemma2Check { residual: qr.residual(a), worst_margin: worst, violations }
}

/// `Ā = A·P` with the greedy pivot order.
pub fn permute_lemma3(a: &CMatrix) -> CMatrix {
    a.select_columns(&pivoted_qr_lemma2(a).permutation)
}

#[derive(Debug, Clone, Serialize)]
pub struct Lemma3Check {
    pub subsets: usize,
    pub violations: usize,
}

/// For every nonempty column subset `I`,
/// `det(Ā_Iᴴ Ā_I) ≥ m^{−|I|} Π_{i∈I} λ_i`, with slack
/// `1e-9·max(1, λ_1)^{|I|}`.
pub fn lemma3_check(a: &CMatrix) -> Result<Lemma3Check> {
    let m = a.cols();
    if m > 10 {
        return Err(Error::Unsupported(format!("subset check is exhaustive, m={m} > 10")));
    }
    let abar = permute_lemma3(a);
    let eig = a.adjoint().matmul(a).hermitian_eigenvalues();
    let top = eig[0].max(1.0);
    let mut subsets = 0;
    let mut violations = 0;
    for size in 1..=m {
        for idx in (0..m).combinations(size) {
            let sub = abar.select_columns(&idx);
            let det = sub.adjoint().matmul(&sub).det().re;
            let bound = idx.iter().map(|&i| eig[i]).product::<f64>() / (m as f64).powi(size as i32);
            subsets += 1;
            if det + 1e-9 * top.powi(size as i32) < bound {
                violations += 1;
            }
        }
    }
    Ok(Lemma3Check { subsets, violations })
}

fn check_grid(grid: &[f64], min_span: f64) -> Result<()> {
    if grid.len() < 3 {
        return Err(Error::InsufficientPoints(grid.len()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("SNR grid must be strictly increasing".into()));
    }
    if grid[grid.len() - 1] - grid[0] < min_span {
        return Err(Error::Domain(format!("SNR grid must span at least {min_span} dB")));
    }
    Ok(())
}

/// Slope of `E[log2 det(GᴴG)]` for `G = U·diag(P^{b_i/2})·Vᴴ + G̃`, against
/// the prediction `Σ_{b_i>0} b_i`. Returns the report and the number of
/// determinants that hit the machine-epsilon floor.
pub fn lemma1_slope_check(
    exponents: &[f64],
    snr_grid_db: &[f64],
    trials: usize,
    seed: u64,
    tolerance: f64,
) -> Result<(SlopeReport, usize)> {
    let m = exponents.len();
    if m == 0 || trials == 0 {
        return Err(Error::Domain("need m ≥ 1 and at least one trial".into()));
    }
    if let Some(b) = exponents.iter().find(|b| !(-1.0..=1.0).contains(*b)) {
        return Err(Error::Range { value: b.to_string(), range: "[-1, 1]".into() });
    }
    check_grid(snr_grid_db, 20.0)?;
    let bound: f64 = exponents.iter().map(|b| b.max(0.0)).sum();
    let mut points = Vec::new();
    let mut floored = 0usize;
    for &db in snr_grid_db {
        let p = snr_linear(db);
        let gains: Vec<f64> = exponents.iter().map(|b| p.powf(b / 2.0)).collect();
        let vals: Vec<(f64, usize)> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = trial_rng(seed, t as u64);
                let u = CMatrix::random_unitary(m, &mut rng);
                let v = CMatrix::random_unitary(m, &mut rng);
                let noise = CMatrix::gaussian(m, m, &mut rng);
                let g = u.matmul(&CMatrix::diagonal(&gains)).matmul(&v.adjoint()).add(&noise);
                let (l, f) = g.log2_abs_det_floored(f64::EPSILON);
                (2.0 * l, f)
            })
            .collect();
        floored += vals.iter().map(|v| v.1).sum::<usize>();
        let xs: Vec<f64> = vals.iter().map(|v| v.0).collect();
        let (mean_value, stderr) = mean_stderr(&xs);
        points.push(CurvePoint { snr_db: db, mean_value, stderr });
    }
    let report = SlopeReport::new(points, bound, |s| (s - bound).abs() <= tolerance)?;
    Ok((report, floored))
}

/// Transmit covariances tried against the Gaussian form of the entropy
/// difference bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PsiKind {
    /// `(P/M)·I`.
    Isotropic,
    /// Diagonal with eigenvalues `P^{(M−j+1)/M}/M`.
    SpectralSkewed,
    /// `P·vvᴴ` with `v` in the null space of the estimated channels of the
    /// first `min{l, M−1}` users.
    EstimateAligned,
}

impl PsiKind {
    pub const ALL: [PsiKind; 3] = [PsiKind::Isotropic, PsiKind::SpectralSkewed, PsiKind::EstimateAligned];

    pub fn as_str(&self) -> &'static str {
        match self {
            PsiKind::Isotropic => "isotropic",
            PsiKind::SpectralSkewed => "spectral-skewed",
            PsiKind::EstimateAligned => "estimate-aligned",
        }
    }
}

impl std::str::FromStr for PsiKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PsiKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Parse { token: s.to_string() })
    }
}

/// Unit vector of largest projection onto the orthogonal complement of the
/// rows of `est`.
fn null_direction(est: &CMatrix, m: usize) -> CMatrix {
    let proj = match est.matmul(&est.adjoint()).inverse() {
        Some(inv) => CMatrix::identity(m).sub(&est.adjoint().matmul(&inv).matmul(est)),
        None => CMatrix::identity(m),
    };
    let j = (0..m)
        .max_by(|&a, &b| proj.column_norm(a).total_cmp(&proj.column_norm(b)))
        .unwrap();
    let n = proj.column_norm(j);
    CMatrix::from_fn(m, 1, |i, _| proj[(i, j)] / n)
}

fn log2det_i_plus(h: &CMatrix, psi: &CMatrix) -> f64 {
    let n = h.rows();
    let x = CMatrix::identity(n).add(&h.matmul(psi).matmul(&h.adjoint()));
    x.log2_abs_det_floored(f64::MIN_POSITIVE).0
}

#[derive(Debug, Clone, Serialize)]
pub struct Prop4Fit {
    pub m_users: usize,
    pub l_users: usize,
    pub antennas: usize,
    pub psi: PsiKind,
    pub report: SlopeReport,
}

/// Slope of `l'·E[log2 det(I + H_m Ψ H_mᴴ)] − m'·E[log2 det(I + H_l Ψ H_lᴴ)]`
/// with `l' = min{l,M}`, `m' = min{m,M}`, against `(m'−l')·Σ α_i`. Users
/// `l+1..=m` have no current CSIT (`α = 0`).
#[allow(clippy::too_many_arguments)]
pub fn prop4_slope_check(
    m_users: usize,
    l_users: usize,
    antennas: usize,
    alphas: &[f64],
    psi: PsiKind,
    snr_grid_db: &[f64],
    trials: usize,
    seed: u64,
    tolerance: f64,
) -> Result<Prop4Fit> {
    if l_users == 0 || l_users > m_users {
        return Err(Error::Domain(format!("need 1 ≤ l ≤ m, got l={l_users}, m={m_users}")));
    }
    if antennas == 0 || trials == 0 {
        return Err(Error::Domain("need M ≥ 1 and at least one trial".into()));
    }
    if alphas.len() != l_users {
        return Err(Error::Dimension { expected: l_users, got: alphas.len() });
    }
    check_alphas(alphas)?;
    check_grid(snr_grid_db, 20.0)?;
    let mm = antennas;
    let lp = l_users.min(mm) as f64;
    let mp = m_users.min(mm) as f64;
    let bound = (mp - lp) * alphas.iter().sum::<f64>();
    let mut all_alphas = alphas.to_vec();
    all_alphas.resize(m_users, 0.0);
    let l_rows: Vec<usize> = (0..l_users).collect();
    let aligned_rows: Vec<usize> = (0..l_users.min(mm - 1)).collect();

    let mut points = Vec::new();
    for &db in snr_grid_db {
        let p = snr_linear(db);
        let vals = per_trial(trials, |t| {
            let mut rng = trial_rng(seed, t as u64);
            let trial = super::draw_trial(&mut rng, mm, p, &all_alphas);
            let psi_m = match psi {
                PsiKind::Isotropic => CMatrix::identity(mm).scale(p / mm as f64),
                PsiKind::SpectralSkewed => CMatrix::diagonal(
                    &(1..=mm)
                        .map(|j| p.powf((mm - j + 1) as f64 / mm as f64) / mm as f64)
                        .collect::<Vec<_>>(),
                ),
                PsiKind::EstimateAligned => {
                    let v = if aligned_rows.is_empty() {
                        CMatrix::from_fn(mm, 1, |i, _| c64(if i == 0 { 1.0 } else { 0.0 }))
                    } else {
                        null_direction(&trial.estimate.select_rows(&aligned_rows), mm)
                    };
                    v.matmul(&v.adjoint()).scale(p)
                }
            };
            let hm = &trial.channel;
            let hl = trial.channel.select_rows(&l_rows);
            lp * log2det_i_plus(hm, &psi_m) - mp * log2det_i_plus(&hl, &psi_m)
        });
        let (mean_value, stderr) = mean_stderr(&vals);
        points.push(CurvePoint { snr_db: db, mean_value, stderr });
    }
    let report = SlopeReport::new(points, bound, |s| s <= bound + tolerance)?;
    Ok(Prop4Fit { m_users, l_users, antennas, psi, report })
}

/// Outcome of a randomized verification suite.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub check: String,
    pub trials: usize,
    pub seed: u64,
    pub cases: usize,
    pub violations: usize,
    pub details: Vec<serde_json::Value>,
    pub pass: bool,
}

/// Pivoted-QR diagonal bound over random complex Gaussian matrices with `m` cycling through
/// `2..=8`; also requires the factorization residual to stay below 1e-10.
pub fn verify_lemma2(trials: usize, seed: u64) -> SuiteReport {
    let res: Vec<(usize, f64, f64)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let m = 2 + t % 7;
            let a = CMatrix::gaussian(m, m, &mut trial_rng(seed, t as u64));
            let c = lemma2_check(&a);
            (c.violations + usize::from(c.residual > 1e-10), c.residual, c.worst_margin)
        })
        .collect();
    let violations: usize = res.iter().map(|r| r.0).sum();
    let max_residual = res.iter().map(|r| r.1).fold(0.0, f64::max);
    let worst = res.iter().map(|r| r.2).fold(f64::INFINITY, f64::min);
    SuiteReport {
        check: "lemma2".into(),
        trials,
        seed,
        cases: trials,
        violations,
        details: vec![serde_json::json!({ "max_residual": max_residual, "worst_margin": worst })],
        pass: violations == 0,
    }
}

/// Permuted subset determinant bound over random matrices with `m` cycling through `1..=6`.
pub fn verify_lemma3(trials: usize, seed: u64) -> SuiteReport {
    let res: Vec<Lemma3Check> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let m = 1 + t % 6;
            let a = CMatrix::gaussian(m, m, &mut trial_rng(seed, t as u64));
            lemma3_check(&a).expect("m ≤ 6")
        })
        .collect();
    let violations = res.iter().map(|r| r.violations).sum();
    SuiteReport {
        check: "lemma3".into(),
        trials,
        seed,
        cases: res.iter().map(|r| r.subsets).sum(),
        violations,
        details: vec![],
        pass: violations == 0,
    }
}

/// Log-det slopes for `b ∈ {(1,0), (1/2,1/4,0), (0,0)}` over 40 to 70 dB.
pub fn verify_lemma1(trials: usize, seed: u64) -> Result<SuiteReport> {
    let grid = [40.0, 50.0, 60.0, 70.0];
    let configs: [&[f64]; 3] = [&[1.0, 0.0], &[0.5, 0.25, 0.0], &[0.0, 0.0]];
    let mut details = Vec::new();
    let mut violations = 0;
    for b in configs {
        let (r, floored) = lemma1_slope_check(b, &grid, trials, seed, 0.1)?;
        violations += usize::from(!r.pass);
        details.push(serde_json::json!({
            "b": b, "slope": r.fit.slope, "bound": r.bound, "floored": floored, "pass": r.pass
        }));
    }
    Ok(SuiteReport {
        check: "lemma1".into(),
        trials,
        seed,
        cases: configs.len(),
        violations,
        details,
        pass: violations == 0,
    })
}

/// The nine `(m, l, Ψ)` configurations with `M = 2`,
/// `(m,l) ∈ {(2,1), (3,1), (3,2)}`, each at `α ∈ {0, 1/2, 1}` for every one
/// of the `l` users, over 30–70 dB.
pub fn verify_prop4(trials: usize, seed: u64) -> Result<SuiteReport> {
    let grid = [30.0, 40.0, 50.0, 60.0, 70.0];
    let mut details = Vec::new();
    let mut violations = 0;
    let mut cases = 0;
    for (m, l) in [(2, 1), (3, 1), (3, 2)] {
        for psi in PsiKind::ALL {
            for alpha in [0.0, 0.5, 1.0] {
                let fit = prop4_slope_check(m, l, 2, &vec![alpha; l], psi, &grid, trials, seed, 0.1)?;
                cases += 1;
                violations += usize::from(!fit.report.pass);
                details.push(serde_json::json!({
                    "m": m, "l": l, "psi": psi, "alpha": alpha,
                    "slope": fit.report.fit.slope, "bound": fit.report.bound, "pass": fit.report.pass
                }));
            }
        }
    }
    Ok(SuiteReport {
        check: "prop4".into(),
        trials,
        seed,
        cases,
        violations,
        details,
        pass: violations == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::linalg::C64;

    #[test]
    fn lemma2_identity_and_ones() {
        for m in 1..=5 {
            let c = lemma2_check(&CMatrix::identity(m));
            assert_eq!(c.violations, 0);
            let qr = pivoted_qr_lemma2(&CMatrix::identity(m));
            for i in 0..m {
                assert!((qr.r[(i, i)].re - 1.0).abs() < 1e-12);
            }
        }
        let ones = CMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]);
        let qr = pivoted_qr_lemma2(&ones);
        assert!((qr.r[(0, 0)].re.powi(2) - 2.0).abs() < 1e-12);
        assert!(qr.r[(1, 1)].re.abs() < 1e-12);
        let c = lemma2_check(&ones);
        assert_eq!(c.violations, 0);
        // bound is attained for i = 1: r_11² = 2 = λ_1/2
        assert!(c.worst_margin.abs() < 1e-12);
    }

    #[test]
    fn pivoting_picks_largest_column() {
        let a = CMatrix::from_real_rows(&[&[1.0, 0.0, 3.0], &[0.0, 2.0, 0.0], &[0.0, 0.0, 1.0]]);
        let qr = pivoted_qr_lemma2(&a);
        assert_eq!(qr.permutation[0], 2);
        assert!(qr.residual(&a) < 1e-14);
    }

    #[test]
    fn lemma2_random_and_complex_phases() {
        let r = verify_lemma2(300, 17);
        assert!(r.pass, "{r:?}");
        let a = CMatrix::from_fn(3, 3, |i, j| C64::new((i + 2 * j) as f64, (i as f64) - (j as f64)));
        assert_eq!(lemma2_check(&a).violations, 0);
    }

    #[test]
    fn lemma3_examples() {
        let c = lemma3_check(&CMatrix::identity(3)).unwrap();
        assert_eq!((c.subsets, c.violations), (7, 0));
        let d = CMatrix::diagonal(&[2.0, 1.0]);
        let abar = permute_lemma3(&d);
        assert_eq!(abar, d);
        assert_eq!(lemma3_check(&d).unwrap().violations, 0);
        let r = verify_lemma3(60, 23);
        assert!(r.pass, "{r:?}");
        assert!(lemma3_check(&CMatrix::identity(11)).is_err());
    }

    #[test]
    fn lemma1_quick() {
        let grid = [40.0, 55.0, 70.0];
        let (r, _) = lemma1_slope_check(&[1.0, 0.0], &grid, 1500, 2, 0.1).unwrap();
        assert!(r.pass, "{:?}", r.fit);
        let (r, _) = lemma1_slope_check(&[0.0, 0.0], &grid, 1500, 2, 0.1).unwrap();
        assert!(r.pass, "{:?}", r.fit);
        assert!(lemma1_slope_check(&[2.0], &grid, 10, 2, 0.1).is_err());
        assert!(lemma1_slope_check(&[1.0], &[40.0, 45.0, 50.0], 10, 2, 0.1).is_err());
    }

    #[test]
    fn prop4_examples() {
        let grid = [30.0, 45.0, 60.0];
        let iso = prop4_slope_check(2, 1, 2, &[0.5], PsiKind::Isotropic, &grid, 1500, 3, 0.1).unwrap();
        assert!(iso.report.pass && iso.report.fit.slope.abs() < 0.15, "{:?}", iso.report.fit);
        let al = prop4_slope_check(2, 1, 2, &[0.5], PsiKind::EstimateAligned, &grid, 1500, 3, 0.1).unwrap();
        assert!(al.report.pass && al.report.fit.slope.abs() < 0.15, "{:?}", al.report.fit);
        let same = prop4_slope_check(2, 2, 2, &[0.5, 0.5], PsiKind::Isotropic, &grid, 200, 3, 0.1).unwrap();
        assert_eq!(same.report.bound, 0.0);
        assert!(same.report.fit.slope.abs() < 1e-9);
        assert!(prop4_slope_check(1, 2, 2, &[0.5, 0.5], PsiKind::Isotropic, &grid, 10, 3, 0.1).is_err());
        assert_eq!("spectral-skewed".parse::<PsiKind>().unwrap(), PsiKind::SpectralSkewed);
    }
}
