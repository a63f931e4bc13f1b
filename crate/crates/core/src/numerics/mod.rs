//! Monte Carlo checks in floating point: channel sampling, zero-forcing
//! rates, slope fits, and the matrix lemmas behind the converse.
//!
//! Every trial `i` draws from its own ChaCha8 stream keyed by `(seed, i)`,
//! so results do not depend on how trials are split across threads, and the
//! same seed gives common random numbers across SNR points.

mod lemmas;
pub mod linalg;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::SystemConfig;
use linalg::{CMatrix, C64};

pub use lemmas::{
    lemma1_slope_check, lemma2_check, lemma3_check, permute_lemma3, pivoted_qr_lemma2,
    prop4_slope_check, verify_lemma1, verify_lemma2, verify_lemma3, verify_prop4, Lemma2Check,
    Lemma3Check, Prop4Fit, PsiKind, PivotedQr, SuiteReport,
};

/// Condition number above which a zero-forcing trial is redrawn.
pub const MAX_CONDITION: f64 = 1e12;

pub fn snr_linear(snr_db: f64) -> f64 {
    10f64.powf(snr_db / 10.0)
}

/// ChaCha8 stream dedicated to trial `trial` of run `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Neumaier-compensated sum.
pub fn compensated_sum(xs: &[f64]) -> f64 {
    let mut sum = 0.0f64;
    let mut c = 0.0f64;
    for &x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            c += (sum - t) + x;
        } else {
            c += (x - t) + sum;
        }
        sum = t;
    }
    sum + c
}

/// Sample mean and standard error of the mean.
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = compensated_sum(xs) / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let dev: Vec<f64> = xs.iter().map(|x| (x - mean) * (x - mean)).collect();
    let var = compensated_sum(&dev) / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Evaluates `f` on every trial in parallel and returns the values in trial
/// order.
pub(crate) fn per_trial<F>(trials: usize, f: F) -> Vec<f64>
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    (0..trials).into_par_iter().map(f).collect()
}

#[derive(Debug, Clone)]
pub struct ChannelBatch {
    pub snr: f64,
    pub alphas: Vec<f64>,
    pub seed: u64,
    pub channels: Vec<CMatrix>,
    pub estimates: Vec<CMatrix>,
    pub errors: Vec<CMatrix>,
}

impl ChannelBatch {
    pub fn trials(&self) -> usize {
        self.channels.len()
    }

    pub fn users(&self) -> usize {
        self.alphas.len()
    }

    pub fn antennas(&self) -> usize {
        self.channels.first().map_or(0, |h| h.cols())
    }
}

struct Trial {
    channel: CMatrix,
    estimate: CMatrix,
    error: CMatrix,
}

/// Row `k` of the estimate has variance `1 − P^{−α_k}` and the error
/// `P^{−α_k}`, so every row of `H` has unit variance. Both are drawn as unit
/// Gaussians and scaled, which keeps the draws shared across SNR points.
fn draw_trial(rng: &mut ChaCha8Rng, m: usize, snr: f64, alphas: &[f64]) -> Trial {
    let k = alphas.len();
    let g1 = CMatrix::gaussian(k, m, rng);
    let g2 = CMatrix::gaussian(k, m, rng);
    let var: Vec<f64> = alphas.iter().map(|a| snr.powf(-a).min(1.0)).collect();
    let estimate = CMatrix::from_fn(k, m, |i, j| g1[(i, j)] * (1.0 - var[i]).sqrt());
    let error = CMatrix::from_fn(k, m, |i, j| g2[(i, j)] * var[i].sqrt());
    Trial { channel: estimate.add(&error), estimate, error }
}

fn check_alphas(alphas: &[f64]) -> Result<()> {
    if let Some(a) = alphas.iter().find(|a| !(0.0..=1.0).contains(*a)) {
        return Err(Error::Range { value: a.to_string(), range: "[0, 1]".into() });
    }
    Ok(())
}

pub fn sample_channel_batch(
    cfg: SystemConfig,
    alphas: &[f64],
    snr_db: f64,
    trials: usize,
    seed: u64,
) -> Result<ChannelBatch> {
    if trials == 0 {
        return Err(Error::Domain("need at least one trial".into()));
    }
    if alphas.len() != cfg.k() {
        return Err(Error::Dimension { expected: cfg.k(), got: alphas.len() });
    }
    check_alphas(alphas)?;
    let snr = snr_linear(snr_db);
    let drawn: Vec<Trial> = (0..trials)
        .into_par_iter()
        .map(|i| draw_trial(&mut trial_rng(seed, i as u64), cfg.m(), snr, alphas))
        .collect();
    let mut batch = ChannelBatch {
        snr,
        alphas: alphas.to_vec(),
        seed,
        channels: Vec::with_capacity(trials),
        estimates: Vec::with_capacity(trials),
        errors: Vec::with_capacity(trials),
    };
    for t in drawn {
        batch.channels.push(t.channel);
        batch.estimates.push(t.estimate);
        batch.errors.push(t.error);
    }
    Ok(batch)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZfRates {
    /// Mean of `Σ_k log2(1 + SINR_k)` over trials.
    pub sum_rate: f64,
    pub sum_stderr: f64,
    /// Mean rate per user `1..=K`; zero for inactive users.
    pub per_user: Vec<f64>,
    pub per_user_stderr: Vec<f64>,
    /// Trials whose estimate was numerically rank-deficient and were redrawn.
    pub resampled: usize,
}

/// Column-normalized pseudo-inverse of `est` (rows = active users).
fn zf_precoder(est: &CMatrix) -> Option<(CMatrix, f64)> {
    let gram = est.matmul(&est.adjoint());
    let eig = gram.hermitian_eigenvalues();
    let (hi, lo) = (eig[0], *eig.last().unwrap());
    if lo <= 0.0 || (hi / lo).sqrt() > MAX_CONDITION {
        return None;
    }
    let w = est.adjoint().matmul(&gram.inverse()?);
    let norms: Vec<f64> = (0..w.cols()).map(|j| w.column_norm(j)).collect();
    let cond = (hi / lo).sqrt();
    Some((CMatrix::from_fn(w.rows(), w.cols(), |i, j| w[(i, j)] / norms[j]), cond))
}

/// Zero-forcing on the estimated channels of `active` (1-based), equal power
/// `P/|active|` per stream, rates measured on the true channels.
///
/// A user whose estimate vanishes (`α_k = 0`, so the whole channel is error)
/// gives the transmitter no direction; its estimate row is replaced by an
/// independent unit Gaussian row, which is the direction the estimate
/// carries in the limit `α_k → 0`.
pub fn zf_sum_rate(batch: &ChannelBatch, active: &[usize]) -> Result<ZfRates> {
    let k = batch.users();
    let m = batch.antennas();
    if active.is_empty() || active.len() > m.min(k) {
        return Err(Error::Domain(format!(
            "zero-forcing serves 1..={} users, got {}",
            m.min(k),
            active.len()
        )));
    }
    if active.iter().any(|&u| u == 0 || u > k) {
        return Err(Error::Domain(format!("active users must lie in 1..={k}")));
    }
    let idx: Vec<usize> = active.iter().map(|u| u - 1).collect();
    let power = batch.snr / active.len() as f64;

    let results: Vec<(Vec<f64>, bool)> = (0..batch.trials())
        .into_par_iter()
        .map(|t| {
            let mut h = batch.channels[t].select_rows(&idx);
            let mut est = batch.estimates[t].select_rows(&idx);
            let mut rng = trial_rng(batch.seed ^ 0x5a5a_5a5a_5a5a_5a5a, t as u64);
            let mut redrawn = false;
            let w = loop {
                let mut probe = est.clone();
                for r in 0..probe.rows() {
                    if probe.row(r).iter().all(|z| z.norm_sqr() == 0.0) {
                        let fresh = CMatrix::gaussian(1, m, &mut rng);
                        for j in 0..m {
                            probe[(r, j)] = fresh[(0, j)];
                        }
                    }
                }
                if let Some((w, _)) = zf_precoder(&probe) {
                    break w;
                }
                redrawn = true;
                let alphas: Vec<f64> = idx.iter().map(|&u| batch.alphas[u]).collect();
                let fresh = draw_trial(&mut rng, m, batch.snr, &alphas);
                h = fresh.channel;
                est = fresh.estimate;
            };
            let hw = h.matmul(&w);
            let rates = (0..idx.len())
                .map(|i| {
                    let signal = power * hw[(i, i)].norm_sqr();
                    let interference: f64 = (0..idx.len())
                        .filter(|&j| j != i)
                        .map(|j| power * hw[(i, j)].norm_sqr())
                        .sum();
                    (1.0 + signal / (1.0 + interference)).log2()
                })
                .collect();
            (rates, redrawn)
        })
        .collect();

    let resampled = results.iter().filter(|r| r.1).count();
    let sums: Vec<f64> = results.iter().map(|r| compensated_sum(&r.0)).collect();
    let (sum_rate, sum_stderr) = mean_stderr(&sums);
    let mut per_user = vec![0.0; k];
    let mut per_user_stderr = vec![0.0; k];
    for (pos, &u) in idx.iter().enumerate() {
        let col: Vec<f64> = results.iter().map(|r| r.0[pos]).collect();
        let (mean, se) = mean_stderr(&col);
        per_user[u] = mean;
        per_user_stderr[u] = se;
    }
    Ok(ZfRates { sum_rate, sum_stderr, per_user, per_user_stderr, resampled })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeFit {
    pub snr_grid_db: Vec<f64>,
    pub values: Vec<f64>,
    /// Bits per `log2 P`, i.e. DoF.
    pub slope: f64,
    pub intercept: f64,
    pub stderr: f64,
}

/// Ordinary least squares of `value` against `log2 P`.
pub fn fit_dof_slope(points: &[(f64, f64)]) -> Result<SlopeFit> {
    if points.len() < 3 {
        return Err(Error::InsufficientPoints(points.len()));
    }
    if points.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(Error::Domain("SNR grid must be strictly increasing".into()));
    }
    let x: Vec<f64> = points.iter().map(|p| p.0 / 10.0 * 10f64.log2()).collect();
    let y: Vec<f64> = points.iter().map(|p| p.1).collect();
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = x
        .iter()
        .zip(&y)
        .map(|(a, b)| {
            let e = b - intercept - slope * a;
            e * e
        })
        .sum();
    let stderr = (ssr / (n - 2.0) / sxx).sqrt();
    Ok(SlopeFit {
        snr_grid_db: points.iter().map(|p| p.0).collect(),
        values: y,
        slope,
        intercept,
        stderr,
    })
}

/// `start:stop:step` in dB, inclusive of `stop` when it lies on the grid.
pub fn parse_snr_grid(text: &str) -> Result<Vec<f64>> {
    let bad = || Error::Parse { token: text.to_string() };
    let parts: Vec<f64> = text
        .split(':')
        .map(|s| s.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    let [start, stop, step] = parts[..] else { return Err(bad()) };
    if !(step > 0.0) || stop < start || !start.is_finite() || !stop.is_finite() {
        return Err(bad());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + step * i as f64).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePoint {
    pub snr_db: f64,
    pub mean_value: f64,
    pub stderr: f64,
}

/// Per-SNR Monte Carlo means, their slope fit, and the slope the theory
/// predicts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeReport {
    pub points: Vec<CurvePoint>,
    pub fit: SlopeFit,
    pub bound: f64,
    pub pass: bool,
}

impl SlopeReport {
    pub(crate) fn new(points: Vec<CurvePoint>, bound: f64, pass: impl Fn(f64) -> bool) -> Result<Self> {
        let pairs: Vec<(f64, f64)> = points.iter().map(|p| (p.snr_db, p.mean_value)).collect();
        let fit = fit_dof_slope(&pairs)?;
        let pass = pass(fit.slope);
        Ok(SlopeReport { points, fit, bound, pass })
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("snr_db,mean_value,stderr\n");
        for p in &self.points {
            s.push_str(&format!("{},{:.12},{:.12}\n", p.snr_db, p.mean_value, p.stderr));
        }
        s
    }

    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::json!({ "slope": self.fit.slope, "bound": self.bound, "pass": self.pass })
    }
}

/// What a zero-forcing slope run measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZfMetric {
    Sum,
    /// Rate of one user (1-based).
    User(usize),
}

/// Zero-forcing to users `1..=min{M,K}` over an SNR grid. The predicted slope
/// is 1 for a single stream, and `α_k` per user (their sum for the sum
/// rate) otherwise, since residual interference grows as `P^{1−α_k}`.
pub fn zf_slope_check(
    cfg: SystemConfig,
    alphas: &[f64],
    metric: ZfMetric,
    snr_grid_db: &[f64],
    trials: usize,
    seed: u64,
    tolerance: f64,
) -> Result<(SlopeReport, usize)> {
    let active: Vec<usize> = (1..=cfg.min_mk()).collect();
    let predicted_user = |u: usize| if active.len() == 1 { 1.0 } else { alphas[u - 1] };
    let bound = match metric {
        ZfMetric::Sum => active.iter().map(|&u| predicted_user(u)).sum(),
        ZfMetric::User(u) => {
            if !active.contains(&u) {
                return Err(Error::Domain(format!("user {u} is not served (users 1..={})", active.len())));
            }
            predicted_user(u)
        }
    };
    let mut points = Vec::with_capacity(snr_grid_db.len());
    let mut resampled = 0;
    for &db in snr_grid_db {
        let batch = sample_channel_batch(cfg, alphas, db, trials, seed)?;
        let rates = zf_sum_rate(&batch, &active)?;
        resampled += rates.resampled;
        let (mean_value, stderr) = match metric {
            ZfMetric::Sum => (rates.sum_rate, rates.sum_stderr),
            ZfMetric::User(u) => (rates.per_user[u - 1], rates.per_user_stderr[u - 1]),
        };
        points.push(CurvePoint { snr_db: db, mean_value, stderr });
    }
    let report = SlopeReport::new(points, bound, |s| (s - bound).abs() <= tolerance)?;
    Ok((report, resampled))
}

pub(crate) fn c64(re: f64) -> C64 {
    C64::new(re, 0.0)
}
