//! Statistical verification layer.
//!
//! Seeded ensembles over independent RNG streams, empirical degree
//! distributions, sup-distance comparisons, an empirical concentration check
//! against the exact expectations, and least-squares tail-slope fits in
//! log-log space. Ensemble results are a pure function of
//! `(params, runs, seed)` no matter how the runs are scheduled.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asymptotics::{DegreeDistribution, DistributionKind};
use crate::error::{Error, Result};
use crate::expectation;
use crate::model::{self, DegreeHistogram, ModelParams, WindowSpec};

/// Histograms and per-degree summaries from repeated runs at one snapshot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleResult {
    pub params: ModelParams,
    pub runs: u32,
    pub t: u64,
    pub per_run: Vec<DegreeHistogram>,
    /// `mean[k - 1]` = ensemble mean of `N(k, t)`.
    pub mean: Vec<f64>,
    /// `stderr[k - 1]` = sample standard deviation / sqrt(runs).
    pub stderr: Vec<f64>,
    /// False when `runs < 2`: the standard error is undefined and reported
    /// as zero.
    pub stderr_defined: bool,
}

impl EnsembleResult {
    pub fn mean_count(&self, k: u32) -> f64 {
        self.mean.get((k - 1) as usize).copied().unwrap_or(0.0)
    }

    pub fn stderr_count(&self, k: u32) -> f64 {
        self.stderr.get((k - 1) as usize).copied().unwrap_or(0.0)
    }

    /// Ensemble mean of `N(k, t)/t` as a degree distribution.
    pub fn mean_distribution(&self) -> DegreeDistribution {
        let t = self.t as f64;
        let values: Vec<f64> = self.mean.iter().map(|m| m / t).collect();
        let sum: f64 = values.iter().sum();
        DegreeDistribution {
            kind: DistributionKind::Empirical,
            p: Some(self.params.p),
            l: match self.params.window {
                WindowSpec::Fixed(l) => Some(l),
                WindowSpec::Linear(_) => None,
            },
            t: Some(self.t),
            values,
            tail_mass: (self.t + 1) as f64 / t - sum,
        }
    }

    /// Counts pooled across all runs before normalizing.
    pub fn pooled_distribution(&self) -> DegreeDistribution {
        let mut pooled = DegreeHistogram { t: self.t, counts: Default::default() };
        for hist in &self.per_run {
            pooled.absorb(hist).expect("per-run histograms share the snapshot time");
        }
        let t = self.t as f64;
        let kmax = pooled.max_degree();
        let scale = t * f64::from(self.runs);
        let values: Vec<f64> =
            (1..=kmax).map(|k| pooled.count(k) as f64 / scale).collect();
        let sum: f64 = values.iter().sum();
        DegreeDistribution {
            kind: DistributionKind::Empirical,
            p: Some(self.params.p),
            l: match self.params.window {
                WindowSpec::Fixed(l) => Some(l),
                WindowSpec::Linear(_) => None,
            },
            t: Some(self.t),
            values,
            tail_mass: (self.t + 1) as f64 / t - sum,
        }
    }
}

/// Runs `runs` independent simulations (streams `0..runs` of the seed) and
/// collects the histogram of each at time `t`.
pub fn run_ensemble(params: &ModelParams, runs: u32, t: u64) -> Result<EnsembleResult> {
    if runs < 1 {
        return Err(Error::InvalidInput("at least one run is required".into()));
    }
    if t < params.init_l || t > params.horizon {
        return Err(Error::InvalidInput(format!(
            "snapshot time {t} outside [{}, {}]",
            params.init_l, params.horizon
        )));
    }
    let per_run: Vec<DegreeHistogram> = (0..runs)
        .into_par_iter()
        .map(|run| {
            let mut hists = model::simulate_run(params, u64::from(run), &[t])
                .expect("snapshot time validated above");
            hists.pop().expect("exactly one snapshot requested")
        })
        .collect();

    let kmax = per_run.iter().map(DegreeHistogram::max_degree).max().unwrap_or(0);
    let mut mean = vec![0.0; kmax as usize];
    let mut stderr = vec![0.0; kmax as usize];
    for k in 1..=kmax {
        let i = (k - 1) as usize;
        let sum: f64 = per_run.iter().map(|h| h.count(k) as f64).sum();
        mean[i] = sum / f64::from(runs);
        if runs >= 2 {
            let ss: f64 = per_run.iter().map(|h| (h.count(k) as f64 - mean[i]).powi(2)).sum();
            stderr[i] = (ss / f64::from(runs - 1)).sqrt() / f64::from(runs).sqrt();
        }
    }
    Ok(EnsembleResult {
        params: params.clone(),
        runs,
        t,
        per_run,
        mean,
        stderr,
        stderr_defined: runs >= 2,
    })
}

/// `N(k, t) / t` for one histogram. The normalizer is `t`, not the node
/// count `t + 1`, so the values sum to `(t+1)/t`; the excess is surfaced in
/// `tail_mass` rather than renormalized away.
pub fn empirical_distribution(hist: &DegreeHistogram) -> DegreeDistribution {
    let t = hist.t as f64;
    let kmax = hist.max_degree();
    let values: Vec<f64> = (1..=kmax).map(|k| hist.count(k) as f64 / t).collect();
    let sum: f64 = values.iter().sum();
    DegreeDistribution {
        kind: DistributionKind::Empirical,
        p: None,
        l: None,
        t: Some(hist.t),
        values,
        tail_mass: (hist.t + 1) as f64 / t - sum,
    }
}

/// `max_{kmin <= k <= kmax} |a(k) - b(k)|`; degrees absent from a
/// distribution read as zero.
pub fn sup_distance(
    a: &DegreeDistribution,
    b: &DegreeDistribution,
    kmin: u32,
    kmax: u32,
) -> Result<f64> {
    if kmin < 1 || kmax < kmin {
        return Err(Error::InvalidInput(format!("empty degree range [{kmin}, {kmax}]")));
    }
    Ok((kmin..=kmax)
        .map(|k| (a.value(k) - b.value(k)).abs())
        .fold(0.0, f64::max))
}

/// Fraction of ensemble runs violating the concentration bound
/// `|N(k,t)/t - E[N(k,t)]/t| > sqrt(log t / t)`.
///
/// The bound holds with probability at least `1 - t^(-1/8)`, so the returned
/// fraction should sit far below `t^(-1/8)`. Fixed windows only: the exact
/// expectation has no linear-window analogue.
pub fn concentration_check(params: &ModelParams, runs: u32, t: u64, k: u32) -> Result<f64> {
    let expected = match params.window {
        WindowSpec::Linear(_) => {
            return Err(Error::Unsupported(
                "concentration checks need the exact expectation, which linear windows do not have"
                    .into(),
            ))
        }
        WindowSpec::Fixed(1) => {
            let mut stepper = expectation::L1Expectation::new(params.p, k.max(2))?;
            stepper.advance_to(t);
            stepper.counts()[(k - 1) as usize]
        }
        WindowSpec::Fixed(l) => {
            let mut stepper = expectation::WindowExpectation::new(params.p, l, k.max(l + 1))?;
            stepper.advance_to(t);
            stepper.counts()[(k - 1) as usize]
        }
    };
    let ensemble = run_ensemble(params, runs, t)?;
    let tf = t as f64;
    let threshold = (tf.ln() / tf).sqrt();
    let violations = ensemble
        .per_run
        .iter()
        .filter(|hist| (hist.count(k) as f64 / tf - expected / tf).abs() > threshold)
        .count();
    Ok(violations as f64 / f64::from(runs))
}

/// Ordinary least squares of `log P(k)` against `log k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailFit {
    /// Fit range actually used.
    pub k_lo: u32,
    pub k_hi: u32,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Number of strictly positive entries entering the fit.
    pub points: u32,
    /// Zero-mass degrees inside the range, excluded from the fit.
    pub excluded_zeros: u32,
}

/// Fits `log P(k) = intercept + slope * log k` over the strictly positive
/// entries of `[k_lo, k_hi]`. Zero-mass degrees are excluded (and counted);
/// fewer than 5 positive entries is an input error.
pub fn fit_tail_slope(dist: &DegreeDistribution, k_lo: u32, k_hi: u32) -> Result<TailFit> {
    if k_lo < 1 || k_hi <= k_lo {
        return Err(Error::InvalidInput(format!("bad fit range [{k_lo}, {k_hi}]")));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut excluded = 0u32;
    for k in k_lo..=k_hi {
        let v = dist.value(k);
        if v > 0.0 {
            xs.push(f64::from(k).ln());
            ys.push(v.ln());
        } else {
            excluded += 1;
        }
    }
    if xs.len() < 5 {
        return Err(Error::InvalidInput(format!(
            "insufficient support: {} positive entries in [{k_lo}, {k_hi}], need 5",
            xs.len()
        )));
    }
    let n = xs.len() as f64;
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - x_mean).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - x_mean) * (y - y_mean)).sum();
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let ss_tot: f64 = ys.iter().map(|y| (y - y_mean).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (intercept + slope * x)).powi(2))
        .sum();
    let r_squared = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };
    Ok(TailFit {
        k_lo,
        k_hi,
        slope,
        intercept,
        r_squared,
        points: xs.len() as u32,
        excluded_zeros: excluded,
    })
}

/// Default tail-fit window, `[e^3, e^5]` rounded to integers.
pub const DEFAULT_FIT_RANGE: (u32, u32) = (20, 148);

/// Clips `DEFAULT_FIT_RANGE` (or an explicit range) to the distribution's
/// support; when fewer than 5 positive entries remain, the lower edge walks
/// down until the fit is determined. Steep tails at desk-scale sample sizes
/// run out of occupied degrees well below `e^3`.
pub fn clip_fit_range(dist: &DegreeDistribution, range: Option<(u32, u32)>) -> (u32, u32) {
    let (lo, hi) = range.unwrap_or(DEFAULT_FIT_RANGE);
    let support_hi = (1..=dist.kmax()).rev().find(|&k| dist.value(k) > 0.0).unwrap_or(1);
    let hi = hi.min(support_hi);
    let mut lo = lo.min(hi.saturating_sub(1)).max(1);
    let positive = |lo: u32, hi: u32| (lo..=hi).filter(|&k| dist.value(k) > 0.0).count();
    while lo > 1 && positive(lo, hi) < 5 {
        lo -= 1;
    }
    (lo, hi)
}

/// Pooled linear-window run compared against the fixed-window theory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearWindowStudy {
    pub alpha: f64,
    pub p: f64,
    pub n: u64,
    pub runs: u32,
    /// Counts pooled across runs, normalized by `runs * n`.
    pub distribution: DegreeDistribution,
    pub fit: TailFit,
}

/// Grows `runs` linear-window graphs to size `n`, pools their degree counts,
/// and fits the tail slope. Pooling (rather than averaging per-run fits)
/// keeps sparse tail bins usable. The fit range defaults to
/// [`DEFAULT_FIT_RANGE`] clipped to support.
pub fn linear_window_study(
    alpha: f64,
    p: f64,
    n: u64,
    runs: u32,
    seed: u64,
    fit_range: Option<(u32, u32)>,
) -> Result<LinearWindowStudy> {
    let params = ModelParams::linear(p, alpha, 1, n, seed)?;
    let ensemble = run_ensemble(&params, runs, n)?;
    let distribution = ensemble.pooled_distribution();
    let (k_lo, k_hi) = clip_fit_range(&distribution, fit_range);
    let fit = fit_tail_slope(&distribution, k_lo, k_hi)?;
    Ok(LinearWindowStudy { alpha, p, n, runs, distribution, fit })
}
