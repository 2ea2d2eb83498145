//! Decay rate from simulated trajectories.
//!
//! Infected counts are sampled on a uniform time grid and averaged over
//! trials. The rate is minus the least-squares slope of the log mean over
//! the grid points whose mean lies in a window of fractions of `N`. The
//! standard error comes from resampling whole trajectories.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{exact_decay, simulate, trial_rng, MAX_EXACT_VERTICES};
use crate::error::{Error, Result};
use crate::graph::{Digraph, MetzlerAssembly};
use crate::spectra::{decay_bound, DecayBound};

pub const MIN_TRIALS: usize = 100;
/// Stream used by the bootstrap resampler; trial streams count up from 0.
const BOOTSTRAP_STREAM: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayOptions {
    /// Number of grid intervals on `[0, t_max]`.
    pub grid: usize,
    /// Fit window as fractions of `N`, `(low, high)`.
    pub window: (f64, f64),
    pub bootstrap: usize,
}

impl Default for DecayOptions {
    fn default() -> Self {
        Self {
            grid: 400,
            window: (0.05, 0.5),
            bootstrap: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayEstimate {
    pub gamma_hat: f64,
    pub stderr: f64,
    pub window: (f64, f64),
    pub trials: usize,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum DecayOutcome {
    Estimate(DecayEstimate),
    NoDecayObserved {
        /// Mean infected fraction at `t_max`.
        final_fraction: f64,
    },
}

fn fit_slope(ts: &[f64], ys: &[f64]) -> f64 {
    let n = ts.len() as f64;
    let mt = ts.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = ts.iter().zip(ys).map(|(t, y)| (t - mt) * (y - my)).sum();
    let sxx: f64 = ts.iter().map(|t| (t - mt) * (t - mt)).sum();
    sxy / sxx
}

/// Fitted rate over the grid indices `idx`, or `None` if a mean vanishes.
fn rate(counts: &[Vec<u32>], weights: impl Fn(usize) -> f64, times: &[f64], idx: &[usize]) -> Option<f64> {
    let mut ys = Vec::with_capacity(idx.len());
    for &j in idx {
        let total: f64 = counts.iter().enumerate().map(|(i, c)| weights(i) * c[j] as f64).sum();
        if total <= 0.0 {
            return None;
        }
        ys.push(total.ln());
    }
    let ts: Vec<f64> = idx.iter().map(|&j| times[j]).collect();
    Some(-fit_slope(&ts, &ys))
}

pub fn estimate_decay(g: &Digraph, trials: usize, t_max: f64, seed: u64, opts: DecayOptions) -> Result<DecayOutcome> {
    if trials < MIN_TRIALS {
        return Err(Error::InvalidInput(format!(
            "need at least {MIN_TRIALS} trials, got {trials}"
        )));
    }
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::InvalidInput(format!("t_max must be positive, got {t_max}")));
    }
    let (lo, hi) = opts.window;
    if !(0.0 < lo && lo < hi && hi <= 1.0) || opts.grid < 2 || opts.bootstrap < 2 {
        return Err(Error::InvalidInput("invalid decay estimation options".into()));
    }
    let n = g.n_vertices();
    let times: Vec<f64> = (0..=opts.grid).map(|j| t_max * j as f64 / opts.grid as f64).collect();
    let counts: Vec<Vec<u32>> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![0u32; times.len()];
            let mut next = 0;
            let mut current = n as u32;
            simulate(g, t_max, &mut trial_rng(seed, i), |t, k| {
                while next < times.len() && times[next] < t {
                    row[next] = current;
                    next += 1;
                }
                current = k as u32;
            });
            for r in &mut row[next..] {
                *r = current;
            }
            row
        })
        .collect();

    let mean: Vec<f64> = (0..times.len())
        .map(|j| counts.iter().map(|c| c[j] as f64).sum::<f64>() / trials as f64)
        .collect();
    let nf = n as f64;
    let idx: Vec<usize> = (0..times.len())
        .filter(|&j| mean[j] >= lo * nf && mean[j] <= hi * nf)
        .collect();
    if idx.len() < 3 {
        return Ok(DecayOutcome::NoDecayObserved {
            final_fraction: mean[times.len() - 1] / nf,
        });
    }
    let gamma_hat = rate(&counts, |_| 1.0, &times, &idx).expect("window means are positive");

    let mut rng = trial_rng(seed, BOOTSTRAP_STREAM);
    let mut reps = Vec::with_capacity(opts.bootstrap);
    let mut multiplicity = vec![0u32; trials];
    for _ in 0..opts.bootstrap {
        multiplicity.iter_mut().for_each(|m| *m = 0);
        for _ in 0..trials {
            multiplicity[rng.random_range(0..trials)] += 1;
        }
        if let Some(r) = rate(&counts, |i| multiplicity[i] as f64, &times, &idx) {
            reps.push(r);
        }
    }
    let m = reps.iter().sum::<f64>() / reps.len() as f64;
    let var = reps.iter().map(|r| (r - m) * (r - m)).sum::<f64>() / (reps.len() - 1) as f64;
    Ok(DecayOutcome::Estimate(DecayEstimate {
        gamma_hat,
        stderr: var.sqrt(),
        window: (times[idx[0]], times[idx[idx.len() - 1]]),
        trials,
        points: idx.len(),
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub bound: DecayBound,
    /// Exact decay rate when `N <= 12`.
    pub exact: Option<f64>,
    pub estimate: DecayOutcome,
    /// `exact >= bound - 1e-8`.
    pub exact_respects_bound: Option<bool>,
    /// `gamma_hat >= bound - 3 stderr`.
    pub estimate_respects_bound: Option<bool>,
    /// `|gamma_hat - exact| <= 3 stderr`.
    pub estimate_brackets_exact: Option<bool>,
}

impl BoundReport {
    /// False if any available check failed.
    pub fn passed(&self) -> bool {
        [self.exact_respects_bound, self.estimate_respects_bound]
            .iter()
            .all(|v| v.unwrap_or(true))
    }
}

pub fn bound_report(g: &Digraph, trials: usize, t_max: f64, seed: u64, opts: DecayOptions) -> Result<BoundReport> {
    let bound = decay_bound(&MetzlerAssembly::from_digraph(g)?)?;
    let exact = if g.n_vertices() <= MAX_EXACT_VERTICES {
        Some(exact_decay(g)?)
    } else {
        None
    };
    let estimate = estimate_decay(g, trials, t_max, seed, opts)?;
    let (est_bound, bracket) = match &estimate {
        DecayOutcome::Estimate(e) => (
            Some(e.gamma_hat >= bound.bound - 3.0 * e.stderr),
            exact.map(|x| (e.gamma_hat - x).abs() <= 3.0 * e.stderr),
        ),
        DecayOutcome::NoDecayObserved { .. } => (None, None),
    };
    Ok(BoundReport {
        bound,
        exact,
        exact_respects_bound: exact.map(|x| x >= bound.bound - 1e-8),
        estimate,
        estimate_respects_bound: est_bound,
        estimate_brackets_exact: bracket,
    })
}
