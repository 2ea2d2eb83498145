//! Stochastic SIS dynamics: Gillespie simulation, the exact decay rate from
//! the master equation, and empirical decay estimates checked against the
//! bound `γ ≥ -λ_max(𝒜)`.
//!
//! Every trajectory starts with all vertices infected. Random numbers come
//! from ChaCha8 seeded with the run seed, one stream per trial index, so
//! results do not depend on thread scheduling.

mod estimate;
mod exact;

pub use estimate::{bound_report, estimate_decay, BoundReport, DecayEstimate, DecayOptions, DecayOutcome};
pub use exact::{exact_decay, sis_generator, MAX_EXACT_VERTICES};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Digraph;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SisState {
    pub infected: Vec<bool>,
    pub time: f64,
}

impl SisState {
    pub fn all_infected(n: usize) -> Self {
        Self {
            infected: vec![true; n],
            time: 0.0,
        }
    }

    pub fn count(&self) -> usize {
        self.infected.iter().filter(|&&b| b).count()
    }
}

/// `(time, infected count)` after each event, starting at `(0, N)`.
/// Ends at absorption or with a final point at `t_max`.
pub type Trajectory = Vec<(f64, usize)>;

pub(crate) fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// One exact-event trajectory on stream 0 of `seed`.
pub fn gillespie_run(g: &Digraph, t_max: f64, seed: u64) -> Result<Trajectory> {
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::InvalidInput(format!("t_max must be positive, got {t_max}")));
    }
    let mut traj = Vec::new();
    simulate(g, t_max, &mut trial_rng(seed, 0), |t, k| traj.push((t, k)));
    Ok(traj)
}

/// Runs one trajectory, reporting `(time, count)` at the start, after each
/// event, and at `t_max` unless absorbed earlier.
pub(crate) fn simulate(g: &Digraph, t_max: f64, rng: &mut impl Rng, mut emit: impl FnMut(f64, usize)) {
    let mut state = SisState::all_infected(g.n_vertices());
    let mut count = g.n_vertices();
    emit(0.0, count);
    let (arcs, beta, delta) = (g.arcs(), g.beta(), g.delta());
    while count > 0 {
        let mut total = 0.0;
        for (v, &inf) in state.infected.iter().enumerate() {
            if inf {
                total += delta[v];
            }
        }
        for (a, &b) in arcs.iter().zip(beta) {
            if state.infected[a.origin] && !state.infected[a.terminus] {
                total += b;
            }
        }
        let wait = -(1.0 - rng.random::<f64>()).ln() / total;
        if state.time + wait > t_max {
            break;
        }
        state.time += wait;
        let mut r = rng.random::<f64>() * total;
        let mut chosen = None;
        for (v, &inf) in state.infected.iter().enumerate() {
            if inf {
                r -= delta[v];
                if r < 0.0 {
                    chosen = Some((v, false));
                    break;
                }
            }
        }
        if chosen.is_none() {
            for (a, &b) in arcs.iter().zip(beta) {
                if state.infected[a.origin] && !state.infected[a.terminus] {
                    r -= b;
                    if r < 0.0 {
                        chosen = Some((a.terminus, true));
                        break;
                    }
                }
            }
        }
        // Rounding can leave r marginally nonnegative after the scan; the
        // last enabled event is then the intended one.
        let (v, infect) = chosen.unwrap_or_else(|| last_event(g, &state.infected));
        state.infected[v] = infect;
        if infect {
            count += 1;
        } else {
            count -= 1;
        }
        emit(state.time, count);
    }
    if count > 0 {
        emit(t_max, count);
    }
}

fn last_event(g: &Digraph, infected: &[bool]) -> (usize, bool) {
    for a in g.arcs().iter().rev() {
        if infected[a.origin] && !infected[a.terminus] {
            return (a.terminus, true);
        }
    }
    let v = infected.iter().rposition(|&b| b).expect("an infected vertex exists");
    (v, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, symmetrize};

    #[test]
    fn deterministic_for_seed() {
        let g = cycle(5, 1.3, 0.7).unwrap();
        assert_eq!(gillespie_run(&g, 10.0, 9).unwrap(), gillespie_run(&g, 10.0, 9).unwrap());
        assert_ne!(
            gillespie_run(&g, 10.0, 9).unwrap(),
            gillespie_run(&g, 10.0, 10).unwrap()
        );
    }

    #[test]
    fn trajectory_shape() {
        let g = cycle(4, 0.5, 1.0).unwrap();
        let t = gillespie_run(&g, 50.0, 3).unwrap();
        assert_eq!(t[0], (0.0, 4));
        assert!(t.windows(2).all(|w| w[0].0 <= w[1].0));
        assert!(t.windows(2).all(|w| w[0].1.abs_diff(w[1].1) <= 1));
    }

    #[test]
    fn recovery_time_is_exponential() {
        // With negligible infection each vertex recovers after Exp(δ).
        let delta = 2.0;
        let g = symmetrize(2, &[(0, 1)], 1e-12, delta).unwrap();
        let trials = 10_000;
        let mut sum = 0.0;
        let mut sq = 0.0;
        for i in 0..trials {
            let mut first = None;
            simulate(&g, 100.0, &mut trial_rng(5, i), |t, k| {
                if k == 1 && first.is_none() {
                    first = Some(t);
                }
            });
            // Time until the first of two recoveries is Exp(2δ).
            let t = first.unwrap();
            sum += t;
            sq += t * t;
        }
        let n = trials as f64;
        let mean = sum / n;
        let se = ((sq / n - mean * mean) / n).sqrt();
        assert!((mean - 1.0 / (2.0 * delta)).abs() < 3.0 * se, "{mean} ± {se}");
    }

    #[test]
    fn strong_recovery_absorbs() {
        let g = cycle(4, 0.01, 5.0).unwrap();
        for s in 0..100 {
            let t = gillespie_run(&g, 100.0, s).unwrap();
            assert_eq!(t.last().unwrap().1, 0);
        }
    }
}
