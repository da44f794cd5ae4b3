use alloc::vec::Vec;
use core::f64::consts::PI;

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use super::measurement::{correlation_witness, qubit_measurement_kets, PovmElement};
use super::simplex::{minimize, SimplexOptions};
use super::state::BipartiteState;
use crate::math::{cos, sin};
use crate::qcore::{c, C64};

/// Settings for [`maximize_witness`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimizerConfig {
    /// Lattice points per scanned angle.
    pub grid: usize,
    /// Number of coarse-scan points refined by the simplex.
    pub starts: usize,
    /// Simplex stopping tolerance on `Q`.
    pub tolerance: f64,
    /// Evaluation budget per refinement.
    pub max_evals: usize,
    pub seed: u64,
    /// `best_q` above this counts as detected correlation.
    pub threshold: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self { grid: 12, starts: 5, tolerance: 1e-10, max_evals: 2000, seed: 0, threshold: 1e-8 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    QuantumCorrelated,
    NoViolationFound,
}

/// How measurement parameters map to the two projected kets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MeasurementFamily {
    /// `[theta, phi, chi1, chi2]`, see [`qubit_measurement_kets`].
    Qubit,
    /// Two independent unit vectors in hyperspherical form:
    /// `[polar angles of v1 (d-1), polar angles of v2 (d-1), phases of v1 (d-1), phases of v2 (d-1)]`.
    General { dim: usize },
}

impl MeasurementFamily {
    pub fn for_dim(dim: usize) -> Self {
        if dim == 2 {
            MeasurementFamily::Qubit
        } else {
            MeasurementFamily::General { dim }
        }
    }

    pub fn parameter_count(self) -> usize {
        match self {
            MeasurementFamily::Qubit => 4,
            MeasurementFamily::General { dim } => 4 * (dim - 1),
        }
    }

    /// Upper end of the sampling box for each parameter (lower end 0).
    fn range(self, index: usize) -> f64 {
        let polar = match self {
            MeasurementFamily::Qubit => 2,
            MeasurementFamily::General { dim } => 2 * (dim - 1),
        };
        if index < polar {
            PI
        } else {
            2.0 * PI
        }
    }

    /// Index of the leading polar angle of the second vector.
    fn second_lead(self) -> usize {
        match self {
            MeasurementFamily::Qubit => 1,
            MeasurementFamily::General { dim } => dim - 1,
        }
    }

    pub fn kets(self, params: &[f64]) -> (Vec<C64>, Vec<C64>) {
        match self {
            MeasurementFamily::Qubit => {
                let (a, b) = qubit_measurement_kets(params[0], params[2], params[1], params[3]);
                (a.to_vec(), b.to_vec())
            }
            MeasurementFamily::General { dim } => {
                let m = dim - 1;
                (
                    hyperspherical(&params[..m], &params[2 * m..3 * m]),
                    hyperspherical(&params[m..2 * m], &params[3 * m..4 * m]),
                )
            }
        }
    }
}

/// Unit vector with amplitudes `cos t0, sin t0 cos t1, ..., sin t0 ... sin t_{d-2}`
/// and phase `e^{i p_{k-1}}` on component `k >= 1`.
fn hyperspherical(polar: &[f64], phases: &[f64]) -> Vec<C64> {
    let dim = polar.len() + 1;
    let mut out = Vec::with_capacity(dim);
    let mut carry = 1.0;
    for k in 0..dim {
        let amp = if k < polar.len() { carry * cos(polar[k]) } else { carry };
        if k < polar.len() {
            carry *= sin(polar[k]);
        }
        let phase = if k == 0 { c(1.0, 0.0) } else { C64::new(cos(phases[k - 1]), sin(phases[k - 1])) };
        out.push(phase * amp);
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchPoint {
    pub params: Vec<f64>,
    pub q: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiscordReport {
    pub best_q: f64,
    pub family: MeasurementFamily,
    pub best_params: Vec<f64>,
    /// Kets whose projectors attain `best_q`.
    pub best_kets: (Vec<C64>, Vec<C64>),
    pub evaluations: usize,
    /// Refined optimum of each start, in start order.
    pub trace: Vec<SearchPoint>,
    pub verdict: Verdict,
}

/// Objective value at a parameter point; outcomes with vanishing
/// probability score 0 so the search steers away from them.
pub fn witness_at(rho: &BipartiteState, family: MeasurementFamily, params: &[f64]) -> f64 {
    let (k1, k2) = family.kets(params);
    let (Ok(e1), Ok(e2)) = (PovmElement::projector(&k1), PovmElement::projector(&k2)) else {
        return 0.0;
    };
    correlation_witness(rho, &e1, &e2).unwrap_or(0.0)
}

fn uniform(rng: &mut ChaCha20Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

/// Searches pairs of rank-1 projectors on `A` for the largest `Q` of Bob's
/// conditional states.
///
/// A coarse scan evaluates a `grid x grid` lattice over the leading polar
/// angle of each vector (all other parameters zero) followed by `grid^2`
/// seeded uniform points over the whole parameter box. The best `starts`
/// scan points (ties to the earlier point) are refined by Nelder-Mead.
pub fn maximize_witness(rho: &BipartiteState, config: &OptimizerConfig) -> DiscordReport {
    let family = MeasurementFamily::for_dim(rho.dim_a());
    let n = family.parameter_count();
    let grid = config.grid.max(1);

    let mut evaluations = 0usize;
    let mut best = SearchPoint { params: alloc::vec![0.0; n], q: f64::NEG_INFINITY };
    let evaluate = |params: &[f64], evaluations: &mut usize, best: &mut SearchPoint| -> f64 {
        *evaluations += 1;
        let q = witness_at(rho, family, params);
        if q > best.q {
            *best = SearchPoint { params: params.to_vec(), q };
        }
        q
    };

    let mut scan: Vec<SearchPoint> = Vec::with_capacity(2 * grid * grid);
    let step = PI / grid as f64;
    for i in 0..grid {
        for j in 0..grid {
            let mut params = alloc::vec![0.0; n];
            params[0] = i as f64 * step;
            params[family.second_lead()] = j as f64 * step;
            let q = evaluate(&params, &mut evaluations, &mut best);
            scan.push(SearchPoint { params, q });
        }
    }
    let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
    for _ in 0..grid * grid {
        let params: Vec<f64> = (0..n).map(|k| uniform(&mut rng) * family.range(k)).collect();
        let q = evaluate(&params, &mut evaluations, &mut best);
        scan.push(SearchPoint { params, q });
    }

    // stable sort keeps the earlier point first among ties
    scan.sort_by(|a, b| b.q.total_cmp(&a.q));
    let options = SimplexOptions { initial_step: step / 2.0, tolerance: config.tolerance, max_evals: config.max_evals };
    let mut trace = Vec::with_capacity(config.starts);
    for start in scan.iter().take(config.starts) {
        let outcome = minimize(
            |x| -evaluate(x, &mut evaluations, &mut best),
            &start.params,
            &options,
        );
        trace.push(SearchPoint { params: outcome.point, q: -outcome.value });
    }

    let best_q = best.q.max(0.0);
    let verdict = if best_q > config.threshold { Verdict::QuantumCorrelated } else { Verdict::NoViolationFound };
    DiscordReport {
        best_q,
        family,
        best_kets: family.kets(&best.params),
        best_params: best.params,
        evaluations,
        trace,
        verdict,
    }
}
