use alloc::vec::Vec;
use core::f64::consts::PI;

use rand_chacha::ChaCha20Rng;
use rand_core::SeedableRng;
use rand_distr::{Binomial, Distribution};

use super::permutation::{permutation_expectation, PermutationUnitary};
use crate::error::{Error, Result};
use crate::math::{atan2, cos, sin, sqrt};
use crate::qcore::{DensityMatrix, C64};

/// Slack allowed on fringe probabilities before they count as inconsistent.
const PROBABILITY_SLACK: f64 = 1e-9;

/// Minimum number of distinct phase settings for an identifiable fit.
pub const MIN_DISTINCT_PHASES: usize = 3;

/// Number of phase settings used when none are given.
pub const DEFAULT_PHASE_COUNT: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SamplingMode {
    /// Exact outcome probabilities.
    Exact,
    /// Binomially sampled outcome counts.
    Sampled { shots_per_phase: u64, seed: u64 },
}

impl SamplingMode {
    pub fn sampled(shots_per_phase: u64, seed: u64) -> Result<Self> {
        if shots_per_phase == 0 {
            return Err(Error::InvalidSampling("shots per phase must be positive".into()));
        }
        Ok(Self::Sampled { shots_per_phase, seed })
    }
}

/// `count` equally spaced phases `2 pi k / count` in `[0, 2 pi)`.
pub fn default_phases(count: usize) -> Vec<f64> {
    (0..count).map(|k| 2.0 * PI * k as f64 / count as f64).collect()
}

/// Number of phases that are distinct as points on the unit circle.
fn distinct_phase_count(phases: &[f64]) -> usize {
    let mut seen: Vec<(f64, f64)> = Vec::with_capacity(phases.len());
    for &p in phases {
        let point = (cos(p), sin(p));
        if !seen.iter().any(|q| (q.0 - point.0).abs() < 1e-12 && (q.1 - point.1).abs() < 1e-12) {
            seen.push(point);
        }
    }
    seen.len()
}

fn check_phase_grid(phases: &[f64]) -> Result<()> {
    let found = distinct_phase_count(phases);
    if found < MIN_DISTINCT_PHASES {
        return Err(Error::DegeneratePhaseGrid { required: MIN_DISTINCT_PHASES, found });
    }
    Ok(())
}

/// One controlled-U interference experiment on a product input.
///
/// Circuit: Hadamard on the ancilla, controlled-U on the register, phase
/// gate `R_phi` on the ancilla, Hadamard, then measure the ancilla. The
/// probability of outcome 0 is `(1 + Re(e^{i phi} Tr(U rho))) / 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct InterferometerSpec {
    unitary: PermutationUnitary,
    inputs: Vec<DensityMatrix>,
    phases: Vec<f64>,
    mode: SamplingMode,
}

impl InterferometerSpec {
    pub fn new(
        unitary: PermutationUnitary,
        inputs: Vec<DensityMatrix>,
        phases: Vec<f64>,
        mode: SamplingMode,
    ) -> Result<Self> {
        let dims = unitary.layout().dims();
        if inputs.len() != dims.len() {
            return Err(Error::WrongFactorCount { expected: dims.len(), found: inputs.len() });
        }
        for (input, &d) in inputs.iter().zip(dims) {
            if input.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, found: input.dim() });
            }
        }
        if phases.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidSampling("phase settings must be finite".into()));
        }
        check_phase_grid(&phases)?;
        if let SamplingMode::Sampled { shots_per_phase: 0, .. } = mode {
            return Err(Error::InvalidSampling("shots per phase must be positive".into()));
        }
        Ok(Self { unitary, inputs, phases, mode })
    }

    pub fn unitary(&self) -> &PermutationUnitary {
        &self.unitary
    }

    pub fn inputs(&self) -> &[DensityMatrix] {
        &self.inputs
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn mode(&self) -> SamplingMode {
        self.mode
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FringePoint {
    pub phase_rad: f64,
    /// Probability (exact mode) or observed frequency of ancilla outcome 0.
    pub p0: f64,
    /// Number of shots; 0 for exact probabilities.
    pub shots: u64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FringeData {
    pub points: Vec<FringePoint>,
}

impl FringeData {
    /// Noiseless fringe of a given expectation value `Tr(U rho)`.
    pub fn exact(expectation: C64, phases: &[f64]) -> Result<Self> {
        let points = phases
            .iter()
            .map(|&phase_rad| Ok(FringePoint { phase_rad, p0: fringe_probability(phase_rad, expectation)?, shots: 0 }))
            .collect::<Result<_>>()?;
        Ok(Self { points })
    }

    /// Points sorted by phase (stable for equal phases).
    pub fn sorted_by_phase(&self) -> Vec<FringePoint> {
        let mut points = self.points.clone();
        points.sort_by(|a, b| a.phase_rad.total_cmp(&b.phase_rad));
        points
    }

    pub fn is_exact(&self) -> bool {
        self.points.iter().all(|p| p.shots == 0)
    }
}

/// Ancilla outcome-0 probability `(1 + Re(e^{i phi} t)) / 2` for `t = Tr(U rho)`.
pub fn fringe_probability(phase: f64, expectation: C64) -> Result<f64> {
    let p = 0.5 * (1.0 + (C64::new(cos(phase), sin(phase)) * expectation).re);
    if !(-PROBABILITY_SLACK..=1.0 + PROBABILITY_SLACK).contains(&p) {
        return Err(Error::ProbabilityOutOfRange { value: p });
    }
    Ok(p.clamp(0.0, 1.0))
}

/// Runs the experiment at every phase setting.
///
/// In sampled mode the generator for phase index `k` is ChaCha20 seeded
/// with `seed` on stream `k`, so results do not depend on evaluation order.
pub fn run_interferometer(spec: &InterferometerSpec) -> Result<FringeData> {
    let expectation = permutation_expectation(&spec.unitary, &spec.inputs)?;
    let exact = FringeData::exact(expectation, &spec.phases)?;
    match spec.mode {
        SamplingMode::Exact => Ok(exact),
        SamplingMode::Sampled { shots_per_phase, seed } => {
            let points = exact
                .points
                .iter()
                .enumerate()
                .map(|(k, point)| {
                    let mut rng = ChaCha20Rng::seed_from_u64(seed);
                    rng.set_stream(k as u64);
                    let dist = Binomial::new(shots_per_phase, point.p0)
                        .map_err(|_| Error::ProbabilityOutOfRange { value: point.p0 })?;
                    let hits = dist.sample(&mut rng);
                    Ok(FringePoint {
                        phase_rad: point.phase_rad,
                        p0: hits as f64 / shots_per_phase as f64,
                        shots: shots_per_phase,
                    })
                })
                .collect::<Result<_>>()?;
            Ok(FringeData { points })
        }
    }
}

/// Fitted fringe parameters: `p0(phi) = (1 + v cos(phi + alpha)) / 2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VisibilityEstimate {
    pub v: f64,
    /// In `(-pi, pi]`.
    pub alpha: f64,
    /// Zero for exact fringes.
    pub stderr_v: f64,
    /// `v cos(alpha)`, the estimate of `Re Tr(U rho)`.
    pub re: f64,
    pub stderr_re: f64,
}

impl VisibilityEstimate {
    pub fn expectation(&self) -> C64 {
        C64::new(self.v * cos(self.alpha), self.v * sin(self.alpha))
    }
}

/// Ordinary least squares on the linearized model
/// `p0 - 1/2 = x cos(phi) - y sin(phi)` with `x = v cos(alpha) / 2`,
/// `y = v sin(alpha) / 2`.
///
/// Standard errors propagate the binomial variance `p(1 - p) / shots` of
/// each point, with `p` taken from the fitted model.
pub fn extract_visibility(fringes: &FringeData) -> Result<VisibilityEstimate> {
    let phases: Vec<f64> = fringes.points.iter().map(|p| p.phase_rad).collect();
    check_phase_grid(&phases)?;

    let (mut a11, mut a12, mut a22, mut b1, mut b2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for p in &fringes.points {
        let (u, w) = (cos(p.phase_rad), -sin(p.phase_rad));
        let y = p.p0 - 0.5;
        a11 += u * u;
        a12 += u * w;
        a22 += w * w;
        b1 += u * y;
        b2 += w * y;
    }
    let det = a11 * a22 - a12 * a12;
    // inverse of the normal matrix
    let (i11, i12, i22) = (a22 / det, -a12 / det, a11 / det);
    let x = i11 * b1 + i12 * b2;
    let y = i12 * b1 + i22 * b2;

    // Sandwich covariance A^-1 (sum var_k r_k r_k^T) A^-1.
    let (mut m11, mut m12, mut m22) = (0.0, 0.0, 0.0);
    for p in fringes.points.iter().filter(|p| p.shots > 0) {
        let (u, w) = (cos(p.phase_rad), -sin(p.phase_rad));
        let model = (0.5 + x * u + y * w).clamp(0.0, 1.0);
        let var = model * (1.0 - model) / p.shots as f64;
        m11 += var * u * u;
        m12 += var * u * w;
        m22 += var * w * w;
    }
    let c11 = i11 * (i11 * m11 + i12 * m12) + i12 * (i11 * m12 + i12 * m22);
    let c12 = i11 * (i12 * m11 + i22 * m12) + i12 * (i12 * m12 + i22 * m22);
    let c22 = i12 * (i12 * m11 + i22 * m12) + i22 * (i12 * m12 + i22 * m22);

    let r = sqrt(x * x + y * y);
    let v = 2.0 * r;
    let mut alpha = atan2(y, x);
    if alpha <= -PI {
        alpha = PI;
    }
    let var_r = if r > 1e-12 {
        (x * x * c11 + 2.0 * x * y * c12 + y * y * c22) / (r * r)
    } else {
        0.5 * (c11 + c22)
    };
    Ok(VisibilityEstimate {
        v,
        alpha,
        stderr_v: 2.0 * sqrt(var_r.max(0.0)),
        re: 2.0 * x,
        stderr_re: 2.0 * sqrt(c11.max(0.0)),
    })
}
