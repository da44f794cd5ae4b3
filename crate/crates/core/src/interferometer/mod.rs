//! Controlled-permutation interferometry.
//!
//! Two experiments on the register `rho_a (x) rho_a (x) rho_b (x) rho_b`
//! measure `v1 = Tr(rho_a^2 rho_b^2)` (with `U1`) and `v2 = Tr((rho_a rho_b)^2)`
//! (with `U2`) as fringe visibilities of an ancilla qubit, and
//! `Q = 4 (v1 - v2)`.

mod fringe;
mod permutation;

use alloc::vec::Vec;

pub use fringe::{
    default_phases, extract_visibility, fringe_probability, run_interferometer, FringeData, FringePoint,
    InterferometerSpec, SamplingMode, VisibilityEstimate, DEFAULT_PHASE_COUNT, MIN_DISTINCT_PHASES,
};
pub use permutation::{build_u1, build_u2, generalized_swap, permutation_expectation, PermutationUnitary};

use crate::error::{Error, Result};
use crate::math::sqrt;
use crate::qcore::{DensityMatrix, RegisterLayout};
use crate::witness::{QuantumnessMethod, WitnessResult};

/// Which of the two cascades to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cascade {
    U1,
    U2,
}

impl Cascade {
    pub fn build(self, layout: &RegisterLayout) -> Result<PermutationUnitary> {
        match self {
            Cascade::U1 => build_u1(layout),
            Cascade::U2 => build_u2(layout),
        }
    }
}

/// Offset separating the U2 seed from the U1 seed in sampled runs.
const U2_SEED_OFFSET: u64 = 0x9E37_79B9_7F4A_7C15;

/// The input list `rho_a, rho_a, rho_b, rho_b` and its layout.
pub fn four_copy_register(a: &DensityMatrix, b: &DensityMatrix) -> Result<(RegisterLayout, Vec<DensityMatrix>)> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    let layout = RegisterLayout::uniform(a.dim(), 4)?;
    Ok((layout, alloc::vec![a.clone(), a.clone(), b.clone(), b.clone()]))
}

/// Builds the experiment for one cascade. In sampled mode the U2
/// experiment uses a seed derived from the given one.
pub fn cascade_spec(
    cascade: Cascade,
    a: &DensityMatrix,
    b: &DensityMatrix,
    phases: Vec<f64>,
    mode: SamplingMode,
) -> Result<InterferometerSpec> {
    let (layout, inputs) = four_copy_register(a, b)?;
    let mode = match (cascade, mode) {
        (Cascade::U2, SamplingMode::Sampled { shots_per_phase, seed }) => {
            SamplingMode::Sampled { shots_per_phase, seed: seed.wrapping_add(U2_SEED_OFFSET) }
        }
        (_, mode) => mode,
    };
    InterferometerSpec::new(cascade.build(&layout)?, inputs, phases, mode)
}

#[derive(Clone, Debug, PartialEq)]
pub struct InterferometricEstimate {
    /// `v1_term`, `v2_term` are the fitted real parts of `Tr(U1 rho)`, `Tr(U2 rho)`.
    pub witness: WitnessResult,
    pub u1: VisibilityEstimate,
    pub u2: VisibilityEstimate,
    pub fringes_u1: FringeData,
    pub fringes_u2: FringeData,
    /// Standard error of `q_value`; zero in exact mode.
    pub stderr_q: f64,
}

/// `Q = 4 (v1 - v2)` from two interference experiments on the default phase grid.
pub fn interferometric_quantumness(
    a: &DensityMatrix,
    b: &DensityMatrix,
    mode: SamplingMode,
) -> Result<InterferometricEstimate> {
    interferometric_quantumness_with_phases(a, b, mode, &default_phases(DEFAULT_PHASE_COUNT))
}

pub fn interferometric_quantumness_with_phases(
    a: &DensityMatrix,
    b: &DensityMatrix,
    mode: SamplingMode,
    phases: &[f64],
) -> Result<InterferometricEstimate> {
    let fringes_u1 = run_interferometer(&cascade_spec(Cascade::U1, a, b, phases.to_vec(), mode)?)?;
    let fringes_u2 = run_interferometer(&cascade_spec(Cascade::U2, a, b, phases.to_vec(), mode)?)?;
    let u1 = extract_visibility(&fringes_u1)?;
    let u2 = extract_visibility(&fringes_u2)?;
    let witness = WitnessResult {
        q_value: 4.0 * (u1.re - u2.re),
        v1_term: u1.re,
        v2_term: u2.re,
        method: QuantumnessMethod::Interferometric,
    };
    let stderr_q = 4.0 * sqrt(u1.stderr_re * u1.stderr_re + u2.stderr_re * u2.stderr_re);
    Ok(InterferometricEstimate { witness, u1, u2, fringes_u1, fringes_u2, stderr_q })
}
