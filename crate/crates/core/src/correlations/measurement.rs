use alloc::format;

use super::state::BipartiteState;
use crate::error::{Error, Result};
use crate::math::{cos, sin};
use crate::qcore::{
    c, partial_trace_operator, tensor_product, ComplexOperator, DensityMatrix, C64, STRUCTURAL_TOL,
};
use crate::witness::{quantumness, QuantumnessMethod};

/// Below this outcome probability a conditional state is undefined.
pub const MIN_PROBABILITY: f64 = 1e-12;

/// A POVM element on subsystem `A`: Hermitian and positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct PovmElement {
    op: ComplexOperator,
}

impl PovmElement {
    pub fn new(op: ComplexOperator) -> Result<Self> {
        let deviation = op.hermiticity_deviation();
        if deviation > STRUCTURAL_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let min = op.hermitian_eigenvalues()[0];
        if min < -STRUCTURAL_TOL {
            return Err(Error::NegativeEigenvalue { eigenvalue: min });
        }
        Ok(Self { op })
    }

    /// Rank-1 projector onto the normalized `ket`.
    pub fn projector(ket: &[C64]) -> Result<Self> {
        Ok(Self { op: DensityMatrix::pure(ket)?.into_operator() })
    }

    pub fn operator(&self) -> &ComplexOperator {
        &self.op
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }
}

/// Checks that the elements share a dimension and sum to the identity.
pub fn validate_povm(elements: &[PovmElement]) -> Result<()> {
    let first = elements.first().ok_or_else(|| Error::InvalidPovm("no elements".into()))?;
    let dim = first.dim();
    let mut sum = ComplexOperator::zeros(dim);
    for e in elements {
        if e.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: e.dim() });
        }
        sum = &sum + e.operator();
    }
    let deviation = (&sum - &ComplexOperator::identity(dim)).max_abs();
    if deviation > STRUCTURAL_TOL {
        return Err(Error::InvalidPovm(format!("elements sum to identity only within {deviation:e}")));
    }
    Ok(())
}

/// Angles of the qubit measurement family
/// `|psi1> = cos(theta)|0> + sin(theta)|1>`,
/// `|psi2> = cos(phi)|psi1> + sin(phi)|psi1_perp>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementAngles {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementAngles {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }
}

/// Kets of the qubit family with an azimuthal phase on each vector:
/// `|psi1> = cos(theta)|0> + e^{i chi1} sin(theta)|1>`,
/// `|psi1_perp> = sin(theta)|0> - e^{i chi1} cos(theta)|1>`,
/// `|psi2> = cos(phi)|psi1> + e^{i chi2} sin(phi)|psi1_perp>`.
/// Zero phases give the real family of [`MeasurementAngles`].
pub fn qubit_measurement_kets(theta: f64, chi1: f64, phi: f64, chi2: f64) -> ([C64; 2], [C64; 2]) {
    let e1 = C64::new(cos(chi1), sin(chi1));
    let e2 = C64::new(cos(chi2), sin(chi2));
    let psi1 = [c(cos(theta), 0.0), e1 * sin(theta)];
    let perp = [c(sin(theta), 0.0), -e1 * cos(theta)];
    let psi2 = [psi1[0] * cos(phi) + e2 * perp[0] * sin(phi), psi1[1] * cos(phi) + e2 * perp[1] * sin(phi)];
    (psi1, psi2)
}

/// Rank-1 projectors `(|psi1><psi1|, |psi2><psi2|)` for the given angles.
pub fn projector_pair(angles: MeasurementAngles) -> (PovmElement, PovmElement) {
    let (psi1, psi2) = qubit_measurement_kets(angles.theta, 0.0, angles.phi, 0.0);
    (
        PovmElement { op: ComplexOperator::outer(&psi1) },
        PovmElement { op: ComplexOperator::outer(&psi2) },
    )
}

/// Bob's state after Alice obtains the outcome of `E`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionalState {
    pub probability: f64,
    /// `None` when `probability <= MIN_PROBABILITY`.
    pub state: Option<DensityMatrix>,
}

/// `rho_B|E = Tr_A[(E (x) I) rho] / Tr[(E (x) I) rho]`.
pub fn conditional_state(rho: &BipartiteState, e: &PovmElement) -> Result<ConditionalState> {
    if e.dim() != rho.dim_a() {
        return Err(Error::DimensionMismatch { expected: rho.dim_a(), found: e.dim() });
    }
    let lifted = tensor_product(e.operator(), &ComplexOperator::identity(rho.dim_b()));
    let weighted = &lifted * rho.state().operator();
    let unnormalized = partial_trace_operator(&weighted, &rho.layout(), &[1])?;
    let probability = unnormalized.trace().re;
    if probability <= MIN_PROBABILITY {
        return Ok(ConditionalState { probability: probability.max(0.0), state: None });
    }
    let state = DensityMatrix::new(unnormalized.scale(c(1.0 / probability, 0.0)))?;
    Ok(ConditionalState { probability, state: Some(state) })
}

/// `Q(rho_B|1, rho_B|2)` for Alice's elements `e1`, `e2`.
pub fn correlation_witness(rho: &BipartiteState, e1: &PovmElement, e2: &PovmElement) -> Result<f64> {
    let condition = |e: &PovmElement, element: usize| -> Result<DensityMatrix> {
        let cond = conditional_state(rho, e)?;
        cond.state.ok_or(Error::ZeroProbability { element, probability: cond.probability })
    };
    let b1 = condition(e1, 1)?;
    let b2 = condition(e2, 2)?;
    Ok(quantumness(&b1, &b2, QuantumnessMethod::DirectNorm)?.q_value)
}
