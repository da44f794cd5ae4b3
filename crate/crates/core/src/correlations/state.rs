use alloc::format;
use alloc::vec::Vec;

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::math::sqrt;
use crate::qcore::{
    c, partial_trace, tensor_product, validate_density, ComplexOperator, DensityMatrix, RegisterLayout, C64,
    STRUCTURAL_TOL,
};

/// A density matrix on `A (x) B` with `A` as the outer factor.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteState {
    state: DensityMatrix,
    dim_a: usize,
    dim_b: usize,
}

impl BipartiteState {
    pub fn new(state: DensityMatrix, dim_a: usize, dim_b: usize) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 || dim_a.checked_mul(dim_b) != Some(state.dim()) {
            return Err(Error::Layout(format!(
                "subsystem dimensions {dim_a} x {dim_b} do not match state dimension {}",
                state.dim()
            )));
        }
        Ok(Self { state, dim_a, dim_b })
    }

    pub fn product(a: &DensityMatrix, b: &DensityMatrix) -> Self {
        let op = tensor_product(a.operator(), b.operator());
        Self { state: DensityMatrix::from_operator_unchecked(op), dim_a: a.dim(), dim_b: b.dim() }
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn layout(&self) -> RegisterLayout {
        RegisterLayout::new(alloc::vec![self.dim_a, self.dim_b]).expect("dimensions checked at construction")
    }

    pub fn reduced_a(&self) -> DensityMatrix {
        partial_trace(&self.state, &self.layout(), &[0]).expect("layout matches state")
    }

    pub fn reduced_b(&self) -> DensityMatrix {
        partial_trace(&self.state, &self.layout(), &[1]).expect("layout matches state")
    }
}

/// `(|00> + |11>) / sqrt(2)`.
pub fn epr_state() -> BipartiteState {
    let h = core::f64::consts::FRAC_1_SQRT_2;
    let ket = [c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)];
    let state = DensityMatrix::pure(&ket).expect("normalized ket");
    BipartiteState { state, dim_a: 2, dim_b: 2 }
}

/// The separable but non-classical mixture
/// `(|0><0| (x) |+><+| + |1><1| (x) |-><-| + |+><+| (x) |1><1| + |-><-| (x) |0><0|) / 4`.
pub fn separable_example_state() -> BipartiteState {
    let h = core::f64::consts::FRAC_1_SQRT_2;
    let zero = ComplexOperator::outer(&[c(1.0, 0.0), c(0.0, 0.0)]);
    let one = ComplexOperator::outer(&[c(0.0, 0.0), c(1.0, 0.0)]);
    let plus = ComplexOperator::outer(&[c(h, 0.0), c(h, 0.0)]);
    let minus = ComplexOperator::outer(&[c(h, 0.0), c(-h, 0.0)]);
    let terms = [(&zero, &plus), (&one, &minus), (&plus, &one), (&minus, &zero)];
    let sum = terms
        .iter()
        .map(|(a, b)| tensor_product(a, b))
        .fold(ComplexOperator::zeros(4), |acc, t| &acc + &t);
    let state = validate_density(sum.scale(c(0.25, 0.0))).expect("convex mixture of product states");
    BipartiteState { state, dim_a: 2, dim_b: 2 }
}

/// Ingredients of `sum_i p_i rho_i (x) |b_i><b_i|`.
#[derive(Clone, Debug, PartialEq)]
pub struct CqSpec {
    pub probs: Vec<f64>,
    pub a_states: Vec<DensityMatrix>,
    /// Orthonormal vectors of `B`, one per term.
    pub b_basis: Vec<DVector<C64>>,
}

/// Builds the classical-quantum state described by `spec`.
pub fn build_cq_state(spec: &CqSpec) -> Result<BipartiteState> {
    let n = spec.probs.len();
    if n == 0 {
        return Err(Error::InvalidCqSpec("no terms".into()));
    }
    if spec.a_states.len() != n || spec.b_basis.len() != n {
        return Err(Error::InvalidCqSpec(format!(
            "{} probabilities, {} A states, {} B vectors",
            n,
            spec.a_states.len(),
            spec.b_basis.len()
        )));
    }
    if let Some(p) = spec.probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
        return Err(Error::InvalidCqSpec(format!("negative or non-finite probability {p}")));
    }
    let total: f64 = spec.probs.iter().sum();
    if (total - 1.0).abs() > STRUCTURAL_TOL {
        return Err(Error::InvalidCqSpec(format!("probabilities sum to {total}")));
    }
    let dim_a = spec.a_states[0].dim();
    if spec.a_states.iter().any(|s| s.dim() != dim_a) {
        return Err(Error::InvalidCqSpec("A states have different dimensions".into()));
    }
    let dim_b = spec.b_basis[0].len();
    if dim_b == 0 || spec.b_basis.iter().any(|v| v.len() != dim_b) {
        return Err(Error::InvalidCqSpec("B vectors have different or zero lengths".into()));
    }
    if n > dim_b {
        return Err(Error::InvalidCqSpec(format!("{n} orthonormal vectors cannot fit in dimension {dim_b}")));
    }
    for (i, u) in spec.b_basis.iter().enumerate() {
        for (j, w) in spec.b_basis.iter().enumerate().skip(i) {
            let target = if i == j { 1.0 } else { 0.0 };
            let overlap = u.dotc(w);
            if (overlap - c(target, 0.0)).norm() > STRUCTURAL_TOL {
                return Err(Error::InvalidCqSpec(format!(
                    "B vectors {i} and {j} have overlap {:e} (expected {target})",
                    sqrt(overlap.norm_sqr())
                )));
            }
        }
    }
    let mut sum = ComplexOperator::zeros(dim_a * dim_b);
    for ((&p, rho), b) in spec.probs.iter().zip(&spec.a_states).zip(&spec.b_basis) {
        let proj = ComplexOperator::outer(b.as_slice());
        sum = &sum + &tensor_product(rho.operator(), &proj).scale(c(p, 0.0));
    }
    let state = validate_density(sum)?;
    Ok(BipartiteState { state, dim_a, dim_b })
}
