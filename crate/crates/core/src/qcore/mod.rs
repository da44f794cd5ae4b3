//! Dense complex operators and density matrices over tensor-product registers.

mod operator;
mod random;
mod register;

pub use num_complex::Complex;

pub use operator::{commutator_hs, conjugate_by_unitary, validate_density, ComplexOperator, DensityMatrix};
pub use random::{ginibre, random_density, random_density_with, random_unitary, RandomSpec};
pub use register::{partial_trace, partial_trace_operator, tensor_product, tensor_states, RegisterLayout};

pub type C64 = Complex<f64>;

/// Tolerance for structural checks: hermiticity, positivity, trace, unitarity.
pub const STRUCTURAL_TOL: f64 = 1e-10;

/// Tolerance for identities that hold exactly in exact arithmetic.
pub const EXACT_TOL: f64 = 1e-12;

#[inline]
pub const fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}
