use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector};

use super::{C64, STRUCTURAL_TOL};
use crate::error::{Error, Result};

/// A finite-dimensional square complex matrix with finite entries.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexOperator {
    m: DMatrix<C64>,
}

impl ComplexOperator {
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
        }
        if m.nrows() == 0 {
            return Err(Error::EmptyMatrix);
        }
        for c in 0..m.ncols() {
            for r in 0..m.nrows() {
                let z = m[(r, c)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: r, col: c });
                }
            }
        }
        Ok(Self { m })
    }

    /// Wraps a matrix already known to be square and finite.
    pub(crate) fn from_matrix_unchecked(m: DMatrix<C64>) -> Self {
        debug_assert!(m.is_square());
        Self { m }
    }

    /// Builds an operator from row-major entries.
    pub fn from_rows(dim: usize, entries: &[C64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: entries.len() });
        }
        Self::new(DMatrix::from_row_slice(dim, dim, entries))
    }

    pub fn from_real_rows(dim: usize, entries: &[f64]) -> Result<Self> {
        let entries: Vec<C64> = entries.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_rows(dim, &entries)
    }

    pub fn zeros(dim: usize) -> Self {
        Self { m: DMatrix::zeros(dim, dim) }
    }

    pub fn identity(dim: usize) -> Self {
        Self { m: DMatrix::identity(dim, dim) }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let d = DVector::from_iterator(values.len(), values.iter().map(|&x| C64::new(x, 0.0)));
        Self { m: DMatrix::from_diagonal(&d) }
    }

    /// Outer product `|ket><ket|` (not normalized).
    pub fn outer(ket: &[C64]) -> Self {
        let v = DVector::from_column_slice(ket);
        Self { m: &v * v.adjoint() }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.m
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.m[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self { m: self.m.adjoint() }
    }

    pub fn trace(&self) -> C64 {
        self.m.trace()
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self { m: &self.m * factor }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
    }

    /// Largest entrywise deviation `max |M - M^dag|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.dim();
        let mut dev = 0.0_f64;
        for r in 0..n {
            for c in r..n {
                dev = dev.max((self.m[(r, c)] - self.m[(c, r)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// Largest entrywise deviation `max |U^dag U - I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let prod = self.m.adjoint() * &self.m;
        let n = self.dim();
        let mut dev = 0.0_f64;
        for r in 0..n {
            for c in 0..n {
                let target = if r == c { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
                dev = dev.max((prod[(r, c)] - target).norm());
            }
        }
        dev
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() <= tol
    }

    /// `(M + M^dag) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self { m: (&self.m + self.m.adjoint()) * C64::new(0.5, 0.0) }
    }

    /// Ascending eigenvalues of the Hermitian part.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let h = self.hermitian_part().m;
        let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| a.total_cmp(b));
        ev
    }

    /// Hilbert-Schmidt inner product `Tr(A^dag B)`.
    pub fn hs_inner(&self, other: &Self) -> C64 {
        self.m.dotc(&other.m)
    }

    /// Squared Hilbert-Schmidt norm `Tr(A^dag A)`.
    pub fn hs_norm_sq(&self) -> f64 {
        self.m.norm_squared()
    }

    pub(crate) fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self { m: &self.m * &other.m })
    }
}

impl Mul for &ComplexOperator {
    type Output = ComplexOperator;

    /// Panics on dimension mismatch; use [`ComplexOperator::try_mul`] for checked products.
    fn mul(self, rhs: Self) -> ComplexOperator {
        ComplexOperator { m: &self.m * &rhs.m }
    }
}

impl Add for &ComplexOperator {
    type Output = ComplexOperator;

    fn add(self, rhs: Self) -> ComplexOperator {
        ComplexOperator { m: &self.m + &rhs.m }
    }
}

impl Sub for &ComplexOperator {
    type Output = ComplexOperator;

    fn sub(self, rhs: Self) -> ComplexOperator {
        ComplexOperator { m: &self.m - &rhs.m }
    }
}

/// A validated quantum state: Hermitian, positive semidefinite, unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    op: ComplexOperator,
}

impl DensityMatrix {
    pub fn new(op: ComplexOperator) -> Result<Self> {
        validate_density(op)
    }

    pub(crate) fn from_operator_unchecked(op: ComplexOperator) -> Self {
        Self { op }
    }

    /// The pure state `|ket><ket|`, normalizing the ket.
    pub fn pure(ket: &[C64]) -> Result<Self> {
        let norm_sq: f64 = ket.iter().map(|z| z.norm_sqr()).sum();
        if !norm_sq.is_finite() || norm_sq <= 0.0 {
            return Err(Error::TraceDeviation { re: norm_sq, im: 0.0, deviation: (norm_sq - 1.0).abs() });
        }
        let op = ComplexOperator::outer(ket).scale(C64::new(1.0 / norm_sq, 0.0));
        validate_density(op)
    }

    /// Computational basis projector `|index><index|`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, factors: dim });
        }
        let mut ket = alloc::vec![C64::new(0.0, 0.0); dim];
        ket[index] = C64::new(1.0, 0.0);
        Self::pure(&ket)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self { op: ComplexOperator::identity(dim).scale(C64::new(1.0 / dim as f64, 0.0)) }
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn operator(&self) -> &ComplexOperator {
        &self.op
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        self.op.matrix()
    }

    pub fn into_operator(self) -> ComplexOperator {
        self.op
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        // Tr(rho^2) = Tr(rho^dag rho) for Hermitian rho
        self.op.hs_norm_sq()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.op.hermitian_eigenvalues()
    }
}

impl AsRef<ComplexOperator> for DensityMatrix {
    fn as_ref(&self) -> &ComplexOperator {
        &self.op
    }
}

/// Checks the density-matrix invariants in order: hermiticity, unit trace,
/// positivity of the Hermitian part.
pub fn validate_density(op: ComplexOperator) -> Result<DensityMatrix> {
    let deviation = op.hermiticity_deviation();
    if deviation > STRUCTURAL_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let tr = op.trace();
    let deviation = (tr - C64::new(1.0, 0.0)).norm();
    if deviation > STRUCTURAL_TOL {
        return Err(Error::TraceDeviation { re: tr.re, im: tr.im, deviation });
    }
    let min = op.hermitian_eigenvalues().first().copied().unwrap_or(0.0);
    if min < -STRUCTURAL_TOL {
        return Err(Error::NegativeEigenvalue { eigenvalue: min });
    }
    Ok(DensityMatrix { op })
}

/// Returns `U rho U^dag` after checking that `U` is unitary.
pub fn conjugate_by_unitary(rho: &DensityMatrix, u: &ComplexOperator) -> Result<DensityMatrix> {
    rho.op.check_same_dim(u)?;
    let deviation = u.unitarity_deviation();
    if deviation > STRUCTURAL_TOL {
        return Err(Error::NotUnitary { deviation });
    }
    let m = u.matrix() * rho.matrix() * u.matrix().adjoint();
    Ok(DensityMatrix { op: ComplexOperator::from_matrix_unchecked(m) })
}

/// Commutator `[A, B] = AB - BA` and its squared Hilbert-Schmidt norm.
pub fn commutator_hs(a: &ComplexOperator, b: &ComplexOperator) -> Result<(ComplexOperator, f64)> {
    a.check_same_dim(b)?;
    let c = &(a * b) - &(b * a);
    let norm_sq = c.hs_norm_sq();
    Ok((c, norm_sq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::c;

    fn plus() -> DensityMatrix {
        DensityMatrix::pure(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap()
    }

    #[test]
    fn rejects_non_square_and_non_finite() {
        let m = DMatrix::<C64>::zeros(2, 3);
        assert_eq!(ComplexOperator::new(m), Err(Error::NotSquare { rows: 2, cols: 3 }));
        let mut m = DMatrix::<C64>::zeros(2, 2);
        m[(1, 0)] = c(f64::NAN, 0.0);
        assert_eq!(ComplexOperator::new(m), Err(Error::NonFinite { row: 1, col: 0 }));
    }

    #[test]
    fn validate_accepts_maximally_mixed() {
        let op = ComplexOperator::diagonal(&[0.5, 0.5]);
        assert!(validate_density(op).is_ok());
    }

    #[test]
    fn validate_names_negative_eigenvalue() {
        let err = validate_density(ComplexOperator::diagonal(&[1.2, -0.2])).unwrap_err();
        match err {
            Error::NegativeEigenvalue { eigenvalue } => assert!((eigenvalue + 0.2).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn validate_names_non_hermitian() {
        let op = ComplexOperator::from_real_rows(2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(validate_density(op), Err(Error::NotHermitian { deviation }) if deviation == 1.0));
    }

    #[test]
    fn validate_names_trace() {
        let op = ComplexOperator::diagonal(&[1.0, 0.5]);
        assert!(matches!(validate_density(op), Err(Error::TraceDeviation { deviation, .. }) if (deviation - 0.5).abs() < 1e-15));
    }

    #[test]
    fn commutator_of_state_with_itself_vanishes() {
        let rho = plus();
        let (comm, n) = commutator_hs(rho.operator(), rho.operator()).unwrap();
        assert_eq!(comm.max_abs(), 0.0);
        assert_eq!(n, 0.0);
    }

    #[test]
    fn commutator_zero_plus() {
        let p0 = DensityMatrix::basis(2, 0).unwrap();
        let (comm, n) = commutator_hs(p0.operator(), plus().operator()).unwrap();
        // [P0, P+] = 1/2 [[0, 1], [-1, 0]]
        let expected = ComplexOperator::from_real_rows(2, &[0.0, 0.5, -0.5, 0.0]).unwrap();
        assert!((&comm - &expected).max_abs() < 1e-15);
        assert!((n - 0.5).abs() < 1e-15);
    }

    #[test]
    fn diagonal_operators_commute() {
        let a = ComplexOperator::diagonal(&[0.3, -1.0, 2.0]);
        let b = ComplexOperator::diagonal(&[5.0, 0.1, 0.7]);
        let (comm, n) = commutator_hs(&a, &b).unwrap();
        assert_eq!(comm.max_abs(), 0.0);
        assert_eq!(n, 0.0);
    }

    #[test]
    fn commutator_dim_mismatch() {
        let a = ComplexOperator::identity(2);
        let b = ComplexOperator::identity(3);
        assert_eq!(commutator_hs(&a, &b).unwrap_err(), Error::DimensionMismatch { expected: 2, found: 3 });
    }

    #[test]
    fn conjugation_by_identity_and_flip() {
        let p0 = DensityMatrix::basis(2, 0).unwrap();
        let same = conjugate_by_unitary(&p0, &ComplexOperator::identity(2)).unwrap();
        assert_eq!(same, p0);
        let x = ComplexOperator::from_real_rows(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let flipped = conjugate_by_unitary(&p0, &x).unwrap();
        assert_eq!(flipped, DensityMatrix::basis(2, 1).unwrap());
    }

    #[test]
    fn conjugation_rejects_non_unitary() {
        let p0 = DensityMatrix::basis(2, 0).unwrap();
        let m = ComplexOperator::diagonal(&[1.0, 2.0]);
        assert!(matches!(conjugate_by_unitary(&p0, &m), Err(Error::NotUnitary { .. })));
    }
}
