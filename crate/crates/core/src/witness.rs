//! The quantumness measure `Q(rho_a, rho_b)` and commutator witnesses.
//!
//! `Q = 2 ||[rho_a, rho_b]||^2 = 4 (Tr(rho_a^2 rho_b^2) - Tr((rho_a rho_b)^2))`.
//! The commutator of two Hermitian operators is anti-Hermitian, so the
//! Hilbert-Schmidt norm form is the nonnegative one; it vanishes exactly when
//! the two states commute.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::qcore::{c, commutator_hs, ComplexOperator, DensityMatrix, C64, STRUCTURAL_TOL};

/// How `Q` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuantumnessMethod {
    /// `2 ||[rho_a, rho_b]||^2`.
    DirectNorm,
    /// `4 (v1 - v2)` from the two trace functionals.
    TraceFormula,
    /// `4 (v1 - v2)` with `v1`, `v2` read off interference fringes.
    Interferometric,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WitnessResult {
    pub q_value: f64,
    /// `Tr(rho_a^2 rho_b^2)`.
    pub v1_term: f64,
    /// `Tr((rho_a rho_b)^2)`.
    pub v2_term: f64,
    pub method: QuantumnessMethod,
}

/// The two fourth-order traces `(Tr(a^2 b^2), Tr((ab)^2))`.
///
/// Both are real for Hermitian arguments; the imaginary parts are rounding
/// noise and are dropped.
pub fn trace_terms(a: &DensityMatrix, b: &DensityMatrix) -> Result<(f64, f64)> {
    a.operator().try_mul(b.operator())?;
    let ab = a.matrix() * b.matrix();
    let ba = b.matrix() * a.matrix();
    // Tr(a^2 b^2) = Tr((ab)(ba)); Tr((ab)^2) = <(ab)^dag, ab>
    let v1 = ab.transpose().dot(&ba).re;
    let v2 = ab.transpose().dot(&ab).re;
    Ok((v1, v2))
}

pub fn quantumness(a: &DensityMatrix, b: &DensityMatrix, method: QuantumnessMethod) -> Result<WitnessResult> {
    let (v1_term, v2_term) = trace_terms(a, b)?;
    let q_value = match method {
        QuantumnessMethod::DirectNorm => 2.0 * commutator_hs(a.operator(), b.operator())?.1,
        QuantumnessMethod::TraceFormula | QuantumnessMethod::Interferometric => 4.0 * (v1_term - v2_term),
    };
    Ok(WitnessResult { q_value, v1_term, v2_term, method })
}

/// `Tr(rho_a [A, rho_b])` and `Tr(rho_b [A, rho_a])` with `A = i [rho_a, rho_b]`.
///
/// Both values are purely imaginary with modulus `Q / 2`; with the
/// nonnegative convention for `Q` the first is `+iQ/2` and the second `-iQ/2`.
pub fn witness_observables(a: &DensityMatrix, b: &DensityMatrix) -> Result<(C64, C64)> {
    let (comm, _) = commutator_hs(a.operator(), b.operator())?;
    let obs = comm.scale(c(0.0, 1.0));
    let value = |rho: &ComplexOperator, other: &ComplexOperator| -> C64 {
        let (inner, _) = commutator_hs(&obs, other).expect("dimensions already checked");
        (rho * &inner).trace()
    };
    Ok((value(a.operator(), b.operator()), value(b.operator(), a.operator())))
}

/// A pair of Hermitian observables `(A, B)` used to probe `Tr(rho [A, B])`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbePair {
    a: ComplexOperator,
    b: ComplexOperator,
}

impl ProbePair {
    pub fn new(a: ComplexOperator, b: ComplexOperator) -> Result<Self> {
        a.check_same_dim(&b)?;
        for op in [&a, &b] {
            let deviation = op.hermiticity_deviation();
            if deviation > STRUCTURAL_TOL {
                return Err(Error::NotHermitian { deviation });
            }
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &ComplexOperator {
        &self.a
    }

    pub fn b(&self) -> &ComplexOperator {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }
}

/// Largest `|Tr(rho [A, B])|` over the probe list and the index attaining it.
///
/// A zero result only says these probes see no commutator; it does not
/// certify that the state is classical.
pub fn classicality_probe(rho: &DensityMatrix, probes: &[ProbePair]) -> Result<(f64, usize)> {
    if probes.is_empty() {
        return Err(Error::EmptyProbes);
    }
    let mut best = (f64::NEG_INFINITY, 0);
    for (k, probe) in probes.iter().enumerate() {
        rho.operator().check_same_dim(probe.a())?;
        let (comm, _) = commutator_hs(probe.a(), probe.b())?;
        let violation = (rho.operator() * &comm).trace().norm();
        if violation > best.0 {
            best = (violation, k);
        }
    }
    Ok(best)
}

/// Generalized Gell-Mann matrices for dimension `d`: `d^2 - 1` traceless
/// Hermitian operators (symmetric, antisymmetric, then diagonal), which are
/// the Pauli matrices for `d = 2`.
pub fn gell_mann_basis(d: usize) -> Vec<ComplexOperator> {
    let mut out = Vec::with_capacity(d * d);
    for j in 0..d {
        for k in (j + 1)..d {
            let mut s = ComplexOperator::zeros(d).into_matrix();
            s[(j, k)] = c(1.0, 0.0);
            s[(k, j)] = c(1.0, 0.0);
            out.push(ComplexOperator::from_matrix_unchecked(s));
        }
    }
    for j in 0..d {
        for k in (j + 1)..d {
            let mut s = ComplexOperator::zeros(d).into_matrix();
            s[(j, k)] = c(0.0, -1.0);
            s[(k, j)] = c(0.0, 1.0);
            out.push(ComplexOperator::from_matrix_unchecked(s));
        }
    }
    for l in 1..d {
        let norm = crate::math::sqrt(2.0 / (l * (l + 1)) as f64);
        let diag: Vec<f64> = (0..d)
            .map(|j| match j {
                j if j < l => norm,
                j if j == l => -(l as f64) * norm,
                _ => 0.0,
            })
            .collect();
        out.push(ComplexOperator::diagonal(&diag));
    }
    out
}

/// All ordered-distinct pairs `(G_j, G_k)`, `j < k`, of Gell-Mann observables.
///
/// Intended for small dimensions (the list has `O(d^4)` entries).
pub fn default_probes(d: usize) -> Vec<ProbePair> {
    let basis = gell_mann_basis(d);
    let mut probes = Vec::new();
    for j in 0..basis.len() {
        for k in (j + 1)..basis.len() {
            probes.push(ProbePair { a: basis[j].clone(), b: basis[k].clone() });
        }
    }
    probes
}
