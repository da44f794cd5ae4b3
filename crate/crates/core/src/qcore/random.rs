use nalgebra::DMatrix;
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use rand_distr::{Distribution, StandardNormal};

use super::{ComplexOperator, DensityMatrix, C64};
use crate::error::{Error, Result};

/// Parameters for a reproducible random state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomSpec {
    pub dim: usize,
    pub rank: usize,
    pub seed: u64,
}

impl RandomSpec {
    pub fn new(dim: usize, rank: usize, seed: u64) -> Result<Self> {
        if dim == 0 || rank == 0 || rank > dim {
            return Err(Error::RankOutOfRange { rank, dim });
        }
        Ok(Self { dim, rank, seed })
    }

    pub fn rng(&self) -> ChaCha20Rng {
        ChaCha20Rng::seed_from_u64(self.seed)
    }
}

/// `rows x cols` matrix of standard complex Gaussians (unit variance per entry).
pub fn ginibre<R: RngCore + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> DMatrix<C64> {
    let scale = core::f64::consts::FRAC_1_SQRT_2;
    DMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(re * scale, im * scale)
    })
}

/// Ginibre-ensemble state `G G^dag / Tr(G G^dag)` with `G` of shape `dim x rank`.
pub fn random_density_with<R: RngCore + ?Sized>(dim: usize, rank: usize, rng: &mut R) -> Result<DensityMatrix> {
    if dim == 0 || rank == 0 || rank > dim {
        return Err(Error::RankOutOfRange { rank, dim });
    }
    let g = ginibre(dim, rank, rng);
    let w = &g * g.adjoint();
    let tr = w.trace().re;
    let op = ComplexOperator::from_matrix_unchecked(w / C64::new(tr, 0.0));
    Ok(DensityMatrix::from_operator_unchecked(op))
}

pub fn random_density(spec: &RandomSpec) -> Result<DensityMatrix> {
    random_density_with(spec.dim, spec.rank, &mut spec.rng())
}

/// Haar-random unitary from the QR decomposition of a Ginibre matrix,
/// with the phases of R's diagonal absorbed into Q.
pub fn random_unitary<R: RngCore + ?Sized>(dim: usize, rng: &mut R) -> ComplexOperator {
    let g = ginibre(dim, dim, rng);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for k in 0..dim {
        let d = r[(k, k)];
        let n = d.norm();
        let phase = if n > 0.0 { d / C64::new(n, 0.0) } else { C64::new(1.0, 0.0) };
        for i in 0..dim {
            q[(i, k)] *= phase;
        }
    }
    ComplexOperator::from_matrix_unchecked(q)
}
