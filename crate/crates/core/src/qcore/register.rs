use alloc::format;
use alloc::vec::Vec;

use nalgebra::DMatrix;

use super::{ComplexOperator, DensityMatrix, C64};
use crate::error::{Error, Result};

/// Ordered local dimensions of the tensor factors of a register.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegisterLayout {
    dims: Vec<usize>,
}

impl RegisterLayout {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Layout("layout has no factors".into()));
        }
        if let Some(pos) = dims.iter().position(|&d| d == 0) {
            return Err(Error::Layout(format!("factor {pos} has dimension 0")));
        }
        dims.iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::Layout("total dimension overflows".into()))?;
        Ok(Self { dims })
    }

    /// `factors` copies of a `dim`-dimensional system.
    pub fn uniform(dim: usize, factors: usize) -> Result<Self> {
        Self::new(alloc::vec![dim; factors])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn factors(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Row-major strides: the last factor varies fastest.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = alloc::vec![1usize; self.dims.len()];
        for k in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.dims[k + 1];
        }
        strides
    }

    /// Splits a flat basis index into per-factor digits.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = alloc::vec![0usize; self.dims.len()];
        for k in (0..self.dims.len()).rev() {
            out[k] = index % self.dims[k];
            index /= self.dims[k];
        }
        out
    }

    pub fn flat_index(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.dims).fold(0, |acc, (&x, &d)| acc * d + x)
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.dims.len() {
            return Err(Error::IndexOutOfRange { index, factors: self.dims.len() });
        }
        Ok(())
    }
}

/// Kronecker product `A (x) B`.
pub fn tensor_product(a: &ComplexOperator, b: &ComplexOperator) -> ComplexOperator {
    ComplexOperator::from_matrix_unchecked(a.matrix().kronecker(b.matrix()))
}

/// Kronecker product of a sequence of states, first factor outermost.
pub fn tensor_states(states: &[DensityMatrix]) -> Option<DensityMatrix> {
    let (first, rest) = states.split_first()?;
    let op = rest
        .iter()
        .fold(first.operator().clone(), |acc, s| tensor_product(&acc, s.operator()));
    Some(DensityMatrix::from_operator_unchecked(op))
}

/// Partial trace of an arbitrary operator over every factor not listed in `keep`.
///
/// Kept factors appear in ascending factor order in the result. An empty
/// `keep` traces everything out and yields a 1x1 operator holding the trace.
pub fn partial_trace_operator(
    op: &ComplexOperator,
    layout: &RegisterLayout,
    keep: &[usize],
) -> Result<ComplexOperator> {
    if op.dim() != layout.total_dim() {
        return Err(Error::Layout(format!(
            "operator dimension {} does not match layout total {}",
            op.dim(),
            layout.total_dim()
        )));
    }
    let n = layout.factors();
    let mut kept = alloc::vec![false; n];
    for &k in keep {
        layout.check_index(k)?;
        if kept[k] {
            return Err(Error::Layout(format!("factor {k} listed twice in keep set")));
        }
        kept[k] = true;
    }
    let strides = layout.strides();
    let dims = layout.dims();
    let kept_idx: Vec<usize> = (0..n).filter(|&k| kept[k]).collect();
    let traced_idx: Vec<usize> = (0..n).filter(|&k| !kept[k]).collect();
    let kept_layout_dims: Vec<usize> = kept_idx.iter().map(|&k| dims[k]).collect();
    let traced_dims: Vec<usize> = traced_idx.iter().map(|&k| dims[k]).collect();
    let out_dim: usize = kept_layout_dims.iter().product();
    let traced_total: usize = traced_dims.iter().product();

    // Offset into the full register contributed by each reduced index.
    let offsets = |factor_list: &[usize], factor_dims: &[usize]| -> Vec<usize> {
        let total: usize = factor_dims.iter().product();
        (0..total)
            .map(|mut idx| {
                let mut off = 0;
                for pos in (0..factor_list.len()).rev() {
                    off += (idx % factor_dims[pos]) * strides[factor_list[pos]];
                    idx /= factor_dims[pos];
                }
                off
            })
            .collect()
    };
    let kept_off = offsets(&kept_idx, &kept_layout_dims);
    let traced_off = offsets(&traced_idx, &traced_dims);
    debug_assert_eq!(traced_off.len(), traced_total);

    let m = op.matrix();
    let out = DMatrix::from_fn(out_dim, out_dim, |r, c| {
        let (row0, col0) = (kept_off[r], kept_off[c]);
        traced_off
            .iter()
            .fold(C64::new(0.0, 0.0), |acc, &t| acc + m[(row0 + t, col0 + t)])
    });
    Ok(ComplexOperator::from_matrix_unchecked(out))
}

/// Reduced state on the factors listed in `keep`.
pub fn partial_trace(rho: &DensityMatrix, layout: &RegisterLayout, keep: &[usize]) -> Result<DensityMatrix> {
    let reduced = partial_trace_operator(rho.operator(), layout, keep)?;
    Ok(DensityMatrix::from_operator_unchecked(reduced))
}
