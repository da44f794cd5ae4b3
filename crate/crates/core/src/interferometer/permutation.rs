use alloc::format;
use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::qcore::{c, ComplexOperator, DensityMatrix, RegisterLayout, C64};

/// A unitary that permutes the tensor factors of a register.
///
/// `mapping[s]` names the slot whose content ends up in slot `s`:
/// `P |x_0 x_1 ... x_{n-1}> = |x_{mapping[0]} x_{mapping[1]} ...>`.
/// Indices are zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PermutationUnitary {
    layout: RegisterLayout,
    mapping: Vec<usize>,
}

impl PermutationUnitary {
    pub fn new(layout: RegisterLayout, mapping: Vec<usize>) -> Result<Self> {
        let n = layout.factors();
        if mapping.len() != n {
            return Err(Error::InvalidPermutation(format!(
                "mapping has {} entries for {n} factors",
                mapping.len()
            )));
        }
        let mut seen = alloc::vec![false; n];
        for (slot, &src) in mapping.iter().enumerate() {
            if src >= n || seen[src] {
                return Err(Error::InvalidPermutation(format!("slot {slot} maps to invalid or repeated {src}")));
            }
            seen[src] = true;
            if layout.dims()[slot] != layout.dims()[src] {
                return Err(Error::UnequalLocalDims {
                    i: slot,
                    j: src,
                    dim_i: layout.dims()[slot],
                    dim_j: layout.dims()[src],
                });
            }
        }
        Ok(Self { layout, mapping })
    }

    pub fn identity(layout: RegisterLayout) -> Self {
        let mapping = (0..layout.factors()).collect();
        Self { layout, mapping }
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(s, &m)| s == m)
    }

    /// Operator product `self * rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if self.layout != rhs.layout {
            return Err(Error::Layout("cannot compose permutations over different layouts".into()));
        }
        // (P_s P_r)|x> = P_s |x o r> = |x o r o s>
        let mapping = self.mapping.iter().map(|&s| rhs.mapping[s]).collect();
        Ok(Self { layout: self.layout.clone(), mapping })
    }

    pub fn inverse(&self) -> Self {
        let mut mapping = alloc::vec![0; self.mapping.len()];
        for (slot, &src) in self.mapping.iter().enumerate() {
            mapping[src] = slot;
        }
        Self { layout: self.layout.clone(), mapping }
    }

    /// Applies the permutation to a product of labeled kets.
    pub fn apply_to_labels<T: Clone>(&self, labels: &[T]) -> Vec<T> {
        self.mapping.iter().map(|&src| labels[src].clone()).collect()
    }

    /// Cycles of `s -> mapping[s]`, each starting at its smallest slot,
    /// ordered by that slot.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.mapping.len();
        let mut visited = alloc::vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut s = start;
            while !visited[s] {
                visited[s] = true;
                cycle.push(s);
                s = self.mapping[s];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Dense 0/1 matrix of the permutation on the full register.
    pub fn to_dense(&self) -> ComplexOperator {
        let total = self.layout.total_dim();
        let mut m = DMatrix::<C64>::zeros(total, total);
        for col in 0..total {
            let digits = self.layout.digits(col);
            let row = self.layout.flat_index(&self.apply_to_labels(&digits));
            m[(row, col)] = c(1.0, 0.0);
        }
        ComplexOperator::from_matrix_unchecked(m)
    }
}

/// The generalized SWAP `S_ij` exchanging factors `i` and `j`.
pub fn generalized_swap(i: usize, j: usize, layout: &RegisterLayout) -> Result<PermutationUnitary> {
    layout.check_index(i)?;
    layout.check_index(j)?;
    if i == j {
        return Err(Error::InvalidPermutation(format!("swap needs two distinct factors, got {i} twice")));
    }
    let (dim_i, dim_j) = (layout.dims()[i], layout.dims()[j]);
    if dim_i != dim_j {
        return Err(Error::UnequalLocalDims { i, j, dim_i, dim_j });
    }
    let mut mapping: Vec<usize> = (0..layout.factors()).collect();
    mapping.swap(i, j);
    Ok(PermutationUnitary { layout: layout.clone(), mapping })
}

fn check_four_equal(layout: &RegisterLayout) -> Result<()> {
    if layout.factors() != 4 {
        return Err(Error::WrongFactorCount { expected: 4, found: layout.factors() });
    }
    Ok(())
}

fn cascade(layout: &RegisterLayout, swaps: &[(usize, usize)]) -> Result<PermutationUnitary> {
    check_four_equal(layout)?;
    swaps.iter().try_fold(PermutationUnitary::identity(layout.clone()), |acc, &(i, j)| {
        acc.compose(&generalized_swap(i, j, layout)?)
    })
}

/// `U1 = S_AB S_BC S_CD` on a four-factor register `A B C D`.
///
/// On `rho_a (x) rho_a (x) rho_b (x) rho_b` its expectation is `Tr(rho_a^2 rho_b^2)`.
pub fn build_u1(layout: &RegisterLayout) -> Result<PermutationUnitary> {
    cascade(layout, &[(0, 1), (1, 2), (2, 3)])
}

/// `U2 = S_BC S_CD S_AB S_BC S_AB` on a four-factor register `A B C D`.
///
/// On `rho_a (x) rho_a (x) rho_b (x) rho_b` its expectation is `Tr((rho_a rho_b)^2)`.
pub fn build_u2(layout: &RegisterLayout) -> Result<PermutationUnitary> {
    cascade(layout, &[(1, 2), (2, 3), (0, 1), (1, 2), (0, 1)])
}

/// `Tr(P (rho_0 (x) ... (x) rho_{n-1}))` by cycle decomposition.
///
/// Each cycle `s -> m(s) -> m(m(s)) -> ...` contributes the trace of the
/// ordered product `rho_s rho_{m(s)} rho_{m(m(s))} ...`; the full register
/// is never formed.
pub fn permutation_expectation(perm: &PermutationUnitary, states: &[DensityMatrix]) -> Result<C64> {
    let dims = perm.layout.dims();
    if states.len() != dims.len() {
        return Err(Error::WrongFactorCount { expected: dims.len(), found: states.len() });
    }
    for (state, &d) in states.iter().zip(dims) {
        if state.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: state.dim() });
        }
    }
    let mut total = c(1.0, 0.0);
    for cycle in perm.cycles() {
        let (&first, rest) = cycle.split_first().expect("cycles are non-empty");
        let product = rest
            .iter()
            .fold(states[first].matrix().clone(), |acc, &s| acc * states[s].matrix());
        total *= product.trace();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{random_density_with, tensor_product, tensor_states};
    use rand_chacha::ChaCha20Rng;
    use rand_core::SeedableRng;

    fn qubits(n: usize) -> RegisterLayout {
        RegisterLayout::uniform(2, n).unwrap()
    }

    #[test]
    fn swap_exchanges_basis_kets() {
        let s = generalized_swap(0, 1, &qubits(2)).unwrap();
        // |0>|1> has flat index 1, |1>|0> has flat index 2
        let dense = s.to_dense();
        assert_eq!(dense.get(2, 1), c(1.0, 0.0));
        assert_eq!(dense.get(1, 2), c(1.0, 0.0));
        assert_eq!(s.apply_to_labels(&['x', 'y']), alloc::vec!['y', 'x']);
    }

    #[test]
    fn swap_is_self_inverse() {
        let s = generalized_swap(0, 2, &qubits(3)).unwrap();
        assert!(s.compose(&s).unwrap().is_identity());
        assert_eq!(s.inverse(), s);
    }

    #[test]
    fn swap_errors() {
        let mixed = RegisterLayout::new(alloc::vec![2, 3]).unwrap();
        assert!(matches!(generalized_swap(0, 1, &mixed), Err(Error::UnequalLocalDims { .. })));
        assert!(matches!(generalized_swap(0, 5, &qubits(2)), Err(Error::IndexOutOfRange { .. })));
        assert!(generalized_swap(1, 1, &qubits(2)).is_err());
    }

    #[test]
    fn swap_trick() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let s = generalized_swap(0, 1, &qubits(2)).unwrap();
        for _ in 0..10 {
            let rho = random_density_with(2, 2, &mut rng).unwrap();
            let sigma = random_density_with(2, 1, &mut rng).unwrap();
            let joint = tensor_product(rho.operator(), sigma.operator());
            let dense = (&s.to_dense() * &joint).trace();
            let direct = (rho.operator() * sigma.operator()).trace();
            assert!((dense - direct).norm() < 1e-12);
        }
    }

    #[test]
    fn u1_and_u2_are_four_cycles() {
        let layout = qubits(4);
        let u1 = build_u1(&layout).unwrap();
        let u2 = build_u2(&layout).unwrap();
        assert_eq!(u1.apply_to_labels(&[1, 2, 3, 4]), alloc::vec![4, 1, 2, 3]);
        assert_eq!(u2.apply_to_labels(&[1, 2, 3, 4]), alloc::vec![3, 4, 2, 1]);
        assert_eq!(u1.cycles().len(), 1);
        assert_eq!(u2.cycles().len(), 1);
    }

    #[test]
    fn u1_dense_matches_composed_swaps() {
        let layout = qubits(4);
        let sw = |i, j| generalized_swap(i, j, &layout).unwrap().to_dense();
        let expected = &(&sw(0, 1) * &sw(1, 2)) * &sw(2, 3);
        assert_eq!(build_u1(&layout).unwrap().to_dense(), expected);
        let expected = &(&(&(&sw(1, 2) * &sw(2, 3)) * &sw(0, 1)) * &sw(1, 2)) * &sw(0, 1);
        assert_eq!(build_u2(&layout).unwrap().to_dense(), expected);
    }

    #[test]
    fn wrong_factor_count() {
        assert_eq!(build_u1(&qubits(3)), Err(Error::WrongFactorCount { expected: 4, found: 3 }));
        assert!(build_u2(&RegisterLayout::new(alloc::vec![2, 2, 2, 3]).unwrap()).is_err());
    }

    #[test]
    fn identity_expectation_is_one() {
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let states: Vec<_> = (0..3).map(|_| random_density_with(3, 2, &mut rng).unwrap()).collect();
        let id = PermutationUnitary::identity(RegisterLayout::uniform(3, 3).unwrap());
        assert!((permutation_expectation(&id, &states).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn u2_on_zero_plus() {
        let p0 = DensityMatrix::basis(2, 0).unwrap();
        let plus = DensityMatrix::pure(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let u2 = build_u2(&qubits(4)).unwrap();
        let v = permutation_expectation(&u2, &[p0.clone(), p0, plus.clone(), plus]).unwrap();
        assert!((v - c(0.25, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn u1_on_identical_pure_states() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let psi = random_density_with(3, 1, &mut rng).unwrap();
        let u1 = build_u1(&RegisterLayout::uniform(3, 4).unwrap()).unwrap();
        let v = permutation_expectation(&u1, &[psi.clone(), psi.clone(), psi.clone(), psi]).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn cycle_formula_matches_dense_for_mixed_dims() {
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        let layout = RegisterLayout::new(alloc::vec![2, 3, 2, 3]).unwrap();
        let perm = PermutationUnitary::new(layout, alloc::vec![2, 3, 0, 1]).unwrap();
        let states: Vec<_> = [2, 3, 2, 3]
            .iter()
            .map(|&d| random_density_with(d, d, &mut rng).unwrap())
            .collect();
        let joint = tensor_states(&states).unwrap();
        let dense = (&perm.to_dense() * joint.operator()).trace();
        let cyc = permutation_expectation(&perm, &states).unwrap();
        assert!((dense - cyc).norm() < 1e-12);
    }

    #[test]
    fn rejects_bad_mappings() {
        assert!(PermutationUnitary::new(qubits(3), alloc::vec![0, 0, 1]).is_err());
        assert!(PermutationUnitary::new(qubits(3), alloc::vec![0, 1]).is_err());
        let mixed = RegisterLayout::new(alloc::vec![2, 3]).unwrap();
        assert!(PermutationUnitary::new(mixed, alloc::vec![1, 0]).is_err());
    }

    #[test]
    fn expectation_checks_dims() {
        let u1 = build_u1(&qubits(4)).unwrap();
        let s = DensityMatrix::maximally_mixed(2);
        assert!(permutation_expectation(&u1, &[s.clone(), s.clone(), s.clone()]).is_err());
        let t = DensityMatrix::maximally_mixed(3);
        assert!(permutation_expectation(&u1, &[s.clone(), s.clone(), s, t]).is_err());
    }
}
