//! Independent oracles shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use quantumness_core::qcore::{c, random_density_with, ComplexOperator, DensityMatrix, C64};
use rand_chacha::ChaCha20Rng;
use rand_core::SeedableRng;

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

pub fn random_state(dim: usize, rank: usize, rng: &mut ChaCha20Rng) -> DensityMatrix {
    random_density_with(dim, rank, rng).unwrap()
}

/// Explicit index contraction `out[i,k] = sum_j M[(i,j),(k,j)]` for a
/// two-factor register `dims = (da, db)`, keeping factor `keep`.
pub fn brute_partial_trace_2(m: &ComplexOperator, da: usize, db: usize, keep: usize) -> Vec<Vec<C64>> {
    let idx = |a: usize, b: usize| a * db + b;
    if keep == 0 {
        let mut out = vec![vec![c(0.0, 0.0); da]; da];
        for i in 0..da {
            for k in 0..da {
                for j in 0..db {
                    out[i][k] += m.get(idx(i, j), idx(k, j));
                }
            }
        }
        out
    } else {
        let mut out = vec![vec![c(0.0, 0.0); db]; db];
        for i in 0..db {
            for k in 0..db {
                for j in 0..da {
                    out[i][k] += m.get(idx(j, i), idx(j, k));
                }
            }
        }
        out
    }
}

/// Dense Kronecker product written out entry by entry.
pub fn brute_kron(a: &ComplexOperator, b: &ComplexOperator) -> Vec<Vec<C64>> {
    let (na, nb) = (a.dim(), b.dim());
    let mut out = vec![vec![c(0.0, 0.0); na * nb]; na * nb];
    for i in 0..na {
        for j in 0..na {
            for k in 0..nb {
                for l in 0..nb {
                    out[i * nb + k][j * nb + l] = a.get(i, j) * b.get(k, l);
                }
            }
        }
    }
    out
}

/// `Tr(P (x)_k rho_k)` by summing `<x| P rho |x>` over the full basis,
/// with `P` acting as `|x_0 ... x_{n-1}> -> |x_{m(0)} ... x_{m(n-1)}>`.
pub fn dense_permutation_trace(mapping: &[usize], states: &[DensityMatrix]) -> C64 {
    let dims: Vec<usize> = states.iter().map(|s| s.dim()).collect();
    let total: usize = dims.iter().product();
    let digits = |mut i: usize| {
        let mut d = vec![0; dims.len()];
        for k in (0..dims.len()).rev() {
            d[k] = i % dims[k];
            i /= dims[k];
        }
        d
    };
    // Tr(P rho) = sum_{x} <x|P rho|x> = sum_x <P^dag x| rho |x>
    // and P^dag |x> = |y> with y_{m(s)} = x_s.
    let mut acc = c(0.0, 0.0);
    for x in 0..total {
        let xd = digits(x);
        let mut yd = vec![0; dims.len()];
        for (s, &m) in mapping.iter().enumerate() {
            yd[m] = xd[s];
        }
        let mut prod = c(1.0, 0.0);
        for k in 0..dims.len() {
            prod *= states[k].matrix()[(yd[k], xd[k])];
        }
        acc += prod;
    }
    acc
}

/// Bloch vector `(Tr(rho X), Tr(rho Y), Tr(rho Z))` of a qubit state.
pub fn bloch(rho: &DensityMatrix) -> [f64; 3] {
    let m = rho.matrix();
    [2.0 * m[(0, 1)].re, -2.0 * m[(0, 1)].im, (m[(0, 0)] - m[(1, 1)]).re]
}

pub fn cross_norm_sq(a: [f64; 3], b: [f64; 3]) -> f64 {
    let x = a[1] * b[2] - a[2] * b[1];
    let y = a[2] * b[0] - a[0] * b[2];
    let z = a[0] * b[1] - a[1] * b[0];
    x * x + y * y + z * z
}

pub fn random_ket(dim: usize, rng: &mut ChaCha20Rng) -> Vec<C64> {
    use rand_distr::{Distribution, StandardNormal};
    (0..dim)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            c(re, im)
        })
        .collect()
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                go(prefix, used, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}
