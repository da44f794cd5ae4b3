//! Nelder-Mead downhill simplex minimization.

use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimplexOptions {
    /// Edge length of the initial axis-aligned simplex.
    pub initial_step: f64,
    /// Stop once the spread of objective values across the simplex is below this.
    pub tolerance: f64,
    pub max_evals: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimplexOutcome {
    pub point: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

/// Minimizes `f` starting from `start`. Non-finite objective values are
/// treated as `+inf`.
pub fn minimize<F: FnMut(&[f64]) -> f64>(mut f: F, start: &[f64], opts: &SimplexOptions) -> SimplexOutcome {
    let n = start.len();
    let mut evaluations = 0usize;
    let mut eval = |x: &[f64], evaluations: &mut usize| {
        *evaluations += 1;
        let v = f(x);
        if v.is_finite() {
            v
        } else {
            f64::INFINITY
        }
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((start.to_vec(), eval(start, &mut evaluations)));
    for k in 0..n {
        let mut x = start.to_vec();
        x[k] += opts.initial_step;
        let v = eval(&x, &mut evaluations);
        simplex.push((x, v));
    }

    let mut converged = false;
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[n].1 - simplex[0].1;
        if spread <= opts.tolerance {
            converged = true;
            break;
        }
        if evaluations >= opts.max_evals || n == 0 {
            break;
        }

        let mut centroid = alloc::vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / n as f64;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid.iter().zip(&simplex[n].0).map(|(c, w)| c + t * (c - w)).collect()
        };

        let reflected = along(REFLECT);
        let f_r = eval(&reflected, &mut evaluations);
        if f_r < simplex[0].1 {
            let expanded = along(EXPAND);
            let f_e = eval(&expanded, &mut evaluations);
            simplex[n] = if f_e < f_r { (expanded, f_e) } else { (reflected, f_r) };
            continue;
        }
        if f_r < simplex[n - 1].1 {
            simplex[n] = (reflected, f_r);
            continue;
        }
        let (contracted, f_c) = if f_r < simplex[n].1 {
            let x = along(CONTRACT * REFLECT);
            let v = eval(&x, &mut evaluations);
            (x, v)
        } else {
            let x = along(-CONTRACT);
            let v = eval(&x, &mut evaluations);
            (x, v)
        };
        if f_c < simplex[n].1.min(f_r) {
            simplex[n] = (contracted, f_c);
            continue;
        }
        let best = simplex[0].0.clone();
        for (x, v) in simplex.iter_mut().skip(1) {
            for (xi, bi) in x.iter_mut().zip(&best) {
                *xi = bi + SHRINK * (*xi - bi);
            }
            *v = eval(x, &mut evaluations);
        }
    }

    let (point, value) = simplex.swap_remove(0);
    SimplexOutcome { point, value, evaluations, converged }
}
