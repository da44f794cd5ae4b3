//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the
//! process exits non-zero if any criterion fails.

mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use quantumness_core::correlations::{
    build_cq_state, correlation_witness, epr_state, maximize_witness, projector_pair, separable_example_state,
    BipartiteState, CqSpec, MeasurementAngles, OptimizerConfig, PovmElement, Verdict,
};
use quantumness_core::interferometer::{
    interferometric_quantumness, permutation_expectation, PermutationUnitary, SamplingMode,
};
use quantumness_core::nalgebra::DVector;
use quantumness_core::qcore::{random_unitary, DensityMatrix, RegisterLayout};
use quantumness_core::witness::{quantumness, witness_observables, QuantumnessMethod};
use rand_core::RngCore;

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn q_direct(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    quantumness(a, b, QuantumnessMethod::DirectNorm).unwrap().q_value
}

/// 20 equally spaced points on [0, pi/2], endpoints included.
fn grid20() -> Vec<f64> {
    (0..20).map(|k| k as f64 * FRAC_PI_2 / 19.0).collect()
}

fn example_grid(state: &BipartiteState, scale: f64) -> Outcome {
    let mut worst = 0.0_f64;
    let mut grid_max = 0.0_f64;
    for &theta in &grid20() {
        for &phi in &grid20() {
            let (p1, p2) = projector_pair(MeasurementAngles::new(theta, phi));
            let q = correlation_witness(state, &p1, &p2).unwrap();
            worst = worst.max((q - scale * (2.0 * phi).sin().powi(2)).abs());
            grid_max = grid_max.max(q);
        }
    }
    let mut peak_err = 0.0_f64;
    for &theta in &grid20() {
        let (p1, p2) = projector_pair(MeasurementAngles::new(theta, FRAC_PI_4));
        peak_err = peak_err.max((correlation_witness(state, &p1, &p2).unwrap() - scale).abs());
    }
    check(
        worst <= 1e-10 && peak_err <= 1e-10 && grid_max <= scale + 1e-10,
        format!("max |Q - closed form| = {worst:.2e}, |Q(phi=pi/4) - {scale}| <= {peak_err:.2e}, grid max {grid_max:.12}"),
    )
}

fn example_one() -> Outcome {
    example_grid(&epr_state(), 1.0)
}

fn example_two() -> Outcome {
    example_grid(&separable_example_state(), 1.0 / 16.0)
}

fn visibility_identity() -> Outcome {
    let mut r = rng(2024);
    let mut worst = 0.0_f64;
    for d in [2usize, 3] {
        for k in 0..1000 {
            let a = random_state(d, 1 + k % d, &mut r);
            let b = random_state(d, 1 + (k / d) % d, &mut r);
            let est = interferometric_quantumness(&a, &b, SamplingMode::Exact).unwrap();
            worst = worst.max((est.witness.q_value - q_direct(&a, &b)).abs());
        }
    }
    check(worst <= 1e-9, format!("2000 pairs, max |Q_interf - Q| = {worst:.2e}"))
}

fn bounds_suite() -> Outcome {
    let mut r = rng(7);
    let (mut min_q, mut max_q) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut violations = Vec::new();
    let pairs_per_dim = 25_000;
    for d in 2usize..=5 {
        for k in 0..pairs_per_dim {
            let a = random_state(d, 1 + k % d, &mut r);
            let b = random_state(d, 1 + (k / d) % d, &mut r);
            let q = q_direct(&a, &b);
            min_q = min_q.min(q);
            max_q = max_q.max(q);
            if !(-1e-12..=1.0 + 1e-12).contains(&q) && violations.len() < 5 {
                violations.push((d, k, q));
            }
        }
    }
    check(
        violations.is_empty(),
        format!("100000 pairs in dims 2..5, Q in [{min_q:.3e}, {max_q:.12}], violations {violations:?}"),
    )
}

fn permutation_oracle() -> Outcome {
    let mut r = rng(31);
    let layout = RegisterLayout::uniform(2, 4).unwrap();
    let states: Vec<_> = (0..4).map(|k| random_state(2, 1 + k % 2, &mut r)).collect();
    let mut worst = 0.0_f64;
    let perms = permutations(4);
    for mapping in &perms {
        let perm = PermutationUnitary::new(layout.clone(), mapping.clone()).unwrap();
        let fast = permutation_expectation(&perm, &states).unwrap();
        let joint = quantumness_core::qcore::tensor_states(&states).unwrap();
        let dense_matrix = (&perm.to_dense() * joint.operator()).trace();
        let dense_sum = dense_permutation_trace(mapping, &states);
        worst = worst.max((fast - dense_matrix).norm()).max((fast - dense_sum).norm());
    }
    check(perms.len() == 24 && worst <= 1e-12, format!("{} permutations, max deviation {worst:.2e}", perms.len()))
}

fn witness_observable_consistency() -> Outcome {
    let mut r = rng(55);
    let mut worst = 0.0_f64;
    for k in 0..1000 {
        let a = random_state(2, 1 + k % 2, &mut r);
        let b = random_state(2, 1 + (k / 2) % 2, &mut r);
        let (va, vb) = witness_observables(&a, &b).unwrap();
        let half_q = q_direct(&a, &b) / 2.0;
        worst = worst
            .max((va.norm() - half_q).abs())
            .max((vb.norm() - half_q).abs())
            .max(va.re.abs())
            .max(vb.re.abs());
    }
    check(worst <= 1e-10, format!("1000 qubit pairs, max ||Tr(rho_a[A,B])| - Q/2| = {worst:.2e}"))
}

fn random_cq_state(db: usize, r: &mut rand_chacha::ChaCha20Rng) -> BipartiteState {
    let u = random_unitary(db, r);
    let weights: Vec<f64> = (0..db).map(|_| 0.05 + (r.next_u64() >> 11) as f64 / (1u64 << 53) as f64).collect();
    let total: f64 = weights.iter().sum();
    let spec = CqSpec {
        probs: weights.iter().map(|w| w / total).collect(),
        a_states: (0..db).map(|k| random_state(2, 1 + k % 2, r)).collect(),
        b_basis: (0..db).map(|k| DVector::from_iterator(db, u.matrix().column(k).iter().copied())).collect(),
    };
    build_cq_state(&spec).unwrap()
}

fn cq_null_test() -> Outcome {
    let mut r = rng(99);
    let mut worst = 0.0_f64;
    let mut checked = 0;
    for s in 0..20 {
        let rho = random_cq_state(if s < 10 { 2 } else { 3 }, &mut r);
        for _ in 0..50 {
            let e1 = PovmElement::projector(&random_ket(2, &mut r)).unwrap();
            let e2 = PovmElement::projector(&random_ket(2, &mut r)).unwrap();
            worst = worst.max(correlation_witness(&rho, &e1, &e2).unwrap());
            checked += 1;
        }
    }
    check(worst <= 1e-10, format!("{checked} projector pairs on 20 CQ states, max Q = {worst:.2e}"))
}

fn optimizer_detection() -> Outcome {
    let cfg = OptimizerConfig::default();
    let epr = maximize_witness(&epr_state(), &cfg);
    let sigma = maximize_witness(&separable_example_state(), &cfg);
    let mut r = rng(404);
    let mut product_max = 0.0_f64;
    let mut all_null = true;
    for k in 0..20 {
        let a = random_state(2, 1 + k % 2, &mut r);
        let b = random_state(2, 1 + (k / 2) % 2, &mut r);
        let report = maximize_witness(&BipartiteState::product(&a, &b), &cfg);
        product_max = product_max.max(report.best_q);
        all_null &= report.verdict == Verdict::NoViolationFound && report.best_q <= 1e-8;
    }
    let pass = epr.best_q >= 0.999
        && epr.verdict == Verdict::QuantumCorrelated
        && (0.9 / 16.0..=1.0 / 16.0 + 1e-6).contains(&sigma.best_q)
        && all_null;
    check(
        pass,
        format!(
            "EPR best_q {:.12}, sigma best_q {:.12} (1/16 = 0.0625), max over 20 product states {product_max:.2e}",
            epr.best_q, sigma.best_q
        ),
    )
}

fn fixed_pair() -> (DensityMatrix, DensityMatrix) {
    use quantumness_core::qcore::{c, ComplexOperator};
    // Bloch vectors (0.6, 0, 0.3) and (0, 0.5, 0.5)
    let a = ComplexOperator::from_rows(2, &[c(0.65, 0.0), c(0.3, 0.0), c(0.3, 0.0), c(0.35, 0.0)]).unwrap();
    let b = ComplexOperator::from_rows(2, &[c(0.75, 0.0), c(0.0, -0.25), c(0.0, 0.25), c(0.25, 0.0)]).unwrap();
    (DensityMatrix::new(a).unwrap(), DensityMatrix::new(b).unwrap())
}

fn shot_statistics() -> Outcome {
    let (a, b) = fixed_pair();
    let truth = q_direct(&a, &b);
    let mut covered = 0;
    for trial in 0..100u64 {
        let est = interferometric_quantumness(&a, &b, SamplingMode::sampled(100_000, 1000 + trial).unwrap()).unwrap();
        if (est.witness.q_value - truth).abs() <= 5.0 * est.stderr_q {
            covered += 1;
        }
    }
    let scaled: Vec<f64> = [1_000u64, 10_000, 100_000]
        .iter()
        .map(|&n| {
            let est = interferometric_quantumness(&a, &b, SamplingMode::sampled(n, 77).unwrap()).unwrap();
            est.stderr_q * (n as f64).sqrt()
        })
        .collect();
    let hi = scaled.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = scaled.iter().cloned().fold(f64::INFINITY, f64::min);
    check(
        covered >= 99 && hi / lo <= 2.0,
        format!("Q = {truth:.6}, {covered}/100 trials within 5 sigma, sigma*sqrt(N) = {scaled:.4?} (ratio {:.3})", hi / lo),
    )
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("example-1 EPR closed form sin^2(2phi)", example_one, Some(Duration::from_secs(1))),
        ("example-2 separable closed form sin^2(2phi)/16", example_two, Some(Duration::from_secs(1))),
        ("visibility identity 4(v1 - v2) = Q", visibility_identity, Some(Duration::from_secs(30))),
        ("bounds 0 <= Q <= 1", bounds_suite, Some(Duration::from_secs(120))),
        ("permutation cycle oracle (S4)", permutation_oracle, Some(Duration::from_secs(10))),
        ("witness observables |Tr(rho_a[A,B])| = Q/2", witness_observable_consistency, None),
        ("CQ null test", cq_null_test, None),
        ("optimizer detection", optimizer_detection, Some(Duration::from_secs(60))),
        ("shot statistics", shot_statistics, None),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            if elapsed > limit {
                outcome.pass = false;
                outcome.detail.push_str(&format!("; runtime {elapsed:?} exceeds {limit:?}"));
            }
        }
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {name} ({:.2?}): {}", elapsed, outcome.detail);
        if !outcome.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
