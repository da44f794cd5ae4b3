use std::path::Path;
use std::time::Instant;

use quantumness_core::correlations::{
    correlation_witness, epr_state, maximize_witness, projector_pair, separable_example_state, BipartiteState,
    MeasurementAngles, MeasurementFamily, OptimizerConfig, Verdict,
};
use quantumness_core::interferometer::{
    cascade_spec, default_phases, extract_visibility, interferometric_quantumness, run_interferometer, Cascade,
    SamplingMode, VisibilityEstimate,
};
use quantumness_core::qcore::{random_density, DensityMatrix, RandomSpec, C64};
use quantumness_core::witness::{quantumness, QuantumnessMethod};
use serde_json::{json, Value};

use crate::cli::{
    CascadeArg, DiscordArgs, ExampleArg, ExampleArgs, InterfereArgs, MethodArg, ModeArg, RandomStateArgs,
    WitnessArgs,
};
use crate::error::{CliError, CliResult};
use crate::formats::{load_state, save_state, write_fringes, InputDigest, RunReport, SCHEMA_VERSION};

/// Results of one command before the report envelope is added.
pub struct Outcome {
    pub inputs: Vec<InputDigest>,
    pub results: Value,
    pub seed: Option<u64>,
}

pub fn into_report(command: &str, outcome: Outcome, started: Instant) -> RunReport {
    RunReport {
        schema_version: SCHEMA_VERSION.to_string(),
        command: command.to_string(),
        inputs: outcome.inputs,
        results: outcome.results,
        seed: outcome.seed,
        timing_ms: started.elapsed().as_millis() as u64,
    }
}

fn load_pair(a: &Path, b: &Path) -> CliResult<(DensityMatrix, DensityMatrix, Vec<InputDigest>)> {
    let (sa, da) = load_state(a)?;
    let (sb, db) = load_state(b)?;
    let (sa, sb) = (sa.density().clone(), sb.density().clone());
    if sa.dim() != sb.dim() {
        return Err(CliError::InvalidInput(format!(
            "state dimensions differ: {} has {}, {} has {}",
            a.display(),
            sa.dim(),
            b.display(),
            sb.dim()
        )));
    }
    Ok((sa, sb, vec![da, db]))
}

fn visibility_json(v: &VisibilityEstimate) -> Value {
    json!({ "v": v.v, "alpha": v.alpha, "stderr_v": v.stderr_v, "re": v.re, "stderr_re": v.stderr_re })
}

fn sampling_mode(shots: Option<u64>, seed: Option<u64>) -> CliResult<SamplingMode> {
    match shots {
        None => Ok(SamplingMode::Exact),
        Some(0) => Err(CliError::Usage("--shots must be positive".into())),
        Some(n) => Ok(SamplingMode::Sampled { shots_per_phase: n, seed: seed.unwrap_or(0) }),
    }
}

pub fn witness(args: &WitnessArgs) -> CliResult<Outcome> {
    if args.method != MethodArg::Interfere && args.shots.is_some() {
        return Err(CliError::Usage("--shots only applies to --method interfere".into()));
    }
    let (a, b, inputs) = load_pair(&args.state_a, &args.state_b)?;
    let results = match args.method {
        MethodArg::Direct | MethodArg::Trace => {
            let method = if args.method == MethodArg::Direct {
                QuantumnessMethod::DirectNorm
            } else {
                QuantumnessMethod::TraceFormula
            };
            let r = quantumness(&a, &b, method)?;
            json!({
                "method": if args.method == MethodArg::Direct { "direct_norm" } else { "trace_formula" },
                "q_value": r.q_value,
                "v1": r.v1_term,
                "v2": r.v2_term,
            })
        }
        MethodArg::Interfere => {
            let mode = sampling_mode(args.shots, args.seed)?;
            let est = interferometric_quantumness(&a, &b, mode)?;
            json!({
                "method": "interferometric",
                "mode": if est.fringes_u1.is_exact() { "exact" } else { "sampled" },
                "shots_per_phase": args.shots.unwrap_or(0),
                "q_value": est.witness.q_value,
                "stderr_q": est.stderr_q,
                "v1": est.witness.v1_term,
                "v2": est.witness.v2_term,
                "visibilities": { "u1": visibility_json(&est.u1), "u2": visibility_json(&est.u2) },
            })
        }
    };
    let seed = if args.method == MethodArg::Interfere && args.shots.is_some() { Some(args.seed.unwrap_or(0)) } else { args.seed };
    Ok(Outcome { inputs, results, seed })
}

pub fn interfere(args: &InterfereArgs) -> CliResult<Outcome> {
    let shots = match (args.mode, args.shots) {
        (ModeArg::Exact, Some(_)) => return Err(CliError::Usage("--shots requires --mode sampled".into())),
        (ModeArg::Sampled, None) => return Err(CliError::Usage("--mode sampled requires --shots".into())),
        (_, s) => s,
    };
    let mode = sampling_mode(shots, args.seed)?;
    let (a, b, inputs) = load_pair(&args.state_a, &args.state_b)?;
    let cascade = match args.u {
        CascadeArg::U1 => Cascade::U1,
        CascadeArg::U2 => Cascade::U2,
    };
    let spec = cascade_spec(cascade, &a, &b, default_phases(args.phases), mode)?;
    let fringes = run_interferometer(&spec)?;
    write_fringes(&fringes, &args.fringes_out)?;
    let est = extract_visibility(&fringes)?;
    let results = json!({
        "unitary": if cascade == Cascade::U1 { "u1" } else { "u2" },
        "mode": if shots.is_some() { "sampled" } else { "exact" },
        "phases": args.phases,
        "shots_per_phase": shots.unwrap_or(0),
        "fringes_path": args.fringes_out.display().to_string(),
        "visibility": visibility_json(&est),
    });
    let seed = shots.map(|_| args.seed.unwrap_or(0));
    Ok(Outcome { inputs, results, seed })
}

fn ket_json(ket: &[C64]) -> Value {
    json!({
        "re": ket.iter().map(|z| z.re).collect::<Vec<_>>(),
        "im": ket.iter().map(|z| z.im).collect::<Vec<_>>(),
    })
}

pub fn discord(args: &DiscordArgs) -> CliResult<Outcome> {
    let [da, db] = <[usize; 2]>::try_from(args.dims.as_slice())
        .map_err(|_| CliError::Usage("--dims takes exactly two values".into()))?;
    if da < 2 {
        return Err(CliError::Usage("subsystem A needs dimension at least 2".into()));
    }
    let (loaded, digest) = load_state(&args.state)?;
    if let Some(file_dims) = loaded.dims() {
        if file_dims != [da, db] {
            return Err(CliError::InvalidInput(format!(
                "--dims {da} {db} disagree with dims {file_dims:?} in {}",
                args.state.display()
            )));
        }
    }
    let state = BipartiteState::new(loaded.density().clone(), da, db)?;
    let config = OptimizerConfig {
        grid: args.grid,
        starts: args.starts,
        max_evals: args.max_evals,
        seed: args.seed,
        ..OptimizerConfig::default()
    };
    let report = maximize_witness(&state, &config);
    let results = json!({
        "best_q": report.best_q,
        "verdict": match report.verdict {
            Verdict::QuantumCorrelated => "quantum_correlated",
            Verdict::NoViolationFound => "no_violation_found",
        },
        "threshold": config.threshold,
        "family": match report.family {
            MeasurementFamily::Qubit => "qubit_theta_phi_chi1_chi2",
            MeasurementFamily::General { .. } => "hyperspherical_pair",
        },
        "best_params": report.best_params,
        "best_projectors": { "psi1": ket_json(&report.best_kets.0), "psi2": ket_json(&report.best_kets.1) },
        "evaluations": report.evaluations,
        "trace": report.trace.iter().map(|p| json!({ "params": p.params, "q": p.q })).collect::<Vec<_>>(),
        "config": {
            "grid": config.grid,
            "starts": config.starts,
            "max_evals": config.max_evals,
            "tolerance": config.tolerance,
        },
    });
    Ok(Outcome { inputs: vec![digest], results, seed: Some(args.seed) })
}

pub fn example(args: &ExampleArgs) -> CliResult<Outcome> {
    if !args.phi.is_finite() || !args.theta.is_finite() {
        return Err(CliError::Usage("--phi and --theta must be finite".into()));
    }
    let (state, name, scale) = match args.which {
        ExampleArg::Epr => (epr_state(), "epr", 1.0),
        ExampleArg::Separable => (separable_example_state(), "separable", 1.0 / 16.0),
    };
    let (p1, p2) = projector_pair(MeasurementAngles::new(args.theta, args.phi));
    let q = correlation_witness(&state, &p1, &p2)?;
    let results = json!({
        "state": name,
        "theta": args.theta,
        "phi": args.phi,
        "q_value": q,
        "closed_form": scale * (2.0 * args.phi).sin().powi(2),
    });
    Ok(Outcome { inputs: Vec::new(), results, seed: None })
}

pub fn random_state(args: &RandomStateArgs) -> CliResult<Outcome> {
    let spec = RandomSpec::new(args.dim, args.rank, args.seed).map_err(|e| CliError::Usage(e.to_string()))?;
    let state = random_density(&spec)?;
    save_state(&args.out, &state, None)?;
    let results = json!({
        "dim": args.dim,
        "rank": args.rank,
        "purity": state.purity(),
        "path": args.out.display().to_string(),
    });
    Ok(Outcome { inputs: Vec::new(), results, seed: Some(args.seed) })
}
