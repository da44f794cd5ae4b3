//! Detecting non-classical bipartite correlations with `Q`.
//!
//! A classical-quantum state `sum_i p_i rho_i (x) |b_i><b_i|` leaves every
//! conditional state of `B` diagonal in the basis `{|b_i>}`, so any two of
//! them commute. Two measurements on `A` whose conditional `B` states have
//! `Q > 0` therefore certify correlations that are not of that form.

mod measurement;
mod search;
mod simplex;
mod state;

pub use measurement::{
    conditional_state, correlation_witness, projector_pair, qubit_measurement_kets, validate_povm,
    ConditionalState, MeasurementAngles, PovmElement, MIN_PROBABILITY,
};
pub use search::{maximize_witness, witness_at, DiscordReport, MeasurementFamily, OptimizerConfig, SearchPoint, Verdict};
pub use simplex::{minimize, SimplexOptions, SimplexOutcome};
pub use state::{build_cq_state, epr_state, separable_example_state, BipartiteState, CqSpec};
