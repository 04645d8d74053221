//! Independent oracles and the theorem-suite runner.

mod oracle;
mod suite;

pub use oracle::{
    constancy_sweep, fd_constancy_sweep, fd_forms_oracle, graph_sweep, grid_values, motion_invariance,
    oracle_equivalence, random_chart, random_motion, random_profile, sampling_range, usable_u_range,
    EquivalenceReport, GridSpec, Quantity, RandomChart, SweepStats, ORACLE_MIN_STEP, ORACLE_STEP,
};
pub use suite::{
    claim_ids, run_theorem_suite, seed_from_env, ClaimResult, Selection, Status, SuiteConfig, Tolerances,
    VerificationReport, DEFAULT_DRAWS, DEFAULT_SEED, SEED_ENV,
};
