//! Two-sided fair ranking.
//!
//! This crate computes stochastic rankings that trade off user-side and
//! item-side utilities by maximizing concave welfare functions (or penalized
//! baseline objectives) with the Frank-Wolfe algorithm, and audits the
//! results with generalized Lorenz curve analytics.
//!
//! - [`model`] — problem instances, rankings, utility profiles
//! - [`utility`] — utility/exposure profiles, item qualities, exposure targets
//! - [`objectives`] — welfare, penalized baselines, group welfare
//! - [`solver`] — Frank-Wolfe with the top-K sort oracle and gap certificates
//! - [`analysis`] — Lorenz curves, dominance, Gini, leximin, regret bound
//! - [`instances`] — reference instance generators and `.fri` files

pub mod analysis;
pub mod error;
pub mod instances;
pub mod model;
pub mod objectives;
pub mod solver;
pub mod utility;

pub use analysis::{
    curve_dominance, dominance, gini, leximin_compare, lorenz_curve, pareto_dominance,
    quantile_cumulative, regret_bound_check, std_dev, Dominance, LorenzReport, RegretReport,
    DOMINANCE_TOL,
};
pub use error::{Error, Result};
pub use instances::{
    dcg_weights, gen_leader_star, gen_micro_example, gen_pair_triangle, gen_qw_counterexample,
    gen_random, load_instance, qw_limit_probability, read_instance, save_instance, write_instance,
    ReferenceFact, ReferenceSolution,
};
pub use model::{
    marginal_exposure, validate_instance, Atom, DeterministicRanking, Groups, Matrix, Mode,
    ProblemInstance, StochasticRanking, UtilityProfile,
};
pub use objectives::{
    group_welfare, pairwise_penalty, penalized_objective, psi, psi_prime, welfare, Evaluation,
    GroupWelfare, Objective, PenalizedObjective, PenaltyKind, PenaltyParams, Welfare,
    WelfareParams,
};
pub use solver::{
    linear_oracle, solve, utilitarian_ranking, utilitarian_vertex, Solution, SolverConfig,
    SolverTrace, TraceRecord,
};
pub use utility::{
    exposure_profile, exposure_targets, item_qualities, utility_profile, vertex_profile,
    ExposureTargets, ProfileKind, TargetKind,
};
