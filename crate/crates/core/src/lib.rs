//! Belief functions on finite outcome spaces.

pub mod betting;
pub mod combination;
pub mod conditioning;
pub mod credal;
pub mod error;
pub mod expectation;
pub mod frame;
pub mod mass;
pub mod model;
pub mod par;
pub mod products;
pub mod sampling;
pub mod scalar;
pub mod scenarios;

pub use betting::{check_b2star, check_p2, find_violation, BetFamily, BettingMode, Verdict};
pub use combination::{dempster_combine, diagonal_equivalence_check, DiagonalEquivalence};
pub use conditioning::{
    condition_mass, conditional_belief, lift_to_powerset, total_belief_check, LiftedDistribution,
    TotalBeliefReport,
};
pub use credal::{
    compatible_conditional_lower, extreme_points, fh_conditional_lower, lower_probability, AllocationChoice,
    CredalSet,
};
pub use error::{Error, Result};
pub use expectation::{exact_lln_belief, lower_expectation, simulate_lln, LlnReport, RandomVariable};
pub use frame::{Frame, SubsetMask, MAX_FRAME_SIZE};
pub use mass::{validate_mass, BeliefCheck, MassFunction, ProbabilityDistribution, SetFunction};
pub use model::{load_model, save_model, Model, ModelDocument};
pub use par::Execution;
pub use products::{check_independence, independent_product, marginal, Axis, IndependenceReport, ProductFrame};
pub use scalar::{format_rational, parse_rational, ratio, NumericMode, Rational, Scalar};
pub use scenarios::{registry, run_all, run_scenario, Scenario, ScenarioParams, ScenarioReport};
