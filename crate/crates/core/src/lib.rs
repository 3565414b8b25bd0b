//! Bayesian reliability analysis for pass/fail test data.
//!
//! Components carry beta priors that are updated conjugately with their own
//! test records. Component posteriors are propagated through a reliability
//! block diagram by Monte Carlo, and whole-system test outcomes are folded in
//! by exact rejection: candidate system reliabilities are kept only when a
//! simulated test campaign reproduces the observed success count.

pub mod beta;
pub mod engine;
pub mod error;
pub mod model;
pub mod rbd;
pub mod rng;
pub mod sampling;
pub mod summary;

pub use beta::{
    beta_binomial_pmf, beta_mean, beta_pdf, beta_variance, conjugate_update, elicit_prior, ln_beta,
    BetaParams, PriorElicitation, TestRecord,
};
pub use engine::{
    all_success_series_shortcut, condition_on_system_tests, condition_on_system_tests_chunked,
    discrete_conditional_rejection, propagate, propagate_chunked, DiscretePmfTable,
    DiscreteRejection, ParamMap, SampleMeta, SampleSet, SystemTestData, BLOCK_LEN,
    DEFAULT_ATTEMPTS_PER_SAMPLE,
};
pub use error::{Error, Result};
pub use model::{ComponentSpec, ModelFile, PriorSpec};
pub use rbd::{
    analytic_first_two_moments, parse_structure, serialize_structure, system_reliability,
    BlockNode, Moments, ThetaAssignment,
};
pub use rng::{derive_substream, RngStream};
pub use sampling::{sample_beta, sample_binomial};
pub use summary::{histogram, ks_two_sample, quantile, summarize, Histogram, SummaryReport};
