//! Samplers: Glauber dynamics and exact coupling-from-the-past for uniform
//! height functions, the conditioned Bernoulli walk measure with its exact
//! one-step law, exhaustive enumeration oracles, and the boundary
//! perturbation constructions behind the walk/tiling coupling experiments.

mod enumerate;
mod glauber;
mod grid;
mod perturb;
mod rng;
mod walks;

pub use enumerate::{
    count_tilings, enumerate_tilings, for_each_height, DEFAULT_ENUMERATION_CAP,
};
pub use glauber::{
    default_sweeps, glauber_step, monotone_coupled_sample, sample_exact_cftp, sample_uniform,
    GlauberChain,
};
pub use perturb::{
    build_p_r, build_q, coupling_experiment, default_window, in_z, slope_to_beta, CouplingReport,
    LabeledSeq, PerturbationTriple, TilingSource,
};
pub use rng::RngState;
pub use walks::{
    azuma_check, for_each_walk_trajectory, sample_walk_ensemble, walk_path_probability,
    walk_transition, AzumaReport, TransitionLaw, WalkParams, WalkStep, MAX_EXACT_PARTICLES,
};
