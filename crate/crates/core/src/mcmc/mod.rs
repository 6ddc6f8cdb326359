//! Markov chain on thick equilateral polygons driven by batches of random
//! reflection moves.
//!
//! Each step draws up to `N` reflections, applies all of them, and keeps
//! the result only if its thickness is at least the bound. Nothing is
//! claimed about the chain's stationary distribution beyond what the
//! diagnostics measure; in particular it is not documented as uniform.

mod chain;
mod diagnostics;
mod noise;

pub use chain::{
    chain_step, renormalize, renormalize_points, run_chain, Chain, ChainConfig, ChainStats, Sample, Start, StepOutcome,
    AUDIT_INTERVAL, MAX_DRIFT,
};
pub use diagnostics::{diagnostics, Diagnostics, MIN_SAMPLES};
pub use noise::{decode_noise, draw_noise, NoiseDraw, NoiseRecord};
