//! Gaussian sign rounding of solver output.

mod lift;
mod report;
mod rounders;

pub use lift::{lift, LiftedMatrix};
pub use report::{
    estimate_value, prepare_sampler, sdp_units, RoundingMode, RoundingReport, RoundingSource,
    RoundingTarget, Sampler, PSD_CHECK_CAP,
};
pub use rounders::{
    round_exact, round_signs, rounding_gaussian, rounding_order, SqrtRounder, TaylorRounder,
};
