//! Random instances, exhaustive-search oracles and norm profiles.

mod brute;
mod generate;
mod profile;

pub use brute::{brute_force_inf1, brute_force_maxqp, BRUTE_FORCE_CAP};
pub use generate::{gaussian_raw, generate, InstanceKind, InstanceSpec};
pub use profile::{norm_profile, norm_profile_rect, NormProfile};
