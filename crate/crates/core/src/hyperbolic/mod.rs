//! Planar hyperbolic geometry: Poincare-disc distances, generalized discs,
//! cross-ratio distances, contraction factors, and rigorous two-sided
//! distance bounds on intersections of generalized discs.
//!
//! All functions are pure; there is no shared state.

mod bounds;
mod disc;
mod region;

pub use bounds::{domain_distance_bounds, DistanceBracket};
pub use disc::{
    cross_ratio_distance, disc_distance, eta_ball, eta_punctured, eta_real_cone,
    generalized_disc_distance, GeneralizedDisc, Mobius,
};
pub use region::{CanonicalRegion, ConstraintRegion};
