//! Renormalization towers of ray pairs and the circle combinatorics built on them.

mod omega;
mod shadow;
mod theta;
mod tower;
mod validate;
mod window;

pub use shadow::{
    in_shadow, itinerary_point, shadow_component, shadow_kc, subwindow_arcs, Classification,
    ComponentAddress, ComponentShadow, KcShadow,
};
pub use omega::{omega_probe, OmegaHit, OmegaTarget, GUARD, MAX_HORIZON};
pub use theta::{theta, theta_arcs, ThetaValue};
pub use tower::{has_exact_period, tune, RayPair, Tower, MAX_GENERATED_PERIOD};
pub use validate::{validate, CheckResult};
pub use window::{
    subwindow, window, window_at, window_length, SubComponent, Subwindow, Window, HI, LO,
    MAX_LISTED_EXTRAS, SUB_LABELS,
};
