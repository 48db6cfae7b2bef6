//! Exact arithmetic on the circle R/Z.

mod angle;
mod arc;
mod arcset;
mod limit;
mod orbit;
mod json;

pub use angle::{ang, frac, parse_rational, rat, Angle};
pub use arc::Arc;
pub use arcset::{ArcSet, MAX_PREIMAGE_POWER};
pub use json::{serialize_ratio_string, serialize_rational};
pub use limit::{dyadic, LimitAngle};
pub use orbit::{multiplicative_order_of_two, OrbitInfo};

pub(crate) use angle::pow2;
