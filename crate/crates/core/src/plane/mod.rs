//! Floating-point dynamics of `f(z) = z^2 + c` in the plane.

mod expansion;
mod feigenbaum;
mod green;
mod periodic;
mod ray;
mod render;
mod telescope;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub use expansion::{expansion_report, small_julia_sample, ExpansionReport, Stats};
pub use feigenbaum::feigenbaum_parameter;
pub use green::green;
pub use periodic::{beta_point, periodic_points, BetaPoint, PeriodicPoint};
pub use ray::{landing_point, trace_ray, Landing, RayPath};
pub use render::{render, Layer, Scene};
pub use telescope::{telescope_check, StageReport, TelescopeReport};

/// Parameters of `f(z) = z^2 + c` and the numerical budget.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Params {
    #[serde(serialize_with = "serialize_complex")]
    pub c: Complex64,
    /// Relative tolerance for Newton steps.
    pub eps: f64,
    pub max_iter: usize,
    /// Points beyond this radius escape; at least `2 + |c|`.
    pub escape_radius: f64,
}

impl Params {
    pub fn new(c: Complex64) -> Self {
        Params {
            c,
            eps: 1e-12,
            max_iter: 100_000,
            escape_radius: 2.0 + c.norm(),
        }
    }

    pub fn with_eps(mut self, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < 1e-3) {
            return Err(Error::InvalidArgument(format!("eps {eps} outside (0, 1e-3)")));
        }
        self.eps = eps;
        Ok(self)
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Result<Self> {
        if max_iter == 0 {
            return Err(Error::InvalidArgument("iteration cap must be positive".into()));
        }
        self.max_iter = max_iter;
        Ok(self)
    }

    pub fn with_escape_radius(mut self, r: f64) -> Result<Self> {
        if !(r >= 2.0 + self.c.norm()) {
            return Err(Error::InvalidArgument(format!(
                "escape radius {r} below 2 + |c| = {}",
                2.0 + self.c.norm()
            )));
        }
        self.escape_radius = r;
        Ok(self)
    }

    pub fn f(&self, z: Complex64) -> Complex64 {
        z * z + self.c
    }

    /// `f^m(z)` together with `(f^m)'(z)`.
    pub fn iterate_with_derivative(&self, z: Complex64, m: usize) -> (Complex64, Complex64) {
        let mut z = z;
        let mut d = Complex64::new(1.0, 0.0);
        for _ in 0..m {
            d *= 2.0 * z;
            z = self.f(z);
        }
        (z, d)
    }
}

/// Serializes as `[re, im]`.
pub fn serialize_complex<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

pub(crate) fn serialize_complex_opt<S: serde::Serializer>(
    z: &Option<Complex64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    z.map(|z| [z.re, z.im]).serialize(s)
}

/// Parses `"a"`, `"bi"`, `"a+bi"` or `"a-bi"`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("cannot read complex number {s:?}"));
    let num = |x: &str| -> Result<f64> {
        match x {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => x.parse::<f64>().map_err(|_| bad()),
        }
    };
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(t.parse().map_err(|_| bad())?, 0.0));
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match split {
        Some(i) => Ok(Complex64::new(
            body[..i].parse().map_err(|_| bad())?,
            num(&body[i..])?,
        )),
        None => Ok(Complex64::new(0.0, num(body)?)),
    }
}
