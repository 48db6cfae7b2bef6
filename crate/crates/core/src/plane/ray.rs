//! External rays by level descent: the point of potential `l` on the ray of
//! angle `t` solves `f^m(z) = exp(2^m l + 2 pi i 2^m t)` once `2^m l` is large
//! enough for the Böttcher coordinate to be the identity to working precision.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use super::{green, serialize_complex, Params};
use crate::circle::Angle;
use crate::error::{Error, Result};

/// Potential at which `f^m(z)` is replaced by its Böttcher coordinate.
const FAR_LEVEL: f64 = 20.0;
const STEPS_PER_HALVING: usize = 16;
const NEWTON_STEPS: usize = 64;

#[derive(Debug, Clone, Serialize)]
pub struct Landing {
    #[serde(serialize_with = "serialize_complex")]
    pub point: Complex64,
    /// `|f^q(z) - z|` for the periodic part plus the preimage residual.
    pub residual: f64,
    /// Distance from the last traced ray point.
    pub distance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RayPath {
    pub angle: Angle,
    #[serde(serialize_with = "serialize_points")]
    pub points: Vec<Complex64>,
    /// Target potential of each point, strictly decreasing.
    pub levels: Vec<f64>,
    /// True when the descent stopped before `level_min`.
    pub partial: bool,
    pub failure: Option<String>,
    pub landing: Option<Landing>,
}

fn serialize_points<S: serde::Serializer>(pts: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(pts.iter().map(|z| [z.re, z.im]))
}

impl RayPath {
    pub fn last(&self) -> Option<Complex64> {
        self.points.last().copied()
    }
}

/// Solves `f^m(z) = w` by Newton's method from `z`.
fn newton_target(params: &Params, z: Complex64, m: usize, w: Complex64) -> Option<Complex64> {
    // rounding in f^m grows like 2^m
    let tol = (params.eps + 8.0 * f64::EPSILON * 2f64.powi(m as i32)) * w.norm();
    let mut z = z;
    for _ in 0..NEWTON_STEPS {
        let (fz, d) = params.iterate_with_derivative(z, m);
        let err = fz - w;
        if !err.is_finite() || d.norm() == 0.0 {
            return None;
        }
        if err.norm() <= tol {
            return Some(z);
        }
        let step = err / d;
        z -= step;
        // stalled at the rounding level of z itself
        if step.norm() <= 4.0 * f64::EPSILON * z.norm() {
            return Some(z);
        }
    }
    None
}

/// Traces the ray of angle `t` from far out down to potential `level_min`.
pub fn trace_ray(params: &Params, t: &Angle, level_min: f64) -> Result<RayPath> {
    let start = FAR_LEVEL.max(params.escape_radius.ln());
    if !(level_min > 0.0 && level_min < start) {
        return Err(Error::InvalidArgument(format!(
            "level_min {level_min} outside (0, {start})"
        )));
    }
    let ratio = 0.5f64.powf(1.0 / STEPS_PER_HALVING as f64);
    let mut level = start;
    let mut z = Complex64::from_polar(start.exp(), TAU * t.to_f64());
    let mut path = RayPath {
        angle: t.clone(),
        points: vec![z],
        levels: vec![level],
        partial: false,
        failure: None,
        landing: None,
    };
    while level * ratio >= level_min {
        level *= ratio;
        let m = (FAR_LEVEL / level).log2().ceil().max(0.0) as usize;
        let arg = TAU * t.iterate(m as u64).to_f64();
        let w = Complex64::from_polar((level * 2f64.powi(m as i32)).exp(), arg);
        let Some(next) = newton_target(params, z, m, w) else {
            path.partial = true;
            path.failure = Some(format!("Newton diverged at level {level:e}"));
            break;
        };
        let g = green(params, next);
        if (g - level).abs() > 1e-6 * level {
            path.partial = true;
            path.failure = Some(format!("point at level {level:e} has potential {g:e}"));
            break;
        }
        z = next;
        path.points.push(z);
        path.levels.push(level);
    }
    path.landing = landing_point(params, &path);
    Ok(path)
}

/// Refines the end of a traced ray to the periodic or preperiodic point it
/// lands at, solved by Newton's method from the last ray point. Partial
/// paths are refined too; the root must lie within reach of the descent.
pub fn landing_point(params: &Params, path: &RayPath) -> Option<Landing> {
    if path.points.len() < 2 {
        return None;
    }
    let last = path.last()?;
    let info = path.angle.orbit_info();
    let (pre, per) = (info.preperiod as usize, info.period as usize);
    // the periodic landing point, from the image of the last ray point
    let (mut y, _) = params.iterate_with_derivative(last, pre);
    let mut converged = false;
    for _ in 0..200 {
        let (fy, d) = params.iterate_with_derivative(y, per);
        let step = (fy - y) / (d - 1.0);
        if !step.is_finite() {
            return None;
        }
        y -= step;
        if step.norm() <= 1e-15 * (1.0 + y.norm()) {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }
    let mut residual = (params.iterate_with_derivative(y, per).0 - y).norm();
    let mut z = y;
    if pre > 0 {
        z = last;
        let mut ok = false;
        for _ in 0..200 {
            let (fz, d) = params.iterate_with_derivative(z, pre);
            let step = (fz - y) / d;
            if !step.is_finite() {
                return None;
            }
            z -= step;
            if step.norm() <= 1e-15 * (1.0 + z.norm()) {
                ok = true;
                break;
            }
        }
        if !ok {
            return None;
        }
        residual += (params.iterate_with_derivative(z, pre).0 - y).norm();
    }
    // the landing point must be where the ray is heading, not a distant root
    let decade = path
        .levels
        .iter()
        .rposition(|&l| l >= 10.0 * path.levels.last().copied().unwrap_or(0.0))
        .map(|i| path.points[i])
        .unwrap_or(path.points[0]);
    let reach = (10.0 * (decade - last).norm()).max(1e-2);
    let distance = (z - last).norm();
    (distance <= reach).then_some(Landing {
        point: z,
        residual,
        distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::ang;

    #[test]
    fn radial_rays_for_z_squared() {
        let p = Params::new(Complex64::new(0.0, 0.0));
        for t in [ang(1, 3), ang(1, 7), ang(5, 12)] {
            let path = trace_ray(&p, &t, 1e-6).unwrap();
            assert!(!path.partial);
            let dir = Complex64::from_polar(1.0, TAU * t.to_f64());
            for z in &path.points {
                // distance from the radial line through dir
                let off = (z * dir.conj()).im.abs();
                assert!(off < 1e-9 * z.norm().max(1.0), "{t}: {z}");
                assert!((z * dir.conj()).re > 0.0);
            }
            for w in path.levels.windows(2) {
                assert!(w[1] < w[0]);
            }
        }
        let path = trace_ray(&p, &ang(1, 3), 1e-6).unwrap();
        let land = path.landing.unwrap();
        assert!((land.point - Complex64::from_polar(1.0, TAU / 3.0)).norm() < 1e-12);
    }

    #[test]
    fn chebyshev_and_basilica_landings() {
        let p = Params::new(Complex64::new(-2.0, 0.0));
        let land = trace_ray(&p, &Angle::zero(), 1e-8).unwrap().landing.unwrap();
        assert!((land.point - Complex64::new(2.0, 0.0)).norm() < 1e-6);
        let land = trace_ray(&p, &ang(1, 2), 1e-8).unwrap().landing.unwrap();
        assert!((land.point - Complex64::new(-2.0, 0.0)).norm() < 1e-6);

        let p = Params::new(Complex64::new(-1.0, 0.0));
        let alpha = Complex64::new((1.0 - 5f64.sqrt()) / 2.0, 0.0);
        for t in [ang(1, 3), ang(2, 3)] {
            let land = trace_ray(&p, &t, 1e-8).unwrap().landing.unwrap();
            assert!((land.point - alpha).norm() < 1e-6, "{t}: {:?}", land.point);
        }
    }

    #[test]
    fn bad_level_rejected() {
        let p = Params::new(Complex64::new(0.0, 0.0));
        assert!(trace_ray(&p, &ang(1, 3), 0.0).is_err());
        assert!(trace_ray(&p, &ang(1, 3), 100.0).is_err());
    }

    #[test]
    fn ray_respects_doubling() {
        let p = Params::new(Complex64::new(-0.12, 0.75));
        let t = ang(1, 7);
        let a = trace_ray(&p, &t, 1e-3).unwrap();
        let b = trace_ray(&p, &t.double(), 1e-3).unwrap();
        // f maps the point of level l on R_t to the point of level 2l on R_2t
        let mut matched = 0;
        for (z, l) in a.points.iter().zip(&a.levels).step_by(7) {
            let img = p.f(*z);
            let i = b.levels.iter().position(|x| (x - 2.0 * l).abs() < 1e-9 * l);
            if let Some(i) = i {
                assert!((b.points[i] - img).norm() < 1e-7 * (1.0 + img.norm()), "level {l}");
                matched += 1;
            }
        }
        assert!(matched > 10);
    }
}
