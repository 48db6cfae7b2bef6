use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Params;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Stats {
    pub min: f64,
    pub max: f64,
    pub geometric_mean: f64,
}

impl Stats {
    fn of(values: &[f64]) -> Option<Stats> {
        if values.is_empty() {
            return None;
        }
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let log_mean = values.iter().map(|v| v.ln()).sum::<f64>() / values.len() as f64;
        Some(Stats {
            min,
            max,
            geometric_mean: log_mean.exp(),
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpansionReport {
    pub m: usize,
    /// `|D(f^m)|` in the Euclidean metric.
    pub euclidean: Option<Stats>,
    /// The same with the spherical factor `(1 + |z|^2) / (1 + |f^m(z)|^2)`.
    pub spherical: Option<Stats>,
    /// Indices of sample points whose orbit escaped.
    pub escaped: Vec<usize>,
}

/// Derivative sizes of `f^m` along each sample point; escaping orbits are
/// listed and left out of the statistics.
pub fn expansion_report(params: &Params, sample: &[Complex64], m: usize) -> ExpansionReport {
    let mut euclid = Vec::new();
    let mut sphere = Vec::new();
    let mut escaped = Vec::new();
    for (i, &z0) in sample.iter().enumerate() {
        let mut z = z0;
        let mut d = 1.0;
        let mut gone = false;
        for _ in 0..m {
            d *= 2.0 * z.norm();
            z = params.f(z);
            if z.norm() > params.escape_radius || !z.is_finite() {
                gone = true;
                break;
            }
        }
        if gone {
            escaped.push(i);
            continue;
        }
        euclid.push(d);
        sphere.push(d * (1.0 + z0.norm_sqr()) / (1.0 + z.norm_sqr()));
    }
    ExpansionReport {
        m,
        euclidean: Stats::of(&euclid),
        spherical: Stats::of(&sphere),
        escaped,
    }
}

/// Points of the small Julia set of period `p` around the critical point,
/// by random backward iteration of `f^p`: every inverse step but the last
/// follows the critical orbit, the last picks a square root at random.
pub fn small_julia_sample(params: &Params, p: usize, count: usize, seed: u64) -> Result<Vec<Complex64>> {
    if p == 0 {
        return Err(Error::InvalidArgument("period must be positive".into()));
    }
    let mut orbit = vec![Complex64::new(0.0, 0.0)];
    for i in 1..p {
        orbit.push(params.f(orbit[i - 1]));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const BURN_IN: usize = 32;
    let mut z = orbit[0] + Complex64::new(1e-3, 1e-3);
    let mut out = Vec::with_capacity(count);
    for step in 0..count + BURN_IN {
        for i in (0..p).rev() {
            let r = (z - params.c).sqrt();
            z = if i == 0 {
                if rng.random::<bool>() { r } else { -r }
            } else if (r - orbit[i]).norm() <= (-r - orbit[i]).norm() {
                r
            } else {
                -r
            };
        }
        if !z.is_finite() {
            return Err(Error::Numerical("backward iteration left the plane".into()));
        }
        if step >= BURN_IN {
            out.push(z);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn fixed_point_and_circle() {
        let p = Params::new(Complex64::new(-2.0, 0.0));
        let r = expansion_report(&p, &[Complex64::new(2.0, 0.0)], 5);
        let e = r.euclidean.unwrap();
        assert_eq!((e.min, e.max), (1024.0, 1024.0));
        assert_eq!(r.spherical.unwrap().min, 1024.0);

        let p = Params::new(Complex64::new(0.0, 0.0));
        let circle: Vec<_> = (0..16).map(|k| Complex64::from_polar(1.0, TAU * k as f64 / 16.0)).collect();
        let r = expansion_report(&p, &circle, 3);
        let e = r.euclidean.unwrap();
        assert!((e.min - 8.0).abs() < 1e-12 && (e.max - 8.0).abs() < 1e-12);
    }

    #[test]
    fn escaping_points_flagged() {
        let p = Params::new(Complex64::new(0.0, 0.0));
        let r = expansion_report(&p, &[Complex64::new(3.0, 0.0), Complex64::new(0.5, 0.0)], 4);
        assert_eq!(r.escaped, vec![0]);
        assert!(r.euclidean.is_some());
        let r = expansion_report(&p, &[Complex64::new(3.0, 0.0)], 4);
        assert!(r.euclidean.is_none());
    }

    #[test]
    fn basilica_small_julia_set_is_invariant() {
        // c = -1: the period-2 small Julia set around 0 is mapped into itself by f^2
        let p = Params::new(Complex64::new(-1.0, 0.0));
        let pts = small_julia_sample(&p, 2, 200, 7).unwrap();
        assert_eq!(pts.len(), 200);
        for z in &pts {
            let (w, _) = p.iterate_with_derivative(*z, 2);
            assert!(w.norm() < 2.0);
            // it stays on the side of the alpha fixed point that contains 0
            assert!(z.re > (1.0 - 5f64.sqrt()) / 2.0 - 1e-9);
        }
        assert_eq!(pts, small_julia_sample(&p, 2, 200, 7).unwrap());
    }
}
