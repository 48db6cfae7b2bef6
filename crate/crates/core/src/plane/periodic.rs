use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{serialize_complex, serialize_complex_opt, trace_ray, Params};
use crate::error::{Error, Result};
use crate::renorm::Tower;

pub const MAX_PERIOD: usize = 12;
const ABERTH_ROUNDS: usize = 2000;

#[derive(Debug, Clone, Serialize)]
pub struct PeriodicPoint {
    #[serde(serialize_with = "serialize_complex")]
    pub z: Complex64,
    /// `(f^m)'(z)`
    #[serde(serialize_with = "serialize_complex")]
    pub multiplier: Complex64,
    /// `|f^m(z) - z|`
    pub residual: f64,
    pub converged: bool,
}

/// Newton correction `P/P'` for `P(z) = f^m(z) - z`, rescaled once the orbit
/// is so large that `P` is `z_k^(2^(m-k))` to double precision.
fn newton_ratio(params: &Params, z: Complex64, m: usize) -> Complex64 {
    let mut w = z;
    let mut d = Complex64::new(1.0, 0.0);
    for k in 0..m {
        if w.norm() > 1e100 {
            return w / (d * 2f64.powi((m - k) as i32));
        }
        d *= 2.0 * w;
        w = params.f(w);
    }
    (w - z) / (d - 1.0)
}

/// All `2^m` solutions of `f^m(z) = z` by simultaneous Aberth iteration,
/// sorted by real then imaginary part.
pub fn periodic_points(params: &Params, m: usize) -> Result<Vec<PeriodicPoint>> {
    if m == 0 || m > MAX_PERIOD {
        return Err(Error::InvalidArgument(format!("period {m} outside 1..={MAX_PERIOD}")));
    }
    let n = 1usize << m;
    // the filled Julia set lies inside this radius
    let radius = 0.5 + (0.25 + params.c.norm()).sqrt() + 0.1;
    let mut roots: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, TAU * (k as f64 + 0.25) / n as f64))
        .collect();
    let mut done = vec![false; n];
    for _ in 0..ABERTH_ROUNDS {
        let updates: Vec<(Complex64, bool)> = (0..n)
            .into_par_iter()
            .map(|i| {
                if done[i] {
                    return (roots[i], true);
                }
                let z = roots[i];
                let ratio = newton_ratio(params, z, m);
                let repulsion: Complex64 = roots
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &r)| 1.0 / (z - r))
                    .sum();
                let step = ratio / (1.0 - ratio * repulsion);
                let next = z - step;
                (next, step.norm() <= 1e-14 * (1.0 + next.norm()))
            })
            .collect();
        for (i, (z, fin)) in updates.into_iter().enumerate() {
            roots[i] = z;
            done[i] = fin;
        }
        if done.iter().all(|&d| d) {
            break;
        }
    }
    let mut out: Vec<PeriodicPoint> = roots
        .into_iter()
        .zip(done)
        .map(|(z, converged)| {
            let z = polish(params, z, m);
            let (fz, d) = params.iterate_with_derivative(z, m);
            PeriodicPoint {
                z,
                multiplier: d,
                residual: (fz - z).norm(),
                converged,
            }
        })
        .collect();
    out.sort_by(|a, b| a.z.re.total_cmp(&b.z.re).then(a.z.im.total_cmp(&b.z.im)));
    Ok(out)
}

/// A few plain Newton steps on `f^m(z) = z`, kept only if they reduce the residual.
fn polish(params: &Params, z: Complex64, m: usize) -> Complex64 {
    let res = |z: Complex64| (params.iterate_with_derivative(z, m).0 - z).norm();
    let mut best = z;
    let mut z = z;
    for _ in 0..3 {
        let step = newton_ratio(params, z, m);
        if !step.is_finite() {
            break;
        }
        z -= step;
        if res(z) < res(best) {
            best = z;
        }
    }
    best
}

#[derive(Debug, Clone, Serialize)]
pub struct BetaPoint {
    #[serde(serialize_with = "serialize_complex_opt")]
    pub beta: Option<Complex64>,
    pub matched: bool,
    /// `|f^p(beta) - beta|`
    pub residual: f64,
    /// Landing points of the lower and upper ray.
    #[serde(serialize_with = "serialize_complex_opt")]
    pub lo_landing: Option<Complex64>,
    #[serde(serialize_with = "serialize_complex_opt")]
    pub hi_landing: Option<Complex64>,
}

/// Lands both rays of level `n` and checks that they meet at one point of
/// period dividing `p_n`.
pub fn beta_point(params: &Params, tower: &Tower, n: usize, level_min: f64, tol: f64) -> Result<BetaPoint> {
    let pair = tower.level(n)?;
    let land = |t| -> Result<Option<Complex64>> {
        Ok(trace_ray(params, t, level_min)?.landing.map(|l| l.point))
    };
    let lo = land(&pair.lo)?;
    let hi = land(&pair.hi)?;
    let p = usize::try_from(pair.period).map_err(|_| Error::InvalidArgument("period too large".into()))?;
    let residual_at = |z: Complex64| (params.iterate_with_derivative(z, p).0 - z).norm();
    let (beta, matched) = match (lo, hi) {
        (Some(a), Some(b)) => {
            let mid = (a + b) / 2.0;
            let matched = (a - b).norm() < tol && residual_at(mid) < tol;
            (Some(mid), matched)
        }
        (Some(a), None) | (None, Some(a)) => (Some(a), false),
        (None, None) => (None, false),
    };
    Ok(BetaPoint {
        residual: beta.map(residual_at).unwrap_or(f64::INFINITY),
        beta,
        matched,
        lo_landing: lo,
        hi_landing: hi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::ang;
    use crate::renorm::RayPair;

    fn near(pts: &[PeriodicPoint], z: Complex64, tol: f64) -> Option<&PeriodicPoint> {
        pts.iter().find(|p| (p.z - z).norm() < tol)
    }

    #[test]
    fn fixed_points() {
        let p = Params::new(Complex64::new(0.0, 0.0));
        let pts = periodic_points(&p, 1).unwrap();
        assert_eq!(pts.len(), 2);
        assert!(near(&pts, Complex64::new(0.0, 0.0), 1e-12).unwrap().multiplier.norm() < 1e-12);
        assert!((near(&pts, Complex64::new(1.0, 0.0), 1e-12).unwrap().multiplier.re - 2.0).abs() < 1e-12);

        let p = Params::new(Complex64::new(-1.0, 0.0));
        let pts = periodic_points(&p, 1).unwrap();
        let s5 = 5f64.sqrt();
        for (z, mult) in [((1.0 + s5) / 2.0, 1.0 + s5), ((1.0 - s5) / 2.0, 1.0 - s5)] {
            let q = near(&pts, Complex64::new(z, 0.0), 1e-12).unwrap();
            assert!((q.multiplier.re - mult).abs() < 1e-10);
        }
        let pts = periodic_points(&p, 2).unwrap();
        assert_eq!(pts.len(), 4);
        for z in [0.0, -1.0] {
            let q = near(&pts, Complex64::new(z, 0.0), 1e-10).unwrap();
            assert!(q.multiplier.norm() < 1e-8);
        }
    }

    #[test]
    fn divisors_and_counts() {
        let p = Params::new(Complex64::new(-0.12, 0.75));
        let p1 = periodic_points(&p, 1).unwrap();
        let p6 = periodic_points(&p, 6).unwrap();
        assert_eq!(p6.len(), 64);
        assert!(p6.iter().all(|q| q.converged && q.residual < 1e-8));
        for q in &p1 {
            assert!(near(&p6, q.z, 1e-8).is_some());
        }
        // distinct roots
        for (i, a) in p6.iter().enumerate() {
            for b in &p6[i + 1..] {
                assert!((a.z - b.z).norm() > 1e-6);
            }
        }
        assert!(periodic_points(&p, 13).is_err());
    }

    #[test]
    fn basilica_beta() {
        let p = Params::new(Complex64::new(-1.0, 0.0));
        let t = Tower::feigenbaum(1).unwrap();
        let b = beta_point(&p, &t, 1, 1e-8, 1e-6).unwrap();
        assert!(b.matched);
        assert!((b.beta.unwrap().re - (1.0 - 5f64.sqrt()) / 2.0).abs() < 1e-6);

        let p0 = Params::new(Complex64::new(0.0, 0.0));
        let b = beta_point(&p0, &t, 1, 1e-8, 1e-6).unwrap();
        assert!(!b.matched);
        let fake = Tower::explicit(vec![RayPair::new(3, ang(1, 7), ang(2, 7)).unwrap()]);
        assert!(!beta_point(&p0, &fake, 1, 1e-8, 1e-6).unwrap().matched);
    }
}
