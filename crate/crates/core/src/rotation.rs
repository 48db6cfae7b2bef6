//! Rotation sets of the doubling map.
//!
//! A finite set `S` is a rotation set with rotation number `k/|S|` when
//! doubling maps `S` onto itself and advances the cyclic position of every
//! point by the same step `k`. For rational `p/q` the minimal rotation set is
//! the unique period-`q` cycle of that kind; we construct it from the lower
//! mechanical word of slope `p/q` and cross-check by enumeration.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::circle::{Angle, Arc};
use crate::error::{Error, Result};

/// Largest `q` accepted by the enumeration oracle (it walks `2^q - 1` angles).
pub const ORACLE_MAX_PERIOD: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RotationSet {
    /// Points in increasing order.
    pub points: Vec<Angle>,
    #[serde(serialize_with = "crate::circle::serialize_ratio_string")]
    pub rho: BigRational,
}

impl RotationSet {
    /// Mirror image `t -> 1 - t`, which has rotation number `1 - rho`.
    pub fn mirror(&self) -> RotationSet {
        let mut points: Vec<_> = self.points.iter().map(Angle::mirror).collect();
        points.sort();
        let rho = if self.rho.is_zero() {
            self.rho.clone()
        } else {
            BigRational::one() - &self.rho
        };
        RotationSet { points, rho }
    }
}

fn check_nu(nu: &BigRational) -> Result<(u64, u64)> {
    if nu.is_negative() || nu >= &BigRational::one() {
        return Err(Error::InvalidArgument(format!("rotation number {nu} outside [0, 1)")));
    }
    let p = nu.numer().to_u64();
    let q = nu.denom().to_u64();
    match (p, q) {
        (Some(p), Some(q)) if q <= 62 => Ok((p, q)),
        _ => Err(Error::InvalidArgument(format!("denominator of {nu} too large"))),
    }
}

/// Cyclic words `s_k = floor((k+1)p/q) - floor(kp/q)`, `k = 0..q`.
fn mechanical_word(p: u64, q: u64) -> Vec<u8> {
    (0..q)
        .map(|k| ((k + 1) * p / q - k * p / q) as u8)
        .collect()
}

fn orbit(t: &Angle, n: u64) -> Vec<Angle> {
    let mut out = Vec::with_capacity(n as usize);
    let mut u = t.clone();
    for _ in 0..n {
        out.push(u.clone());
        u = u.double();
    }
    out
}

/// The minimal rotation set with rational rotation number `nu = p/q`.
pub fn minimal_rotation_set(nu: &BigRational) -> Result<RotationSet> {
    let (p, q) = check_nu(nu)?;
    let seed = Angle::from_periodic_bits(&mechanical_word(p, q))?;
    let mut points = orbit(&seed, q);
    points.sort();
    points.dedup();
    let got = rotation_number(&points);
    if got.as_ref() != Some(nu) {
        return Err(Error::Numerical(format!(
            "mechanical orbit for {nu} has rotation number {got:?}"
        )));
    }
    Ok(RotationSet {
        points,
        rho: nu.clone(),
    })
}

/// Rotation number of a finite invariant set, or `None` when doubling does not
/// act on it as a cyclic-order-preserving bijection with constant step.
pub fn rotation_number(set: &[Angle]) -> Option<BigRational> {
    let mut pts = set.to_vec();
    pts.sort();
    pts.dedup();
    let n = pts.len();
    if n == 0 {
        return None;
    }
    let index = |t: &Angle| pts.binary_search(t).ok();
    let step = (index(&pts[0].double())? + n) % n;
    for (i, t) in pts.iter().enumerate() {
        let j = index(&t.double())?;
        if j != (i + step) % n {
            return None;
        }
    }
    Some(BigRational::new(BigInt::from(step), BigInt::from(n)))
}

/// Complement of the largest gap between consecutive points, and whether it
/// fits in a closed semicircle. Ties go to the arc with the smallest start.
pub fn minimal_enclosing_arc(set: &[Angle]) -> Result<(Arc, bool)> {
    let mut pts = set.to_vec();
    pts.sort();
    pts.dedup();
    let n = pts.len();
    if n == 0 {
        return Err(Error::InvalidArgument("empty set has no enclosing arc".into()));
    }
    if n == 1 {
        return Ok((Arc::point(pts[0].clone()), true));
    }
    let mut best: Option<(BigRational, usize)> = None;
    for i in 0..n {
        let next = (i + 1) % n;
        let gap = pts[i].ccw_to(&pts[next]);
        let better = match &best {
            None => true,
            Some((g, j)) => gap > *g || (gap == *g && pts[next] < pts[(j + 1) % n]),
        };
        if better {
            best = Some((gap, i));
        }
    }
    let (_, i) = best.expect("n >= 2");
    let arc = Arc::between(&pts[(i + 1) % n], &pts[i]);
    let fits = arc.len() <= &BigRational::new(1.into(), 2.into());
    Ok((arc, fits))
}

/// Enumeration oracle: every cycle of exact period `q` among the angles
/// `k/(2^q - 1)` on which doubling acts with rotation number `p/q`.
pub fn oracle_rotation_orbits(nu: &BigRational) -> Result<Vec<Vec<Angle>>> {
    let (_, q) = check_nu(nu)?;
    if q > ORACLE_MAX_PERIOD as u64 {
        return Err(Error::InvalidArgument(format!("oracle limited to q <= {ORACLE_MAX_PERIOD}")));
    }
    let m = (1u64 << q) - 1;
    let mut seen = vec![false; m as usize];
    let mut found = Vec::new();
    for k in 0..m {
        if seen[k as usize] {
            continue;
        }
        // walk the cycle of k under k -> 2k mod m
        let mut cyc = vec![k];
        let mut j = (2 * k) % m;
        while j != k {
            cyc.push(j);
            j = (2 * j) % m;
        }
        for &c in &cyc {
            seen[c as usize] = true;
        }
        if cyc.len() as u64 != q {
            continue;
        }
        let pts: Vec<Angle> = cyc
            .iter()
            .map(|&c| Angle::new(c as i64, m as i64).expect("m > 0"))
            .collect();
        if rotation_number(&pts).as_ref() == Some(nu) {
            let mut pts = pts;
            pts.sort();
            found.push(pts);
        }
    }
    Ok(found)
}

/// Continued-fraction convergents of a rational in `[0, 1)`.
pub fn convergents(x: &BigRational) -> Vec<BigRational> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = x.clone();
    loop {
        let a = r.floor().to_integer();
        let h = &a * &h1 + &h0;
        let k = &a * &k1 + &k0;
        out.push(BigRational::new(h.clone(), k.clone()));
        (h0, h1) = (h1, h);
        (k0, k1) = (k1, k);
        let f = &r - BigRational::from_integer(a);
        if f.is_zero() {
            break;
        }
        r = f.recip();
    }
    out
}

/// Reduced fractions `p/q` with `q <= max_q`, in increasing order of `q` then `p`.
pub fn rotation_numbers_up_to(max_q: u64) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero()];
    for q in 2..=max_q {
        for p in 1..q {
            if p.gcd(&q) == 1 {
                out.push(BigRational::new(BigInt::from(p), BigInt::from(q)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::{ang, rat};

    #[test]
    fn small_rotation_sets() {
        assert_eq!(minimal_rotation_set(&rat(0, 1)).unwrap().points, vec![Angle::zero()]);
        assert_eq!(
            minimal_rotation_set(&rat(1, 2)).unwrap().points,
            vec![ang(1, 3), ang(2, 3)]
        );
        assert_eq!(
            minimal_rotation_set(&rat(1, 3)).unwrap().points,
            vec![ang(1, 7), ang(2, 7), ang(4, 7)]
        );
        assert!(minimal_rotation_set(&rat(3, 2)).is_err());
        assert!(minimal_rotation_set(&rat(-1, 2)).is_err());
    }

    #[test]
    fn rotation_number_examples() {
        assert_eq!(rotation_number(&[ang(1, 3), ang(2, 3)]), Some(rat(1, 2)));
        assert_eq!(rotation_number(&[ang(3, 7), ang(5, 7), ang(6, 7)]), Some(rat(2, 3)));
        assert_eq!(rotation_number(&[ang(1, 7), ang(2, 7), ang(3, 7)]), None);
        assert_eq!(rotation_number(&[Angle::zero()]), Some(rat(0, 1)));
        assert_eq!(rotation_number(&[]), None);
    }

    #[test]
    fn enclosing_arc_examples() {
        let (a, fits) = minimal_enclosing_arc(&[ang(1, 3), ang(2, 3)]).unwrap();
        assert_eq!(a, Arc::between(&ang(1, 3), &ang(2, 3)));
        assert!(fits);
        let (a, fits) = minimal_enclosing_arc(&[ang(1, 7), ang(2, 7), ang(4, 7)]).unwrap();
        assert_eq!(a, Arc::between(&ang(1, 7), &ang(4, 7)));
        assert_eq!(a.len(), &rat(3, 7));
        assert!(fits);
        let (a, fits) = minimal_enclosing_arc(&[Angle::zero()]).unwrap();
        assert!(a.is_point() && fits);
        assert!(minimal_enclosing_arc(&[]).is_err());
    }

    #[test]
    fn enclosing_arc_tie_break() {
        // two equal gaps of 1/2: arcs [0,1/2] and [1/2,0]; smallest start wins
        let (a, fits) = minimal_enclosing_arc(&[Angle::zero(), ang(1, 2)]).unwrap();
        assert_eq!(a.start(), &Angle::zero());
        assert!(fits);
    }

    #[test]
    fn mirror_symmetry_small_q() {
        for nu in rotation_numbers_up_to(9) {
            if nu.is_zero() {
                continue;
            }
            let a = minimal_rotation_set(&nu).unwrap();
            let b = minimal_rotation_set(&(BigRational::one() - &nu)).unwrap();
            assert_eq!(a.mirror(), b);
        }
    }

    #[test]
    fn convergents_of_golden_approximant() {
        let c = convergents(&rat(8, 13));
        assert_eq!(c.last().unwrap(), &rat(8, 13));
        assert_eq!(c[1], rat(1, 1));
        assert_eq!(c[2], rat(1, 2));
    }
}
