//! Recurrence probes: how soon the doubling orbit of a limit angle comes
//! within `2^-B` of given targets.
//!
//! Doubling shifts binary digits, so `sigma^k(source)` to `M` bits is the
//! digit window `k..k+M` of one long source prefix. Windows are compared with
//! `GUARD` extra bits, and a hit is reported only when the distance is
//! certified below `2^-B` after accounting for all truncation errors.

use rayon::prelude::*;
use serde::Serialize;

use crate::circle::{pow2, Angle, LimitAngle};
use crate::error::{Error, Result};

/// Extra bits carried beyond `B`.
pub const GUARD: u64 = 8;

/// Largest accepted horizon.
pub const MAX_HORIZON: u64 = 1 << 24;

#[derive(Debug, Clone)]
pub enum OmegaTarget {
    Exact(Angle),
    Limit(LimitAngle),
}

impl OmegaTarget {
    pub fn name(&self) -> String {
        match self {
            OmegaTarget::Exact(t) => t.to_string(),
            OmegaTarget::Limit(l) => l.name().to_string(),
        }
    }

    /// `floor(target * 2^bits)` up to one unit.
    fn window(&self, bits: u64) -> Result<u128> {
        let k = match self {
            OmegaTarget::Exact(t) => (t.value() * pow2(bits))
                .floor()
                .to_integer()
                .magnitude()
                .clone(),
            OmegaTarget::Limit(l) => l.truncated(bits)?,
        };
        let digits = k.to_u64_digits();
        let lo = *digits.first().unwrap_or(&0) as u128;
        let hi = *digits.get(1).unwrap_or(&0) as u128;
        Ok((lo | (hi << 64)) & mask(bits))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaHit {
    pub target: String,
    /// Smallest `k` in `1..=horizon` with a certified hit.
    pub first_hit: Option<u64>,
}

fn mask(bits: u64) -> u128 {
    if bits >= 128 {
        u128::MAX
    } else {
        (1u128 << bits) - 1
    }
}

/// For each target, the first `k` in `1..=horizon` with
/// `dist(sigma^k(source), target) < 2^-bits`, or `None` when no hit can be
/// certified within the horizon.
pub fn omega_probe(
    source: &LimitAngle,
    targets: &[OmegaTarget],
    horizon: u64,
    bits: u64,
) -> Result<Vec<OmegaHit>> {
    if horizon == 0 || horizon > MAX_HORIZON {
        return Err(Error::InvalidArgument(format!(
            "horizon {horizon} outside 1..={MAX_HORIZON}"
        )));
    }
    if bits < 2 || bits + GUARD > 120 {
        return Err(Error::InvalidArgument(format!("bits {bits} outside 2..={}", 120 - GUARD)));
    }
    let m = bits + GUARD;
    let n = horizon + m;
    let prefix = source.truncated(n)?;
    let digit = |i: u64| prefix.bit(n - 1 - i) as u128;
    let full = mask(m);
    let limit = 1u128 << GUARD;

    let wanted = targets
        .par_iter()
        .map(|t| t.window(m))
        .collect::<Result<Vec<_>>>()?;
    let mut hits: Vec<Option<u64>> = vec![None; targets.len()];

    let mut w = (0..m).fold(0u128, |acc, i| (acc << 1) | digit(i));
    for k in 1..=horizon {
        w = ((w << 1) | digit(k + m - 1)) & full;
        for (i, target) in wanted.iter().enumerate() {
            if hits[i].is_some() {
                continue;
            }
            let d = w.wrapping_sub(*target) & full;
            let dist = d.min((full - d) + 1);
            // source truncation, window truncation and target truncation add up to 3 units
            if dist + 3 < limit {
                hits[i] = Some(k);
            }
        }
        if hits.iter().all(Option::is_some) {
            break;
        }
    }
    Ok(targets
        .iter()
        .zip(hits)
        .map(|(t, first_hit)| OmegaHit {
            target: t.name(),
            first_hit,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::ang;
    use crate::renorm::{shadow_kc, Tower};

    #[test]
    fn periodic_source_never_reaches_zero() {
        let src = LimitAngle::constant(ang(1, 3));
        for bits in [2, 4, 10] {
            let hits = omega_probe(&src, &[OmegaTarget::Exact(Angle::zero())], 1000, bits).unwrap();
            assert_eq!(hits[0].first_hit, None);
        }
        let hits = omega_probe(&src, &[OmegaTarget::Exact(ang(2, 3))], 10, 6).unwrap();
        assert_eq!(hits[0].first_hit, Some(1));
    }

    #[test]
    fn tau_recurs() {
        let t = Tower::feigenbaum(1).unwrap();
        let k = shadow_kc(&t, 1).unwrap();
        let hits = omega_probe(&k.tau1, &[OmegaTarget::Limit(k.tau1.clone())], 64, 4).unwrap();
        assert!(hits[0].first_hit.is_some_and(|k| k >= 1));
    }

    #[test]
    fn argument_checks() {
        let src = LimitAngle::constant(ang(1, 3));
        let t = [OmegaTarget::Exact(Angle::zero())];
        assert!(omega_probe(&src, &t, 0, 4).is_err());
        assert!(omega_probe(&src, &t, 10, 1).is_err());
        assert!(omega_probe(&src, &t, 10, 113).is_err());
        let shallow = LimitAngle::from_arcs("shallow", vec![crate::circle::Arc::full()]);
        assert!(matches!(
            omega_probe(&shallow, &t, 10, 4),
            Err(Error::InsufficientDepth(_))
        ));
    }
}
