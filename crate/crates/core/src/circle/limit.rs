use std::fmt;
use std::sync::Arc as Shared;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::One;

use super::angle::{pow2, Angle};
use super::arc::Arc;
use crate::error::{Error, Result};

type Refiner = dyn Fn(usize) -> Result<Arc> + Send + Sync;

/// An angle given by nested closed arcs whose lengths shrink to zero.
///
/// The refiner is queried at depths `0..max_depth`; asking for more precision
/// than the budget allows is an error, never a silent truncation.
#[derive(Clone)]
pub struct LimitAngle {
    refiner: Shared<Refiner>,
    max_depth: usize,
    name: String,
}

impl LimitAngle {
    pub fn new(
        name: impl Into<String>,
        max_depth: usize,
        refiner: impl Fn(usize) -> Result<Arc> + Send + Sync + 'static,
    ) -> Self {
        LimitAngle {
            refiner: Shared::new(refiner),
            max_depth,
            name: name.into(),
        }
    }

    /// The rational angle `t` seen as a limit of degenerate arcs.
    pub fn constant(t: Angle) -> Self {
        let name = t.to_string();
        Self::new(name, 1, move |_| Ok(Arc::point(t.clone())))
    }

    pub fn from_arcs(name: impl Into<String>, arcs: Vec<Arc>) -> Self {
        let n = arcs.len();
        Self::new(name, n, move |m| {
            arcs.get(m)
                .cloned()
                .ok_or_else(|| Error::InsufficientDepth(format!("depth {m} beyond {n}")))
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    pub fn arc_at(&self, depth: usize) -> Result<Arc> {
        if depth >= self.max_depth {
            return Err(Error::InsufficientDepth(format!(
                "{}: depth {depth} exceeds budget {}",
                self.name, self.max_depth
            )));
        }
        (self.refiner)(depth)
    }

    /// A dyadic angle `k / 2^bits` within `2^-bits` of the limit.
    ///
    /// When some arc sits inside one dyadic cell the result is the binary
    /// truncation of the limit; otherwise the dyadic point inside an arc of
    /// length at most `2^-(bits+3)` is returned.
    pub fn refine(&self, bits: u64) -> Result<Angle> {
        if bits == 0 {
            return Err(Error::InvalidArgument("refine needs at least one bit".into()));
        }
        let scale = pow2(bits);
        let straddle_len = BigRational::one() / pow2(bits + 3);
        let mut prev: Option<Arc> = None;
        for depth in 0..self.max_depth {
            let arc = (self.refiner)(depth)?;
            if let Some(p) = &prev {
                if !p.contains_arc(&arc) {
                    return Err(Error::InvalidArgument(format!(
                        "{}: arc at depth {depth} not nested in its parent",
                        self.name
                    )));
                }
            }
            let (lo, hi) = scaled_floors(&arc, bits);
            if lo == hi {
                return Ok(Angle::from_ratio(BigRational::from_integer(lo) / &scale));
            }
            if arc.len() <= &straddle_len {
                return Ok(Angle::from_ratio(BigRational::from_integer(hi) / &scale));
            }
            prev = Some(arc);
        }
        Err(Error::InsufficientDepth(format!(
            "{}: no arc shorter than 2^-{bits} within {} levels",
            self.name, self.max_depth
        )))
    }

    /// The integer `k` with `refine(bits) = k / 2^bits`.
    pub fn truncated(&self, bits: u64) -> Result<BigUint> {
        let a = self.refine(bits)?;
        let k = a.value() * pow2(bits);
        Ok(k.to_integer().magnitude().clone())
    }

    /// Binary digits of `refine(n)`.
    pub fn bits(&self, n: usize) -> Result<Vec<u8>> {
        Ok(self.refine(n as u64)?.bits(n))
    }

    /// The preimage branch `t/2 + branch/2` of the limit.
    pub fn preimage(&self, branch: u8) -> Self {
        let inner = self.refiner.clone();
        let shift = BigRational::new(BigInt::from(branch & 1), BigInt::from(2));
        let name = format!("{}/2+{}", self.name, shift);
        Self::new(name, self.max_depth, move |m| {
            let a = inner(m)?;
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            let start = a.start().value() * &half + &shift;
            Arc::new(Angle::from_ratio(start), a.len() * half)
        })
    }

    /// The limit of the mirrored arcs, `1 - limit`.
    pub fn mirror(&self) -> Self {
        let inner = self.refiner.clone();
        let name = format!("1-{}", self.name);
        Self::new(name, self.max_depth, move |m| {
            let a = inner(m)?;
            Arc::new(a.end().mirror(), a.len().clone())
        })
    }
}

impl fmt::Debug for LimitAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LimitAngle({}, depth<={})", self.name, self.max_depth)
    }
}

/// `floor(2^bits x)` for both ends `x` of the lifted arc, on integers only
/// (rational arithmetic would reduce huge fractions by gcd at every step).
fn scaled_floors(arc: &Arc, bits: u64) -> (BigInt, BigInt) {
    let (sn, sd) = (arc.start().numer(), arc.start().denom());
    let (ln, ld) = (arc.len().numer(), arc.len().denom());
    let lo = (sn << bits).div_floor(sd);
    let hi = ((sn * ld + ln * sd) << bits).div_floor(&(sd * ld));
    (lo, hi)
}

/// The dyadic `k / 2^bits` as an angle.
pub fn dyadic(k: &BigUint, bits: u64) -> Angle {
    Angle::from_ratio(BigRational::from_integer(BigInt::from_biguint(Sign::Plus, k.clone())) / pow2(bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::angle::{ang, rat};

    #[test]
    fn constant_limit_truncates() {
        let l = LimitAngle::constant(ang(1, 3));
        assert_eq!(l.refine(4).unwrap(), ang(5, 16));
    }

    #[test]
    fn zero_bits_rejected() {
        let l = LimitAngle::constant(ang(1, 3));
        assert!(l.refine(0).is_err());
    }

    // Arcs [1/2 - 2^-m, 1/2 + 2^-m] straddle the dyadic 1/2 forever.
    fn straddling(depth: usize) -> LimitAngle {
        LimitAngle::new("half", depth, |m| {
            let w = BigRational::one() / pow2(m as u64 + 2);
            Arc::new(Angle::from_ratio(rat(1, 2) - &w), w * rat(2, 1))
        })
    }

    #[test]
    fn straddled_dyadic_is_returned() {
        let l = straddling(40);
        assert_eq!(l.refine(8).unwrap(), ang(1, 2));
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let l = straddling(5);
        assert!(matches!(l.refine(20), Err(Error::InsufficientDepth(_))));
    }

    #[test]
    fn non_nested_refiner_rejected() {
        let l = LimitAngle::from_arcs(
            "bad",
            vec![
                Arc::between(&ang(0, 1), &ang(1, 4)),
                Arc::between(&ang(1, 2), &ang(5, 8)),
            ],
        );
        assert!(l.refine(6).is_err());
    }

    #[test]
    fn preimage_and_mirror() {
        let l = LimitAngle::constant(ang(1, 3));
        let trunc = |t: Angle| dyadic(&t.truncate_bits(10), 10);
        assert_eq!(l.preimage(0).refine(10).unwrap(), trunc(ang(1, 6)));
        assert_eq!(l.preimage(1).refine(10).unwrap(), trunc(ang(2, 3)));
        assert_eq!(l.mirror().refine(10).unwrap(), trunc(ang(2, 3)));
    }
}
