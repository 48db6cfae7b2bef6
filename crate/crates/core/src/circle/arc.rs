use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::angle::{frac, pow2, Angle};
use crate::error::{Error, Result};

/// Closed arc traversed counterclockwise from `start` over `len`.
///
/// `len` lies in `[0, 1]`; a zero length is a single point and length one is
/// the full circle, always stored with `start = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Arc {
    start: Angle,
    len: BigRational,
}

impl Arc {
    pub fn new(start: Angle, len: BigRational) -> Result<Self> {
        if len.is_negative() || len > BigRational::one() {
            return Err(Error::InvalidArgument(format!(
                "arc length {len} outside [0, 1]"
            )));
        }
        if len.is_one() {
            return Ok(Self::full());
        }
        Ok(Arc { start, len })
    }

    /// Counterclockwise arc from `a` to `b`; `a == b` gives a point.
    pub fn between(a: &Angle, b: &Angle) -> Self {
        Arc {
            start: a.clone(),
            len: a.ccw_to(b),
        }
    }

    pub fn point(t: Angle) -> Self {
        Arc {
            start: t,
            len: BigRational::zero(),
        }
    }

    pub fn full() -> Self {
        Arc {
            start: Angle::zero(),
            len: BigRational::one(),
        }
    }

    pub fn start(&self) -> &Angle {
        &self.start
    }

    pub fn len(&self) -> &BigRational {
        &self.len
    }

    pub fn end(&self) -> Angle {
        self.start.rotate(&self.len)
    }

    pub fn is_full(&self) -> bool {
        self.len.is_one()
    }

    pub fn is_point(&self) -> bool {
        self.len.is_zero()
    }

    pub fn contains(&self, t: &Angle) -> bool {
        self.is_full() || self.start.ccw_to(t) <= self.len
    }

    /// True when `t` lies in the arc minus its endpoints.
    pub fn contains_interior(&self, t: &Angle) -> bool {
        if self.is_full() {
            return true;
        }
        let d = self.start.ccw_to(t);
        d.is_positive() && d < self.len
    }

    pub fn contains_arc(&self, other: &Arc) -> bool {
        if self.is_full() {
            return true;
        }
        if other.is_full() {
            return false;
        }
        // off + other.len <= self.len, cross-multiplied to skip gcd reductions
        let (sn, sd) = (self.start.numer(), self.start.denom());
        let (on, od) = (other.start.numer(), other.start.denom());
        let den = sd * od;
        let mut off = on * sd - sn * od;
        if off.is_negative() {
            off += &den;
        }
        let (ln, ld) = (other.len.numer(), other.len.denom());
        let (mn, md) = (self.len.numer(), self.len.denom());
        (off * ld + ln * &den) * md <= mn * den * ld
    }

    /// Image under doubling; only defined when the image is again an arc.
    pub fn double(&self) -> Result<Self> {
        if self.len >= BigRational::new(1.into(), 2.into()) {
            return Err(Error::ComponentTooLong(self.len.to_string()));
        }
        Ok(Arc {
            start: self.start.double(),
            len: &self.len * BigRational::from_integer(2.into()),
        })
    }

    /// Image under `sigma^m` when `2^m len < 1`.
    pub fn iterate(&self, m: u64) -> Result<Self> {
        let len = &self.len * pow2(m);
        if len >= BigRational::one() {
            return Err(Error::ComponentTooLong(self.len.to_string()));
        }
        Ok(Arc {
            start: self.start.iterate(m),
            len,
        })
    }

    /// Pieces of the arc as subintervals of `[0, 1]`, cut at 0.
    pub(crate) fn pieces(&self) -> Vec<(BigRational, BigRational)> {
        if self.is_full() {
            return vec![(BigRational::zero(), BigRational::one())];
        }
        let s = self.start.value().clone();
        let e = &s + &self.len;
        if e == BigRational::one() {
            // the endpoint 1 is also the point 0
            vec![(BigRational::zero(), BigRational::zero()), (s, e)]
        } else if e < BigRational::one() {
            vec![(s, e)]
        } else {
            vec![(BigRational::zero(), frac(&e)), (s, BigRational::one())]
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_full() {
            write!(f, "S^1")
        } else {
            write!(f, "[{}, {}]", self.start, self.end())
        }
    }
}

impl fmt::Debug for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Arc{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::angle::{ang, rat};

    #[test]
    fn closed_membership() {
        let a = Arc::between(&ang(1, 3), &ang(5, 12));
        assert!(a.contains(&ang(1, 3)));
        assert!(a.contains(&ang(5, 12)));
        assert!(a.contains(&ang(2, 5)));
        assert!(!a.contains(&ang(1, 2)));
        assert!(!a.contains_interior(&ang(1, 3)));
    }

    #[test]
    fn wrapping_arc() {
        let a = Arc::between(&ang(5, 6), &ang(1, 6));
        assert_eq!(a.len(), &rat(1, 3));
        assert!(a.contains(&Angle::zero()));
        assert!(!a.contains(&ang(1, 2)));
        assert_eq!(a.pieces().len(), 2);
    }

    #[test]
    fn doubling() {
        let a = Arc::between(&ang(1, 3), &ang(5, 12));
        assert_eq!(a.double().unwrap(), Arc::between(&ang(2, 3), &ang(5, 6)));
        let long = Arc::new(ang(0, 1), rat(1, 2)).unwrap();
        assert!(matches!(long.double(), Err(Error::ComponentTooLong(_))));
    }

    #[test]
    fn full_is_canonical() {
        let a = Arc::new(ang(1, 3), rat(1, 1)).unwrap();
        assert_eq!(a, Arc::full());
        assert!(Arc::new(ang(1, 3), rat(3, 2)).is_err());
    }
}
