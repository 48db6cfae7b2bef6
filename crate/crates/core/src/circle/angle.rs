use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Fractional part of an exact rational, always in `[0, 1)`.
pub fn frac(r: &BigRational) -> BigRational {
    r - r.floor()
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// A point of the circle R/Z, stored as a reduced fraction in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(BigRational);

impl Angle {
    /// Builds `num/den mod 1`.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(Self::from_ratio(BigRational::new(num.into(), den)))
    }

    pub fn from_ratio(r: BigRational) -> Self {
        Angle(frac(&r))
    }

    pub fn zero() -> Self {
        Angle(BigRational::zero())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        // Ratio::to_f64 handles huge numerators and denominators without overflow.
        self.0.to_f64().unwrap_or(0.0)
    }

    /// The doubling map `t -> 2t mod 1`.
    pub fn double(&self) -> Self {
        self.iterate(1)
    }

    /// `m`-fold doubling. With `t = a / (2^k o)`, `o` odd, the image is
    /// `a 2^(m-k) mod o` over `o` when `m >= k`, else `a mod 2^(k-m) o` over
    /// `2^(k-m) o`; both fractions are already reduced.
    pub fn iterate(&self, m: u64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let (k, odd) = odd_part(self.denom().magnitude());
        let num = self.numer().magnitude();
        let (num, den) = if m >= k {
            let num = (pow2_mod(m - k, &odd) * num) % &odd;
            (num, odd)
        } else {
            let den = odd << (k - m);
            (num % &den, den)
        };
        if num.is_zero() {
            return Angle::zero();
        }
        Angle(BigRational::new_raw(
            BigInt::from_biguint(Sign::Plus, num),
            BigInt::from_biguint(Sign::Plus, den),
        ))
    }

    /// The two preimages under doubling, in increasing order.
    pub fn preimages(&self) -> (Self, Self) {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let lo = &self.0 * &half;
        let hi = &lo + &half;
        (Angle(lo), Angle(hi))
    }

    /// Rotation by an arbitrary rational amount.
    pub fn rotate(&self, delta: &BigRational) -> Self {
        Self::from_ratio(&self.0 + delta)
    }

    /// Counterclockwise distance from `self` to `other`, in `[0, 1)`.
    pub fn ccw_to(&self, other: &Angle) -> BigRational {
        frac(&(&other.0 - &self.0))
    }

    /// Length of the shorter arc between the two points.
    pub fn circle_distance(&self, other: &Angle) -> BigRational {
        let d = self.ccw_to(other);
        let e = BigRational::one() - &d;
        if d <= e {
            d
        } else {
            e
        }
    }

    /// The mirror image `1 - t`.
    pub fn mirror(&self) -> Self {
        Self::from_ratio(-self.0.clone())
    }

    /// The first `n` binary digits of the expansion that does not end in all ones.
    pub fn bits(&self, n: usize) -> Vec<u8> {
        let den = self.denom().magnitude();
        let mut num = self.numer().magnitude().clone();
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            num <<= 1;
            if &num >= den {
                num -= den;
                out.push(1);
            } else {
                out.push(0);
            }
        }
        out
    }

    /// `floor(t * 2^b)`, i.e. the binary truncation of `t` as an integer.
    pub fn truncate_bits(&self, b: u64) -> BigUint {
        let num = self.numer().magnitude() << b;
        num / self.denom().magnitude()
    }

    /// The angle `0.(w)(w)(w)...` with purely periodic binary word `w`.
    pub fn from_periodic_bits(word: &[u8]) -> Result<Self> {
        Self::from_expansion(&[], word)
    }

    /// The angle `0.u(w)(w)...` with preperiodic word `u` and periodic word `w`.
    pub fn from_expansion(prefix: &[u8], word: &[u8]) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::InvalidArgument("empty periodic word".into()));
        }
        let w = bits_to_uint(word);
        let period_den = (BigUint::one() << word.len()) - BigUint::one();
        let u = bits_to_uint(prefix);
        // 0.u(w) = (u * (2^p - 1) + w) / (2^k (2^p - 1))
        let num = u * &period_den + w;
        let den = period_den << prefix.len();
        Ok(Self::from_ratio(BigRational::new(
            BigInt::from_biguint(Sign::Plus, num),
            BigInt::from_biguint(Sign::Plus, den),
        )))
    }

    /// Binary word of length `p` when `t` is fixed by `p`-fold doubling.
    pub fn periodic_word(&self, p: usize) -> Result<Vec<u8>> {
        if p == 0 || self.iterate(p as u64) != *self {
            return Err(Error::InvalidArgument(format!(
                "{self} is not fixed by sigma^{p}"
            )));
        }
        Ok(self.bits(p))
    }
}

fn bits_to_uint(bits: &[u8]) -> BigUint {
    let mut acc = BigUint::zero();
    // Pack 32 bits at a time; long words (2^17 digits) otherwise dominate.
    for chunk in bits.chunks(32) {
        let mut v = 0u32;
        for &b in chunk {
            v = (v << 1) | (b as u32 & 1);
        }
        acc = (acc << chunk.len()) | BigUint::from(v);
    }
    acc
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Angle({self})")
    }
}

impl FromStr for Angle {
    type Err = Error;

    /// Accepts `"p/q"` with `0 <= p/q < 1`.
    fn from_str(s: &str) -> Result<Self> {
        let r = parse_rational(s)?;
        if r.is_negative() || r >= BigRational::one() {
            return Err(Error::Parse(format!("angle {s:?} outside [0, 1)")));
        }
        Ok(Angle(r))
    }
}

impl From<(i64, i64)> for Angle {
    /// Panics on a zero denominator; meant for literals.
    fn from((n, d): (i64, i64)) -> Self {
        Angle::new(n, d).expect("nonzero denominator")
    }
}

/// Shorthand for literal angles in tests and examples.
pub fn ang(n: i64, d: i64) -> Angle {
    Angle::from((n, d))
}

/// Shorthand for literal rationals.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn pow2(m: u64) -> BigRational {
    BigRational::from_integer(BigInt::one() << m)
}

#[allow(dead_code)]
pub(crate) fn is_dyadic(r: &BigRational) -> bool {
    let d = r.denom().magnitude();
    d.is_one() || (d.trailing_zeros() == Some(d.bits() - 1))
}

#[allow(dead_code)]
/// `2^e mod m` by square-and-reduce; `BigUint::modpow` pays a Montgomery
/// setup that dominates for the huge moduli of deep tower levels.
pub(crate) fn pow2_mod(e: u64, m: &BigUint) -> BigUint {
    if e <= m.bits() + 64 {
        return (BigUint::one() << e) % m;
    }
    let mut r = BigUint::one() % m;
    for i in (0..64 - e.leading_zeros()).rev() {
        r = (&r * &r) % m;
        if (e >> i) & 1 == 1 {
            r = (r << 1u32) % m;
        }
    }
    r
}

pub(crate) fn odd_part(n: &BigUint) -> (u64, BigUint) {
    let tz = n.trailing_zeros().unwrap_or(0);
    let odd = n >> tz;
    debug_assert!(odd.is_odd() || odd.is_zero());
    (tz, odd)
}
