use std::fmt;
use std::sync::{Arc as Shared, Mutex};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::circle::{Angle, Arc};
use crate::error::{Error, Result};

/// Longest period the tuning generator will produce on demand (binary words
/// of this many digits back every angle of the level).
pub const MAX_GENERATED_PERIOD: u64 = 1 << 18;

/// Two periodic angles `0 < lo < hi < 1` of common period whose rays bound
/// the characteristic sector of one renormalization level.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RayPair {
    pub period: u64,
    pub lo: Angle,
    pub hi: Angle,
}

impl RayPair {
    /// Checks ordering and `sigma^p`-periodicity of both angles.
    pub fn new(period: u64, lo: Angle, hi: Angle) -> Result<Self> {
        let pair = RayPair { period, lo, hi };
        pair.check()?;
        Ok(pair)
    }

    /// No checks; `validate` reports on towers built this way.
    pub fn unchecked(period: u64, lo: Angle, hi: Angle) -> Self {
        RayPair { period, lo, hi }
    }

    pub fn check(&self) -> Result<()> {
        if self.period == 0 {
            return Err(Error::InvalidPair("period must be positive".into()));
        }
        if self.lo.is_zero() || self.lo >= self.hi {
            return Err(Error::InvalidPair(format!(
                "need 0 < lo < hi < 1, got {} and {}",
                self.lo, self.hi
            )));
        }
        for t in [&self.lo, &self.hi] {
            if t.iterate(self.period) != *t {
                return Err(Error::InvalidPair(format!(
                    "{t} is not fixed by sigma^{}",
                    self.period
                )));
            }
        }
        Ok(())
    }

    /// `hi - lo`, the length of the characteristic arc.
    pub fn width(&self) -> BigRational {
        self.hi.value() - self.lo.value()
    }

    /// The arc `[lo, hi]` of angles whose rays enter the sector.
    pub fn characteristic_arc(&self) -> Arc {
        Arc::between(&self.lo, &self.hi)
    }

    /// Binary words of length `period` of both angles.
    pub fn words(&self) -> Result<(Vec<u8>, Vec<u8>)> {
        let p = self.period as usize;
        Ok((self.lo.periodic_word(p)?, self.hi.periodic_word(p)?))
    }

    pub fn parse(period: u64, lo: &str, hi: &str) -> Result<Self> {
        Self::new(period, lo.parse()?, hi.parse()?)
    }
}

impl fmt::Display for RayPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.period, self.lo, self.hi)
    }
}

impl fmt::Debug for RayPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RayPair{self}")
    }
}

/// True when `t` has exact period `p` under doubling.
pub fn has_exact_period(t: &Angle, p: u64) -> bool {
    if p == 0 || t.iterate(p) != *t {
        return false;
    }
    prime_divisors(p).into_iter().all(|q| t.iterate(p / q) != *t)
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn substitute(word: &[u8], w0: &[u8], w1: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(word.len() * w0.len());
    for &b in word {
        out.extend_from_slice(if b == 0 { w0 } else { w1 });
    }
    out
}

fn expansion(t: &Angle) -> (Vec<u8>, Vec<u8>) {
    let info = t.orbit_info();
    let pre = info.preperiod as usize;
    let digits = t.bits(pre + info.period as usize);
    (digits[..pre].to_vec(), digits[pre..].to_vec())
}

/// Douady tuning: replace every binary digit 0 of `t` by the word of
/// `base.lo` and every 1 by the word of `base.hi`.
pub fn tune(base: &RayPair, t: &Angle) -> Result<Angle> {
    let (w0, w1) = base.words()?;
    if w0 == w1 {
        return Err(Error::DegeneratePair(format!("{base} has equal words")));
    }
    for a in [&base.lo, &base.hi] {
        if !has_exact_period(a, base.period) {
            return Err(Error::InvalidArgument(format!(
                "{a} does not have exact period {}",
                base.period
            )));
        }
    }
    let (prefix, cycle) = expansion(t);
    Angle::from_expansion(&substitute(&prefix, &w0, &w1), &substitute(&cycle, &w0, &w1))
}

/// Generates deeper levels by iterated tuning with a base pair.
struct Generator {
    base: RayPair,
    base_words: (Vec<u8>, Vec<u8>),
    // (lo word, hi word) per level, level 1 first
    words: Mutex<Vec<(Vec<u8>, Vec<u8>)>>,
}

impl Generator {
    fn new(base: RayPair) -> Result<Self> {
        base.check()?;
        let (w0, w1) = base.words()?;
        if w0 == w1 {
            return Err(Error::DegeneratePair(format!("{base} has equal words")));
        }
        Ok(Generator {
            base,
            base_words: (w0.clone(), w1.clone()),
            words: Mutex::new(vec![(w0, w1)]),
        })
    }

    fn period(&self, level: usize) -> Option<u64> {
        let mut p = 1u64;
        for _ in 0..level {
            p = p.checked_mul(self.base.period)?;
        }
        Some(p)
    }

    fn max_level(&self) -> usize {
        (1..)
            .take_while(|&n| self.period(n).is_some_and(|p| p <= MAX_GENERATED_PERIOD))
            .last()
            .unwrap_or(1)
    }

    fn pair(&self, level: usize) -> Result<RayPair> {
        if level == 0 || level > self.max_level() {
            return Err(Error::InsufficientDepth(format!(
                "generated levels are 1..={}",
                self.max_level()
            )));
        }
        let mut words = self.words.lock().expect("generator cache poisoned");
        while words.len() < level {
            let (lo, hi) = words.last().expect("level 1 present");
            let (b0, b1) = &self.base_words;
            let next = (substitute(lo, b0, b1), substitute(hi, b0, b1));
            words.push(next);
        }
        let (lo, hi) = &words[level - 1];
        Ok(RayPair {
            period: lo.len() as u64,
            lo: Angle::from_periodic_bits(lo)?,
            hi: Angle::from_periodic_bits(hi)?,
        })
    }
}

/// A tower of ray pairs with periods `p_1 < p_2 < ...`, one per
/// renormalization level. Levels are numbered from 1.
#[derive(Clone)]
pub struct Tower {
    levels: Vec<RayPair>,
    generator: Option<Shared<Generator>>,
    name: String,
}

impl Tower {
    /// Explicit list of pairs; nothing is checked until `validate`.
    pub fn explicit(levels: Vec<RayPair>) -> Self {
        Tower {
            levels,
            generator: None,
            name: "explicit".into(),
        }
    }

    /// Levels obtained by tuning `base` by itself `depth - 1` times.
    pub fn tuned(base: RayPair, depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidArgument("depth must be at least 1".into()));
        }
        let name = format!("tune{base}");
        let generator = Generator::new(base)?;
        let levels = (1..=depth).map(|n| generator.pair(n)).collect::<Result<Vec<_>>>()?;
        Ok(Tower {
            levels,
            generator: Some(Shared::new(generator)),
            name,
        })
    }

    /// Period-doubling tower generated by `(2, 1/3, 2/3)`.
    pub fn feigenbaum(depth: usize) -> Result<Self> {
        let mut t = Self::tuned(RayPair::new(2, Angle::from((1, 3)), Angle::from((2, 3)))?, depth)?;
        t.name = "feigenbaum".into();
        Ok(t)
    }

    /// Tower generated by the rabbit pair `(3, 1/7, 2/7)`.
    pub fn rabbit(depth: usize) -> Result<Self> {
        let mut t = Self::tuned(RayPair::new(3, Angle::from((1, 7)), Angle::from((2, 7)))?, depth)?;
        t.name = "rabbit".into();
        Ok(t)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[RayPair] {
        &self.levels
    }

    /// Level `n` (1-based) of the stored tower.
    pub fn level(&self, n: usize) -> Result<&RayPair> {
        if n == 0 || n > self.levels.len() {
            return Err(Error::InvalidArgument(format!(
                "level {n} outside 1..={}",
                self.levels.len()
            )));
        }
        Ok(&self.levels[n - 1])
    }

    /// Level `n`, generated on demand past the stored depth when possible.
    pub fn level_or_generate(&self, n: usize) -> Result<RayPair> {
        if n >= 1 && n <= self.levels.len() {
            return Ok(self.levels[n - 1].clone());
        }
        match &self.generator {
            Some(g) => g.pair(n),
            None => Err(Error::InsufficientDepth(format!(
                "explicit tower has {} levels, level {n} requested",
                self.levels.len()
            ))),
        }
    }

    /// Number of levels reachable through `level_or_generate`.
    pub fn reachable_depth(&self) -> usize {
        match &self.generator {
            Some(g) => g.max_level().max(self.levels.len()),
            None => self.levels.len(),
        }
    }

    pub fn truncated(&self, depth: usize) -> Result<Self> {
        if depth == 0 || depth > self.levels.len() {
            return Err(Error::InvalidArgument(format!("cannot truncate to depth {depth}")));
        }
        let mut t = self.clone();
        t.levels.truncate(depth);
        Ok(t)
    }
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tower")
            .field("name", &self.name)
            .field("levels", &self.levels)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::ang;

    fn basilica() -> RayPair {
        RayPair::new(2, ang(1, 3), ang(2, 3)).unwrap()
    }

    #[test]
    fn tuning_examples() {
        let b = basilica();
        assert_eq!(tune(&b, &ang(1, 3)).unwrap(), ang(2, 5));
        assert_eq!(tune(&b, &ang(2, 3)).unwrap(), ang(3, 5));
        assert_eq!(tune(&b, &Angle::zero()).unwrap(), ang(1, 3));
        // preperiodic input: 1/4 = 0.01(0) -> 0.(01)(10)(01)...
        assert_eq!(
            tune(&b, &ang(1, 4)).unwrap(),
            Angle::from_expansion(&[0, 1, 1, 0], &[0, 1]).unwrap()
        );
    }

    #[test]
    fn degenerate_base_rejected() {
        let b = RayPair::unchecked(2, ang(1, 3), ang(1, 3));
        assert!(matches!(tune(&b, &ang(1, 3)), Err(Error::DegeneratePair(_))));
    }

    #[test]
    fn feigenbaum_levels() {
        let t = Tower::feigenbaum(3).unwrap();
        assert_eq!(t.level(1).unwrap(), &basilica());
        assert_eq!(t.level(2).unwrap(), &RayPair::new(4, ang(2, 5), ang(3, 5)).unwrap());
        assert_eq!(t.level(3).unwrap(), &RayPair::new(8, ang(7, 17), ang(10, 17)).unwrap());
        assert!(t.level(4).is_err());
        assert_eq!(t.level_or_generate(4).unwrap().period, 16);
    }

    #[test]
    fn generated_levels_match_tuning() {
        let t = Tower::rabbit(3).unwrap();
        let base = t.level(1).unwrap().clone();
        for n in 1..3 {
            let lower = t.level(n).unwrap();
            let upper = t.level(n + 1).unwrap();
            assert_eq!(tune(&base, &lower.lo).unwrap(), upper.lo);
            assert_eq!(tune(&base, &lower.hi).unwrap(), upper.hi);
            assert_eq!(tune(lower, &base.lo).unwrap(), upper.lo);
        }
    }

    #[test]
    fn pair_checks() {
        assert!(RayPair::new(2, ang(1, 3), ang(1, 2)).is_err());
        assert!(RayPair::new(2, ang(2, 3), ang(1, 3)).is_err());
        assert!(RayPair::new(3, ang(1, 7), ang(2, 7)).is_ok());
    }

    #[test]
    fn exact_period() {
        assert!(has_exact_period(&ang(1, 3), 2));
        assert!(!has_exact_period(&ang(1, 3), 4));
        assert!(has_exact_period(&ang(7, 17), 8));
        assert!(!has_exact_period(&Angle::zero(), 2));
    }
}
