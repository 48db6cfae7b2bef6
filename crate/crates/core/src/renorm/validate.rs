//! Finite checks of every structural requirement on a tower.

use num_rational::BigRational;
use serde::Serialize;

use super::tower::{RayPair, Tower};
use super::window::window;
use crate::circle::{Angle, Arc};
use crate::lamination::{linked, Chord};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub pass: bool,
    /// First counterexample, when the check fails.
    pub witness: Option<String>,
}

struct Checker {
    results: Vec<CheckResult>,
}

impl Checker {
    fn record(&mut self, check: &str, witness: Option<String>) {
        self.results.push(CheckResult {
            check: check.into(),
            pass: witness.is_none(),
            witness,
        });
    }
}

/// Runs all checks; each appears once in the report.
pub fn validate(tower: &Tower) -> Vec<CheckResult> {
    let levels = tower.levels();
    let mut c = Checker { results: Vec::new() };

    c.record("nonempty", levels.is_empty().then(|| "tower has no levels".to_string()));
    c.record("order", first(levels, |n, p| {
        (p.lo.is_zero() || p.lo >= p.hi).then(|| format!("level {n}: {} !< {}", p.lo, p.hi))
    }));
    c.record("periodicity", first(levels, |n, p| {
        if p.period == 0 {
            return Some(format!("level {n}: period 0"));
        }
        [&p.lo, &p.hi].into_iter().find_map(|t| {
            let img = t.iterate(p.period);
            (img != *t).then(|| format!("level {n}: sigma^{}({t}) = {img}", p.period))
        })
    }));
    c.record("divisibility", first_step(levels, |n, a, b| {
        let ok = a.period > 0 && b.period % a.period == 0 && b.period >= 2 * a.period;
        (!ok).then(|| format!("levels {n},{}: periods {} and {}", n + 1, a.period, b.period))
    }));
    c.record("nesting-S", first_step(levels, |n, a, b| {
        let ok = a.lo <= b.lo && b.hi <= a.hi;
        (!ok).then(|| format!(
            "level {}: [{}, {}] not inside [{}, {}]",
            n + 1, b.lo, b.hi, a.lo, a.hi
        ))
    }));
    c.record("window-endpoints", first(levels, |n, p| {
        window(p).err().map(|e| format!("level {n}: {e}"))
    }));
    c.record("nesting-s", first_step(levels, |n, a, b| {
        match (window(a), window(b)) {
            (Ok(wa), Ok(wb)) => (!wb.s.canonical().is_subset_of(&wa.s.canonical()))
                .then(|| format!("s at level {} not inside s at level {n}", n + 1)),
            _ => Some(format!("levels {n},{}: window undefined", n + 1)),
        }
    }));
    c.record("orbit-exclusion", first(levels, |n, p| {
        if p.lo >= p.hi {
            return Some(format!("level {n}: empty arc"));
        }
        let s = p.characteristic_arc();
        for t in [&p.lo, &p.hi] {
            let mut u = t.clone();
            for k in 1..=p.period {
                u = u.double();
                if s.contains_interior(&u) {
                    return Some(format!("level {n}: sigma^{k}({t}) = {u} inside ({}, {})", p.lo, p.hi));
                }
            }
        }
        None
    }));
    c.record("unlinked", unlinked_witness(levels));
    c.record("shortest-arc", first(levels, |n, p| {
        if p.lo >= p.hi {
            return Some(format!("level {n}: empty arc"));
        }
        let s = p.characteristic_arc();
        let (mut x, mut y) = (p.lo.clone(), p.hi.clone());
        for k in 1..p.period {
            x = x.double();
            y = y.double();
            let len = away_from(&s, &x, &y);
            match len {
                Some(len) if &len >= s.len() => {}
                Some(len) => {
                    return Some(format!(
                        "level {n}: arc between sigma^{k} images {x}, {y} has length {len} < {}",
                        s.len()
                    ))
                }
                None => return Some(format!("level {n}: both arcs between {x}, {y} meet ({}, {})", p.lo, p.hi)),
            }
        }
        None
    }));
    c.results
}

/// Length of the arc between `x` and `y` that does not contain the midpoint of `s`.
fn away_from(s: &Arc, x: &Angle, y: &Angle) -> Option<BigRational> {
    let mid = s.start().rotate(&(s.len() / BigRational::from_integer(2.into())));
    [(x, y), (y, x)]
        .into_iter()
        .map(|(a, b)| Arc::between(a, b))
        .find(|arc| !arc.contains(&mid))
        .map(|arc| arc.len().clone())
}

fn unlinked_witness(levels: &[RayPair]) -> Option<String> {
    let mut chords: Vec<(usize, Chord)> = Vec::new();
    for (i, p) in levels.iter().enumerate() {
        let (mut x, mut y) = (p.lo.clone(), p.hi.clone());
        for _ in 0..p.period.min(1 << 12) {
            if let Ok(c) = Chord::new(x.clone(), y.clone()) {
                chords.push((i + 1, c));
            }
            x = x.double();
            y = y.double();
        }
    }
    for (i, (n, c)) in chords.iter().enumerate() {
        for (m, d) in &chords[i + 1..] {
            if linked(c, d) {
                return Some(format!("level {n} chord {c} crosses level {m} chord {d}"));
            }
        }
    }
    None
}

fn first(levels: &[RayPair], f: impl Fn(usize, &RayPair) -> Option<String>) -> Option<String> {
    levels.iter().enumerate().find_map(|(i, p)| f(i + 1, p))
}

fn first_step(
    levels: &[RayPair],
    f: impl Fn(usize, &RayPair, &RayPair) -> Option<String>,
) -> Option<String> {
    levels
        .windows(2)
        .enumerate()
        .find_map(|(i, w)| f(i + 1, &w[0], &w[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::ang;

    fn failing(report: &[CheckResult]) -> Vec<&str> {
        report.iter().filter(|r| !r.pass).map(|r| r.check.as_str()).collect()
    }

    #[test]
    fn feigenbaum_and_rabbit_pass() {
        for t in [Tower::feigenbaum(3).unwrap(), Tower::rabbit(2).unwrap()] {
            let r = validate(&t);
            assert!(failing(&r).is_empty(), "{:?}", r);
        }
    }

    #[test]
    fn nesting_failure() {
        let t = Tower::explicit(vec![
            RayPair::unchecked(2, ang(1, 3), ang(2, 3)),
            RayPair::unchecked(4, ang(1, 5), ang(2, 5)),
        ]);
        assert!(failing(&validate(&t)).contains(&"nesting-S"));
    }

    #[test]
    fn periodicity_failure() {
        let t = Tower::explicit(vec![RayPair::unchecked(2, ang(1, 3), ang(1, 2))]);
        let r = validate(&t);
        let f = failing(&r);
        assert!(f.contains(&"periodicity"));
        let w = r.iter().find(|c| c.check == "periodicity").unwrap();
        assert!(w.witness.as_ref().unwrap().contains("sigma^2(1/2) = 0"));
    }

    #[test]
    fn orbit_entering_the_arc() {
        // sigma(1/7) = 2/7 lies between 1/7 and 4/7
        let t = Tower::explicit(vec![RayPair::unchecked(3, ang(1, 7), ang(4, 7))]);
        let r = validate(&t);
        assert!(failing(&r).contains(&"orbit-exclusion"));
    }
}
