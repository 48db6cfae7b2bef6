//! The itinerary map `theta`, which turns `sigma^p` on the level-`n` shadow
//! into plain doubling.

use std::collections::HashMap;

use serde::Serialize;

use super::shadow::in_shadow;
use super::tower::Tower;
use crate::circle::{Angle, Arc};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaValue {
    pub value: Angle,
    /// Some point of the `sigma^p`-orbit is an endpoint of `S_0` or `S'_0`.
    pub boundary_collapse: bool,
    /// Digits before the repeating block.
    pub prefix: Vec<u8>,
    pub cycle: Vec<u8>,
}

/// `(S_0, S'_0)`: the two preimage components of the characteristic arc,
/// `S_0` being the one with `sigma^{p-1}(lo)` as an endpoint.
pub fn theta_arcs(tower: &Tower, n: usize) -> Result<(Arc, Arc)> {
    let pair = tower.level(n)?;
    let s = pair.characteristic_arc();
    let half = s.len() / num_rational::BigRational::from_integer(2.into());
    let (a, b) = pair.lo.preimages();
    let left = Arc::new(a, half.clone())?;
    let right = Arc::new(b, half)?;
    let marker = pair.lo.iterate(pair.period - 1);
    let touches = |c: &Arc| *c.start() == marker || c.end() == marker;
    match (touches(&left), touches(&right)) {
        (true, false) => Ok((left, right)),
        (false, true) => Ok((right, left)),
        _ => Err(Error::InconsistentPair(format!(
            "{pair}: sigma^(p-1)(lo) = {marker} is not an endpoint of exactly one preimage arc"
        ))),
    }
}

/// `theta(t) = sum_j eps(sigma^{jp}(t)) / 2^{j+1}` with `eps = 0` on `S_0`
/// and `1` on `S'_0`; boundary points take `eps = 0` when on `S_0`.
pub fn theta(tower: &Tower, n: usize, t: &Angle) -> Result<ThetaValue> {
    let value = theta_unchecked(tower, n, t)?;
    let p = tower.level(n)?.period;
    let next = theta_unchecked(tower, n, &t.iterate(p))?;
    if next.value != value.value.double() {
        return Err(Error::Numerical(format!(
            "theta(sigma^p({t})) = {} but 2 theta({t}) = {}",
            next.value,
            value.value.double()
        )));
    }
    Ok(value)
}

fn theta_unchecked(tower: &Tower, n: usize, t: &Angle) -> Result<ThetaValue> {
    let pair = tower.level(n)?;
    let p = pair.period;
    if !in_shadow(t, tower, n, p)? {
        return Err(Error::NotInShadow(format!("{t} at level {n}")));
    }
    let (s0, s1) = theta_arcs(tower, n)?;
    let on_boundary = |c: &Arc, u: &Angle| c.start() == u || c.end() == *u;
    let mut digits = Vec::new();
    let mut seen: HashMap<Angle, usize> = HashMap::new();
    let mut boundary_collapse = false;
    let mut u = t.clone();
    let start_of_cycle = loop {
        if let Some(&i) = seen.get(&u) {
            break i;
        }
        let digit = if s0.contains(&u) {
            0
        } else if s1.contains(&u) {
            1
        } else {
            return Err(Error::NotInShadow(format!(
                "orbit point {u} of {t} lies outside both preimage arcs"
            )));
        };
        boundary_collapse |= on_boundary(&s0, &u) || on_boundary(&s1, &u);
        seen.insert(u.clone(), digits.len());
        digits.push(digit);
        u = u.iterate(p);
    };
    let cycle = digits.split_off(start_of_cycle);
    let value = Angle::from_expansion(&digits, &cycle)?;
    Ok(ThetaValue {
        value,
        boundary_collapse,
        prefix: digits,
        cycle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::ang;

    #[test]
    fn level_one_examples() {
        let t = Tower::feigenbaum(1).unwrap();
        let (s0, s1) = theta_arcs(&t, 1).unwrap();
        assert_eq!(s0, Arc::between(&ang(2, 3), &ang(5, 6)));
        assert_eq!(s1, Arc::between(&ang(1, 6), &ang(1, 3)));

        let v = theta(&t, 1, &ang(2, 3)).unwrap();
        assert_eq!(v.value, Angle::zero());
        assert!(v.boundary_collapse);
        assert_eq!(theta(&t, 1, &ang(4, 5)).unwrap().value, ang(1, 3));
        assert_eq!(theta(&t, 1, &ang(1, 5)).unwrap().value, ang(2, 3));
        assert!(!theta(&t, 1, &ang(4, 5)).unwrap().boundary_collapse);
        let v = theta(&t, 1, &ang(1, 3)).unwrap();
        assert_eq!(v.value, Angle::zero());
        assert!(v.boundary_collapse);
    }

    #[test]
    fn outside_shadow_rejected() {
        let t = Tower::feigenbaum(1).unwrap();
        assert!(matches!(theta(&t, 1, &ang(1, 2)), Err(Error::NotInShadow(_))));
        assert!(matches!(theta(&t, 1, &Angle::zero()), Err(Error::NotInShadow(_))));
    }

    #[test]
    fn deeper_levels() {
        let t = Tower::feigenbaum(3).unwrap();
        for n in 1..=3 {
            let pair = t.level(n).unwrap();
            // sigma^(p-1)(lo) is a sigma^p-fixed endpoint of S_0
            let v = theta(&t, n, &pair.lo.iterate(pair.period - 1)).unwrap();
            assert_eq!(v.value, Angle::zero());
            assert!(v.boundary_collapse);
        }
    }
}
