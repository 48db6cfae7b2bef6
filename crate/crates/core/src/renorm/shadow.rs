//! Angle shadows: which rays accumulate on a small Julia set, decided on
//! the circle through window itineraries.

use std::collections::HashMap;
use std::sync::{Arc as Shared, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::tower::Tower;
use super::window::{subwindow, window, window_at};
use crate::circle::{pow2, Angle, Arc, ArcSet, LimitAngle};
use crate::error::{Error, Result};

/// Exact test whether `t` lies in the shadow of the `j`-th small Julia set of
/// level `n`: every `sigma^{kp}(t)` must lie in the sub-window `s^1_{n,j}`.
/// For `j = 1` the coarser window criterion is evaluated as well and must agree.
pub fn in_shadow(t: &Angle, tower: &Tower, n: usize, j: u64) -> Result<bool> {
    let pair = tower.level(n)?;
    let sub = subwindow(pair, j)?;
    let info = t.orbit_info();
    let steps = info.preperiod + info.period;
    let p = pair.period;
    let by_sub = orbit_stays_in(t, p, steps, &sub.components);
    if j == 1 {
        let by_window = orbit_stays_in(t, p, steps, &window(pair)?.s);
        if by_window != by_sub {
            return Err(Error::InconsistentPair(format!(
                "shadow criteria disagree for {t} at level {n}"
            )));
        }
    }
    Ok(by_sub)
}

/// Checks `sigma^{kp}(t) in set` for `k = 0..=steps`.
pub(crate) fn orbit_stays_in(t: &Angle, p: u64, steps: u64, set: &ArcSet) -> bool {
    let mut u = t.clone();
    for _ in 0..=steps {
        if !set.contains(&u) {
            return false;
        }
        u = u.iterate(p);
    }
    true
}

/// Shadow of the small Julia set containing the critical value.
#[derive(Debug, Clone)]
pub struct KcShadow {
    /// `s_{depth,1}`, which contains every angle of the shadow.
    pub window: ArcSet,
    /// Limit of the lower window endpoints `t_n`.
    pub tau1: LimitAngle,
    /// Limit of the upper window endpoints.
    pub tau2: LimitAngle,
}

/// `s_{depth,1}` together with the two limit angles of the nested
/// left and right window components.
pub fn shadow_kc(tower: &Tower, depth: usize) -> Result<KcShadow> {
    let pair = tower.level(depth)?;
    let w = window(pair)?;
    let expected = pair.width() / pow2(pair.period);
    for a in w.s.arcs() {
        if a.len() != &expected {
            return Err(Error::InconsistentPair(format!(
                "window component {a} of {pair} has length {} instead of {expected}",
                a.len()
            )));
        }
    }
    let budget = tower.reachable_depth();
    let cache = Shared::new(WindowCache {
        tower: tower.clone(),
        arcs: Mutex::new(HashMap::new()),
    });
    let side = |upper: bool| {
        let cache = cache.clone();
        let name = format!("{}.tau{}", tower.name(), if upper { 2 } else { 1 });
        LimitAngle::new(name, budget, move |m| {
            let (lo, hi) = cache.get(m + 1)?;
            Ok(if upper { hi } else { lo })
        })
    };
    Ok(KcShadow {
        window: w.s,
        tau1: side(false),
        tau2: side(true),
    })
}

/// First-window components per level, built once. Deep levels carry
/// fractions with hundreds of thousands of bits, so repeated refinement
/// must not rebuild them.
struct WindowCache {
    tower: Tower,
    arcs: Mutex<HashMap<usize, (Arc, Arc)>>,
}

impl WindowCache {
    fn get(&self, level: usize) -> Result<(Arc, Arc)> {
        let mut arcs = self.arcs.lock().expect("window cache poisoned");
        if let Some(a) = arcs.get(&level) {
            return Ok(a.clone());
        }
        let pair = self.tower.level_or_generate(level)?;
        let step = pair.width() / pow2(pair.period);
        let lo = Arc::new(pair.lo.clone(), step.clone())?;
        let hi = Arc::new(pair.hi.rotate(&-step.clone()), step)?;
        arcs.insert(level, (lo.clone(), hi.clone()));
        Ok((lo, hi))
    }
}

/// Addresses `j_1, j_2, ...` of a component of the infinitely renormalizable set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentAddress(pub Vec<u64>);

impl ComponentAddress {
    /// `j_n = p_n`: the component containing the critical point.
    pub fn critical(tower: &Tower, depth: usize) -> Result<Self> {
        Ok(ComponentAddress(
            (1..=depth)
                .map(|n| tower.level(n).map(|p| p.period))
                .collect::<Result<_>>()?,
        ))
    }

    /// `j_n = 1`: the component containing the critical value.
    pub fn critical_value(depth: usize) -> Self {
        ComponentAddress(vec![1; depth])
    }

    pub fn check(&self, tower: &Tower) -> Result<()> {
        for (i, &j) in self.0.iter().enumerate() {
            let p = tower.level(i + 1)?.period;
            if j == 0 || j > p {
                return Err(Error::IncompatibleAddress(format!(
                    "j_{} = {j} outside 1..={p}",
                    i + 1
                )));
            }
            if i > 0 {
                let prev_p = tower.level(i)?.period;
                if j % prev_p != self.0[i - 1] % prev_p {
                    return Err(Error::IncompatibleAddress(format!(
                        "j_{} = {j} is not congruent to j_{} = {} mod {prev_p}",
                        i + 1,
                        i,
                        self.0[i - 1]
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Classification {
    /// `p_n - j_n = N` at every supplied level.
    Case2(u64),
    /// `p_n - j_n` is not constant over the supplied levels.
    Case1SoFar,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentShadow {
    /// Intersection of the sub-windows `s^1_{n,j_n}`.
    pub fine: ArcSet,
    pub classification: Classification,
    /// Intersection of the windows `s_{n,j_n}`, reported outside case 2.
    pub coarse: Option<ArcSet>,
}

pub fn shadow_component(
    tower: &Tower,
    addr: &ComponentAddress,
    depth: usize,
) -> Result<ComponentShadow> {
    if depth == 0 || addr.0.len() < depth {
        return Err(Error::IncompatibleAddress(format!(
            "address of length {} does not reach depth {depth}",
            addr.0.len()
        )));
    }
    let addr = ComponentAddress(addr.0[..depth].to_vec());
    addr.check(tower)?;
    let mut fine: Option<ArcSet> = None;
    let mut coarse: Option<ArcSet> = None;
    let mut gaps = Vec::with_capacity(depth);
    for (i, &j) in addr.0.iter().enumerate() {
        let pair = tower.level(i + 1)?;
        let sub = subwindow(pair, j)?.components.canonical();
        let win = window_at(pair, j)?.canonical();
        fine = Some(match fine {
            None => sub,
            Some(f) => f.intersect(&sub),
        });
        coarse = Some(match coarse {
            None => win,
            Some(c) => c.intersect(&win),
        });
        gaps.push(pair.period - j);
    }
    let classification = if gaps.iter().all(|&g| g == gaps[0]) {
        Classification::Case2(gaps[0])
    } else {
        Classification::Case1SoFar
    };
    let coarse = match classification {
        Classification::Case2(_) => None,
        Classification::Case1SoFar => coarse,
    };
    Ok(ComponentShadow {
        fine: fine.expect("depth >= 1"),
        classification,
        coarse,
    })
}

/// Exact angle with a prescribed sub-window itinerary.
///
/// `prefix` and `cycle` list sub-window labels (see `SUB_LABELS`) visited by
/// `t, sigma^p(t), sigma^{2p}(t), ...`; the cycle repeats forever. Each label
/// must lie in the window covered by its predecessor.
pub fn itinerary_point(
    tower: &Tower,
    n: usize,
    j: u64,
    prefix: &[&str],
    cycle: &[&str],
) -> Result<Angle> {
    if cycle.is_empty() {
        return Err(Error::InvalidArgument("empty itinerary cycle".into()));
    }
    let pair = tower.level(n)?;
    let sub = subwindow(pair, j)?;
    let windows = window_at(pair, j)?;
    let lookup = |label: &str| {
        sub.detail
            .iter()
            .find(|c| c.label == label)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown sub-window {label}")))
    };
    let word: Vec<&str> = prefix.iter().chain(cycle.iter()).copied().collect();
    for k in 0..word.len() {
        let next = if k + 1 < word.len() { word[k + 1] } else { cycle[0] };
        let covers = &lookup(word[k])?.covers;
        if !next.starts_with(covers.as_str()) {
            return Err(Error::InvalidArgument(format!(
                "{} covers window {covers}, cannot be followed by {next}",
                word[k]
            )));
        }
    }
    let scale = pow2(pair.period);
    // inverse branch through component c: y in V = covers(c) -> c.start + (y - V.start)/2^p
    let offset_back = |label: &str, y: &BigRational| -> Result<BigRational> {
        let c = lookup(label)?;
        let v = windows.component(&c.covers).expect("window label");
        let off = v.start().ccw_to(&Angle::from_ratio(y.clone()));
        Ok(c.arc.start().value() + off / &scale)
    };
    // periodic part: fixed point of the composed inverse branches
    let home = windows
        .component(lookup(cycle[cycle.len() - 1])?.covers.as_str())
        .expect("window label")
        .clone();
    let anchor = home.start().value().clone();
    let mut g0 = anchor.clone();
    for label in cycle.iter().rev() {
        g0 = offset_back(label, &g0)?;
    }
    // G(anchor + u) = g0 + u / 2^{p L}; the fixed point sits at offset u
    let contraction = pow2(pair.period * cycle.len() as u64);
    let shift = Angle::from_ratio(anchor.clone()).ccw_to(&Angle::from_ratio(g0));
    let u = &shift * &contraction / (&contraction - BigRational::from_integer(BigInt::from(1)));
    let mut y = anchor + u;
    if !home.contains(&Angle::from_ratio(y.clone())) {
        return Err(Error::Numerical("itinerary fixed point left its window".into()));
    }
    for label in prefix.iter().rev() {
        y = offset_back(label, &y)?;
    }
    Ok(Angle::from_ratio(y))
}

/// Convenience: the four sub-window arcs of level `n` as plain arcs.
pub fn subwindow_arcs(tower: &Tower, n: usize, j: u64) -> Result<Vec<Arc>> {
    Ok(subwindow(tower.level(n)?, j)?.components.arcs().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::{ang, dyadic};

    #[test]
    fn shadow_examples() {
        let t = Tower::feigenbaum(3).unwrap();
        assert!(in_shadow(&ang(1, 3), &t, 1, 1).unwrap());
        assert!(in_shadow(&ang(2, 5), &t, 1, 1).unwrap());
        for n in 1..=3 {
            for j in 1..=t.level(n).unwrap().period {
                assert!(!in_shadow(&Angle::zero(), &t, n, j).unwrap());
            }
        }
        assert!(!in_shadow(&ang(1, 2), &t, 1, 1).unwrap());
    }

    #[test]
    fn kc_window_depth_one() {
        let t = Tower::feigenbaum(1).unwrap();
        let k = shadow_kc(&t, 1).unwrap();
        assert_eq!(
            k.window.canonical(),
            ArcSet::from_arcs([
                Arc::between(&ang(1, 3), &ang(5, 12)),
                Arc::between(&ang(7, 12), &ang(2, 3)),
            ])
        );
    }

    #[test]
    fn tau_prefix_is_thue_morse() {
        let t = Tower::feigenbaum(1).unwrap();
        let k = shadow_kc(&t, 1).unwrap();
        let mut word = vec![0u8];
        for _ in 0..6 {
            word = word.iter().flat_map(|&b| if b == 0 { [0, 1] } else { [1, 0] }).collect();
            let bits = k.tau1.bits(word.len()).unwrap();
            assert_eq!(bits, word);
        }
        assert_eq!(k.tau1.bits(8).unwrap(), vec![0, 1, 1, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn tau2_mirrors_tau1() {
        let t = Tower::feigenbaum(1).unwrap();
        let k = shadow_kc(&t, 1).unwrap();
        for bits in [4u64, 16, 64, 200] {
            let a = k.tau1.refine(bits).unwrap();
            let b = k.tau2.refine(bits).unwrap();
            let m = k.tau1.mirror().refine(bits).unwrap();
            assert_eq!(b, m, "bits {bits}");
            // both within 2^-bits of their limits, so of each other's mirror
            assert!(a.mirror().circle_distance(&b) <= dyadic(&2u32.into(), bits).value().clone());
        }
    }

    #[test]
    fn critical_component_is_case_two() {
        let t = Tower::feigenbaum(2).unwrap();
        let addr = ComponentAddress::critical(&t, 2).unwrap();
        let c = shadow_component(&t, &addr, 2).unwrap();
        assert_eq!(c.classification, Classification::Case2(0));
        assert_eq!(c.fine.len(), 4);
        assert!(c.coarse.is_none());
    }

    #[test]
    fn critical_value_component_inside_kc_window() {
        let t = Tower::feigenbaum(2).unwrap();
        let c = shadow_component(&t, &ComponentAddress::critical_value(2), 2).unwrap();
        let k = shadow_kc(&t, 2).unwrap();
        assert!(c.fine.is_subset_of(&k.window));
        assert!(c.fine.len() <= 4);
        assert_eq!(c.classification, Classification::Case1SoFar);
        assert!(c.coarse.is_some());
    }

    #[test]
    fn incompatible_address() {
        let t = Tower::feigenbaum(2).unwrap();
        let bad = ComponentAddress(vec![1, 2]);
        assert!(matches!(
            shadow_component(&t, &bad, 2),
            Err(Error::IncompatibleAddress(_))
        ));
        let out_of_range = ComponentAddress(vec![3]);
        assert!(shadow_component(&t, &out_of_range, 1).is_err());
    }

    #[test]
    fn itinerary_points_are_in_shadow() {
        let t = Tower::feigenbaum(2).unwrap();
        let x = itinerary_point(&t, 1, 2, &[], &["lo.end", "hi.start"]).unwrap();
        assert!(in_shadow(&x, &t, 1, 2).unwrap());
        let y = itinerary_point(&t, 1, 2, &["hi.end"], &["hi.start", "lo.end"]).unwrap();
        assert!(in_shadow(&y, &t, 1, 2).unwrap());
        assert!(itinerary_point(&t, 1, 2, &[], &["lo.start", "hi.start"]).is_err());
    }
}
