//! Windows `s_{n,j}` and sub-windows `s^1_{n,j}` of one tower level.
//!
//! The first window `s_{n,1} = [lo, lo'] u [hi', hi]` consists of the two
//! arcs of length `(hi - lo) / 2^p` at the ends of the characteristic arc;
//! `sigma^p` stretches each of them onto `[lo, hi]`. Its images
//! `s_{n,j} = sigma^{j-1}(s_{n,1})` have component length
//! `(hi - lo) / 2^{p-j+1}`. A sub-window is the piece of a window that
//! `sigma^p` maps back onto a window, taken at the four window endpoints.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::tower::RayPair;
use crate::circle::{pow2, Angle, Arc, ArcSet};
use crate::error::{Error, Result};

/// Labels of the two window components.
pub const LO: &str = "lo";
pub const HI: &str = "hi";

/// Labels of the four sub-window components, in the order lo-start,
/// lo-end, hi-start, hi-end of the parent window.
pub const SUB_LABELS: [&str; 4] = ["lo.start", "lo.end", "hi.start", "hi.end"];

/// How many extra intersection arcs are listed explicitly.
pub const MAX_LISTED_EXTRAS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Window {
    /// `s_{n,1}` with labeled components `lo` and `hi`.
    pub s: ArcSet,
    /// `lo + (hi - lo)/2^p`
    pub lo1: Angle,
    /// `hi - (hi - lo)/2^p`
    pub hi1: Angle,
}

/// Component length `Delta_{n,j} = (hi - lo) / 2^{p-j+1}`.
pub fn window_length(pair: &RayPair, j: u64) -> Result<BigRational> {
    check_j(pair, j)?;
    Ok(pair.width() / pow2(pair.period - j + 1))
}

fn check_j(pair: &RayPair, j: u64) -> Result<()> {
    if j == 0 || j > pair.period {
        return Err(Error::InvalidArgument(format!(
            "j = {j} outside 1..={}",
            pair.period
        )));
    }
    Ok(())
}

/// The first window of a pair, with the endpoint exchange
/// `sigma^p(lo') = hi`, `sigma^p(hi') = lo` verified.
pub fn window(pair: &RayPair) -> Result<Window> {
    pair.check()?;
    let step = pair.width() / pow2(pair.period);
    let lo1 = pair.lo.rotate(&step);
    let hi1 = pair.hi.rotate(&-step.clone());
    if lo1.iterate(pair.period) != pair.hi || hi1.iterate(pair.period) != pair.lo {
        return Err(Error::InvalidPair(format!(
            "{pair}: sigma^p does not exchange the inner window endpoints"
        )));
    }
    let s = ArcSet::labeled(vec![
        (LO.into(), Arc::new(pair.lo.clone(), step.clone())?),
        (HI.into(), Arc::new(hi1.clone(), step)?),
    ])?;
    Ok(Window { s, lo1, hi1 })
}

/// `s_{n,j} = sigma^{j-1}(s_{n,1})`, two labeled arcs of length `Delta_{n,j}`.
pub fn window_at(pair: &RayPair, j: u64) -> Result<ArcSet> {
    check_j(pair, j)?;
    let w = window(pair)?;
    let delta = window_length(pair, j)?;
    if delta >= BigRational::new(1.into(), 2.into()) {
        return Err(Error::ComponentTooLong(delta.to_string()));
    }
    let lo = Arc::new(pair.lo.iterate(j - 1), delta.clone())?;
    let hi = Arc::new(w.hi1.iterate(j - 1), delta)?;
    ArcSet::labeled(vec![(LO.into(), lo), (HI.into(), hi)])
}

/// One sub-window component with the window it covers under `sigma^p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubComponent {
    pub label: String,
    pub arc: Arc,
    /// Label of the window component `sigma^p` maps this arc onto.
    pub covers: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Subwindow {
    pub j: u64,
    /// The four endpoint-adjacent components, labeled.
    pub components: ArcSet,
    pub detail: Vec<SubComponent>,
    /// Number of intersection components of `s_{n,j} n sigma^-p(s_{n,j})`
    /// that are not adjacent to a window endpoint.
    pub extra_count: String,
    /// The first few such components.
    pub extra: Vec<Arc>,
}

/// `s^1_{n,j}`: components of `s_{n,j} n sigma^{-p}(s_{n,j})` adjacent to the
/// four endpoints of `s_{n,j}`.
pub fn subwindow(pair: &RayPair, j: u64) -> Result<Subwindow> {
    let s = window_at(pair, j)?;
    let p = pair.period;
    let delta = window_length(pair, j)?;
    let scale = pow2(p);
    let windows: Vec<(&str, &Arc)> = [LO, HI]
        .into_iter()
        .map(|l| (l, s.component(l).expect("labeled window")))
        .collect();

    let mut detail = Vec::with_capacity(4);
    for (wl, w) in &windows {
        for forward in [true, false] {
            let e = if forward { w.start().clone() } else { w.end() };
            let y = e.iterate(p);
            let Some((vl, v)) = windows.iter().find(|(_, v)| v.contains(&y)) else {
                return Err(Error::InconsistentPair(format!(
                    "{pair}, j={j}: sigma^p of endpoint {e} leaves the window"
                )));
            };
            // room left inside the covering window along the direction of travel
            let room = if forward {
                v.len() - v.start().ccw_to(&y)
            } else {
                v.start().ccw_to(&y)
            };
            let mut len = &room / &scale;
            if len > delta {
                len = delta.clone();
            }
            if len * &scale != delta {
                return Err(Error::InconsistentPair(format!(
                    "{pair}, j={j}: component at {e} has the wrong length"
                )));
            }
            let len = &delta / &scale;
            let arc = if forward {
                Arc::new(e.clone(), len)?
            } else {
                Arc::new(e.rotate(&-len.clone()), len)?
            };
            // sigma^p must carry the component exactly onto the covering window
            if arc.start().iterate(p) != *v.start() || arc.end().iterate(p) != v.end() {
                return Err(Error::InconsistentPair(format!(
                    "{pair}, j={j}: sigma^p does not map {arc} onto {v}"
                )));
            }
            let label = format!("{wl}.{}", if forward { "start" } else { "end" });
            detail.push(SubComponent {
                label,
                arc,
                covers: vl.to_string(),
            });
        }
    }
    let components = ArcSet::labeled(
        detail
            .iter()
            .map(|c| (c.label.clone(), c.arc.clone()))
            .collect(),
    )
    .map_err(|e| Error::InconsistentPair(format!("{pair}, j={j}: {e}")))?;
    if components.len() != 4 {
        return Err(Error::InconsistentPair(format!(
            "{pair}, j={j}: expected four components"
        )));
    }

    let (extra_count, extra) = extra_components(&windows, p, &delta)?;
    Ok(Subwindow {
        j,
        components,
        detail,
        extra_count: extra_count.to_string(),
        extra,
    })
}

/// Counts the intersection components inside each window that are not the
/// two endpoint-adjacent ones. On a window `[a, a + d]` doubling `p` times is
/// the affine lift `x -> A + 2^p (x - a)`; its image interval meets the
/// translates `V + m` of every window `V`, one component per translate.
fn extra_components(
    windows: &[(&str, &Arc)],
    p: u64,
    delta: &BigRational,
) -> Result<(BigInt, Vec<Arc>)> {
    let scale = pow2(p);
    let image_len = delta * &scale;
    let mut count = BigInt::zero();
    let mut listed = Vec::new();
    for (_, w) in windows {
        let y0 = w.start().iterate(p).value().clone();
        let y1 = &y0 + &image_len;
        let mut total = BigInt::zero();
        for (_, v) in windows {
            let vs = v.start().value();
            // m with [vs + m, vs + m + delta] meeting [y0, y1]
            let m_lo = (&y0 - vs - delta).ceil().to_integer();
            let m_hi = (&y1 - vs).floor().to_integer();
            if m_hi < m_lo {
                continue;
            }
            total += &m_hi - &m_lo + BigInt::one();
            let mut m = m_lo.clone();
            while m <= m_hi && listed.len() < MAX_LISTED_EXTRAS + 4 {
                let lo = vs + BigRational::from_integer(m.clone());
                let hi = &lo + delta;
                let a = if lo > y0 { lo } else { y0.clone() };
                let b = if hi < y1 { hi } else { y1.clone() };
                let start = (&a - &y0) / &scale;
                let len = (&b - &a) / &scale;
                let touches_end = start.is_zero() || &start + &len == *delta;
                if !touches_end {
                    listed.push(Arc::new(w.start().rotate(&start), len)?);
                }
                m += 1;
            }
        }
        // the two endpoint components are part of every total
        count += total - BigInt::from(2);
    }
    listed.truncate(MAX_LISTED_EXTRAS);
    if count.to_i64().is_some_and(|c| c < 0) {
        count = BigInt::zero();
    }
    Ok((count, listed))
}
