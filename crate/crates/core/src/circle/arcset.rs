use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::angle::{pow2, Angle};
use super::arc::Arc;
use crate::error::{Error, Result};

/// Preimage fan-out above which `sigma_preimage_pow` refuses to enumerate.
pub const MAX_PREIMAGE_POWER: u64 = 20;

/// Finite union of disjoint closed arcs in cyclic order.
///
/// Unlabeled sets are canonical: touching or overlapping arcs are merged and
/// the arcs are sorted by start. Labeled sets keep every component as given
/// (touching allowed, overlap rejected) so that structural counts survive.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ArcSet {
    arcs: Vec<Arc>,
    labels: Option<Vec<String>>,
}

impl ArcSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_arcs(arcs: impl IntoIterator<Item = Arc>) -> Self {
        let pieces: Vec<_> = arcs.into_iter().flat_map(|a| a.pieces()).collect();
        ArcSet {
            arcs: merge_pieces(pieces),
            labels: None,
        }
    }

    /// Keeps components separate; errors if two of them overlap in more than an endpoint.
    pub fn labeled(components: Vec<(String, Arc)>) -> Result<Self> {
        let mut comps = components;
        comps.sort_by(|a, b| a.1.start().cmp(b.1.start()));
        for (i, (la, a)) in comps.iter().enumerate() {
            for (lb, b) in comps.iter().skip(i + 1) {
                let inter = ArcSet::from_arcs([a.clone()]).intersect(&ArcSet::from_arcs([b.clone()]));
                if inter.arcs.iter().any(|c| !c.is_point()) {
                    return Err(Error::InvalidArgument(format!(
                        "labeled components {la} {a} and {lb} {b} overlap"
                    )));
                }
            }
        }
        let (labels, arcs) = comps.into_iter().unzip();
        Ok(ArcSet {
            arcs,
            labels: Some(labels),
        })
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn component(&self, label: &str) -> Option<&Arc> {
        let labels = self.labels.as_ref()?;
        labels.iter().position(|l| l == label).map(|i| &self.arcs[i])
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Canonical unlabeled form (merges touching components).
    pub fn canonical(&self) -> Self {
        Self::from_arcs(self.arcs.iter().cloned())
    }

    pub fn total_length(&self) -> BigRational {
        self.canonical()
            .arcs
            .iter()
            .fold(BigRational::zero(), |acc, a| acc + a.len())
    }

    pub fn contains(&self, t: &Angle) -> bool {
        self.arcs.iter().any(|a| a.contains(t))
    }

    pub fn intersect(&self, other: &ArcSet) -> ArcSet {
        let mut out = Vec::new();
        for a in self.arcs.iter().flat_map(|a| a.pieces()) {
            for b in other.arcs.iter().flat_map(|b| b.pieces()) {
                let lo = if a.0 > b.0 { &a.0 } else { &b.0 };
                let hi = if a.1 < b.1 { &a.1 } else { &b.1 };
                if lo <= hi {
                    out.push((lo.clone(), hi.clone()));
                }
            }
        }
        ArcSet {
            arcs: merge_pieces(out),
            labels: None,
        }
    }

    pub fn union(&self, other: &ArcSet) -> ArcSet {
        Self::from_arcs(self.arcs.iter().chain(other.arcs.iter()).cloned())
    }

    pub fn is_subset_of(&self, other: &ArcSet) -> bool {
        let me = self.canonical();
        me.intersect(other) == me
    }

    /// Componentwise image under doubling.
    pub fn sigma_image(&self) -> Result<ArcSet> {
        let arcs = self.arcs.iter().map(Arc::double).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_arcs(arcs))
    }

    /// Full preimage under `sigma^m`: `2^m` arcs per component, each `2^m` times shorter.
    pub fn sigma_preimage_pow(&self, m: u64) -> Result<ArcSet> {
        if m > MAX_PREIMAGE_POWER {
            return Err(Error::InvalidArgument(format!(
                "preimage power {m} exceeds {MAX_PREIMAGE_POWER}"
            )));
        }
        let scale = pow2(m);
        let count = 1u64 << m;
        let mut arcs = Vec::new();
        for a in &self.arcs {
            if a.is_full() {
                return Ok(Self::from_arcs([Arc::full()]));
            }
            let len = a.len() / &scale;
            for i in 0..count {
                let s = (a.start().value() + BigRational::from_integer(BigInt::from(i))) / &scale;
                arcs.push(Arc::new(Angle::from_ratio(s), len.clone())?);
            }
        }
        Ok(Self::from_arcs(arcs))
    }
}

/// Merges subintervals of `[0, 1]` into canonical circle arcs.
fn merge_pieces(mut pieces: Vec<(BigRational, BigRational)>) -> Vec<Arc> {
    if pieces.is_empty() {
        return Vec::new();
    }
    pieces.sort();
    let mut merged: Vec<(BigRational, BigRational)> = Vec::new();
    for (s, e) in pieces {
        match merged.last_mut() {
            Some(last) if s <= last.1 => {
                if e > last.1 {
                    last.1 = e;
                }
            }
            _ => merged.push((s, e)),
        }
    }
    let one = BigRational::one();
    if merged.len() == 1 && merged[0].0.is_zero() && merged[0].1 == one {
        return vec![Arc::full()];
    }
    // Rejoin a piece ending at 1 with one starting at 0.
    let wraps = merged.len() > 1 && merged[0].0.is_zero() && merged.last().unwrap().1 == one;
    let mut out = Vec::with_capacity(merged.len());
    if wraps {
        let first = merged.remove(0);
        let last = merged.pop().unwrap();
        let len = (&one - &last.0) + &first.1;
        for (s, e) in merged {
            out.push(Arc::new(Angle::from_ratio(s.clone()), e - s).expect("piece in [0,1]"));
        }
        out.push(Arc::new(Angle::from_ratio(last.0), len).expect("wrapped piece"));
    } else {
        for (s, e) in merged {
            out.push(Arc::new(Angle::from_ratio(s.clone()), e - s).expect("piece in [0,1]"));
        }
    }
    out.sort_by(|a, b| a.start().cmp(b.start()));
    out
}

impl fmt::Display for ArcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arcs.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, a) in self.arcs.iter().enumerate() {
            if i > 0 {
                write!(f, " u ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ArcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ArcSet({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::angle::{ang, rat};

    fn arc(a: (i64, i64), b: (i64, i64)) -> Arc {
        Arc::between(&ang(a.0, a.1), &ang(b.0, b.1))
    }

    #[test]
    fn preimage_of_middle_third() {
        let a = ArcSet::from_arcs([arc((1, 3), (2, 3))]);
        let pre = a.sigma_preimage_pow(1).unwrap();
        assert_eq!(
            pre,
            ArcSet::from_arcs([arc((1, 6), (1, 3)), arc((2, 3), (5, 6))])
        );
    }

    #[test]
    fn image_example() {
        let a = ArcSet::from_arcs([arc((1, 3), (5, 12))]);
        assert_eq!(a.sigma_image().unwrap(), ArcSet::from_arcs([arc((2, 3), (5, 6))]));
    }

    #[test]
    fn membership_in_window() {
        let s = ArcSet::from_arcs([arc((1, 3), (5, 12)), arc((7, 12), (2, 3))]);
        assert!(s.contains(&ang(2, 5)));
        assert!(s.contains(&ang(2, 3)));
        assert!(!s.contains(&ang(1, 2)));
    }

    #[test]
    fn touching_arcs_merge_unless_labeled() {
        let a = arc((0, 1), (1, 4));
        let b = arc((1, 4), (1, 2));
        let merged = ArcSet::from_arcs([a.clone(), b.clone()]);
        assert_eq!(merged.len(), 1);
        assert_eq!(merged.arcs()[0], arc((0, 1), (1, 2)));
        let labeled = ArcSet::labeled(vec![("a".into(), a), ("b".into(), b)]).unwrap();
        assert_eq!(labeled.len(), 2);
        assert_eq!(labeled.canonical(), merged);
    }

    #[test]
    fn labeled_overlap_rejected() {
        let r = ArcSet::labeled(vec![
            ("a".into(), arc((0, 1), (1, 2))),
            ("b".into(), arc((1, 4), (3, 4))),
        ]);
        assert!(r.is_err());
    }

    #[test]
    fn wraparound_merge() {
        let s = ArcSet::from_arcs([arc((3, 4), (0, 1)), arc((0, 1), (1, 8))]);
        assert_eq!(s.len(), 1);
        assert_eq!(s.arcs()[0], arc((3, 4), (1, 8)));
        let full = ArcSet::from_arcs([arc((0, 1), (1, 2)), arc((1, 2), (0, 1))]);
        assert_eq!(full.arcs(), &[Arc::full()]);
    }

    #[test]
    fn intersection_across_zero() {
        let a = ArcSet::from_arcs([arc((3, 4), (1, 4))]);
        let b = ArcSet::from_arcs([arc((1, 8), (7, 8))]);
        let i = a.intersect(&b);
        assert_eq!(i, ArcSet::from_arcs([arc((1, 8), (1, 4)), arc((3, 4), (7, 8))]));
        assert_eq!(i.total_length(), rat(1, 4));
    }

    #[test]
    fn point_intersection_survives() {
        let a = ArcSet::from_arcs([arc((1, 3), (1, 2))]);
        let b = ArcSet::from_arcs([arc((1, 2), (2, 3))]);
        let i = a.intersect(&b);
        assert_eq!(i.len(), 1);
        assert!(i.arcs()[0].is_point());
    }
}
