//! Chords of the unit disk, linkage, and finite laminations generated by a tower.

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::fmt::{self, Write as _};

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::circle::Angle;
use crate::error::{Error, Result};
use crate::renorm::Tower;

/// Largest accepted preimage depth; each level doubles the new chords.
pub const MAX_PREIMAGE_DEPTH: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Chord {
    pub a: Angle,
    pub b: Angle,
}

impl Chord {
    pub fn new(x: Angle, y: Angle) -> Result<Self> {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => Ok(Chord { a: x, b: y }),
            std::cmp::Ordering::Greater => Ok(Chord { a: y, b: x }),
            std::cmp::Ordering::Equal => Err(Error::InvalidArgument(format!(
                "chord endpoints coincide at {x}"
            ))),
        }
    }

    /// Image under doubling, `None` when both endpoints land on one point.
    pub fn image(&self) -> Option<Chord> {
        Chord::new(self.a.double(), self.b.double()).ok()
    }

    /// The two preimage chords for each of the two possible pairings.
    fn preimage_pairings(&self) -> [[Chord; 2]; 2] {
        let (a0, a1) = self.a.preimages();
        let (b0, b1) = self.b.preimages();
        let c = |x: &Angle, y: &Angle| Chord::new(x.clone(), y.clone()).expect("distinct preimages");
        [[c(&a0, &b0), c(&a1, &b1)], [c(&a0, &b1), c(&a1, &b0)]]
    }

    fn length(&self) -> num_rational::BigRational {
        self.a.circle_distance(&self.b)
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

fn strictly_between(a: &Angle, x: &Angle, b: &Angle) -> bool {
    a < x && x < b
}

/// True when the endpoints of `d` lie in different open arcs cut out by `c`.
/// Chords sharing an endpoint are unlinked.
pub fn linked(c: &Chord, d: &Chord) -> bool {
    if c.a == d.a || c.a == d.b || c.b == d.a || c.b == d.b {
        return false;
    }
    strictly_between(&c.a, &d.a, &c.b) != strictly_between(&c.a, &d.b, &c.b)
}

/// Orbit chords of every level up to `depth`, plus `preimage_depth`
/// rounds of pulled-back chords, sorted.
pub fn build(tower: &Tower, depth: usize, preimage_depth: usize) -> Result<Vec<Chord>> {
    if preimage_depth > MAX_PREIMAGE_DEPTH {
        return Err(Error::InvalidArgument(format!(
            "preimage depth {preimage_depth} above {MAX_PREIMAGE_DEPTH}"
        )));
    }
    let mut family = BTreeSet::new();
    for n in 1..=depth {
        let pair = tower.level(n)?;
        let (mut x, mut y) = (pair.lo.clone(), pair.hi.clone());
        for _ in 0..pair.period {
            if let Ok(c) = Chord::new(x.clone(), y.clone()) {
                family.insert(c);
            }
            x = x.double();
            y = y.double();
        }
    }
    let mut frontier: Vec<Chord> = family.iter().cloned().collect();
    for _ in 0..preimage_depth {
        let mut next = Vec::new();
        for chord in &frontier {
            let pairings = chord.preimage_pairings();
            let fits = |pair: &[Chord; 2]| {
                pair.iter()
                    .all(|c| family.iter().all(|f| !linked(c, f)))
            };
            let ok: Vec<&[Chord; 2]> = pairings.iter().filter(|p| fits(p)).collect();
            let chosen = match ok.as_slice() {
                [] => {
                    return Err(Error::PreimageInconsistent(format!(
                        "no unlinked placement for the preimages of {chord}"
                    )))
                }
                [only] => *only,
                [first, second] => {
                    // prefer the pairing already present, then the shorter chords
                    let known = |p: &[Chord; 2]| p.iter().any(|c| family.contains(c));
                    if known(first) != known(second) {
                        if known(first) { *first } else { *second }
                    } else if first[0].length() <= second[0].length() {
                        *first
                    } else {
                        *second
                    }
                }
                _ => unreachable!("two pairings"),
            };
            for c in chosen {
                if family.insert(c.clone()) {
                    next.push(c.clone());
                }
            }
        }
        frontier = next;
    }
    Ok(family.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnlinkedReport {
    pub pass: bool,
    pub chords: usize,
    /// Linked pairs, in family order.
    pub witnesses: Vec<(Chord, Chord)>,
}

pub fn verify_unlinked(family: &[Chord]) -> UnlinkedReport {
    let witnesses: Vec<(Chord, Chord)> = (0..family.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            family[i + 1..]
                .iter()
                .filter(move |d| linked(&family[i], d))
                .map(move |d| (family[i].clone(), d.clone()))
        })
        .collect();
    UnlinkedReport {
        pass: witnesses.is_empty(),
        chords: family.len(),
        witnesses,
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SvgOptions {
    /// Draw chords as circular arcs orthogonal to the unit circle.
    pub geodesic: bool,
}

fn point(t: &Angle) -> (f64, f64) {
    let x = TAU * t.to_f64();
    (x.cos(), -x.sin())
}

pub fn export_svg(family: &[Chord], options: SvgOptions) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"-1.05 -1.05 2.1 2.1\">\n",
    );
    out.push_str("<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"black\" stroke-width=\"0.004\"/>\n");
    for c in family {
        let (x1, y1) = point(&c.a);
        let (x2, y2) = point(&c.b);
        let half = std::f64::consts::PI * c.length().to_f64().unwrap_or(0.5);
        let straight = !options.geodesic || (half - std::f64::consts::FRAC_PI_2).abs() < 1e-12;
        if straight {
            let _ = writeln!(
                out,
                "<line x1=\"{x1:.6}\" y1=\"{y1:.6}\" x2=\"{x2:.6}\" y2=\"{y2:.6}\" stroke=\"black\" stroke-width=\"0.004\"/>"
            );
        } else {
            // circle through both endpoints meeting the unit circle at right angles
            let r = half.tan();
            let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
            let norm = (mx * mx + my * my).sqrt();
            let dist = 1.0 / half.cos();
            let (cx, cy) = (mx / norm * dist, my / norm * dist);
            let cross = (x2 - x1) * (cy - y1) - (y2 - y1) * (cx - x1);
            let sweep = u8::from(cross > 0.0);
            let _ = writeln!(
                out,
                "<path d=\"M {x1:.6} {y1:.6} A {r:.6} {r:.6} 0 0 {sweep} {x2:.6} {y2:.6}\" fill=\"none\" stroke=\"black\" stroke-width=\"0.004\"/>"
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
