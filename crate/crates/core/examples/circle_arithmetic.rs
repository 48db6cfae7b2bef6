// Exact angles on R/Z under doubling: orbits, arcs, preimages and binary expansions.

use renorm_rays::circle::{ang, Angle, Arc, ArcSet};
use renorm_rays::Result;

pub fn run_example() -> Result<()> {
    for t in [ang(1, 3), ang(1, 6), ang(3, 10), ang(7, 17)] {
        let info = t.orbit_info();
        let bits: String = t.bits(12).iter().map(|b| char::from(b'0' + b)).collect();
        println!("{t:>6}: preperiod {}, period {}, 0.{bits}...", info.preperiod, info.period);
    }

    let t: Angle = "5/7".parse()?;
    let (a, b) = t.preimages();
    println!("preimages of {t}: {a}, {b}; doubled back: {}, {}", a.double(), b.double());

    let arc = Arc::between(&ang(1, 3), &ang(5, 12));
    println!("arc {arc} doubles to {}", arc.double()?);

    let set = ArcSet::from_arcs([arc.clone(), Arc::between(&ang(7, 12), &ang(2, 3))]);
    let pre = set.sigma_preimage_pow(2)?;
    println!("sigma^-2 of the window has {} arcs, total length {}", pre.len(), pre.total_length());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
