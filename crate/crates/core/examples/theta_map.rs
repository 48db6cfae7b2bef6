// The map theta, which turns sigma^p on the shadow of J_n into doubling.

use renorm_rays::circle::ang;
use renorm_rays::renorm::{itinerary_point, theta, theta_arcs, Tower};
use renorm_rays::Result;

pub fn run_example() -> Result<()> {
    let tower = Tower::feigenbaum(2)?;
    let (s0, s1) = theta_arcs(&tower, 1)?;
    println!("level 1: digit 0 on {s0}, digit 1 on {s1}");
    for t in [ang(4, 5), ang(1, 5), ang(2, 3), ang(1, 3)] {
        let v = theta(&tower, 1, &t)?;
        println!(
            "theta({t}) = {} from prefix {:?} cycle {:?}{}",
            v.value,
            v.prefix,
            v.cycle,
            if v.boundary_collapse { ", boundary orbit" } else { "" }
        );
    }
    let p = tower.level(2)?.period;
    let t = itinerary_point(&tower, 2, p, &["lo.start"], &["lo.end", "hi.start"])?;
    let (a, b) = (theta(&tower, 2, &t)?, theta(&tower, 2, &t.iterate(p))?);
    println!("level 2: theta({t}) = {}, theta(sigma^4 t) = {}", a.value, b.value);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
