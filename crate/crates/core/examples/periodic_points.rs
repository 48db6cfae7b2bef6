// Periodic points with multipliers, and the landing point of a tower's ray pair.

use num_complex::Complex64;
use renorm_rays::plane::{beta_point, feigenbaum_parameter, periodic_points, Params};
use renorm_rays::renorm::Tower;
use renorm_rays::Result;

pub fn run_example() -> Result<()> {
    let basilica = Params::new(Complex64::new(-1.0, 0.0));
    for q in periodic_points(&basilica, 2)? {
        println!("z = {:>9.6}, |multiplier| {:.6}, residual {:.0e}", q.z.re, q.multiplier.norm(), q.residual);
    }

    let c = feigenbaum_parameter(8)?;
    let params = Params::new(Complex64::new(c, 0.0));
    let tower = Tower::feigenbaum(3)?;
    for n in 1..=3 {
        let b = beta_point(&params, &tower, n, 1e-8, 1e-6)?;
        let beta = b.beta.map(|z| format!("{:.9}", z.re)).unwrap_or_else(|| "none".into());
        println!("c = {c:.9}, level {n}: beta = {beta}, matched {}", b.matched);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
