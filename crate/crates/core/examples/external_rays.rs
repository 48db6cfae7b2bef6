// External rays of the basilica and of the Chebyshev map, traced down to their landing points.

use num_complex::Complex64;
use renorm_rays::circle::{ang, Angle};
use renorm_rays::plane::{green, trace_ray, Params};
use renorm_rays::Result;

pub fn run_example() -> Result<()> {
    let cases = [
        (Complex64::new(-1.0, 0.0), ang(1, 3)),
        (Complex64::new(-1.0, 0.0), ang(2, 3)),
        (Complex64::new(-2.0, 0.0), Angle::zero()),
        (Complex64::new(-0.12, 0.75), ang(1, 7)),
    ];
    for (c, t) in cases {
        let params = Params::new(c);
        let ray = trace_ray(&params, &t, 1e-8)?;
        let last = ray.last().expect("ray starts far out");
        print!("c = {c}, t = {t}: {} points down to G = {:.1e}", ray.points.len(), green(&params, last));
        match &ray.landing {
            Some(l) => println!(", lands at {:.9} (residual {:.0e})", l.point, l.residual),
            None => println!(", no landing point found"),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
