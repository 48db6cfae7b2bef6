// Telescope conditions at repelling fixed points.

use num_complex::Complex64;
use renorm_rays::plane::{telescope_check, Params};
use renorm_rays::Result;

pub fn run_example() -> Result<()> {
    let times: Vec<usize> = (0..=10).collect();
    for (c, x, kappa) in [(-2.0, 2.0, 0.5), (0.0, 1.0, 0.5), (-2.0, 2.0, 1.5)] {
        let params = Params::new(Complex64::new(c, 0.0));
        let report = telescope_check(&params, Complex64::new(x, 0.0), 0.3, kappa, 0.01, &times)?;
        let margin = report.stages.iter().map(|s| s.margin).fold(f64::INFINITY, f64::min);
        println!(
            "c = {c}, x = {x}, kappa = {kappa}: pass {}, smallest margin {margin:.4}, density holds at {} of {} stages",
            report.pass,
            report.stages.iter().filter(|s| s.density_ok).count(),
            report.stages.len()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
