// Derivative growth of f^(p_n) along sampled small Julia sets at the Feigenbaum parameter.

use num_complex::Complex64;
use renorm_rays::plane::{expansion_report, feigenbaum_parameter, small_julia_sample, Params};
use renorm_rays::Result;

pub fn run_example() -> Result<()> {
    let params = Params::new(Complex64::new(feigenbaum_parameter(8)?, 0.0));
    for n in 1..=5 {
        let p = 1usize << n;
        let sample = small_julia_sample(&params, p, 200, 7)?;
        let r = expansion_report(&params, &sample, p);
        if let (Some(e), Some(s)) = (r.euclidean, r.spherical) {
            println!(
                "n = {n}, p = {p:>2}: |D f^p| in [{:.4}, {:.4}], geometric mean {:.4}; spherical min {:.4}",
                e.min, e.max, e.geometric_mean, s.min
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
