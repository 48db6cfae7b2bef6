// Superstable parameters of the period-doubling cascade and the ratio of their gaps.

use renorm_rays::plane::feigenbaum_parameter;
use renorm_rays::Result;

pub fn run_example() -> Result<()> {
    let s: Vec<f64> = (0..=12).map(feigenbaum_parameter).collect::<Result<_>>()?;
    for n in 1..s.len() {
        let ratio = if n >= 2 { (s[n - 1] - s[n - 2]) / (s[n] - s[n - 1]) } else { f64::NAN };
        println!("s_{n:<2} = {:.12}  gap ratio {ratio:.6}", s[n]);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
