// Renormalization towers built by tuning a base pair by itself.

use renorm_rays::circle::ang;
use renorm_rays::renorm::{tune, RayPair, Tower};
use renorm_rays::Result;

pub fn run_example() -> Result<()> {
    let base = RayPair::new(2, ang(1, 3), ang(2, 3))?;
    for t in [ang(0, 1), ang(1, 3), ang(2, 3)] {
        println!("tune {base} at {t} = {}", tune(&base, &t)?);
    }

    for tower in [Tower::feigenbaum(4)?, Tower::rabbit(3)?] {
        println!("{}:", tower.name());
        for (n, pair) in tower.levels().iter().enumerate() {
            let (lo, hi) = pair.words()?;
            let word = |w: &[u8]| -> String { w.iter().take(27).map(|b| char::from(b'0' + b)).collect() };
            println!("  level {}: period {:>2}, lo 0.({}), hi 0.({})", n + 1, pair.period, word(&lo), word(&hi));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
