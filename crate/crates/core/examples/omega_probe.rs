// Recurrence of the Feigenbaum limit angle onto itself and its two preimages.

use std::time::Instant;

use renorm_rays::renorm::{omega_probe, shadow_kc, OmegaTarget, Tower};
use renorm_rays::Result;

pub fn run_example() -> Result<()> {
    let tower = Tower::feigenbaum(1)?;
    let kc = shadow_kc(&tower, 1)?;
    let targets = [
        OmegaTarget::Limit(kc.tau1.clone()),
        OmegaTarget::Limit(kc.tau1.preimage(0)),
        OmegaTarget::Limit(kc.tau1.preimage(1)),
    ];
    let start = Instant::now();
    for hit in omega_probe(&kc.tau1, &targets, 1 << 16, 8)? {
        match hit.first_hit {
            Some(k) => println!("{:<24} first hit at k = {k}", hit.target),
            None => println!("{:<24} no certified hit", hit.target),
        }
    }
    eprintln!("elapsed {:?}", start.elapsed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
