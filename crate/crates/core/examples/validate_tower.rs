// Structural checks on a good tower and on two broken ones.

use renorm_rays::circle::ang;
use renorm_rays::renorm::{validate, RayPair, Tower};
use renorm_rays::Result;

pub fn run_example() -> Result<()> {
    let towers = [
        Tower::feigenbaum(3)?,
        Tower::explicit(vec![
            RayPair::unchecked(2, ang(1, 3), ang(2, 3)),
            RayPair::unchecked(4, ang(1, 5), ang(2, 5)),
        ]),
        Tower::explicit(vec![RayPair::unchecked(2, ang(1, 3), ang(1, 2))]),
    ];
    for tower in &towers {
        println!("{tower:?}");
        for r in validate(tower) {
            match r.witness {
                None => println!("  pass {}", r.check),
                Some(w) => println!("  FAIL {}: {w}", r.check),
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
