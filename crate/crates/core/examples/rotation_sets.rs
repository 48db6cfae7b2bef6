// Minimal rotation sets of the doubling map, checked against brute force.

use renorm_rays::circle::rat;
use renorm_rays::rotation::{minimal_enclosing_arc, minimal_rotation_set, oracle_rotation_orbits};
use renorm_rays::Result;

pub fn run_example() -> Result<()> {
    for nu in [rat(0, 1), rat(1, 2), rat(1, 3), rat(2, 5), rat(3, 7)] {
        let set = minimal_rotation_set(&nu)?;
        let points: Vec<String> = set.points.iter().map(|t| t.to_string()).collect();
        let (arc, half) = minimal_enclosing_arc(&set.points)?;
        let oracle = oracle_rotation_orbits(&nu)?;
        println!(
            "rho {:>3}: [{}] inside {arc} (semicircle: {half}), oracle agrees: {}",
            set.rho,
            points.join(", "),
            oracle == vec![set.points.clone()]
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
