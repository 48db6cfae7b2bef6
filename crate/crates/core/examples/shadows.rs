// Angle shadows of small Julia sets and the limit angles of K_c.

use renorm_rays::circle::ang;
use renorm_rays::renorm::{in_shadow, itinerary_point, shadow_component, shadow_kc, ComponentAddress, Tower};
use renorm_rays::Result;

pub fn run_example() -> Result<()> {
    let tower = Tower::feigenbaum(3)?;
    for t in [ang(1, 3), ang(2, 5), ang(0, 1), ang(7, 17)] {
        let levels: Vec<bool> = (1..=3).map(|n| in_shadow(&t, &tower, n, 1)).collect::<Result<_>>()?;
        println!("{t:>5} in the shadow of J_n at levels 1..3: {levels:?}");
    }

    let kc = shadow_kc(&tower, 3)?;
    let digits = |bits: Vec<u8>| -> String { bits.iter().map(|b| char::from(b'0' + b)).collect() };
    println!("tau1 = 0.{}...", digits(kc.tau1.bits(32)?));
    println!("tau2 = 0.{}...", digits(kc.tau2.bits(32)?));

    let critical = ComponentAddress::critical(&tower, 2)?;
    let shadow = shadow_component(&tower, &critical, 2)?;
    println!("critical component {:?}: {:?}, {} arcs", critical.0, shadow.classification, shadow.fine.len());

    let t = itinerary_point(&tower, 1, 2, &["hi.end"], &["hi.start", "lo.end"])?;
    println!("angle with itinerary hi.end (hi.start lo.end)*: {t}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
