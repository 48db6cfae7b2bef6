// Windows s_(n,j) and their four sub-windows for the first Feigenbaum levels.

use renorm_rays::renorm::{subwindow, window, window_at, Tower};
use renorm_rays::Result;

pub fn run_example() -> Result<()> {
    let tower = Tower::feigenbaum(2)?;
    for pair in tower.levels() {
        let w = window(pair)?;
        println!("{pair}: s = {:?}, inner endpoints {} and {}", w.s.arcs(), w.lo1, w.hi1);
        for j in 1..=pair.period {
            let s = window_at(pair, j)?;
            let sub = subwindow(pair, j)?;
            println!("  j = {j}: {:?}", s.arcs());
            for c in &sub.detail {
                println!("    {:<9} {} covers {}", c.label, c.arc, c.covers);
            }
            if sub.extra_count != "0" {
                println!("    {} further intersection arcs", sub.extra_count);
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
