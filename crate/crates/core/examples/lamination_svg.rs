// Orbit chords of the rabbit tower, pulled back and drawn as an SVG chord diagram.

use renorm_rays::lamination::{build, export_svg, verify_unlinked, SvgOptions};
use renorm_rays::renorm::Tower;
use renorm_rays::Result;

pub fn run_example() -> Result<()> {
    let tower = Tower::rabbit(2)?;
    let family = build(&tower, 2, 3)?;
    let report = verify_unlinked(&family);
    println!("{} chords, unlinked: {}", report.chords, report.pass);

    let path = std::env::temp_dir().join("rabbit-lamination.svg");
    let svg = export_svg(&family, SvgOptions { geodesic: true });
    std::fs::write(&path, &svg).map_err(|e| renorm_rays::Error::InvalidArgument(e.to_string()))?;
    println!("wrote {} ({} bytes)", path.display(), svg.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
