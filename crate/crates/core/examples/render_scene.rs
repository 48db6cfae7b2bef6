// Renders the basilica with its alpha rays and an equipotential to a PPM file.

use renorm_rays::plane::{render, Scene};
use renorm_rays::Result;

const SCENE: &str = r#"{
  "c": [-1.0, 0.0],
  "width": 240,
  "height": 160,
  "center": [0.0, 0.0],
  "half_width": 2.0,
  "layers": [
    {"kind": "julia", "max_iter": 300},
    {"kind": "equipotential", "levels": [0.05, 0.2]},
    {"kind": "rays", "angles": ["1/3", "2/3"], "level_min": 1e-6},
    {"kind": "points", "points": [[-0.6180339887, 0.0]], "radius": 2}
  ]
}"#;

pub fn run_example() -> Result<()> {
    let scene = Scene::from_json(SCENE)?;
    let image = render(&scene.params(), &scene)?;
    let path = std::env::temp_dir().join("basilica.ppm");
    std::fs::write(&path, &image).map_err(|e| renorm_rays::Error::InvalidArgument(e.to_string()))?;
    println!("wrote {} ({} bytes)", path.display(), image.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
