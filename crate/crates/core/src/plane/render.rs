//! Deterministic raster images of Julia sets, equipotentials, rays and points.
//!
//! A scene is read from JSON:
//!
//! ```json
//! {
//!   "c": [-1.0, 0.0],
//!   "width": 400, "height": 400,
//!   "center": [0.0, 0.0], "half_width": 2.0,
//!   "layers": [
//!     {"kind": "julia", "max_iter": 500},
//!     {"kind": "equipotential", "levels": [10.0]},
//!     {"kind": "rays", "angles": ["1/3", "2/3"], "level_min": 1e-6},
//!     {"kind": "points", "points": [[-0.618, 0.0]], "radius": 3}
//!   ]
//! }
//! ```
//!
//! Layers are painted in order. Every layer accepts an optional `"color": [r, g, b]`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{green, trace_ray, Params};
use crate::circle::Angle;
use crate::error::{Error, Result};

const MAX_PIXELS: usize = 1 << 26;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    pub c: [f64; 2],
    pub width: usize,
    pub height: usize,
    #[serde(default)]
    pub center: [f64; 2],
    /// Half the width of the view in the plane; the height follows the aspect ratio.
    pub half_width: f64,
    pub layers: Vec<Layer>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Layer {
    /// Escape time; points that stay bounded for `max_iter` steps are painted.
    Julia {
        #[serde(default = "default_max_iter")]
        max_iter: usize,
        color: Option<[u8; 3]>,
    },
    /// Level curves `G = level`.
    Equipotential {
        #[serde(default = "default_levels")]
        levels: Vec<f64>,
        color: Option<[u8; 3]>,
    },
    /// External rays given as `"p/q"` strings.
    Rays {
        angles: Vec<String>,
        #[serde(default = "default_level_min")]
        level_min: f64,
        color: Option<[u8; 3]>,
    },
    Points {
        points: Vec<[f64; 2]>,
        #[serde(default = "default_radius")]
        radius: usize,
        color: Option<[u8; 3]>,
    },
}

fn default_max_iter() -> usize {
    500
}

fn default_levels() -> Vec<f64> {
    vec![10.0]
}

fn default_level_min() -> f64 {
    1e-6
}

fn default_radius() -> usize {
    2
}

impl Scene {
    pub fn from_json(s: &str) -> Result<Self> {
        let scene: Scene = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        scene.check()?;
        Ok(scene)
    }

    pub fn params(&self) -> Params {
        Params::new(Complex64::new(self.c[0], self.c[1]))
    }

    fn check(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 || self.width.saturating_mul(self.height) > MAX_PIXELS {
            return Err(Error::InvalidArgument(format!(
                "image size {}x{} out of range",
                self.width, self.height
            )));
        }
        if !(self.half_width > 0.0 && self.half_width.is_finite()) {
            return Err(Error::InvalidArgument("half_width must be positive".into()));
        }
        Ok(())
    }
}

struct Canvas {
    width: usize,
    height: usize,
    center: Complex64,
    /// Plane units per pixel.
    scale: f64,
    rgb: Vec<u8>,
}

impl Canvas {
    fn point(&self, i: usize, j: usize) -> Complex64 {
        let x = (i as f64 + 0.5 - self.width as f64 / 2.0) * self.scale;
        let y = (self.height as f64 / 2.0 - j as f64 - 0.5) * self.scale;
        self.center + Complex64::new(x, y)
    }

    /// Pixel coordinates, possibly off the canvas.
    fn pixel(&self, z: Complex64) -> (f64, f64) {
        let d = (z - self.center) / self.scale;
        (d.re + self.width as f64 / 2.0 - 0.5, self.height as f64 / 2.0 - d.im - 0.5)
    }

    fn put(&mut self, i: i64, j: i64, color: [u8; 3]) {
        if i >= 0 && j >= 0 && (i as usize) < self.width && (j as usize) < self.height {
            let k = 3 * (j as usize * self.width + i as usize);
            self.rgb[k..k + 3].copy_from_slice(&color);
        }
    }

    fn segment(&mut self, a: Complex64, b: Complex64, color: [u8; 3]) {
        let (x0, y0) = self.pixel(a);
        let (x1, y1) = self.pixel(b);
        let span = (x1 - x0).abs().max((y1 - y0).abs());
        if !span.is_finite() || span > 1e6 {
            return;
        }
        let steps = span.ceil() as usize + 1;
        for s in 0..=steps {
            let u = s as f64 / steps as f64;
            self.put((x0 + u * (x1 - x0)).round() as i64, (y0 + u * (y1 - y0)).round() as i64, color);
        }
    }

    /// Paints every pixel for which `f` returns true, rows in parallel.
    fn fill(&mut self, color: [u8; 3], f: impl Fn(usize, usize) -> bool + Sync) {
        let w = self.width;
        self.rgb.par_chunks_mut(3 * w).enumerate().for_each(|(j, row)| {
            for i in 0..w {
                if f(i, j) {
                    row[3 * i..3 * i + 3].copy_from_slice(&color);
                }
            }
        });
    }
}

fn escapes(params: &Params, z: Complex64, max_iter: usize) -> bool {
    let r2 = params.escape_radius * params.escape_radius;
    let mut z = z;
    for _ in 0..max_iter {
        if z.norm_sqr() > r2 {
            return true;
        }
        z = params.f(z);
    }
    false
}

/// Renders the scene as a binary PPM (P6) image.
pub fn render(params: &Params, scene: &Scene) -> Result<Vec<u8>> {
    scene.check()?;
    let mut canvas = Canvas {
        width: scene.width,
        height: scene.height,
        center: Complex64::new(scene.center[0], scene.center[1]),
        scale: 2.0 * scene.half_width / scene.width as f64,
        rgb: vec![255; 3 * scene.width * scene.height],
    };
    for layer in &scene.layers {
        match layer {
            Layer::Julia { max_iter, color } => {
                let grid = &canvas;
                let inside: Vec<bool> = (0..grid.height)
                    .into_par_iter()
                    .flat_map_iter(|j| (0..grid.width).map(move |i| !escapes(params, grid.point(i, j), *max_iter)))
                    .collect();
                let w = canvas.width;
                canvas.fill(color.unwrap_or([0, 0, 0]), |i, j| inside[j * w + i]);
            }
            Layer::Equipotential { levels, color } => {
                let grid = &canvas;
                let g: Vec<f64> = (0..grid.height)
                    .into_par_iter()
                    .flat_map_iter(|j| (0..grid.width).map(move |i| green(params, grid.point(i, j))))
                    .collect();
                let (w, h) = (canvas.width, canvas.height);
                // a pixel is on the curve when the level separates it from its right or lower neighbour
                canvas.fill(color.unwrap_or([0, 0, 255]), |i, j| {
                    let here = g[j * w + i];
                    levels.iter().any(|&l| {
                        let cut = |other: f64| (here >= l) != (other >= l);
                        (i + 1 < w && cut(g[j * w + i + 1])) || (j + 1 < h && cut(g[(j + 1) * w + i]))
                    })
                });
            }
            Layer::Rays { angles, level_min, color } => {
                let angles = angles
                    .iter()
                    .map(|s| s.parse::<Angle>())
                    .collect::<Result<Vec<_>>>()?;
                let paths = angles
                    .par_iter()
                    .map(|t| trace_ray(params, t, *level_min))
                    .collect::<Result<Vec<_>>>()?;
                let color = color.unwrap_or([220, 0, 0]);
                for path in &paths {
                    for w in path.points.windows(2) {
                        canvas.segment(w[0], w[1], color);
                    }
                    if let (Some(land), Some(last)) = (&path.landing, path.last()) {
                        canvas.segment(last, land.point, color);
                    }
                }
            }
            Layer::Points { points, radius, color } => {
                let color = color.unwrap_or([0, 160, 0]);
                let r = *radius as i64;
                for p in points {
                    let (x, y) = canvas.pixel(Complex64::new(p[0], p[1]));
                    let (x, y) = (x.round() as i64, y.round() as i64);
                    for dj in -r..=r {
                        for di in -r..=r {
                            if di * di + dj * dj <= r * r {
                                canvas.put(x + di, y + dj, color);
                            }
                        }
                    }
                }
            }
        }
    }
    let mut out = format!("P6\n{} {}\n255\n", canvas.width, canvas.height).into_bytes();
    out.extend_from_slice(&canvas.rgb);
    Ok(out)
}
