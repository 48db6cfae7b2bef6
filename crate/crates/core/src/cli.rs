//! Command-line front end. Machine output goes to stdout as JSON, logs to
//! stderr. Exit codes: 0 success, 1 domain error or failed check, 2 usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::circle::{parse_rational, Angle, LimitAngle};
use crate::error::{Error, Result};
use crate::lamination::{build, export_svg, verify_unlinked, SvgOptions};
use crate::plane::{
    beta_point, green, parse_complex, periodic_points, render, telescope_check, trace_ray, Params, Scene,
};
use crate::renorm::{
    in_shadow, omega_probe, shadow_kc, subwindow, theta, validate, window, window_at, window_length, OmegaTarget,
    RayPair, Tower,
};
use crate::rotation::{minimal_enclosing_arc, minimal_rotation_set, oracle_rotation_orbits};
use crate::selftest;

/// Caps the worker threads of every parallel computation.
pub const THREADS_VAR: &str = "RENORM_RAYS_THREADS";

const DEFAULT_DEPTH: usize = 3;

#[derive(Parser, Debug)]
#[command(name = "renorm-rays", version, about = "Renormalization windows, angle shadows and external rays of z^2 + c")]
struct Cli {
    /// feigenbaum, rabbit, tune:a/b,c/d, or a JSON file of ray pairs
    #[arg(long, global = true, default_value = "feigenbaum")]
    tower: String,

    /// Number of tower levels (default 3; all levels of a JSON file)
    #[arg(long, global = true)]
    depth: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the ray pairs of a tower
    Tower {
        /// feigenbaum, rabbit or tune; overrides --tower
        kind: Option<String>,
        /// Base pair for `tune`, as a/b,c/d
        #[arg(long)]
        base: Option<String>,
    },
    /// Window s_(n,j) and its four sub-windows
    Window {
        #[arg(long)]
        level: usize,
        #[arg(long, default_value_t = 1)]
        j: u64,
    },
    /// Shadow membership of an angle, or the shadow of K_c with --kc
    Shadow {
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        level: Option<usize>,
        #[arg(long, default_value_t = 1)]
        j: u64,
        #[arg(long)]
        kc: bool,
        /// Binary digits of tau_1 and tau_2 printed with --kc
        #[arg(long, default_value_t = 64)]
        bits: usize,
    },
    /// The semiconjugacy theta at one level
    Theta {
        #[arg(long)]
        level: usize,
        #[arg(long)]
        t: String,
    },
    /// First returns of a limit angle near targets
    Omega {
        #[arg(long, default_value_t = 8)]
        bits: u64,
        #[arg(long, default_value_t = 1 << 16)]
        horizon: u64,
        /// tau1, tau2 or p/q
        #[arg(long, default_value = "tau1")]
        source: String,
        /// Exact targets p/q (default: tau_1 and both its preimages)
        #[arg(long = "target")]
        targets: Vec<String>,
    },
    /// Check every structural requirement of the tower
    Validate,
    /// Minimal rotation set of doubling with rotation number nu
    Rotset {
        #[arg(long)]
        nu: String,
        /// Compare with brute-force enumeration
        #[arg(long)]
        oracle: bool,
    },
    /// Orbit chords of the tower and their pull-backs
    Lamination {
        #[arg(long, default_value_t = 0)]
        preimages: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        geodesic: bool,
    },
    /// Trace an external ray
    Ray {
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = 1e-8)]
        level_min: f64,
    },
    /// Green's function of the basin of infinity
    Green {
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// All points of period dividing m
    Periodic {
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long)]
        m: usize,
    },
    /// Landing point of the level-n ray pair
    Beta {
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long)]
        level: usize,
        #[arg(long, default_value_t = 1e-8)]
        level_min: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Telescope conditions along the orbit of x
    Telescope {
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 0.3)]
        r: f64,
        #[arg(long, default_value_t = 0.5)]
        kappa: f64,
        #[arg(long, default_value_t = 0.01)]
        delta: f64,
        /// Comma-separated times starting at 0
        #[arg(long, conflicts_with = "stages")]
        times: Option<String>,
        /// Use times 0, 1, ..., stages
        #[arg(long, default_value_t = 10)]
        stages: usize,
    },
    /// Render a scene file to a binary PPM image
    Render {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the exact acceptance suite
    Selftest {
        /// Include the numeric criteria
        #[arg(long)]
        all: bool,
    },
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut log = Vec::new();
    let result = match thread_pool() {
        Ok(Some(pool)) => pool.install(|| dispatch(&cli, &mut log)),
        Ok(None) => dispatch(&cli, &mut log),
        Err(e) => Err(e),
    };
    for line in log {
        let _ = writeln!(err, "{line}");
    }
    match result {
        Ok((value, code)) => match serde_json::to_string_pretty(&value) {
            Ok(s) => {
                let _ = writeln!(out, "{s}");
                code
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) | Error::Parse(_) => 2,
        _ => 1,
    }
}

fn thread_pool() -> Result<Option<rayon::ThreadPool>> {
    let Ok(v) = std::env::var(THREADS_VAR) else {
        return Ok(None);
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::InvalidArgument(format!("{THREADS_VAR}={v:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map(Some)
        .map_err(|e| Error::InvalidArgument(e.to_string()))
}

fn to_value(v: impl Serialize) -> Result<serde_json::Value> {
    serde_json::to_value(v).map_err(|e| Error::Numerical(e.to_string()))
}

fn angle(s: &str) -> Result<Angle> {
    s.parse()
}

fn complex(s: &str) -> Result<Params> {
    Ok(Params::new(parse_complex(s)?))
}

fn base_pair(s: &str) -> Result<RayPair> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected a/b,c/d, got {s:?}")))?;
    let (lo, hi) = (angle(a.trim())?, angle(b.trim())?);
    let info = lo.orbit_info();
    if info.preperiod != 0 {
        return Err(Error::InvalidPair(format!("{lo} is not periodic")));
    }
    RayPair::new(info.period, lo, hi)
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum TowerFile {
    Levels { levels: Vec<RayPair> },
    Bare(Vec<RayPair>),
}

fn load_tower(name: &str, depth: Option<usize>) -> Result<Tower> {
    let d = depth.unwrap_or(DEFAULT_DEPTH);
    if d == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    match name {
        "feigenbaum" => Tower::feigenbaum(d),
        "rabbit" => Tower::rabbit(d),
        _ => {
            if let Some(base) = name.strip_prefix("tune:") {
                return Tower::tuned(base_pair(base)?, d);
            }
            let text = fs::read_to_string(name)
                .map_err(|e| Error::InvalidArgument(format!("tower {name:?}: {e}")))?;
            let levels = match serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{name}: {e}")))? {
                TowerFile::Levels { levels } | TowerFile::Bare(levels) => levels,
            };
            let tower = Tower::explicit(levels);
            match depth {
                Some(d) => tower.truncated(d),
                None => Ok(tower),
            }
        }
    }
}

fn dispatch(cli: &Cli, log: &mut Vec<String>) -> Result<(serde_json::Value, i32)> {
    let tower = || load_tower(&cli.tower, cli.depth);
    let ok = |v: serde_json::Value| Ok((v, 0));
    match &cli.command {
        Command::Tower { kind, base } => {
            let t = match (kind.as_deref(), base) {
                (Some("tune"), Some(b)) => Tower::tuned(base_pair(b)?, cli.depth.unwrap_or(DEFAULT_DEPTH))?,
                (Some("tune"), None) => return Err(Error::InvalidArgument("tune needs --base a/b,c/d".into())),
                (Some(k), _) => load_tower(k, cli.depth)?,
                (None, _) => tower()?,
            };
            ok(json!({ "name": t.name(), "depth": t.depth(), "levels": to_value(t.levels())? }))
        }
        Command::Window { level, j } => {
            let t = tower()?;
            let pair = t.level(*level)?;
            let first = window(pair)?;
            ok(json!({
                "level": level,
                "j": j,
                "period": pair.period,
                "window": to_value(window_at(pair, *j)?)?,
                "length": window_length(pair, *j)?.to_string(),
                "lo1": to_value(&first.lo1)?,
                "hi1": to_value(&first.hi1)?,
                "subwindow": to_value(subwindow(pair, *j)?)?,
            }))
        }
        Command::Shadow { t, level, j, kc, bits } => {
            let tw = tower()?;
            if *kc {
                let depth = tw.depth();
                let s = shadow_kc(&tw, depth)?;
                let digits = |l: &LimitAngle| -> Result<String> {
                    Ok(l.bits(*bits)?.iter().map(|b| char::from(b'0' + b)).collect())
                };
                return ok(json!({
                    "depth": depth,
                    "window": to_value(&s.window)?,
                    "tau1": digits(&s.tau1)?,
                    "tau2": digits(&s.tau2)?,
                }));
            }
            let (Some(t), Some(level)) = (t, level) else {
                return Err(Error::InvalidArgument("shadow needs --t and --level, or --kc".into()));
            };
            let a = angle(t)?;
            ok(json!({ "t": to_value(&a)?, "level": level, "j": j, "in_shadow": in_shadow(&a, &tw, *level, *j)? }))
        }
        Command::Theta { level, t } => {
            let tw = tower()?;
            let a = angle(t)?;
            ok(json!({ "t": to_value(&a)?, "level": level, "theta": to_value(theta(&tw, *level, &a)?)? }))
        }
        Command::Omega { bits, horizon, source, targets } => {
            let tw = tower()?;
            let kc = shadow_kc(&tw, 1)?;
            let src = match source.as_str() {
                "tau1" => kc.tau1.clone(),
                "tau2" => kc.tau2.clone(),
                s => LimitAngle::constant(angle(s)?),
            };
            let targets: Vec<OmegaTarget> = if targets.is_empty() {
                vec![
                    OmegaTarget::Limit(kc.tau1.clone()),
                    OmegaTarget::Limit(kc.tau1.preimage(0)),
                    OmegaTarget::Limit(kc.tau1.preimage(1)),
                ]
            } else {
                targets.iter().map(|s| angle(s).map(OmegaTarget::Exact)).collect::<Result<_>>()?
            };
            let hits = omega_probe(&src, &targets, *horizon, *bits)?;
            ok(json!({ "source": src.name(), "bits": bits, "horizon": horizon, "hits": to_value(hits)? }))
        }
        Command::Validate => {
            let report = validate(&tower()?);
            let pass = report.iter().all(|r| r.pass);
            for r in report.iter().filter(|r| !r.pass) {
                log.push(format!("check {} failed", r.check));
            }
            Ok((to_value(report)?, if pass { 0 } else { 1 }))
        }
        Command::Rotset { nu, oracle } => {
            let nu = parse_rational(nu)?;
            let set = minimal_rotation_set(&nu)?;
            let (enclosing, _) = minimal_enclosing_arc(&set.points)?;
            let mut v = json!({
                "points": to_value(&set.points)?,
                "rho": set.rho.to_string(),
                "enclosing": to_value(&enclosing)?,
            });
            let mut code = 0;
            if *oracle {
                let orbits = oracle_rotation_orbits(&nu)?;
                let agrees = orbits == vec![set.points.clone()];
                code = if agrees { 0 } else { 1 };
                v["oracle"] = json!({ "orbits": to_value(&orbits)?, "agrees": agrees });
            }
            Ok((v, code))
        }
        Command::Lamination { preimages, svg, geodesic } => {
            let tw = tower()?;
            let family = build(&tw, tw.depth(), *preimages)?;
            let report = verify_unlinked(&family);
            if let Some(path) = svg {
                fs::write(path, export_svg(&family, SvgOptions { geodesic: *geodesic }))
                    .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
                log.push(format!("wrote {}", path.display()));
            }
            let code = if report.pass { 0 } else { 1 };
            Ok((json!({ "chords": to_value(&family)?, "unlinked": to_value(report)? }), code))
        }
        Command::Ray { c, t, level_min } => ok(to_value(trace_ray(&complex(c)?, &angle(t)?, *level_min)?)?),
        Command::Green { c, z } => {
            let z = parse_complex(z)?;
            ok(json!({ "z": [z.re, z.im], "green": green(&complex(c)?, z) }))
        }
        Command::Periodic { c, m } => ok(to_value(periodic_points(&complex(c)?, *m)?)?),
        Command::Beta { c, level, level_min, tol } => {
            ok(to_value(beta_point(&complex(c)?, &tower()?, *level, *level_min, *tol)?)?)
        }
        Command::Telescope { c, x, r, kappa, delta, times, stages } => {
            let times: Vec<usize> = match times {
                Some(s) => s
                    .split(',')
                    .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad time {x:?}"))))
                    .collect::<Result<_>>()?,
                None => (0..=*stages).collect(),
            };
            let x: Complex64 = parse_complex(x)?;
            ok(to_value(telescope_check(&complex(c)?, x, *r, *kappa, *delta, &times)?)?)
        }
        Command::Render { scene, out } => {
            let text = fs::read_to_string(scene)
                .map_err(|e| Error::InvalidArgument(format!("{}: {e}", scene.display())))?;
            let s = Scene::from_json(&text)?;
            let img = render(&s.params(), &s)?;
            fs::write(out, &img).map_err(|e| Error::InvalidArgument(format!("{}: {e}", out.display())))?;
            ok(json!({ "out": out.display().to_string(), "width": s.width, "height": s.height, "bytes": img.len() }))
        }
        Command::Selftest { all } => {
            let mut results = selftest::exact_suite();
            if *all {
                results.extend(selftest::numeric_suite());
            }
            for r in &results {
                log.push(format!("{} {:>2} {}: {}", if r.pass { "PASS" } else { "FAIL" }, r.id, r.name, r.detail));
            }
            let code = if results.iter().all(|r| r.pass) { 0 } else { 1 };
            Ok((to_value(results)?, code))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("renorm-rays").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn json_of(s: &str) -> serde_json::Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn rotset_examples() {
        let (code, out, _) = call(&["rotset", "--nu", "1/2"]);
        assert_eq!(code, 0);
        let v = json_of(&out);
        assert_eq!(v["rho"], "1/2");
        assert_eq!(v["points"][0], json!({"num": "1", "den": "3"}));
        assert_eq!(v["points"][1], json!({"num": "2", "den": "3"}));
        assert_eq!(call(&["rotset", "--nu", "3/2"]).0, 2);
        assert_eq!(call(&["rotset", "--nu", "2/5", "--oracle"]).0, 0);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&[]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["rotset", "--nu", "1/2", "--bogus"]).0, 2);
        assert_eq!(call(&["window", "--level", "9"]).0, 2);
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("selftest"));
    }

    #[test]
    fn validate_and_towers() {
        let (code, out, _) = call(&["validate", "--tower", "feigenbaum", "--depth", "3"]);
        assert_eq!(code, 0);
        assert!(json_of(&out).as_array().unwrap().iter().all(|r| r["pass"] == true));
        let (code, out, _) = call(&["tower", "tune", "--base", "1/7,2/7", "--depth", "2"]);
        assert_eq!(code, 0);
        assert_eq!(json_of(&out)["levels"][1]["period"], 9);
        // not sigma^2-periodic
        assert_eq!(call(&["validate", "--tower", "tune:1/3,1/2"]).0, 1);
    }

    #[test]
    fn tower_file() {
        let dir = std::env::temp_dir().join(format!("renorm-rays-cli-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.json");
        let pair = |p: u64, a: &str, b: &str| json!({"period": p, "lo": {"num": a, "den": "5"}, "hi": {"num": b, "den": "5"}});
        let body = json!({"levels": [
            {"period": 2, "lo": {"num": "1", "den": "3"}, "hi": {"num": "2", "den": "3"}},
            pair(4, "1", "2"),
        ]});
        fs::write(&path, body.to_string()).unwrap();
        let (code, out, err) = call(&["validate", "--tower", path.to_str().unwrap()]);
        assert_eq!(code, 1);
        assert!(err.contains("nesting-S"));
        assert!(out.contains("\"witness\""));
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn plane_commands() {
        let (code, out, _) = call(&["green", "--c", "0", "--z", "2"]);
        assert_eq!(code, 0);
        assert!((json_of(&out)["green"].as_f64().unwrap() - 2f64.ln()).abs() < 1e-14);
        let (code, out, _) = call(&["ray", "--c", "-1", "--t", "1/3"]);
        assert_eq!(code, 0);
        let land = &json_of(&out)["landing"]["point"];
        assert!((land[0].as_f64().unwrap() - (1.0 - 5f64.sqrt()) / 2.0).abs() < 1e-6);
        let (code, out, _) = call(&["periodic", "--c", "-1", "--m", "2"]);
        assert_eq!(code, 0);
        assert_eq!(json_of(&out).as_array().unwrap().len(), 4);
        let (code, out, _) = call(&["telescope", "--c", "-2", "--x", "2", "--stages", "5"]);
        assert_eq!(code, 0);
        assert_eq!(json_of(&out)["pass"], true);
        assert_eq!(call(&["ray", "--c", "abc", "--t", "1/3"]).0, 2);
    }

    #[test]
    fn combinatorial_commands() {
        let (code, out, _) = call(&["theta", "--level", "1", "--t", "4/5"]);
        assert_eq!(code, 0);
        assert_eq!(json_of(&out)["theta"]["value"], json!({"num": "1", "den": "3"}));
        assert_eq!(call(&["theta", "--level", "1", "--t", "0"]).0, 1);
        let (_, out, _) = call(&["shadow", "--t", "2/5", "--level", "1"]);
        assert_eq!(json_of(&out)["in_shadow"], true);
        let (_, out, _) = call(&["shadow", "--kc", "--depth", "2", "--bits", "8"]);
        assert_eq!(json_of(&out)["tau1"], "01101001");
        let (_, out, _) = call(&["window", "--level", "1", "--j", "2"]);
        assert_eq!(json_of(&out)["length"], "1/6");
        let (code, out, _) = call(&["omega", "--bits", "4", "--horizon", "64", "--target", "0", "--source", "1/3"]);
        assert_eq!(code, 0);
        assert_eq!(json_of(&out)["hits"][0]["first_hit"], serde_json::Value::Null);
    }

    #[test]
    fn deterministic_output() {
        let a = call(&["lamination", "--depth", "3", "--preimages", "2"]);
        let b = call(&["lamination", "--depth", "3", "--preimages", "2"]);
        assert_eq!(a, b);
        assert_eq!(a.0, 0);
    }
}
