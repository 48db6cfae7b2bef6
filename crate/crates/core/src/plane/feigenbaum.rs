use crate::error::{Error, Result};

pub const MAX_DEPTH: usize = 12;

/// `f_c^(2^n)(0)`
fn critical_return(c: f64, n: usize) -> f64 {
    let mut z = 0.0;
    for _ in 0..(1usize << n) {
        z = z * z + c;
    }
    z
}

fn bisect(n: usize, mut a: f64, mut b: f64) -> Result<f64> {
    let (mut fa, fb) = (critical_return(a, n), critical_return(b, n));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Numerical(format!(
            "no sign change of f^(2^{n})(0) on [{a}, {b}]"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid == a || mid == b {
            break;
        }
        let fm = critical_return(mid, n);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// The real superstable parameter `s_n` of period `2^n`, by bisection on
/// `f_c^(2^n)(0) = 0` inside a bracket predicted from the two previous ones.
pub fn feigenbaum_parameter(depth: usize) -> Result<f64> {
    if depth > MAX_DEPTH {
        return Err(Error::InvalidArgument(format!("depth {depth} above {MAX_DEPTH}")));
    }
    let mut s = vec![0.0];
    for n in 1..=depth {
        let next = match n {
            1 => bisect(1, -1.5, -0.5)?,
            2 => bisect(2, -1.35, -1.15)?,
            _ => {
                let d = s[n - 2] - s[n - 1];
                // s_n sits about d/4.67 below s_(n-1), the accumulation point about d/3.67
                bisect(n, s[n - 1] - 0.25 * d, s[n - 1] - 0.15 * d)?
            }
        };
        s.push(next);
    }
    Ok(s[depth])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn superstable_parameters() {
        assert_eq!(feigenbaum_parameter(0).unwrap(), 0.0);
        assert_eq!(feigenbaum_parameter(1).unwrap(), -1.0);
        assert!((feigenbaum_parameter(2).unwrap() + 1.3107026).abs() < 1e-7);
        // s_8 itself is still 9e-6 away from the limit; s_10 is within 1e-6
        let (s7, s8) = (feigenbaum_parameter(7).unwrap(), feigenbaum_parameter(8).unwrap());
        assert!((s8 + 1.4011552).abs() < 1e-5);
        assert!((feigenbaum_parameter(10).unwrap() + 1.4011552).abs() < 1e-6);
        let limit = s8 + (s8 - s7) / (4.6692 - 1.0);
        assert!((limit + 1.4011552).abs() < 1e-6, "{limit}");
        assert!(feigenbaum_parameter(13).is_err());
    }

    #[test]
    fn ratios_approach_feigenbaum_delta() {
        let s: Vec<f64> = (0..=10).map(|n| feigenbaum_parameter(n).unwrap()).collect();
        let delta = (s[8] - s[7]) / (s[9] - s[8]);
        assert!((delta - 4.6692).abs() < 1e-2, "{delta}");
        assert!(s.windows(2).all(|w| w[1] < w[0]));
    }
}
