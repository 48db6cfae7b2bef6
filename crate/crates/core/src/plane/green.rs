use num_complex::Complex64;

use super::Params;

/// Radius past which `2^-n ln|f^n(z)|` equals `G(z)` to double precision.
const BAILOUT: f64 = 1e20;
/// Below this the potential is lost in rounding and reported as zero.
const MIN_SCALE: f64 = 1.0 / (1u64 << 48) as f64;

/// Green's function of the basin of infinity, `lim 2^-n ln|f^n(z)|`;
/// zero when `z` does not escape within the iteration cap.
pub fn green(params: &Params, z: Complex64) -> f64 {
    let mut z = z;
    let mut scale = 1.0;
    for _ in 0..params.max_iter {
        let r = z.norm();
        if r > BAILOUT {
            return scale * r.ln();
        }
        z = params.f(z);
        scale *= 0.5;
        if scale < MIN_SCALE {
            break;
        }
    }
    0.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() < tol
    }

    #[test]
    fn closed_forms() {
        let p0 = Params::new(Complex64::new(0.0, 0.0));
        assert!(close(green(&p0, Complex64::new(2.0, 0.0)), 2f64.ln(), 1e-14));
        assert_eq!(green(&p0, Complex64::from_polar(1.0, 0.7)), 0.0);
        let p2 = Params::new(Complex64::new(-2.0, 0.0));
        let want = ((3.0 + 5f64.sqrt()) / 2.0).ln();
        assert!(close(green(&p2, Complex64::new(3.0, 0.0)), want, 1e-12));
        assert!(close(want, 0.9624, 1e-4));
    }

    #[test]
    fn functional_equation() {
        let p = Params::new(Complex64::new(-0.12, 0.75));
        for z in [Complex64::new(1.5, 0.3), Complex64::new(-0.2, 1.4), Complex64::new(3.0, -4.0)] {
            let g = green(&p, z);
            assert!(g > 0.0);
            assert!(close(green(&p, p.f(z)), 2.0 * g, 1e-12 * (1.0 + g)));
        }
    }
}
