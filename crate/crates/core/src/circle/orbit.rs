//! Preperiod and period of rational angles under doubling.
//!
//! For `t = a/b` in lowest terms write `b = 2^k m` with `m` odd. Then `t` has
//! preperiod `k` and period equal to the multiplicative order of 2 modulo `m`
//! (period 1 when `m = 1`).

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::angle::{odd_part, Angle};

/// Exact orbit shape of a rational angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct OrbitInfo {
    pub preperiod: u64,
    pub period: u64,
}

impl Angle {
    pub fn orbit_info(&self) -> OrbitInfo {
        let (preperiod, odd) = odd_part(self.denom().magnitude());
        OrbitInfo {
            preperiod,
            period: multiplicative_order_of_two(&odd),
        }
    }
}

/// Order of 2 in `(Z/mZ)^*` for odd `m`; returns 1 for `m = 1`.
pub fn multiplicative_order_of_two(m: &BigUint) -> u64 {
    if m.is_one() || m.is_zero() {
        return 1;
    }
    if let Some(m) = m.to_u64() {
        return order_u64(m);
    }
    // Large odd moduli only arise from tower angles, whose orders are small.
    let two = BigUint::from(2u32);
    let mut x = two.clone() % m;
    let mut k = 1u64;
    while !x.is_one() {
        x = (x * &two) % m;
        k += 1;
    }
    k
}

fn order_u64(m: u64) -> u64 {
    let mut phi = 1u64;
    let mut factors = factorize(m);
    factors.sort_unstable();
    let mut i = 0;
    while i < factors.len() {
        let p = factors[i];
        let mut e = 0;
        while i < factors.len() && factors[i] == p {
            e += 1;
            i += 1;
        }
        phi *= (p - 1) * p.pow(e - 1);
    }
    let mut primes = factorize(phi);
    primes.sort_unstable();
    primes.dedup();
    let mut order = phi;
    for q in primes {
        while order % q == 0 && pow_mod(2, order / q, m) == 1 {
            order /= q;
        }
    }
    order
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

// Pollard rho with Floyd cycle detection.
fn find_divisor(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

fn factorize(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            out.push(m);
            continue;
        }
        let mut small = false;
        for p in [2u64, 3, 5, 7, 11, 13] {
            if m % p == 0 {
                out.push(p);
                stack.push(m / p);
                small = true;
                break;
            }
        }
        if !small {
            let d = find_divisor(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::angle::ang;

    // Brute force on machine integers: walk a -> 2a mod b until a value repeats.
    fn brute(a: u64, b: u64) -> (u64, u64) {
        let mut first_seen = vec![u64::MAX; b as usize];
        let mut x = a % b;
        let mut k = 0u64;
        loop {
            if first_seen[x as usize] != u64::MAX {
                let first = first_seen[x as usize];
                return (first, k - first);
            }
            first_seen[x as usize] = k;
            x = (2 * x) % b;
            k += 1;
        }
    }

    #[test]
    fn examples() {
        let info = ang(1, 3).orbit_info();
        assert_eq!((info.preperiod, info.period), (0, 2));
        let info = ang(5, 12).orbit_info();
        assert_eq!((info.preperiod, info.period), (2, 2));
        let info = Angle::zero().orbit_info();
        assert_eq!((info.preperiod, info.period), (0, 1));
    }

    #[test]
    fn agrees_with_cycle_detection_up_to_10k() {
        for den in 1..=10_000i64 {
            // a handful of numerators per denominator
            for num in [1, 2, den / 3, den / 2 + 1, den - 1] {
                if num <= 0 || num >= den {
                    continue;
                }
                let t = ang(num, den);
                let info = t.orbit_info();
                let (a, b) = (t.numer().to_u64().unwrap(), t.denom().to_u64().unwrap());
                assert_eq!((info.preperiod, info.period), brute(a, b), "{t}");
                let pre = t.iterate(info.preperiod);
                assert_eq!(t.iterate(info.preperiod + info.period), pre);
            }
        }
    }

    #[test]
    fn large_moduli() {
        // 2^61 - 1 is prime, so 2 has order 61 modulo it.
        let m = (1u64 << 61) - 1;
        assert_eq!(order_u64(m), 61);
        assert_eq!(order_u64(255), 8);
        assert_eq!(order_u64(17), 8);
        let big = (BigUint::one() << 130u32) - BigUint::one();
        assert_eq!(multiplicative_order_of_two(&big), 130);
    }
}
