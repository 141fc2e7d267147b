//! Binomial proportion estimates.

use serde::Serialize;

/// Two-sided 95 % standard normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        (self.lo..=self.hi).contains(&x)
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

/// Wilson score interval for `successes` out of `n` trials.
pub fn wilson_interval(successes: u64, n: u64, z: f64) -> Interval {
    if n == 0 {
        return Interval { lo: 0.0, hi: 1.0 };
    }
    let n = n as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    // the closed form leaves rounding residue at the boundaries
    let k = successes as f64;
    Interval {
        lo: if k == 0.0 { 0.0 } else { (center - half).max(0.0) },
        hi: if k == n { 1.0 } else { (center + half).min(1.0) },
    }
}

/// One standard error on the Wilson scale: the 95 % half-width over z.
pub fn wilson_std_error(successes: u64, n: u64) -> f64 {
    wilson_interval(successes, n, Z95).width() / (2.0 * Z95)
}
