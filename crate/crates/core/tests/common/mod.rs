//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// Fixed-point fraction bits used by the J1 power-series oracle.
const FRAC_BITS: u64 = 256;

/// J1(num/den) from its power series
/// `sum_m (-1)^m (x/2)^(2m+1) / (m! (m+1)!)`, summed exactly in 256-bit
/// fixed point so cancellation between large terms costs nothing.
pub fn j1_series_exact(num: i64, den: i64) -> f64 {
    let one = BigInt::from(1) << FRAC_BITS;
    // term_0 = x/2
    let mut term: BigInt = (&one * BigInt::from(num)) / BigInt::from(2 * den);
    let mut sum = term.clone();
    let q_num = BigInt::from(num) * BigInt::from(num);
    let q_den = BigInt::from(4) * BigInt::from(den) * BigInt::from(den);
    let mut m: i64 = 0;
    while !term.is_zero() {
        m += 1;
        term = -(term * &q_num) / (&q_den * BigInt::from(m) * BigInt::from(m + 1));
        sum += &term;
        assert!(m < 400, "series failed to converge");
    }
    let shifted: BigInt = sum >> (FRAC_BITS - 64);
    shifted.to_f64().unwrap() / 2f64.powi(64)
}

/// Evenly spaced grid on [0, 20] with `n` points, as exact rationals.
pub fn j1_grid(n: i64) -> impl Iterator<Item = (i64, i64)> {
    (0..n).map(move |i| (20 * i, n - 1))
}

pub const J1_ZEROS: [f64; 3] = [3.831_705_970_207_512, 7.015_586_669_815_619, 10.173_468_135_062_722];

/// Bisection on a sign change of `f` over `[lo, hi]`.
pub fn bisect(mut lo: f64, mut hi: f64, tol: f64, f: impl Fn(f64) -> f64) -> f64 {
    let flo = f(lo);
    assert!(flo * f(hi) <= 0.0, "no sign change on [{lo}, {hi}]");
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Fluid-queue throughput of a constant-rate source into a link.
pub fn fluid_throughput(rate_bps: f64, capacity_bps: f64) -> f64 {
    rate_bps.min(capacity_bps)
}

/// Reference saturation latencies (ms) read from the published curves.
pub const SATURATED_LATENCY_MS: [(&str, f64); 4] = [("sc6", 134.0), ("sc1", 216.0), ("sc9", 730.0), ("sc4", 912.0)];

/// Reference low-load latencies (ms).
pub const LOW_LOAD_LATENCY_MS: [(&str, f64); 2] = [("sc6", 4.5), ("sc1", 136.5)];

pub const FIG2_RATES_MBPS: [f64; 7] = [1.0, 100.0, 250.0, 500.0, 750.0, 1000.0, 1500.0];
