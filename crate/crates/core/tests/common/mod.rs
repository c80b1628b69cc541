#![allow(dead_code)]

use netextreme::PriceSeries;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::FromPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Cumulative i.i.d. Gaussian log-returns.
pub fn random_walk(rng: &mut ChaCha8Rng, len: usize, sigma: f64) -> Vec<f64> {
    let normal = Normal::new(0.0, sigma).unwrap();
    let mut level = 100f64.ln();
    (0..len)
        .map(|_| {
            level += normal.sample(rng);
            level
        })
        .collect()
}

/// Integer-step walk; chords through lattice points produce exact ties.
pub fn lattice_walk(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let mut level = 0i64;
    (0..len)
        .map(|_| {
            level += rng.random_range(-2..=2);
            level as f64
        })
        .collect()
}

pub fn series(log_values: Vec<f64>) -> PriceSeries {
    PriceSeries::from_log_values(log_values).unwrap()
}

fn exact(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite")
}

/// Link test written straight from the chord inequality, in exact rational
/// arithmetic. `j < i` are 1-based days.
pub fn rational_linked(y: &[f64], j: usize, i: usize, visibility: bool) -> bool {
    let (tj, ti) = (BigInt::from(j), BigInt::from(i));
    let (yj, yi) = (exact(y[j - 1]), exact(y[i - 1]));
    (j + 1..i).all(|k| {
        let tk = BigInt::from_usize(k).unwrap();
        let chord = &yj + BigRational::new(tk - &tj, &ti - &tj) * (&yi - &yj);
        let yk = exact(y[k - 1]);
        if visibility {
            yk < chord
        } else {
            yk > chord
        }
    })
}

/// Degree of day `i` counted with [`rational_linked`].
pub fn rational_degree(y: &[f64], i: usize, scope: usize, visibility: bool, filter: i8) -> usize {
    let lo = i.saturating_sub(scope).max(1);
    (lo..i)
        .filter(|&j| match filter {
            1 => y[i - 1] > y[j - 1],
            -1 => y[i - 1] < y[j - 1],
            _ => true,
        })
        .filter(|&j| rational_linked(y, j, i, visibility))
        .count()
}
