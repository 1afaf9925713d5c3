use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::HydroBracket;
use crate::exactalg::{determinant, rat, Rational};

/// Deterministic stream of small rational points `p/q` with `|p| <= 5`,
/// `1 <= q <= 7`.
pub struct SamplePoints {
    rng: ChaCha8Rng,
    nvars: usize,
}

impl SamplePoints {
    pub fn new(seed: u64, nvars: usize) -> Self {
        SamplePoints { rng: ChaCha8Rng::seed_from_u64(seed), nvars }
    }
}

impl Iterator for SamplePoints {
    type Item = Vec<Rational>;

    fn next(&mut self) -> Option<Vec<Rational>> {
        Some(
            (0..self.nvars)
                .map(|_| {
                    let p: i64 = self.rng.random_range(-5..=5);
                    let q: i64 = self.rng.random_range(1..=7);
                    rat(p, q)
                })
                .collect(),
        )
    }
}

/// First `count` distinct stream points where the metric of `b` is
/// nondegenerate. Gives up after `64 * count` draws.
pub fn nondegenerate_points(b: &HydroBracket, seed: u64, count: usize) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = Vec::with_capacity(count);
    for pt in SamplePoints::new(seed, b.nvars()).take(64 * count.max(1)) {
        if out.len() == count {
            break;
        }
        if out.contains(&pt) {
            continue;
        }
        let g: Vec<Vec<Rational>> = b.metric().iter().map(|r| r.iter().map(|p| p.eval(&pt)).collect()).collect();
        if !num::Zero::is_zero(&determinant(&g)) {
            out.push(pt);
        }
    }
    out
}
