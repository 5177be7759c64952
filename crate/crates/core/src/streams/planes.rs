use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::rng::DetRng;

pub(super) const N_CONCEPTS: usize = 7;

/// Coefficients on (x2, x3, x4) when x1 = 1 and on (x5, x6, x7) otherwise.
const PLANES: [([f64; 3], [f64; 3]); N_CONCEPTS] = [
    ([3.0, 2.0, 1.0], [3.0, 2.0, 1.0]),
    ([-3.0, -2.0, -1.0], [3.0, 2.0, 1.0]),
    ([3.0, 2.0, -1.0], [3.0, 2.0, 1.0]),
    ([-3.0, -2.0, -1.0], [-3.0, -2.0, -1.0]),
    ([3.0, 2.0, 1.0], [3.0, -2.0, 1.0]),
    ([3.0, 2.0, 1.0], [-3.0, -2.0, -1.0]),
    ([3.0, -2.0, 1.0], [3.0, 2.0, -1.0]),
];

pub(super) fn target(concept: usize, x: &[f64]) -> f64 {
    let (a, b) = PLANES[concept];
    let dot = |c: [f64; 3], v: &[f64]| c.iter().zip(v).map(|(c, v)| c * v).sum::<f64>();
    if x[0] > 0.0 {
        3.0 + dot(a, &x[1..4])
    } else {
        -3.0 + dot(b, &x[4..7])
    }
}

pub(super) fn sample(concept: usize, noise: f64, rng: &mut DetRng) -> (Vec<f64>, f64) {
    let mut x = Vec::with_capacity(10);
    x.push(if rng.random::<bool>() { 1.0 } else { -1.0 });
    for _ in 1..10 {
        x.push(rng.random_range(-1i32..=1) as f64);
    }
    let z: f64 = StandardNormal.sample(rng);
    let y = target(concept, &x) + noise * z;
    (x, y)
}
