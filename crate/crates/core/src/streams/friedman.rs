use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::rng::DetRng;

pub(super) const N_CONCEPTS: usize = 7;

/// Feature positions playing the roles of x1..x5 in each concept. The
/// remaining features are noise.
const ROLES: [[usize; 5]; N_CONCEPTS] = [
    [0, 1, 2, 3, 4],
    [5, 6, 7, 8, 9],
    [0, 1, 2, 4, 3],
    [9, 8, 7, 6, 5],
    [0, 1, 3, 2, 4],
    [6, 5, 8, 7, 9],
    [0, 1, 2, 3, 5],
];

pub(super) fn target(concept: usize, x: &[f64]) -> f64 {
    let r = ROLES[concept];
    10.0 * libm::sin(PI * x[r[0]] * x[r[1]])
        + 20.0 * (x[r[2]] - 0.5) * (x[r[2]] - 0.5)
        + 10.0 * x[r[3]]
        + 5.0 * x[r[4]]
}

pub(super) fn sample(concept: usize, noise: f64, rng: &mut DetRng) -> (Vec<f64>, f64) {
    let x: Vec<f64> = (0..10).map(|_| rng.random::<f64>()).collect();
    let z: f64 = StandardNormal.sample(rng);
    let y = target(concept, &x) + noise * z;
    (x, y)
}
