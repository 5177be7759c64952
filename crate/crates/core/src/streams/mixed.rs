use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::Rng;

use super::flip_label;
use crate::rng::DetRng;

/// Features are `[v, w, x, y, u1, u2]` with boolean `v`, `w`, uniform `x`,
/// `y` and two irrelevant uniforms.
pub(super) fn label(concept: usize, f: &[f64]) -> f64 {
    let z = f[3] < 0.5 + 0.3 * libm::sin(3.0 * PI * f[2]);
    let votes = f[0] + f[1] + if z { 1.0 } else { 0.0 };
    let positive = votes >= 2.0;
    if positive != (concept == 1) {
        1.0
    } else {
        0.0
    }
}

pub(super) fn sample(concept: usize, flip: f64, rng: &mut DetRng) -> (Vec<f64>, f64) {
    let bit = |rng: &mut DetRng| if rng.random::<bool>() { 1.0 } else { 0.0 };
    let v = bit(rng);
    let w = bit(rng);
    let f = vec![v, w, rng.random(), rng.random(), rng.random(), rng.random()];
    let y = flip_label(label(concept, &f), flip, rng);
    (f, y)
}
