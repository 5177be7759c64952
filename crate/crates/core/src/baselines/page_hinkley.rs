use crate::detector::Signal;

/// Page-Hinkley test for an increase of the mean: drift when the forgetful
/// cumulative deviation `max(0, alpha * S + x - mean - delta)` exceeds
/// `lambda`.
#[derive(Debug, Clone)]
pub struct PageHinkley {
    lambda: f64,
    delta: f64,
    alpha: f64,
    min_samples: usize,
    n: usize,
    mean: f64,
    sum: f64,
}

impl PageHinkley {
    pub fn new(lambda: f64, delta: f64, alpha: f64, min_samples: usize) -> Self {
        Self {
            lambda,
            delta,
            alpha,
            min_samples,
            n: 0,
            mean: 0.0,
            sum: 0.0,
        }
    }

    pub fn statistic(&self) -> f64 {
        self.sum
    }

    pub(super) fn update(&mut self, x: f64) -> Signal {
        self.n += 1;
        self.mean += (x - self.mean) / self.n as f64;
        self.sum = (self.alpha * self.sum + x - self.mean - self.delta).max(0.0);
        if self.n >= self.min_samples && self.sum > self.lambda {
            *self = Self::new(self.lambda, self.delta, self.alpha, self.min_samples);
            Signal::Drift
        } else {
            Signal::None
        }
    }
}
