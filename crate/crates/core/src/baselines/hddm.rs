use crate::detector::Signal;

/// Hoeffding-bound test on running averages: drift when the mean since the
/// recorded low point exceeds it by more than the two-sample bound.
#[derive(Debug, Clone)]
pub struct HddmA {
    drift_confidence: f64,
    warn_confidence: f64,
    n_total: usize,
    c_total: f64,
    n_min: usize,
    c_min: f64,
}

impl HddmA {
    pub fn new(drift_confidence: f64, warn_confidence: f64) -> Self {
        Self {
            drift_confidence,
            warn_confidence,
            n_total: 0,
            c_total: 0.0,
            n_min: 0,
            c_min: 0.0,
        }
    }

    pub(super) fn update(&mut self, x: f64) -> Signal {
        self.n_total += 1;
        self.c_total += x;
        if self.n_min == 0 {
            self.n_min = self.n_total;
            self.c_min = self.c_total;
        }
        let log_inv = libm::log(1.0 / self.drift_confidence);
        let bound_min = libm::sqrt(log_inv / (2.0 * self.n_min as f64));
        let bound_all = libm::sqrt(log_inv / (2.0 * self.n_total as f64));
        let mean_all = self.c_total / self.n_total as f64;
        if self.c_min / self.n_min as f64 + bound_min >= mean_all + bound_all {
            self.n_min = self.n_total;
            self.c_min = self.c_total;
        }
        if self.mean_increased(self.drift_confidence) {
            *self = Self::new(self.drift_confidence, self.warn_confidence);
            Signal::Drift
        } else if self.mean_increased(self.warn_confidence) {
            Signal::Warning
        } else {
            Signal::None
        }
    }

    fn mean_increased(&self, confidence: f64) -> bool {
        if self.n_min == self.n_total {
            return false;
        }
        let (n_min, n) = (self.n_min as f64, self.n_total as f64);
        let m = (n - n_min) / n_min / n;
        let bound = libm::sqrt(m / 2.0 * libm::log(2.0 / confidence));
        self.c_total / n - self.c_min / n_min >= bound
    }
}

/// Exponentially weighted mean with the sum of squared weights that enters
/// its McDiarmid bound. `None` until the first value.
#[derive(Debug, Clone, Copy, Default)]
struct Ewma {
    state: Option<(f64, f64)>,
}

impl Ewma {
    fn push(&mut self, x: f64, lambda: f64) {
        let decay = 1.0 - lambda;
        self.state = Some(match self.state {
            None => (x, 1.0),
            Some((mean, weights)) => (
                lambda * x + decay * mean,
                lambda * lambda + decay * decay * weights,
            ),
        });
    }
}

/// EWMA variant of the Hoeffding drift test: compares the weighted mean
/// since the recorded low point with the weighted mean at that point.
#[derive(Debug, Clone)]
pub struct HddmW {
    drift_confidence: f64,
    warn_confidence: f64,
    lambda: f64,
    total: Ewma,
    low: Ewma,
    since_low: Ewma,
    cutpoint: f64,
}

impl HddmW {
    pub fn new(drift_confidence: f64, warn_confidence: f64, lambda: f64) -> Self {
        Self {
            drift_confidence,
            warn_confidence,
            lambda,
            total: Ewma::default(),
            low: Ewma::default(),
            since_low: Ewma::default(),
            cutpoint: f64::INFINITY,
        }
    }

    pub(super) fn update(&mut self, x: f64) -> Signal {
        self.total.push(x, self.lambda);
        let (mean, weights) = self.total.state.expect("just pushed");
        let eps = libm::sqrt(weights * libm::log(1.0 / self.drift_confidence) / 2.0);
        if mean + eps < self.cutpoint {
            self.cutpoint = mean + eps;
            self.low = self.total;
            self.since_low = Ewma::default();
        } else {
            self.since_low.push(x, self.lambda);
        }
        if self.mean_increased(self.drift_confidence) {
            *self = Self::new(self.drift_confidence, self.warn_confidence, self.lambda);
            Signal::Drift
        } else if self.mean_increased(self.warn_confidence) {
            Signal::Warning
        } else {
            Signal::None
        }
    }

    fn mean_increased(&self, confidence: f64) -> bool {
        let (Some((m1, w1)), Some((m2, w2))) = (self.low.state, self.since_low.state) else {
            return false;
        };
        let bound = libm::sqrt((w1 + w2) * libm::log(1.0 / confidence) / 2.0);
        m2 - m1 > bound
    }
}
