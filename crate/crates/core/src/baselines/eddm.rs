use crate::detector::Signal;

/// Errors needed before the distance ratio is tested.
const MIN_ERRORS: usize = 30;

/// Distance-between-errors monitor: tracks mean and spread of the gaps
/// between consecutive errors and signals when `mean + 2 sd` falls below a
/// fraction of its recorded maximum.
///
/// Fractional inputs accumulate error mass; each whole unit counts as one
/// error, so 0/1 inputs behave exactly as usual.
#[derive(Debug, Clone)]
pub struct Eddm {
    beta_warn: f64,
    beta_drift: f64,
    n: usize,
    n_errors: usize,
    mass: f64,
    last_error: usize,
    mean: f64,
    m2: f64,
    m2s_max: f64,
}

impl Eddm {
    pub fn new(beta_warn: f64, beta_drift: f64) -> Self {
        Self {
            beta_warn,
            beta_drift,
            n: 0,
            n_errors: 0,
            mass: 0.0,
            last_error: 0,
            mean: 0.0,
            m2: 0.0,
            m2s_max: 0.0,
        }
    }

    fn reset(&mut self) {
        *self = Self::new(self.beta_warn, self.beta_drift);
    }

    pub(super) fn update(&mut self, error: f64) -> Signal {
        self.n += 1;
        self.mass += error;
        let mut signal = Signal::None;
        while self.mass >= 1.0 {
            self.mass -= 1.0;
            signal = self.record_error();
            if signal == Signal::Drift {
                self.reset();
                return Signal::Drift;
            }
        }
        signal
    }

    fn record_error(&mut self) -> Signal {
        self.n_errors += 1;
        let distance = (self.n - self.last_error) as f64;
        self.last_error = self.n;
        let old = self.mean;
        self.mean += (distance - self.mean) / self.n_errors as f64;
        self.m2 += (distance - self.mean) * (distance - old);
        let sd = libm::sqrt(self.m2 / self.n_errors as f64);
        let m2s = self.mean + 2.0 * sd;
        if m2s > self.m2s_max {
            self.m2s_max = m2s;
            return Signal::None;
        }
        if self.n_errors <= MIN_ERRORS {
            return Signal::None;
        }
        let ratio = m2s / self.m2s_max;
        if ratio < self.beta_drift {
            Signal::Drift
        } else if ratio < self.beta_warn {
            Signal::Warning
        } else {
            Signal::None
        }
    }
}
