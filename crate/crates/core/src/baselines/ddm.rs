use crate::detector::Signal;

/// Error-rate monitor: drift when `p + s` exceeds the recorded minimum
/// `p_min + drift_k * s_min`, warning at `warn_k`.
#[derive(Debug, Clone)]
pub struct Ddm {
    warn_k: f64,
    drift_k: f64,
    min_samples: usize,
    n: usize,
    p: f64,
    p_min: f64,
    s_min: f64,
}

impl Ddm {
    pub fn new(warn_k: f64, drift_k: f64, min_samples: usize) -> Self {
        Self {
            warn_k,
            drift_k,
            min_samples,
            n: 0,
            p: 0.0,
            p_min: f64::INFINITY,
            s_min: f64::INFINITY,
        }
    }

    pub fn error_rate(&self) -> f64 {
        self.p
    }

    fn reset(&mut self) {
        *self = Self::new(self.warn_k, self.drift_k, self.min_samples);
    }

    pub(super) fn update(&mut self, error: f64) -> Signal {
        self.n += 1;
        self.p += (error - self.p) / self.n as f64;
        let s = libm::sqrt(self.p * (1.0 - self.p) / self.n as f64);
        if self.n < self.min_samples {
            return Signal::None;
        }
        if self.p + s <= self.p_min + self.s_min {
            self.p_min = self.p;
            self.s_min = s;
        }
        if self.p + s > self.p_min + self.drift_k * self.s_min {
            self.reset();
            Signal::Drift
        } else if self.p + s > self.p_min + self.warn_k * self.s_min {
            Signal::Warning
        } else {
            Signal::None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_stream_is_quiet() {
        let mut d = Ddm::new(2.0, 3.0, 30);
        for _ in 0..1_000 {
            assert_eq!(d.update(0.0), Signal::None);
        }
        assert_eq!(d.error_rate(), 0.0);
    }

    #[test]
    fn minimum_then_burst() {
        let mut d = Ddm::new(2.0, 3.0, 30);
        for t in 0..1_000 {
            d.update(if t % 10 == 0 { 1.0 } else { 0.0 });
        }
        let mut seen_warning = false;
        let mut fired = None;
        for t in 0..200 {
            match d.update(1.0) {
                Signal::Warning => seen_warning = true,
                Signal::Drift => {
                    fired = Some(t);
                    break;
                }
                Signal::None => {}
            }
        }
        assert!(seen_warning);
        assert!(fired.is_some_and(|t| t < 50));
    }
}
