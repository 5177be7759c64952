//! Comparison detectors: ADWIN, DDM, EDDM, Page-Hinkley, KSWIN, HDDM_A and
//! HDDM_W, all driven through [`Baseline::update`] or the shared
//! [`DriftDetector`] interface.
//!
//! DDM, EDDM and the HDDM pair expect error indicators in `[0, 1]`. Values
//! strictly inside the interval are read as error probabilities, which lets
//! squashed regression losses drive them.

mod adwin;
mod ddm;
mod eddm;
mod hddm;
mod kswin;
mod page_hinkley;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};

use serde::{Deserialize, Serialize};

use crate::addm::DriftEvent;
use crate::detector::{DriftDetector, Signal};
use crate::error::{bad_param, Error, Result};

pub use adwin::Adwin;
pub use ddm::Ddm;
pub use eddm::Eddm;
pub use hddm::{HddmA, HddmW};
pub use kswin::{ks_two_sample, Kswin};
pub use page_hinkley::PageHinkley;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BaselineKind {
    Adwin,
    Ddm,
    Eddm,
    PageHinkley,
    Kswin,
    HddmA,
    HddmW,
}

impl BaselineKind {
    pub const ALL: [BaselineKind; 7] = [
        BaselineKind::Adwin,
        BaselineKind::Ddm,
        BaselineKind::Eddm,
        BaselineKind::PageHinkley,
        BaselineKind::Kswin,
        BaselineKind::HddmA,
        BaselineKind::HddmW,
    ];

    pub fn id(self) -> &'static str {
        match self {
            BaselineKind::Adwin => "ADWIN",
            BaselineKind::Ddm => "DDM",
            BaselineKind::Eddm => "EDDM",
            BaselineKind::PageHinkley => "PH",
            BaselineKind::Kswin => "KSWIN",
            BaselineKind::HddmA => "HDDM_A",
            BaselineKind::HddmW => "HDDM_W",
        }
    }

    pub fn from_id(id: &str) -> Option<BaselineKind> {
        BaselineKind::ALL
            .into_iter()
            .find(|k| k.id().eq_ignore_ascii_case(id))
    }

    /// Parameter names with their defaults. `None` marks a parameter the
    /// caller must supply.
    pub fn param_spec(self) -> &'static [(&'static str, Option<f64>)] {
        match self {
            BaselineKind::Adwin => &[("delta", None)],
            BaselineKind::Ddm => &[
                ("warn_k", Some(2.0)),
                ("drift_k", Some(3.0)),
                ("min_samples", Some(30.0)),
            ],
            BaselineKind::Eddm => &[("beta_warn", Some(0.95)), ("beta_drift", Some(0.9))],
            BaselineKind::PageHinkley => &[
                ("lambda", None),
                ("delta_ph", Some(0.005)),
                ("alpha_forget", Some(0.9999)),
                ("min_samples", Some(30.0)),
            ],
            BaselineKind::Kswin => &[
                ("alpha", None),
                ("window_size", Some(100.0)),
                ("stat_size", Some(30.0)),
            ],
            BaselineKind::HddmA => &[
                ("drift_confidence", Some(0.001)),
                ("warn_confidence", Some(0.005)),
            ],
            BaselineKind::HddmW => &[
                ("drift_confidence", Some(0.001)),
                ("warn_confidence", Some(0.005)),
                ("lambda_ewma", Some(0.05)),
            ],
        }
    }

    /// Commonly used values for the parameters without a default.
    pub fn typical_params(self) -> BTreeMap<String, f64> {
        let mut m = BTreeMap::new();
        match self {
            BaselineKind::Adwin => {
                m.insert("delta".into(), 0.002);
            }
            BaselineKind::PageHinkley => {
                m.insert("lambda".into(), 50.0);
            }
            BaselineKind::Kswin => {
                m.insert("alpha".into(), 0.005);
            }
            _ => {}
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineConfig {
    pub kind: BaselineKind,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    /// Seed for KSWIN's reference sampling; ignored by the other kinds.
    #[serde(default)]
    pub seed: u64,
}

impl BaselineConfig {
    pub fn new(kind: BaselineKind) -> Self {
        Self {
            kind,
            params: BTreeMap::new(),
            seed: 0,
        }
    }

    /// Config with [`BaselineKind::typical_params`] filled in.
    pub fn typical(kind: BaselineKind) -> Self {
        Self {
            kind,
            params: kind.typical_params(),
            seed: 0,
        }
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.into(), value);
        self
    }

    /// Parameters resolved against the kind's defaults.
    pub fn resolved(&self) -> Result<Params> {
        let spec = self.kind.param_spec();
        if let Some(name) = self.params.keys().find(|k| !spec.iter().any(|(n, _)| n == k)) {
            return Err(bad_param(
                name,
                &format!("not a parameter of {}", self.kind.id()),
            ));
        }
        let mut out = BTreeMap::new();
        for &(name, default) in spec {
            let v = match (self.params.get(name), default) {
                (Some(&v), _) => v,
                (None, Some(d)) => d,
                (None, None) => return Err(Error::MissingParam(name.to_string())),
            };
            if !v.is_finite() {
                return Err(bad_param(name, "must be finite"));
            }
            out.insert(name, v);
        }
        Ok(Params(out))
    }
}

/// Complete, finite parameter set for one detector kind.
#[derive(Debug, Clone)]
pub struct Params(BTreeMap<&'static str, f64>);

impl Params {
    fn get(&self, name: &str) -> f64 {
        self.0[name]
    }

    fn unit_open(&self, name: &str) -> Result<f64> {
        let v = self.get(name);
        if v > 0.0 && v < 1.0 {
            Ok(v)
        } else {
            Err(bad_param(name, "must lie in (0, 1)"))
        }
    }

    fn positive(&self, name: &str) -> Result<f64> {
        let v = self.get(name);
        if v > 0.0 {
            Ok(v)
        } else {
            Err(bad_param(name, "must be positive"))
        }
    }

    fn non_negative(&self, name: &str) -> Result<f64> {
        let v = self.get(name);
        if v >= 0.0 {
            Ok(v)
        } else {
            Err(bad_param(name, "must be non-negative"))
        }
    }

    fn count(&self, name: &str) -> Result<usize> {
        let v = self.get(name);
        if v >= 1.0 && v == libm::floor(v) {
            Ok(v as usize)
        } else {
            Err(bad_param(name, "must be a positive integer"))
        }
    }
}

#[derive(Debug, Clone)]
enum Inner {
    Adwin(Adwin),
    Ddm(Ddm),
    Eddm(Eddm),
    PageHinkley(PageHinkley),
    Kswin(Kswin),
    HddmA(HddmA),
    HddmW(HddmW),
}

/// A baseline detector of any kind.
#[derive(Debug, Clone)]
pub struct Baseline {
    kind: BaselineKind,
    inner: Inner,
    n_seen: usize,
}

pub fn make_baseline(cfg: &BaselineConfig) -> Result<Baseline> {
    let p = cfg.resolved()?;
    let inner = match cfg.kind {
        BaselineKind::Adwin => Inner::Adwin(Adwin::new(p.unit_open("delta")?)),
        BaselineKind::Ddm => {
            let warn = p.positive("warn_k")?;
            let drift = p.positive("drift_k")?;
            if warn > drift {
                return Err(bad_param("warn_k", "must not exceed drift_k"));
            }
            Inner::Ddm(Ddm::new(warn, drift, p.count("min_samples")?))
        }
        BaselineKind::Eddm => {
            let warn = p.unit_open("beta_warn")?;
            let drift = p.unit_open("beta_drift")?;
            if drift > warn {
                return Err(bad_param("beta_drift", "must not exceed beta_warn"));
            }
            Inner::Eddm(Eddm::new(warn, drift))
        }
        BaselineKind::PageHinkley => Inner::PageHinkley(PageHinkley::new(
            p.positive("lambda")?,
            p.non_negative("delta_ph")?,
            p.unit_open_or_one("alpha_forget")?,
            p.count("min_samples")?,
        )),
        BaselineKind::Kswin => {
            let window = p.count("window_size")?;
            let stat = p.count("stat_size")?;
            if stat >= window {
                return Err(bad_param("stat_size", "must be below window_size"));
            }
            Inner::Kswin(Kswin::new(p.unit_open("alpha")?, window, stat, cfg.seed))
        }
        BaselineKind::HddmA => Inner::HddmA(HddmA::new(
            p.unit_open("drift_confidence")?,
            p.unit_open("warn_confidence")?,
        )),
        BaselineKind::HddmW => Inner::HddmW(HddmW::new(
            p.unit_open("drift_confidence")?,
            p.unit_open("warn_confidence")?,
            p.unit_open("lambda_ewma")?,
        )),
    };
    Ok(Baseline {
        kind: cfg.kind,
        inner,
        n_seen: 0,
    })
}

impl Params {
    fn unit_open_or_one(&self, name: &str) -> Result<f64> {
        let v = self.get(name);
        if v > 0.0 && v <= 1.0 {
            Ok(v)
        } else {
            Err(bad_param(name, "must lie in (0, 1]"))
        }
    }
}

fn check_unit(value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::DomainError {
            value,
            reason: "error indicators must lie in [0, 1]",
        })
    }
}

impl Baseline {
    pub fn kind(&self) -> BaselineKind {
        self.kind
    }

    pub fn samples_seen(&self) -> usize {
        self.n_seen
    }

    /// Feed one value. A `Drift` signal has already reset the detector.
    pub fn update(&mut self, value: f64) -> Result<Signal> {
        if !value.is_finite() {
            return Err(Error::NonFiniteValue { index: self.n_seen });
        }
        match self.kind {
            BaselineKind::Ddm | BaselineKind::Eddm | BaselineKind::HddmA | BaselineKind::HddmW => {
                check_unit(value)?
            }
            _ => {}
        }
        self.n_seen += 1;
        Ok(match &mut self.inner {
            Inner::Adwin(d) => d.update(value),
            Inner::Ddm(d) => d.update(value),
            Inner::Eddm(d) => d.update(value),
            Inner::PageHinkley(d) => d.update(value),
            Inner::Kswin(d) => d.update(value),
            Inner::HddmA(d) => d.update(value),
            Inner::HddmW(d) => d.update(value),
        })
    }

    /// The ADWIN state, `None` for other kinds.
    pub fn adwin(&self) -> Option<&Adwin> {
        match &self.inner {
            Inner::Adwin(d) => Some(d),
            _ => None,
        }
    }

    pub fn page_hinkley(&self) -> Option<&PageHinkley> {
        match &self.inner {
            Inner::PageHinkley(d) => Some(d),
            _ => None,
        }
    }
}

impl DriftDetector for Baseline {
    fn id(&self) -> String {
        self.kind.id().into()
    }

    fn observe(&mut self, stream_index: usize, value: f64) -> Result<Option<DriftEvent>> {
        Ok((self.update(value)? == Signal::Drift).then(|| DriftEvent::at(self.kind.id(), stream_index)))
    }
}
