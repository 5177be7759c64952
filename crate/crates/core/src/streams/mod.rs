//! Seeded synthetic data streams with scheduled concept drifts.
//!
//! Each family draws features from a fixed law and derives the target from
//! the active concept. [`generate`] returns the records together with the
//! drift schedule, which serves as ground truth for benchmarking.

mod agrawal;
mod friedman;
mod mixed;
mod planes;

use alloc::format;
use alloc::vec::Vec;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{rng_from_seed, DetRng};

pub use agrawal::AGRAWAL_FUNCTIONS;

/// One labelled instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StreamRecord {
    pub features: Vec<f64>,
    /// Regression target, or class id for classification streams.
    pub target: f64,
    pub index: usize,
    /// Ground-truth concept; `-1` for ingested data.
    pub concept_id: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Transition {
    Abrupt,
    /// The new concept's share ramps linearly from 0 to 1 over `width`
    /// samples starting at the change point.
    Gradual { width: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DriftSchedule {
    pub change_points: Vec<usize>,
    pub transition: Transition,
    pub concept_sequence: Vec<i64>,
}

impl DriftSchedule {
    /// Change points spread evenly over `n` samples.
    pub fn evenly_spaced(n: usize, concept_sequence: Vec<i64>) -> Self {
        let k = concept_sequence.len();
        let change_points = (1..k).map(|i| i * n / k).collect();
        Self {
            change_points,
            transition: Transition::Abrupt,
            concept_sequence,
        }
    }

    pub fn n_drifts(&self) -> usize {
        self.change_points.len()
    }

    /// Concept index (position in `concept_sequence`) active at sample `t`
    /// under an abrupt transition.
    pub fn segment_at(&self, t: usize) -> usize {
        self.change_points.partition_point(|&c| c <= t)
    }

    fn validate(&self, n_samples: usize) -> Result<()> {
        if self.concept_sequence.len() != self.change_points.len() + 1 {
            return Err(Error::BadSpec(format!(
                "{} change points need {} concepts, got {}",
                self.change_points.len(),
                self.change_points.len() + 1,
                self.concept_sequence.len()
            )));
        }
        let mut prev = 0;
        for &c in &self.change_points {
            if c <= prev {
                return Err(Error::BadSpec(
                    "change points must be positive and strictly increasing".into(),
                ));
            }
            prev = c;
        }
        if prev >= n_samples && !self.change_points.is_empty() {
            return Err(Error::BadSpec(format!(
                "last change point {prev} is not below n_samples {n_samples}"
            )));
        }
        if let Transition::Gradual { width } = self.transition {
            let mut bounds = self.change_points.clone();
            bounds.push(n_samples);
            let min_gap = bounds.windows(2).map(|w| w[1] - w[0]).min().unwrap_or(n_samples);
            if width == 0 || width >= min_gap {
                return Err(Error::BadSpec(format!(
                    "gradual width {width} must be positive and below the smallest gap {min_gap}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Friedman,
    FriedmanNoReturn,
    Brieman2dPlanes,
    Mixed,
    Agrawal32,
    Agrawal3213,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Friedman,
        Family::FriedmanNoReturn,
        Family::Brieman2dPlanes,
        Family::Mixed,
        Family::Agrawal32,
        Family::Agrawal3213,
    ];

    pub fn is_classification(self) -> bool {
        matches!(self, Family::Mixed | Family::Agrawal32 | Family::Agrawal3213)
    }

    pub fn n_features(self) -> usize {
        match self {
            Family::Friedman | Family::FriedmanNoReturn | Family::Brieman2dPlanes => 10,
            Family::Mixed => 6,
            Family::Agrawal32 | Family::Agrawal3213 => 9,
        }
    }

    /// Number of distinct concepts the family defines.
    pub fn n_concepts(self) -> usize {
        match self {
            Family::Friedman | Family::FriedmanNoReturn => friedman::N_CONCEPTS,
            Family::Brieman2dPlanes => planes::N_CONCEPTS,
            Family::Mixed => 2,
            Family::Agrawal32 | Family::Agrawal3213 => AGRAWAL_FUNCTIONS,
        }
    }

    /// Concept order of the benchmark configuration of each family.
    pub fn default_concepts(self) -> Vec<i64> {
        match self {
            Family::Friedman => alloc::vec![0, 1, 0, 2],
            Family::FriedmanNoReturn => (0..7).collect(),
            Family::Brieman2dPlanes => (0..7).collect(),
            Family::Mixed => alloc::vec![0, 1, 0, 1],
            Family::Agrawal32 => alloc::vec![3, 2],
            Family::Agrawal3213 => alloc::vec![3, 2, 1, 3, 2],
        }
    }

    pub fn default_noise(self) -> f64 {
        if self.is_classification() {
            0.0
        } else {
            1.0
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Friedman => "friedman",
            Family::FriedmanNoReturn => "friedman_no_return",
            Family::Brieman2dPlanes => "brieman_2d_planes",
            Family::Mixed => "mixed",
            Family::Agrawal32 => "agrawal_32",
            Family::Agrawal3213 => "agrawal_3213",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n_samples: usize,
    /// Target noise standard deviation for regression families; label flip
    /// probability for classification families.
    pub noise_sigma: f64,
    pub seed: u64,
    pub schedule: DriftSchedule,
}

impl GeneratorSpec {
    /// The family's benchmark configuration: default concept order, evenly
    /// spaced abrupt drifts, default noise.
    pub fn standard(family: Family, n_samples: usize, seed: u64) -> Self {
        Self {
            family,
            n_samples,
            noise_sigma: family.default_noise(),
            seed,
            schedule: DriftSchedule::evenly_spaced(n_samples, family.default_concepts()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_samples == 0 {
            return Err(Error::BadSpec("n_samples must be positive".into()));
        }
        if !(self.noise_sigma >= 0.0 && self.noise_sigma.is_finite()) {
            return Err(Error::BadSpec("noise_sigma must be finite and >= 0".into()));
        }
        if self.family.is_classification() && self.noise_sigma > 0.5 {
            return Err(Error::BadSpec(
                "label flip probability must not exceed 0.5".into(),
            ));
        }
        self.schedule.validate(self.n_samples)?;
        let n_concepts = self.family.n_concepts() as i64;
        if let Some(&c) = self
            .schedule
            .concept_sequence
            .iter()
            .find(|&&c| c < 0 || c >= n_concepts)
        {
            return Err(Error::BadSpec(format!(
                "concept {c} is not defined for {}",
                self.family.name()
            )));
        }
        Ok(())
    }
}

/// Draw the stream described by `spec`. The returned schedule equals
/// `spec.schedule`.
pub fn generate(spec: &GeneratorSpec) -> Result<(Vec<StreamRecord>, DriftSchedule)> {
    spec.validate()?;
    let mut rng = rng_from_seed(spec.seed);
    let schedule = &spec.schedule;
    let records = (0..spec.n_samples)
        .map(|t| {
            let concept = active_concept(schedule, t, &mut rng);
            let (features, target) = sample(spec.family, concept, spec.noise_sigma, &mut rng);
            StreamRecord {
                features,
                target,
                index: t,
                concept_id: concept,
            }
        })
        .collect();
    Ok((records, schedule.clone()))
}

fn active_concept(schedule: &DriftSchedule, t: usize, rng: &mut DetRng) -> i64 {
    let seg = schedule.segment_at(t);
    match schedule.transition {
        Transition::Abrupt => schedule.concept_sequence[seg],
        Transition::Gradual { width } => {
            if seg == 0 {
                return schedule.concept_sequence[0];
            }
            let start = schedule.change_points[seg - 1];
            let into = t - start;
            if into >= width {
                schedule.concept_sequence[seg]
            } else {
                let share = (into + 1) as f64 / (width + 1) as f64;
                if rng.random::<f64>() < share {
                    schedule.concept_sequence[seg]
                } else {
                    schedule.concept_sequence[seg - 1]
                }
            }
        }
    }
}

fn sample(family: Family, concept: i64, noise: f64, rng: &mut DetRng) -> (Vec<f64>, f64) {
    let concept = concept as usize;
    match family {
        Family::Friedman | Family::FriedmanNoReturn => friedman::sample(concept, noise, rng),
        Family::Brieman2dPlanes => planes::sample(concept, noise, rng),
        Family::Mixed => mixed::sample(concept, noise, rng),
        Family::Agrawal32 | Family::Agrawal3213 => agrawal::sample(concept, noise, rng),
    }
}

pub(crate) fn flip_label(label: f64, prob: f64, rng: &mut DetRng) -> f64 {
    if prob > 0.0 && rng.random::<f64>() < prob {
        1.0 - label
    } else {
        label
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::mean;

    #[test]
    fn default_drift_counts() {
        let expected = [
            (Family::Friedman, 3),
            (Family::FriedmanNoReturn, 6),
            (Family::Brieman2dPlanes, 6),
            (Family::Mixed, 3),
            (Family::Agrawal32, 1),
            (Family::Agrawal3213, 4),
        ];
        for (family, drifts) in expected {
            let spec = GeneratorSpec::standard(family, 20_000, 1);
            assert_eq!(spec.schedule.n_drifts(), drifts, "{family:?}");
            spec.validate().unwrap();
        }
    }

    #[test]
    fn friedman_no_return_never_revisits() {
        let seq = Family::FriedmanNoReturn.default_concepts();
        for (i, a) in seq.iter().enumerate() {
            assert!(!seq[i + 1..].contains(a));
        }
        let plain = Family::Friedman.default_concepts();
        assert!(plain[1..].contains(&0));
    }

    #[test]
    fn friedman_shape() {
        let spec = GeneratorSpec::standard(Family::Friedman, 20_000, 3);
        let (records, manifest) = generate(&spec).unwrap();
        assert_eq!(records.len(), 20_000);
        assert_eq!(manifest, spec.schedule);
        for r in &records[..manifest.change_points[0]] {
            assert_eq!(r.features.len(), 10);
            assert!(r.features.iter().all(|x| (0.0..=1.0).contains(x)));
            assert_eq!(r.concept_id, 0);
        }
        assert!(records.windows(2).all(|w| w[1].index == w[0].index + 1));
    }

    #[test]
    fn deterministic() {
        let spec = GeneratorSpec::standard(Family::Agrawal3213, 3_000, 9);
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
    }

    #[test]
    fn concept_ids_follow_schedule() {
        let spec = GeneratorSpec::standard(Family::Brieman2dPlanes, 7_000, 2);
        let (records, schedule) = generate(&spec).unwrap();
        for r in &records {
            let seg = schedule.segment_at(r.index);
            assert_eq!(r.concept_id, schedule.concept_sequence[seg]);
        }
    }

    #[test]
    fn gradual_ramp() {
        let mut spec = GeneratorSpec::standard(Family::Mixed, 4_000, 5);
        spec.schedule = DriftSchedule {
            change_points: alloc::vec![2_000],
            transition: Transition::Gradual { width: 1_000 },
            concept_sequence: alloc::vec![0, 1],
        };
        let (records, _) = generate(&spec).unwrap();
        let share = |lo: usize, hi: usize| {
            mean(&records[lo..hi].iter().map(|r| r.concept_id as f64).collect::<Vec<_>>())
        };
        assert_eq!(share(0, 2_000), 0.0);
        assert!(share(2_000, 2_250) < 0.3);
        assert!(share(2_750, 3_000) > 0.7);
        assert_eq!(share(3_000, 4_000), 1.0);
    }

    #[test]
    fn bad_specs() {
        let mut spec = GeneratorSpec::standard(Family::Mixed, 1_000, 0);
        spec.schedule.change_points = alloc::vec![500, 400, 900];
        assert!(matches!(generate(&spec), Err(Error::BadSpec(_))));
        let mut spec = GeneratorSpec::standard(Family::Mixed, 1_000, 0);
        spec.schedule.concept_sequence.pop();
        assert!(generate(&spec).is_err());
        let mut spec = GeneratorSpec::standard(Family::Mixed, 1_000, 0);
        spec.schedule.transition = Transition::Gradual { width: 250 };
        assert!(generate(&spec).is_err());
        let mut spec = GeneratorSpec::standard(Family::Agrawal32, 1_000, 0);
        spec.schedule.concept_sequence = alloc::vec![3, 10];
        assert!(generate(&spec).is_err());
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(Family::from_name(f.name()), Some(f));
        }
    }
}
