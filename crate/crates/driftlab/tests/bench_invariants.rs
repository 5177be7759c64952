use driftlab::bench::{
    emit_report, match_events, render_csv, run_loss_protocol, run_synthetic, BenchConfig, DetectorEntry,
    ReportFormat, StreamSource,
};
use driftlab::core::streams::{Family, GeneratorSpec};
use proptest::prelude::*;

fn small_config(family: Family) -> BenchConfig {
    let detectors = ["DDM", "ADWIN", "HDDM_A", "ORACLE", "EVERY_700"]
        .iter()
        .map(|id| DetectorEntry::from_id(id).unwrap())
        .collect();
    let mut cfg = BenchConfig::new(StreamSource::Synthetic(GeneratorSpec::standard(family, 4_000, 0)), detectors, vec![3, 4]);
    cfg.record_timing = false;
    cfg
}

proptest! {
    #[test]
    fn matching_ignores_input_order(
        mut alarms in prop::collection::vec(0usize..5_000, 0..30),
        mut drifts in prop::collection::vec(0usize..5_000, 0..6),
        tol in 1usize..800,
    ) {
        let m = match_events(&alarms, &drifts, tol);
        prop_assert_eq!(m.tp + m.fa, alarms.len());
        prop_assert!(m.tp <= drifts.len());
        prop_assert_eq!(m.delays.len(), m.tp);
        prop_assert!(m.delays.iter().all(|&d| d <= tol));
        alarms.reverse();
        drifts.reverse();
        prop_assert_eq!(match_events(&alarms, &drifts, tol), m);
    }
}

#[test]
fn every_event_is_counted_once() {
    for family in [Family::Mixed, Family::Friedman] {
        let report = run_synthetic(&small_config(family)).unwrap();
        for d in &report.detectors {
            for run in &d.runs {
                assert_eq!(run.tp + run.fa, run.events.len(), "{} seed {}", d.id, run.seed);
                assert!(run.tp <= run.true_drifts.len());
            }
            assert_eq!(d.tp, d.runs.iter().map(|r| r.tp).sum::<usize>());
        }
        let oracle = report.detector("ORACLE").unwrap();
        assert_eq!(oracle.fa, 0);
        assert_eq!(oracle.tp, report.true_drifts * report.seeds.len());
    }
}

#[test]
fn reports_are_byte_reproducible() {
    let cfg = small_config(Family::Mixed);
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for dir in [&a, &b] {
        emit_report(&run_synthetic(&cfg).unwrap(), &ReportFormat::ALL, dir.path()).unwrap();
    }
    for name in ["report.csv", "report.json", "plotdata.csv"] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name}");
    }
}

#[test]
fn loss_protocol_is_reproducible_and_counts_retrains() {
    let mut cfg = small_config(Family::Friedman);
    cfg.detectors.retain(|d| d.id() != "ADWIN");
    let a = run_loss_protocol(&cfg).unwrap();
    let b = run_loss_protocol(&cfg).unwrap();
    assert_eq!(render_csv(&a), render_csv(&b));
    for d in &a.detectors {
        let loss = d.loss.unwrap();
        assert!(loss.is_finite() && loss >= 0.0, "{}", d.id);
        assert!(d.nb_retrain.is_some(), "{}", d.id);
    }
}
