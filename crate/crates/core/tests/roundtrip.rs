use orlicz_lab::io::{read_real_table, read_sampled_csv, write_real_table, write_sampled_csv};
use orlicz_lab::{run_experiment, Complex64, ExperimentConfig, Grid, SampledFunction, VerificationReport};
use proptest::prelude::*;

#[test]
fn report_json_round_trips() {
    let mut cfg = ExperimentConfig::defaults("prop32").unwrap();
    cfg.trials = 3;
    cfg.seed = Some(1);
    let report = run_experiment(&cfg).unwrap();
    let text = report.to_json().unwrap();
    let back = VerificationReport::from_json(&text).unwrap();
    assert_eq!(back, report);
    assert_eq!(back.to_json().unwrap(), text);
}

#[test]
fn report_csv_has_one_row_per_trial() {
    let mut cfg = ExperimentConfig::defaults("mt1").unwrap();
    cfg.trials = 4;
    cfg.seed = Some(2);
    let report = run_experiment(&cfg).unwrap();
    let dir = tempfile::tempdir().unwrap();
    report.write_to(dir.path()).unwrap();
    let csv = std::fs::read_to_string(dir.path().join("mt1.csv")).unwrap();
    assert!(csv.starts_with("trial,label,pass"));
    assert_eq!(csv.lines().count(), 1 + 4);
    let json = std::fs::read_to_string(dir.path().join("mt1.json")).unwrap();
    assert_eq!(VerificationReport::from_json(&json).unwrap(), report);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn real_tables_round_trip_bit_exact(rows in prop::collection::vec(prop::collection::vec(prop::num::f64::ANY, 3), 1..20)) {
        let rows: Vec<Vec<f64>> = rows.into_iter().map(|r| r.into_iter().map(|v| if v.is_nan() { 0.0 } else { v }).collect()).collect();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        write_real_table(&path, &["a", "b", "c"], &rows).unwrap();
        let back = read_real_table(&path, &["a", "b", "c"]).unwrap();
        prop_assert_eq!(back.len(), rows.len());
        for (x, y) in back.iter().zip(&rows) {
            for (u, v) in x.iter().zip(y) {
                prop_assert_eq!(u.to_bits(), v.to_bits());
            }
        }
    }

    #[test]
    fn sampled_functions_round_trip(seed in any::<u64>()) {
        let g = Grid::new(4.0, 64).unwrap();
        let f = SampledFunction::from_fn(g, |x| {
            let t = (x * 1e3 + seed as f64).sin();
            Complex64::new(t * 1e-7, (t * 3.0).cos())
        });
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.csv");
        write_sampled_csv(&path, &f).unwrap();
        let back = read_sampled_csv(&path).unwrap();
        prop_assert_eq!(back.values(), f.values());
    }
}
