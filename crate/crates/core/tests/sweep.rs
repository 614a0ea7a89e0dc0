use pwave_core::presets::find_preset;
use pwave_core::sweep::{Column, ExtremumKind};
use pwave_core::validation::rows_bit_identical;
use pwave_core::{find_local_extrema, run_sweep, Execution, SeriesControl};

/// Regression baseline: transmittance maxima of the comb scan at its
/// default 651 points.
const COMB_T_MAXIMA: usize = 4;

#[test]
fn comb_maxima_count_is_stable() {
    let spec = find_preset("mica_film_air_comb")
        .unwrap()
        .default_sweep()
        .unwrap();
    let result = run_sweep(&spec, Execution::Parallel).unwrap();
    assert!(result.rows.iter().all(|r| r.is_ok()));
    let maxima: Vec<_> = find_local_extrema(&result, Column::T)
        .into_iter()
        .filter(|e| e.kind == ExtremumKind::Maximum)
        .collect();
    assert_eq!(maxima.len(), COMB_T_MAXIMA, "{maxima:?}");
    assert!(maxima.windows(2).all(|w| w[0].axis_value < w[1].axis_value));
}

#[test]
fn thread_count_does_not_change_rows() {
    let preset = find_preset("air_film_glass_2nm").unwrap();
    let spec = preset.sweep(97, SeriesControl::default()).unwrap();
    let serial = run_sweep(&spec, Execution::Serial).unwrap();
    for threads in [1, 3, 8] {
        let parallel = run_sweep(&spec, Execution::ParallelWith(threads)).unwrap();
        assert_eq!(serial.rows.len(), parallel.rows.len());
        assert!(serial
            .rows
            .iter()
            .zip(&parallel.rows)
            .all(|(a, b)| rows_bit_identical(a, b)));
    }
}

#[test]
fn rows_satisfy_table_invariants() {
    let spec = find_preset("glass_film_air_angle")
        .unwrap()
        .default_sweep()
        .unwrap();
    let result = run_sweep(&spec, Execution::Parallel).unwrap();
    assert_eq!(result.rows.len(), 180);
    assert_eq!(result.rows[0].axis_value, 0.0);
    assert_eq!(result.rows[179].axis_value, 89.5);
    for w in result.rows.windows(2) {
        assert!(w[0].axis_value < w[1].axis_value);
    }
    for row in &result.rows {
        assert_eq!(row.a, 1.0 - row.t - row.r);
    }
}
