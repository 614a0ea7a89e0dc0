use pwave_core::{
    impedance_antisymmetric, impedance_pair, impedance_symmetric, ModeSeries, Parity, Plasma,
    SeriesControl, Stack,
};

fn sodium() -> Plasma {
    Plasma::sodium(1e-3).unwrap()
}

fn configs() -> Vec<(Stack, f64)> {
    vec![
        (Stack::from_degrees(1.0, 1.0, 4.0, 75.0).unwrap(), 0.7),
        (Stack::from_degrees(10.0, 4.0, 1.0, 20.0).unwrap(), 1.0),
        (Stack::from_degrees(10.0, 8.0, 1.0, 15.0).unwrap(), 1.47),
        (Stack::from_degrees(100.0, 8.0, 1.0, 15.0).unwrap(), 1.0),
    ]
}

#[test]
fn summand_decays_as_inverse_square() {
    for (stack, omega) in configs() {
        let s = ModeSeries::new(&stack, omega, &sodium()).unwrap();
        let a = s.term(20_001).unwrap().norm() * 20_001f64.powi(2);
        let b = s.term(40_001).unwrap().norm() * 40_001f64.powi(2);
        assert!((a / b - 1.0).abs() < 1e-2, "n^2 |term| drifts: {a} vs {b}");
    }
}

#[test]
fn remainder_decays_as_fifth_power() {
    let (stack, omega) = configs()[3];
    let s = ModeSeries::new(&stack, omega, &sodium()).unwrap();
    let ratio = s.remainder(100_001).unwrap().norm() / s.remainder(200_001).unwrap().norm();
    assert!(
        (ratio.log2() - 5.0).abs() < 0.3,
        "exponent {}",
        ratio.log2()
    );
}

/// Continuing the same sum to ten times as many harmonics moves it by no
/// more than the reported bound.
#[test]
fn tail_bound_covers_ten_times_more_terms() {
    let ctrl = SeriesControl::default();
    for (stack, omega) in configs() {
        let s = ModeSeries::new(&stack, omega, &sodium()).unwrap();
        for parity in [Parity::Odd, Parity::Even] {
            let sum = s.sum(parity, &ctrl).unwrap();
            let scale = 4.0 * omega / s.width();
            let extra: pwave_core::Complex64 = (sum.n_used + 2..=10 * sum.n_used)
                .step_by(2)
                .map(|n| s.remainder(n as i64).unwrap())
                .sum();
            let moved = scale * extra.norm();
            assert!(
                moved <= sum.tail_estimate,
                "{parity}: moved {moved:e} > bound {:e}",
                sum.tail_estimate
            );
        }
    }
}

#[test]
fn summation_order_does_not_matter() {
    let (stack, omega) = configs()[3];
    let s = ModeSeries::new(&stack, omega, &sodium()).unwrap();
    let terms: Vec<_> = (1..20_000i64)
        .step_by(2)
        .map(|n| s.term(n).unwrap())
        .collect();
    let forward: pwave_core::Complex64 = terms.iter().sum();
    let backward: pwave_core::Complex64 = terms.iter().rev().sum();
    assert!((forward - backward).norm() <= 1e-12 * forward.norm());
}

#[test]
fn tighter_tolerance_moves_result_within_bound() {
    let loose = SeriesControl::new(1e-6, 200_000, 3).unwrap();
    let tight = SeriesControl::new(1e-12, 200_000, 3).unwrap();
    for (stack, omega) in configs() {
        let a = impedance_antisymmetric(&stack, omega, &sodium(), &loose).unwrap();
        let b = impedance_antisymmetric(&stack, omega, &sodium(), &tight).unwrap();
        assert!((a.value - b.value).norm() <= a.tail_estimate + b.tail_estimate);
        assert!(a.n_used <= b.n_used);
        let a = impedance_symmetric(&stack, omega, &sodium(), &loose).unwrap();
        let b = impedance_symmetric(&stack, omega, &sodium(), &tight).unwrap();
        assert!((a.value - b.value).norm() <= a.tail_estimate + b.tail_estimate);
    }
}

#[test]
fn absorbing_film_is_passive_and_parities_differ() {
    let ctrl = SeriesControl::default();
    for (stack, omega) in configs() {
        let z = impedance_pair(&stack, omega, &sodium(), &ctrl).unwrap();
        for zj in [z.z1, z.z2] {
            assert!(zj.re <= 1e-12 * zj.norm(), "Re Z = {}", zj.re);
        }
        assert!((z.z1 - z.z2).norm() > 1e-3 * z.z1.norm().max(z.z2.norm()));
        let p = pwave_core::amplitudes(&z, &stack).unwrap();
        assert!(p.p1.norm() <= 1.0 && p.p2.norm() <= 1.0);
    }
}

#[test]
fn normal_incidence_is_continuous() {
    let ctrl = SeriesControl::default();
    for (stack, omega) in configs() {
        let at = |theta: f64| {
            let s = Stack::new(stack.thickness_nm(), stack.eps1(), stack.eps2(), theta).unwrap();
            impedance_pair(&s, omega, &sodium(), &ctrl).unwrap()
        };
        let (a, b) = (at(0.0), at(1e-6));
        assert!((a.z1 - b.z1).norm() < 1e-8 * a.z1.norm());
        assert!((a.z2 - b.z2).norm() < 1e-8 * a.z2.norm());
    }
}

#[test]
fn single_precision_path_tracks_double() {
    let ctrl = SeriesControl::new(1e-6, 200_000, 3).unwrap();
    let plasma32 = pwave_core::Plasma32::sodium(1e-3).unwrap();
    for (stack, omega) in configs().into_iter().take(3) {
        let s32 = pwave_core::Stack32::from_degrees(
            stack.thickness_nm() as f32,
            stack.eps1() as f32,
            stack.eps2().re as f32,
            stack.theta().to_degrees() as f32,
        )
        .unwrap();
        let z64 = impedance_pair(&stack, omega, &sodium(), &ctrl).unwrap();
        let z32 = impedance_pair(&s32, omega as f32, &plasma32, &ctrl).unwrap();
        let d =
            ((z32.z1.re as f64 - z64.z1.re).hypot(z32.z1.im as f64 - z64.z1.im)) / z64.z1.norm();
        assert!(d < 1e-4, "relative f32 deviation {d:e}");
    }
}
