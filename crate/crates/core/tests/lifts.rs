mod common;

use std::f64::consts::{PI, TAU};

use common::{member_generator, Generator};
use hqdisk::boundary_maps::*;
use hqdisk::cantor::phi_n;
use hqdisk::hilbert::PVConfig;
use hqdisk::poisson::QuadratureConfig;
use hqdisk::Complex;
use proptest::prelude::*;

fn lipschitz_lifts() -> Vec<LiftFunction<f64>> {
    vec![identity(), make_example3(), make_smoothstep(), phi_n(3), mobius_trace(Complex::new(0.4, -0.2)).unwrap()]
}

#[test]
fn extension_examples() {
    let id = identity::<f64>();
    assert!((id.eval(TAU + 1.0) - (TAU + 1.0)).abs() < 1e-15);
    let e3 = make_example3::<f64>();
    let direct = e3.eval_base(4.0 * PI / 3.0) - TAU;
    assert!((e3.eval(-TAU / 3.0) - direct).abs() < 1e-14);
    for phi in lipschitz_lifts() {
        for &t0 in &[0.0, 0.3, 2.0, 5.9] {
            assert!((phi.eval(t0 + TAU) - (phi.eval(t0) + TAU)).abs() < 1e-12);
        }
    }
}

#[test]
fn example3_unit_values() {
    assert!((example3_unit(1.0f64 / 3.0) - 2.0 / 3.0).abs() < 1e-15);
    assert!((example3_unit(0.75f64) - 2.0 / 3.0).abs() < 1e-15);
    assert_eq!(example3_unit(1.0f64), 1.0);
    let e3 = make_example3::<f64>();
    assert!(e3.is_weak_only());
    assert_eq!(e3.breakpoints().len(), 2);
}

#[test]
fn smoothstep_values() {
    assert_eq!(smoothstep_unit(0.5f64), 0.5);
    assert_eq!(smoothstep_unit_derivative(0.0f64), 0.0);
    assert_eq!(smoothstep_unit_derivative(1.0f64), 0.0);
    assert_eq!(smoothstep_unit_second(0.0f64), 0.0);
    assert!(smoothstep_unit_second(1.0f64).abs() < 1e-12);
    let quarter: f64 = 6.0 / 1024.0 - 15.0 / 256.0 + 10.0 / 64.0;
    assert!((smoothstep_unit(0.25f64) - quarter).abs() < 1e-15);
    assert!((quarter - 0.103515625).abs() < 1e-15);
}

#[test]
fn convex_combination_examples() {
    let s = make_smoothstep::<f64>();
    let id = identity::<f64>();
    let one = convex_combination(&s, &id, 1.0).unwrap();
    let same = convex_combination(&s, &s, 0.37).unwrap();
    let mid = convex_combination(&s, &id, 0.5).unwrap();
    for i in 0..=64 {
        let t = TAU * i as f64 / 64.0;
        assert_eq!(one.eval_base(t), s.eval_base(t));
        assert!((same.eval_base(t) - s.eval_base(t)).abs() < 1e-14);
    }
    assert!((mid.eval_base(PI) - 0.5 * (s.eval_base(PI) + id.eval_base(PI))).abs() < 1e-15);
    assert!(convex_combination(&s, &id, 1.5).is_err());
    assert!(convex_combination(&s, &id, -0.1).is_err());
}

#[test]
fn bilipschitz_examples() {
    let id = estimate_bilipschitz(&identity::<f64>(), 1024).unwrap();
    assert!((id.upper - 1.0).abs() < 1e-12 && (id.lower - 1.0).abs() < 1e-12);
    assert_eq!(estimate_bilipschitz(&make_example3::<f64>(), 1024).unwrap().lower, 0.0);
    let s = estimate_bilipschitz(&make_smoothstep::<f64>(), 1 << 16).unwrap();
    assert!((s.upper - 1.4375).abs() < 1e-6, "{}", s.upper);
    assert!(estimate_bilipschitz(&identity::<f64>(), 8).is_err());
}

#[test]
fn membership_examples() {
    let cfg = QuadratureConfig::default();
    let id = check_membership(&identity::<f64>(), &cfg).unwrap();
    assert_eq!(id.verdict, MembershipVerdict::Member);
    assert!(id.hilbert_sup.unwrap() < 1e-12);
    let e3 = check_membership(&make_example3::<f64>(), &cfg).unwrap();
    assert_eq!(e3.verdict, MembershipVerdict::NonMember);
    assert_eq!(e3.bilipschitz_lower, 0.0);
    let c = check_membership(&hqdisk::cantor::phi_cantor::<f64>(), &cfg).unwrap();
    assert_eq!(c.verdict, MembershipVerdict::NonMember);
}

#[test]
fn member_report_is_coherent() {
    let cfg = QuadratureConfig::default();
    for phi in [identity::<f64>(), make_smoothstep(), phi_n(5)] {
        let r = check_membership(&phi, &cfg).unwrap();
        assert!(r.is_member());
        assert!(r.strictly_increasing);
        assert!((r.total_increase - TAU).abs() <= 1e-9);
        assert!(r.bilipschitz_lower > cfg.flatness_floor);
        assert!(r.hilbert_sup.unwrap().is_finite());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn extension_consistency(which in 0usize..5, t in -10.0..10.0f64, k in -100i32..=100) {
        let phi = &lipschitz_lifts()[which];
        let shift = f64::from(k) * TAU;
        let diff = phi.eval(t + shift) - phi.eval(t);
        prop_assert!((diff - shift).abs() <= 1e-12 * (1.0 + f64::from(k.abs())), "{} vs {}", diff, shift);
    }
}

#[test]
fn sharp_hilbert_peak_is_still_member() {
    // Rejected at 128/256 Hilbert samples: the peak of ℌ(φ') is narrower than the coarse grid.
    let p1 = Generator::Phi(4).lift();
    let p2 = Generator::Mobius(0.08319080226330187, -0.4859120839070844).lift();
    let combo = convex_combination(&p1, &p2, 0.2944148016364344).unwrap();
    let report = check_membership_with(&combo, &MembershipConfig::default(), &PVConfig::default()).unwrap();
    assert!(report.is_member(), "{report:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn convexity_closure(a in member_generator(), b in member_generator(), lambda in 0.0..=1.0f64) {
        let (p1, p2) = (a.lift(), b.lift());
        let mcfg = MembershipConfig::default();
        let combo = convex_combination(&p1, &p2, lambda).unwrap();
        let report = check_membership_with(&combo, &mcfg, &PVConfig::default()).unwrap();
        prop_assert!(report.is_member(), "{:?} {:?} λ={}: {:?}", a, b, lambda, report);

        let b1 = estimate_bilipschitz(&p1, mcfg.lipschitz_mesh).unwrap();
        let b2 = estimate_bilipschitz(&p2, mcfg.lipschitz_mesh).unwrap();
        prop_assert!(report.bilipschitz_upper <= b1.upper.max(b2.upper) + 1e-9);
        let bc = estimate_bilipschitz(&combo, mcfg.lipschitz_mesh).unwrap();
        prop_assert!(bc.min_quotient >= b1.lower.min(b2.lower) - 1e-9);
        prop_assert!((report.total_increase - TAU).abs() <= 1e-9);
    }
}

#[test]
fn convexity_endpoints_match_inputs() {
    let cfg = QuadratureConfig::default();
    let g = [Generator::Phi(2), Generator::Mobius(0.3, -0.1)];
    let (p1, p2) = (g[0].lift(), g[1].lift());
    for (lambda, endpoint) in [(1.0, &p1), (0.0, &p2)] {
        let combo = check_membership(&convex_combination(&p1, &p2, lambda).unwrap(), &cfg).unwrap();
        let direct = check_membership(endpoint, &cfg).unwrap();
        assert_eq!(combo.verdict, direct.verdict);
    }
}
