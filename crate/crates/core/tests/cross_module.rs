use ergodic_lab::approximants::WeightFunction;
use ergodic_lab::circle_method::{exp_sum_m, major_arc_scan, projection_pi_z, RationalFrequency};
use ergodic_lab::gowers::{steps_for_error, u_norm_estimate};
use ergodic_lab::padic::{char_eigenvalues, unit_group_average, CyclicSignal};
use ergodic_lab::polynomial::{Polynomial, PolynomialFamily};
use ergodic_lab::rotation::{rotation_average, RotationSystem, TrigPoly};
use ergodic_lab::signals::SignalZ;
use ergodic_lab::Complex64;

fn e(theta: f64) -> Complex64 {
    let a = -2.0 * std::f64::consts::PI * theta;
    Complex64::new(a.cos(), a.sin())
}

#[test]
fn unit_average_acts_on_tones_by_eigenvalues() {
    let q = 13usize;
    let fam: PolynomialFamily = "n^2".parse().unwrap();
    let sq: Polynomial = "n^2".parse().unwrap();
    let eig = char_eigenvalues(13, 1, &sq).unwrap();
    for t in 0..q as i64 {
        let tone = CyclicSignal::tone(q, t);
        let out = unit_group_average(&fam, &[tone.clone()]).unwrap();
        let lambda = eig[(q as i64 - t).rem_euclid(q as i64) as usize];
        for (a, b) in out.values().iter().zip(tone.values()) {
            assert!((a - lambda * b).norm() < 1e-12, "t = {t}");
        }
    }
}

#[test]
fn unit_weight_linear_sum_matches_direct_sum() {
    let fam: PolynomialFamily = "n".parse().unwrap();
    for &xi in &[0.0, 0.1, 0.25, 1.0 / 3.0, 0.731] {
        let n = 1000.0;
        let direct: Complex64 = (501..=1000).map(|m| e(xi * m as f64)).sum::<Complex64>() / n;
        let got = exp_sum_m(&WeightFunction::Unit, &fam, n, &[xi]).unwrap();
        assert!((got - direct).norm() < 1e-12, "xi = {xi}");
    }
}

#[test]
fn pure_quadratic_phase_has_unit_norm_inside_the_interval() {
    let len = 64;
    let values: Vec<Complex64> = (1..=len).map(|n| e(0.123456 * (n * n) as f64 + 0.3 * n as f64)).collect();
    let steps = steps_for_error(len, 2, 0.5);
    let est = u_norm_estimate(&values, 1, 2, &steps).unwrap();
    assert!(est.lower_bound <= 1.0 + 1e-12);
    assert!(est.upper_bound() >= 1.0 - 1e-12);
}

#[test]
fn projection_keeps_the_mean() {
    let f = SignalZ::from_real(-3, &[1.0, -2.0, 0.5, 4.0, 1.5]);
    let out = projection_pi_z(&f, 64, 1, -3).unwrap();
    let sum_in: Complex64 = f.values().iter().sum();
    let sum_out: Complex64 = out.values().iter().sum();
    assert!((sum_in - sum_out).norm() < 1e-12);
}

#[test]
fn rational_rotation_over_whole_periods_averages_to_zero() {
    let sys = RotationSystem::new(0.25).unwrap();
    let fam: PolynomialFamily = "n".parse().unwrap();
    let v = rotation_average(&sys, &WeightFunction::Unit, &fam, &[TrigPoly::character(1)], 8.0, 0.1).unwrap();
    assert!(v.norm() < 1e-15);
}

#[test]
fn unit_weight_scan_at_zero_is_close_to_the_continuous_symbol() {
    let fam: PolynomialFamily = "n,n^2".parse().unwrap();
    let n = 1e4;
    let theta = [RationalFrequency::new(0, 1).unwrap(); 2];
    let report = major_arc_scan(&WeightFunction::Unit, &fam, n, &theta, &[1.0 / n, 1.0 / (n * n)], 3).unwrap();
    assert!(report.max_error < 1e-3, "{}", report.max_error);
}
