mod common;

use common::{reference_economy, rel_err};
use salience_core::behavior::{
    admissible_tau_bound, allocation, behavioral_derivatives, dchat_ds, income, laffer_rate, order_preserving_bound,
    pareto_threshold, Policy,
};
use salience_core::economy::{anchor_incomes, wages_from_incomes, CalibrationSpec, Economy};
use salience_core::Error;

/// Effort cost `eps/(1+eps) * (z/w)^(1+1/eps)`.
fn effort_cost(z: f64, w: f64, eps: f64) -> f64 {
    eps / (1.0 + eps) * (z / w).powf(1.0 + 1.0 / eps)
}

fn marginal_cost(z: f64, w: f64, eps: f64) -> f64 {
    (z / w).powf(1.0 / eps) / w
}

/// Income an agent picks when maximizing perceived utility: a dense grid
/// locates the peak cell, bisection on the marginal condition refines it.
fn chosen_income(w: f64, tau: f64, s: f64, eps: f64) -> f64 {
    let perceived = |z: f64| (1.0 - s * tau) * z - effort_cost(z, w, eps);
    let top = 4.0 * w.powf(1.0 + eps);
    let n = 4000;
    let best = (1..n)
        .map(|k| top * k as f64 / n as f64)
        .max_by(|a, b| perceived(*a).total_cmp(&perceived(*b)))
        .unwrap();
    let step = top / n as f64;
    let (mut lo, mut hi) = ((best - step).max(0.0), best + step);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (1.0 - s * tau) - marginal_cost(mid, w, eps) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn oracle_c_hat(wages: &[f64], tau: f64, s: f64, eps: f64) -> Vec<f64> {
    let z: Vec<f64> = wages.iter().map(|&w| chosen_income(w, tau, s, eps)).collect();
    let z_bar = z.iter().sum::<f64>() / z.len() as f64;
    z.iter()
        .zip(wages)
        .map(|(&zi, &w)| (1.0 - tau) * zi + tau * z_bar - effort_cost(zi, w, eps))
        .collect()
}

#[test]
fn income_worked_examples() {
    let p = |t, s| Policy::new(t, s).unwrap();
    assert_eq!(income(1.0, &p(0.0, 1.0), 0.7), 1.0);
    assert!((income(2.0, &p(0.5, 1.0), 1.0) - 2.0).abs() < 1e-15);
    assert!((income(1.0, &p(0.5, 0.5), 1.0) - 0.75).abs() < 1e-15);
}

#[test]
fn closed_form_allocation_matches_agent_optimization() {
    let cases = [
        (vec![1.0, 2.0], 1.0, 0.25, 1.0),
        (vec![0.5, 1.1, 1.7, 3.0], 0.4, 0.35, 0.6),
        (vec![2.0, 2.5, 9.0], 0.25, 0.5, 0.2),
    ];
    for (wages, eps, tau, s) in cases {
        let e = Economy::from_wages(wages.clone(), eps, 1.0).unwrap();
        let closed = allocation(&e, &Policy::new(tau, s).unwrap()).c_hat;
        for (a, b) in closed.iter().zip(oracle_c_hat(&wages, tau, s, eps)) {
            assert!(rel_err(*a, b) < 1e-10, "{a} vs {b}");
        }
    }
    let two = allocation(&Economy::from_wages(vec![1.0, 2.0], 1.0, 1.0).unwrap(), &Policy::new(0.25, 1.0).unwrap());
    assert_eq!(two.z, vec![0.75, 3.0]);
    assert!((two.c_hat[0] - 0.75).abs() < 1e-14);
    assert!((two.c_hat[1] - 1.59375).abs() < 1e-14);
}

#[test]
fn single_agent_gets_own_taxes_back() {
    let (w, eps, tau, s) = (1.7, 0.4, 0.3, 0.6);
    let e = Economy::from_wages(vec![w], eps, 2.0).unwrap();
    let a = allocation(&e, &Policy::new(tau, s).unwrap());
    let z = a.z[0];
    let expected = z * (1.0 - tau) - effort_cost(z, w, eps) + tau * z;
    assert!(rel_err(a.c_hat[0], expected) < 1e-13);
    let untaxed = allocation(&Economy::from_wages(vec![1.0], 1.0, 1.0).unwrap(), &Policy::new(0.0, 1.0).unwrap());
    assert!((untaxed.c_hat[0] - 0.5).abs() < 1e-15);
}

#[test]
fn agents_satisfy_perceived_first_order_condition_and_overwork() {
    let e = reference_economy(0.25, 1.0);
    let (tau, s) = (0.35, 0.6);
    let a = allocation(&e, &Policy::new(tau, s).unwrap());
    for (z, w) in a.z.iter().zip(e.wages()) {
        let v_prime = marginal_cost(*z, *w, 0.25);
        assert!((1.0 - s * tau - v_prime).abs() < 1e-12);
        let true_residual = 1.0 - tau - v_prime;
        assert!(true_residual < 0.0);
        assert!((true_residual - (s * tau - tau)).abs() < 1e-12);
    }
}

#[test]
fn zero_tax_has_no_salience_response() {
    let e = reference_economy(0.5, 1.0);
    let p = Policy::new(0.0, 0.4).unwrap();
    let d = behavioral_derivatives(&e, &p);
    assert!(d.dz_ds.iter().all(|&v| v == 0.0));
    assert_eq!(behavioral_derivatives(&e, &Policy::new(0.0, 1.0).unwrap()).alpha, 1.0);
    assert!(dchat_ds(&e, &p).iter().all(|&v| v == 0.0));
}

#[test]
fn dz_ds_matches_finite_difference() {
    let e = reference_economy(0.25, 1.0);
    let (tau, s) = (0.4, 0.7);
    let d = behavioral_derivatives(&e, &Policy::new(tau, s).unwrap());
    let h = 1e-6 * s;
    for i in [0, 500, 1999] {
        let w = e.wages()[i];
        let fd = (income(w, &Policy::new(tau, s + h).unwrap(), 0.25) - income(w, &Policy::new(tau, s - h).unwrap(), 0.25))
            / (2.0 * h);
        assert!(rel_err(fd, d.dz_ds[i]) < 1e-6);
    }
}

#[test]
fn laffer_rate_examples_and_single_peak() {
    assert!((laffer_rate(1.0, 0.25).unwrap() - 0.8).abs() < 1e-15);
    assert!((laffer_rate(0.5, 1.0).unwrap() - 1.0).abs() < 1e-15);
    let e = Economy::from_wages(vec![1.0, 2.0, 3.0], 0.5, 1.0).unwrap();
    let s = 0.8;
    let peak = laffer_rate(s, 0.5).unwrap();
    let revenue = |t: f64| allocation(&e, &Policy::new(t, s).unwrap()).revenue;
    let grid: Vec<f64> = (1..1000).map(|k| k as f64 / 1000.0 / s).collect();
    let values: Vec<f64> = grid.iter().map(|&t| revenue(t)).collect();
    for (pair, t) in values.windows(2).zip(&grid) {
        if *t + 1.0 / 1000.0 / s < peak {
            assert!(pair[1] > pair[0]);
        } else if *t > peak {
            assert!(pair[1] < pair[0]);
        }
    }
    let h = 1e-4;
    assert!(revenue(peak - h) < revenue(peak) && revenue(peak + h) < revenue(peak));
}

#[test]
fn order_preservation_flips_at_the_bound() {
    assert_eq!(order_preserving_bound(1.0, 0.3).unwrap(), 1.0);
    assert!((order_preserving_bound(0.5, 1.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
    let e = Economy::from_wages(vec![1.0, 1.5, 2.0], 1.0, 1.0).unwrap();
    let s = 0.5;
    let bound = order_preserving_bound(s, 1.0).unwrap();
    let below = allocation(&e, &Policy::new(bound - 1e-3, s).unwrap()).c_hat;
    let above = allocation(&e, &Policy::new(bound + 1e-3, s).unwrap()).c_hat;
    assert!(below.windows(2).all(|p| p[1] > p[0]));
    assert!(above.windows(2).all(|p| p[1] < p[0]));
    assert!(!Policy::new(bound, s).unwrap().is_order_preserving(1.0));
}

#[test]
fn out_of_domain_parameters_are_rejected() {
    assert!(matches!(laffer_rate(1.0, 0.0), Err(Error::NonPositiveParameter { .. })));
    assert!(matches!(order_preserving_bound(0.5, -1.0), Err(Error::NonPositiveParameter { .. })));
    assert!(matches!(Policy::new(2.5, 0.5), Err(Error::DomainViolation(_))));
    assert!(matches!(Policy::new(0.2, 0.0), Err(Error::DomainViolation(_))));
}

#[test]
fn pareto_threshold_examples() {
    assert_eq!(pareto_threshold(&Economy::from_wages(vec![2.0], 0.5, 1.0).unwrap()), 0.0);
    // w^(1+eps) = (1, 3) with eps = 1
    let e = Economy::from_wages(vec![1.0, 3f64.sqrt()], 1.0, 1.0).unwrap();
    assert!((pareto_threshold(&e) - 1.0 / 3.0).abs() < 1e-14);

    let r = reference_economy(0.25, 1.0);
    let s_star = pareto_threshold(&r);
    let above = dchat_ds(&r, &Policy::new(0.3, s_star + 0.01).unwrap());
    assert!(above.iter().all(|&v| v < 0.0));
    let below = dchat_ds(&r, &Policy::new(0.3, s_star - 0.01).unwrap());
    assert!(*below.last().unwrap() > 0.0);
}

#[test]
fn dchat_ds_closed_form_checks() {
    let e = reference_economy(0.5, 1.0);
    let (tau, eps) = (0.3, 0.5);
    let full = dchat_ds(&e, &Policy::new(tau, 1.0).unwrap());
    let z_bar = allocation(&e, &Policy::new(tau, 1.0).unwrap()).z_bar;
    let expected = -eps * tau * tau * z_bar / (1.0 - tau);
    assert!(full.iter().all(|&v| rel_err(v, expected) < 1e-12));

    let s = 0.6;
    let d = dchat_ds(&e, &Policy::new(tau, s).unwrap());
    let h = 1e-6 * s;
    let up = allocation(&e, &Policy::new(tau, s + h).unwrap()).c_hat;
    let down = allocation(&e, &Policy::new(tau, s - h).unwrap()).c_hat;
    for i in [0, 1000, 1999] {
        assert!(rel_err((up[i] - down[i]) / (2.0 * h), d[i]) < 1e-6);
    }
}

#[test]
fn linear_structure_and_weighted_income_share() {
    let e = reference_economy(0.25, 3.0);
    for (tau, s) in [(0.1, 0.3), (0.5, 0.8), (0.7, 1.0)] {
        let p = Policy::new(tau, s).unwrap();
        assert!(p.is_order_preserving(0.25));
        let a = allocation(&e, &p);
        assert!(a.slope > 0.0 && a.intercept > 0.0);
        let h = a.weights.as_ref().unwrap().h_bar;
        assert!(h > 0.0 && h < 1.0);
        assert!(a.z.windows(2).all(|w| w[1] > w[0]));
        assert!(a.c_hat.iter().all(|&c| c > 0.0));
    }
    assert!(admissible_tau_bound(0.5, 0.25).unwrap() > 0.0);
}

#[test]
fn calibration_round_trip_and_anchor_mean() {
    let spec = CalibrationSpec::reference(0.25, 1.0);
    let e = reference_economy(0.25, 1.0);
    let anchor = Policy::new(spec.anchor_tau, spec.anchor_s).unwrap();
    let z = allocation(&e, &anchor).z;
    let back = wages_from_incomes(&z, spec.anchor_tau, spec.anchor_s, 0.25);
    for (a, b) in back.iter().zip(e.wages()) {
        assert!(rel_err(*a, *b) < 1e-12);
    }
    let mean = z.iter().sum::<f64>() / z.len() as f64;
    assert!(rel_err(mean, 114_500.0) < 0.02, "{mean}");
    assert_eq!(e.node_weight() * e.len() as f64, 1.0);

    let untaxed = wages_from_incomes(&[4.0, 9.0], 0.0, 0.3, 1.0);
    assert_eq!(untaxed, vec![2.0, 3.0]);

    assert!((spec.log_mean() - 11.032_330_101_976_433).abs() < 1e-12);
    assert!((spec.log_sd() - 1.109_954_954_040_928_6).abs() < 1e-12);
    let incomes = anchor_incomes(&spec).unwrap();
    assert!(incomes.windows(2).all(|w| w[1] > w[0]));
    assert!(incomes[0] >= 1000.0 && *incomes.last().unwrap() <= 2e6 * (1.0 + 1e-9));
}
