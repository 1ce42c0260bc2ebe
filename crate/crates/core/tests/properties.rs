use proptest::prelude::*;

use salience_core::behavior::{admissible_tau_bound, allocation, Policy};
use salience_core::economy::Economy;
use salience_core::geometry::{efficiency_at_perceived_rate, iso_equality_tau};
use salience_core::numeric::bisect;
use salience_core::optimizer::{morally_dominates, s_optimal_tax, EvaluatedPolicy, DEFAULT_TOL};
use salience_core::twotax::{feasibility_bound, from_two_tax, to_two_tax};
use salience_core::welfare::{atkinson, decompose, lorenz};

fn wages() -> impl Strategy<Value = Vec<f64>> {
    (0.1f64..5.0, prop::collection::vec(0.01f64..2.0, 1..40)).prop_map(|(first, steps)| {
        let mut w = vec![first];
        for d in steps {
            let last = *w.last().unwrap();
            w.push(last + d);
        }
        w
    })
}

fn economy() -> impl Strategy<Value = Economy> {
    (wages(), 0.1f64..1.0, 0.1f64..4.0).prop_map(|(w, eps, rho)| Economy::from_wages(w, eps, rho).unwrap())
}

/// An admissible policy as fractions of the salience range and the tax bound.
fn policy_fractions() -> impl Strategy<Value = (f64, f64)> {
    (0.05f64..=1.0, 0.01f64..0.99)
}

fn admissible(e: &Economy, s: f64, frac: f64) -> Policy {
    Policy::new(frac * admissible_tau_bound(s, e.epsilon()).unwrap(), s).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decomposition_identities(e in economy(), (s, frac) in policy_fractions()) {
        let d = decompose(&e, &admissible(&e, s, frac)).unwrap();
        prop_assert_eq!(d.xi, d.equality * d.mu);
        prop_assert!(d.xi <= d.mu * (1.0 + 1e-12));
        prop_assert!(d.equality > 0.0 && d.equality <= 1.0 + 1e-12);
    }

    #[test]
    fn allocation_structure_at_admissible_policies(e in economy(), (s, frac) in policy_fractions()) {
        let a = allocation(&e, &admissible(&e, s, frac));
        prop_assert!(a.z.windows(2).all(|w| w[1] > w[0]));
        prop_assert!(a.c_hat.iter().all(|&c| c > 0.0));
        prop_assert!(a.slope > 0.0);
        if e.len() > 1 {
            let h = a.weights.as_ref().unwrap().h_bar;
            prop_assert!(h > 0.0 && h < 1.0);
        }
    }

    #[test]
    fn atkinson_index_is_scale_invariant(
        c in prop::collection::vec(0.01f64..100.0, 1..50),
        lambda in 0.001f64..1000.0,
        rho in prop_oneof![Just(1.0), 0.05f64..5.0],
    ) {
        let scaled: Vec<f64> = c.iter().map(|x| x * lambda).collect();
        let a = atkinson(&c, rho).unwrap().equality;
        let b = atkinson(&scaled, rho).unwrap().equality;
        prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0));
    }

    #[test]
    fn rescaling_wages_leaves_equality_unchanged(e in economy(), lambda in 0.1f64..10.0, (s, frac) in policy_fractions()) {
        let scaled = Economy::from_wages(e.wages().iter().map(|w| w * lambda).collect(), e.epsilon(), e.rho()).unwrap();
        let p = admissible(&e, s, frac);
        let a = decompose(&e, &p).unwrap().equality;
        let b = decompose(&scaled, &p).unwrap().equality;
        prop_assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn efficiency_depends_only_on_perceived_rate(e in economy(), (s, frac) in policy_fractions()) {
        let p = admissible(&e, s, frac);
        let mu = decompose(&e, &p).unwrap().mu;
        let via_rate = efficiency_at_perceived_rate(&e, p.perceived_rate());
        prop_assert!((mu - via_rate).abs() <= 1e-10 * mu);
    }

    #[test]
    fn lorenz_curve_shape(c in prop::collection::vec(0.01f64..100.0, 2..60)) {
        let mut sorted = c.clone();
        sorted.sort_by(f64::total_cmp);
        let l = lorenz(&sorted).unwrap();
        prop_assert_eq!(*l.shares.last().unwrap(), 1.0);
        let mut prev = (0.0, 0.0);
        let mut prev_slope = 0.0;
        for (q, share) in l.quantiles.iter().zip(&l.shares) {
            prop_assert!(*share >= prev.1);
            let slope = (share - prev.1) / (q - prev.0);
            prop_assert!(slope >= prev_slope - 1e-9);
            prev_slope = slope;
            prev = (*q, *share);
        }
    }

    #[test]
    fn two_tax_round_trip(tau in 0.01f64..0.95, u in 0.0f64..=1.0, s_c in 0.01f64..0.99) {
        let bound = feasibility_bound(tau, s_c);
        let s = bound + (1.0 - bound) * u;
        let p = to_two_tax(tau, s, s_c).unwrap();
        prop_assert!(p.tau_l >= 0.0 && p.tau_c >= 0.0);
        let (t2, s2) = from_two_tax(&p).unwrap();
        prop_assert!((t2 - tau).abs() < 1e-12);
        prop_assert!((s2 - s).abs() < 1e-12);
        prop_assert!((p.effective_retention() - (1.0 - tau)).abs() < 1e-12);
        prop_assert!((p.perceived_retention() - (1.0 - s * tau)).abs() < 1e-12);
    }

    #[test]
    fn iso_equality_closed_form_solves_its_ode(eps in 0.1f64..1.0, tau0 in 0.05f64..0.8, s0 in 0.1f64..0.9, ds in -0.05f64..0.05) {
        let s = s0 + ds;
        let h = 1e-5;
        let slope = (iso_equality_tau(eps, tau0, s0, s + h) - iso_equality_tau(eps, tau0, s0, s - h)) / (2.0 * h);
        let tau = iso_equality_tau(eps, tau0, s0, s);
        prop_assert!((slope - eps * tau * tau).abs() <= 1e-6 * eps * tau * tau);
    }

    #[test]
    fn dominance_is_asymmetric(e in economy(), a in policy_fractions(), b in policy_fractions()) {
        let pa = EvaluatedPolicy::evaluate(&e, admissible(&e, a.0, a.1)).unwrap();
        let pb = EvaluatedPolicy::evaluate(&e, admissible(&e, b.0, b.1)).unwrap();
        prop_assert!(!(morally_dominates(&pa, &pb).unwrap() && morally_dominates(&pb, &pa).unwrap()));
    }

    #[test]
    fn bisection_finds_monotone_roots(root in -10.0f64..10.0, slope in 0.1f64..10.0) {
        let x = bisect(|x| Ok(slope * (x - root).powi(3) + slope * (x - root)), -20.0, 20.0, 1e-12, 200).unwrap();
        prop_assert!((x - root).abs() < 1e-11);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn s_optimum_is_interior_admissible_and_concave(e in economy().prop_filter("needs dispersion", |e| e.len() > 1), s in 0.05f64..=1.0) {
        let r = s_optimal_tax(&e, s, DEFAULT_TOL).unwrap();
        prop_assert!(r.tau_star > 0.0);
        prop_assert!(r.order_preserving_margin > 0.0 && r.revenue_efficient_margin > 0.0);
        prop_assert!(r.soc_value < 0.0);
        prop_assert!(r.formula_residual < 10.0 * DEFAULT_TOL);
    }
}
