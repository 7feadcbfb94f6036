//! Ties the closed-form extremal curves to independent quadrature of the
//! lift/drag integrals, and probes optimality against admissible
//! perturbations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ldbounds::extremals::{
    build_max_extremal, build_min_extremal, euler_residual, j_max_curve, j_min_curve, q_max,
};
use ldbounds::functionals::{
    drag_integral, drag_integral_lambda, lift_integral, lift_integral_lambda,
};
use ldbounds::{velocity_from_lambda, ExtremalDescriptor, VelocityDistribution};

fn q_grid(n: usize) -> Vec<f64> {
    (1..=n)
        .map(|i| q_max::<f64>() * i as f64 / n as f64)
        .collect()
}

#[test]
fn built_extremals_reproduce_curves_by_quadrature() {
    for q in q_grid(100) {
        let (_, lam) = build_min_extremal(q).unwrap();
        let u = velocity_from_lambda(&lam);
        let want_j = j_min_curve(q).unwrap();
        assert!(
            (lift_integral(&u).unwrap() - q).abs() < 1e-7,
            "min I at q = {q}"
        );
        assert!(
            (drag_integral(&u).unwrap() - want_j).abs() < 1e-7,
            "min J at q = {q}"
        );
        assert!(
            (lift_integral_lambda(&lam).unwrap() - q).abs() < 1e-7,
            "min I_l at q = {q}"
        );
        assert!(
            (drag_integral_lambda(&lam).unwrap() - want_j).abs() < 1e-7,
            "min J_l at q = {q}"
        );

        let (_, lam) = build_max_extremal(q).unwrap();
        let u = velocity_from_lambda(&lam);
        let want_j = j_max_curve(q).unwrap();
        assert!(
            (lift_integral(&u).unwrap() - q).abs() < 1e-7,
            "max I at q = {q}"
        );
        assert!(
            (drag_integral(&u).unwrap() - want_j).abs() < 1e-7,
            "max J at q = {q}"
        );
        assert!(
            (lift_integral_lambda(&lam).unwrap() - q).abs() < 1e-7,
            "max I_l at q = {q}"
        );
        assert!(
            (drag_integral_lambda(&lam).unwrap() - want_j).abs() < 1e-7,
            "max J_l at q = {q}"
        );
    }
}

#[test]
fn residuals_and_junction_continuity_over_grid() {
    let sigma: Vec<f64> = (0..=200).map(|i| i as f64 / 200.0).collect();
    for q in q_grid(100) {
        for (desc, _) in [
            build_min_extremal(q).unwrap(),
            build_max_extremal(q).unwrap(),
        ] {
            let r = euler_residual(&desc, &sigma);
            assert!(
                r.euler <= 1e-9,
                "euler residual {} at q = {q} ({desc:?})",
                r.euler
            );
            assert!(
                r.transversality <= 1e-9,
                "transversality residual {} at q = {q}",
                r.transversality
            );
            if let ExtremalDescriptor::MinPiecewise { a, gamma, .. } = desc {
                assert!(
                    ((2.0 * gamma).sqrt() - a).abs() <= 1e-12,
                    "lambda junction discontinuity at q = {q}"
                );
            }
        }
    }
}

#[test]
fn extremal_distributions_are_brillouin_admissible() {
    for q in q_grid(50) {
        let (desc_min, _) = build_min_extremal(q).unwrap();
        let (desc_max, _) = build_max_extremal(q).unwrap();
        for i in 0..=500 {
            let s = i as f64 / 500.0;
            let u_min = desc_min.velocity(s);
            let u_max = desc_max.velocity(s);
            assert!(
                (-1e-15..=1.0 + 1e-12).contains(&u_min),
                "u_min({s}) = {u_min} at q = {q}"
            );
            assert!(
                (-1e-15..=1.0 + 1e-12).contains(&u_max),
                "u_max({s}) = {u_max} at q = {q}"
            );
        }
    }
}

/// Blends a perturbed distribution towards `u = 1` (lift integral zero)
/// until its lift integral returns to `q`, staying inside the box.
fn renormalize_to(q: f64, sigma: &[f64], perturbed: &[f64]) -> Option<VelocityDistribution<f64>> {
    let lift_of = |t: f64| {
        let blended: Vec<f64> = perturbed
            .iter()
            .map(|&v| ((1.0 - t) * v + t).clamp(0.0, 1.0))
            .collect();
        let dist = VelocityDistribution::from_table(sigma, &blended).unwrap();
        (lift_integral(&dist).unwrap(), dist)
    };
    let (i0, _) = lift_of(0.0);
    if i0 <= q {
        return None; // perturbation did not raise the lift integral
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        let (i, _) = lift_of(mid);
        if i > q {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (i, dist) = lift_of(0.5 * (lo + hi));
    ((i - q).abs() < 1e-9).then_some(dist)
}

fn smooth_noise(rng: &mut ChaCha8Rng, sigma: &[f64], amplitude: f64) -> Vec<f64> {
    let a: [f64; 3] = [
        rng.gen_range(0.0..1.0),
        rng.gen_range(0.0..1.0),
        rng.gen_range(0.0..1.0),
    ];
    let phase: [f64; 3] = [
        rng.gen_range(0.0..std::f64::consts::TAU),
        rng.gen_range(0.0..std::f64::consts::TAU),
        rng.gen_range(0.0..std::f64::consts::TAU),
    ];
    sigma
        .iter()
        .map(|&s| {
            let mut v = 0.0;
            for k in 0..3 {
                v += a[k] * ((k + 1) as f64 * std::f64::consts::PI * s + phase[k]).sin();
            }
            amplitude * v.abs() / 3.0
        })
        .collect()
}

#[test]
fn admissible_perturbations_never_beat_the_bounds() {
    let sigma: Vec<f64> = (0..=400).map(|i| i as f64 / 400.0).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let q = 0.3;

    let (desc_min, _) = build_min_extremal(q).unwrap();
    let j_min = j_min_curve(q).unwrap();
    let mut tested = 0;
    while tested < 20 {
        let noise = smooth_noise(&mut rng, &sigma, 0.05);
        // push down from the minimizer: the lift integral rises
        let perturbed: Vec<f64> = sigma
            .iter()
            .zip(&noise)
            .map(|(&s, &n)| (desc_min.velocity(s) * (1.0 - n)).clamp(0.0, 1.0))
            .collect();
        if let Some(dist) = renormalize_to(q, &sigma, &perturbed) {
            let j = drag_integral(&dist).unwrap();
            assert!(j >= j_min - 1e-6, "perturbation beat J_min: {j} < {j_min}");
            tested += 1;
        }
    }

    let (desc_max, _) = build_max_extremal(q).unwrap();
    let j_max = j_max_curve(q).unwrap();
    let mut tested = 0;
    while tested < 20 {
        let noise = smooth_noise(&mut rng, &sigma, 0.05);
        // push up from the maximizer (u < 1/e): the lift integral rises
        let perturbed: Vec<f64> = sigma
            .iter()
            .zip(&noise)
            .map(|(&s, &n)| (desc_max.velocity(s) * (1.0 + n)).clamp(0.0, 1.0))
            .collect();
        if let Some(dist) = renormalize_to(q, &sigma, &perturbed) {
            let j = drag_integral(&dist).unwrap();
            assert!(j <= j_max + 1e-6, "perturbation beat J_max: {j} > {j_max}");
            tested += 1;
        }
    }
}

#[test]
fn bound_rows_evaluate_concurrently() {
    let c_ls = [0.1, 0.25, 0.4, 0.55, 0.7];
    let sequential: Vec<f64> = c_ls
        .iter()
        .map(|&c| ldbounds::bounds::bound_point(c).unwrap().c_d_max)
        .collect();
    let handles: Vec<_> = c_ls
        .iter()
        .map(|&c| std::thread::spawn(move || ldbounds::bounds::bound_point(c).unwrap().c_d_max))
        .collect();
    for (h, want) in handles.into_iter().zip(sequential) {
        let got = h.join().unwrap();
        assert_eq!(got, want, "concurrent row evaluation must match sequential");
    }
}
