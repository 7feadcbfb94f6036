//! Minimal deterministic Nelder-Mead simplex minimizer.
//!
//! Standard reflect/expand/contract/shrink coefficients; terminates when
//! both the simplex diameter and the objective spread fall below tolerance.

use crate::real::{lit, Real};

#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions<T> {
    pub x_tol: T,
    pub f_tol: T,
    pub max_iters: usize,
}

impl<T: Real> Default for NelderMeadOptions<T> {
    fn default() -> Self {
        // floors keep the stopping rules reachable in coarser scalar types
        Self {
            x_tol: lit::<T>(1e-13).max(T::epsilon() * lit(4.0)),
            f_tol: lit::<T>(1e-15).max(T::epsilon() * lit(1e-2)),
            max_iters: 4000,
        }
    }
}

/// Minimizes `f` starting from `x0`, with initial simplex offsets `steps`.
/// Returns the best vertex and its objective value.
pub fn minimize<T: Real, F: FnMut(&[T]) -> T>(
    mut f: F,
    x0: &[T],
    steps: &[T],
    opts: &NelderMeadOptions<T>,
) -> (Vec<T>, T) {
    let dim = x0.len();
    debug_assert_eq!(steps.len(), dim);
    let alpha = T::one();
    let gamma = lit::<T>(2.0);
    let rho = lit::<T>(0.5);
    let shrink = lit::<T>(0.5);

    let mut simplex: Vec<Vec<T>> = Vec::with_capacity(dim + 1);
    simplex.push(x0.to_vec());
    for i in 0..dim {
        let mut p = x0.to_vec();
        p[i] = p[i] + steps[i];
        simplex.push(p);
    }
    let mut scores: Vec<T> = simplex.iter().map(|p| f(p)).collect();

    for _ in 0..opts.max_iters {
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| {
            scores[a]
                .partial_cmp(&scores[b])
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let best = order[0];
        let worst = order[dim];
        let second_worst = order[dim - 1];

        let f_spread = (scores[worst] - scores[best]).abs();
        let mut x_spread = T::zero();
        for p in &simplex {
            for d in 0..dim {
                x_spread = x_spread.max((p[d] - simplex[best][d]).abs());
            }
        }
        if f_spread <= opts.f_tol && x_spread <= opts.x_tol {
            break;
        }

        let mut centroid = vec![T::zero(); dim];
        for &i in order.iter().take(dim) {
            for d in 0..dim {
                centroid[d] = centroid[d] + simplex[i][d];
            }
        }
        let inv = T::one() / lit::<T>(dim as f64);
        for c in centroid.iter_mut() {
            *c = *c * inv;
        }

        let blend = |from: &[T], towards: &[T], coeff: T| -> Vec<T> {
            from.iter()
                .zip(towards)
                .map(|(&a, &b)| a + coeff * (b - a))
                .collect()
        };

        // reflection
        let reflected = blend(&centroid, &simplex[worst], -alpha);
        let f_r = f(&reflected);
        if f_r < scores[second_worst] && f_r >= scores[best] {
            simplex[worst] = reflected;
            scores[worst] = f_r;
            continue;
        }

        // expansion
        if f_r < scores[best] {
            let expanded = blend(&centroid, &reflected, gamma);
            let f_e = f(&expanded);
            if f_e < f_r {
                simplex[worst] = expanded;
                scores[worst] = f_e;
            } else {
                simplex[worst] = reflected;
                scores[worst] = f_r;
            }
            continue;
        }

        // contraction towards the better of (worst, reflected)
        let (target, f_target) = if f_r < scores[worst] {
            (reflected.clone(), f_r)
        } else {
            (simplex[worst].clone(), scores[worst])
        };
        let contracted = blend(&centroid, &target, rho);
        let f_c = f(&contracted);
        if f_c < f_target {
            simplex[worst] = contracted;
            scores[worst] = f_c;
            continue;
        }

        // shrink towards the best vertex
        let best_point = simplex[best].clone();
        for &i in order.iter().skip(1) {
            simplex[i] = blend(&best_point, &simplex[i], shrink);
            scores[i] = f(&simplex[i]);
        }
    }

    let mut best = 0;
    for i in 1..scores.len() {
        if scores[i] < scores[best] {
            best = i;
        }
    }
    (simplex[best].clone(), scores[best])
}

/// Re-runs Nelder-Mead from its own solution with a fresh simplex until the
/// objective stops improving. Guards against premature simplex collapse.
pub fn minimize_polished<T: Real, F: FnMut(&[T]) -> T>(
    mut f: F,
    x0: &[T],
    steps: &[T],
    opts: &NelderMeadOptions<T>,
    max_rounds: usize,
) -> (Vec<T>, T) {
    let mut x = x0.to_vec();
    let mut fx = T::infinity();
    let mut step_scale = T::one();
    for _ in 0..max_rounds {
        let scaled: Vec<T> = steps.iter().map(|&s| s * step_scale).collect();
        let (x_new, f_new) = minimize(&mut f, &x, &scaled, opts);
        let improved = fx - f_new;
        x = x_new;
        fx = fx.min(f_new);
        if improved <= lit::<T>(1e-13) {
            break;
        }
        step_scale = step_scale * lit::<T>(0.25);
    }
    (x, fx)
}
