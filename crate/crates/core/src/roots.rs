//! Bracketed scalar root finding: bisection with a safeguarded secant step.
//!
//! The secant proposal is accepted only when it lands strictly inside the
//! current bracket; otherwise the step falls back to a bisection. Robust on
//! any continuous sign-changing function.

use crate::error::{Error, Result};
use crate::real::{lit, Real};

/// Finds `x` in `[lo, hi]` with `f(x) = 0`, assuming `f(lo)` and `f(hi)`
/// have opposite signs (either may be zero). Terminates when the bracket is
/// narrower than `x_tol`.
pub fn solve_bracketed<T: Real, F: Fn(T) -> T>(
    f: F,
    mut lo: T,
    mut hi: T,
    x_tol: T,
    max_iters: usize,
) -> Result<T> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == T::zero() {
        return Ok(lo);
    }
    if fhi == T::zero() {
        return Ok(hi);
    }
    if flo * fhi > T::zero() {
        return Err(Error::NoConvergence {
            context: "bracketed root solve",
            detail: format!("no sign change on bracket [{lo}, {hi}]"),
        });
    }

    let half = lit::<T>(0.5);
    let mut x_prev = lo;
    let mut f_prev = flo;
    let mut x_cur = hi;
    let mut f_cur = fhi;

    for _ in 0..max_iters {
        if (hi - lo).abs() <= x_tol {
            return Ok(half * (lo + hi));
        }

        // secant proposal from the two most recent iterates
        let mut x_new = if f_cur != f_prev {
            x_cur - f_cur * (x_cur - x_prev) / (f_cur - f_prev)
        } else {
            T::nan()
        };
        let margin = lit::<T>(0.01) * (hi - lo);
        if !(x_new > lo + margin && x_new < hi - margin) {
            x_new = half * (lo + hi);
        }

        let f_new = f(x_new);
        if f_new == T::zero() {
            return Ok(x_new);
        }
        if flo * f_new < T::zero() {
            hi = x_new;
        } else {
            lo = x_new;
            flo = f_new;
        }
        x_prev = x_cur;
        f_prev = f_cur;
        x_cur = x_new;
        f_cur = f_new;
    }

    if (hi - lo).abs() <= x_tol * lit::<T>(4.0) {
        return Ok(half * (lo + hi));
    }
    Err(Error::NoConvergence {
        context: "bracketed root solve",
        detail: format!("bracket [{lo}, {hi}] wider than tolerance after {max_iters} iterations"),
    })
}
