//! Drag-coefficient and lift-to-drag bounds at a given lift coefficient,
//! plus the Rayleigh flat-plate reference curve.
//!
//! The minimal drag is a pure analytic chain,
//! `C_Dmin = J_min(C_L/2)^2 / (2 pi)`. The maximal drag requires maximizing
//!
//! `C_Dmax = max (1/2pi) [sqrt(1-eps) J_max(q2) + sqrt(eps) J_max(q1)]^2`
//!
//! subject to `(1-eps) q2 - eps q1 = C_L/2`, `0 <= q1, q2 <= 1/e`,
//! `eps in [0, 1)`. The equality constraint eliminates `q2`, leaving a
//! smooth 2-D problem in `(eps, q1)` solved by a feasibility-clipped grid
//! scan followed by Nelder-Mead refinement from the best cells.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::extremals::{j_at_q_max, j_at_q_star, j_max_curve, j_min_curve, q_max};
use crate::functionals::SplitSpec;
use crate::optim::{minimize_polished, NelderMeadOptions};
use crate::real::{lit, Real};

/// Largest attainable lift coefficient, `2/e`.
pub fn c_l_max<T: Real>() -> T {
    lit::<T>(2.0) * q_max::<T>()
}

/// Exact maximal drag coefficient in the zero-lift limit,
/// `J_max(q_*)^2 / pi = 8/(pi e)` (split `eps = 1/2`, `q1 = q2 = q_*`).
pub fn drag_max_at_zero_lift<T: Real>() -> T {
    let j = j_at_q_star::<T>();
    j * j / T::PI()
}

fn check_c_l<T: Real>(c_l: T) -> Result<()> {
    if !(c_l > T::zero() && c_l <= c_l_max::<T>() + lit::<T>(1e-14)) {
        return Err(Error::domain("C_L", c_l, "(0, 2/e]"));
    }
    Ok(())
}

fn is_c_l_max<T: Real>(c_l: T) -> bool {
    (c_l - c_l_max::<T>()).abs() <= lit::<T>(1e-14)
}

/// Global minimum of the drag coefficient at lift coefficient `c_l`.
pub fn drag_min<T: Real>(c_l: T) -> Result<T> {
    check_c_l(c_l)?;
    let j = j_min_curve(c_l / lit::<T>(2.0))?;
    Ok(j * j / (lit::<T>(2.0) * T::PI()))
}

/// Maximal lift-to-drag ratio at lift coefficient `c_l`.
pub fn kappa_max<T: Real>(c_l: T) -> Result<T> {
    Ok(c_l / drag_min(c_l)?)
}

/// `J_max` extended by continuity with `J_max(0) = 0`; the optimizer probes
/// `q1 = 0` (one arc carrying no lift) and clips fp dust above `q_max`.
fn j_max_total<T: Real>(q: T) -> T {
    if q <= T::zero() {
        T::zero()
    } else if q >= q_max::<T>() {
        j_at_q_max::<T>()
    } else {
        j_max_curve(q).expect("q inside (0, q_max)")
    }
}

const EPS_CEIL: f64 = 1.0 - 1e-6;

/// Objective `sqrt(1-eps) J_max(q2) + sqrt(eps) J_max(q1)` with `q2`
/// eliminated through the lift constraint; `None` when infeasible.
fn split_objective<T: Real>(eps: T, q1: T, c_l: T) -> Option<T> {
    let one = T::one();
    if !(eps >= T::zero() && eps <= lit::<T>(EPS_CEIL)) || !(q1 >= T::zero() && q1 <= q_max()) {
        return None;
    }
    let q2 = (c_l / lit::<T>(2.0) + eps * q1) / (one - eps);
    if q2 > q_max::<T>() + lit::<T>(1e-12) {
        return None;
    }
    Some((one - eps).sqrt() * j_max_total(q2) + eps.sqrt() * j_max_total(q1))
}

fn split_of<T: Real>(eps: T, q1: T, c_l: T) -> SplitSpec<T> {
    let q2 = ((c_l / lit::<T>(2.0) + eps * q1) / (T::one() - eps)).min(q_max());
    SplitSpec {
        epsilon: eps,
        q1,
        q2,
    }
}

/// Nelder-Mead refinement (with restart polish) from a feasible start.
fn refine_split<T: Real>(c_l: T, eps0: T, q10: T) -> (T, SplitSpec<T>) {
    let big = lit::<T>(1e6);
    let objective = |x: &[T]| match split_objective(x[0], x[1], c_l) {
        Some(g) => -g,
        None => big,
    };
    let steps = [lit::<T>(5e-3), lit::<T>(5e-3) * q_max::<T>()];
    let opts = NelderMeadOptions::default();
    let (x, neg_g) = minimize_polished(objective, &[eps0, q10], &steps, &opts, 40);
    (-neg_g, split_of(x[0], x[1], c_l))
}

const GRID_CELLS: usize = 200;
const REFINE_FROM_BEST: usize = 5;

/// Global maximum of the drag coefficient at lift coefficient `c_l`,
/// together with the maximizing arc split. Deterministic: coarse
/// 200 x 200 feasibility-clipped grid scan, then local refinement from the
/// best cells. `c_l = 2/e` is a closed-form special case (the feasible set
/// degenerates to `eps = 0`, `q2 = 1/e`).
pub fn drag_max<T: Real>(c_l: T) -> Result<(T, SplitSpec<T>)> {
    check_c_l(c_l)?;
    if is_c_l_max(c_l) {
        let j = j_at_q_max::<T>();
        let c_d = j * j / (lit::<T>(2.0) * T::PI());
        return Ok((
            c_d,
            SplitSpec {
                epsilon: T::zero(),
                q1: T::zero(),
                q2: q_max(),
            },
        ));
    }

    // grid scan; J_max at the q1 grid values is reused across rows
    let n = GRID_CELLS;
    let q1_grid: Vec<T> = (0..n)
        .map(|j| q_max::<T>() * lit::<T>(j as f64) / lit::<T>((n - 1) as f64))
        .collect();
    let j1_grid: Vec<T> = q1_grid.iter().map(|&q| j_max_total(q)).collect();

    let mut best: Vec<(T, T, T)> = Vec::with_capacity(REFINE_FROM_BEST + 1);
    for i in 0..n {
        let eps = lit::<T>(EPS_CEIL) * lit::<T>(i as f64) / lit::<T>((n - 1) as f64);
        let one_m = T::one() - eps;
        for (j, &q1) in q1_grid.iter().enumerate() {
            let q2 = (c_l / lit::<T>(2.0) + eps * q1) / one_m;
            if q2 > q_max::<T>() + lit::<T>(1e-12) {
                continue;
            }
            let g = one_m.sqrt() * j_max_total(q2) + eps.sqrt() * j1_grid[j];
            if best.len() < REFINE_FROM_BEST || g > best.last().unwrap().0 {
                best.push((g, eps, q1));
                best.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));
                best.truncate(REFINE_FROM_BEST);
            }
        }
    }
    if best.is_empty() {
        return Err(Error::NoConvergence {
            context: "drag maximization",
            detail: format!("no feasible grid cell at C_L = {c_l}"),
        });
    }

    let mut winner: Option<(T, SplitSpec<T>)> = None;
    for &(_, eps, q1) in &best {
        let (g, split) = refine_split(c_l, eps, q1);
        if winner.as_ref().is_none_or(|w| g > w.0) {
            winner = Some((g, split));
        }
    }
    let (g, split) = winner.unwrap();
    Ok((g * g / (lit::<T>(2.0) * T::PI()), split))
}

/// One random-restart run of the drag maximizer: Nelder-Mead with restart
/// polish from a single random feasible initial point. Exists to probe for
/// spurious local maxima; all runs should agree with [`drag_max`].
pub fn drag_max_random_restarts<T: Real>(
    c_l: T,
    restarts: usize,
    seed: u64,
) -> Result<Vec<(T, SplitSpec<T>)>> {
    check_c_l(c_l)?;
    if restarts == 0 {
        return Err(Error::domain("restarts", 0.0, ">= 1"));
    }
    if is_c_l_max(c_l) {
        return Ok(vec![drag_max(c_l)?; restarts]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(restarts);
    for _ in 0..restarts {
        let (eps, q1) = loop {
            let eps = lit::<T>(rng.gen_range(0.0..EPS_CEIL));
            let q1 = q_max::<T>() * lit::<T>(rng.gen_range(0.0..1.0));
            if split_objective(eps, q1, c_l).is_some() {
                break (eps, q1);
            }
        };
        let (g, split) = refine_split(c_l, eps, q1);
        out.push((g * g / (lit::<T>(2.0) * T::PI()), split));
    }
    Ok(out)
}

/// Minimal lift-to-drag ratio at lift coefficient `c_l`.
pub fn kappa_min<T: Real>(c_l: T) -> Result<T> {
    Ok(c_l / drag_max(c_l)?.0)
}

/// One row of the bound curves.
#[derive(Debug, Clone, Copy)]
pub struct BoundPoint<T> {
    pub c_l: T,
    pub c_d_min: T,
    pub c_d_max: T,
    pub kappa_max: T,
    pub kappa_min: T,
    /// The split achieving `c_d_max`.
    pub split: SplitSpec<T>,
}

/// Evaluates one bound-curve row.
pub fn bound_point<T: Real>(c_l: T) -> Result<BoundPoint<T>> {
    let c_d_min = drag_min(c_l)?;
    let (c_d_max, split) = drag_max(c_l)?;
    Ok(BoundPoint {
        c_l,
        c_d_min,
        c_d_max,
        kappa_max: c_l / c_d_min,
        kappa_min: c_l / c_d_max,
        split,
    })
}

/// `n` rows with `C_L = (i/n) 2/e`, `i = 1..=n`, spanning `(0, 2/e]`.
pub fn bound_curve<T: Real>(n: usize) -> Result<Vec<BoundPoint<T>>> {
    if n < 2 {
        return Err(Error::domain("n", n as f64, ">= 2"));
    }
    (1..=n)
        .map(|i| bound_point(c_l_max::<T>() * lit::<T>(i as f64) / lit::<T>(n as f64)))
        .collect()
}

/// Rayleigh flat-plate point at angle of attack `alpha`.
#[derive(Debug, Clone, Copy)]
pub struct FlatPlatePoint<T> {
    pub alpha: T,
    pub c_l: T,
    pub c_d: T,
    pub kappa: T,
}

/// Rayleigh's closed-form flat-plate coefficients:
/// `C_D = 2 pi sin^2(a) / (4 + pi sin a)`,
/// `C_L = pi sin(2a) / (4 + pi sin a)`, `kappa = cot a`.
pub fn flat_plate<T: Real>(alpha: T) -> Result<FlatPlatePoint<T>> {
    let half_pi = T::FRAC_PI_2();
    if !(alpha > T::zero() && alpha <= half_pi + lit::<T>(1e-14)) {
        return Err(Error::domain("alpha", alpha, "(0, pi/2]"));
    }
    let pi = T::PI();
    let two = lit::<T>(2.0);
    let four = lit::<T>(4.0);
    let s = alpha.sin();
    let denom = four + pi * s;
    Ok(FlatPlatePoint {
        alpha,
        c_l: pi * (two * alpha).sin() / denom,
        c_d: two * pi * s * s / denom,
        kappa: alpha.cos() / s,
    })
}

/// `n` flat-plate points with `alpha = (i/n)(pi/2)`, `i = 1..=n`.
pub fn flat_plate_curve<T: Real>(n: usize) -> Result<Vec<FlatPlatePoint<T>>> {
    if n < 2 {
        return Err(Error::domain("n", n as f64, ">= 2"));
    }
    (1..=n)
        .map(|i| flat_plate(T::FRAC_PI_2() * lit::<T>(i as f64) / lit::<T>(n as f64)))
        .collect()
}

/// Position of a point relative to the drag band.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BandPosition {
    BelowMin,
    Between,
    AboveMax,
}

const CLASSIFY_TOL: f64 = 1e-9;

/// Classifies `(c_l, c_d)` against the band `[C_Dmin, C_Dmax]` with a 1e-9
/// boundary tolerance. `c_l = 0` is served by the analytic limits
/// (`C_Dmin -> 0`, `C_Dmax -> 8/(pi e)`), so flat-plate sweeps that reach
/// `alpha = pi/2` classify cleanly.
pub fn classify_point<T: Real>(c_l: T, c_d: T) -> Result<BandPosition> {
    let (lo, hi) = if c_l == T::zero() {
        (T::zero(), drag_max_at_zero_lift::<T>())
    } else {
        check_c_l(c_l)?;
        (drag_min(c_l)?, drag_max(c_l)?.0)
    };
    let tol = lit::<T>(CLASSIFY_TOL);
    if c_d < lo - tol {
        Ok(BandPosition::BelowMin)
    } else if c_d > hi + tol {
        Ok(BandPosition::AboveMax)
    } else {
        Ok(BandPosition::Between)
    }
}
