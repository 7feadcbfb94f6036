//! The lift and drag integrals of a velocity distribution and the assembly
//! of the force coefficients.
//!
//! For a dimensionless velocity `u(sigma)` on `[0, 1]`:
//!
//! * lift integral:  `I[u] = -Int_0^1 u log u dsigma`
//! * drag integral:  `J[u] = -Int_0^1 u log u / sqrt(Phi) dsigma`, with
//!   `Phi(sigma) = Int_0^sigma u` the running integral.
//!
//! With a stagnation point at arc fraction `epsilon` splitting the wetted
//! arc into two distributions `u1`, `u2`:
//!
//! * `C_L = 2 [(1-eps) I[u2] - eps I[u1]]`
//! * `C_D = (1/2pi) [sqrt(1-eps) J[u2] + sqrt(eps) J[u1]]^2`
//!
//! The drag integrand has an integrable `1/sqrt(sigma)`-type endpoint
//! singularity whenever `u(0) > 0`; it is removed by the substitution
//! `sigma = t^2`, after which the integrand is bounded.

use crate::distribution::{LambdaFunction, VelocityDistribution};
use crate::error::{Error, Result};
use crate::extremals::q_max;
use crate::quad::integrate;
use crate::real::{lit, Real};

/// Violations smaller than this are treated as boundary contact: the
/// minimizing extremals touch `u = 1` exactly.
pub const BRILLOUIN_TOL: f64 = 1e-12;

/// Quadrature tolerances. The drag tolerance is looser because of the
/// transformed endpoint singularity.
#[derive(Debug, Clone, Copy)]
pub struct EvalOptions<T> {
    /// Absolute and relative tolerance for the lift integral.
    pub tol_lift: T,
    /// Absolute and relative tolerance for the drag integral.
    pub tol_drag: T,
    pub max_panels: usize,
}

impl<T: Real> Default for EvalOptions<T> {
    fn default() -> Self {
        // 1e-10 / 1e-8 in f64; floors keep the targets reachable in f32
        Self {
            tol_lift: lit::<T>(1e-10).max(T::epsilon() * lit(100.0)),
            tol_drag: lit::<T>(1e-8).max(T::epsilon() * lit(100.0)),
            max_panels: 4000,
        }
    }
}

impl<T: Real> EvalOptions<T> {
    /// Uniform tolerance override for both integrals.
    pub fn with_tolerance(tol: T) -> Self {
        Self {
            tol_lift: tol,
            tol_drag: tol,
            ..Self::default()
        }
    }
}

/// `-x log x` extended continuously by 0 at `x = 0`.
#[inline]
fn neg_xlogx<T: Real>(x: T) -> T {
    if x > T::zero() {
        -(x * x.ln())
    } else {
        T::zero()
    }
}

fn quad_or_error<T: Real, F: Fn(T) -> T>(
    f: &F,
    breaks: &[T],
    tol: T,
    max_panels: usize,
    context: &'static str,
) -> Result<T> {
    let r = integrate(f, breaks, tol, tol, max_panels);
    if !r.converged {
        return Err(Error::NoConvergence {
            context,
            detail: format!(
                "estimated error {} after {} evaluations",
                r.error, r.evaluations
            ),
        });
    }
    Ok(r.value)
}

/// Lift integral `I[u]`.
pub fn lift_integral<T: Real>(u: &VelocityDistribution<T>) -> Result<T> {
    lift_integral_with(u, &EvalOptions::default())
}

pub fn lift_integral_with<T: Real>(
    u: &VelocityDistribution<T>,
    opts: &EvalOptions<T>,
) -> Result<T> {
    quad_or_error(
        &|s| neg_xlogx(u.value(s)),
        &u.breakpoints(),
        opts.tol_lift,
        opts.max_panels,
        "lift integral quadrature",
    )
}

/// Drag integral `J[u]`, evaluated in the substituted variable `t` with
/// `sigma = t^2`. Distributions vanishing on an initial interval are
/// rejected as degenerate (the divisor is zero on a set of positive
/// measure).
pub fn drag_integral<T: Real>(u: &VelocityDistribution<T>) -> Result<T> {
    drag_integral_with(u, &EvalOptions::default())
}

pub fn drag_integral_with<T: Real>(
    u: &VelocityDistribution<T>,
    opts: &EvalOptions<T>,
) -> Result<T> {
    let extent = u.leading_zero_extent();
    if extent > T::zero() {
        return Err(Error::DegenerateDistribution {
            delta: extent.to_f64().unwrap_or(f64::NAN),
        });
    }
    let integrand = |t: T| {
        let s = t * t;
        let n = neg_xlogx(u.value(s));
        if n == T::zero() {
            return T::zero();
        }
        let phi = u.running_integral(s);
        if phi <= T::zero() {
            return T::zero();
        }
        lit::<T>(2.0) * t * n / phi.sqrt()
    };
    let breaks: Vec<T> = u.breakpoints().iter().map(|&s| s.sqrt()).collect();
    quad_or_error(
        &integrand,
        &breaks,
        opts.tol_drag,
        opts.max_panels,
        "drag integral quadrature",
    )
}

/// Lift integral evaluated through the lambda form,
/// `I = -Int lambda lambda' log(lambda lambda')`.
pub fn lift_integral_lambda<T: Real>(lam: &LambdaFunction<T>) -> Result<T> {
    lift_integral_lambda_with(lam, &EvalOptions::default())
}

pub fn lift_integral_lambda_with<T: Real>(
    lam: &LambdaFunction<T>,
    opts: &EvalOptions<T>,
) -> Result<T> {
    quad_or_error(
        &|s| neg_xlogx(lam.velocity_value(s)),
        &lam.breakpoints(),
        opts.tol_lift,
        opts.max_panels,
        "lift integral quadrature",
    )
}

/// Drag integral evaluated through the lambda form,
/// `J = -sqrt(2) Int lambda' log(lambda lambda')`, in the substituted
/// variable `sigma = t^2`.
pub fn drag_integral_lambda<T: Real>(lam: &LambdaFunction<T>) -> Result<T> {
    drag_integral_lambda_with(lam, &EvalOptions::default())
}

pub fn drag_integral_lambda_with<T: Real>(
    lam: &LambdaFunction<T>,
    opts: &EvalOptions<T>,
) -> Result<T> {
    let extent = lam.leading_zero_extent();
    if extent > T::zero() {
        return Err(Error::DegenerateDistribution {
            delta: extent.to_f64().unwrap_or(f64::NAN),
        });
    }
    let two = lit::<T>(2.0);
    let integrand = |t: T| {
        let s = t * t;
        let uv = lam.velocity_value(s);
        if uv <= T::zero() {
            return T::zero();
        }
        let lnu = uv.ln();
        if lnu == T::zero() {
            return T::zero();
        }
        -T::SQRT_2() * two * t * lam.derivative(s) * lnu
    };
    let breaks: Vec<T> = lam.breakpoints().iter().map(|&s| s.sqrt()).collect();
    quad_or_error(
        &integrand,
        &breaks,
        opts.tol_drag,
        opts.max_panels,
        "drag integral quadrature",
    )
}

/// Admissibility report against the cavity-pressure condition `u <= 1`.
#[derive(Debug, Clone, Copy)]
pub struct BrillouinReport<T> {
    pub max_u: T,
    pub at_sigma: T,
    pub admissible: bool,
}

/// Reports the maximum of `u` and whether it exceeds `1` beyond the
/// boundary-contact tolerance. A report, never a failure.
pub fn validate_brillouin<T: Real>(u: &VelocityDistribution<T>) -> BrillouinReport<T> {
    let (max_u, at_sigma) = u.max_value();
    BrillouinReport {
        max_u,
        at_sigma,
        admissible: max_u <= T::one() + lit::<T>(BRILLOUIN_TOL),
    }
}

/// Lift and drag coefficients of a split arc.
#[derive(Debug, Clone, Copy)]
pub struct Coefficients<T> {
    pub c_l: T,
    pub c_d: T,
}

impl<T: Real> Coefficients<T> {
    /// Lift-to-drag ratio; infinite or NaN when the drag vanishes.
    pub fn kappa(&self) -> T {
        self.c_l / self.c_d
    }
}

/// Assembles the force coefficients from the arc split `epsilon = l1/l`
/// and the per-arc velocity distributions. `u1` (the leading arc) may be
/// omitted when `epsilon = 0`, in which case only `u2` enters. Inadmissible
/// distributions are rejected with a dedicated error.
pub fn assemble_coefficients<T: Real>(
    epsilon: T,
    u1: Option<&VelocityDistribution<T>>,
    u2: &VelocityDistribution<T>,
) -> Result<Coefficients<T>> {
    assemble_coefficients_with(epsilon, u1, u2, &EvalOptions::default())
}

pub fn assemble_coefficients_with<T: Real>(
    epsilon: T,
    u1: Option<&VelocityDistribution<T>>,
    u2: &VelocityDistribution<T>,
    opts: &EvalOptions<T>,
) -> Result<Coefficients<T>> {
    if !(epsilon >= T::zero() && epsilon < T::one()) {
        return Err(Error::domain("epsilon", epsilon, "[0, 1)"));
    }
    for dist in std::iter::once(u2).chain(u1) {
        let report = validate_brillouin(dist);
        if !report.admissible {
            return Err(Error::BrillouinViolation {
                max_u: report.max_u.to_f64().unwrap_or(f64::NAN),
                at_sigma: report.at_sigma.to_f64().unwrap_or(f64::NAN),
            });
        }
    }

    let one = T::one();
    let two = lit::<T>(2.0);
    let i2 = lift_integral_with(u2, opts)?;
    let j2 = drag_integral_with(u2, opts)?;
    let (i1, j1) = match u1 {
        Some(u1) if epsilon > T::zero() => {
            (lift_integral_with(u1, opts)?, drag_integral_with(u1, opts)?)
        }
        None if epsilon > T::zero() => {
            return Err(Error::domain("epsilon", epsilon, "0 when u1 is absent"));
        }
        _ => (T::zero(), T::zero()),
    };

    let c_l = two * ((one - epsilon) * i2 - epsilon * i1);
    let sum = (one - epsilon).sqrt() * j2 + epsilon.sqrt() * j1;
    let c_d = sum * sum / (two * T::PI());
    Ok(Coefficients { c_l, c_d })
}

/// Arc split and per-arc lift-integral values `(epsilon, q1, q2)` entering
/// the coefficient formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitSpec<T> {
    pub epsilon: T,
    pub q1: T,
    pub q2: T,
}

impl<T: Real> SplitSpec<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon >= T::zero() && self.epsilon < T::one()) {
            return Err(Error::domain("epsilon", self.epsilon, "[0, 1)"));
        }
        let hi = q_max::<T>() + lit::<T>(1e-12);
        if !(self.q1 >= T::zero() && self.q1 <= hi) {
            return Err(Error::domain("q1", self.q1, "[0, 1/e]"));
        }
        if !(self.q2 >= T::zero() && self.q2 <= hi) {
            return Err(Error::domain("q2", self.q2, "[0, 1/e]"));
        }
        Ok(())
    }

    /// Signed residual of the lift constraint `(1-eps) q2 - eps q1 = C_L/2`.
    pub fn constraint_residual(&self, c_l: T) -> T {
        (T::one() - self.epsilon) * self.q2 - self.epsilon * self.q1 - c_l / lit::<T>(2.0)
    }
}
