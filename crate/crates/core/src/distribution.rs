//! Velocity distributions and their lambda transforms.
//!
//! A velocity distribution is the dimensionless surface speed ratio
//! `u(sigma) = v/v0` on a wetted arc rescaled to `[0, 1]`. The variational
//! machinery works with the transformed unknown
//! `lambda(sigma) = sqrt(2 Int_0^sigma u)`, for which `u = lambda lambda'`.
//!
//! Both types carry exact representations where one exists (constants,
//! closed-form extremals) and monotone piecewise-cubic interpolants for
//! tabulated data. Conversions between the two types are representation
//! preserving, so the `u -> lambda -> u` round trip is exact.

use crate::error::{Error, Result};
use crate::extremals::ExtremalDescriptor;
use crate::interp::PchipCurve;
use crate::real::{lit, Real};

/// Minimum number of points accepted in a tabulated grid.
pub const MIN_TABLE_POINTS: usize = 8;

const GRID_SNAP: f64 = 1e-12;

fn validate_grid<T: Real>(sigma: &[T], values: &[T]) -> Result<(Vec<T>, Vec<T>)> {
    if sigma.len() != values.len() {
        return Err(Error::Csv {
            line: 0,
            detail: format!(
                "abscissa and value counts differ ({} vs {})",
                sigma.len(),
                values.len()
            ),
        });
    }
    if sigma.len() < MIN_TABLE_POINTS {
        return Err(Error::GridTooSmall {
            len: sigma.len(),
            min: MIN_TABLE_POINTS,
        });
    }
    for (i, (&s, &v)) in sigma.iter().zip(values).enumerate() {
        if !s.is_finite() || !v.is_finite() {
            return Err(Error::NonFiniteSample { index: i });
        }
    }
    let snap = lit::<T>(GRID_SNAP);
    let first = sigma[0];
    let last = *sigma.last().unwrap();
    if first.abs() > snap || (last - T::one()).abs() > snap {
        return Err(Error::GridNotCovering {
            first: first.to_f64().unwrap_or(f64::NAN),
            last: last.to_f64().unwrap_or(f64::NAN),
        });
    }
    let mut x = sigma.to_vec();
    x[0] = T::zero();
    *x.last_mut().unwrap() = T::one();
    for i in 1..x.len() {
        if x[i] <= x[i - 1] {
            return Err(Error::GridNotIncreasing { index: i });
        }
    }
    Ok((x, values.to_vec()))
}

#[derive(Debug, Clone)]
enum VelocityRepr<T> {
    /// `u = c` exactly.
    Constant(T),
    /// Monotone cubic interpolant of `(sigma, u)` samples.
    Tabulated(PchipCurve<T>),
    /// Closed-form extremal, `u = lambda lambda'`.
    Extremal(ExtremalDescriptor<T>),
    /// Product `L L'` of a tabulated lambda interpolant (keeps
    /// velocity-from-lambda conversions pointwise-exact).
    FromLambda(PchipCurve<T>),
}

/// Dimensionless flow-speed ratio `u(sigma)` on `[0, 1]`.
#[derive(Debug, Clone)]
pub struct VelocityDistribution<T> {
    repr: VelocityRepr<T>,
}

impl<T: Real> VelocityDistribution<T> {
    /// The exact constant distribution `u = c`.
    pub fn constant(c: T) -> Result<Self> {
        if !c.is_finite() {
            return Err(Error::NonFiniteSample { index: 0 });
        }
        if c < T::zero() {
            return Err(Error::NegativeSample {
                index: 0,
                value: c.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self {
            repr: VelocityRepr::Constant(c),
        })
    }

    /// Tabulated distribution on a strictly increasing grid covering [0, 1].
    pub fn from_table(sigma: &[T], u: &[T]) -> Result<Self> {
        let (x, y) = validate_grid(sigma, u)?;
        for (i, &v) in y.iter().enumerate() {
            if v < T::zero() {
                return Err(Error::NegativeSample {
                    index: i,
                    value: v.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(Self {
            repr: VelocityRepr::Tabulated(PchipCurve::new(x, y)?),
        })
    }

    /// Closed-form extremal distribution.
    pub fn from_extremal(desc: ExtremalDescriptor<T>) -> Self {
        Self {
            repr: VelocityRepr::Extremal(desc),
        }
    }

    pub(crate) fn from_lambda_curve(curve: PchipCurve<T>) -> Self {
        Self {
            repr: VelocityRepr::FromLambda(curve),
        }
    }

    pub fn value(&self, sigma: T) -> T {
        match &self.repr {
            VelocityRepr::Constant(c) => *c,
            VelocityRepr::Tabulated(p) => p.value(sigma),
            VelocityRepr::Extremal(d) => d.velocity(sigma),
            VelocityRepr::FromLambda(l) => l.value(sigma) * l.derivative(sigma),
        }
    }

    /// Running integral `Phi(sigma) = Int_0^sigma u`, exact per
    /// representation (no nested quadrature).
    pub fn running_integral(&self, sigma: T) -> T {
        match &self.repr {
            VelocityRepr::Constant(c) => *c * sigma,
            VelocityRepr::Tabulated(p) => p.integral_to(sigma),
            VelocityRepr::Extremal(d) => d.running_integral(sigma),
            VelocityRepr::FromLambda(l) => {
                let v = l.value(sigma);
                lit::<T>(0.5) * v * v
            }
        }
    }

    /// Abscissae at which the representation changes formula: quadrature
    /// panels are seeded at these points.
    pub fn breakpoints(&self) -> Vec<T> {
        match &self.repr {
            VelocityRepr::Constant(_) => vec![T::zero(), T::one()],
            VelocityRepr::Tabulated(p) => p.knots().to_vec(),
            VelocityRepr::Extremal(d) => d.quad_breaks(),
            VelocityRepr::FromLambda(l) => l.knots().to_vec(),
        }
    }

    /// Maximum of `u` and the abscissa attaining it. Tabulated interpolants
    /// cannot overshoot their samples, so a knot scan is exact; closed forms
    /// are monotone per arc.
    pub fn max_value(&self) -> (T, T) {
        match &self.repr {
            VelocityRepr::Constant(c) => (*c, T::zero()),
            VelocityRepr::Tabulated(p) => {
                let mut best = (p.values()[0], p.knots()[0]);
                for (&x, &y) in p.knots().iter().zip(p.values()) {
                    if y > best.0 {
                        best = (y, x);
                    }
                }
                best
            }
            VelocityRepr::Extremal(d) => d.max_velocity(),
            VelocityRepr::FromLambda(l) => {
                let mut best = (T::zero(), T::zero());
                let knots = l.knots();
                for w in knots.windows(2) {
                    for s in [w[0], lit::<T>(0.5) * (w[0] + w[1])] {
                        let v = self.value(s);
                        if v > best.0 {
                            best = (v, s);
                        }
                    }
                }
                let v = self.value(T::one());
                if v > best.0 {
                    best = (v, T::one());
                }
                best
            }
        }
    }

    /// Length of the initial interval on which `u` vanishes identically
    /// (zero for healthy distributions; positive means the drag integrand
    /// divisor is zero over a set of positive measure).
    pub fn leading_zero_extent(&self) -> T {
        match &self.repr {
            VelocityRepr::Constant(c) => {
                if *c == T::zero() {
                    T::one()
                } else {
                    T::zero()
                }
            }
            VelocityRepr::Tabulated(p) => {
                let mut extent = T::zero();
                for (&x, &phi) in p.knots().iter().zip(p.knot_integrals()).skip(1) {
                    if phi <= T::zero() {
                        extent = x;
                    } else {
                        break;
                    }
                }
                extent
            }
            VelocityRepr::Extremal(_) => T::zero(),
            VelocityRepr::FromLambda(l) => {
                let mut extent = T::zero();
                for (&x, &lam) in l.knots().iter().zip(l.values()).skip(1) {
                    if lam <= T::zero() {
                        extent = x;
                    } else {
                        break;
                    }
                }
                extent
            }
        }
    }
}

#[derive(Debug, Clone)]
enum LambdaRepr<T> {
    /// Monotone cubic interpolant of `(sigma, lambda)` samples.
    Tabulated(PchipCurve<T>),
    /// `lambda = sqrt(2 Phi_u)` for a stored velocity distribution.
    FromVelocity(Box<VelocityDistribution<T>>),
    /// Closed-form extremal.
    Extremal(ExtremalDescriptor<T>),
}

/// The transformed unknown `lambda(sigma)` with `lambda(0) = 0` and
/// `lambda' >= 0`.
#[derive(Debug, Clone)]
pub struct LambdaFunction<T> {
    repr: LambdaRepr<T>,
}

impl<T: Real> LambdaFunction<T> {
    /// Tabulated lambda on a grid covering [0, 1]. Rejects non-monotone
    /// samples and a nonzero anchor value at sigma = 0.
    pub fn from_table(sigma: &[T], lambda: &[T]) -> Result<Self> {
        let (x, mut y) = validate_grid(sigma, lambda)?;
        if y[0].abs() > lit::<T>(GRID_SNAP) {
            return Err(Error::LambdaNotAnchored {
                value: y[0].to_f64().unwrap_or(f64::NAN),
            });
        }
        y[0] = T::zero();
        for i in 1..y.len() {
            if y[i] < y[i - 1] {
                return Err(Error::NonMonotoneLambda { index: i });
            }
        }
        Ok(Self {
            repr: LambdaRepr::Tabulated(PchipCurve::new(x, y)?),
        })
    }

    pub fn from_extremal(desc: ExtremalDescriptor<T>) -> Self {
        Self {
            repr: LambdaRepr::Extremal(desc),
        }
    }

    pub fn value(&self, sigma: T) -> T {
        match &self.repr {
            LambdaRepr::Tabulated(p) => p.value(sigma),
            LambdaRepr::FromVelocity(u) => (lit::<T>(2.0) * u.running_integral(sigma))
                .max(T::zero())
                .sqrt(),
            LambdaRepr::Extremal(d) => d.lambda(sigma),
        }
    }

    /// `lambda'(sigma)`; unbounded at sigma = 0 when the underlying
    /// velocity does not vanish there.
    pub fn derivative(&self, sigma: T) -> T {
        match &self.repr {
            LambdaRepr::Tabulated(p) => p.derivative(sigma),
            LambdaRepr::FromVelocity(u) => u.value(sigma) / self.value(sigma),
            LambdaRepr::Extremal(d) => d.lambda_deriv(sigma),
        }
    }

    /// The induced velocity `u = lambda lambda'`, in the representation's
    /// exact form.
    pub fn velocity_value(&self, sigma: T) -> T {
        match &self.repr {
            LambdaRepr::Tabulated(p) => p.value(sigma) * p.derivative(sigma),
            LambdaRepr::FromVelocity(u) => u.value(sigma),
            LambdaRepr::Extremal(d) => d.velocity(sigma),
        }
    }

    /// Running integral of the induced velocity, `Phi = lambda^2 / 2`.
    pub fn running_integral(&self, sigma: T) -> T {
        match &self.repr {
            LambdaRepr::Tabulated(p) => {
                let v = p.value(sigma);
                lit::<T>(0.5) * v * v
            }
            LambdaRepr::FromVelocity(u) => u.running_integral(sigma),
            LambdaRepr::Extremal(d) => d.running_integral(sigma),
        }
    }

    pub fn breakpoints(&self) -> Vec<T> {
        match &self.repr {
            LambdaRepr::Tabulated(p) => p.knots().to_vec(),
            LambdaRepr::FromVelocity(u) => u.breakpoints(),
            LambdaRepr::Extremal(d) => d.quad_breaks(),
        }
    }

    /// See [`VelocityDistribution::leading_zero_extent`].
    pub fn leading_zero_extent(&self) -> T {
        match &self.repr {
            LambdaRepr::Tabulated(p) => {
                let mut extent = T::zero();
                for (&x, &lam) in p.knots().iter().zip(p.values()).skip(1) {
                    if lam <= T::zero() {
                        extent = x;
                    } else {
                        break;
                    }
                }
                extent
            }
            LambdaRepr::FromVelocity(u) => u.leading_zero_extent(),
            LambdaRepr::Extremal(_) => T::zero(),
        }
    }
}

/// Transforms a velocity distribution into its lambda function,
/// `lambda = sqrt(2 Int_0^sigma u)`. Representation preserving: converting
/// back with [`velocity_from_lambda`] returns the original distribution.
pub fn lambda_from_velocity<T: Real>(u: &VelocityDistribution<T>) -> LambdaFunction<T> {
    match &u.repr {
        VelocityRepr::Extremal(d) => LambdaFunction::from_extremal(*d),
        VelocityRepr::FromLambda(l) => LambdaFunction {
            repr: LambdaRepr::Tabulated(l.clone()),
        },
        _ => LambdaFunction {
            repr: LambdaRepr::FromVelocity(Box::new(u.clone())),
        },
    }
}

/// Recovers the velocity distribution `u = lambda lambda'` of a lambda
/// function. Exact inverse of [`lambda_from_velocity`].
pub fn velocity_from_lambda<T: Real>(lam: &LambdaFunction<T>) -> VelocityDistribution<T> {
    match &lam.repr {
        LambdaRepr::Extremal(d) => VelocityDistribution::from_extremal(*d),
        LambdaRepr::FromVelocity(u) => (**u).clone(),
        LambdaRepr::Tabulated(p) => VelocityDistribution::from_lambda_curve(p.clone()),
    }
}
