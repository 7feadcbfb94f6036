//! Monotone piecewise-cubic interpolation (Fritsch-Carlson slopes) with
//! closed-form running integrals.
//!
//! The interpolant never overshoots the data on any interval, so nonnegative
//! samples stay nonnegative and samples below 1 stay below 1. The running
//! integral of each cubic Hermite piece is a quartic polynomial, evaluated
//! exactly rather than re-quadratured.

use crate::error::{Error, Result};
use crate::real::{lit, Real};

#[derive(Debug, Clone)]
pub struct PchipCurve<T> {
    x: Vec<T>,
    y: Vec<T>,
    /// Knot slopes.
    d: Vec<T>,
    /// Exact integral of the interpolant from x[0] to each knot.
    cum: Vec<T>,
}

impl<T: Real> PchipCurve<T> {
    pub fn new(x: Vec<T>, y: Vec<T>) -> Result<Self> {
        assert_eq!(x.len(), y.len());
        if x.len() < 2 {
            return Err(Error::GridTooSmall {
                len: x.len(),
                min: 2,
            });
        }
        for (i, (&xi, &yi)) in x.iter().zip(&y).enumerate() {
            if !xi.is_finite() || !yi.is_finite() {
                return Err(Error::NonFiniteSample { index: i });
            }
        }
        for i in 1..x.len() {
            if x[i] <= x[i - 1] {
                return Err(Error::GridNotIncreasing { index: i });
            }
        }

        let d = fritsch_carlson_slopes(&x, &y);

        let mut cum = Vec::with_capacity(x.len());
        let twelve = lit::<T>(12.0);
        let half = lit::<T>(0.5);
        cum.push(T::zero());
        for i in 0..x.len() - 1 {
            let h = x[i + 1] - x[i];
            let piece = h * (half * (y[i] + y[i + 1]) + h * (d[i] - d[i + 1]) / twelve);
            let prev = cum[i];
            cum.push(prev + piece);
        }

        Ok(Self { x, y, d, cum })
    }

    pub fn knots(&self) -> &[T] {
        &self.x
    }

    pub fn values(&self) -> &[T] {
        &self.y
    }

    /// Index of the interval containing `t` (clamped to the grid).
    fn interval(&self, t: T) -> usize {
        let n = self.x.len();
        let idx = self.x.partition_point(|&xi| xi <= t);
        idx.clamp(1, n - 1) - 1
    }

    pub fn value(&self, t: T) -> T {
        let t = t.clamp(self.x[0], *self.x.last().unwrap());
        let i = self.interval(t);
        let h = self.x[i + 1] - self.x[i];
        let s = (t - self.x[i]) / h;
        let one = T::one();
        let two = lit::<T>(2.0);
        let three = lit::<T>(3.0);
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = two * s3 - three * s2 + one;
        let h10 = s3 - two * s2 + s;
        let h01 = three * s2 - two * s3;
        let h11 = s3 - s2;
        self.y[i] * h00 + h * self.d[i] * h10 + self.y[i + 1] * h01 + h * self.d[i + 1] * h11
    }

    pub fn derivative(&self, t: T) -> T {
        let t = t.clamp(self.x[0], *self.x.last().unwrap());
        let i = self.interval(t);
        let h = self.x[i + 1] - self.x[i];
        let s = (t - self.x[i]) / h;
        let one = T::one();
        let two = lit::<T>(2.0);
        let three = lit::<T>(3.0);
        let four = lit::<T>(4.0);
        let six = lit::<T>(6.0);
        let s2 = s * s;
        let dh00 = six * s2 - six * s;
        let dh10 = three * s2 - four * s + one;
        let dh01 = six * s - six * s2;
        let dh11 = three * s2 - two * s;
        self.y[i] * dh00 / h + self.d[i] * dh10 + self.y[i + 1] * dh01 / h + self.d[i + 1] * dh11
    }

    /// Exact integral of the interpolant from the first knot to `t`.
    pub fn integral_to(&self, t: T) -> T {
        let t = t.clamp(self.x[0], *self.x.last().unwrap());
        let i = self.interval(t);
        let h = self.x[i + 1] - self.x[i];
        let s = (t - self.x[i]) / h;
        let half = lit::<T>(0.5);
        let third = lit::<T>(1.0 / 3.0);
        let quarter = lit::<T>(0.25);
        let two_thirds = lit::<T>(2.0 / 3.0);
        let s2 = s * s;
        let s3 = s2 * s;
        let s4 = s3 * s;
        let i00 = half * s4 - s3 + s;
        let i10 = half * s2 - two_thirds * s3 + quarter * s4;
        let i01 = s3 - half * s4;
        let i11 = quarter * s4 - third * s3;
        self.cum[i]
            + h * (self.y[i] * i00
                + h * self.d[i] * i10
                + self.y[i + 1] * i01
                + h * self.d[i + 1] * i11)
    }

    pub fn total_integral(&self) -> T {
        *self.cum.last().unwrap()
    }

    /// Exact integral of the interpolant at each knot.
    pub fn knot_integrals(&self) -> &[T] {
        &self.cum
    }
}

/// Monotonicity-preserving slopes (Fritsch-Carlson weighted harmonic mean,
/// one-sided three-point endpoint formulas with the usual clamps).
fn fritsch_carlson_slopes<T: Real>(x: &[T], y: &[T]) -> Vec<T> {
    let n = x.len();
    let mut h = Vec::with_capacity(n - 1);
    let mut delta = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let hi = x[i + 1] - x[i];
        h.push(hi);
        delta.push((y[i + 1] - y[i]) / hi);
    }

    if n == 2 {
        return vec![delta[0], delta[0]];
    }

    let two = lit::<T>(2.0);
    let mut d = vec![T::zero(); n];

    for i in 1..n - 1 {
        if delta[i - 1] * delta[i] <= T::zero() {
            d[i] = T::zero();
        } else {
            let w1 = two * h[i] + h[i - 1];
            let w2 = h[i] + two * h[i - 1];
            d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }

    d[0] = endpoint_slope(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = endpoint_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    d
}

fn endpoint_slope<T: Real>(h0: T, h1: T, d0: T, d1: T) -> T {
    let two = lit::<T>(2.0);
    let three = lit::<T>(3.0);
    let mut d = ((two * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if d * d0 <= T::zero() {
        d = T::zero();
    } else if d0 * d1 <= T::zero() && d.abs() > three * d0.abs() {
        d = three * d0;
    }
    d
}
