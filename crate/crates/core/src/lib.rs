//! Sharp lift-to-drag bounds for profiles in infinite-cavity flow.
//!
//! For a profile in a steady Helmholtz-Kirchhoff (infinite cavity) flow the
//! force coefficients are determined by the velocity distribution along the
//! wetted arc alone. Under the Brillouin condition (surface speed never
//! exceeding the free-stream speed) the drag coefficient attainable at a
//! given lift coefficient is bounded both ways, and both bounds are exact:
//!
//! * [`bounds::drag_min`] / [`bounds::kappa_max`] - the least possible drag
//!   and the best possible lift-to-drag ratio, via the closed-form minimal
//!   extremals of [`extremals`];
//! * [`bounds::drag_max`] / [`bounds::kappa_min`] - the worst case, via a
//!   constrained maximization over the arc split;
//! * [`bounds::flat_plate`] - the classical Rayleigh flat plate, which lies
//!   inside the band;
//! * [`oracle`] - an independent brute-force discretization that validates
//!   the closed forms without using them.
//!
//! Everything is generic over the scalar type through [`real::Real`]
//! (`f32` or `f64`); the `*64` aliases at the crate root fix the working
//! precision used by the command-line tool and the test suites.

pub mod bounds;
pub mod distribution;
pub mod error;
pub mod extremals;
pub mod functionals;
pub mod interp;
pub mod io;
pub mod optim;
pub mod oracle;
pub mod quad;
pub mod real;
pub mod roots;

pub use bounds::{
    bound_curve, bound_point, c_l_max, classify_point, drag_max, drag_max_random_restarts,
    drag_min, flat_plate, flat_plate_curve, kappa_max, kappa_min, BandPosition, BoundPoint,
    FlatPlatePoint,
};
pub use distribution::{
    lambda_from_velocity, velocity_from_lambda, LambdaFunction, VelocityDistribution,
};
pub use error::{Error, Result};
pub use extremals::{
    build_max_extremal, build_min_extremal, euler_residual, invert_max_q, invert_min_q,
    j_max_curve, j_min_curve, max_branch_c, max_branch_j, max_branch_k, max_branch_q, min_branch_a,
    min_branch_c, min_branch_j, min_branch_k, min_branch_q, q_max, q_star, ExtremalDescriptor,
    ResidualReport,
};
pub use functionals::{
    assemble_coefficients, drag_integral, drag_integral_lambda, lift_integral,
    lift_integral_lambda, validate_brillouin, BrillouinReport, Coefficients, EvalOptions,
    SplitSpec,
};
pub use oracle::{
    compare_report, CompareReport, CompareRow, DiscreteDistribution, OracleMode, OracleParams,
    OracleSolution,
};
pub use real::Real;

/// Concrete `f64` aliases: the working precision of the CLI and tests.
pub type VelocityDistribution64 = VelocityDistribution<f64>;
pub type LambdaFunction64 = LambdaFunction<f64>;
pub type ExtremalDescriptor64 = ExtremalDescriptor<f64>;
pub type SplitSpec64 = SplitSpec<f64>;
pub type Coefficients64 = Coefficients<f64>;
pub type BoundPoint64 = BoundPoint<f64>;
pub type FlatPlatePoint64 = FlatPlatePoint<f64>;
pub type DiscreteDistribution64 = DiscreteDistribution<f64>;
pub type CompareReport64 = CompareReport<f64>;
