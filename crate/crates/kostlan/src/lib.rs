//! Numerical laboratory for the real and complex zeros of random Kostlan
//! polynomials on the projective line, together with the Bargmann-Fock local
//! model.
//!
//! The crate is organized around a small set of interlocking pieces:
//!
//! - [`gaussian`]: dense Gaussian linear algebra on small covariance matrices
//!   (factorization, sampling, conditioning, expectations of |product|s);
//! - [`kernels`]: closed-form covariance kernels with derivatives of any
//!   order (Kostlan/Fubini-Study on the real projective line, Bargmann-Fock,
//!   and the scaled Kostlan kernel), plus the Fubini-Study geometry in the
//!   normalization where the real projective line has total length sqrt(pi);
//! - [`ensemble`]: sampling and evaluation of random sections (real and
//!   complex Kostlan coefficient vectors);
//! - [`roots`]: exact real-root counting (Sturm sequences over the integers,
//!   a certified fast counter used by the Monte Carlo engine), real-root
//!   isolation and complex root finding;
//! - [`kacrice`]: the k-point zero density away from the diagonal, its
//!   quadrature, and the set-partition algebra relating modified moments to
//!   ordinary moments;
//! - [`multijet`]: confluent divided differences, proximity-graph
//!   configurations, generalized evaluation functionals and the near-diagonal
//!   density that stays finite (and vanishes) on the diagonal;
//! - [`empirics`]: deterministic, seeded Monte Carlo experiments (moments,
//!   concentration, asymptotic fits, complex equidistribution).
//!
//! All Monte Carlo paths take explicit counter-based random streams so that
//! results are bit-identical for a fixed seed regardless of thread count.

pub mod empirics;
pub mod ensemble;
pub mod gaussian;
pub mod kacrice;
pub mod kernels;
pub mod multijet;
pub mod parallel;
pub mod roots;
pub mod stats;

/// Crate-wide error type. Variant names follow the failure they signal at
/// the operation level.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not symmetric: |a[{i}][{j}] - a[{j}][{i}]| = {deviation:e}")]
    NotSymmetric { i: usize, j: usize, deviation: f64 },
    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:e} below tolerance")]
    NotPsd { eigenvalue: f64 },
    #[error("conditioning block is numerically singular (rcond = {rcond:e})")]
    SingularConditioning { rcond: f64 },
    #[error("derivative order {order} not representable for degree {degree} without overflow")]
    DegreeTooLargeForOrder { degree: u32, order: usize },
    #[error("scaled coordinate {coord} outside the chart (limit {limit})")]
    ChartOverflow { coord: f64, limit: f64 },
    #[error("zero polynomial has no well-defined root count")]
    ZeroPolynomial,
    #[error("interval endpoint {endpoint} is a root even after perturbation")]
    EndpointIsRoot { endpoint: f64 },
    #[error("root finder did not converge after {sweeps} sweeps and companion fallback")]
    NoConvergence { sweeps: usize },
    #[error("configuration is too close to the diagonal for the plain density (rcond = {rcond:e})")]
    NearDiagonal { rcond: f64 },
    #[error("functional needs derivative order {needed} but the oracle supplies {available}")]
    InsufficientDerivOrder { needed: usize, available: usize },
    #[error("partition sum is missing the modified moment of order {order}")]
    MissingTerm { order: usize },
    #[error("least-squares system is ill-conditioned (cond = {cond:e})")]
    IllConditionedFit { cond: f64 },
    #[error("quadrature budget exceeded: requested {requested} nodes, cap {cap}")]
    QuadratureBudgetExceeded { requested: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
