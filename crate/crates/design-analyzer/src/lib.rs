//! Static analysis of class-level coupling in Java source trees.
//!
//! The pipeline has three stages:
//!
//! 1. **Frontend** ([`lexer`], [`parser`], [`registry`]): tokenize each
//!    compilation unit, extract class declarations with their members,
//!    and register every user-defined class under a stable identifier.
//! 2. **Graph and metrics** ([`interactions`], [`metrics`]): detect the
//!    four interaction kinds between registered classes (parameter
//!    passing, return types, object declarations, inheritance), build the
//!    deduplicated class-to-class interaction graph, and compute six
//!    coupling measures per class.
//! 3. **Analysis** ([`linalg`], [`pca`]): run a principal component
//!    analysis over the metric matrix to single out the most significant
//!    coupling measure and to recommend integration classes.
//!
//! [`corpus`] drives the stages end to end and [`report`] renders the
//! results (DOT, JSON, CSV, plain text).
//!
//! The numeric core is generic over the scalar type through
//! [`scalar::Scalar`]; the aliases below fix `f64` for ordinary use.

pub mod corpus;
pub mod interactions;
pub mod lexer;
pub mod linalg;
pub mod metrics;
pub mod parser;
pub mod pca;
pub mod registry;
pub mod report;
pub mod scalar;

/// Scalar type used by the command-line interface and most callers.
pub type Real = f64;

/// Dense matrix over [`Real`].
pub type DenseMatrixF64 = linalg::DenseMatrix<Real>;
/// Covariance matrix over [`Real`].
pub type CovarianceF64 = linalg::CovarianceMatrix<Real>;
/// Metric matrix over [`Real`].
pub type MetricsMatrixF64 = metrics::MetricsMatrix<Real>;
/// Analysis result over [`Real`].
pub type PcaResultF64 = pca::PcaResult<Real>;
