//! Exact-arithmetic toolkit for finite inverse semigroups, their universal
//! groupoids, groupoid convolution algebras, Cohn/Leavitt path algebras,
//! Schützenberger representations, and the trace / invariant-mean machinery
//! used to decide stable finiteness at finite scale.
//!
//! All scalars are Gaussian rationals; every verdict is decided by exact
//! comparison, never by floating-point tolerance.

pub mod algebra;
pub mod corpus;
pub mod error;
pub mod groupoid;
pub mod io;
pub mod leavitt;
pub mod mean_trace;
pub mod scalar;
pub mod schutzenberger;
pub mod semigroup;
pub mod simplex;

pub use error::{Error, Result};
pub use scalar::{GaussianRational, Rational};
