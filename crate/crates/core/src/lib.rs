//! Spin Dirac operator on left-invariant spinors of Lie algebras of
//! dimension 2 to 4 equipped with a pseudo-Riemannian metric.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: structure constants, Killing form, unimodularity,
//!   almost-Abelian presentations and identification of 3D algebras.
//! * [`forms`]: symmetric bilinear forms, signatures, orthonormal and
//!   isotropic frames, automorphism and equivalence checks.
//! * [`exterior`]: left-invariant differential forms on an orthonormal coframe.
//! * [`clifford`]: gamma matrices for `Cl(p, q)`, `n <= 4`, and the action of
//!   forms on spinors.
//! * [`connection`]: Levi-Civita and spin connections, Ricci curvature by two
//!   independent routes.
//! * [`dirac`]: the Dirac matrix by three routes, kernel extraction and the
//!   full [`dirac::analyze`] pipeline.
//! * [`catalog`]: the metric families of the classification tables and the
//!   reproduction harness.
//! * [`io`]: JSON formats for algebras and metrics.

pub mod algebra;
pub mod catalog;
pub mod clifford;
pub mod connection;
pub mod dirac;
pub mod error;
pub mod exterior;
pub mod forms;
pub mod io;
mod linalg;

pub use algebra::{AlgebraIdentity, AlgebraName, AlmostAbelianPresentation, LieAlgebra};
pub use clifford::{CliffordRep, IrrepChoice, RepSource};
pub use connection::{ConnectionCoefficients, CurvatureReport};
pub use dirac::{AnalysisReport, DiracMatrix, DiracRoute, HarmonicReport};
pub use error::{Error, Result};
pub use forms::{Frame, IsotropicFrame, MetricForm, Signature};

/// Complex scalar used for spinors and Clifford matrices.
pub type C64 = num_complex::Complex<f64>;
/// Dense real matrix.
pub type RMat = nalgebra::DMatrix<f64>;
/// Dense complex matrix.
pub type CMat = nalgebra::DMatrix<C64>;
/// Dense real vector.
pub type RVec = nalgebra::DVector<f64>;
