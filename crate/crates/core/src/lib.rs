//! Linear-optical scattering amplitudes as permanents of matrices with
//! repeated rows and columns, and the majorization structure of photon
//! distributions that governs their exact runtime and randomized error.

pub mod cli;
pub mod complexity;
pub mod distribution;
pub mod error;
pub mod estimator;
pub mod gray;
pub mod majorization;
pub mod matrix;
pub mod permanent;
pub mod summation;

pub use distribution::{expand_submatrix, PhotonDistribution};
pub use error::{Error, Result};
pub use estimator::EstimateResult;
pub use majorization::{MajorizationRelation, Partition};
pub use matrix::{random_unitary, ComplexMatrix};
pub use num_complex::Complex64;
pub use permanent::{Algorithm, Amplitude, PermanentResult};
