//! Exact computations for finite-dimensional multiplicative Hom-Leibniz
//! algebras: the α-type cochain complex and its cohomology, the Gerstenhaber
//! bracket on shifted cochains, one-parameter formal deformations, and their
//! equivariant versions under finite group actions.
//!
//! All arithmetic is over [`Rational`]; nothing is ever rounded.
//!
//! ```
//! use homleib::{corpus, cohomology::cohomology};
//!
//! let l = corpus::paper_2dim();
//! let report = cohomology(&l, 2).unwrap();
//! assert_eq!(report.betti, 2);
//! ```

pub mod algebra;
pub mod cochain;
pub mod cohomology;
pub mod corpus;
pub mod deformation;
pub mod equivariant;
pub mod error;
pub mod gerstenhaber;
pub mod linalg;

pub use algebra::{HomLeibnizAlgebra, ValidationReport, Violation};
pub use cochain::{AlphaTypeCochain, GammaCochain};
pub use error::{Error, Result};
pub use linalg::{Matrix, Rational, Subspace};
