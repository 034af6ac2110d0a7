//! A workbench for 4-basis hypercomplex algebras, centered on the
//! bicomplex algebra Omega (subalgebras psi = span(1, i) and
//! Phi = span(j, k)) with Hamilton's quaternions as the contrast case.
//!
//! The crate provides:
//! - exact Cayley-table arithmetic and structural analysis
//!   ([`algebra`]),
//! - Taylor-series analytic functions, the Phi wave k e^{jy}, and the
//!   psi<->Phi coupling identity ([`analytic`]),
//! - exhaustive search of the unital table space against the formalized
//!   requirements, parallel behind the `parallel` feature ([`search`]),
//! - a DFT over Phi with the complex isomorphism cross-check
//!   ([`spectral`]),
//! - stationary Schrodinger checks showing k-proportional plane-wave
//!   energies ([`schrodinger`]),
//! - a seeded Monte-Carlo experiment where Phi-phase drift shifts
//!   two-path outcome statistics ([`coupling`]).

pub mod algebra;
pub mod analytic;
pub mod coeff;
pub mod coupling;
pub mod error;
pub mod hnum;
pub mod io;
pub mod schrodinger;
pub mod search;
pub mod spectral;
pub mod table;

pub use algebra::{check_properties, Algebra, PropertyReport};
pub use error::CoreError;
pub use hnum::{Conjugation, HFloat, HNum, HRat};
pub use table::{MultiplicationTable, SignedBasis};
