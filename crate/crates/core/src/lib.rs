//! Spectral geometry of homogeneous metrics on compact rank one symmetric spaces.
//!
//! Laplace spectra come from the Peter–Weyl decomposition: for Sp(n+1)-invariant metrics on
//! S^{4n+3}, RP^{4n+3} and CP^{2n+1} every eigenvalue is a Casimir scalar shifted by an
//! eigenvalue of a twisted SU(2) Casimir operator ([`su2_rep`]). The other families use
//! closed-form series. On top of the spectra sit scalar curvature and volume ([`geometry`]),
//! Yamabe stability ([`yamabe`]) and spectral comparison ([`isospec`]).

pub mod cli;
pub mod error;
pub mod geometry;
pub mod isospec;
pub mod metric;
pub mod rep_enum;
pub mod spectrum;
pub mod su2_rep;
pub mod tables;
pub mod tridiag;
pub mod yamabe;

pub use error::{Error, Result};
pub use metric::{ABCSParams, Family, FsSpace, MetricSpec, Quotient};
pub use spectrum::{lambda1, truncated_spectrum, EigLabel, Lambda1, SpectrumSlice};
pub use su2_rep::{nu_spectrum, NuSpectrum, TriAxis};
