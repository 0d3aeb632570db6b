//! Computational toolkit for genus-2 curves with elliptic subcovers of even
//! degree.
//!
//! * [`ramification`] validates and generates the induced ramification data of
//!   covers of the projective line.
//! * [`nielsen`] enumerates branch-cycle tuples and splits them into Hurwitz
//!   braid orbits.
//! * [`coversolver`] builds and numerically solves the polynomial system of a
//!   Type I cover and verifies solutions independently.
//! * [`family4`] realizes the degree-4 degenerate family and checks its
//!   invariant locus with [`igusa`].
//! * [`humbert`] checks singular relations of period matrices.

pub mod algebra;
pub mod coversolver;
pub mod error;
pub mod family4;
pub mod humbert;
pub mod igusa;
pub mod nielsen;
pub mod ramification;

pub use error::{Error, Result};
