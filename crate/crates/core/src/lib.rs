//! Exact constructions on the finite Heisenberg group over Z_N.
//!
//! The crate builds the group `Tp_N` of center-preserving automorphisms,
//! the projection onto `Sp_N`, explicit splittings for odd `N` and for
//! `N = 2(2k+1)`, the 2-cocycle of the simple section for even `N`, and
//! linear lifts of the associated Weil representation.
//!
//! Group-theoretic checks are exact: phases are integer exponents of
//! `ω̌ = exp(2πi/2N)`. Only the Weil layer uses floating point.

pub mod automorphisms;
pub mod cayley;
pub mod checks;
pub mod error;
pub mod heisenberg;
pub mod residue;
pub mod symplectic;
pub mod weil;

pub use error::{Error, Result};
