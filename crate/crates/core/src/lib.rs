//! Exact weighted lattice-path model of the XXZ chain's interface ground state.
//!
//! The squared norm of the ground state with `n` down and `m` up spins is the
//! partition function `Z(n, m)` of monotone lattice paths from `(0, 0)` to
//! `(n, m)`, where a horizontal bond ending at `(x, y)` carries `q^{2(x+y)}`.
//! Everything here is computed exactly as polynomials in `q`, with
//! brute-force oracles alongside every closed form.

pub mod correlations;
pub mod error;
pub mod exec;
pub mod higher_dim;
pub mod lattice_paths;
pub mod partition;
pub mod qexact;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
pub use lattice_paths::{BoxSpec, Path, Step};
pub use qexact::{ModelParameters, QPoly, QRational, QValue, Scalar};

/// Library version embedded in emitted artifacts.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
