//! Exact lens surgery Alexander polynomials from a surgery parameter
//! `(p, k)`, the A/dA lattice matrices built from them, and exhaustive
//! sweeps that check the structural statements about these polynomials.

pub mod arith;
pub mod error;
pub mod lattice;
pub mod poly;
pub mod sweep;

pub use arith::{
    canonicalize_dual_class, derive_invariants, reduce_mod, DerivedInvariants, SurgeryParams,
};
pub use error::{Error, Result};
pub use poly::{generate, polynomial, torus_polynomial, SymmetricLaurentPolynomial};
pub use sweep::{
    enumerate_params, run_sweep, verify_corollary, verify_theorem, SweepConfig, SweepRecord,
};
