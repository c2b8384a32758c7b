//! Speedup exponents for recursive quantum search over the lattice graph
//! `Q(D, n)` with vertices in `{0, ..., D}^n`.
//!
//! The crate is `no_std` (with `alloc`) and purely computational:
//!
//! * [`lattice`]: the lattice graph, the classical dynamic-programming path
//!   solver, and adversarial/random edge oracles.
//! * [`polynomials`]: generating polynomials whose coefficients count layer
//!   sizes and squared search costs.
//! * [`saddle`]: real-axis saddle-point infimum for coefficients of powers of
//!   non-negative polynomials.
//! * [`optimizer`]: evaluation and minimization of the layer-schedule program
//!   that yields the exponents `T_1, ..., T_D`.
//! * [`bounds`]: the analytic `(D+1)/e` lower-bound machinery.
//! * [`cost_sim`]: exact query-cost recursion of the layered search on small
//!   lattices.
//! * [`smc`]: Set Multicover solvers.
//!
//! File formats, the CLI and thread-level parallelism live in the
//! `lattice-speedup` companion crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod cost_sim;
mod error;
pub mod lattice;
mod linalg;
pub(crate) mod math;
pub mod optimizer;
pub mod polynomials;
pub mod saddle;
pub mod smc;

pub use error::{Error, Result};
pub use lattice::LatticeProfile;
