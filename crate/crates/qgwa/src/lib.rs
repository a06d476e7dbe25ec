//! Exact symbolic computation for pointed Hopf algebra actions on quantum
//! generalized Weyl algebras.
//!
//! The crate works over a fixed cyclotomic field Q(zeta_N) with exact
//! rational arithmetic throughout; nothing is ever rounded. On top of the
//! scalar layer it provides:
//!
//! - [`qpoly`]: sparse polynomials in t and the q-calculus (gamma-numbers,
//!   gamma-derivatives, twists) used everywhere else,
//! - [`gwa`]: the quantum generalized Weyl algebra
//!   A = k[t](u, v, sigma, h) with its Z-graded normal form, plus an
//!   independent free-word rewriting oracle,
//! - [`hopfact`]: generalized Taft algebras T_n(lambda, m), action data
//!   (eta-type and Omega-type), the action operators, and the
//!   module-algebra verifier,
//! - [`classify`]: existence tests and enumeration of actions (on the GWA,
//!   on k[t], and in the Omega case q = -1),
//! - [`invariants`]: fixed rings A^T with presentation checking and exact
//!   graded fixed-space computation,
//! - [`parse`]: the expression language for scalars, polynomials, and
//!   algebra elements used by the CLI.

pub mod classify;
pub mod error;
pub mod gwa;
pub mod hopfact;
pub mod invariants;
pub mod parse;
pub mod qpoly;
pub mod scalars;

pub use error::{Error, Result};
