//! Exact computation of covering invariants of finite abelian groups and
//! finite vector spaces.
//!
//! The crate is organised by subject:
//!
//! * [`abelian`]: groups as products of cyclic groups, subgroups, cosets,
//!   quotients, and the arithmetic functions λ and τ.
//! * [`covering`]: coset systems, covering audits and the exhaustive
//!   searches for φ, f, g and affine blocking numbers.
//! * [`gf`]: GF(q) arithmetic, matrices, hyperplanes, nowhere-zero
//!   combinations and minimal hyperplane coverings.
//! * [`parity`]: the characteristic-2 group algebra over `(C_p)^n`, cube
//!   sets and the AJT-matrix tests.
//! * [`matroid`]: linear matroids and disjoint-base packing.
//! * [`graph`]: colorings and nowhere-zero flows as covering questions.
//! * [`suites`] / [`evidence`]: bundled experiment runs and the consolidated
//!   report used by the command-line tool.
//!
//! Searches that branch are data-parallel over their first choice when the
//! `parallel` feature is enabled (the default). Results never depend on the
//! number of worker threads.

pub mod abelian;
pub mod bitset;
pub mod covering;
pub mod error;
pub mod evidence;
pub mod gf;
pub mod graph;
pub mod matroid;
pub mod par;
pub mod parity;
pub mod suites;

pub use error::{Error, Result};
