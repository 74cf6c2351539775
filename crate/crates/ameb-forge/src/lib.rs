//! Construction and numerical certification of mutually unbiased tripartite
//! absolutely maximally entangled bases (MUAMEBs) from Latin squares.
//!
//! The pipeline has three stages, one module each plus supporting arithmetic:
//!
//! - [`gf`]: finite fields GF(p^n), which seed complete families of
//!   mutually (weak) orthogonal Latin squares for prime-power orders;
//! - [`latin`]: the Latin-square data model, the orthogonality predicates,
//!   and every square construction (cyclic, field family, direct product,
//!   transversal companion, row-constant array);
//! - [`basis`]: complex orthonormal bases of `C^d1 ⊗ C^d2 ⊗ C^d3` built
//!   from those squares, including the bi-unimodular coefficient vectors
//!   that make two bases of the equal-dimension family mutually unbiased;
//! - [`verify`]: tolerance-tagged certification of orthonormality,
//!   unbiasedness and absolute maximal entanglement via partial traces;
//! - [`catalog`]: bundled reference squares and coefficient vectors, plus
//!   the pipelines that rebuild the catalogued MUAMEB/MUB counts per order.
//!
//! All constructions are deterministic: the same inputs produce bitwise
//! identical squares, bases and serialized files on every run.

pub mod basis;
pub mod catalog;
pub mod gf;
pub mod latin;
pub mod verify;

mod jsonf;

/// Default absolute tolerance for every numerical check.
///
/// Amplitudes are O(1) and targets are O(1/D) for dimensions D ≤ 256, so
/// double precision leaves several orders of magnitude of headroom below
/// this bound while accumulation noise stays well under it.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Default node budget for the transversal-resolution search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 5_000_000;
