//! Closed-form spectra of tridiagonal quasi-exactly-solvable eigenproblems,
//! checked against independent numerical oracles.
//!
//! The library constructs three families of operators whose polynomial
//! eigenfunctions are generating functions of hypergeometric orthogonal
//! polynomials:
//!
//! - [`dual_hahn`]: a second-order differential operator on polynomials of
//!   degree ≤ N whose recurrence matrix is built from dual Hahn coefficients;
//!   eigenvalues λ(m) = m(m+γ+δ+1), eigenvectors reducible to Jacobi
//!   polynomials, together with its sl₂ decomposition.
//! - [`q_hahn`]: the q-difference analogue built from continuous dual q-Hahn
//!   coefficients, both at q a primitive root of unity (with the U_q(sl₂)
//!   decomposition and explicit zero sets) and at general q (little q-Jacobi
//!   reduction, dual q-Hahn parameter equivalence).
//! - [`hofstadter`]: the N×N midband matrices of the Azbel-Hofstadter problem
//!   at rational flux, the identity H = (M−M*)/i, and butterfly sweeps.
//!
//! [`schrodinger`] carries the hyperbolic Pöschl-Teller-like reduction of the
//! differential problem (potential, formal eigenfunctions, integrability
//! predicates, quadrature orthogonality). [`eigensolver`] is the independent
//! oracle layer (Sturm bisection, determinant-driven Aberth iteration,
//! inverse iteration, multiset spectrum comparison) and [`numerics`] holds the
//! scalar kernels (Pochhammer symbols, truncated hypergeometric sums, Laurent
//! polynomial algebra, polynomial root finding).
//!
//! Everything is pure and deterministic; randomized verification sweeps are
//! driven by the seeded generator in [`rng`].

pub mod dense;
pub mod dual_hahn;
pub mod eigensolver;
pub mod error;
pub mod hofstadter;
pub mod numerics;
pub mod q_hahn;
pub mod rng;
pub mod schrodinger;
pub mod selftest;
pub mod tridiagonal;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use tridiagonal::TridiagonalOperator;
