//! Equivariant Schubert calculus on Grassmannians, computed two independent ways.
//!
//! Schubert classes on the Grassmannian `Gr_k(C^n)` are indexed by 0/1 strings
//! with `k` ones. Their products expand back into Schubert classes with
//! coefficients that are polynomials in the torus weights `y_1..y_n`. This
//! crate computes those structure constants by
//!
//! * enumerating weighted triangular puzzles ([`puzzle`]), and
//! * localization at the torus fixed points ([`gkm`]),
//!
//! and cross-validates the two engines against each other ([`verify`]).
//! The [`mspuzzle`] module computes the doubly-equivariant Molev-Sagan
//! expansion coefficients from rhombus-shaped boards.
//!
//! All arithmetic is exact: coefficients are multivariate integer polynomials
//! with arbitrary-precision coefficients ([`poly`]).

pub mod gkm;
pub mod mspuzzle;
pub mod poly;
pub mod puzzle;
pub mod strings;
pub mod verify;
