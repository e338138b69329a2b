//! Exact-arithmetic building blocks for special cycles on Picard modular
//! surfaces and their p-adic interpolation.
//!
//! The crate is organized around the objects it computes with:
//!
//! - [`quad_field`]: the imaginary quadratic field K = Q(sqrt(-D)), its ring
//!   of integers and quadratic character.
//! - [`herm_lattice`]: hermitian O_K-lattices in K^3, duals, rank-one
//!   sublattices and representation-number counting.
//! - [`qexp`]: truncated q-expansions with exact rational coefficients,
//!   Hecke operators, eta products, Eisenstein series and a numerical
//!   modular-transformation check.
//! - [`cogdell_series`]: generating series of cusp-intersection numbers of
//!   composite special cycles, in weight 3 and in higher weight 2k+3.
//! - [`hida`]: Lambda-adic families, specialization, interpolation
//!   congruences and the ordinary projector on finite U_p-models.
//! - [`level_groups`]: parahoric-style level subgroups K_r, K'_r, V_r,
//!   K_r^0, K_r^1, the elements tau and gamma_r, and machine verification of
//!   the matrix identities they satisfy.
//! - [`big_pairing`]: finite-level group rings Z/p^M[Gamma_r], the twisted
//!   Poincare pairing, compatible class towers, and the Lambda-adic
//!   q-expansion they assemble into.

pub mod big_pairing;
pub mod cogdell_series;
pub mod error;
pub mod herm_lattice;
pub mod hida;
pub mod level_groups;
pub mod linalg;
pub mod qexp;
pub mod quad_field;
pub mod serial;
pub mod zmod;

pub use error::{Error, Result};
pub use quad_field::{FieldCtx, QuadInt, SplitType};
