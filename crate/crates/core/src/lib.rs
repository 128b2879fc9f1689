//! Exact symbolic kernel for the trigonometric SL(2) dynamical quantum group.
//!
//! Everything in this crate is computed over the field of rational functions
//! in `q^(1/2)` and a registered set of dynamical variables (`q^λ`, `q^μ`, ...),
//! with canonical forms making equality decidable. On top of the scalar field
//! the crate builds:
//!
//! * [`uq`] — the Hopf algebra U_q(sl2) in PBW normal form, with leg calculus
//!   on tensor powers,
//! * [`reps`] — its type-1 representations as exact matrices, weight
//!   projectors and dynamical shifts,
//! * [`twist`] — dynamical twists, vertex-IRF transformations and (dynamical)
//!   R-matrices, realized through truncatable universal series,
//! * [`funalg`] — the quantized function algebra A_q[SL(2)] with the Hopf
//!   pairing, regular actions and Peter-Weyl matrix coefficients,
//! * [`qspecial`] — terminating basic hypergeometric series and Askey-Wilson
//!   polynomials,
//! * [`dynalg`] — the T-Hopf algebroid realizations A^1, A^{j_x} and A^x,
//!   the gauge isomorphism φ_x, and the matrix-coefficient identities,
//! * [`suites`] — the named verification suites run by the CLI.
//!
//! All identity checks are exact equalities of canonical forms; a numeric
//! sampling mode exists purely as a fast pre-screen.

pub mod scalars;
pub mod qspecial;
pub mod uq;
pub mod reps;
pub mod twist;
pub mod funalg;
pub mod dynalg;
pub mod suites;
pub mod report;

pub use scalars::{Field, FieldElement, Var};

