//! Free and trivial Galois cohomology for cyclic extensions of degree p.
//!
//! For a field F containing a primitive p-th root of unity and E = F(a^{1/p}),
//! the groups H^n(E) = H^n(G_E, F_p) are modules over F_p[Gal(E/F)]. Whether
//! they are free or trivial is decided here entirely on the F side, from the
//! cup-product structure of H^*(F) given as an explicit graded ring model:
//!
//! * [`linalg`]: vectors, matrices and subspaces over F_p.
//! * [`module`]: F_p[G]-modules for G cyclic of order p (fixed points, norm,
//!   Jordan decomposition, freeness).
//! * [`ring`]: exterior algebras, free-product direct sums and tabulated rings.
//! * [`criteria`]: per-degree verdicts and the invariants cf, ct and cd.
//! * [`exactness`]: exact-sequence checks against supplied E-side data.
//! * [`scenario`]: builders for the standard constructions, fixtures, file
//!   formats and reports.
//! * [`cli`]: the command-line front end.

pub mod cli;
pub mod criteria;
pub mod error;
pub mod exactness;
pub mod linalg;
pub mod module;
pub mod ring;
pub mod scenario;

pub use error::{Error, Result};
