//! Exact computations over finite-dimensional graded quotient algebras:
//! Hilbert functions, minimal resolutions, quadratic duals, low-degree
//! homotopy Lie algebra data, Pfaffian complexes and total acyclicity checks.

pub mod algebra;
pub mod homology;
pub mod homotopylie;
pub mod pfaffcomplex;
pub mod polyring;
pub mod quaddual;
pub mod scalars;
pub mod totalacyclicity;
