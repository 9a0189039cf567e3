//! Exact integer linear algebra.

pub mod abelian;
pub mod echelon;
pub mod matrix;
pub mod smith;

pub use abelian::{cokernel, reduce_mod, reduced, solve, AbHom, Cokernel, FgAbGroup, PresentedSubgroup, Subgroup, Subquotient};
pub use echelon::{Lattice, SpanSolver};
pub use matrix::IntMatrix;
pub use smith::{smith_normal_form, Smith};
