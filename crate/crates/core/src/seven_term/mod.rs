//! The explicit constructions of the seven-term sequence.

pub mod compare;
pub mod context;
pub mod fiber;
pub mod normalizer;
pub mod out;
pub mod rho;
pub mod sequence;

pub use compare::{compare_fiber_vs_out, compare_naive_semidirect};
pub use context::Context;
pub use fiber::{check_derivation_lifts, d2_fiber_product, fiber_product, FiberProduct};
pub use normalizer::{tr_normalizer, tr_map, tr_normalizer_with, Mutation, NormalizerQuotient};
pub use out::{aut_em, delta_out_construction, AutEM};
pub use rho::{rho, rho_map, rho_with_section, splitting_cochain};
pub use sequence::{coincidence, exact_at, seven_term, well_definedness, SevenTerm};
