//! Normalized bar cohomology in degrees up to three.

pub mod cochain;
pub mod extensions;
pub mod group;
pub mod maps;

pub use cochain::{consistency, differential, pullback, CochainSpace, SIZE_LIMIT};
pub use extensions::{class_of_group_extension, realize_extension_from_2cocycle, EmbeddedExtension, ModuleExtension, TABLE_LIMIT};
pub use group::{cohomology, induced_map, Cohomology, CohomologyClass, MAX_DEGREE};
pub use maps::{h2_g_m_1, inflation, q_action, q_action_on_h1, restriction};
