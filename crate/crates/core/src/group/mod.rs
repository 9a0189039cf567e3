//! Finite groups, extensions and modules.

pub mod extension;
pub mod finite;
pub mod module;
pub mod semidirect;

pub use extension::{make_extension, GroupExtension, GroupRingData};
pub use finite::FiniteGroup;
pub use module::{FixedModule, GModule, Invariants, ModuleTables};
pub use semidirect::{semidirect_product, Semidirect};
