//! Cohomology of finite group extensions in low degrees.
//!
//! Given an extension `1 -> N -> G -> Q -> 1` of finite groups and a finite
//! `G`-module `M`, this crate computes the groups and maps of the seven-term
//! exact sequence
//!
//! ```text
//! 0 -> H1(Q, M^N) -> H1(G, M) -> H1(N, M)^Q -> H2(Q, M^N) -> H2(G, M)_1
//!   -> H1(Q, H1(N, M)) -> H3(Q, M^N)
//! ```
//!
//! with the transgression built three ways (normalizer quotient, outer
//! automorphisms of a module extension, semi-direct fiber product), and
//! checks everything against the Lyndon-Hochschild-Serre spectral sequence
//! computed directly from the Hochschild-Serre filtration of the bar complex.
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cohomology;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod int;
pub mod linalg;
pub mod oracle;
pub mod perturb;
pub mod seven_term;
pub mod verdict;

pub use error::{Error, Result};
pub use int::Int;
pub use verdict::{Check, Verdict};
