//! Finite state property systems with an orthocomplementation: validation,
//! classical properties and states, nonclassical components, direct unions,
//! and the explicit isomorphism between a system and the direct union of
//! its components.
//!
//! A system is stored as an intersection-closed family of state sets (the
//! images of its properties); order, meets and joins are always derived
//! from inclusion.

#![allow(clippy::result_large_err)]

pub mod classical;
pub mod cli;
pub mod closure;
pub mod decomposition;
pub mod error;
pub mod generators;
pub mod instance;
pub mod io;
pub mod lemmas;
pub mod ortho;
pub mod report;
pub mod rng;
pub mod stateset;

pub use classical::{classical_sps, verify_classical_theorems, ClassicalData, ClassicalSps};
pub use closure::{PropertyIndex, Sps, StateIndex, StateRoster};
pub use decomposition::{
    component, components, decomposition_morphism, direct_union, verify_morphism, Component, Decomposition,
    DirectUnion, MorphismPair,
};
pub use error::{Error, Result};
pub use generators::{compose_shuffled, gen_boolean, gen_mo, mutate, MutationKind};
pub use instance::{RawInstance, RawProperty};
pub use lemmas::lemma_suite;
pub use ortho::{validate_ortho, OrthoSps};
pub use report::{Finding, Report, SamplingConfig};
pub use rng::Seed;
pub use stateset::{StateSet, MAX_STATES};
