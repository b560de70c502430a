//! Frobenius-twisted, `S_m`-equivariant point counts of configurations of `m`
//! points in the projective plane over finite fields, and their conversion to
//! cohomology representations of the symmetric group.
//!
//! The crate is `no_std` (with `alloc`). Threading, caching and file formats
//! live in the `equicount` companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod enumeration;
pub mod field;
pub mod generality;
pub mod numtheory;
pub mod partition;
pub mod plane;
pub mod polynomial;
pub mod purity;
pub mod symmetric;

pub use enumeration::{
    count_frame_normalized, count_twisted, feasibility_estimate, CountError, CountPlan,
    CountRecord, Engine, SlotOrder, Tally, DEFAULT_BUDGET,
};
pub use field::{ExtensionField, FieldElement, FieldError, FieldOps, ZechField};
pub use generality::GeneralityCondition;
pub use partition::{CycleType, Partition, PartitionError};
pub use plane::{pgl_order, ProjectivePoint};
pub use polynomial::{builtin_table1, interpolate, CountPolynomial, InterpolationError};
pub use purity::{cohomology_table, CohomologyTable, PurityError};
pub use symmetric::{CharacterTable, DecompositionError};
