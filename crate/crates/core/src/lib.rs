//! Congruence lattices of finite meet semilattices.
//!
//! A meet semilattice is stored as its meet table over the indices `0..n`
//! with `0` the least element ([`SemilatticeTable`]). Congruences are
//! [`Partition`]s.
//!
//! Congruence counts come from [`all_meet_congruences`] or, through the
//! join-closed subsets of `S \ {0}`, from [`PartialJoinStructure`].
//! [`classify`] splits a semilattice into nucleus and skeleton using the
//! tree congruence. [`enumerate_semilattices`] lists every semilattice of a
//! given size up to isomorphism.

pub mod congruence;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod iso;
pub mod join_closed;
pub mod partition;
pub mod set;
pub mod structure;
pub mod table;
pub mod ubta;
pub mod verify;

pub use congruence::{
    all_lattice_congruences, all_meet_congruences, congruence_generated,
    count_interval_block_equivalences, is_lattice, is_meet_congruence, quotient,
};
pub use enumerate::{enumerate_semilattices, spectrum, top_values, Spectrum};
pub use error::{Error, Result};
pub use iso::{are_isomorphic, canonical_form, find_isomorphism};
pub use join_closed::{count_congruences, verify_duality, PartialJoinStructure};
pub use partition::Partition;
pub use set::ElementSet;
pub use structure::{
    classify, convex_block_congruence_check, is_quasi_tree, is_tree, nucleus, skeleton,
    tree_congruence, ClassificationReport, SemilatticeClass,
};
pub use table::{chain, named, RawTable, SemilatticeTable};
pub use ubta::{Ubta, UbtaFamily};
