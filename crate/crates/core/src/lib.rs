//! Pattern-equivariant representation varieties of one-dimensional
//! substitution tilings over finite groups.
//!
//! The pipeline: a substitution rule gives an approximant graph and an
//! endomorphism `σ` of its free fundamental group `F_k`. Precomposition with
//! `σ` is a self-map of `Hom(F_k, G) = G^k` and of its quotient by
//! simultaneous conjugation. The direct limit along that self-map is its
//! eventual image.

pub mod cli;
pub mod error;
pub mod free_word;
pub mod perm_group;
pub mod rep_variety;
pub mod substitution_complex;

pub use error::{PrepError, Result};
pub use free_word::{compose, evaluate, reduce, FreeHomomorphism, Letter, Word};
pub use perm_group::{
    cyclic_group, dihedral_group, group_from_generators, symmetric_group, FiniteGroup, GroupLimits,
    Perm,
};
pub use rep_variety::{
    based_limit, class_limit, conjugacy_classes, enumerate_homs, eventual_image, induced_class_map,
    induced_point_map, ConjClass, DirectLimitResult, HomPoint, HomSpace, InducedSelfMap,
};
pub use substitution_complex::{
    allowed_factors, build_ap_graph, collar_substitution, fundamental_group,
    induced_pi1_endomorphism, is_primitive, substitution_matrix, ApGraph, Approximant,
    SubstitutionRule,
};
