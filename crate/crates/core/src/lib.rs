//! Exact computation in the Witt ring `W(C)` of a smooth projective curve with
//! good reduction over a non-dyadic local field.
//!
//! Everything is determined by `q mod 4` (whether `-1` is a square in the residue
//! field) and the rank `r` of `2Pic(C)`. Two independent decision routes are
//! provided: invariants of diagonal forms ([`witt_engine`]) and the group ring
//! `W(C_k)[G]` ([`group_ring_model`]).

pub mod base_groups;
pub mod brauer_symbols;
pub mod cli;
pub mod error;
pub mod group_ring_model;
pub mod quadratic_forms;
pub mod witt_engine;

pub use base_groups::{
    enumerate_groups, make_config, minus_one_class, BrauerClass, CurveConfig, GlobalSquareClass,
    PicTorsionClass, UnitSquareClass,
};
pub use brauer_symbols::{hasse_invariant, symbol, witt_invariant};
pub use error::{Result, WittError};
pub use group_ring_model::{
    check_ring_iso, check_splitting, from_group_ring, residue_add, residue_mul, splitting_map,
    to_group_ring, GroupRing, GroupRingElement, ResidueWittClass, ResidueWittRing,
};
pub use quadratic_forms::{quaternion_norm_form, DiagonalForm, Generator};
pub use witt_engine::{
    canonical_form, enumerate_classes, equals, invariant_profile, is_trivial,
    rank_one_group_structure, verify_quaternion_distinctness, CanonicalShape, Census,
    InvariantProfile, ShapeTag,
};
