//! Partial symmetry groups of finite figures: exact arithmetic, geometry,
//! partial groups and their constructions.

pub mod analysis;
pub mod arith;
pub mod constructions;
pub mod geometry;
pub mod linalg;
pub mod pgroup;
pub mod scenes;
