//! Partial groups built from figures, groups and actions.

use thiserror::Error;

use crate::geometry::GeometryError;
use crate::pgroup::PgError;

pub mod action;
pub mod factor_set;
pub mod group;
pub mod induced;
pub mod parade;
pub mod semidirect;
pub mod wedge;

pub use action::{
    action_adjoint, action_grazian_henke, action_wedge_over_fset, validate_action, AdjointAction, ChainedAction,
    PgAction,
};
pub use factor_set::{FactorSet, FactorSetProduct};
pub use group::GroupTable;
pub use induced::{induced_map, InducedMap};
pub use parade::{parade_from_figure, parade_from_group_action, vector_parades};
pub use semidirect::Semidirect;
pub use wedge::{similarity_union, union_in_ambient, wedge, wedge_named, WedgeSum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("InvalidGroup: {0}")]
    InvalidGroup(String),
    #[error("InvalidAction: {0}")]
    InvalidAction(String),
    #[error("NotASubgroup: {0}")]
    NotASubgroup(String),
    #[error("InvalidFactorSet: {0}")]
    InvalidFactorSet(String),
    #[error("NotAMap: {0}")]
    NotAMap(String),
    #[error("NotFriendly: {0}")]
    NotFriendly(String),
    #[error("ActionDomainError: {0}")]
    ActionDomainError(String),
    #[error(transparent)]
    Pg(#[from] PgError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl ConstructionError {
    /// The variant name, as printed by the command line tool.
    pub fn kind(&self) -> &'static str {
        match self {
            ConstructionError::InvalidGroup(_) => "InvalidGroup",
            ConstructionError::InvalidAction(_) => "InvalidAction",
            ConstructionError::NotASubgroup(_) => "NotASubgroup",
            ConstructionError::InvalidFactorSet(_) => "InvalidFactorSet",
            ConstructionError::NotAMap(_) => "NotAMap",
            ConstructionError::NotFriendly(_) => "NotFriendly",
            ConstructionError::ActionDomainError(_) => "ActionDomainError",
            ConstructionError::Pg(_) => "PartialGroupError",
            ConstructionError::Geometry(_) => "GeometryError",
        }
    }
}
