use thiserror::Error;

use parade_core::analysis::AnalysisError;
use parade_core::constructions::ConstructionError;
use parade_core::geometry::GeometryError;
use parade_core::pgroup::PgError;
use parade_core::scenes::SceneError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}: {1}")]
    Geometry(&'static str, String),
    #[error("{0}: {1}")]
    Construction(String, String),
    #[error("HypothesisViolation: {0}")]
    Hypothesis(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Geometry(..) => 3,
            CliError::Construction(..) => 4,
            CliError::Hypothesis(_) => 6,
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        CliError::Geometry(e.kind(), e.to_string())
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Geometry(g) => g.into(),
            e => {
                let kind = e.kind();
                let msg = e.to_string();
                let msg = msg.strip_prefix(&format!("{kind}: ")).unwrap_or(&msg).to_string();
                CliError::Construction(kind.to_string(), msg)
            }
        }
    }
}

impl From<PgError> for CliError {
    fn from(e: PgError) -> Self {
        match e {
            PgError::Serialization(m) => CliError::Parse(m),
            e => CliError::Construction("PartialGroupError".into(), e.to_string()),
        }
    }
}

impl From<SceneError> for CliError {
    fn from(e: SceneError) -> Self {
        match e {
            SceneError::Parse(m) => CliError::Parse(m),
            SceneError::Geometry(g) => g.into(),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::HypothesisViolation(m) => CliError::Hypothesis(m),
            AnalysisError::PremiseViolation(m) => CliError::Hypothesis(format!("premise: {m}")),
            AnalysisError::Construction(c) => c.into(),
            AnalysisError::Geometry(g) => g.into(),
            AnalysisError::Pg(p) => p.into(),
        }
    }
}
