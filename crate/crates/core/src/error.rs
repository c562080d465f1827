use thiserror::Error;

use crate::model::PropertyCategory;

#[derive(Debug, Error)]
pub enum Error {
    #[error("score {0} out of range 1..=5")]
    ScoreOutOfRange(i64),

    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },

    #[error("{0} set must not be empty")]
    EmptyDescriptorSet(&'static str),

    #[error(
        "category {category} of regulation `{regulation}` has zero total strength at delta {delta}"
    )]
    VacuousCategory {
        regulation: String,
        category: PropertyCategory,
        delta: f64,
    },

    #[error("category {category} is not required by regulation `{regulation}`")]
    CategoryNotRequired {
        regulation: String,
        category: PropertyCategory,
    },

    #[error("regulation `{0}` marks every sub-property not_required")]
    VacuousRegulation(String),

    #[error("method catalog is empty")]
    EmptyCatalog,

    #[error("invalid category weights: {0}")]
    InvalidWeights(String),

    #[error("invalid delta grid: {0}")]
    InvalidGrid(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("schema violation at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("duplicate {kind} `{name}`")]
    Duplicate { kind: &'static str, name: String },

    #[error("unsupported format_version `{0}` (expected \"1\")")]
    UnsupportedVersion(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
