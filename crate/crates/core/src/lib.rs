//! Scores how well model-agnostic XAI methods meet the explanation
//! requirements of legal provisions.
//!
//! A method's 1-5 ratings on seven interpretability sub-properties are
//! normalized, weighted by each provision's requirement strengths, averaged
//! per property category and then across categories. Methods whose scope or
//! stage does not match the provision score zero.

pub mod builtin;
pub mod catalog;
pub mod error;
pub mod model;
pub mod profile;
pub mod ranking;
pub mod report;
pub mod scoring;
pub mod sensitivity;

pub use builtin::builtin_dataset;
pub use catalog::{MethodCatalog, RegulationSet};
pub use error::{Error, Result};
pub use model::{
    lambda_of, normalize, PropertyCategory, RawScore, Requirement, Scope, ScopeSet, Stage,
    StageSet, Strength, SubProperty, SubPropertyMap,
};
pub use profile::{MethodProfile, RegulationProfile};
pub use ranking::{rank_methods, RankingEntry};
pub use scoring::{
    category_weight, compliance_score, compliance_score_with, procedural_fit, ComplianceResult,
    ScoringOptions, Target,
};
pub use sensitivity::{clamp_lambda, stability_verdict, sweep, DeltaGrid, SensitivityReport};
