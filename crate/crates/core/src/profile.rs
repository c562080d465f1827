use crate::error::{Error, Result};
use crate::model::{
    PropertyCategory, RawScore, Requirement, ScopeSet, StageSet, SubProperty, SubPropertyMap,
};

/// The supply side: how an XAI method rates on every sub-property, plus the
/// scope and stage it natively operates at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodProfile {
    pub name: String,
    /// `None` marks a declared-unreported score.
    pub scores: SubPropertyMap<Option<RawScore>>,
    pub scope: ScopeSet,
    pub stage: StageSet,
    pub notes: SubPropertyMap<Option<String>>,
}

impl MethodProfile {
    pub fn new(
        name: impl Into<String>,
        scores: SubPropertyMap<Option<RawScore>>,
        scope: ScopeSet,
        stage: StageSet,
    ) -> Self {
        MethodProfile {
            name: name.into(),
            scores,
            scope,
            stage,
            notes: SubPropertyMap::default(),
        }
    }

    /// Builds a profile from seven ratings given in canonical sub-property order.
    pub fn from_ratings(
        name: impl Into<String>,
        ratings: [i64; 7],
        scope: ScopeSet,
        stage: StageSet,
    ) -> Result<Self> {
        let mut scores = SubPropertyMap::default();
        for (s, r) in SubProperty::ALL.into_iter().zip(ratings) {
            scores[s] = Some(RawScore::new(r)?);
        }
        Ok(Self::new(name, scores, scope, stage))
    }

    /// Normalized score, with unreported sub-properties counted as zero.
    pub fn score(&self, s: SubProperty) -> f64 {
        self.scores[s].map_or(0.0, RawScore::normalized)
    }

    pub fn unreported(&self) -> impl Iterator<Item = SubProperty> + '_ {
        self.scores
            .iter()
            .filter_map(|(s, v)| v.is_none().then_some(s))
    }
}

/// The demand side: requirement strengths of one legal provision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegulationProfile {
    pub id: String,
    pub label: String,
    pub requirements: SubPropertyMap<Requirement>,
    pub scope: ScopeSet,
    pub stage: StageSet,
}

impl RegulationProfile {
    /// Fails when no sub-property is required at all.
    pub fn new(
        id: impl Into<String>,
        label: impl Into<String>,
        requirements: SubPropertyMap<Requirement>,
        scope: ScopeSet,
        stage: StageSet,
    ) -> Result<Self> {
        let profile = RegulationProfile {
            id: id.into(),
            label: label.into(),
            requirements,
            scope,
            stage,
        };
        if profile.required_categories().is_empty() {
            return Err(Error::VacuousRegulation(profile.id));
        }
        Ok(profile)
    }

    pub fn lambda(&self, s: SubProperty) -> f64 {
        self.requirements[s].lambda()
    }

    /// Categories with at least one required sub-property, in canonical order.
    pub fn required_categories(&self) -> Vec<PropertyCategory> {
        PropertyCategory::ALL
            .into_iter()
            .filter(|c| self.requires(*c))
            .collect()
    }

    pub fn requires(&self, category: PropertyCategory) -> bool {
        category
            .sub_properties()
            .iter()
            .any(|s| self.requirements[*s].strength.is_required())
    }

    /// Sub-properties of `category` that carry a non-zero strength.
    pub fn required_sub_properties(&self, category: PropertyCategory) -> Vec<SubProperty> {
        category
            .sub_properties()
            .iter()
            .copied()
            .filter(|s| self.requirements[*s].strength.is_required())
            .collect()
    }

    /// Number of required categories.
    pub fn category_count(&self) -> usize {
        self.required_categories().len()
    }

    /// Number of required sub-properties within `category`.
    pub fn sub_property_count(&self, category: PropertyCategory) -> usize {
        self.required_sub_properties(category).len()
    }
}
