//! Shared vocabulary: interpretability properties, legal strengths, raw scores
//! and the scope/stage descriptors used by the admissibility filter.

use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use crate::error::Error;

/// The three property categories that group the sub-properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropertyCategory {
    Faithfulness,
    Robustness,
    Complexity,
}

impl PropertyCategory {
    pub const ALL: [PropertyCategory; 3] = [
        PropertyCategory::Faithfulness,
        PropertyCategory::Robustness,
        PropertyCategory::Complexity,
    ];

    pub fn sub_properties(self) -> &'static [SubProperty] {
        use SubProperty::*;
        match self {
            PropertyCategory::Faithfulness => &[NoFalsePositives, NoFalseNegatives, Completeness],
            PropertyCategory::Robustness => &[Stability, AdversarialRobustness],
            PropertyCategory::Complexity => &[Sparsity, LevelOfDetail],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PropertyCategory::Faithfulness => "faithfulness",
            PropertyCategory::Robustness => "robustness",
            PropertyCategory::Complexity => "complexity",
        }
    }
}

impl fmt::Display for PropertyCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PropertyCategory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PropertyCategory::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "property category",
                name: s.to_string(),
            })
    }
}

/// The seven atomic interpretability sub-properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SubProperty {
    NoFalsePositives,
    NoFalseNegatives,
    Completeness,
    Stability,
    AdversarialRobustness,
    Sparsity,
    LevelOfDetail,
}

impl SubProperty {
    /// Canonical order, matching the serialized key order.
    pub const ALL: [SubProperty; 7] = [
        SubProperty::NoFalsePositives,
        SubProperty::NoFalseNegatives,
        SubProperty::Completeness,
        SubProperty::Stability,
        SubProperty::AdversarialRobustness,
        SubProperty::Sparsity,
        SubProperty::LevelOfDetail,
    ];

    pub fn category(self) -> PropertyCategory {
        use SubProperty::*;
        match self {
            NoFalsePositives | NoFalseNegatives | Completeness => PropertyCategory::Faithfulness,
            Stability | AdversarialRobustness => PropertyCategory::Robustness,
            Sparsity | LevelOfDetail => PropertyCategory::Complexity,
        }
    }

    /// Document key for this sub-property.
    pub fn key(self) -> &'static str {
        use SubProperty::*;
        match self {
            NoFalsePositives => "no_fp",
            NoFalseNegatives => "no_fn",
            Completeness => "completeness",
            Stability => "stability",
            AdversarialRobustness => "adversarial_robustness",
            Sparsity => "sparsity",
            LevelOfDetail => "level_of_detail",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for SubProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// A total map from [`SubProperty`] to `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SubPropertyMap<T>([T; 7]);

impl<T> SubPropertyMap<T> {
    pub fn from_fn(mut f: impl FnMut(SubProperty) -> T) -> Self {
        SubPropertyMap(SubProperty::ALL.map(&mut f))
    }

    pub fn iter(&self) -> impl Iterator<Item = (SubProperty, &T)> {
        SubProperty::ALL.into_iter().zip(self.0.iter())
    }

    pub fn map<U>(&self, mut f: impl FnMut(SubProperty, &T) -> U) -> SubPropertyMap<U> {
        SubPropertyMap::from_fn(|s| f(s, &self[s]))
    }
}

impl<T> From<[T; 7]> for SubPropertyMap<T> {
    fn from(values: [T; 7]) -> Self {
        SubPropertyMap(values)
    }
}

impl<T> Index<SubProperty> for SubPropertyMap<T> {
    type Output = T;

    fn index(&self, s: SubProperty) -> &T {
        &self.0[s.index()]
    }
}

impl<T> IndexMut<SubProperty> for SubPropertyMap<T> {
    fn index_mut(&mut self, s: SubProperty) -> &mut T {
        &mut self.0[s.index()]
    }
}

/// How strongly a provision demands a sub-property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Strength {
    Mandatory,
    Optional,
    Partial,
    NotRequired,
}

impl Strength {
    pub const ALL: [Strength; 4] = [
        Strength::Mandatory,
        Strength::Optional,
        Strength::Partial,
        Strength::NotRequired,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Strength::Mandatory => "mandatory",
            Strength::Optional => "optional",
            Strength::Partial => "partial",
            Strength::NotRequired => "not_required",
        }
    }

    pub fn is_required(self) -> bool {
        self != Strength::NotRequired
    }
}

impl FromStr for Strength {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strength::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "strength",
                name: s.to_string(),
            })
    }
}

/// Legal strength factor of a requirement level.
pub fn lambda_of(strength: Strength) -> f64 {
    match strength {
        Strength::Mandatory => 1.0,
        Strength::Optional => 0.75,
        Strength::Partial => 0.5,
        Strength::NotRequired => 0.0,
    }
}

/// A strength marker with the optional wording that qualified it in the
/// source table (e.g. "reasonable").
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Requirement {
    pub strength: Strength,
    pub qualifier: Option<String>,
}

impl Requirement {
    pub fn new(strength: Strength) -> Self {
        Requirement {
            strength,
            qualifier: None,
        }
    }

    pub fn qualified(strength: Strength, qualifier: impl Into<String>) -> Self {
        Requirement {
            strength,
            qualifier: Some(qualifier.into()),
        }
    }

    pub fn lambda(&self) -> f64 {
        lambda_of(self.strength)
    }
}

/// An expert rating on the 1..=5 scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RawScore(u8);

impl RawScore {
    pub const MIN: u8 = 1;
    pub const MAX: u8 = 5;

    pub fn new(value: i64) -> Result<Self, Error> {
        if (Self::MIN as i64..=Self::MAX as i64).contains(&value) {
            Ok(RawScore(value as u8))
        } else {
            Err(Error::ScoreOutOfRange(value))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Maps the rating onto the unit interval as `raw / 5`.
    pub fn normalized(self) -> f64 {
        f64::from(self.0) / f64::from(Self::MAX)
    }
}

/// `raw / 5`, rejecting ratings outside 1..=5.
pub fn normalize(raw: i64) -> Result<f64, Error> {
    RawScore::new(raw).map(RawScore::normalized)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scope {
    Local,
    Global,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    ExAnte,
    ExPost,
}

/// A closed two-element descriptor vocabulary (scope or stage).
pub trait Descriptor: Copy + Eq + Ord + 'static {
    const VOCABULARY: [Self; 2];
    const KIND: &'static str;

    fn as_str(self) -> &'static str;
}

impl Descriptor for Scope {
    const VOCABULARY: [Self; 2] = [Scope::Local, Scope::Global];
    const KIND: &'static str = "scope";

    fn as_str(self) -> &'static str {
        match self {
            Scope::Local => "local",
            Scope::Global => "global",
        }
    }
}

impl Descriptor for Stage {
    const VOCABULARY: [Self; 2] = [Stage::ExAnte, Stage::ExPost];
    const KIND: &'static str = "stage";

    fn as_str(self) -> &'static str {
        match self {
            Stage::ExAnte => "ex-ante",
            Stage::ExPost => "ex-post",
        }
    }
}

/// Non-empty subset of a descriptor vocabulary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DescriptorSet<D: Descriptor> {
    members: [bool; 2],
    _kind: std::marker::PhantomData<D>,
}

pub type ScopeSet = DescriptorSet<Scope>;
pub type StageSet = DescriptorSet<Stage>;

impl<D: Descriptor> DescriptorSet<D> {
    pub fn new(items: impl IntoIterator<Item = D>) -> Result<Self, Error> {
        let mut members = [false; 2];
        for item in items {
            let i = D::VOCABULARY.iter().position(|v| *v == item).unwrap();
            members[i] = true;
        }
        if members.iter().any(|m| *m) {
            Ok(DescriptorSet {
                members,
                _kind: std::marker::PhantomData,
            })
        } else {
            Err(Error::EmptyDescriptorSet(D::KIND))
        }
    }

    pub fn both() -> Self {
        DescriptorSet {
            members: [true; 2],
            _kind: std::marker::PhantomData,
        }
    }

    pub fn only(item: D) -> Self {
        Self::new([item]).unwrap()
    }

    /// Parses one token; "both" expands to the whole vocabulary.
    pub fn parse_token(token: &str) -> Result<Vec<D>, Error> {
        if token == "both" {
            return Ok(D::VOCABULARY.to_vec());
        }
        D::VOCABULARY
            .into_iter()
            .find(|v| v.as_str() == token)
            .map(|v| vec![v])
            .ok_or_else(|| Error::UnknownName {
                kind: D::KIND,
                name: token.to_string(),
            })
    }

    pub fn contains(&self, item: D) -> bool {
        D::VOCABULARY
            .iter()
            .zip(self.members)
            .any(|(v, m)| m && *v == item)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.members.iter().zip(other.members).any(|(a, b)| *a && b)
    }

    pub fn iter(&self) -> impl Iterator<Item = D> + '_ {
        D::VOCABULARY
            .into_iter()
            .zip(self.members)
            .filter_map(|(v, m)| m.then_some(v))
    }
}

impl<D: Descriptor> fmt::Display for DescriptorSet<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.iter().map(D::as_str).collect();
        f.write_str(&names.join(", "))
    }
}
