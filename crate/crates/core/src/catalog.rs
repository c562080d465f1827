//! On-disk documents for method catalogs and regulation sets.
//!
//! Both are JSON with a `format_version` of `"1"`. Parsing validates every
//! invariant and either returns a complete document or a diagnostic; it never
//! yields a partial catalog. Serialization is canonical: fixed key order,
//! two-space indentation, LF line endings and a trailing newline.

use std::collections::HashSet;
use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::{
    Descriptor, DescriptorSet, RawScore, Requirement, Strength, SubProperty, SubPropertyMap,
};
use crate::profile::{MethodProfile, RegulationProfile};

pub const FORMAT_VERSION: &str = "1";
/// Token standing in for a score the method's authors did not report.
pub const UNREPORTED: &str = "unreported";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodCatalog {
    pub format_version: String,
    pub methods: Vec<MethodProfile>,
}

impl MethodCatalog {
    pub fn new(methods: Vec<MethodProfile>) -> Self {
        MethodCatalog {
            format_version: FORMAT_VERSION.to_string(),
            methods,
        }
    }

    pub fn method(&self, name: &str) -> Option<&MethodProfile> {
        self.methods.iter().find(|m| m.name == name)
    }

    pub fn method_mut(&mut self, name: &str) -> Option<&mut MethodProfile> {
        self.methods.iter_mut().find(|m| m.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegulationSet {
    pub format_version: String,
    pub regulations: Vec<RegulationProfile>,
}

impl RegulationSet {
    pub fn new(regulations: Vec<RegulationProfile>) -> Self {
        RegulationSet {
            format_version: FORMAT_VERSION.to_string(),
            regulations,
        }
    }

    pub fn regulation(&self, id: &str) -> Option<&RegulationProfile> {
        self.regulations.iter().find(|r| r.id == id)
    }
}

/// A non-fatal finding, such as a declared-unreported score.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    pub path: String,
    pub message: String,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed<T> {
    pub document: T,
    pub warnings: Vec<Warning>,
}

/// Either kind of document, as detected from its top-level fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Methods(MethodCatalog),
    Regulations(RegulationSet),
}

pub fn parse_method_catalog(text: &str) -> Result<Parsed<MethodCatalog>> {
    let wire: MethodCatalogWire = from_json(text)?;
    check_version(&wire.format_version)?;
    if wire.methods.is_empty() {
        return Err(schema("methods", "at least one method is required"));
    }

    let mut warnings = Vec::new();
    let mut seen = HashSet::new();
    let mut methods = Vec::with_capacity(wire.methods.len());
    for (i, m) in wire.methods.into_iter().enumerate() {
        let path = format!("methods[{i}]");
        if m.name.trim().is_empty() {
            return Err(schema(format!("{path}.name"), "name must not be empty"));
        }
        if !seen.insert(m.name.clone()) {
            return Err(Error::Duplicate {
                kind: "method name",
                name: m.name,
            });
        }
        let scores = SubPropertyMap::from(m.scores.into_array()).map(|_, s| match s {
            ScoreWire::Value(v) => Some(*v),
            ScoreWire::Unreported => None,
        });
        for s in SubProperty::ALL
            .into_iter()
            .filter(|s| scores[*s].is_none())
        {
            warnings.push(Warning {
                path: format!("{path}.scores.{}", s.key()),
                message: format!("score of `{}` is unreported and counts as zero", m.name),
            });
        }
        let scope = descriptor_set(&m.scope, &format!("{path}.scope"))?;
        let stage = descriptor_set(&m.stage, &format!("{path}.stage"))?;
        let mut profile = MethodProfile::new(m.name, scores, scope, stage);
        if let Some(notes) = m.notes {
            profile.notes = notes.into_array().into();
        }
        methods.push(profile);
    }
    Ok(Parsed {
        document: MethodCatalog {
            format_version: wire.format_version,
            methods,
        },
        warnings,
    })
}

pub fn parse_regulation_set(text: &str) -> Result<Parsed<RegulationSet>> {
    let wire: RegulationSetWire = from_json(text)?;
    check_version(&wire.format_version)?;
    if wire.regulations.is_empty() {
        return Err(schema("regulations", "at least one regulation is required"));
    }

    let mut seen = HashSet::new();
    let mut regulations = Vec::with_capacity(wire.regulations.len());
    for (i, r) in wire.regulations.into_iter().enumerate() {
        let path = format!("regulations[{i}]");
        if r.id.trim().is_empty() {
            return Err(schema(format!("{path}.id"), "id must not be empty"));
        }
        if !seen.insert(r.id.clone()) {
            return Err(Error::Duplicate {
                kind: "regulation id",
                name: r.id,
            });
        }
        let requirements = SubPropertyMap::from(r.requirements.into_array().map(|w| Requirement {
            strength: w.strength.into(),
            qualifier: w.qualifier,
        }));
        let scope = descriptor_set(&r.scope, &format!("{path}.scope"))?;
        let stage = descriptor_set(&r.stage, &format!("{path}.stage"))?;
        regulations.push(RegulationProfile::new(
            r.id,
            r.label,
            requirements,
            scope,
            stage,
        )?);
    }
    Ok(Parsed {
        document: RegulationSet {
            format_version: wire.format_version,
            regulations,
        },
        warnings: Vec::new(),
    })
}

/// Parses either document kind, choosing by the presence of `methods` or
/// `regulations` at the top level.
pub fn parse_document(text: &str) -> Result<Parsed<Document>> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(json_error)?;
    let object = value
        .as_object()
        .ok_or_else(|| schema(".", "expected a JSON object"))?;
    if object.contains_key("methods") {
        let parsed = parse_method_catalog(text)?;
        Ok(Parsed {
            document: Document::Methods(parsed.document),
            warnings: parsed.warnings,
        })
    } else if object.contains_key("regulations") {
        let parsed = parse_regulation_set(text)?;
        Ok(Parsed {
            document: Document::Regulations(parsed.document),
            warnings: parsed.warnings,
        })
    } else {
        Err(schema(".", "expected a `methods` or `regulations` field"))
    }
}

pub fn serialize_method_catalog(catalog: &MethodCatalog) -> String {
    let wire = MethodCatalogWire {
        format_version: catalog.format_version.clone(),
        methods: catalog
            .methods
            .iter()
            .map(|m| MethodWire {
                name: m.name.clone(),
                scores: SubPropertyFields::from_map(&m.scores.map(|_, s| match s {
                    Some(v) => ScoreWire::Value(*v),
                    None => ScoreWire::Unreported,
                })),
                scope: descriptor_tokens(&m.scope),
                stage: descriptor_tokens(&m.stage),
                notes: m
                    .notes
                    .iter()
                    .any(|(_, n)| n.is_some())
                    .then(|| SubPropertyFields::from_map(&m.notes)),
            })
            .collect(),
    };
    to_canonical_json(&wire)
}

pub fn serialize_regulation_set(set: &RegulationSet) -> String {
    let wire = RegulationSetWire {
        format_version: set.format_version.clone(),
        regulations: set
            .regulations
            .iter()
            .map(|r| RegulationWire {
                id: r.id.clone(),
                label: r.label.clone(),
                requirements: SubPropertyFields::from_map(&r.requirements.map(|_, q| {
                    RequirementWire {
                        strength: q.strength.into(),
                        qualifier: q.qualifier.clone(),
                    }
                })),
                scope: descriptor_tokens(&r.scope),
                stage: descriptor_tokens(&r.stage),
            })
            .collect(),
    };
    to_canonical_json(&wire)
}

pub fn serialize_document(document: &Document) -> String {
    match document {
        Document::Methods(m) => serialize_method_catalog(m),
        Document::Regulations(r) => serialize_regulation_set(r),
    }
}

fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("document serializes");
    text.push('\n');
    text
}

fn from_json<'de, T: Deserialize<'de>>(text: &'de str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|err| {
        let path = err.path().to_string();
        let inner = err.into_inner();
        if inner.is_data() {
            Error::Schema {
                path,
                message: strip_location(&inner),
            }
        } else {
            json_error(inner)
        }
    })?;
    de.end().map_err(json_error)?;
    Ok(value)
}

fn json_error(err: serde_json::Error) -> Error {
    if err.is_data() {
        return schema(".", strip_location(&err));
    }
    Error::Syntax {
        line: err.line(),
        column: err.column(),
        message: strip_location(&err),
    }
}

/// serde_json appends " at line L column C"; diagnostics carry that separately.
fn strip_location(err: &serde_json::Error) -> String {
    let text = err.to_string();
    match text.rfind(" at line ") {
        Some(i) => text[..i].to_string(),
        None => text,
    }
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.into(),
    }
}

fn check_version(version: &str) -> Result<()> {
    if version == FORMAT_VERSION {
        Ok(())
    } else {
        Err(Error::UnsupportedVersion(version.to_string()))
    }
}

fn descriptor_set<D: Descriptor>(tokens: &[String], path: &str) -> Result<DescriptorSet<D>> {
    let mut items = Vec::new();
    for (i, token) in tokens.iter().enumerate() {
        let parsed = DescriptorSet::<D>::parse_token(token)
            .map_err(|e| schema(format!("{path}[{i}]"), e.to_string()))?;
        items.extend(parsed);
    }
    DescriptorSet::new(items).map_err(|e| schema(path, e.to_string()))
}

fn descriptor_tokens<D: Descriptor>(set: &DescriptorSet<D>) -> Vec<String> {
    set.iter().map(|d| d.as_str().to_string()).collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MethodCatalogWire {
    format_version: String,
    methods: Vec<MethodWire>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MethodWire {
    name: String,
    scores: SubPropertyFields<ScoreWire>,
    scope: Vec<String>,
    stage: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    notes: Option<SubPropertyFields<Option<String>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RegulationSetWire {
    format_version: String,
    regulations: Vec<RegulationWire>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RegulationWire {
    id: String,
    label: String,
    requirements: SubPropertyFields<RequirementWire>,
    scope: Vec<String>,
    stage: Vec<String>,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RequirementWire {
    strength: StrengthWire,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    qualifier: Option<String>,
}

#[derive(Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum StrengthWire {
    Mandatory,
    Optional,
    Partial,
    NotRequired,
}

impl From<StrengthWire> for Strength {
    fn from(w: StrengthWire) -> Self {
        match w {
            StrengthWire::Mandatory => Strength::Mandatory,
            StrengthWire::Optional => Strength::Optional,
            StrengthWire::Partial => Strength::Partial,
            StrengthWire::NotRequired => Strength::NotRequired,
        }
    }
}

impl From<Strength> for StrengthWire {
    fn from(s: Strength) -> Self {
        match s {
            Strength::Mandatory => StrengthWire::Mandatory,
            Strength::Optional => StrengthWire::Optional,
            Strength::Partial => StrengthWire::Partial,
            Strength::NotRequired => StrengthWire::NotRequired,
        }
    }
}

/// One field per sub-property, in canonical key order.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubPropertyFields<T> {
    no_fp: T,
    no_fn: T,
    completeness: T,
    stability: T,
    adversarial_robustness: T,
    sparsity: T,
    level_of_detail: T,
}

impl<T: Clone> SubPropertyFields<T> {
    fn from_map(map: &SubPropertyMap<T>) -> Self {
        use SubProperty::*;
        SubPropertyFields {
            no_fp: map[NoFalsePositives].clone(),
            no_fn: map[NoFalseNegatives].clone(),
            completeness: map[Completeness].clone(),
            stability: map[Stability].clone(),
            adversarial_robustness: map[AdversarialRobustness].clone(),
            sparsity: map[Sparsity].clone(),
            level_of_detail: map[LevelOfDetail].clone(),
        }
    }
}

impl<T> SubPropertyFields<T> {
    fn into_array(self) -> [T; 7] {
        [
            self.no_fp,
            self.no_fn,
            self.completeness,
            self.stability,
            self.adversarial_robustness,
            self.sparsity,
            self.level_of_detail,
        ]
    }
}

#[derive(Clone, Copy)]
enum ScoreWire {
    Value(RawScore),
    Unreported,
}

impl Serialize for ScoreWire {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ScoreWire::Value(v) => serializer.serialize_u8(v.get()),
            ScoreWire::Unreported => serializer.serialize_str(UNREPORTED),
        }
    }
}

impl<'de> Deserialize<'de> for ScoreWire {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct ScoreVisitor;

        impl Visitor<'_> for ScoreVisitor {
            type Value = ScoreWire;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "an integer 1..=5 or \"{UNREPORTED}\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<ScoreWire, E> {
                RawScore::new(v).map(ScoreWire::Value).map_err(E::custom)
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<ScoreWire, E> {
                let v = i64::try_from(v).unwrap_or(i64::MAX);
                self.visit_i64(v)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<ScoreWire, E> {
                if v == UNREPORTED {
                    Ok(ScoreWire::Unreported)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }

        deserializer.deserialize_any(ScoreVisitor)
    }
}
