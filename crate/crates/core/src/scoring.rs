//! Category weights, the procedural-fit gate and the per-provision compliance
//! score.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::PropertyCategory;
use crate::profile::{MethodProfile, RegulationProfile};
use crate::sensitivity::clamp_lambda;

/// What a ranking or a series is computed over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    Category(PropertyCategory),
    Overall,
}

impl Target {
    pub fn as_str(self) -> &'static str {
        match self {
            Target::Category(c) => c.as_str(),
            Target::Overall => "overall",
        }
    }

    /// The required categories of `r` followed by `Overall`.
    pub fn all_for(r: &RegulationProfile) -> Vec<Target> {
        r.required_categories()
            .into_iter()
            .map(Target::Category)
            .chain([Target::Overall])
            .collect()
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "overall" | "all" => Ok(Target::Overall),
            other => other
                .parse()
                .map(Target::Category)
                .map_err(|_| Error::UnknownName {
                    kind: "target",
                    name: s.to_string(),
                }),
        }
    }
}

/// Relative priorities of the three categories in the overall score. Only the
/// entries of required categories are used; they are renormalized to sum 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CategoryPriorities {
    weights: [f64; 3],
}

impl CategoryPriorities {
    pub fn new(faithfulness: f64, robustness: f64, complexity: f64) -> Result<Self> {
        let weights = [faithfulness, robustness, complexity];
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidWeights(format!(
                "weights must be finite and non-negative, got {weights:?}"
            )));
        }
        Ok(CategoryPriorities { weights })
    }

    pub fn weight(&self, category: PropertyCategory) -> f64 {
        self.weights[category as usize]
    }
}

/// Knobs for [`compliance_score_with`]. The default reproduces the plain
/// equal-priority score.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ScoringOptions {
    /// Uniform shift applied to every strength factor before clamping to [0, 1].
    pub delta: f64,
    pub priorities: Option<CategoryPriorities>,
}

impl ScoringOptions {
    pub fn with_delta(delta: f64) -> Self {
        ScoringOptions {
            delta,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplianceResult {
    pub method: String,
    pub regulation: String,
    pub admissible: bool,
    /// One entry per required category, in canonical order.
    pub category_weights: Vec<(PropertyCategory, f64)>,
    pub overall: f64,
}

impl ComplianceResult {
    pub fn category_weight(&self, category: PropertyCategory) -> Option<f64> {
        self.category_weights
            .iter()
            .find_map(|(c, w)| (*c == category).then_some(*w))
    }

    pub fn target_score(&self, target: Target) -> Option<f64> {
        match target {
            Target::Category(c) => self.category_weight(c),
            Target::Overall => Some(self.overall),
        }
    }
}

/// True iff the method shares at least one scope and one stage with the
/// provision.
pub fn procedural_fit(a: &MethodProfile, r: &RegulationProfile) -> bool {
    a.scope.intersects(&r.scope) && a.stage.intersects(&r.stage)
}

pub fn category_weight(
    a: &MethodProfile,
    r: &RegulationProfile,
    p: PropertyCategory,
) -> Result<f64> {
    category_weight_at(a, r, p, 0.0)
}

/// Strength-weighted mean of the normalized scores of `p`'s sub-properties,
/// with every strength shifted by `delta` and clamped to [0, 1].
///
/// Not-required sub-properties stay in the sum with their (possibly shifted)
/// strength; at `delta <= 0` they contribute nothing.
pub fn category_weight_at(
    a: &MethodProfile,
    r: &RegulationProfile,
    p: PropertyCategory,
    delta: f64,
) -> Result<f64> {
    if !r.requires(p) {
        return Err(Error::CategoryNotRequired {
            regulation: r.id.clone(),
            category: p,
        });
    }
    let mut numerator = 0.0;
    let mut denominator = 0.0;
    for &s in p.sub_properties() {
        let lambda = clamp_lambda(r.lambda(s), delta);
        numerator += lambda * a.score(s);
        denominator += lambda;
    }
    if denominator <= 0.0 {
        return Err(Error::VacuousCategory {
            regulation: r.id.clone(),
            category: p,
            delta,
        });
    }
    Ok(numerator / denominator)
}

pub fn compliance_score(a: &MethodProfile, r: &RegulationProfile) -> Result<ComplianceResult> {
    compliance_score_with(a, r, &ScoringOptions::default())
}

/// Mean (or priority-weighted mean) of the required category weights, zeroed
/// when the procedural-fit gate fails. Category weights are reported either way.
pub fn compliance_score_with(
    a: &MethodProfile,
    r: &RegulationProfile,
    options: &ScoringOptions,
) -> Result<ComplianceResult> {
    let required = r.required_categories();
    if required.is_empty() {
        return Err(Error::VacuousRegulation(r.id.clone()));
    }
    let category_weights = required
        .iter()
        .map(|&p| category_weight_at(a, r, p, options.delta).map(|w| (p, w)))
        .collect::<Result<Vec<_>>>()?;

    let mean = match options.priorities {
        None => category_weights.iter().map(|(_, w)| w).sum::<f64>() / required.len() as f64,
        Some(priorities) => {
            let total: f64 = required.iter().map(|p| priorities.weight(*p)).sum();
            if total <= 0.0 {
                return Err(Error::InvalidWeights(format!(
                    "priorities of the categories required by `{}` sum to zero",
                    r.id
                )));
            }
            category_weights
                .iter()
                .map(|(p, w)| priorities.weight(*p) / total * w)
                .sum()
        }
    };

    let admissible = procedural_fit(a, r);
    Ok(ComplianceResult {
        method: a.name.clone(),
        regulation: r.id.clone(),
        admissible,
        category_weights,
        overall: if admissible { mean } else { 0.0 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin_dataset;

    fn lookup(method: &str, regulation: &str) -> (MethodProfile, RegulationProfile) {
        let (methods, regulations) = builtin_dataset();
        (
            methods.method(method).unwrap().clone(),
            regulations.regulation(regulation).unwrap().clone(),
        )
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn category_weight_examples() {
        let (shap, art86) = lookup("SHAP", "art86");
        assert!(close(
            category_weight(&shap, &art86, PropertyCategory::Faithfulness).unwrap(),
            1.0
        ));
        // (1.0*0.8 + 0.5*0.8) / 1.5
        assert!(close(
            category_weight(&shap, &art86, PropertyCategory::Robustness).unwrap(),
            0.8
        ));

        let (cem, _) = lookup("CEM", "art86");
        assert!(close(
            category_weight(&cem, &art86, PropertyCategory::Faithfulness).unwrap(),
            0.8
        ));

        let (anchors, _) = lookup("Anchors", "art86");
        // (1.0*0.2 + 0.5*0.6) / 1.5
        assert!(close(
            category_weight(&anchors, &art86, PropertyCategory::Robustness).unwrap(),
            1.0 / 3.0
        ));
    }

    #[test]
    fn optional_strength_for_qualified_markers() {
        // (0.75*1.0 + 1.0*1.0 + 0.75*0.6) / 2.5
        let (shap, art13) = lookup("SHAP", "art13-14");
        let w = category_weight(&shap, &art13, PropertyCategory::Faithfulness).unwrap();
        assert!(close(w, 0.88));
    }

    #[test]
    fn unrequired_category_is_an_error() {
        let (shap, art13) = lookup("SHAP", "art13-14");
        let err = category_weight(&shap, &art13, PropertyCategory::Complexity).unwrap_err();
        assert!(matches!(err, Error::CategoryNotRequired { .. }));
    }

    #[test]
    fn procedural_fit_examples() {
        let (pdp, art86) = lookup("PDP", "art86");
        assert!(!procedural_fit(&pdp, &art86));
        let (shap, art11) = lookup("SHAP", "art11-annex4");
        assert!(procedural_fit(&shap, &art11));
        let (dice, _) = lookup("DiCE", "art11-annex4");
        assert!(!procedural_fit(&dice, &art11));
    }

    #[test]
    fn compliance_score_examples() {
        let (shap, art86) = lookup("SHAP", "art86");
        let res = compliance_score(&shap, &art86).unwrap();
        assert!(res.admissible);
        assert!(close(res.overall, 0.8));

        let (pdp, _) = lookup("PDP", "art86");
        let res = compliance_score(&pdp, &art86).unwrap();
        assert!(!res.admissible);
        assert_eq!(res.overall, 0.0);
        assert_eq!(res.category_weights.len(), 3);

        let (anchors, _) = lookup("Anchors", "art86");
        let res = compliance_score(&anchors, &art86).unwrap();
        assert!(close(res.overall, (0.7 + 1.0 / 3.0 + 1.0) / 3.0));

        let (ruleshap, art11) = lookup("RuleSHAP", "art11-annex4");
        let res = compliance_score(&ruleshap, &art11).unwrap();
        // faithfulness 0.8, robustness 0.6, complexity 0.8
        assert!(close(res.overall, 2.2 / 3.0));
    }

    #[test]
    fn priorities_reweight_and_renormalize() {
        let (shap, art13) = lookup("SHAP", "art13-14");
        // complexity is not required by art13-14, so its priority is dropped
        let options = ScoringOptions {
            delta: 0.0,
            priorities: Some(CategoryPriorities::new(3.0, 1.0, 100.0).unwrap()),
        };
        let res = compliance_score_with(&shap, &art13, &options).unwrap();
        assert!(close(res.overall, 0.75 * 0.88 + 0.25 * 0.8));

        let zero = ScoringOptions {
            delta: 0.0,
            priorities: Some(CategoryPriorities::new(0.0, 0.0, 1.0).unwrap()),
        };
        assert!(matches!(
            compliance_score_with(&shap, &art13, &zero),
            Err(Error::InvalidWeights(_))
        ));
        assert!(CategoryPriorities::new(-1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn target_parsing() {
        assert_eq!("overall".parse::<Target>().unwrap(), Target::Overall);
        assert_eq!(
            "robustness".parse::<Target>().unwrap(),
            Target::Category(PropertyCategory::Robustness)
        );
        assert!("speed".parse::<Target>().is_err());
    }
}
