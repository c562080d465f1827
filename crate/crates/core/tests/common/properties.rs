//! Invariant checks shared by the property tests and the acceptance harness.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use xaiact_core::catalog::{
    parse_method_catalog, parse_regulation_set, serialize_method_catalog, serialize_regulation_set,
};
use xaiact_core::{
    compliance_score, procedural_fit, MethodCatalog, MethodProfile, PropertyCategory, RawScore,
    RegulationProfile, RegulationSet, SubProperty,
};

use super::strategies;

fn all_scores(a: &MethodProfile, r: &RegulationProfile) -> Vec<f64> {
    let res = compliance_score(a, r).unwrap();
    let mut v: Vec<f64> = res.category_weights.iter().map(|(_, w)| *w).collect();
    v.push(res.overall);
    v
}

pub fn bounded(a: &MethodProfile, r: &RegulationProfile) -> Result<(), TestCaseError> {
    for v in all_scores(a, r) {
        prop_assert!((0.0..=1.0).contains(&v), "score {v} outside [0, 1]");
    }
    Ok(())
}

/// Raising one rating never lowers any score; for a not-required
/// sub-property it changes nothing.
pub fn monotone(
    a: &MethodProfile,
    r: &RegulationProfile,
    s: SubProperty,
) -> Result<(), TestCaseError> {
    let raised = match a.scores[s] {
        None => Some(RawScore::new(1).unwrap()),
        Some(v) if v.get() < 5 => Some(RawScore::new(i64::from(v.get()) + 1).unwrap()),
        Some(_) => return Ok(()),
    };
    let mut b = a.clone();
    b.scores[s] = raised;
    let before = all_scores(a, r);
    let after = all_scores(&b, r);
    if r.requirements[s].strength.is_required() {
        for (x, y) in before.iter().zip(&after) {
            prop_assert!(y + 1e-12 >= *x, "raising {s} lowered {x} to {y}");
        }
    } else {
        prop_assert_eq!(before, after);
    }
    Ok(())
}

pub fn silence_scores_zero(
    r: &RegulationProfile,
    template: &MethodProfile,
) -> Result<(), TestCaseError> {
    let mut silent = template.clone();
    for s in SubProperty::ALL {
        silent.scores[s] = None;
    }
    let res = compliance_score(&silent, r).unwrap();
    prop_assert_eq!(res.overall, 0.0);
    for (_, w) in res.category_weights {
        prop_assert_eq!(w, 0.0);
    }
    Ok(())
}

/// A method rated `v` on every required sub-property gets weight `v` in every
/// required category, whatever the number or strength of those sub-properties.
pub fn cardinality_neutral(
    r1: &RegulationProfile,
    r2: &RegulationProfile,
    template: &MethodProfile,
    rating: i64,
) -> Result<(), TestCaseError> {
    let v = RawScore::new(rating).unwrap();
    for r in [r1, r2] {
        let mut a = template.clone();
        for s in SubProperty::ALL {
            if r.requirements[s].strength.is_required() {
                a.scores[s] = Some(v);
            }
        }
        let res = compliance_score(&a, r).unwrap();
        for (c, w) in &res.category_weights {
            prop_assert!(
                (w - v.normalized()).abs() <= 1e-12,
                "{c} weight {w} != {}",
                v.normalized()
            );
        }
    }
    Ok(())
}

pub fn gate(a: &MethodProfile, r: &RegulationProfile) -> Result<(), TestCaseError> {
    let res = compliance_score(a, r).unwrap();
    prop_assert_eq!(res.admissible, procedural_fit(a, r));
    if !res.admissible {
        prop_assert_eq!(res.overall, 0.0);
    }
    Ok(())
}

pub fn catalog_round_trip(catalog: &MethodCatalog) -> Result<(), TestCaseError> {
    let text = serialize_method_catalog(catalog);
    let parsed = parse_method_catalog(&text).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&parsed.document, catalog);
    prop_assert_eq!(serialize_method_catalog(&parsed.document), text);
    Ok(())
}

pub fn regulation_round_trip(set: &RegulationSet) -> Result<(), TestCaseError> {
    let text = serialize_regulation_set(set);
    let parsed = parse_regulation_set(&text).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&parsed.document, set);
    prop_assert_eq!(serialize_regulation_set(&parsed.document), text);
    Ok(())
}

/// Two regulations that require the same categories but a different number
/// of sub-properties within them.
pub fn paired_regulations() -> impl Strategy<Value = (RegulationProfile, RegulationProfile)> {
    (strategies::regulation(), strategies::regulation()).prop_map(|(a, mut b)| {
        for c in PropertyCategory::ALL {
            let subs = c.sub_properties();
            if a.requires(c) {
                // keep b's markers within the category but make sure it is required
                if !b.requires(c) {
                    b.requirements[subs[0]] =
                        a.requirements[a.required_sub_properties(c)[0]].clone();
                }
            } else {
                for s in subs {
                    b.requirements[*s] = a.requirements[*s].clone();
                }
            }
        }
        (a, b)
    })
}
