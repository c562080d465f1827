#![allow(dead_code)]

use proptest::collection::{btree_set, vec};
use proptest::prelude::*;
use proptest::sample::select;

use xaiact_core::{
    MethodCatalog, MethodProfile, RawScore, RegulationProfile, RegulationSet, Requirement, Scope,
    ScopeSet, Stage, StageSet, Strength, SubProperty, SubPropertyMap,
};

pub fn scope_set() -> impl Strategy<Value = ScopeSet> {
    select(vec![
        ScopeSet::only(Scope::Local),
        ScopeSet::only(Scope::Global),
        ScopeSet::both(),
    ])
}

pub fn stage_set() -> impl Strategy<Value = StageSet> {
    select(vec![
        StageSet::only(Stage::ExAnte),
        StageSet::only(Stage::ExPost),
        StageSet::both(),
    ])
}

pub fn raw_score() -> impl Strategy<Value = Option<RawScore>> {
    prop_oneof![
        9 => (1i64..=5).prop_map(|v| Some(RawScore::new(v).unwrap())),
        1 => Just(None),
    ]
}

pub fn strength() -> impl Strategy<Value = Strength> {
    select(Strength::ALL.to_vec())
}

pub fn requirement() -> impl Strategy<Value = Requirement> {
    (
        strength(),
        proptest::option::of(select(vec!["reasonable", "preferable", "if feasible"])),
    )
        .prop_map(|(strength, q)| Requirement {
            strength,
            qualifier: q.map(String::from),
        })
}

pub fn method_named(name: String) -> impl Strategy<Value = MethodProfile> {
    (
        proptest::array::uniform7(raw_score()),
        scope_set(),
        stage_set(),
        proptest::array::uniform7(proptest::option::of("[a-zA-Z ,.()\"-]{0,20}")),
    )
        .prop_map(move |(scores, scope, stage, notes)| {
            let mut m = MethodProfile::new(name.clone(), scores.into(), scope, stage);
            m.notes = notes.into();
            m
        })
}

pub fn method() -> impl Strategy<Value = MethodProfile> {
    "[A-Za-z][A-Za-z0-9 -]{0,12}".prop_flat_map(method_named)
}

/// A regulation with at least one required sub-property.
pub fn regulation() -> impl Strategy<Value = RegulationProfile> {
    (
        proptest::array::uniform7(requirement()),
        0usize..7,
        select(vec![
            Strength::Mandatory,
            Strength::Optional,
            Strength::Partial,
        ]),
        scope_set(),
        stage_set(),
        "[a-z0-9-]{1,10}",
        "[A-Za-z0-9 .&-]{0,20}",
    )
        .prop_map(
            |(mut reqs, forced, forced_strength, scope, stage, id, label)| {
                reqs[forced].strength = forced_strength;
                RegulationProfile::new(id, label, SubPropertyMap::from(reqs), scope, stage).unwrap()
            },
        )
}

pub fn catalog() -> impl Strategy<Value = MethodCatalog> {
    btree_set("[A-Za-z][A-Za-z0-9 -]{0,12}", 1..8)
        .prop_flat_map(|names| names.into_iter().map(method_named).collect::<Vec<_>>())
        .prop_map(MethodCatalog::new)
}

pub fn regulation_set() -> impl Strategy<Value = RegulationSet> {
    vec(regulation(), 1..5).prop_map(|mut regs| {
        let mut seen = std::collections::HashSet::new();
        regs.retain(|r| seen.insert(r.id.clone()));
        RegulationSet::new(regs)
    })
}

pub fn sub_property() -> impl Strategy<Value = SubProperty> {
    select(SubProperty::ALL.to_vec())
}
