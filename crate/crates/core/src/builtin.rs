//! The embedded reference dataset: ten model-agnostic XAI methods and three
//! AI Act provisions (Art. 86, Arts. 13-14, Art. 11 with Annex IV).

use std::sync::OnceLock;

use crate::catalog::{parse_method_catalog, parse_regulation_set, MethodCatalog, RegulationSet};

pub const BUILTIN_METHODS: &str = include_str!("../data/methods.json");
pub const BUILTIN_REGULATIONS: &str = include_str!("../data/regulations.json");

pub fn builtin_dataset() -> (MethodCatalog, RegulationSet) {
    static DATASET: OnceLock<(MethodCatalog, RegulationSet)> = OnceLock::new();
    DATASET
        .get_or_init(|| {
            let methods = parse_method_catalog(BUILTIN_METHODS).expect("builtin methods are valid");
            let regulations =
                parse_regulation_set(BUILTIN_REGULATIONS).expect("builtin regulations are valid");
            assert!(methods.warnings.is_empty());
            (methods.document, regulations.document)
        })
        .clone()
}
