mod common;

use common::{properties, strategies};
use proptest::prelude::*;

proptest! {
    #[test]
    fn scores_are_bounded(a in strategies::method(), r in strategies::regulation()) {
        properties::bounded(&a, &r)?;
    }

    #[test]
    fn raising_a_rating_never_hurts(
        a in strategies::method(),
        r in strategies::regulation(),
        s in strategies::sub_property(),
    ) {
        properties::monotone(&a, &r, s)?;
    }

    #[test]
    fn silence_earns_nothing(a in strategies::method(), r in strategies::regulation()) {
        properties::silence_scores_zero(&r, &a)?;
    }

    #[test]
    fn weights_ignore_sub_property_count(
        (r1, r2) in properties::paired_regulations(),
        a in strategies::method(),
        rating in 1i64..=5,
    ) {
        properties::cardinality_neutral(&r1, &r2, &a, rating)?;
    }

    #[test]
    fn procedural_fit_gates_the_score(a in strategies::method(), r in strategies::regulation()) {
        properties::gate(&a, &r)?;
    }

    #[test]
    fn method_catalogs_round_trip(c in strategies::catalog()) {
        properties::catalog_round_trip(&c)?;
    }

    #[test]
    fn regulation_sets_round_trip(s in strategies::regulation_set()) {
        properties::regulation_round_trip(&s)?;
    }
}
