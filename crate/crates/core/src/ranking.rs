use std::cmp::Ordering;
use std::num::NonZeroUsize;

use crate::error::{Error, Result};
use crate::profile::{MethodProfile, RegulationProfile};
use crate::scoring::{compliance_score, Target};

/// Scores closer than this are the same score for ranking purposes.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct RankingEntry {
    /// Competition rank: one plus the number of strictly better entries.
    pub rank: usize,
    pub method: String,
    pub score: f64,
    pub tied_with: Vec<String>,
}

/// Ranks the admissible methods of `catalog` under `r` by `target`.
pub fn rank_methods(
    catalog: &[MethodProfile],
    r: &RegulationProfile,
    target: Target,
    top_k: Option<NonZeroUsize>,
) -> Result<Vec<RankingEntry>> {
    if catalog.is_empty() {
        return Err(Error::EmptyCatalog);
    }
    if let Target::Category(category) = target {
        if !r.requires(category) {
            return Err(Error::CategoryNotRequired {
                regulation: r.id.clone(),
                category,
            });
        }
    }
    let mut scored = Vec::with_capacity(catalog.len());
    for method in catalog {
        let result = compliance_score(method, r)?;
        if !result.admissible {
            continue;
        }
        let score = result
            .target_score(target)
            .expect("target category checked above");
        scored.push((result.method, score));
    }
    Ok(rank_scores(scored, top_k))
}

/// Sorts (name, score) pairs best-first and groups near-equal scores.
///
/// Ties display by name ascending and share a rank. A `top_k` cutoff keeps
/// every entry tied with the k-th.
pub fn rank_scores(
    mut scored: Vec<(String, f64)>,
    top_k: Option<NonZeroUsize>,
) -> Vec<RankingEntry> {
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));

    let groups = tie_groups(&scored);
    for group in &groups {
        scored[group.clone()].sort_by(|a, b| a.0.cmp(&b.0));
    }
    let mut entries = Vec::with_capacity(scored.len());
    for group in groups {
        if top_k.is_some_and(|k| group.start >= k.get()) {
            break;
        }
        let names: Vec<&String> = scored[group.clone()].iter().map(|(n, _)| n).collect();
        for (name, score) in &scored[group.clone()] {
            entries.push(RankingEntry {
                rank: group.start + 1,
                method: name.clone(),
                score: *score,
                tied_with: names
                    .iter()
                    .filter(|n| **n != name)
                    .map(|n| (*n).clone())
                    .collect(),
            });
        }
    }
    entries
}

/// Index ranges of consecutive entries within [`TIE_TOLERANCE`] of the
/// group's leading score. Input must be sorted best-first.
fn tie_groups(sorted: &[(String, f64)]) -> Vec<std::ops::Range<usize>> {
    let mut groups = Vec::new();
    let mut start = 0;
    for i in 1..=sorted.len() {
        if i == sorted.len() || sorted[start].1 - sorted[i].1 > TIE_TOLERANCE {
            groups.push(start..i);
            start = i;
        }
    }
    groups
}

/// Compares two scores with the tie tolerance applied.
pub fn compare_scores(a: f64, b: f64) -> Ordering {
    if (a - b).abs() <= TIE_TOLERANCE {
        Ordering::Equal
    } else {
        a.total_cmp(&b)
    }
}
