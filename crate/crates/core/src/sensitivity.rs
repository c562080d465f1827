//! Robustness of scores and rankings to a uniform shift of every legal
//! strength factor.
//!
//! For each shift `delta` on a grid, every strength `lambda` becomes
//! `clamp(lambda + delta, 0, 1)` and all category weights and overall scores
//! are recomputed. The admissibility gate does not depend on `delta`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::model::PropertyCategory;
use crate::profile::{MethodProfile, RegulationProfile};
use crate::ranking::compare_scores;
use crate::scoring::{compliance_score_with, ScoringOptions, Target};

/// Absolute tolerance for calling a series constant.
pub const CONSTANCY_TOLERANCE: f64 = 1e-12;

pub fn clamp_lambda(lambda: f64, delta: f64) -> f64 {
    (lambda + delta).clamp(0.0, 1.0)
}

/// Evenly spaced shifts from `min` to `max` that always include zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaGrid {
    min: f64,
    max: f64,
    steps: usize,
}

impl Default for DeltaGrid {
    fn default() -> Self {
        DeltaGrid {
            min: -0.2,
            max: 0.2,
            steps: 41,
        }
    }
}

impl DeltaGrid {
    pub fn new(min: f64, max: f64, steps: usize) -> Result<Self> {
        if !min.is_finite() || !max.is_finite() {
            return Err(Error::InvalidGrid("bounds must be finite".into()));
        }
        if min > 0.0 || max < 0.0 {
            return Err(Error::InvalidGrid(format!(
                "need min <= 0 <= max, got [{min}, {max}]"
            )));
        }
        if min == max {
            if steps == 0 {
                return Err(Error::InvalidGrid("steps must be at least 1".into()));
            }
        } else {
            if steps < 2 {
                return Err(Error::InvalidGrid(
                    "a non-degenerate grid needs at least 2 steps".into(),
                ));
            }
            let zero_at = Self::zero_position(min, max, steps);
            if (zero_at - zero_at.round()).abs() > 1e-9 {
                return Err(Error::InvalidGrid(format!(
                    "{steps} steps over [{min}, {max}] do not place a point at 0"
                )));
            }
        }
        Ok(DeltaGrid { min, max, steps })
    }

    fn zero_position(min: f64, max: f64, steps: usize) -> f64 {
        -min / (max - min) * (steps - 1) as f64
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Index of the `delta = 0` point.
    pub fn zero_index(&self) -> usize {
        if self.min == self.max {
            0
        } else {
            Self::zero_position(self.min, self.max, self.steps).round() as usize
        }
    }

    pub fn points(&self) -> Vec<f64> {
        if self.min == self.max {
            return vec![0.0; self.steps];
        }
        let last = (self.steps - 1) as f64;
        let zero = self.zero_index();
        (0..self.steps)
            .map(|i| {
                if i == zero {
                    0.0
                } else {
                    (self.min * (last - i as f64) + self.max * i as f64) / last
                }
            })
            .collect()
    }
}

/// Scores of one (method, regulation, target) across the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub method: String,
    pub regulation: String,
    pub target: Target,
    pub admissible: bool,
    pub scores: Vec<f64>,
}

impl Series {
    fn is_constant(&self, reference: usize) -> bool {
        let base = self.scores[reference];
        self.scores
            .iter()
            .all(|s| (s - base).abs() <= CONSTANCY_TOLERANCE)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constancy {
    pub regulation: String,
    pub category: PropertyCategory,
    pub constant: bool,
}

/// Two methods whose strict order flips somewhere on the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Divergence {
    /// Grid point at which the reversal first becomes visible, scanning
    /// outward from zero.
    pub delta: f64,
    pub regulation: String,
    pub target: Target,
    /// The pair, ordered as they rank at `delta`.
    pub swapped: (String, String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityVerdict {
    pub regulation: String,
    pub target: Target,
    pub stable: bool,
    pub divergence: Option<Divergence>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityReport {
    pub grid: DeltaGrid,
    pub deltas: Vec<f64>,
    /// Ordered by regulation, then target, then catalog order.
    pub series: Vec<Series>,
    pub constancy: Vec<Constancy>,
    pub ranking_stable: Vec<StabilityVerdict>,
    /// The divergence with the smallest `|delta|` over all verdicts.
    pub first_divergence: Option<Divergence>,
}

impl SensitivityReport {
    pub fn series(&self, method: &str, regulation: &str, target: Target) -> Option<&Series> {
        self.series
            .iter()
            .find(|s| s.method == method && s.regulation == regulation && s.target == target)
    }

    pub fn is_constant(&self, regulation: &str, category: PropertyCategory) -> Option<bool> {
        self.constancy
            .iter()
            .find(|c| c.regulation == regulation && c.category == category)
            .map(|c| c.constant)
    }

    pub fn verdict(&self, regulation: &str, target: Target) -> Option<&StabilityVerdict> {
        self.ranking_stable
            .iter()
            .find(|v| v.regulation == regulation && v.target == target)
    }

    /// (regulation, category) pairs whose weights move with `delta`.
    pub fn non_constant(&self) -> Vec<(&str, PropertyCategory)> {
        self.constancy
            .iter()
            .filter(|c| !c.constant)
            .map(|c| (c.regulation.as_str(), c.category))
            .collect()
    }
}

/// Recomputes every score of `catalog` under every regulation at each grid
/// point.
pub fn sweep(
    catalog: &[MethodProfile],
    regulations: &[RegulationProfile],
    grid: DeltaGrid,
) -> Result<SensitivityReport> {
    if catalog.is_empty() {
        return Err(Error::EmptyCatalog);
    }
    let deltas = grid.points();
    let zero = grid.zero_index();
    let mut series = Vec::new();
    let mut constancy = Vec::new();

    for r in regulations {
        // results[method][grid point]
        let mut results = Vec::with_capacity(catalog.len());
        for method in catalog {
            let per_delta = deltas
                .iter()
                .map(|&delta| compliance_score_with(method, r, &ScoringOptions::with_delta(delta)))
                .collect::<Result<Vec<_>>>()?;
            results.push(per_delta);
        }

        for target in Target::all_for(r) {
            let first = series.len();
            for (method, per_delta) in catalog.iter().zip(&results) {
                series.push(Series {
                    method: method.name.clone(),
                    regulation: r.id.clone(),
                    target,
                    admissible: per_delta[zero].admissible,
                    scores: per_delta
                        .iter()
                        .map(|res| res.target_score(target).expect("required target"))
                        .collect(),
                });
            }
            if let Target::Category(category) = target {
                constancy.push(Constancy {
                    regulation: r.id.clone(),
                    category,
                    constant: series[first..].iter().all(|s| s.is_constant(zero)),
                });
            }
        }
    }

    let mut report = SensitivityReport {
        grid,
        deltas,
        series,
        constancy,
        ranking_stable: Vec::new(),
        first_divergence: None,
    };
    report.ranking_stable = stability_verdict(&report);
    report.first_divergence = report
        .ranking_stable
        .iter()
        .filter_map(|v| v.divergence.clone())
        .min_by(|a, b| a.delta.abs().total_cmp(&b.delta.abs()));
    Ok(report)
}

/// Checks, per (regulation, target), that no two admissible methods swap
/// strict order anywhere on the grid.
///
/// Methods tied at one point and separated at another do not count as a
/// swap; a pair that is strictly ahead at one shift and strictly behind at
/// another does.
pub fn stability_verdict(report: &SensitivityReport) -> Vec<StabilityVerdict> {
    let mut order: Vec<usize> = (0..report.deltas.len()).collect();
    order.sort_by(|&a, &b| {
        let (da, db) = (report.deltas[a], report.deltas[b]);
        da.abs().total_cmp(&db.abs()).then(da.total_cmp(&db))
    });

    let mut verdicts: Vec<StabilityVerdict> = Vec::new();
    let mut start = 0;
    while start < report.series.len() {
        let (regulation, target) = (
            &report.series[start].regulation,
            report.series[start].target,
        );
        let end = report.series[start..]
            .iter()
            .position(|s| &s.regulation != regulation || s.target != target)
            .map_or(report.series.len(), |n| start + n);
        let group: Vec<&Series> = report.series[start..end]
            .iter()
            .filter(|s| s.admissible)
            .collect();
        let divergence = first_swap(&group, &order, &report.deltas).map(|(t, a, b)| Divergence {
            delta: report.deltas[t],
            regulation: regulation.clone(),
            target,
            swapped: (a, b),
        });
        verdicts.push(StabilityVerdict {
            regulation: regulation.clone(),
            target,
            stable: divergence.is_none(),
            divergence,
        });
        start = end;
    }
    verdicts
}

/// Scans grid points in `order` and returns the first point at which some
/// pair's strict order contradicts an order seen earlier in the scan.
fn first_swap(
    group: &[&Series],
    order: &[usize],
    deltas: &[f64],
) -> Option<(usize, String, String)> {
    let n = group.len();
    // strict order seen so far for each pair (i < j)
    let mut seen = vec![Ordering::Equal; n * n];
    for &t in order {
        debug_assert!(t < deltas.len());
        for i in 0..n {
            for j in (i + 1)..n {
                let now = compare_scores(group[i].scores[t], group[j].scores[t]);
                if now == Ordering::Equal {
                    continue;
                }
                let before = &mut seen[i * n + j];
                if *before == Ordering::Equal {
                    *before = now;
                } else if *before != now {
                    let (ahead, behind) = if now == Ordering::Greater {
                        (i, j)
                    } else {
                        (j, i)
                    };
                    return Some((t, group[ahead].method.clone(), group[behind].method.clone()));
                }
            }
        }
    }
    None
}
