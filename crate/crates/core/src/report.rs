//! Rendering of rankings, score matrices and sensitivity sweeps, plus the
//! golden top-3 table the reference dataset must reproduce.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::model::PropertyCategory;
use crate::profile::{MethodProfile, RegulationProfile};
use crate::ranking::{rank_methods, RankingEntry};
use crate::scoring::{ComplianceResult, Target};
use crate::sensitivity::SensitivityReport;

/// Rounds half-up to hundredths and returns the count of hundredths.
///
/// A small epsilon absorbs binary representation error so that values such
/// as 0.875 computed as 0.87499999999999989 still round up.
pub fn hundredths(score: f64) -> i64 {
    (score * 100.0 + 0.5 + 1e-9).floor() as i64
}

/// Two-decimal display form, e.g. `0.80`.
pub fn format_score(score: f64) -> String {
    let h = hundredths(score);
    let sign = if h < 0 { "-" } else { "" };
    let h = h.abs();
    format!("{sign}{}.{:02}", h / 100, h % 100)
}

/// Shortest round-trip form, used by machine-readable outputs.
pub fn format_exact(value: f64) -> String {
    let v = if value == 0.0 { 0.0 } else { value };
    format!("{v}")
}

fn format_delta(delta: f64) -> String {
    format_exact((delta * 1e9).round() / 1e9)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RenderedTable {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub footnotes: Vec<String>,
}

impl RenderedTable {
    /// Column-aligned plain text.
    pub fn to_text(&self) -> String {
        let columns = self.headers.len();
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate().take(columns) {
                widths[i] = widths[i].max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            padded.join("  ").trim_end().to_string()
        };

        let mut out = String::new();
        if !self.title.is_empty() {
            writeln!(out, "{}", self.title).unwrap();
        }
        writeln!(out, "{}", line(&self.headers)).unwrap();
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        writeln!(out, "{}", rule.join("  ")).unwrap();
        for row in &self.rows {
            writeln!(out, "{}", line(row)).unwrap();
        }
        for note in &self.footnotes {
            writeln!(out, "{note}").unwrap();
        }
        out
    }

    /// Header row plus data rows; title and footnotes are omitted.
    pub fn to_csv(&self) -> String {
        write_csv(std::iter::once(&self.headers).chain(&self.rows))
    }
}

fn write_csv<'a>(rows: impl IntoIterator<Item = &'a Vec<String>>) -> String {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for row in rows {
        writer.write_record(row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

/// Output form shared by the table-producing commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Records,
}

#[derive(Serialize)]
struct RankingRecord<'a> {
    regulation: &'a str,
    target: &'a str,
    rank: usize,
    method: &'a str,
    score: f64,
    tied_with: &'a [String],
}

/// Renders a ranking. Text shows two decimals and tie footnotes; CSV and
/// records carry full precision.
pub fn render_ranking(
    r: &RegulationProfile,
    target: Target,
    entries: &[RankingEntry],
    format: Format,
) -> String {
    match format {
        Format::Text => {
            let mut table = RenderedTable {
                title: format!("{} ({}) - {}", r.label, r.id, target),
                headers: vec!["rank".into(), "method".into(), "score".into()],
                ..Default::default()
            };
            for e in entries {
                table.rows.push(vec![
                    e.rank.to_string(),
                    e.method.clone(),
                    format_score(e.score),
                ]);
            }
            let mut noted = Vec::new();
            for e in entries.iter().filter(|e| !e.tied_with.is_empty()) {
                if noted.contains(&e.rank) {
                    continue;
                }
                noted.push(e.rank);
                let mut group: Vec<&str> = entries
                    .iter()
                    .filter(|o| o.rank == e.rank)
                    .map(|o| o.method.as_str())
                    .collect();
                group.sort_unstable();
                table.footnotes.push(format!(
                    "tie at rank {}: {} ({})",
                    e.rank,
                    group.join(", "),
                    format_score(e.score)
                ));
            }
            table.to_text()
        }
        Format::Csv => {
            let mut rows = vec![vec![
                "regulation".to_string(),
                "target".into(),
                "rank".into(),
                "method".into(),
                "score".into(),
                "tied_with".into(),
            ]];
            for e in entries {
                rows.push(vec![
                    r.id.clone(),
                    target.to_string(),
                    e.rank.to_string(),
                    e.method.clone(),
                    format_exact(e.score),
                    e.tied_with.join(";"),
                ]);
            }
            write_csv(&rows)
        }
        Format::Records => entries
            .iter()
            .map(|e| {
                let record = RankingRecord {
                    regulation: &r.id,
                    target: target.as_str(),
                    rank: e.rank,
                    method: &e.method,
                    score: e.score,
                    tied_with: &e.tied_with,
                };
                serde_json::to_string(&record).unwrap() + "\n"
            })
            .collect(),
    }
}

#[derive(Serialize)]
struct MatrixRecord<'a> {
    regulation: &'a str,
    method: &'a str,
    admissible: bool,
    faithfulness: Option<f64>,
    robustness: Option<f64>,
    complexity: Option<f64>,
    overall: f64,
}

/// Full (method x regulation) view, inadmissible methods included and flagged.
pub fn render_matrix(results: &[ComplianceResult], format: Format) -> String {
    let weight = |r: &ComplianceResult, c: PropertyCategory| r.category_weight(c);
    match format {
        Format::Records => results
            .iter()
            .map(|r| {
                let record = MatrixRecord {
                    regulation: &r.regulation,
                    method: &r.method,
                    admissible: r.admissible,
                    faithfulness: weight(r, PropertyCategory::Faithfulness),
                    robustness: weight(r, PropertyCategory::Robustness),
                    complexity: weight(r, PropertyCategory::Complexity),
                    overall: r.overall,
                };
                serde_json::to_string(&record).unwrap() + "\n"
            })
            .collect(),
        Format::Text | Format::Csv => {
            let cell = |v: Option<f64>| match (v, format) {
                (None, Format::Text) => "-".to_string(),
                (None, _) => String::new(),
                (Some(v), Format::Text) => format_score(v),
                (Some(v), _) => format_exact(v),
            };
            let mut table = RenderedTable {
                title: "Compliance scores".into(),
                headers: [
                    "regulation",
                    "method",
                    "admissible",
                    "faithfulness",
                    "robustness",
                    "complexity",
                    "overall",
                ]
                .map(String::from)
                .to_vec(),
                ..Default::default()
            };
            for r in results {
                table.rows.push(vec![
                    r.regulation.clone(),
                    r.method.clone(),
                    if r.admissible { "yes" } else { "no" }.into(),
                    cell(weight(r, PropertyCategory::Faithfulness)),
                    cell(weight(r, PropertyCategory::Robustness)),
                    cell(weight(r, PropertyCategory::Complexity)),
                    cell(Some(r.overall)),
                ]);
            }
            if results.iter().any(|r| !r.admissible) {
                table.footnotes.push(
                    "admissible = no: scope or stage does not match; overall forced to 0".into(),
                );
            }
            match format {
                Format::Text => table.to_text(),
                _ => table.to_csv(),
            }
        }
    }
}

/// Long-format sweep data: one row per (delta, regulation, target, method).
pub fn sensitivity_csv(report: &SensitivityReport) -> String {
    let mut rows = vec![["delta", "regulation", "target", "method", "score"]
        .map(String::from)
        .to_vec()];
    for (t, delta) in report.deltas.iter().enumerate() {
        for s in &report.series {
            rows.push(vec![
                format_delta(*delta),
                s.regulation.clone(),
                s.target.to_string(),
                s.method.clone(),
                format_exact(s.scores[t]),
            ]);
        }
    }
    write_csv(&rows)
}

/// Human-readable verdicts: constancy per (regulation, category) and
/// ranking stability per (regulation, target).
pub fn sensitivity_summary(report: &SensitivityReport) -> String {
    let mut out = String::new();
    let grid = report.grid;
    writeln!(
        out,
        "delta grid: [{}, {}], {} points",
        format_delta(grid.min()),
        format_delta(grid.max()),
        grid.steps()
    )
    .unwrap();
    writeln!(out, "constancy:").unwrap();
    for c in &report.constancy {
        let verdict = if c.constant { "constant" } else { "varies" };
        writeln!(out, "  {} {}: {}", c.regulation, c.category, verdict).unwrap();
    }
    let non_constant = report.non_constant();
    writeln!(out, "non-constant pairs: {}", non_constant.len()).unwrap();
    writeln!(out, "ranking stability:").unwrap();
    for v in &report.ranking_stable {
        match &v.divergence {
            None => writeln!(out, "  {} {}: stable", v.regulation, v.target).unwrap(),
            Some(d) => writeln!(
                out,
                "  {} {}: unstable ({} ahead of {} at delta {})",
                v.regulation,
                v.target,
                d.swapped.0,
                d.swapped.1,
                format_delta(d.delta)
            )
            .unwrap(),
        }
    }
    let stable = report.ranking_stable.iter().filter(|v| v.stable).count();
    writeln!(
        out,
        "stable rankings: {}/{}",
        stable,
        report.ranking_stable.len()
    )
    .unwrap();
    out
}

/// One published (regulation, target, method, score) cell of the top-3 table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoldenEntry {
    pub regulation: &'static str,
    pub target: Target,
    pub method: &'static str,
    /// 1-based position in the reference list.
    pub position: usize,
    /// Expected score in hundredths.
    pub hundredths: i64,
}

const fn golden(
    regulation: &'static str,
    target: Target,
    method: &'static str,
    position: usize,
    hundredths: i64,
) -> GoldenEntry {
    GoldenEntry {
        regulation,
        target,
        method,
        position,
        hundredths,
    }
}

const FAITH: Target = Target::Category(PropertyCategory::Faithfulness);
const ROB: Target = Target::Category(PropertyCategory::Robustness);
const CPLX: Target = Target::Category(PropertyCategory::Complexity);
const ALL: Target = Target::Overall;

pub const GOLDEN_TABLE: [GoldenEntry; 32] = [
    golden("art86", ROB, "SHAP", 1, 80),
    golden("art86", ROB, "RuleFit", 2, 60),
    golden("art86", FAITH, "SHAP", 1, 100),
    golden("art86", FAITH, "RuleSHAP", 2, 80),
    golden("art86", FAITH, "CEM", 3, 80),
    golden("art86", CPLX, "Anchors", 1, 100),
    golden("art86", CPLX, "CEM", 2, 80),
    golden("art86", CPLX, "DiCE", 3, 80),
    golden("art86", ALL, "SHAP", 1, 80),
    golden("art86", ALL, "Anchors", 2, 68),
    golden("art86", ALL, "RuleSHAP", 3, 67),
    golden("art13-14", ROB, "SHAP", 1, 80),
    golden("art13-14", ROB, "PDP", 2, 70),
    golden("art13-14", ROB, "RuleFit", 3, 60),
    golden("art13-14", FAITH, "SHAP", 1, 88),
    golden("art13-14", FAITH, "RuleSHAP", 2, 80),
    golden("art13-14", FAITH, "CEM", 3, 78),
    golden("art13-14", ALL, "SHAP", 1, 84),
    golden("art13-14", ALL, "RuleSHAP", 2, 70),
    golden("art13-14", ALL, "PDP", 3, 65),
    golden("art11-annex4", ROB, "SHAP", 1, 80),
    golden("art11-annex4", ROB, "PDP", 2, 70),
    golden("art11-annex4", ROB, "RuleFit", 3, 60),
    golden("art11-annex4", FAITH, "SHAP", 1, 87),
    golden("art11-annex4", FAITH, "RuleSHAP", 2, 80),
    golden("art11-annex4", FAITH, "RuleFit", 3, 67),
    golden("art11-annex4", CPLX, "Decision Trees", 1, 100),
    golden("art11-annex4", CPLX, "RuleFit", 2, 80),
    golden("art11-annex4", CPLX, "RuleSHAP", 3, 80),
    golden("art11-annex4", ALL, "SHAP", 1, 76),
    golden("art11-annex4", ALL, "RuleSHAP", 2, 73),
    golden("art11-annex4", ALL, "PDP", 3, 70),
];

/// Outcome of checking one golden cell.
#[derive(Debug, Clone, PartialEq)]
pub struct GoldenCheck {
    pub expected: GoldenEntry,
    /// Unrounded score, if the method is admissible and ranked.
    pub score: Option<f64>,
    /// Competition rank and size of the tie group.
    pub rank: Option<(usize, usize)>,
    pub value_matches: bool,
    /// The reference position falls inside the method's tie band.
    pub rank_matches: bool,
}

impl GoldenCheck {
    pub fn passed(&self) -> bool {
        self.value_matches && self.rank_matches
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reproduction {
    pub checks: Vec<GoldenCheck>,
}

impl Reproduction {
    pub fn matched(&self) -> usize {
        self.checks.iter().filter(|c| c.passed()).count()
    }

    pub fn passed(&self) -> bool {
        self.matched() == self.checks.len()
    }

    /// One line per cell, mismatches marked, then a total.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let e = &c.expected;
            let got = c.score.map_or("absent".to_string(), format_score);
            let rank = c.rank.map_or("-".to_string(), |(r, n)| {
                if n > 1 {
                    format!("{r}={n}")
                } else {
                    r.to_string()
                }
            });
            writeln!(
                out,
                "{} {:<13} {:<13} {:<15} expected {} (#{}) got {} (rank {})",
                if c.passed() { "ok  " } else { "FAIL" },
                e.regulation,
                e.target.as_str(),
                e.method,
                format_score(e.hundredths as f64 / 100.0),
                e.position,
                got,
                rank
            )
            .unwrap();
        }
        writeln!(out, "{}/{} cells match", self.matched(), self.checks.len()).unwrap();
        out
    }
}

/// Recomputes every golden cell from the given dataset.
pub fn reproduce(
    methods: &[MethodProfile],
    regulations: &[RegulationProfile],
) -> Result<Reproduction> {
    let mut checks = Vec::with_capacity(GOLDEN_TABLE.len());
    for expected in GOLDEN_TABLE {
        let Some(r) = regulations.iter().find(|r| r.id == expected.regulation) else {
            checks.push(GoldenCheck {
                expected,
                score: None,
                rank: None,
                value_matches: false,
                rank_matches: false,
            });
            continue;
        };
        let ranking = rank_methods(methods, r, expected.target, None)?;
        let found = ranking.iter().find(|e| e.method == expected.method);
        let check = match found {
            None => GoldenCheck {
                expected,
                score: None,
                rank: None,
                value_matches: false,
                rank_matches: false,
            },
            Some(entry) => {
                let band = entry.tied_with.len() + 1;
                GoldenCheck {
                    expected,
                    score: Some(entry.score),
                    rank: Some((entry.rank, band)),
                    value_matches: hundredths(entry.score) == expected.hundredths,
                    rank_matches: (entry.rank..entry.rank + band).contains(&expected.position),
                }
            }
        };
        checks.push(check);
    }
    Ok(Reproduction { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin_dataset;
    use crate::model::{RawScore, SubProperty};

    #[test]
    fn half_up_rounding() {
        assert_eq!(format_score(0.8), "0.80");
        assert_eq!(format_score(1.0), "1.00");
        assert_eq!(format_score(0.875), "0.88");
        assert_eq!(format_score(0.6777777), "0.68");
        assert_eq!(format_score(2.2 / 2.5), "0.88");
        assert_eq!(format_score(0.0), "0.00");
        assert_eq!(format_score(0.005), "0.01");
        assert_eq!(format_score(0.00499), "0.00");
    }

    #[test]
    fn golden_table_shape() {
        assert_eq!(GOLDEN_TABLE.len(), 32);
        let art13_complexity = GOLDEN_TABLE
            .iter()
            .filter(|g| g.regulation == "art13-14" && g.target == CPLX)
            .count();
        assert_eq!(art13_complexity, 0);
    }

    #[test]
    fn builtin_reproduces_golden_table() {
        let (methods, regulations) = builtin_dataset();
        let rep = reproduce(&methods.methods, &regulations.regulations).unwrap();
        assert!(rep.passed(), "{}", rep.render());
        assert!(rep.render().ends_with("32/32 cells match\n"));
    }

    #[test]
    fn patched_stability_breaks_art86_robustness() {
        let (mut methods, regulations) = builtin_dataset();
        let shap = methods.method_mut("SHAP").unwrap();
        shap.scores[SubProperty::Stability] = Some(RawScore::new(1).unwrap());
        let rep = reproduce(&methods.methods, &regulations.regulations).unwrap();
        assert!(!rep.passed());
        let cell = rep
            .checks
            .iter()
            .find(|c| {
                c.expected.regulation == "art86"
                    && c.expected.target == ROB
                    && c.expected.method == "SHAP"
            })
            .unwrap();
        assert!(!cell.value_matches);
        // (1.0*0.2 + 0.5*0.8) / 1.5
        assert!((cell.score.unwrap() - 0.4).abs() < 1e-12);
        assert!(rep.render().contains("FAIL art86"));
    }

    #[test]
    fn text_table_alignment() {
        let table = RenderedTable {
            title: "T".into(),
            headers: vec!["a".into(), "bbb".into()],
            rows: vec![vec!["long".into(), "x".into()]],
            footnotes: vec!["note".into()],
        };
        assert_eq!(table.to_text(), "T\na     bbb\n----  ---\nlong  x\nnote\n");
        assert_eq!(table.to_csv(), "a,bbb\nlong,x\n");
    }

    #[test]
    fn ranking_text_notes_ties() {
        let (methods, regulations) = builtin_dataset();
        let r = regulations.regulation("art86").unwrap();
        let entries =
            rank_methods(&methods.methods, r, CPLX, std::num::NonZeroUsize::new(3)).unwrap();
        let text = render_ranking(r, CPLX, &entries, Format::Text);
        assert!(text.contains("tie at rank 2: CEM, DiCE (0.80)"), "{text}");
        let records = render_ranking(r, CPLX, &entries, Format::Records);
        assert_eq!(records.lines().count(), 3);
        assert!(records.starts_with("{\"regulation\":\"art86\",\"target\":\"complexity\",\"rank\":1,\"method\":\"Anchors\",\"score\":1.0"));
    }
}
