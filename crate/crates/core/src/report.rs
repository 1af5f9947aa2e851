//! Assembles indicator rows, correlation blocks, post-hoc comparisons and
//! box-plot summaries into one document, and renders it as an aligned text
//! table or as line-delimited JSON records.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::corpus::{Corpus, RateTable, Unit};
use crate::error::{Error, Result};
use crate::fractional;
use crate::indicators::{unit_ratios, unit_report, UnitIndicators};
use crate::stats::{
    pearson, posthoc, significance_label, spearman, summarize, PosthocMethod, PosthocResult,
    SampleSummary, TestResult,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SortColumn {
    Unit,
    SumP,
    SumC,
    MeanCpp,
    MeanCitationScore,
    CppJcsm,
    SumCf,
    MeanCf,
    CppFcsm,
    Mncs,
}

impl FromStr for SortColumn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "unit" => SortColumn::Unit,
            "sum_p" => SortColumn::SumP,
            "sum_c" => SortColumn::SumC,
            "mean_cpp" => SortColumn::MeanCpp,
            "mean_citation_score" | "mcs" => SortColumn::MeanCitationScore,
            "cpp_jcsm" => SortColumn::CppJcsm,
            "sum_cf" => SortColumn::SumCf,
            "mean_cf" => SortColumn::MeanCf,
            "cpp_fcsm" => SortColumn::CppFcsm,
            "mncs" => SortColumn::Mncs,
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown sort column {other:?}"
                )))
            }
        })
    }
}

impl SortColumn {
    fn key(self, row: &UnitIndicators) -> Option<f64> {
        match self {
            SortColumn::Unit => None,
            SortColumn::SumP => Some(row.sum_p as f64),
            SortColumn::SumC => Some(row.sum_c as f64),
            SortColumn::MeanCpp => Some(row.mean_cpp.mean),
            SortColumn::MeanCitationScore => row.mean_citation_score.map(|e| e.mean),
            SortColumn::CppJcsm => row.cpp_jcsm,
            SortColumn::SumCf => row.sum_cf,
            SortColumn::MeanCf => row.mean_cf.map(|e| e.mean),
            SortColumn::CppFcsm => row.cpp_fcsm,
            SortColumn::Mncs => row.mncs.map(|e| e.mean),
        }
    }
}

/// Per-paper distribution used for box plots and post-hoc comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// Fractionally counted citations c_f.
    Fractional,
    /// Observed over expected citations with journal rates.
    JournalRatio,
    /// Observed over expected citations with field rates.
    FieldRatio,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Fractional, Scheme::JournalRatio, Scheme::FieldRatio];

    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Fractional => "fractional",
            Scheme::JournalRatio => "journal-ratio",
            Scheme::FieldRatio => "field-ratio",
        }
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown scheme {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct ReportOptions {
    pub sort_by: SortColumn,
    pub descending: bool,
    /// Thresholds for the significance labels, strict first.
    pub thresholds: (f64, f64),
    /// Run post-hoc comparisons across units for every available scheme.
    pub posthoc: Option<(PosthocMethod, f64)>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            sort_by: SortColumn::MeanCitationScore,
            descending: true,
            thresholds: (0.01, 0.05),
            posthoc: None,
        }
    }
}

/// Spearman and Pearson correlations between two indicator columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationBlock {
    pub name: String,
    pub x: String,
    pub y: String,
    pub n: usize,
    pub spearman: Option<TestResult>,
    pub pearson: Option<TestResult>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitPosthoc {
    pub scheme: Scheme,
    /// Unit ids; group `i` of the result is `units[i]`.
    pub units: Vec<String>,
    pub result: PosthocResult,
}

impl UnitPosthoc {
    pub fn subsets_by_id(&self) -> Vec<Vec<String>> {
        self.result
            .homogeneous_subsets
            .iter()
            .map(|s| s.iter().map(|&i| self.units[i].clone()).collect())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Panel {
    /// Fractionally counted citations.
    Left,
    /// Observed over expected citation rates.
    Right,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxplotEntry {
    pub unit: String,
    pub panel: Panel,
    pub scheme: Scheme,
    pub summary: SampleSummary,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub rows: Vec<UnitIndicators>,
    pub correlations: Vec<CorrelationBlock>,
    pub posthoc: Vec<UnitPosthoc>,
    pub boxplots: Vec<BoxplotEntry>,
    pub warnings: Vec<String>,
}

fn correlation_block(
    name: &str,
    x: &str,
    y: &str,
    rows: &[UnitIndicators],
    pick: impl Fn(&UnitIndicators) -> Option<(f64, f64)>,
) -> CorrelationBlock {
    let (xs, ys): (Vec<f64>, Vec<f64>) = rows.iter().filter_map(pick).unzip();
    let mut block = CorrelationBlock {
        name: name.to_owned(),
        x: x.to_owned(),
        y: y.to_owned(),
        n: xs.len(),
        spearman: None,
        pearson: None,
        note: None,
    };
    if xs.len() < 3 {
        block.note = Some(format!(
            "correlations need at least 3 units with both columns present, got {}",
            xs.len()
        ));
        return block;
    }
    match (spearman(&xs, &ys), pearson(&xs, &ys)) {
        (Ok(s), Ok(p)) => {
            block.spearman = Some(s);
            block.pearson = Some(p);
        }
        (s, p) => {
            let err = s
                .err()
                .or(p.err())
                .map(|e| e.to_string())
                .unwrap_or_default();
            block.note = Some(format!("correlation undefined: {err}"));
        }
    }
    block
}

/// Per-paper values of `unit` under `scheme`.
pub fn scheme_values(
    corpus: &Corpus,
    unit: &Unit,
    scheme: Scheme,
    journal_rates: &RateTable,
    field_rates: &RateTable,
) -> Result<Vec<f64>> {
    match scheme {
        Scheme::Fractional => {
            if !corpus.has_edges() {
                return Err(Error::InsufficientData(
                    "corpus has no citation edges".into(),
                ));
            }
            Ok(fractional::unit_fractional_scores(corpus, unit)?
                .into_iter()
                .map(|s| s.c_f)
                .collect())
        }
        Scheme::JournalRatio => unit_ratios(corpus, unit, journal_rates),
        Scheme::FieldRatio => unit_ratios(corpus, unit, field_rates),
    }
}

fn recoverable(e: &Error) -> bool {
    matches!(
        e,
        Error::MissingRate { .. }
            | Error::NoFieldCodes(_)
            | Error::InsufficientData(_)
            | Error::EmptyUnit(_)
    )
}

/// Box-plot summaries per unit: fractional scores on the left panel and
/// observed/expected ratios under `ratio_scheme` on the right. Units without
/// the needed per-paper data are skipped with a warning.
pub fn boxplots(
    corpus: &Corpus,
    journal_rates: &RateTable,
    field_rates: &RateTable,
    ratio_scheme: Scheme,
    warnings: &mut Vec<String>,
) -> Result<Vec<BoxplotEntry>> {
    let mut out = Vec::new();
    for unit in corpus.units() {
        for (panel, scheme) in [
            (Panel::Left, Scheme::Fractional),
            (Panel::Right, ratio_scheme),
        ] {
            match scheme_values(corpus, unit, scheme, journal_rates, field_rates) {
                Ok(values) if values.is_empty() => {
                    warnings.push(format!(
                        "unit {}: no {} values, skipped",
                        unit.id,
                        scheme.as_str()
                    ));
                }
                Ok(values) => out.push(BoxplotEntry {
                    unit: unit.id.clone(),
                    panel,
                    scheme,
                    summary: summarize(&values)?,
                }),
                Err(e) if recoverable(&e) => {
                    warnings.push(format!(
                        "unit {}: {} box skipped: {e}",
                        unit.id,
                        scheme.as_str()
                    ));
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

/// Post-hoc comparison of all units under `scheme`.
pub fn unit_posthoc(
    corpus: &Corpus,
    journal_rates: &RateTable,
    field_rates: &RateTable,
    scheme: Scheme,
    method: PosthocMethod,
    alpha: f64,
) -> Result<UnitPosthoc> {
    let mut units = Vec::new();
    let mut groups = Vec::new();
    for unit in corpus.units() {
        units.push(unit.id.clone());
        groups.push(scheme_values(
            corpus,
            unit,
            scheme,
            journal_rates,
            field_rates,
        )?);
    }
    Ok(UnitPosthoc {
        scheme,
        units,
        result: posthoc(&groups, method, alpha)?,
    })
}

/// Builds the full indicator report.
pub fn build_report(
    corpus: &Corpus,
    journal_rates: &RateTable,
    field_rates: &RateTable,
    options: &ReportOptions,
) -> Result<ReportDocument> {
    let mut doc = ReportDocument::default();
    for unit in corpus.units() {
        let mut row = unit_report(corpus, unit, journal_rates, field_rates)?;
        doc.warnings.append(&mut row.warnings);
        doc.rows.push(row);
    }

    let col = options.sort_by;
    doc.rows.sort_by(|a, b| {
        let ord = match col {
            SortColumn::Unit => a.unit.cmp(&b.unit),
            _ => match (col.key(a), col.key(b)) {
                (Some(x), Some(y)) => x.total_cmp(&y),
                // absent values last in either direction
                (Some(_), None) => return std::cmp::Ordering::Less,
                (None, Some(_)) => return std::cmp::Ordering::Greater,
                (None, None) => std::cmp::Ordering::Equal,
            },
        };
        if options.descending {
            ord.reverse()
        } else {
            ord
        }
    });

    doc.correlations.push(correlation_block(
        "journal",
        "mean_citation_score",
        "cpp_jcsm",
        &doc.rows,
        |r| Some((r.mean_citation_score?.mean, r.cpp_jcsm?)),
    ));
    doc.correlations.push(correlation_block(
        "field",
        "mean_cf",
        "cpp_fcsm",
        &doc.rows,
        |r| Some((r.mean_cf?.mean, r.cpp_fcsm?)),
    ));

    if let Some((method, alpha)) = options.posthoc {
        for scheme in Scheme::ALL {
            match unit_posthoc(corpus, journal_rates, field_rates, scheme, method, alpha) {
                Ok(p) => doc.posthoc.push(p),
                Err(e) => doc
                    .warnings
                    .push(format!("{} post-hoc skipped: {e}", scheme.as_str())),
            }
        }
    }

    if corpus.has_edges() {
        let mut warnings = Vec::new();
        doc.boxplots = boxplots(
            corpus,
            journal_rates,
            field_rates,
            Scheme::JournalRatio,
            &mut warnings,
        )?;
        doc.warnings.extend(warnings);
    }
    Ok(doc)
}

fn fixed(v: f64) -> String {
    format!("{v:.2}")
}

fn with_sem(mean: f64, sem: Option<f64>) -> String {
    match sem {
        Some(s) => format!("{} (± {})", fixed(mean), fixed(s)),
        None => fixed(mean),
    }
}

const ABSENT: &str = "n/a";

/// Aligned text table with two-decimal values, followed by the correlation
/// blocks and any post-hoc subsets.
pub fn render_table(doc: &ReportDocument, thresholds: (f64, f64)) -> String {
    let header = [
        "Unit", "Σp", "Σc", "Avg(c/p)", "MCS", "CPP/JCSm", "Σc_f", "Avg(c_f)", "CPP/FCSm", "MNCS",
    ];
    let mut cells: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
    for r in &doc.rows {
        cells.push(vec![
            r.label.clone(),
            r.sum_p.to_string(),
            r.sum_c.to_string(),
            with_sem(r.mean_cpp.mean, r.mean_cpp.sem),
            r.mean_citation_score
                .map_or(ABSENT.into(), |e| with_sem(e.mean, e.sem)),
            r.cpp_jcsm.map_or(ABSENT.into(), fixed),
            r.sum_cf.map_or(ABSENT.into(), fixed),
            r.mean_cf.map_or(ABSENT.into(), |e| with_sem(e.mean, e.sem)),
            r.cpp_fcsm.map_or(ABSENT.into(), fixed),
            r.mncs.map_or(ABSENT.into(), |e| with_sem(e.mean, e.sem)),
        ]);
    }
    let ncol = header.len();
    let widths: Vec<usize> = (0..ncol)
        .map(|c| {
            cells
                .iter()
                .map(|row| row[c].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();

    let mut out = String::new();
    for (i, row) in cells.iter().enumerate() {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(c, (cell, &w))| {
                let pad = w - cell.chars().count();
                if c == 0 {
                    format!("{cell}{}", " ".repeat(pad))
                } else {
                    format!("{}{cell}", " ".repeat(pad))
                }
            })
            .collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
        if i == 0 {
            let total: usize = widths.iter().sum::<usize>() + 2 * (ncol - 1);
            let _ = writeln!(out, "{}", "-".repeat(total));
        }
    }

    let (strict, loose) = thresholds;
    for block in &doc.correlations {
        let _ = write!(
            out,
            "\n{} block ({} vs {}, n = {}): ",
            block.name, block.x, block.y, block.n
        );
        match (&block.spearman, &block.pearson) {
            (Some(s), Some(p)) => {
                let _ = writeln!(
                    out,
                    "Spearman rho = {} ({}); Pearson r = {} ({})",
                    fixed(s.statistic),
                    significance_label(s.p_value, strict, loose),
                    fixed(p.statistic),
                    significance_label(p.p_value, strict, loose),
                );
            }
            _ => {
                let _ = writeln!(out, "{}", block.note.as_deref().unwrap_or("absent"));
            }
        }
    }

    for ph in &doc.posthoc {
        let _ = writeln!(
            out,
            "\n{} post-hoc ({}, alpha = {}): homogeneous subsets {}",
            ph.scheme.as_str(),
            ph.result.method,
            ph.result.alpha,
            format_subsets(&ph.subsets_by_id())
        );
    }
    out
}

pub fn format_subsets(subsets: &[Vec<String>]) -> String {
    subsets
        .iter()
        .map(|s| format!("{{{}}}", s.join(", ")))
        .collect::<Vec<_>>()
        .join(" ")
}

/// One JSON object per line, full precision, stable key names.
pub fn render_records(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let mut push = |v: serde_json::Value| {
        out.push_str(&v.to_string());
        out.push('\n');
    };
    for row in &doc.rows {
        let mut v = serde_json::to_value(row).expect("rows serialize");
        v.as_object_mut()
            .expect("row is an object")
            .insert("record".into(), json!("row"));
        push(v);
    }
    for block in &doc.correlations {
        let mut v = serde_json::to_value(block).expect("blocks serialize");
        v.as_object_mut()
            .expect("block is an object")
            .insert("record".into(), json!("correlation"));
        push(v);
    }
    for ph in &doc.posthoc {
        push(posthoc_record(ph));
    }
    for b in &doc.boxplots {
        push(boxplot_record(b));
    }
    for w in &doc.warnings {
        push(json!({"record": "warning", "message": w}));
    }
    out
}

pub fn posthoc_record(ph: &UnitPosthoc) -> serde_json::Value {
    json!({
        "record": "posthoc",
        "scheme": ph.scheme,
        "method": ph.result.method,
        "alpha": ph.result.alpha,
        "units": ph.units,
        "means": ph.result.means,
        "pairwise": ph.result.pairwise,
        "homogeneous_subsets": ph.subsets_by_id(),
    })
}

pub fn boxplot_record(b: &BoxplotEntry) -> serde_json::Value {
    let mut v = serde_json::to_value(b).expect("boxplot serializes");
    v.as_object_mut()
        .expect("entry is an object")
        .insert("record".into(), json!("boxplot"));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{CitationEdge, Publication, RateKind};

    fn one_unit_corpus() -> Corpus {
        Corpus::validated(
            vec![Publication::new("A", 2000, "J", 3).with_citations(4)],
            vec![],
            vec![Unit::new("U", "u", ["A"])],
        )
        .unwrap()
        .with_rates(RateTable::from_pairs(RateKind::Journal, [("J", 2.0)]))
    }

    #[test]
    fn single_unit_has_no_correlations() {
        let c = one_unit_corpus();
        let doc = build_report(
            &c,
            c.journal_rates(),
            c.field_rates(),
            &ReportOptions::default(),
        )
        .unwrap();
        assert_eq!(doc.rows.len(), 1);
        for block in &doc.correlations {
            assert!(block.spearman.is_none() && block.pearson.is_none());
            assert!(block.note.as_deref().unwrap().contains("at least 3"));
        }
        let table = render_table(&doc, (0.01, 0.05));
        assert!(table.contains("at least 3"));
        // field rates are missing: degraded, not fatal
        assert!(!doc.warnings.is_empty());
    }

    #[test]
    fn single_paper_box_is_degenerate() {
        let c = Corpus::validated(
            vec![
                Publication::new("A", 2000, "J", 3).with_citations(1),
                Publication::new("Q", 2001, "J", 4),
            ],
            vec![CitationEdge::new("Q", "A", 2001)],
            vec![Unit::new("U", "u", ["A"])],
        )
        .unwrap();
        let mut w = Vec::new();
        let b = boxplots(
            &c,
            c.journal_rates(),
            c.field_rates(),
            Scheme::JournalRatio,
            &mut w,
        )
        .unwrap();
        assert_eq!(b.len(), 1);
        let s = &b[0].summary;
        assert_eq!((s.q1, s.median, s.q3), (0.25, 0.25, 0.25));
        // journal rates missing: right panel skipped with a warning
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn parse_enums() {
        assert_eq!("field-ratio".parse::<Scheme>().unwrap(), Scheme::FieldRatio);
        assert!("x".parse::<Scheme>().is_err());
        assert_eq!("mncs".parse::<SortColumn>().unwrap(), SortColumn::Mncs);
    }
}
