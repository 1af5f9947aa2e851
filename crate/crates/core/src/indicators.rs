//! Citation indicators compared in the field-normalization debate.
//!
//! Two orders of normalization are kept side by side: the ratio of sums
//! `Σc / Σe` (CPP/JCSm with journal rates, CPP/FCSm with field rates) and the
//! mean of per-paper ratios `mean(c / e)` (the journal-normalized mean
//! citation score, and MNCS with field rates). They agree only when every
//! expected value is the same.

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Publication, RateKind, RateTable, Unit};
use crate::error::{Error, Result};
use crate::fractional::{self, fractional_weight};
use crate::stats::{mean_sem, Estimate};
use crate::sum::{self, CompensatedSum};

/// Mean citations per paper with its standard error.
pub fn mean_cpp(citations: &[u64]) -> Result<Estimate> {
    if citations.is_empty() {
        return Err(Error::Empty);
    }
    let xs: Vec<f64> = citations.iter().map(|&c| c as f64).collect();
    mean_sem(&xs)
}

fn check_lengths(cits: &[f64], expected: &[f64]) -> Result<()> {
    if cits.len() != expected.len() {
        return Err(Error::LengthMismatch {
            left: cits.len(),
            right: expected.len(),
        });
    }
    if cits.is_empty() {
        return Err(Error::Empty);
    }
    Ok(())
}

/// Observed-over-expected ratio per paper.
pub fn ratios(cits: &[f64], expected: &[f64]) -> Result<Vec<f64>> {
    check_lengths(cits, expected)?;
    cits.iter()
        .zip(expected)
        .enumerate()
        .map(|(index, (&c, &e))| {
            if e > 0.0 && e.is_finite() {
                Ok(c / e)
            } else {
                Err(Error::NonPositiveExpected { index, value: e })
            }
        })
        .collect()
}

/// `mean(c_i / e_i)` with standard error: MNCS for field rates, the mean
/// citation score for journal rates.
pub fn mean_of_ratios(cits: &[f64], expected: &[f64]) -> Result<Estimate> {
    mean_sem(&ratios(cits, expected)?)
}

/// `Σc_i / Σe_i`: CPP/FCSm for field rates, CPP/JCSm for journal rates.
pub fn ratio_of_means(cits: &[f64], expected: &[f64]) -> Result<f64> {
    check_lengths(cits, expected)?;
    let total_expected = sum::sum(expected.iter().copied());
    if total_expected <= 0.0 {
        return Err(Error::ZeroExpectedSum);
    }
    Ok(sum::sum(cits.iter().copied()) / total_expected)
}

/// Expected citation rate of a publication: its journal's rate, or the
/// unweighted mean of the rates of all its field codes.
pub fn resolve_expected(publication: &Publication, rates: &RateTable) -> Result<f64> {
    match rates.kind {
        RateKind::Journal => rates.get(&publication.journal),
        RateKind::Field => {
            if publication.fields.is_empty() {
                return Err(Error::NoFieldCodes(publication.id.clone()));
            }
            let values = publication
                .fields
                .iter()
                .map(|f| rates.get(f))
                .collect::<Result<Vec<_>>>()?;
            Ok(sum::sum(values.iter().copied()) / values.len() as f64)
        }
    }
}

/// Impact factor of `journal` in `year` with fractionally counted citations:
/// year-`year` citations to the journal's papers of the two preceding years,
/// each weighted 1/n_refs of the citing paper, divided by the number of
/// those papers.
pub fn fractional_impact_factor(corpus: &Corpus, journal: &str, year: i32) -> Result<f64> {
    let window: Vec<&Publication> = corpus
        .publications()
        .iter()
        .filter(|p| p.journal == journal && (p.year == year - 1 || p.year == year - 2))
        .collect();
    if window.is_empty() {
        return Err(Error::EmptyWindow {
            journal: journal.to_owned(),
            year,
        });
    }
    let mut numerator = CompensatedSum::new();
    for p in &window {
        for edge in corpus.incoming(&p.id).filter(|e| e.year == year) {
            numerator.add(fractional_weight(corpus.publication(&edge.citing)?)?);
        }
    }
    Ok(numerator.value() / window.len() as f64)
}

/// One row of the indicator comparison table. Indicators whose inputs are
/// unavailable are `None`, never zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitIndicators {
    pub unit: String,
    pub label: String,
    pub sum_p: usize,
    pub sum_c: u64,
    pub mean_cpp: Estimate,
    pub mean_citation_score: Option<Estimate>,
    pub cpp_jcsm: Option<f64>,
    pub cpp_fcsm: Option<f64>,
    pub mncs: Option<Estimate>,
    pub sum_cf: Option<f64>,
    pub mean_cf: Option<Estimate>,
    #[serde(skip)]
    pub warnings: Vec<String>,
}

/// Per-paper citation counts of a unit, in unit order.
pub fn unit_citations(corpus: &Corpus, unit: &Unit) -> Result<Vec<u64>> {
    unit.pubs.iter().map(|p| corpus.citation_count(p)).collect()
}

/// Per-paper expected values of a unit under `rates`.
pub fn unit_expected(corpus: &Corpus, unit: &Unit, rates: &RateTable) -> Result<Vec<f64>> {
    unit.pubs
        .iter()
        .map(|p| resolve_expected(corpus.publication(p)?, rates))
        .collect()
}

/// Per-paper c/e ratios of a unit under `rates`.
pub fn unit_ratios(corpus: &Corpus, unit: &Unit, rates: &RateTable) -> Result<Vec<f64>> {
    let cits: Vec<f64> = unit_citations(corpus, unit)?
        .into_iter()
        .map(|c| c as f64)
        .collect();
    ratios(&cits, &unit_expected(corpus, unit, rates)?)
}

pub fn unit_report(
    corpus: &Corpus,
    unit: &Unit,
    journal_rates: &RateTable,
    field_rates: &RateTable,
) -> Result<UnitIndicators> {
    if unit.pubs.is_empty() {
        return Err(Error::EmptyUnit(unit.id.clone()));
    }
    let mut warnings = Vec::new();
    let counts = unit_citations(corpus, unit)?;
    let cits: Vec<f64> = counts.iter().map(|&c| c as f64).collect();

    let mut normalized = |rates: &RateTable| -> Result<Option<(Estimate, f64)>> {
        match unit_expected(corpus, unit, rates) {
            Ok(expected) => Ok(Some((
                mean_of_ratios(&cits, &expected)?,
                ratio_of_means(&cits, &expected)?,
            ))),
            Err(e @ (Error::MissingRate { .. } | Error::NoFieldCodes(_))) => {
                warnings.push(format!(
                    "unit {}: {} indicators absent: {e}",
                    unit.id, rates.kind
                ));
                Ok(None)
            }
            Err(e) => Err(e),
        }
    };
    let journal = normalized(journal_rates)?;
    let field = normalized(field_rates)?;

    let (sum_cf, mean_cf) = if corpus.has_edges() {
        let scores = fractional::unit_fractional_scores(corpus, unit)?;
        let cf: Vec<f64> = scores.iter().map(|s| s.c_f).collect();
        (Some(fractional::total(&scores)), Some(mean_sem(&cf)?))
    } else {
        (None, None)
    };

    Ok(UnitIndicators {
        unit: unit.id.clone(),
        label: unit.label.clone(),
        sum_p: unit.pubs.len(),
        sum_c: counts.iter().sum(),
        mean_cpp: mean_cpp(&counts)?,
        mean_citation_score: journal.map(|j| j.0),
        cpp_jcsm: journal.map(|j| j.1),
        cpp_fcsm: field.map(|f| f.1),
        mncs: field.map(|f| f.0),
        sum_cf,
        mean_cf,
        warnings,
    })
}
