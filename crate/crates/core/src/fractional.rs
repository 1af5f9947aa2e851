//! Fractional counting of citations.
//!
//! Each citation is weighted by the reciprocal of the citing paper's total
//! reference-list length, so a citation from a paper with six references
//! counts 1/6 and one from a paper with forty references counts 1/40.
//! Differences in citation density between fields are normalized on the
//! citing side, without any field classification.

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Publication, Unit};
use crate::error::{Error, Result};
use crate::sum::{self, CompensatedSum};

/// Fractionally counted citation score of one publication.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FractionalScore {
    #[serde(rename = "pub")]
    pub publication: String,
    pub c_f: f64,
}

/// Weight one citation from `citing` contributes: `1 / n_refs`.
pub fn fractional_weight(citing: &Publication) -> Result<f64> {
    if citing.n_refs == 0 {
        return Err(Error::ZeroReferenceCiting(citing.id.clone()));
    }
    Ok(1.0 / f64::from(citing.n_refs))
}

pub fn fractional_score(corpus: &Corpus, publication: &str) -> Result<FractionalScore> {
    corpus.publication(publication)?;
    let mut acc = CompensatedSum::new();
    for edge in corpus.incoming(publication) {
        acc.add(fractional_weight(corpus.publication(&edge.citing)?)?);
    }
    Ok(FractionalScore {
        publication: publication.to_owned(),
        c_f: acc.value(),
    })
}

/// One score per publication of `unit`, in the unit's order.
pub fn unit_fractional_scores(corpus: &Corpus, unit: &Unit) -> Result<Vec<FractionalScore>> {
    if unit.pubs.is_empty() {
        return Err(Error::EmptyUnit(unit.id.clone()));
    }
    unit.pubs
        .iter()
        .map(|p| fractional_score(corpus, p))
        .collect()
}

pub fn total(scores: &[FractionalScore]) -> f64 {
    sum::sum(scores.iter().map(|s| s.c_f))
}

pub fn mean(scores: &[FractionalScore]) -> Result<f64> {
    if scores.is_empty() {
        return Err(Error::Empty);
    }
    Ok(total(scores) / scores.len() as f64)
}

/// Mean c_f of `unit_scores` relative to the mean c_f of an arbitrary reference set.
pub fn benchmark_ratio(
    unit_scores: &[FractionalScore],
    reference_scores: &[FractionalScore],
) -> Result<f64> {
    if reference_scores.is_empty() {
        return Err(Error::Empty);
    }
    let reference = mean(reference_scores)?;
    if reference <= 0.0 {
        return Err(Error::ZeroReferenceMean);
    }
    Ok(mean(unit_scores)? / reference)
}
