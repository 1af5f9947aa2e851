//! Fractional counting of citations and the indicators and statistics used
//! to compare it with journal- and classification-based normalizations.

pub mod corpus;
pub mod error;
pub mod fractional;
pub mod indicators;
pub mod report;
pub mod stats;
pub mod sum;

pub use corpus::{
    load_corpus, load_corpus_unchecked, load_rates, read_corpus, write_corpus, CitationEdge,
    Corpus, Publication, RateKind, RateTable, Unit, Violation,
};
pub use error::{Error, Result};
pub use fractional::{
    benchmark_ratio, fractional_score, fractional_weight, unit_fractional_scores, FractionalScore,
};
pub use indicators::{
    fractional_impact_factor, mean_cpp, mean_of_ratios, ratio_of_means, resolve_expected,
    unit_report, UnitIndicators,
};
