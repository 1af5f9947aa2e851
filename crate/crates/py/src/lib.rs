//! Python bindings for the `citenorm` library.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use citenorm::stats::{self, Distribution, PosthocMethod};
use citenorm::{indicators, Error};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn estimate(e: stats::Estimate) -> (f64, Option<f64>) {
    (e.mean, e.sem)
}

/// A loaded, validated publication corpus with its embedded rate tables.
#[pyclass(frozen, module = "citenorm_py")]
struct Corpus {
    inner: citenorm::Corpus,
}

#[pymethods]
impl Corpus {
    /// Publication ids in file order.
    fn publication_ids(&self) -> Vec<String> {
        self.inner
            .publications()
            .iter()
            .map(|p| p.id.clone())
            .collect()
    }

    fn unit_ids(&self) -> Vec<String> {
        self.inner.units().iter().map(|u| u.id.clone()).collect()
    }

    fn edge_count(&self) -> usize {
        self.inner.edges().len()
    }

    fn citation_count(&self, id: &str) -> PyResult<u64> {
        self.inner.citation_count(id).map_err(py_err)
    }

    /// Fractionally counted citation score of one publication.
    fn fractional_score(&self, id: &str) -> PyResult<f64> {
        citenorm::fractional_score(&self.inner, id)
            .map(|s| s.c_f)
            .map_err(py_err)
    }

    /// `(publication id, c_f)` pairs for every paper of a unit.
    fn unit_fractional_scores(&self, unit: &str) -> PyResult<Vec<(String, f64)>> {
        let unit = self.inner.unit(unit).map_err(py_err)?;
        let scores = citenorm::unit_fractional_scores(&self.inner, unit).map_err(py_err)?;
        Ok(scores.into_iter().map(|s| (s.publication, s.c_f)).collect())
    }

    fn fractional_impact_factor(&self, journal: &str, year: i32) -> PyResult<f64> {
        citenorm::fractional_impact_factor(&self.inner, journal, year).map_err(py_err)
    }

    /// Indicator row for a unit using the corpus's own rate tables.
    fn unit_report(&self, unit: &str) -> PyResult<UnitIndicators> {
        let unit = self.inner.unit(unit).map_err(py_err)?;
        let inner = citenorm::unit_report(
            &self.inner,
            unit,
            self.inner.journal_rates(),
            self.inner.field_rates(),
        )
        .map_err(py_err)?;
        Ok(UnitIndicators { inner })
    }

    fn __repr__(&self) -> String {
        format!(
            "Corpus(publications={}, edges={}, units={})",
            self.inner.publications().len(),
            self.inner.edges().len(),
            self.inner.units().len()
        )
    }
}

#[pyclass(frozen, module = "citenorm_py")]
struct UnitIndicators {
    inner: indicators::UnitIndicators,
}

#[pymethods]
impl UnitIndicators {
    #[getter]
    fn unit(&self) -> &str {
        &self.inner.unit
    }
    #[getter]
    fn label(&self) -> &str {
        &self.inner.label
    }
    #[getter]
    fn sum_p(&self) -> usize {
        self.inner.sum_p
    }
    #[getter]
    fn sum_c(&self) -> u64 {
        self.inner.sum_c
    }
    /// `(mean, sem)`
    #[getter]
    fn mean_cpp(&self) -> (f64, Option<f64>) {
        estimate(self.inner.mean_cpp)
    }
    #[getter]
    fn mean_citation_score(&self) -> Option<(f64, Option<f64>)> {
        self.inner.mean_citation_score.map(estimate)
    }
    #[getter]
    fn cpp_jcsm(&self) -> Option<f64> {
        self.inner.cpp_jcsm
    }
    #[getter]
    fn cpp_fcsm(&self) -> Option<f64> {
        self.inner.cpp_fcsm
    }
    #[getter]
    fn mncs(&self) -> Option<(f64, Option<f64>)> {
        self.inner.mncs.map(estimate)
    }
    #[getter]
    fn sum_cf(&self) -> Option<f64> {
        self.inner.sum_cf
    }
    #[getter]
    fn mean_cf(&self) -> Option<(f64, Option<f64>)> {
        self.inner.mean_cf.map(estimate)
    }
    #[getter]
    fn warnings(&self) -> Vec<String> {
        self.inner.warnings.clone()
    }
}

#[pyclass(frozen, get_all, module = "citenorm_py")]
struct TestResult {
    method: String,
    statistic: f64,
    df1: f64,
    df2: Option<f64>,
    p_value: Option<f64>,
}

impl From<stats::TestResult> for TestResult {
    fn from(r: stats::TestResult) -> Self {
        Self {
            method: r.method.to_string(),
            statistic: r.statistic,
            df1: r.df1,
            df2: r.df2,
            p_value: r.p_value,
        }
    }
}

#[pymethods]
impl TestResult {
    fn __repr__(&self) -> String {
        format!(
            "TestResult(method={:?}, statistic={}, p_value={:?})",
            self.method, self.statistic, self.p_value
        )
    }
}

#[pyclass(frozen, get_all, module = "citenorm_py")]
struct PosthocResult {
    method: String,
    alpha: f64,
    means: Vec<f64>,
    pairwise: Vec<Vec<f64>>,
    homogeneous_subsets: Vec<Vec<usize>>,
}

#[pyclass(frozen, get_all, module = "citenorm_py")]
struct SampleSummary {
    n: usize,
    mean: f64,
    sd: Option<f64>,
    sem: Option<f64>,
    median: f64,
    q1: f64,
    q3: f64,
    whisker_low: f64,
    whisker_high: f64,
    outliers: Vec<f64>,
}

/// Load and validate a line-delimited corpus file, merging in the journal
/// and field rates of any extra rates files.
#[pyfunction]
#[pyo3(signature = (path, rate_files = Vec::new()))]
fn load_corpus(path: &str, rate_files: Vec<String>) -> PyResult<Corpus> {
    let mut inner = citenorm::load_corpus(path).map_err(py_err)?;
    for file in rate_files {
        let (journal, field) = citenorm::load_rates(file).map_err(py_err)?;
        inner = inner.with_rates(journal).with_rates(field);
    }
    Ok(Corpus { inner })
}

/// Every invariant violation in a corpus file, as `(rule, entity, message)`.
#[pyfunction]
fn validate(path: &str) -> PyResult<Vec<(String, String, String)>> {
    let corpus = citenorm::load_corpus_unchecked(path).map_err(py_err)?;
    Ok(corpus
        .validate()
        .into_iter()
        .map(|v| (v.rule().to_owned(), v.entity().to_owned(), v.to_string()))
        .collect())
}

/// Weight of one citation from a paper with `n_refs` references.
#[pyfunction]
fn fractional_weight(n_refs: u32) -> PyResult<f64> {
    citenorm::fractional_weight(&citenorm::Publication::new("citing", 0, "", n_refs))
        .map_err(py_err)
}

#[pyfunction]
fn mean_cpp(citations: Vec<u64>) -> PyResult<(f64, Option<f64>)> {
    citenorm::mean_cpp(&citations).map(estimate).map_err(py_err)
}

#[pyfunction]
fn mean_of_ratios(citations: Vec<f64>, expected: Vec<f64>) -> PyResult<(f64, Option<f64>)> {
    citenorm::mean_of_ratios(&citations, &expected)
        .map(estimate)
        .map_err(py_err)
}

#[pyfunction]
fn ratio_of_means(citations: Vec<f64>, expected: Vec<f64>) -> PyResult<f64> {
    citenorm::ratio_of_means(&citations, &expected).map_err(py_err)
}

#[pyfunction]
fn pearson(x: Vec<f64>, y: Vec<f64>) -> PyResult<TestResult> {
    stats::pearson(&x, &y).map(Into::into).map_err(py_err)
}

/// Spearman's rho; `exact` enumerates permutations for n <= 8.
#[pyfunction]
#[pyo3(signature = (x, y, exact = false))]
fn spearman(x: Vec<f64>, y: Vec<f64>, exact: bool) -> PyResult<TestResult> {
    let r = if exact {
        stats::spearman_exact(&x, &y)
    } else {
        stats::spearman(&x, &y)
    };
    r.map(Into::into).map_err(py_err)
}

#[pyfunction]
fn one_way_anova(groups: Vec<Vec<f64>>) -> PyResult<TestResult> {
    stats::one_way_anova(&groups)
        .map(Into::into)
        .map_err(py_err)
}

#[pyfunction]
fn welch_anova(groups: Vec<Vec<f64>>) -> PyResult<TestResult> {
    stats::welch_anova(&groups).map(Into::into).map_err(py_err)
}

#[pyfunction]
fn kruskal_wallis(groups: Vec<Vec<f64>>) -> PyResult<TestResult> {
    stats::kruskal_wallis(&groups)
        .map(Into::into)
        .map_err(py_err)
}

/// Pairwise comparisons with `method` one of bonferroni, tukey or scheffe.
#[pyfunction]
#[pyo3(signature = (groups, method = "tukey", alpha = 0.05))]
fn posthoc(groups: Vec<Vec<f64>>, method: &str, alpha: f64) -> PyResult<PosthocResult> {
    let method: PosthocMethod = method.parse().map_err(py_err)?;
    let r = stats::posthoc(&groups, method, alpha).map_err(py_err)?;
    Ok(PosthocResult {
        method: r.method.to_string(),
        alpha: r.alpha,
        means: r.means,
        pairwise: r.pairwise,
        homogeneous_subsets: r.homogeneous_subsets,
    })
}

#[pyfunction]
fn summarize(xs: Vec<f64>) -> PyResult<SampleSummary> {
    let s = stats::summarize(&xs).map_err(py_err)?;
    Ok(SampleSummary {
        n: s.n,
        mean: s.mean,
        sd: s.sd,
        sem: s.sem,
        median: s.median,
        q1: s.q1,
        q3: s.q3,
        whisker_low: s.whisker_low,
        whisker_high: s.whisker_high,
        outliers: s.outliers,
    })
}

/// CDF of a named distribution: `t` (df), `f` (df1, df2), `chi2` (df) or
/// `studentized_range` (k, df).
#[pyfunction]
#[pyo3(signature = (name, x, a, b = None))]
fn dist_cdf(name: &str, x: f64, a: f64, b: Option<f64>) -> PyResult<f64> {
    let need_b = || b.ok_or_else(|| PyValueError::new_err(format!("{name} needs two parameters")));
    let dist = match name {
        "t" => Distribution::StudentT { df: a },
        "f" => Distribution::FisherF {
            df1: a,
            df2: need_b()?,
        },
        "chi2" => Distribution::ChiSquared { df: a },
        "studentized_range" => {
            if a.fract() != 0.0 || a < 2.0 {
                return Err(PyValueError::new_err("k must be an integer >= 2"));
            }
            Distribution::StudentizedRange {
                k: a as u32,
                df: need_b()?,
            }
        }
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown distribution {other:?}"
            )))
        }
    };
    stats::dist_cdf(dist, x).map_err(py_err)
}

#[pymodule]
fn citenorm_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Corpus>()?;
    m.add_class::<UnitIndicators>()?;
    m.add_class::<TestResult>()?;
    m.add_class::<PosthocResult>()?;
    m.add_class::<SampleSummary>()?;
    m.add_function(wrap_pyfunction!(load_corpus, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(fractional_weight, m)?)?;
    m.add_function(wrap_pyfunction!(mean_cpp, m)?)?;
    m.add_function(wrap_pyfunction!(mean_of_ratios, m)?)?;
    m.add_function(wrap_pyfunction!(ratio_of_means, m)?)?;
    m.add_function(wrap_pyfunction!(pearson, m)?)?;
    m.add_function(wrap_pyfunction!(spearman, m)?)?;
    m.add_function(wrap_pyfunction!(one_way_anova, m)?)?;
    m.add_function(wrap_pyfunction!(welch_anova, m)?)?;
    m.add_function(wrap_pyfunction!(kruskal_wallis, m)?)?;
    m.add_function(wrap_pyfunction!(posthoc, m)?)?;
    m.add_function(wrap_pyfunction!(summarize, m)?)?;
    m.add_function(wrap_pyfunction!(dist_cdf, m)?)?;
    Ok(())
}
