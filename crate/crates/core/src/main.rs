use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use citenorm::corpus::{load_corpus, load_corpus_unchecked, load_rates, Corpus, RateTable};
use citenorm::indicators::fractional_impact_factor;
use citenorm::report::{
    boxplot_record, boxplots, build_report, format_subsets, posthoc_record, render_records,
    render_table, unit_posthoc, ReportOptions, Scheme, SortColumn,
};
use citenorm::stats::{significance_label, PosthocMethod};
use citenorm::Result;

#[derive(Parser)]
#[command(
    name = "citenorm",
    version,
    about = "Fractional citation counting and normalization indicators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Line-delimited corpus file
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,

    /// Rates file with journal expected citation rates
    #[arg(long, global = true)]
    journal_rates: Option<PathBuf>,

    /// Rates file with field expected citation rates
    #[arg(long, global = true)]
    field_rates: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Significance level for post-hoc tests
    #[arg(long, global = true, default_value_t = 0.05)]
    alpha: f64,

    #[arg(long, global = true, value_enum, default_value_t = Method::Tukey)]
    method: Method,
}

#[derive(Subcommand)]
enum Command {
    /// Indicator table with correlation blocks
    Report {
        /// Column to sort rows by
        #[arg(long, default_value = "mean_citation_score")]
        sort: String,
        #[arg(long)]
        ascending: bool,
        /// Also run post-hoc comparisons across units for every scheme
        #[arg(long)]
        posthoc: bool,
        /// Significance label thresholds (strict, loose)
        #[arg(long, value_delimiter = ',', num_args = 2, default_values_t = [0.01, 0.05])]
        thresholds: Vec<f64>,
    },
    /// Box-plot summaries of per-paper distributions
    Boxplot {
        /// Scheme for the right-hand panel
        #[arg(long, default_value = "journal-ratio")]
        ratio: String,
    },
    /// Pairwise post-hoc comparison of units with homogeneous subsets
    Posthoc {
        #[arg(long, default_value = "fractional")]
        scheme: String,
    },
    /// Fractionally counted impact factor of a journal
    Fif {
        #[arg(long)]
        journal: String,
        #[arg(long)]
        year: i32,
    },
    /// Check corpus invariants and list every violation
    Validate,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Records,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Bonferroni,
    Tukey,
    Scheffe,
}

impl From<Method> for PosthocMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Bonferroni => PosthocMethod::Bonferroni,
            Method::Tukey => PosthocMethod::Tukey,
            Method::Scheffe => PosthocMethod::Scheffe,
        }
    }
}

fn warn(msg: &str) {
    eprintln!("warning: {msg}");
}

fn corpus_path(cli: &Cli) -> Result<&PathBuf> {
    cli.corpus
        .as_ref()
        .ok_or_else(|| citenorm::Error::InvalidParameter("--corpus is required".into()))
}

/// Rate tables from the corpus file, overridden by any separate rates files.
fn rate_tables(cli: &Cli, corpus: &Corpus) -> Result<(RateTable, RateTable)> {
    let mut journal = corpus.journal_rates().clone();
    let mut field = corpus.field_rates().clone();
    for path in [&cli.journal_rates, &cli.field_rates].into_iter().flatten() {
        let (j, f) = load_rates(path)?;
        journal.merge(&j);
        field.merge(&f);
    }
    Ok((journal, field))
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Validate => {
            let corpus = load_corpus_unchecked(corpus_path(cli)?)?;
            let violations = corpus.validate();
            match cli.format {
                Format::Table => {
                    for v in &violations {
                        println!("{}\t{}\t{}", v.rule(), v.entity(), v);
                    }
                    println!(
                        "{} publications, {} edges, {} units: {} violation(s)",
                        corpus.publications().len(),
                        corpus.edges().len(),
                        corpus.units().len(),
                        violations.len()
                    );
                }
                Format::Records => {
                    for v in &violations {
                        println!(
                            "{}",
                            json!({"record": "violation", "rule": v.rule(), "entity": v.entity(), "message": v.to_string()})
                        );
                    }
                    println!(
                        "{}",
                        json!({
                            "record": "summary",
                            "publications": corpus.publications().len(),
                            "edges": corpus.edges().len(),
                            "units": corpus.units().len(),
                            "violations": violations.len(),
                        })
                    );
                }
            }
            Ok(violations.is_empty())
        }
        Command::Report {
            sort,
            ascending,
            posthoc,
            thresholds,
        } => {
            let corpus = load_corpus(corpus_path(cli)?)?;
            let (journal, field) = rate_tables(cli, &corpus)?;
            let options = ReportOptions {
                sort_by: sort.parse::<SortColumn>()?,
                descending: !ascending,
                thresholds: (thresholds[0], thresholds[1]),
                posthoc: posthoc.then(|| (cli.method.into(), cli.alpha)),
            };
            let doc = build_report(&corpus, &journal, &field, &options)?;
            doc.warnings.iter().for_each(|w| warn(w));
            match cli.format {
                Format::Table => print!("{}", render_table(&doc, options.thresholds)),
                Format::Records => print!("{}", render_records(&doc)),
            }
            Ok(true)
        }
        Command::Boxplot { ratio } => {
            let corpus = load_corpus(corpus_path(cli)?)?;
            let (journal, field) = rate_tables(cli, &corpus)?;
            let ratio: Scheme = ratio.parse()?;
            let mut warnings = Vec::new();
            let entries = boxplots(&corpus, &journal, &field, ratio, &mut warnings)?;
            warnings.iter().for_each(|w| warn(w));
            for b in &entries {
                match cli.format {
                    Format::Records => println!("{}", boxplot_record(b)),
                    Format::Table => {
                        let s = &b.summary;
                        println!(
                            "{}\t{:?}\t{}\tn={}\tlow={:.4}\tq1={:.4}\tmedian={:.4}\tq3={:.4}\thigh={:.4}\toutliers={:?}",
                            b.unit,
                            b.panel,
                            b.scheme.as_str(),
                            s.n,
                            s.whisker_low,
                            s.q1,
                            s.median,
                            s.q3,
                            s.whisker_high,
                            s.outliers
                        );
                    }
                }
            }
            Ok(true)
        }
        Command::Posthoc { scheme } => {
            let corpus = load_corpus(corpus_path(cli)?)?;
            let (journal, field) = rate_tables(cli, &corpus)?;
            let ph = unit_posthoc(
                &corpus,
                &journal,
                &field,
                scheme.parse()?,
                cli.method.into(),
                cli.alpha,
            )?;
            match cli.format {
                Format::Records => println!("{}", posthoc_record(&ph)),
                Format::Table => {
                    println!(
                        "{} post-hoc on {} (alpha = {})",
                        ph.result.method,
                        ph.scheme.as_str(),
                        ph.result.alpha
                    );
                    let k = ph.units.len();
                    for i in 0..k {
                        for j in (i + 1)..k {
                            let p = ph.result.p(i, j);
                            println!(
                                "{}\t{}\tp = {:.4}\t{}",
                                ph.units[i],
                                ph.units[j],
                                p,
                                significance_label(Some(p), 0.01, ph.result.alpha)
                            );
                        }
                    }
                    println!(
                        "homogeneous subsets: {}",
                        format_subsets(&ph.subsets_by_id())
                    );
                }
            }
            Ok(true)
        }
        Command::Fif { journal, year } => {
            let corpus = load_corpus(corpus_path(cli)?)?;
            let value = fractional_impact_factor(&corpus, journal, *year)?;
            match cli.format {
                Format::Records => println!(
                    "{}",
                    json!({"record": "fif", "journal": journal, "year": year, "value": value})
                ),
                Format::Table => println!("{journal}\t{year}\t{value:.6}"),
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
