//! Bibliographic data model and the line-delimited interchange format.
//!
//! A corpus file holds one JSON object per line, tagged by `"kind"`:
//!
//! ```text
//! {"kind":"pub","id":"P1","year":2004,"journal":"J1","fields":["F1"],"n_refs":31,"citations_received":2}
//! {"kind":"edge","citing":"Q7","cited":"P1","year":2006}
//! {"kind":"unit","id":"R6","label":"6","pubs":["P1","P2"]}
//! {"kind":"rate","table":"journal","key":"J1","value":4.0}
//! ```
//!
//! Citing papers are full `pub` records: the fractional weight of a citation
//! depends on the citing paper's reference count, so it must be known.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Publication {
    pub id: String,
    pub year: i32,
    pub journal: String,
    #[serde(default)]
    pub fields: Vec<String>,
    pub n_refs: u32,
    pub citations_received: u64,
}

impl Publication {
    pub fn new(id: impl Into<String>, year: i32, journal: impl Into<String>, n_refs: u32) -> Self {
        Self {
            id: id.into(),
            year,
            journal: journal.into(),
            fields: Vec::new(),
            n_refs,
            citations_received: 0,
        }
    }

    pub fn with_fields<I, S>(mut self, fields: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.fields = fields.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_citations(mut self, n: u64) -> Self {
        self.citations_received = n;
        self
    }
}

/// A directed citation; `year` is the publication year of the citing paper.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CitationEdge {
    pub citing: String,
    pub cited: String,
    pub year: i32,
}

impl CitationEdge {
    pub fn new(citing: impl Into<String>, cited: impl Into<String>, year: i32) -> Self {
        Self {
            citing: citing.into(),
            cited: cited.into(),
            year,
        }
    }
}

/// A research unit (researcher, group) owning an ordered list of publications.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unit {
    pub id: String,
    pub label: String,
    pub pubs: Vec<String>,
}

impl Unit {
    pub fn new<I, S>(id: impl Into<String>, label: impl Into<String>, pubs: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            id: id.into(),
            label: label.into(),
            pubs: pubs.into_iter().map(Into::into).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RateKind {
    Journal,
    Field,
}

impl RateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RateKind::Journal => "journal",
            RateKind::Field => "field",
        }
    }
}

impl fmt::Display for RateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Expected citations per paper keyed by journal or field code.
#[derive(Debug, Clone, PartialEq)]
pub struct RateTable {
    pub kind: RateKind,
    pub rates: BTreeMap<String, f64>,
}

impl RateTable {
    pub fn new(kind: RateKind) -> Self {
        Self {
            kind,
            rates: BTreeMap::new(),
        }
    }

    pub fn from_pairs<I, S>(kind: RateKind, pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        Self {
            kind,
            rates: pairs.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }

    pub fn get(&self, key: &str) -> Result<f64> {
        self.rates
            .get(key)
            .copied()
            .ok_or_else(|| Error::MissingRate {
                table: self.kind.as_str(),
                key: key.to_owned(),
            })
    }

    pub fn insert(&mut self, key: impl Into<String>, value: f64) {
        self.rates.insert(key.into(), value);
    }

    pub fn is_empty(&self) -> bool {
        self.rates.is_empty()
    }

    pub fn len(&self) -> usize {
        self.rates.len()
    }

    /// Entries of `other` override entries of `self`.
    pub fn merge(&mut self, other: &RateTable) {
        for (k, v) in &other.rates {
            self.rates.insert(k.clone(), *v);
        }
    }

    fn violations(&self, out: &mut Vec<Violation>) {
        for (key, &value) in &self.rates {
            if !(value > 0.0 && value.is_finite()) {
                out.push(Violation::NonPositiveRate {
                    table: self.kind,
                    key: key.clone(),
                    value,
                });
            }
        }
    }
}

/// One broken invariant. Violations are data: [`Corpus::validate`] collects all of them.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    EmptyId {
        kind: &'static str,
    },
    DuplicateId {
        kind: &'static str,
        id: String,
    },
    DanglingCiting {
        citing: String,
        cited: String,
    },
    DanglingCited(String),
    ZeroReferenceCiting(String),
    EmptyUnit(String),
    UnresolvedUnitPub {
        unit: String,
        publication: String,
    },
    CitationCountMismatch {
        publication: String,
        declared: u64,
        edges: u64,
    },
    NonPositiveRate {
        table: RateKind,
        key: String,
        value: f64,
    },
}

impl Violation {
    /// Short machine-friendly rule name.
    pub fn rule(&self) -> &'static str {
        match self {
            Violation::EmptyId { .. } => "empty-id",
            Violation::DuplicateId { .. } => "duplicate-id",
            Violation::DanglingCiting { .. } => "dangling-citing",
            Violation::DanglingCited(_) => "dangling-cited",
            Violation::ZeroReferenceCiting(_) => "zero-reference-citing",
            Violation::EmptyUnit(_) => "empty-unit",
            Violation::UnresolvedUnitPub { .. } => "unresolved-unit-pub",
            Violation::CitationCountMismatch { .. } => "citation-count-mismatch",
            Violation::NonPositiveRate { .. } => "non-positive-rate",
        }
    }

    /// Id of the entity the violation is about.
    pub fn entity(&self) -> &str {
        match self {
            Violation::EmptyId { .. } => "",
            Violation::DuplicateId { id, .. } => id,
            Violation::DanglingCiting { citing, .. } => citing,
            Violation::DanglingCited(id) => id,
            Violation::ZeroReferenceCiting(id) => id,
            Violation::EmptyUnit(id) => id,
            Violation::UnresolvedUnitPub { unit, .. } => unit,
            Violation::CitationCountMismatch { publication, .. } => publication,
            Violation::NonPositiveRate { key, .. } => key,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyId { kind } => write!(f, "{kind} record with empty id"),
            Violation::DuplicateId { kind, id } => write!(f, "duplicate {kind} id {id:?}"),
            Violation::DanglingCiting { citing, cited } => {
                write!(f, "dangling citing id {citing:?} (edge to {cited:?})")
            }
            Violation::DanglingCited(id) => write!(f, "dangling cited id {id:?}"),
            Violation::ZeroReferenceCiting(id) => write!(f, "zero-reference citing paper {id:?}"),
            Violation::EmptyUnit(id) => write!(f, "empty unit {id:?}"),
            Violation::UnresolvedUnitPub { unit, publication } => {
                write!(f, "unit {unit:?} lists unknown publication {publication:?}")
            }
            Violation::CitationCountMismatch {
                publication,
                declared,
                edges,
            } => write!(
                f,
                "publication {publication:?} declares {declared} citations but has {edges} incoming edges"
            ),
            Violation::NonPositiveRate { table, key, value } => {
                write!(f, "{table} rate for {key:?} is not positive ({value})")
            }
        }
    }
}

/// An immutable collection of publications, citation edges, units and rate tables.
#[derive(Debug, Clone)]
pub struct Corpus {
    publications: Vec<Publication>,
    edges: Vec<CitationEdge>,
    units: Vec<Unit>,
    journal_rates: RateTable,
    field_rates: RateTable,
    pub_index: HashMap<String, usize>,
    unit_index: HashMap<String, usize>,
    incoming: HashMap<String, Vec<usize>>,
}

impl Corpus {
    /// Assembles a corpus without validating it. Call [`Corpus::validate`] or use
    /// [`Corpus::validated`] to check invariants.
    pub fn new(publications: Vec<Publication>, edges: Vec<CitationEdge>, units: Vec<Unit>) -> Self {
        let mut pub_index = HashMap::with_capacity(publications.len());
        for (i, p) in publications.iter().enumerate() {
            pub_index.entry(p.id.clone()).or_insert(i);
        }
        let mut unit_index = HashMap::with_capacity(units.len());
        for (i, u) in units.iter().enumerate() {
            unit_index.entry(u.id.clone()).or_insert(i);
        }
        let mut incoming: HashMap<String, Vec<usize>> = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            incoming.entry(e.cited.clone()).or_default().push(i);
        }
        Self {
            publications,
            edges,
            units,
            journal_rates: RateTable::new(RateKind::Journal),
            field_rates: RateTable::new(RateKind::Field),
            pub_index,
            unit_index,
            incoming,
        }
    }

    pub fn with_rates(mut self, table: RateTable) -> Self {
        match table.kind {
            RateKind::Journal => self.journal_rates.merge(&table),
            RateKind::Field => self.field_rates.merge(&table),
        }
        self
    }

    /// [`Corpus::new`] followed by validation; fails with every violation found.
    pub fn validated(
        publications: Vec<Publication>,
        edges: Vec<CitationEdge>,
        units: Vec<Unit>,
    ) -> Result<Self> {
        let corpus = Self::new(publications, edges, units);
        corpus.check()?;
        Ok(corpus)
    }

    pub(crate) fn check(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(violations))
        }
    }

    pub fn publications(&self) -> &[Publication] {
        &self.publications
    }

    pub fn edges(&self) -> &[CitationEdge] {
        &self.edges
    }

    pub fn units(&self) -> &[Unit] {
        &self.units
    }

    pub fn journal_rates(&self) -> &RateTable {
        &self.journal_rates
    }

    pub fn field_rates(&self) -> &RateTable {
        &self.field_rates
    }

    pub fn has_edges(&self) -> bool {
        !self.edges.is_empty()
    }

    pub fn publication(&self, id: &str) -> Result<&Publication> {
        self.pub_index
            .get(id)
            .map(|&i| &self.publications[i])
            .ok_or_else(|| Error::UnknownPublication(id.to_owned()))
    }

    pub fn unit(&self, id: &str) -> Result<&Unit> {
        self.unit_index
            .get(id)
            .map(|&i| &self.units[i])
            .ok_or_else(|| Error::UnknownUnit(id.to_owned()))
    }

    /// Edges whose cited end is `id`, in file order.
    pub fn incoming(&self, id: &str) -> impl Iterator<Item = &CitationEdge> + '_ {
        self.incoming
            .get(id)
            .into_iter()
            .flatten()
            .map(move |&i| &self.edges[i])
    }

    /// Citation count used by the indicators: incoming edges when the corpus
    /// carries edges, the declared `citations_received` otherwise.
    pub fn citation_count(&self, id: &str) -> Result<u64> {
        let p = self.publication(id)?;
        if self.has_edges() {
            Ok(self.incoming.get(id).map_or(0, |v| v.len() as u64))
        } else {
            Ok(p.citations_received)
        }
    }

    /// Checks every invariant and returns all violations (empty when valid).
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();

        let mut seen = HashSet::new();
        for p in &self.publications {
            if p.id.is_empty() {
                out.push(Violation::EmptyId { kind: "pub" });
            } else if !seen.insert(p.id.as_str()) {
                out.push(Violation::DuplicateId {
                    kind: "pub",
                    id: p.id.clone(),
                });
            }
        }

        let mut zero_ref_reported = HashSet::new();
        for e in &self.edges {
            match self.pub_index.get(&e.citing) {
                None => out.push(Violation::DanglingCiting {
                    citing: e.citing.clone(),
                    cited: e.cited.clone(),
                }),
                Some(&i) => {
                    if self.publications[i].n_refs == 0
                        && zero_ref_reported.insert(e.citing.as_str())
                    {
                        out.push(Violation::ZeroReferenceCiting(e.citing.clone()));
                    }
                }
            }
            if !self.pub_index.contains_key(&e.cited) {
                out.push(Violation::DanglingCited(e.cited.clone()));
            }
        }

        if self.has_edges() {
            for p in &self.publications {
                let edges = self.incoming.get(&p.id).map_or(0, |v| v.len() as u64);
                if edges != p.citations_received {
                    out.push(Violation::CitationCountMismatch {
                        publication: p.id.clone(),
                        declared: p.citations_received,
                        edges,
                    });
                }
            }
        }

        let mut seen_units = HashSet::new();
        for u in &self.units {
            if u.id.is_empty() {
                out.push(Violation::EmptyId { kind: "unit" });
            } else if !seen_units.insert(u.id.as_str()) {
                out.push(Violation::DuplicateId {
                    kind: "unit",
                    id: u.id.clone(),
                });
            }
            if u.pubs.is_empty() {
                out.push(Violation::EmptyUnit(u.id.clone()));
            }
            for pid in &u.pubs {
                if !self.pub_index.contains_key(pid) {
                    out.push(Violation::UnresolvedUnitPub {
                        unit: u.id.clone(),
                        publication: pid.clone(),
                    });
                }
            }
        }

        self.journal_rates.violations(&mut out);
        self.field_rates.violations(&mut out);
        out
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Record {
    Pub(PubRecord),
    Edge(CitationEdge),
    Unit(Unit),
    Rate(RateRecord),
}

#[derive(Debug, Serialize, Deserialize)]
struct PubRecord {
    id: String,
    year: i32,
    journal: String,
    #[serde(default)]
    fields: Vec<String>,
    n_refs: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    citations_received: Option<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RateRecord {
    table: RateKind,
    key: String,
    value: f64,
}

#[derive(Default)]
struct Parsed {
    pubs: Vec<PubRecord>,
    edges: Vec<CitationEdge>,
    units: Vec<Unit>,
    journal: RateTable,
    field: RateTable,
}

impl Default for RateTable {
    fn default() -> Self {
        RateTable::new(RateKind::Journal)
    }
}

fn parse_file(path: &Path) -> Result<Parsed> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_reader(BufReader::new(file), path)
}

fn parse_reader<R: BufRead>(reader: R, path: &Path) -> Result<Parsed> {
    let mut parsed = Parsed {
        field: RateTable::new(RateKind::Field),
        ..Parsed::default()
    };
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let record: Record = serde_json::from_str(trimmed).map_err(|e| Error::Parse {
            path: path.to_owned(),
            line: lineno,
            reason: e.to_string(),
        })?;
        match record {
            Record::Pub(p) => parsed.pubs.push(p),
            Record::Edge(e) => parsed.edges.push(e),
            Record::Unit(u) => parsed.units.push(u),
            Record::Rate(r) => {
                if !r.value.is_finite() {
                    return Err(Error::Parse {
                        path: path.to_owned(),
                        line: lineno,
                        reason: format!("rate value for {:?} is not finite", r.key),
                    });
                }
                let table = match r.table {
                    RateKind::Journal => &mut parsed.journal,
                    RateKind::Field => &mut parsed.field,
                };
                if table.rates.insert(r.key.clone(), r.value).is_some() {
                    return Err(Error::Parse {
                        path: path.to_owned(),
                        line: lineno,
                        reason: format!("duplicate {} rate key {:?}", r.table, r.key),
                    });
                }
            }
        }
    }
    Ok(parsed)
}

fn assemble(parsed: Parsed) -> Result<Corpus> {
    let corpus = assemble_unchecked(parsed);
    corpus.check()?;
    Ok(corpus)
}

fn assemble_unchecked(parsed: Parsed) -> Corpus {
    let mut counts: HashMap<&str, u64> = HashMap::new();
    for e in &parsed.edges {
        *counts.entry(e.cited.as_str()).or_default() += 1;
    }
    let publications = parsed
        .pubs
        .iter()
        .map(|r| Publication {
            id: r.id.clone(),
            year: r.year,
            journal: r.journal.clone(),
            fields: r.fields.clone(),
            n_refs: r.n_refs,
            // Absent counts are taken from the edge list.
            citations_received: r
                .citations_received
                .unwrap_or_else(|| counts.get(r.id.as_str()).copied().unwrap_or(0)),
        })
        .collect();
    Corpus::new(publications, parsed.edges, parsed.units)
        .with_rates(parsed.journal)
        .with_rates(parsed.field)
}

/// Reads and validates a corpus file. Rate records in the same file populate
/// the corpus rate tables.
pub fn load_corpus(path: impl AsRef<Path>) -> Result<Corpus> {
    assemble(parse_file(path.as_ref())?)
}

/// Parses a corpus file without validating it; only malformed lines are errors.
pub fn load_corpus_unchecked(path: impl AsRef<Path>) -> Result<Corpus> {
    Ok(assemble_unchecked(parse_file(path.as_ref())?))
}

/// Like [`load_corpus`] but from any buffered reader; `name` is used in error messages.
pub fn read_corpus<R: BufRead>(reader: R, name: impl AsRef<Path>) -> Result<Corpus> {
    assemble(parse_reader(reader, name.as_ref())?)
}

/// Reads a rates file, returning the journal and field tables.
pub fn load_rates(path: impl AsRef<Path>) -> Result<(RateTable, RateTable)> {
    let path = path.as_ref();
    let parsed = parse_file(path)?;
    if !parsed.pubs.is_empty() || !parsed.edges.is_empty() || !parsed.units.is_empty() {
        return Err(Error::Parse {
            path: path.to_owned(),
            line: 0,
            reason: "rates file may only contain rate records".into(),
        });
    }
    let mut v = Vec::new();
    parsed.journal.violations(&mut v);
    parsed.field.violations(&mut v);
    if !v.is_empty() {
        return Err(Error::Invalid(v));
    }
    Ok((parsed.journal, parsed.field))
}

/// Writes the corpus in the line-delimited format: pubs, edges, units, rates.
pub fn write_corpus<W: Write>(corpus: &Corpus, mut w: W) -> std::io::Result<()> {
    let mut emit = |rec: &Record| -> std::io::Result<()> {
        serde_json::to_writer(&mut w, rec)?;
        w.write_all(b"\n")
    };
    for p in &corpus.publications {
        emit(&Record::Pub(PubRecord {
            id: p.id.clone(),
            year: p.year,
            journal: p.journal.clone(),
            fields: p.fields.clone(),
            n_refs: p.n_refs,
            citations_received: Some(p.citations_received),
        }))?;
    }
    for e in &corpus.edges {
        emit(&Record::Edge(e.clone()))?;
    }
    for u in &corpus.units {
        emit(&Record::Unit(u.clone()))?;
    }
    for table in [&corpus.journal_rates, &corpus.field_rates] {
        for (key, &value) in &table.rates {
            emit(&Record::Rate(RateRecord {
                table: table.kind,
                key: key.clone(),
                value,
            }))?;
        }
    }
    Ok(())
}

impl PartialEq for Corpus {
    fn eq(&self, other: &Self) -> bool {
        self.publications == other.publications
            && self.edges == other.edges
            && self.units == other.units
            && self.journal_rates == other.journal_rates
            && self.field_rates == other.field_rates
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn read(text: &str) -> Result<Corpus> {
        read_corpus(text.as_bytes(), "test.jsonl")
    }

    const SMALL: &str = r#"
{"kind":"pub","id":"A","year":2004,"journal":"J1","fields":["F1"],"n_refs":12,"citations_received":1}
{"kind":"pub","id":"B","year":2006,"journal":"J2","n_refs":6}
{"kind":"edge","citing":"B","cited":"A","year":2006}
{"kind":"unit","id":"U1","label":"Unit one","pubs":["A"]}
"#;

    #[test]
    fn loads_small_corpus() {
        let c = read(SMALL).unwrap();
        assert_eq!(c.publications().len(), 2);
        assert_eq!(c.edges().len(), 1);
        assert_eq!(c.units().len(), 1);
        assert!(c.validate().is_empty());
        // B declared no count; filled from edges
        assert_eq!(c.publication("B").unwrap().citations_received, 0);
        assert_eq!(c.citation_count("A").unwrap(), 1);
    }

    #[test]
    fn zero_reference_citing_is_rejected() {
        let text = r#"
{"kind":"pub","id":"A","year":2004,"journal":"J1","n_refs":3}
{"kind":"pub","id":"B","year":2006,"journal":"J2","n_refs":0}
{"kind":"edge","citing":"B","cited":"A","year":2006}
"#;
        let err = read(text).unwrap_err();
        match &err {
            Error::Invalid(v) => assert_eq!(v, &[Violation::ZeroReferenceCiting("B".into())]),
            other => panic!("unexpected {other:?}"),
        }
        assert!(err.to_string().contains("zero-reference citing paper"));
    }

    #[test]
    fn malformed_line_reports_position() {
        let text = "{\"kind\":\"pub\",\"id\":\"A\",\"year\":2004,\"journal\":\"J\",\"n_refs\":1}\n{not json\n";
        match read(text).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_kind_is_a_parse_error() {
        let text = r#"{"kind":"author","id":"x"}"#;
        assert!(matches!(read(text), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn duplicate_and_dangling_are_all_reported() {
        let text = r#"
{"kind":"pub","id":"A","year":2004,"journal":"J1","n_refs":3}
{"kind":"pub","id":"A","year":2005,"journal":"J1","n_refs":3}
{"kind":"edge","citing":"A","cited":"X","year":2006}
{"kind":"edge","citing":"Y","cited":"A","year":2006}
"#;
        let Error::Invalid(v) = read(text).unwrap_err() else {
            panic!("expected violations")
        };
        let rules: Vec<_> = v.iter().map(Violation::rule).collect();
        assert!(rules.contains(&"duplicate-id"));
        assert!(rules.contains(&"dangling-cited"));
        assert!(rules.contains(&"dangling-citing"));
    }

    #[test]
    fn validate_well_formed_is_empty() {
        let c = Corpus::new(
            vec![
                Publication::new("A", 2000, "J", 5).with_citations(1),
                Publication::new("B", 2001, "J", 5),
            ],
            vec![CitationEdge::new("B", "A", 2001)],
            vec![Unit::new("U", "u", ["A", "B"])],
        );
        assert!(c.validate().is_empty());
    }

    #[test]
    fn validate_dangling_cited() {
        let c = Corpus::new(
            vec![Publication::new("A", 2000, "J", 5)],
            vec![CitationEdge::new("A", "X", 2001)],
            vec![],
        );
        assert_eq!(c.validate(), vec![Violation::DanglingCited("X".into())]);
    }

    #[test]
    fn validate_empty_unit() {
        let c = Corpus::new(
            vec![],
            vec![],
            vec![Unit::new("U", "u", Vec::<String>::new())],
        );
        assert_eq!(c.validate(), vec![Violation::EmptyUnit("U".into())]);
    }

    #[test]
    fn citation_count_mismatch_is_detected() {
        let c = Corpus::new(
            vec![
                Publication::new("A", 2000, "J", 5).with_citations(3),
                Publication::new("B", 2001, "J", 5),
            ],
            vec![CitationEdge::new("B", "A", 2001)],
            vec![],
        );
        assert_eq!(
            c.validate(),
            vec![Violation::CitationCountMismatch {
                publication: "A".into(),
                declared: 3,
                edges: 1
            }]
        );
    }

    #[test]
    fn scalar_counts_without_edges() {
        let c = Corpus::new(
            vec![Publication::new("A", 2000, "J", 0).with_citations(7)],
            vec![],
            vec![],
        );
        assert!(c.validate().is_empty());
        assert_eq!(c.citation_count("A").unwrap(), 7);
    }

    #[test]
    fn rates_in_corpus_file() {
        let text = r#"
{"kind":"pub","id":"A","year":2004,"journal":"J1","n_refs":3}
{"kind":"rate","table":"journal","key":"J1","value":4.0}
{"kind":"rate","table":"field","key":"F1","value":2.5}
"#;
        let c = read(text).unwrap();
        assert_eq!(c.journal_rates().get("J1").unwrap(), 4.0);
        assert_eq!(c.field_rates().get("F1").unwrap(), 2.5);
        assert!(matches!(
            c.journal_rates().get("J?"),
            Err(Error::MissingRate { .. })
        ));
    }

    #[test]
    fn non_positive_rate_is_a_violation() {
        let text = r#"{"kind":"rate","table":"field","key":"F1","value":0.0}"#;
        let Error::Invalid(v) = read(text).unwrap_err() else {
            panic!("expected violations")
        };
        assert_eq!(v[0].rule(), "non-positive-rate");
    }

    #[test]
    fn write_then_read_is_identity() {
        let c = read(SMALL).unwrap().with_rates(RateTable::from_pairs(
            RateKind::Journal,
            [("J1", 0.1 + 0.2)],
        ));
        let mut buf = Vec::new();
        write_corpus(&c, &mut buf).unwrap();
        let back = read_corpus(buf.as_slice(), "roundtrip").unwrap();
        assert_eq!(c, back);
    }
}
