//! Edge-list and attribute readers, weight recipes, and output writers.
//!
//! Edge lists hold one `source, target[, weight]` record per line, separated
//! by tabs or commas (sniffed from the first record; whitespace is accepted
//! when a record has neither). Lines starting with `#` and blank lines are
//! skipped. Weights may be integers, decimals or `p/q` literals and are read
//! exactly. Vertex ids map to dense indices in first-seen order.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::Path;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};
use crate::features::FeatureMatrix;
use crate::quiver::{Arrow, Quiver, WeightedQuiver};

/// A weighted quiver together with the external id of each vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedGraph {
    pub quiver: WeightedQuiver,
    /// `ids[i]` is the external id of vertex `i`.
    pub ids: Vec<String>,
}

#[derive(Default)]
struct IdMap {
    ids: Vec<String>,
    index: HashMap<String, usize>,
}

impl IdMap {
    fn intern(&mut self, id: &str) -> usize {
        if let Some(&i) = self.index.get(id) {
            return i;
        }
        let i = self.ids.len();
        self.ids.push(id.to_string());
        self.index.insert(id.to_string(), i);
        i
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Separator {
    Tab,
    Comma,
    Whitespace,
}

impl Separator {
    fn sniff(line: &str) -> Self {
        if line.contains('\t') {
            Separator::Tab
        } else if line.contains(',') {
            Separator::Comma
        } else {
            Separator::Whitespace
        }
    }

    fn split<'a>(&self, line: &'a str) -> Vec<&'a str> {
        match self {
            Separator::Tab => line.split('\t').map(str::trim).collect(),
            Separator::Comma => line.split(',').map(str::trim).collect(),
            Separator::Whitespace => line.split_whitespace().collect(),
        }
    }
}

/// Nonblank, non-comment lines with their 1-based line numbers. CRLF is
/// accepted.
fn records(reader: impl BufRead) -> impl Iterator<Item = Result<(usize, String)>> {
    reader.lines().enumerate().filter_map(|(i, line)| match line {
        Err(e) => Some(Err(Error::Io(e))),
        Ok(mut text) => {
            if text.ends_with('\r') {
                text.pop();
            }
            let trimmed = text.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                None
            } else {
                Some(Ok((i + 1, text)))
            }
        }
    })
}

/// Opens `path` for reading; `-` is standard input.
pub fn open_input(path: &Path) -> Result<Box<dyn BufRead>> {
    if path.as_os_str() == "-" {
        Ok(Box::new(BufReader::new(io::stdin())))
    } else {
        Ok(Box::new(BufReader::new(File::open(path)?)))
    }
}

/// Parses a weighted edge list. Missing weights default to 1. A zero weight
/// is replaced by `epsilon` when given and is an error otherwise.
pub fn parse_edge_list(reader: impl BufRead, epsilon: Option<&Rational>) -> Result<LoadedGraph> {
    let mut ids = IdMap::default();
    let mut arrows = Vec::new();
    let mut weights = Vec::new();
    let mut layout: Option<(Separator, usize)> = None;
    for record in records(reader) {
        let (line, text) = record?;
        let (sep, width) = *layout.get_or_insert_with(|| {
            let sep = Separator::sniff(&text);
            (sep, sep.split(&text).len())
        });
        let fields = sep.split(&text);
        if fields.len() != width {
            return Err(Error::Parse {
                line,
                message: format!("expected {width} columns, found {}", fields.len()),
            });
        }
        if !(2..=3).contains(&width) {
            return Err(Error::Parse {
                line,
                message: format!("expected 2 or 3 columns, found {width}"),
            });
        }
        if fields[..2].iter().any(|f| f.is_empty()) {
            return Err(Error::Parse {
                line,
                message: "empty vertex id".into(),
            });
        }
        let weight = match fields.get(2) {
            None => Rational::one(),
            Some(text) => parse_rational(text).ok_or_else(|| Error::Parse {
                line,
                message: format!("invalid weight {text:?}"),
            })?,
        };
        let weight = if weight.is_zero() {
            epsilon.cloned().ok_or(Error::ZeroWeightInput { line })?
        } else {
            weight
        };
        let s = ids.intern(fields[0]);
        let t = ids.intern(fields[1]);
        arrows.push(Arrow::new(s, t));
        weights.push(weight);
    }
    let quiver = Quiver::new(ids.ids.len(), arrows)?;
    Ok(LoadedGraph {
        quiver: WeightedQuiver::new(quiver, weights)?,
        ids: ids.ids,
    })
}

pub fn load_weighted_edges(path: &Path, epsilon: Option<&Rational>) -> Result<LoadedGraph> {
    parse_edge_list(open_input(path)?, epsilon)
}

/// Writes `source,target,weight` lines with exact weight literals.
pub fn render_edge_list(graph: &LoadedGraph) -> String {
    let mut out = String::new();
    let q = graph.quiver.quiver();
    for (a, arrow) in q.arrows().iter().enumerate() {
        out.push_str(&format!(
            "{},{},{}\n",
            graph.ids[arrow.source],
            graph.ids[arrow.target],
            format_rational(graph.quiver.weight(a))
        ));
    }
    out
}

/// Binary attribute vectors keyed by vertex id.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AttributeTable {
    width: usize,
    rows: HashMap<String, Vec<bool>>,
}

impl AttributeTable {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, id: &str) -> Option<&[bool]> {
        self.rows.get(id).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Parses `id v1 v2 … vW` records with every `v` in `{0, 1}`. Fields may be
/// separated by tabs, commas or spaces; every record must have the same
/// width.
pub fn parse_attributes(reader: impl BufRead) -> Result<AttributeTable> {
    let mut table = AttributeTable::default();
    let mut width = None;
    for record in records(reader) {
        let (line, text) = record?;
        let fields: Vec<&str> = text
            .split(|c: char| c == '\t' || c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty())
            .collect();
        let (id, bits) = fields.split_first().expect("record is nonblank");
        let expected = *width.get_or_insert(bits.len());
        if bits.len() != expected {
            return Err(Error::Parse {
                line,
                message: format!("expected {expected} attribute values, found {}", bits.len()),
            });
        }
        let vector = bits
            .iter()
            .map(|b| match *b {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(Error::Parse {
                    line,
                    message: format!("attribute value {other:?} is not 0 or 1"),
                }),
            })
            .collect::<Result<Vec<bool>>>()?;
        if table.rows.insert(id.to_string(), vector).is_some() {
            return Err(Error::Parse {
                line,
                message: format!("duplicate vertex id {id:?}"),
            });
        }
    }
    table.width = width.unwrap_or(0);
    Ok(table)
}

pub fn load_attributes(path: &Path) -> Result<AttributeTable> {
    parse_attributes(open_input(path)?)
}

/// `1 - |A ∩ B| / |A ∪ B|` over the supports; 0 when both are empty.
pub fn jaccard_distance(a: &[bool], b: &[bool]) -> Rational {
    let (mut both, mut either) = (0u64, 0u64);
    for (&x, &y) in a.iter().zip(b) {
        both += u64::from(x && y);
        either += u64::from(x || y);
    }
    if either == 0 {
        return Rational::zero();
    }
    Rational::one() - Rational::new(both.into(), either.into())
}

/// Weights every arrow by the Jaccard distance between its endpoints'
/// attribute vectors. Zero distances become `epsilon` when supplied.
pub fn jaccard_weights(
    q: &Quiver,
    ids: &[String],
    attrs: &AttributeTable,
    epsilon: Option<&Rational>,
) -> Result<WeightedQuiver> {
    let lookup = |v: usize| {
        attrs
            .get(&ids[v])
            .ok_or_else(|| Error::MissingAttributes(ids[v].clone()))
    };
    let weights = q
        .arrows()
        .iter()
        .map(|arrow| {
            let d = jaccard_distance(lookup(arrow.source)?, lookup(arrow.target)?);
            if !d.is_zero() {
                return Ok(d);
            }
            epsilon.cloned().ok_or_else(|| Error::ZeroJaccard {
                from: ids[arrow.source].clone(),
                to: ids[arrow.target].clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    WeightedQuiver::new(q.clone(), weights)
}

/// Reads integer pairs, one per line (tab, comma or whitespace separated).
pub fn parse_undirected_pairs(reader: impl BufRead) -> Result<Vec<(i64, i64)>> {
    let mut pairs = Vec::new();
    let mut sep = None;
    for record in records(reader) {
        let (line, text) = record?;
        let fields = sep.get_or_insert_with(|| Separator::sniff(&text)).split(&text);
        if fields.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected 2 columns, found {}", fields.len()),
            });
        }
        let parse = |f: &str| {
            f.parse::<i64>().map_err(|_| Error::Parse {
                line,
                message: format!("vertex id {f:?} is not an integer"),
            })
        };
        pairs.push((parse(fields[0])?, parse(fields[1])?));
    }
    Ok(pairs)
}

/// Orients each pair from the smaller to the larger id, weighted by their
/// difference. Vertices are indexed in first-seen order.
pub fn orient_undirected(pairs: &[(i64, i64)]) -> Result<LoadedGraph> {
    let mut ids = IdMap::default();
    let mut arrows = Vec::with_capacity(pairs.len());
    let mut weights = Vec::with_capacity(pairs.len());
    for &(u, v) in pairs {
        if u == v {
            return Err(Error::SelfPair(u));
        }
        let a = ids.intern(&u.to_string());
        let b = ids.intern(&v.to_string());
        let (from, to) = if u < v { (a, b) } else { (b, a) };
        arrows.push(Arrow::new(from, to));
        weights.push(Rational::from_integer((u.abs_diff(v)).into()));
    }
    let quiver = Quiver::new(ids.ids.len(), arrows)?;
    Ok(LoadedGraph {
        quiver: WeightedQuiver::new(quiver, weights)?,
        ids: ids.ids,
    })
}

/// Graphviz rendering with weights as edge labels.
pub fn to_dot(wq: &WeightedQuiver, ids: &[String]) -> String {
    let mut out = String::from("digraph quiver {\n");
    for id in ids.iter().take(wq.quiver().vertex_count()) {
        out.push_str(&format!("  \"{}\";\n", id.replace('"', "\\\"")));
    }
    for (a, arrow) in wq.quiver().arrows().iter().enumerate() {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
            ids[arrow.source].replace('"', "\\\""),
            ids[arrow.target].replace('"', "\\\""),
            format_rational(wq.weight(a))
        ));
    }
    out.push_str("}\n");
    out
}

/// Output encoding for feature matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeatureFormat {
    Csv,
    Json,
}

/// Run settings echoed into JSON output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureFileConfig {
    pub hops: usize,
    pub seed: u64,
    pub field_mode: String,
    pub tolerance: Option<f64>,
    pub tool_version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct JsonRow {
    vertex: String,
    features: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct JsonDocument {
    config: FeatureFileConfig,
    rows: Vec<JsonRow>,
}

/// A feature matrix as read back from disk.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureFile {
    pub ids: Vec<String>,
    pub rows: Vec<Vec<u64>>,
    /// Present for JSON input only.
    pub config: Option<FeatureFileConfig>,
}

impl FeatureFile {
    pub fn flattened(&self) -> impl Iterator<Item = u64> + '_ {
        self.rows.iter().flatten().copied()
    }
}

fn check_ids(fm: &FeatureMatrix, ids: &[String]) -> Result<()> {
    if ids.len() != fm.rows() {
        return Err(Error::Dimension(format!(
            "{} vertex ids for {} feature rows",
            ids.len(),
            fm.rows()
        )));
    }
    Ok(())
}

/// Renders `vertex,h1,…,hH` followed by one row per vertex.
pub fn render_feature_csv(fm: &FeatureMatrix, ids: &[String]) -> Result<String> {
    check_ids(fm, ids)?;
    let mut writer = csv::WriterBuilder::new().from_writer(Vec::new());
    let mut header = vec!["vertex".to_string()];
    header.extend((1..=fm.hops()).map(|k| format!("h{k}")));
    writer.write_record(&header)?;
    for (i, id) in ids.iter().enumerate() {
        let mut record = vec![id.clone()];
        record.extend(fm.row(i).iter().map(u64::to_string));
        writer.write_record(&record)?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn render_feature_json(fm: &FeatureMatrix, ids: &[String]) -> Result<String> {
    check_ids(fm, ids)?;
    let doc = JsonDocument {
        config: FeatureFileConfig {
            hops: fm.hops(),
            seed: fm.seed(),
            field_mode: fm.field_mode().to_string(),
            tolerance: fm.tolerance(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        },
        rows: ids
            .iter()
            .enumerate()
            .map(|(i, id)| JsonRow {
                vertex: id.clone(),
                features: fm.row(i).to_vec(),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    Ok(text)
}

pub fn render_feature_matrix(fm: &FeatureMatrix, ids: &[String], format: FeatureFormat) -> Result<String> {
    match format {
        FeatureFormat::Csv => render_feature_csv(fm, ids),
        FeatureFormat::Json => render_feature_json(fm, ids),
    }
}

/// Replaces `path` atomically (temporary file in the same directory, then
/// rename). `-` writes to standard output.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    if path.as_os_str() == "-" {
        let mut stdout = io::stdout().lock();
        stdout.write_all(contents)?;
        stdout.flush()?;
        return Ok(());
    }
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

pub fn write_feature_matrix(fm: &FeatureMatrix, ids: &[String], path: &Path, format: FeatureFormat) -> Result<()> {
    write_atomic(path, render_feature_matrix(fm, ids, format)?.as_bytes())
}

/// Parses either output format; JSON is recognised by a leading `{`.
pub fn parse_feature_file(text: &str) -> Result<FeatureFile> {
    if text.trim_start().starts_with('{') {
        let doc: JsonDocument = serde_json::from_str(text)?;
        return Ok(FeatureFile {
            ids: doc.rows.iter().map(|r| r.vertex.clone()).collect(),
            rows: doc.rows.into_iter().map(|r| r.features).collect(),
            config: Some(doc.config),
        });
    }
    let mut reader = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let hops = reader.headers()?.len().saturating_sub(1);
    let mut ids = Vec::new();
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let line = i + 2;
        ids.push(record.get(0).unwrap_or_default().to_string());
        let row = record
            .iter()
            .skip(1)
            .map(|x| {
                x.parse::<u64>().map_err(|_| Error::Parse {
                    line,
                    message: format!("feature value {x:?} is not a nonnegative integer"),
                })
            })
            .collect::<Result<Vec<u64>>>()?;
        if row.len() != hops {
            return Err(Error::Parse {
                line,
                message: format!("expected {hops} feature values, found {}", row.len()),
            });
        }
        rows.push(row);
    }
    Ok(FeatureFile { ids, rows, config: None })
}

pub fn read_feature_file(path: &Path) -> Result<FeatureFile> {
    let mut text = String::new();
    open_input(path)?.read_to_string(&mut text)?;
    parse_feature_file(&text)
}
