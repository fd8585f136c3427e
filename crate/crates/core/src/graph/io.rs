//! Edge-list ingestion and the canonical graph file.
//!
//! Edge lists carry one `source, target, weight` row per interaction,
//! comma- or whitespace-separated, with an optional header row. Labels are
//! mapped onto dense ids (numeric order when every label is an integer,
//! lexicographic otherwise). Repeated pairs are merged by summing weights.
//!
//! The canonical file is a sectioned CSV:
//!
//! ```text
//! nodes,3
//! id,label,role
//! 0,a,
//! ...
//! edges,2
//! source,target,weight
//! 0,1,2
//! ...
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use log::warn;
use serde::{Deserialize, Serialize};

use super::{NodeMeta, WeightedGraph};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeListFormat {
    /// Comma if the first data line has one, whitespace otherwise.
    #[default]
    Auto,
    Csv,
    Whitespace,
}

impl FromStr for EdgeListFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "auto" => Ok(Self::Auto),
            "csv" => Ok(Self::Csv),
            "whitespace" | "ws" | "tsv" | "space" => Ok(Self::Whitespace),
            other => Err(Error::Config(format!("unknown edge-list format '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Ingested {
    pub graph: WeightedGraph,
    pub merged_duplicates: usize,
    pub dropped_self_loops: usize,
}

fn split_fields(line: &str, format: EdgeListFormat) -> Result<Vec<String>> {
    match format {
        EdgeListFormat::Whitespace => Ok(line.split_whitespace().map(str::to_string).collect()),
        _ => {
            let mut rdr = csv::ReaderBuilder::new()
                .has_headers(false)
                .flexible(true)
                .trim(csv::Trim::All)
                .from_reader(line.as_bytes());
            let mut out = Vec::new();
            if let Some(rec) = rdr.records().next() {
                out.extend(rec?.iter().map(str::to_string));
            }
            Ok(out)
        }
    }
}

/// Orders labels numerically when all parse as integers.
fn label_order(labels: &mut [String]) {
    let numeric: Option<Vec<i64>> = labels.iter().map(|l| l.parse().ok()).collect();
    if numeric.is_some() {
        labels.sort_by_key(|l| l.parse::<i64>().unwrap_or_default());
    } else {
        labels.sort();
    }
}

pub fn parse_edge_list(
    text: &str,
    format: EdgeListFormat,
    origin: &Path,
) -> Result<Ingested> {
    let mut format = format;
    let mut weights: BTreeMap<(String, String), f64> = BTreeMap::new();
    let mut merged = 0;
    let mut self_loops = 0;
    let mut seen_data = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if format == EdgeListFormat::Auto {
            format = if line.contains(',') {
                EdgeListFormat::Csv
            } else {
                EdgeListFormat::Whitespace
            };
        }
        let fields = split_fields(line, format)?;
        if fields.len() < 3 {
            return Err(Error::parse(
                origin,
                line_no,
                format!("expected source, target, weight; got {} field(s)", fields.len()),
            ));
        }
        let weight = match fields[2].parse::<f64>() {
            Ok(w) => w,
            Err(_) if !seen_data => {
                // header row
                seen_data = true;
                continue;
            }
            Err(_) => {
                return Err(Error::parse(
                    origin,
                    line_no,
                    format!("weight '{}' is not a number", fields[2]),
                ))
            }
        };
        seen_data = true;
        if !(weight.is_finite() && weight > 0.0) {
            return Err(Error::parse(
                origin,
                line_no,
                format!("weight must be positive, got {weight}"),
            ));
        }
        let (a, b) = (fields[0].clone(), fields[1].clone());
        if a.is_empty() || b.is_empty() {
            return Err(Error::parse(origin, line_no, "empty node label"));
        }
        if a == b {
            warn!("{}: line {line_no}: dropping self-loop on '{a}'", origin.display());
            self_loops += 1;
            continue;
        }
        let key = if a <= b { (a, b) } else { (b, a) };
        if let Some(w) = weights.get_mut(&key) {
            warn!(
                "{}: line {line_no}: duplicate edge ({}, {}) merged",
                origin.display(),
                key.0,
                key.1
            );
            *w += weight;
            merged += 1;
        } else {
            weights.insert(key, weight);
        }
    }
    if weights.is_empty() {
        return Err(Error::parse(origin, 0, "edge list contains no edges"));
    }
    let mut labels: Vec<String> = weights
        .keys()
        .flat_map(|(a, b)| [a.clone(), b.clone()])
        .collect();
    labels.sort();
    labels.dedup();
    label_order(&mut labels);
    let index: HashMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let mut edges: Vec<(usize, usize, f64)> = weights
        .iter()
        .map(|((a, b), &w)| {
            let (u, v) = (index[a.as_str()], index[b.as_str()]);
            (u.min(v), u.max(v), w)
        })
        .collect();
    edges.sort_by_key(|e| (e.0, e.1));
    let meta = labels.iter().map(NodeMeta::labeled).collect();
    let graph = WeightedGraph::new(meta, edges)?;
    Ok(Ingested {
        graph,
        merged_duplicates: merged,
        dropped_self_loops: self_loops,
    })
}

pub fn read_edge_list(path: &Path, format: EdgeListFormat) -> Result<Ingested> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(&text, format, path)
}

pub fn write_graph<W: Write>(g: &WeightedGraph, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
    w.write_record(["nodes", &g.node_count().to_string()])?;
    w.write_record(["id", "label", "role"])?;
    for v in g.nodes() {
        let role = g.meta(v).and_then(|m| m.role.clone()).unwrap_or_default();
        w.write_record([v.to_string(), g.label(v), role])?;
    }
    w.write_record(["edges", &g.edge_count().to_string()])?;
    w.write_record(["source", "target", "weight"])?;
    for (u, v, wt) in g.edges() {
        w.write_record([u.to_string(), v.to_string(), wt.to_string()])?;
    }
    w.flush().map_err(|e| Error::io("<graph>", e))?;
    Ok(())
}

pub fn save_graph(g: &WeightedGraph, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_graph(g, file)
}

/// Reads a file written by [`save_graph`]. Only graphs with a contiguous
/// id space can be stored, so every id in `0..nodes` must be listed.
pub fn load_graph(path: &Path) -> Result<WeightedGraph> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(BufReader::new(file));
    let mut records = rdr.records().enumerate().map(|(i, r)| (i + 1, r));
    let mut next = |what: &str| -> Result<(usize, csv::StringRecord)> {
        match records.next() {
            Some((line, rec)) => Ok((line, rec?)),
            None => Err(Error::parse(path, 0, format!("truncated file: missing {what}"))),
        }
    };
    let count = |line: usize, rec: &csv::StringRecord, tag: &str| -> Result<usize> {
        if rec.get(0) != Some(tag) {
            return Err(Error::parse(path, line, format!("expected '{tag},<count>'")));
        }
        rec.get(1)
            .and_then(|c| c.parse().ok())
            .ok_or_else(|| Error::parse(path, line, format!("bad {tag} count")))
    };
    let (line, rec) = next("node section")?;
    let n = count(line, &rec, "nodes")?;
    next("node header")?;
    let mut meta = vec![None; n];
    for _ in 0..n {
        let (line, rec) = next("node row")?;
        let id: usize = rec
            .get(0)
            .and_then(|s| s.parse().ok())
            .filter(|&id| id < n)
            .ok_or_else(|| Error::parse(path, line, "node id missing or out of range"))?;
        let label = rec.get(1).unwrap_or_default().to_string();
        let role = rec.get(2).filter(|r| !r.is_empty()).map(str::to_string);
        meta[id] = Some(NodeMeta { label, role });
    }
    let meta: Vec<NodeMeta> = meta
        .into_iter()
        .enumerate()
        .map(|(i, m)| m.ok_or_else(|| Error::parse(path, 0, format!("node {i} missing"))))
        .collect::<Result<_>>()?;
    let (line, rec) = next("edge section")?;
    let m = count(line, &rec, "edges")?;
    next("edge header")?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, rec) = next("edge row")?;
        let field = |i: usize| rec.get(i).unwrap_or_default();
        let parsed = (
            field(0).parse::<usize>(),
            field(1).parse::<usize>(),
            field(2).parse::<f64>(),
        );
        match parsed {
            (Ok(u), Ok(v), Ok(w)) => edges.push((u, v, w)),
            _ => return Err(Error::parse(path, line, "malformed edge row")),
        }
    }
    WeightedGraph::new(meta, edges)
}

/// True when `path` looks like a canonical graph file.
pub fn is_canonical(path: &Path) -> Result<bool> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut first = String::new();
    for line in BufReader::new(file).lines() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if !line.trim().is_empty() {
            first = line;
            break;
        }
    }
    Ok(first.starts_with("nodes,"))
}

/// Loads either a canonical graph file or a raw edge list.
pub fn load_any(path: &Path, format: EdgeListFormat) -> Result<WeightedGraph> {
    if is_canonical(path)? {
        load_graph(path)
    } else {
        Ok(read_edge_list(path, format)?.graph)
    }
}

/// `label,role` rows, header optional.
pub fn read_roles(path: &Path) -> Result<Vec<(String, String)>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file);
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        match (rec.get(0), rec.get(1)) {
            (Some("label"), Some("role")) if i == 0 => {}
            (Some(l), Some(r)) => out.push((l.to_string(), r.to_string())),
            _ => return Err(Error::parse(path, i + 1, "expected label,role")),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NodeId;

    fn parse(text: &str) -> Result<Ingested> {
        parse_edge_list(text, EdgeListFormat::Auto, Path::new("mem"))
    }

    #[test]
    fn csv_with_header_and_duplicates() {
        let ing = parse("source,target,weight\n10,2,1\n2,10,3\n2,5,1\n").unwrap();
        let g = &ing.graph;
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(ing.merged_duplicates, 1);
        // numeric label order: 2, 5, 10
        assert_eq!(g.labels(), vec!["2", "5", "10"]);
        let merged = g
            .neighbors(NodeId(0))
            .iter()
            .find(|(v, _)| *v == NodeId(2))
            .unwrap()
            .1;
        assert_eq!(merged, 4.0);
    }

    #[test]
    fn whitespace_variant() {
        let ing = parse("a b 1\nb   c\t2\n").unwrap();
        assert_eq!(ing.graph.node_count(), 3);
        assert_eq!(ing.graph.label(NodeId(2)), "c");
    }

    #[test]
    fn malformed_row_reports_line() {
        let err = parse("1,2,1\n2,3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse("1,2,1\n2,3,x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(parse("1,2,-1\n").is_err());
    }

    #[test]
    fn empty_input_rejected() {
        assert!(parse("").is_err());
        assert!(parse("source,target,weight\n").is_err());
    }

    #[test]
    fn self_loops_dropped() {
        let ing = parse("1,1,3\n1,2,1\n").unwrap();
        assert_eq!(ing.dropped_self_loops, 1);
        assert_eq!(ing.graph.edge_count(), 1);
    }

    #[test]
    fn canonical_round_trip() {
        let mut g = parse("x,y,1.5\ny,z,2\n").unwrap().graph;
        g.set_roles([("y", "boss, family")]);
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("g.csv");
        save_graph(&g, &p).unwrap();
        assert!(is_canonical(&p).unwrap());
        assert_eq!(load_graph(&p).unwrap(), g);
        assert_eq!(load_any(&p, EdgeListFormat::Auto).unwrap(), g);
    }

    #[test]
    fn truncated_canonical_file() {
        let g = parse("x,y,1\ny,z,2\n").unwrap().graph;
        let mut buf = Vec::new();
        write_graph(&g, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let cut: String = text.lines().take(7).collect::<Vec<_>>().join("\n");
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("g.csv");
        std::fs::write(&p, cut).unwrap();
        assert!(matches!(load_graph(&p), Err(Error::Parse { .. })));
    }
}
