//! Synthetic 2-D geography: node positions, headquarters, and the
//! nearest-HQ distances that drive the spatial cost objective.
//!
//! Coordinates are snapped to a 1e-6 grid when generated so the fixed
//! 6-decimal file format reproduces them exactly.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{NodeId, WeightedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BBox {
    pub width: f64,
    pub height: f64,
}

impl Default for BBox {
    fn default() -> Self {
        Self {
            width: 1000.0,
            height: 1000.0,
        }
    }
}

impl BBox {
    pub fn contains(&self, p: Point) -> bool {
        (0.0..=self.width).contains(&p.x) && (0.0..=self.height).contains(&p.y)
    }

    /// Parses `WIDTHxHEIGHT`.
    pub fn parse(s: &str) -> Result<Self> {
        let (w, h) = s
            .split_once(['x', 'X'])
            .ok_or_else(|| Error::Config(format!("bbox '{s}' is not WIDTHxHEIGHT")))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("bbox '{s}' is not WIDTHxHEIGHT")))
        };
        let bbox = BBox {
            width: parse(w)?,
            height: parse(h)?,
        };
        bbox.validate()?;
        Ok(bbox)
    }

    fn validate(&self) -> Result<()> {
        if self.width > 0.0 && self.height > 0.0 && self.width.is_finite() && self.height.is_finite()
        {
            Ok(())
        } else {
            Err(Error::Config(format!(
                "bbox dimensions must be positive, got {}x{}",
                self.width, self.height
            )))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpatialLayout {
    bbox: BBox,
    seed: u64,
    node_coords: Vec<Point>,
    hq_coords: Vec<Point>,
    nearest_hq: Vec<f64>,
    d_min: f64,
    d_max: f64,
}

fn snap(v: f64, hi: f64) -> f64 {
    ((v * 1e6).round() / 1e6).clamp(0.0, hi)
}

impl SpatialLayout {
    /// Uniform placement of `node_count` nodes, then `hq_count` HQs.
    ///
    /// Nodes are drawn before HQs, so two layouts with the same seed and
    /// different HQ counts share node positions and their common HQ prefix.
    pub fn generate(node_count: usize, bbox: BBox, hq_count: usize, seed: u64) -> Result<Self> {
        bbox.validate()?;
        if hq_count == 0 {
            return Err(Error::Config("hq_count must be at least 1".into()));
        }
        if node_count == 0 {
            return Err(Error::Config("layout needs at least one node".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let draw = |rng: &mut ChaCha8Rng| {
            let x = rng.random::<f64>() * bbox.width;
            let y = rng.random::<f64>() * bbox.height;
            Point::new(snap(x, bbox.width), snap(y, bbox.height))
        };
        let nodes: Vec<Point> = (0..node_count).map(|_| draw(&mut rng)).collect();
        let hqs: Vec<Point> = (0..hq_count).map(|_| draw(&mut rng)).collect();
        Self::from_coords(bbox, nodes, hqs, seed)
    }

    pub fn from_coords(bbox: BBox, nodes: Vec<Point>, hqs: Vec<Point>, seed: u64) -> Result<Self> {
        bbox.validate()?;
        if hqs.is_empty() {
            return Err(Error::Config("hq_count must be at least 1".into()));
        }
        if nodes.is_empty() {
            return Err(Error::Config("layout needs at least one node".into()));
        }
        if let Some(p) = nodes.iter().chain(&hqs).find(|p| !bbox.contains(**p)) {
            return Err(Error::Config(format!(
                "point ({}, {}) lies outside the {}x{} bbox",
                p.x, p.y, bbox.width, bbox.height
            )));
        }
        let nearest_hq: Vec<f64> = nodes
            .iter()
            .map(|&p| {
                hqs.iter()
                    .map(|&h| p.distance(h))
                    .fold(f64::INFINITY, f64::min)
            })
            .collect();
        let d_min = nearest_hq.iter().copied().fold(f64::INFINITY, f64::min);
        let d_max = nearest_hq.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(Self {
            bbox,
            seed,
            node_coords: nodes,
            hq_coords: hqs,
            nearest_hq,
            d_min,
            d_max,
        })
    }

    pub fn bbox(&self) -> BBox {
        self.bbox
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn node_count(&self) -> usize {
        self.node_coords.len()
    }

    pub fn node_coords(&self) -> &[Point] {
        &self.node_coords
    }

    pub fn hq_coords(&self) -> &[Point] {
        &self.hq_coords
    }

    pub fn d_min(&self) -> f64 {
        self.d_min
    }

    pub fn d_max(&self) -> f64 {
        self.d_max
    }

    pub fn nearest_hq_distance(&self, v: NodeId) -> Result<f64> {
        self.nearest_hq
            .get(v.0)
            .copied()
            .ok_or(Error::UnknownNode(v))
    }

    pub fn nearest_hq(&self) -> &[f64] {
        &self.nearest_hq
    }

    /// `(d_v - d_min) / (d_max - d_min)`, or 0 when every node is equidistant.
    pub fn normalized_distance(&self, v: NodeId) -> Result<f64> {
        let d = self.nearest_hq_distance(v)?;
        let span = self.d_max - self.d_min;
        Ok(if span > 0.0 {
            ((d - self.d_min) / span).clamp(0.0, 1.0)
        } else {
            0.0
        })
    }

    /// Checks that the layout covers exactly the graph's id space.
    pub fn bind(&self, g: &WeightedGraph) -> Result<()> {
        if self.node_count() != g.id_bound() {
            return Err(Error::LayoutBinding(format!(
                "layout has {} nodes but graph has {}",
                self.node_count(),
                g.id_bound()
            )));
        }
        Ok(())
    }

    pub fn write<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
        w.write_record(["meta", "width", "height", "seed", "hq_count", "node_count"])?;
        w.write_record([
            "meta".to_string(),
            format!("{:.6}", self.bbox.width),
            format!("{:.6}", self.bbox.height),
            self.seed.to_string(),
            self.hq_coords.len().to_string(),
            self.node_coords.len().to_string(),
        ])?;
        w.write_record(["node", "x", "y"])?;
        for (i, p) in self.node_coords.iter().enumerate() {
            w.write_record([i.to_string(), format!("{:.6}", p.x), format!("{:.6}", p.y)])?;
        }
        w.write_record(["hq", "x", "y"])?;
        for (i, p) in self.hq_coords.iter().enumerate() {
            w.write_record([i.to_string(), format!("{:.6}", p.x), format!("{:.6}", p.y)])?;
        }
        w.flush().map_err(|e| Error::io("<layout>", e))?;
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        self.write(file)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .from_reader(text.as_bytes());
        let mut rows = rdr.records().enumerate().map(|(i, r)| (i + 1, r));
        let mut next = |what: &str| -> Result<(usize, csv::StringRecord)> {
            match rows.next() {
                Some((line, rec)) => Ok((line, rec?)),
                None => Err(Error::parse(origin, 0, format!("truncated layout: missing {what}"))),
            }
        };
        let expect_header = |line: usize, rec: &csv::StringRecord, tag: &str| -> Result<()> {
            if rec.get(0) == Some(tag) {
                Ok(())
            } else {
                Err(Error::parse(origin, line, format!("expected '{tag}' header")))
            }
        };
        let (line, rec) = next("meta header")?;
        expect_header(line, &rec, "meta")?;
        let (line, meta) = next("meta row")?;
        let field = |rec: &csv::StringRecord, i: usize, name: &str, line: usize| {
            rec.get(i)
                .map(str::to_string)
                .ok_or_else(|| Error::parse(origin, line, format!("missing field '{name}'")))
        };
        let num = |s: String, name: &str, line: usize| -> Result<f64> {
            s.parse()
                .map_err(|_| Error::parse(origin, line, format!("field '{name}' is not a number")))
        };
        let int = |s: String, name: &str, line: usize| -> Result<u64> {
            s.parse()
                .map_err(|_| Error::parse(origin, line, format!("field '{name}' is not an integer")))
        };
        let width = num(field(&meta, 1, "width", line)?, "width", line)?;
        let height = num(field(&meta, 2, "height", line)?, "height", line)?;
        let seed = int(field(&meta, 3, "seed", line)?, "seed", line)?;
        let hq_count = int(field(&meta, 4, "hq_count", line)?, "hq_count", line)? as usize;
        let node_count = int(field(&meta, 5, "node_count", line)?, "node_count", line)? as usize;

        let mut section = |tag: &str, count: usize| -> Result<Vec<Point>> {
            let (line, rec) = next(&format!("{tag} header"))?;
            expect_header(line, &rec, tag)?;
            let mut pts = Vec::with_capacity(count);
            for expected in 0..count {
                let (line, rec) = next(&format!("{tag} {expected}"))?;
                let id = int(field(&rec, 0, tag, line)?, tag, line)? as usize;
                if id != expected {
                    return Err(Error::parse(
                        origin,
                        line,
                        format!("expected {tag} {expected}, found {id}"),
                    ));
                }
                let x = num(field(&rec, 1, "x", line)?, "x", line)?;
                let y = num(field(&rec, 2, "y", line)?, "y", line)?;
                pts.push(Point::new(x, y));
            }
            Ok(pts)
        };
        let nodes = section("node", node_count)?;
        let hqs = section("hq", hq_count)?;
        Self::from_coords(BBox { width, height }, nodes, hqs, seed)
    }
}
