//! Whitespace-separated edge lists, as distributed by network repositories.
//!
//! Each data line is `u v [w ...]`. Lines starting with `%` or `#` are
//! comments, so repository headers such as `% sym unweighted` pass
//! through. Columns after the weight (timestamps, in some dumps) are
//! ignored. Ids are 1-based when the smallest id is at least 1 and 0-based
//! otherwise. Edges are undirected: `u v` and `v u` are the same edge, and
//! repeated edges keep the largest weight. Self-loops are skipped.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use drmax_core::objectives::WeightedGraph;

use crate::error::{BenchError, Result};

/// A parsed edge list with 0-based, contiguous vertex ids.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeList {
    pub vertex_count: usize,
    /// `(u, v, w)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize, f64)>,
    pub self_loops_skipped: usize,
}

impl EdgeList {
    pub fn into_graph(self) -> Result<WeightedGraph> {
        Ok(WeightedGraph::undirected(self.vertex_count, &self.edges)?)
    }
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<WeightedGraph> {
    load_edge_list(path)?.into_graph()
}

pub fn load_edge_list(path: impl AsRef<Path>) -> Result<EdgeList> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| BenchError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_edge_list(&text)
}

pub fn parse_edge_list(text: &str) -> Result<EdgeList> {
    let mut raw: Vec<(u64, u64, f64)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') || trimmed.starts_with('#') {
            continue;
        }
        let err = |message: String| BenchError::Parse { line: line_no, message };
        let mut fields = trimmed.split_whitespace();
        let mut endpoint = |name: &str| -> Result<u64> {
            let tok = fields.next().ok_or_else(|| err(format!("missing {name} endpoint")))?;
            tok.parse::<u64>()
                .map_err(|_| err(format!("endpoint {tok:?} is not a non-negative integer")))
        };
        let u = endpoint("first")?;
        let v = endpoint("second")?;
        let w = match fields.next() {
            None => 1.0,
            Some(tok) => {
                let w: f64 = tok
                    .parse()
                    .map_err(|_| err(format!("weight {tok:?} is not a number")))?;
                if !w.is_finite() || w < 0.0 {
                    return Err(err(format!("weight {w} must be finite and non-negative")));
                }
                w
            }
        };
        raw.push((u, v, w));
    }
    if raw.is_empty() {
        return Err(BenchError::Parse {
            line: text.lines().count(),
            message: "no edges found".into(),
        });
    }

    let min_id = raw.iter().map(|&(u, v, _)| u.min(v)).min().unwrap_or(0);
    let base = if min_id >= 1 { 1 } else { 0 };
    let max_id = raw.iter().map(|&(u, v, _)| u.max(v)).max().unwrap_or(0);
    let vertex_count =
        usize::try_from(max_id - base + 1).map_err(|_| BenchError::Config(format!("vertex id {max_id} too large")))?;

    let mut merged: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut self_loops_skipped = 0;
    for (u, v, w) in raw {
        let (u, v) = ((u - base) as usize, (v - base) as usize);
        if u == v {
            self_loops_skipped += 1;
            continue;
        }
        let slot = merged.entry((u.min(v), u.max(v))).or_insert(w);
        *slot = slot.max(w);
    }
    Ok(EdgeList {
        vertex_count,
        edges: merged.into_iter().map(|((u, v), w)| (u, v, w)).collect(),
        self_loops_skipped,
    })
}
