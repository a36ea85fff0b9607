//! Weighted commutativity DAG over the gate strings of an encoder.
//!
//! Vertex ordinals are `0` for START, `k` for gate string `k` (1-based) and
//! `N + 1` for END. Every edge strictly increases the ordinal, so ascending
//! ordinal order is a topological order.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::encoder::{source_target, target_source, ConstraintKind, PearlNecklace};

/// Which construction produced a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// All degrees non-negative, one edge per pair with source-target priority.
    Positive,
    /// All degrees non-positive, one edge per pair with target-source priority.
    Negative,
    /// Arbitrary signs.
    Mixed,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Positive => "positive",
            Mode::Negative => "negative",
            Mode::Mixed => "mixed",
        })
    }
}

/// Why an edge exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeOrigin {
    Start,
    Pair(ConstraintKind),
    End,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub weight: i64,
    pub origin: EdgeOrigin,
}

impl Edge {
    fn sort_key(&self) -> (usize, usize, i64, EdgeOrigin) {
        (self.from, self.to, self.weight, self.origin)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("gate string {index} has degree {degree}, not allowed by the {mode} construction")]
    WrongSign {
        index: usize,
        degree: i64,
        mode: Mode,
    },
    #[error(
        "edge {from} -> {to} does not increase the vertex ordinal (vertex count {vertex_count})"
    )]
    NotForward {
        from: usize,
        to: usize,
        vertex_count: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutativityGraph {
    gate_count: usize,
    edges: Vec<Edge>,
    mode: Mode,
    pair_inspections: u64,
}

impl CommutativityGraph {
    /// Builds a graph from explicit edges. Edges must go from a lower to a
    /// strictly higher ordinal in `0..=gate_count + 1`.
    pub fn from_edges(
        gate_count: usize,
        mut edges: Vec<Edge>,
        mode: Mode,
    ) -> Result<Self, GraphError> {
        let vertex_count = gate_count + 2;
        for e in &edges {
            if e.from >= e.to || e.to >= vertex_count {
                return Err(GraphError::NotForward {
                    from: e.from,
                    to: e.to,
                    vertex_count,
                });
            }
        }
        edges.sort_unstable_by_key(Edge::sort_key);
        Ok(Self {
            gate_count,
            edges,
            mode,
            pair_inspections: 0,
        })
    }

    pub fn gate_count(&self) -> usize {
        self.gate_count
    }

    pub fn vertex_count(&self) -> usize {
        self.gate_count + 2
    }

    pub fn start(&self) -> usize {
        0
    }

    pub fn end(&self) -> usize {
        self.gate_count + 1
    }

    /// Edges sorted by `(from, to, weight)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Number of gate-pair checks the construction performed.
    pub fn pair_inspections(&self) -> u64 {
        self.pair_inspections
    }

    pub fn gate_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges
            .iter()
            .filter(|e| matches!(e.origin, EdgeOrigin::Pair(_)))
    }

    pub fn vertex_label(&self, v: usize) -> String {
        if v == self.start() {
            "START".to_string()
        } else if v == self.end() {
            "END".to_string()
        } else {
            v.to_string()
        }
    }
}

fn pair(from: usize, to: usize, weight: i64, kind: ConstraintKind) -> Edge {
    Edge {
        from,
        to,
        weight,
        origin: EdgeOrigin::Pair(kind),
    }
}

/// Shared skeleton of all three constructions: START and END edges plus one
/// call of `pair_edges(i, j, out)` for every `i < j`.
fn construct<F>(enc: &PearlNecklace, mode: Mode, mut pair_edges: F) -> CommutativityGraph
where
    F: FnMut(usize, usize, &mut Vec<Edge>),
{
    let n = enc.len();
    let end = n + 1;
    let mut edges = Vec::with_capacity(2 * n);
    let mut pair_inspections = 0u64;
    for j in 1..=n {
        edges.push(Edge {
            from: 0,
            to: j,
            weight: 0,
            origin: EdgeOrigin::Start,
        });
        for i in 1..j {
            pair_inspections += 1;
            pair_edges(i, j, &mut edges);
        }
    }
    for j in 1..=n {
        edges.push(Edge {
            from: j,
            to: end,
            weight: enc.string(j).abs_degree(),
            origin: EdgeOrigin::End,
        });
    }
    edges.sort_unstable_by_key(Edge::sort_key);
    CommutativityGraph {
        gate_count: n,
        edges,
        mode,
        pair_inspections,
    }
}

/// Commutativity graph for arbitrary degree signs. Degree 0 is treated as
/// non-negative.
pub fn build_graph(enc: &PearlNecklace) -> CommutativityGraph {
    use ConstraintKind::*;
    construct(enc, Mode::Mixed, |i, j, out| {
        let (gi, gj) = (enc.string(i), enc.string(j));
        let st = source_target(gi, gj);
        let ts = target_source(gi, gj);
        let (li, lj) = (gi.degree(), gj.degree());
        match (gi.is_non_negative(), gj.is_non_negative()) {
            (true, true) => {
                if st {
                    out.push(pair(i, j, li, SourceTarget));
                } else if ts {
                    out.push(pair(i, j, -lj, TargetSource));
                }
            }
            (false, true) => {
                if st {
                    out.push(pair(i, j, 0, SourceTarget));
                }
                if ts {
                    out.push(pair(i, j, li.abs() - lj, TargetSource));
                }
            }
            (true, false) => {
                if st {
                    out.push(pair(i, j, li - lj.abs(), SourceTarget));
                }
                if ts {
                    out.push(pair(i, j, 0, TargetSource));
                }
            }
            (false, false) => {
                if ts {
                    out.push(pair(i, j, li.abs(), TargetSource));
                } else if st {
                    out.push(pair(i, j, -lj.abs(), SourceTarget));
                }
            }
        }
    })
}

/// Construction restricted to encoders whose degrees are all `>= 0`.
pub fn build_positive(enc: &PearlNecklace) -> Result<CommutativityGraph, GraphError> {
    if let Some((pos, g)) = enc
        .strings()
        .iter()
        .enumerate()
        .find(|(_, g)| g.degree() < 0)
    {
        return Err(GraphError::WrongSign {
            index: pos + 1,
            degree: g.degree(),
            mode: Mode::Positive,
        });
    }
    Ok(construct(enc, Mode::Positive, |i, j, out| {
        let (gi, gj) = (enc.string(i), enc.string(j));
        if source_target(gi, gj) {
            out.push(pair(i, j, gi.degree(), ConstraintKind::SourceTarget));
        } else if target_source(gi, gj) {
            out.push(pair(i, j, -gj.degree(), ConstraintKind::TargetSource));
        }
    }))
}

/// Construction restricted to encoders whose degrees are all `<= 0`.
pub fn build_negative(enc: &PearlNecklace) -> Result<CommutativityGraph, GraphError> {
    if let Some((pos, g)) = enc
        .strings()
        .iter()
        .enumerate()
        .find(|(_, g)| g.degree() > 0)
    {
        return Err(GraphError::WrongSign {
            index: pos + 1,
            degree: g.degree(),
            mode: Mode::Negative,
        });
    }
    Ok(construct(enc, Mode::Negative, |i, j, out| {
        let (gi, gj) = (enc.string(i), enc.string(j));
        if target_source(gi, gj) {
            out.push(pair(i, j, gi.abs_degree(), ConstraintKind::TargetSource));
        } else if source_target(gi, gj) {
            out.push(pair(i, j, -gj.abs_degree(), ConstraintKind::SourceTarget));
        }
    }))
}

/// Structural witness of the quadratic size bound: at most two edges per
/// gate pair and `N(N-1) + 2N` edges overall.
pub fn edge_count_bound_check(g: &CommutativityGraph, gate_count: usize) -> bool {
    let pairs = gate_count * gate_count.saturating_sub(1) / 2;
    let gate_edges = g.gate_edges().count();
    gate_edges <= 2 * pairs && g.edges().len() <= 2 * pairs + 2 * gate_count
}

/// Graphviz rendering. Output is fully determined by the graph and encoder.
pub fn to_dot(g: &CommutativityGraph, enc: &PearlNecklace) -> String {
    let mut out = String::new();
    out.push_str("digraph commutativity {\n");
    out.push_str("    rankdir=LR;\n");
    out.push_str("    START [label=\"START\", shape=box];\n");
    for (k, s) in enc.strings().iter().enumerate() {
        let _ = writeln!(out, "    {} [label=\"{}: {}\"];", k + 1, k + 1, s);
    }
    out.push_str("    END [label=\"END\", shape=box];\n");
    for e in g.edges() {
        let _ = writeln!(
            out,
            "    {} -> {} [label=\"{}\"];",
            g.vertex_label(e.from),
            g.vertex_label(e.to),
            e.weight
        );
    }
    out.push_str("}\n");
    out
}
