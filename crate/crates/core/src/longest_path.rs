//! Longest START→vertex paths over the commutativity DAG and the frame
//! assignment they induce.
//!
//! For gate `k` the longest-path weight `w_k` is its target frame index when
//! `l_k >= 0` and its source frame index when `l_k < 0`; the weight of the
//! longest START→END path is the minimal memory in frames.

use serde::Serialize;

use crate::encoder::{constraint_set, PairConstraint, PearlNecklace, Qubit};
use crate::graph::{build_graph, CommutativityGraph};

/// Result of the dynamic program over a commutativity graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongestPaths {
    /// Best weight into every vertex, indexed by ordinal (START included).
    best: Vec<i64>,
    /// Maximizing predecessor of every vertex, `None` for START.
    pred: Vec<Option<usize>>,
    /// Number of vertices processed.
    pub vertices_visited: usize,
    /// Number of incoming-edge relaxations.
    pub relaxations: usize,
}

impl LongestPaths {
    /// `w_k` for gate `k = 1..=N`.
    pub fn gate_weights(&self) -> &[i64] {
        let n = self.best.len() - 2;
        &self.best[1..=n]
    }

    pub fn weight(&self, vertex: usize) -> i64 {
        self.best[vertex]
    }

    pub fn end_weight(&self) -> i64 {
        *self.best.last().expect("graph has START and END")
    }

    /// One maximizing START→END path as vertex ordinals. A graph without
    /// gates yields `[START, END]`.
    pub fn path_to_end(&self) -> Vec<usize> {
        let mut path = vec![self.best.len() - 1];
        let mut v = path[0];
        while let Some(p) = self.pred[v] {
            path.push(p);
            v = p;
        }
        if v != 0 {
            path.push(0);
        }
        path.reverse();
        path
    }
}

/// Single pass in ascending ordinal order, relaxing incoming edges. Ties keep
/// the lowest-ordinal predecessor.
pub fn longest_path_weights(g: &CommutativityGraph) -> LongestPaths {
    let vertex_count = g.vertex_count();
    let edges = g.edges();

    // Incoming edges grouped by head, each group ordered by tail.
    let mut offsets = vec![0usize; vertex_count + 1];
    for e in edges {
        offsets[e.to + 1] += 1;
    }
    for v in 0..vertex_count {
        offsets[v + 1] += offsets[v];
    }
    let mut fill = offsets.clone();
    let mut incoming = vec![0usize; edges.len()];
    for (idx, e) in edges.iter().enumerate() {
        incoming[fill[e.to]] = idx;
        fill[e.to] += 1;
    }

    let mut best = vec![i64::MIN; vertex_count];
    let mut pred = vec![None; vertex_count];
    best[0] = 0;
    let mut relaxations = 0;
    let mut vertices_visited = 1;
    for v in 1..vertex_count {
        vertices_visited += 1;
        for &idx in &incoming[offsets[v]..offsets[v + 1]] {
            relaxations += 1;
            let e = &edges[idx];
            if best[e.from] == i64::MIN {
                continue;
            }
            let cand = best[e.from] + e.weight;
            if cand > best[v] {
                best[v] = cand;
                pred[v] = Some(e.from);
            }
        }
        // Only reachable for hand-built graphs without the END fan-in.
        if best[v] == i64::MIN && v == vertex_count - 1 {
            best[v] = 0;
        }
    }

    LongestPaths {
        best,
        pred,
        vertices_visited,
        relaxations,
    }
}

/// Minimal memory, in frames, over all convolutional realizations.
pub fn minimal_memory(enc: &PearlNecklace) -> i64 {
    longest_path_weights(&build_graph(enc)).end_weight()
}

/// Frame indices of one gate in the repeated unitary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GateFrames {
    pub sigma: i64,
    pub tau: i64,
    /// Longest-path weight into the gate's vertex.
    pub w: i64,
}

/// A minimal-memory placement of every gate string's representative gate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameAssignment {
    pub frames: Vec<GateFrames>,
    pub memory: i64,
    pub memory_qubits: i64,
}

impl FrameAssignment {
    pub fn sigma(&self) -> Vec<i64> {
        self.frames.iter().map(|f| f.sigma).collect()
    }

    pub fn tau(&self) -> Vec<i64> {
        self.frames.iter().map(|f| f.tau).collect()
    }

    pub fn pairs(&self) -> Vec<(i64, i64)> {
        self.frames.iter().map(|f| (f.sigma, f.tau)).collect()
    }
}

/// Converts longest-path weights into `(sigma, tau)` per gate.
pub fn assignment_from_weights(enc: &PearlNecklace, paths: &LongestPaths) -> FrameAssignment {
    let frames: Vec<GateFrames> = enc
        .strings()
        .iter()
        .zip(paths.gate_weights())
        .map(|(g, &w)| {
            if g.is_non_negative() {
                GateFrames {
                    sigma: w + g.degree(),
                    tau: w,
                    w,
                }
            } else {
                GateFrames {
                    sigma: w,
                    tau: w + g.abs_degree(),
                    w,
                }
            }
        })
        .collect();
    let memory = paths.end_weight();
    FrameAssignment {
        frames,
        memory,
        memory_qubits: memory * i64::from(enc.frame_width()),
    }
}

/// First ordering constraint of `enc` that `fa` breaks, if any.
pub fn violated_constraint(enc: &PearlNecklace, fa: &FrameAssignment) -> Option<PairConstraint> {
    let pairs = fa.pairs();
    constraint_set(enc).into_iter().find(|c| !c.holds(&pairs))
}

/// Minimal-memory frame assignment. Panics if the result violates one of the
/// encoder's ordering constraints, which would indicate a construction bug.
pub fn frame_assignment(enc: &PearlNecklace) -> FrameAssignment {
    let fa = assignment_from_weights(enc, &longest_path_weights(&build_graph(enc)));
    if let Some(c) = violated_constraint(enc, &fa) {
        panic!("frame assignment violates {c:?}");
    }
    debug_assert_eq!(
        fa.memory,
        fa.frames
            .iter()
            .map(|f| f.sigma.max(f.tau))
            .max()
            .unwrap_or(0)
    );
    fa
}

/// Gate `CNOT(a,b)(sigma,tau)` of the repeated unitary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConvGate {
    pub source: Qubit,
    pub target: Qubit,
    pub sigma: i64,
    pub tau: i64,
}

/// Gate list of one application of the convolutional unitary, in gate-string
/// order.
pub fn conv_encoder_gates(enc: &PearlNecklace, fa: &FrameAssignment) -> Vec<ConvGate> {
    enc.strings()
        .iter()
        .zip(&fa.frames)
        .map(|(g, f)| ConvGate {
            source: g.source(),
            target: g.target(),
            sigma: f.sigma,
            tau: f.tau,
        })
        .collect()
}
