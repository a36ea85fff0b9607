//! Analysis reports and the read-only verification checks attached to them.

use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::encoder::{Degree, GateString, PearlNecklace, Qubit};
use crate::gf2::{
    brute_force_min_memory, conv_matrix, default_margin, interior_equal, pearl_matrix, BruteForce,
    OracleError,
};
use crate::graph::{build_graph, CommutativityGraph};
use crate::longest_path::{
    assignment_from_weights, conv_encoder_gates, longest_path_weights, violated_constraint,
    FrameAssignment, LongestPaths,
};

/// Everything computed for one encoder.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub encoder: PearlNecklace,
    pub graph: CommutativityGraph,
    pub paths: LongestPaths,
    pub assignment: FrameAssignment,
}

impl Analysis {
    pub fn new(encoder: PearlNecklace) -> Self {
        let graph = build_graph(&encoder);
        let paths = longest_path_weights(&graph);
        let assignment = assignment_from_weights(&encoder, &paths);
        if let Some(c) = violated_constraint(&encoder, &assignment) {
            panic!("frame assignment violates {c:?}");
        }
        Self {
            encoder,
            graph,
            paths,
            assignment,
        }
    }

    pub fn memory(&self) -> i64 {
        self.assignment.memory
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub frames: usize,
    pub requested_frames: Option<usize>,
    pub margin: usize,
    pub interior_equal: bool,
    pub invertible: bool,
}

/// Compares the truncated pearl-necklace circuit with the repeated unitary of
/// the analysis' frame assignment.
///
/// With the default margin, a window too narrow to leave an interior is
/// widened to three margins and the requested size is kept in the result.
/// An explicit margin that does not fit is an error.
pub fn check_equivalence(
    analysis: &Analysis,
    frames: Option<usize>,
    margin: Option<usize>,
) -> Result<Equivalence, OracleError> {
    let enc = &analysis.encoder;
    let memory = analysis.memory();
    let (margin, window) = match margin {
        Some(m) => (m, frames.unwrap_or(3 * m.max(1))),
        None => {
            let m = default_margin(enc, memory);
            let w = match frames {
                Some(f) if f > 2 * m => f,
                _ => 3 * m,
            };
            (m, w)
        }
    };
    let gates = conv_encoder_gates(enc, &analysis.assignment);
    let pearl = pearl_matrix(enc, window);
    let conv = conv_matrix(enc, &gates, memory, window)?;
    let equal = interior_equal(&pearl, &conv, margin)?;
    Ok(Equivalence {
        frames: window,
        requested_frames: frames.filter(|&f| f != window),
        margin,
        interior_equal: equal,
        invertible: pearl.matrix().is_invertible() && conv.matrix().is_invertible(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BruteCheck {
    pub bound: i64,
    pub graph: i64,
    /// `None` when no feasible placement exists within the bound.
    pub brute: Option<i64>,
    pub ok: bool,
}

impl fmt::Display for BruteCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let brute = match self.brute {
            Some(b) => b.to_string(),
            None => format!("exceeds-bound({})", self.bound),
        };
        let verdict = if self.ok { "OK" } else { "MISMATCH" };
        write!(f, "graph={} brute={} {}", self.graph, brute, verdict)
    }
}

/// Exhaustive search with offsets up to `bound` (default: graph memory + 1).
pub fn check_brute_force(analysis: &Analysis, bound: Option<i64>) -> BruteCheck {
    let graph = analysis.memory();
    let bound = bound.unwrap_or(graph + 1);
    let brute = match brute_force_min_memory(&analysis.encoder, bound) {
        BruteForce::Minimum(m) => Some(m),
        BruteForce::ExceedsBound => None,
    };
    BruteCheck {
        bound,
        graph,
        brute,
        ok: brute == Some(graph),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Verification {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivalence: Option<Equivalence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_force: Option<BruteCheck>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.equivalence
            .as_ref()
            .is_none_or(|e| e.interior_equal && e.invertible)
            && self.brute_force.as_ref().is_none_or(|b| b.ok)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputEcho {
    pub frame_width: Qubit,
    pub strings: Vec<GateString>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GateRow {
    pub k: usize,
    pub a: Qubit,
    pub b: Qubit,
    pub l: Degree,
    pub sigma: i64,
    pub tau: i64,
    pub w: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathSummary {
    pub vertices: Vec<String>,
    pub weight: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub vertex_count: usize,
    pub edge_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub input: InputEcho,
    pub memory_frames: i64,
    pub memory_qubits: i64,
    pub gates: Vec<GateRow>,
    pub longest_path: PathSummary,
    pub graph: GraphStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
}

impl AnalysisReport {
    pub fn new(analysis: &Analysis, verification: Option<Verification>) -> Self {
        let enc = &analysis.encoder;
        let gates = enc
            .strings()
            .iter()
            .zip(&analysis.assignment.frames)
            .enumerate()
            .map(|(pos, (g, f))| GateRow {
                k: pos + 1,
                a: g.source(),
                b: g.target(),
                l: g.degree(),
                sigma: f.sigma,
                tau: f.tau,
                w: f.w,
            })
            .collect();
        let path = analysis.paths.path_to_end();
        Self {
            input: InputEcho {
                frame_width: enc.frame_width(),
                strings: enc.strings().to_vec(),
            },
            memory_frames: analysis.assignment.memory,
            memory_qubits: analysis.assignment.memory_qubits,
            gates,
            longest_path: PathSummary {
                vertices: path
                    .iter()
                    .map(|&v| analysis.graph.vertex_label(v))
                    .collect(),
                weight: analysis.paths.end_weight(),
            },
            graph: GraphStats {
                vertex_count: analysis.graph.vertex_count(),
                edge_count: analysis.graph.edges().len(),
            },
            verification,
        }
    }

    /// Pretty JSON with lexicographically sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        // serde_json::Value keeps object keys in a BTreeMap.
        let value = serde_json::to_value(self).expect("report is plain data");
        let mut out = serde_json::to_string_pretty(&value).expect("value serializes");
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "encoder: {} gate strings, {} qubits per frame",
            self.gates.len(),
            self.input.frame_width
        );
        let _ = writeln!(
            out,
            "minimal memory: {} frame{} ({} qubits)",
            self.memory_frames,
            if self.memory_frames == 1 { "" } else { "s" },
            self.memory_qubits
        );
        let _ = writeln!(
            out,
            "longest path: {} (weight {})",
            self.longest_path.vertices.join(" -> "),
            self.longest_path.weight
        );
        let _ = writeln!(
            out,
            "graph: {} vertices, {} edges",
            self.graph.vertex_count, self.graph.edge_count
        );
        if !self.gates.is_empty() {
            out.push('\n');
            let _ = writeln!(
                out,
                "{:>4}  {:<18} {:>5} {:>5} {:>5}",
                "k", "gate", "sigma", "tau", "w"
            );
            for (row, g) in self.gates.iter().zip(&self.input.strings) {
                let _ = writeln!(
                    out,
                    "{:>4}  {:<18} {:>5} {:>5} {:>5}",
                    row.k,
                    g.to_string(),
                    row.sigma,
                    row.tau,
                    row.w
                );
            }
        }
        if let Some(v) = &self.verification {
            out.push('\n');
            if let Some(e) = &v.equivalence {
                let _ = writeln!(out, "{}", equivalence_line(e));
            }
            if let Some(b) = &v.brute_force {
                let _ = writeln!(out, "{b}");
            }
        }
        out
    }
}

/// One-line summary of an equivalence check.
pub fn equivalence_line(e: &Equivalence) -> String {
    let mut line = format!(
        "interior_equal={} frames={} margin={} invertible={}",
        e.interior_equal, e.frames, e.margin, e.invertible
    );
    if let Some(req) = e.requested_frames {
        let _ = write!(line, " (window widened from {req})");
    }
    line
}
