//! Gate strings, pearl-necklace encoders and the pairwise ordering
//! constraints that any convolutional realization has to respect.
//!
//! A gate string `CNOT(a,b)(D^l)` is an infinite repetition of one CNOT: for
//! every frame `s` it acts from qubit `a` of frame `s` to qubit `b` of frame
//! `s + l`. Qubit indices are 1-based within a frame.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Signed frame delay between the source and the target of a gate string.
pub type Degree = i64;

/// 1-based qubit index within a frame.
pub type Qubit = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("qubit indices are 1-based, got CNOT({a},{b})")]
    ZeroQubit { a: Qubit, b: Qubit },
    #[error("CNOT({qubit},{qubit})(1) acts on a single physical qubit")]
    SelfGate { qubit: Qubit },
    #[error("gate string {index} uses qubit {qubit} but a frame only has {frame_width} qubits")]
    QubitOutOfFrame {
        index: usize,
        qubit: Qubit,
        frame_width: Qubit,
    },
}

/// One repeated CNOT string `CNOT(source,target)(D^degree)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GateString {
    #[serde(rename = "a")]
    source: Qubit,
    #[serde(rename = "b")]
    target: Qubit,
    #[serde(rename = "l")]
    degree: Degree,
}

impl GateString {
    pub fn new(source: Qubit, target: Qubit, degree: Degree) -> Result<Self, ModelError> {
        if source == 0 || target == 0 {
            return Err(ModelError::ZeroQubit {
                a: source,
                b: target,
            });
        }
        if source == target && degree == 0 {
            return Err(ModelError::SelfGate { qubit: source });
        }
        Ok(Self {
            source,
            target,
            degree,
        })
    }

    pub fn source(&self) -> Qubit {
        self.source
    }

    pub fn target(&self) -> Qubit {
        self.target
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    /// Zero-degree strings are grouped with the positive ones.
    pub fn is_non_negative(&self) -> bool {
        self.degree >= 0
    }

    pub fn abs_degree(&self) -> Degree {
        self.degree.abs()
    }
}

/// Renders in the input syntax, e.g. `CNOT(2,3)(D^-2)`.
impl fmt::Display for GateString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CNOT({},{})(", self.source, self.target)?;
        match self.degree {
            0 => f.write_str("1")?,
            1 => f.write_str("D")?,
            l => write!(f, "D^{l}")?,
        }
        f.write_str(")")
    }
}

/// An ordered succession of gate strings acting on frames of
/// `frame_width` qubits.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PearlNecklace {
    strings: Vec<GateString>,
    frame_width: Qubit,
}

impl PearlNecklace {
    pub fn new(strings: Vec<GateString>, frame_width: Qubit) -> Result<Self, ModelError> {
        for (pos, g) in strings.iter().enumerate() {
            let widest = g.source.max(g.target);
            if widest > frame_width {
                return Err(ModelError::QubitOutOfFrame {
                    index: pos + 1,
                    qubit: widest,
                    frame_width,
                });
            }
        }
        Ok(Self {
            strings,
            frame_width,
        })
    }

    /// Uses the largest referenced qubit index as the frame width.
    pub fn with_inferred_width(strings: Vec<GateString>) -> Self {
        let frame_width = strings
            .iter()
            .map(|g| g.source.max(g.target))
            .max()
            .unwrap_or(0);
        Self {
            strings,
            frame_width,
        }
    }

    pub fn strings(&self) -> &[GateString] {
        &self.strings
    }

    pub fn frame_width(&self) -> Qubit {
        self.frame_width
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    /// Gate string by its 1-based position.
    pub fn string(&self, k: usize) -> &GateString {
        &self.strings[k - 1]
    }

    pub fn max_abs_degree(&self) -> Degree {
        self.strings
            .iter()
            .map(GateString::abs_degree)
            .max()
            .unwrap_or(0)
    }

    /// Returns a copy with `g` appended at the end of the succession.
    pub fn appended(&self, g: GateString) -> Result<Self, ModelError> {
        let mut strings = self.strings.clone();
        strings.push(g);
        Self::new(strings, self.frame_width)
    }
}

/// The earlier string's source is the later string's target.
pub fn source_target(first: &GateString, second: &GateString) -> bool {
    first.source == second.target
}

/// The earlier string's target is the later string's source.
pub fn target_source(first: &GateString, second: &GateString) -> bool {
    first.target == second.source
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ConstraintKind {
    /// `sigma_earlier <= tau_later`
    SourceTarget,
    /// `tau_earlier <= sigma_later`
    TargetSource,
}

impl fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstraintKind::SourceTarget => "ST",
            ConstraintKind::TargetSource => "TS",
        })
    }
}

/// An ordering requirement between gate strings `earlier < later`
/// (1-based positions).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairConstraint {
    pub earlier: usize,
    pub later: usize,
    pub kind: ConstraintKind,
}

impl PairConstraint {
    /// Checks the constraint against convolutional-encoder frame indices
    /// `(sigma, tau)` indexed by 0-based gate position.
    pub fn holds(&self, frames: &[(i64, i64)]) -> bool {
        let (sigma_i, tau_i) = frames[self.earlier - 1];
        let (sigma_j, tau_j) = frames[self.later - 1];
        match self.kind {
            ConstraintKind::SourceTarget => sigma_i <= tau_j,
            ConstraintKind::TargetSource => tau_i <= sigma_j,
        }
    }
}

/// Every source-target and target-source constraint between ordered pairs,
/// sorted by `(earlier, later, kind)`.
pub fn constraint_set(enc: &PearlNecklace) -> Vec<PairConstraint> {
    let strings = enc.strings();
    let mut out = Vec::new();
    for (i, first) in strings.iter().enumerate() {
        for (j, second) in strings.iter().enumerate().skip(i + 1) {
            if source_target(first, second) {
                out.push(PairConstraint {
                    earlier: i + 1,
                    later: j + 1,
                    kind: ConstraintKind::SourceTarget,
                });
            }
            if target_source(first, second) {
                out.push(PairConstraint {
                    earlier: i + 1,
                    later: j + 1,
                    kind: ConstraintKind::TargetSource,
                });
            }
        }
    }
    out
}
