//! Classical GF(2) simulation of truncated CNOT circuits.
//!
//! A CNOT maps basis states linearly (`x_target ^= x_source`), so a CNOT-only
//! circuit is fully described by an invertible binary matrix. This module
//! simulates a pearl-necklace encoder and a convolutional realization of it
//! on a finite window of frames and compares the two away from the window
//! boundary. It also finds the minimal memory by exhaustive search, without
//! going through the commutativity graph.

use std::fmt;

use thiserror::Error;

use crate::encoder::{constraint_set, PearlNecklace, Qubit};
use crate::longest_path::ConvGate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("window of {frames} frames cannot hold a unitary acting on {needed} frames")]
    WindowTooSmall { frames: usize, needed: usize },
    #[error(
        "circuits differ in shape: {left_frames}x{left_width} vs {right_frames}x{right_width}"
    )]
    ShapeMismatch {
        left_frames: usize,
        left_width: usize,
        right_frames: usize,
        right_width: usize,
    },
    #[error("margin {margin} leaves no interior in a window of {frames} frames")]
    MarginTooWide { margin: usize, frames: usize },
}

/// Square binary matrix with bit-packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    dim: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn identity(dim: usize) -> Self {
        let words = dim.div_ceil(64).max(1);
        let mut m = Self {
            dim,
            words,
            bits: vec![0; dim * words],
        };
        for i in 0..dim {
            m.set(i, i, true);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.words + col / 64] >> (col % 64) & 1 == 1
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        let word = &mut self.bits[row * self.words + col / 64];
        let mask = 1u64 << (col % 64);
        if value {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    /// `row[dst] ^= row[src]`
    pub fn add_row(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst, "a CNOT needs two distinct qubits");
        let w = self.words;
        let (s, d) = (src * w, dst * w);
        for k in 0..w {
            let v = self.bits[s + k];
            self.bits[d + k] ^= v;
        }
    }

    /// Rank over GF(2), by Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.dim {
            let Some(pivot) = (rank..m.dim).find(|&r| m.get(r, col)) else {
                continue;
            };
            if pivot != rank {
                let w = m.words;
                for k in 0..w {
                    m.bits.swap(pivot * w + k, rank * w + k);
                }
            }
            for r in 0..m.dim {
                if r != rank && m.get(r, col) {
                    m.add_row(rank, r);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.dim
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: String = (0..self.dim)
                .map(|c| if self.get(r, c) { '1' } else { '.' })
                .collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

/// A CNOT circuit on `frames` frames of `frame_width` qubits. Qubit `q`
/// (1-based) of frame `s` has global index `s * frame_width + q - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Circuit {
    frames: usize,
    frame_width: usize,
    matrix: BitMatrix,
}

impl Gf2Circuit {
    pub fn identity(frames: usize, frame_width: usize) -> Self {
        Self {
            frames,
            frame_width,
            matrix: BitMatrix::identity(frames * frame_width),
        }
    }

    pub fn frames(&self) -> usize {
        self.frames
    }

    pub fn frame_width(&self) -> usize {
        self.frame_width
    }

    pub fn total_qubits(&self) -> usize {
        self.frames * self.frame_width
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    fn index(&self, qubit: Qubit, frame: usize) -> usize {
        frame * self.frame_width + qubit as usize - 1
    }

    /// Applies `CNOT(source, target)(source_frame, target_frame)`.
    pub fn cnot(&mut self, source: Qubit, source_frame: usize, target: Qubit, target_frame: usize) {
        let s = self.index(source, source_frame);
        let t = self.index(target, target_frame);
        self.matrix.add_row(s, t);
    }
}

/// Truncated pearl-necklace encoder: each string in order, each of its gates
/// in ascending source frame. Gates with a frame outside `[0, frames)` are
/// dropped.
pub fn pearl_matrix(enc: &PearlNecklace, frames: usize) -> Gf2Circuit {
    let mut c = Gf2Circuit::identity(frames, enc.frame_width() as usize);
    let f = frames as i64;
    for g in enc.strings() {
        for s in 0..f {
            let t = s + g.degree();
            if (0..f).contains(&t) {
                c.cnot(g.source(), s as usize, g.target(), t as usize);
            }
        }
    }
    c
}

/// Repeated application of the convolutional unitary at offsets
/// `p = 0 ..= frames - memory - 1`. Frame `k` of the unitary's window is
/// global frame `p + memory - k`, so higher window frames are earlier in the
/// stream.
pub fn conv_matrix(
    enc: &PearlNecklace,
    gates: &[ConvGate],
    memory: i64,
    frames: usize,
) -> Result<Gf2Circuit, OracleError> {
    let needed = memory as usize + 1;
    if frames < needed {
        return Err(OracleError::WindowTooSmall { frames, needed });
    }
    let mut c = Gf2Circuit::identity(frames, enc.frame_width() as usize);
    for p in 0..=(frames - needed) as i64 {
        for g in gates {
            let sf = p + memory - g.sigma;
            let tf = p + memory - g.tau;
            c.cnot(g.source, sf as usize, g.target, tf as usize);
        }
    }
    Ok(c)
}

/// Default boundary margin for [`interior_equal`]: `L + max|l| + 1`.
pub fn default_margin(enc: &PearlNecklace, memory: i64) -> usize {
    (memory + enc.max_abs_degree() + 1) as usize
}

/// Compares two circuits on the interior frames `[margin, frames - margin)`:
/// rows of interior qubits, restricted to interior columns.
pub fn interior_equal(a: &Gf2Circuit, b: &Gf2Circuit, margin: usize) -> Result<bool, OracleError> {
    if a.frames != b.frames || a.frame_width != b.frame_width {
        return Err(OracleError::ShapeMismatch {
            left_frames: a.frames,
            left_width: a.frame_width,
            right_frames: b.frames,
            right_width: b.frame_width,
        });
    }
    if 2 * margin >= a.frames {
        return Err(OracleError::MarginTooWide {
            margin,
            frames: a.frames,
        });
    }
    let lo = margin * a.frame_width;
    let hi = (a.frames - margin) * a.frame_width;
    Ok((lo..hi).all(|r| (lo..hi).all(|c| a.matrix.get(r, c) == b.matrix.get(r, c))))
}

/// Outcome of [`brute_force_min_memory`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BruteForce {
    Minimum(i64),
    ExceedsBound,
}

impl fmt::Display for BruteForce {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BruteForce::Minimum(m) => write!(f, "{m}"),
            BruteForce::ExceedsBound => f.write_str("exceeds-bound"),
        }
    }
}

/// Searches every offset vector `w in [0, bound]^N`, placing gate `k` at
/// `(sigma, tau) = (w + l, w)` when `l >= 0` and `(w, w + |l|)` otherwise,
/// and returns the smallest `max(sigma, tau)` among placements that satisfy
/// the full constraint set. Offsets are assigned in gate order and a partial
/// placement is abandoned as soon as a constraint between assigned gates
/// fails or its memory cannot beat the best found so far.
pub fn brute_force_min_memory(enc: &PearlNecklace, bound: i64) -> BruteForce {
    let n = enc.len();
    let mut by_later: Vec<Vec<_>> = vec![Vec::new(); n + 1];
    for c in constraint_set(enc) {
        by_later[c.later].push(c);
    }
    let degrees: Vec<i64> = enc.strings().iter().map(|g| g.degree()).collect();

    struct Search<'a> {
        degrees: &'a [i64],
        by_later: &'a [Vec<crate::encoder::PairConstraint>],
        bound: i64,
        placed: Vec<(i64, i64)>,
        best: Option<i64>,
    }

    impl Search<'_> {
        fn go(&mut self, k: usize, memory: i64) {
            if self.best.is_some_and(|b| memory >= b) {
                return;
            }
            if k == self.degrees.len() {
                self.best = Some(memory);
                return;
            }
            let l = self.degrees[k];
            for w in 0..=self.bound {
                let frames = if l >= 0 { (w + l, w) } else { (w, w - l) };
                self.placed.push(frames);
                if self.by_later[k + 1].iter().all(|c| c.holds(&self.placed)) {
                    self.go(k + 1, memory.max(frames.0).max(frames.1));
                }
                self.placed.pop();
            }
        }
    }

    let mut search = Search {
        degrees: &degrees,
        by_later: &by_later,
        bound,
        placed: Vec::with_capacity(n),
        best: None,
    };
    search.go(0, 0);
    match search.best {
        Some(m) => BruteForce::Minimum(m),
        None => BruteForce::ExceedsBound,
    }
}
