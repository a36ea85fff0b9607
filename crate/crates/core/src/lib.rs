//! Minimal-memory analysis of CNOT pearl-necklace encoders.
//!
//! A pearl-necklace encoder for a CSS quantum convolutional code is an ordered
//! list of repeated CNOT strings. Turning it into a convolutional encoder (one
//! finite unitary applied to a sliding window of frames) requires keeping some
//! frames in memory. This crate builds the weighted commutativity DAG of the
//! encoder, reads the minimal memory off its longest START→END path, and
//! produces one frame assignment that achieves it.
//!
//! ```
//! use necklace_memory::{parser::parse_str, longest_path::frame_assignment};
//!
//! let enc = parse_str("CNOT(2,3)(D) CNOT(1,2)(D) CNOT(2,3)(D^2) CNOT(1,2)(1) CNOT(2,1)(D)").unwrap();
//! let fa = frame_assignment(&enc);
//! assert_eq!(fa.memory, 3);
//! assert_eq!(fa.tau(), vec![0, 1, 0, 2, 2]);
//! ```
//!
//! The [`gf2`] module is an independent check: it simulates both encoders as
//! binary matrices on a truncated stream and brute-forces the memory bound.

pub mod encoder;
pub mod gf2;
pub mod graph;
pub mod longest_path;
pub mod parser;
pub mod random;
pub mod report;

pub use encoder::{constraint_set, source_target, target_source, GateString, PearlNecklace};
pub use graph::{build_graph, to_dot, CommutativityGraph};
pub use longest_path::{frame_assignment, minimal_memory, FrameAssignment};
pub use parser::{parse, render, SourceText};
