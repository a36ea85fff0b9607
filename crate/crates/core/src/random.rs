//! Seeded random encoders for self-tests and property checks.

use rand::Rng;

use crate::encoder::{Degree, GateString, PearlNecklace, Qubit};

/// Shape of the random encoders to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncoderFamily {
    pub max_strings: usize,
    pub max_abs_degree: Degree,
    pub min_degree: Degree,
    pub max_degree: Degree,
    pub max_frame_width: Qubit,
    /// Allow `CNOT(a,a)(D^l)` with `l != 0`.
    pub allow_same_index: bool,
}

impl EncoderFamily {
    /// `N <= 6`, `|l| <= 3`, `n <= 4`, both degree signs.
    pub fn small() -> Self {
        Self {
            max_strings: 6,
            max_abs_degree: 3,
            min_degree: -3,
            max_degree: 3,
            max_frame_width: 4,
            allow_same_index: true,
        }
    }

    pub fn non_negative(self) -> Self {
        Self {
            min_degree: 0,
            max_degree: self.max_abs_degree,
            ..self
        }
    }

    pub fn strictly_negative(self) -> Self {
        Self {
            min_degree: -self.max_abs_degree,
            max_degree: -1,
            ..self
        }
    }
}

/// Draws one gate string on a frame of `frame_width >= 1` qubits. The degree
/// range must contain a non-zero value when `frame_width == 1`.
pub fn random_gate<R: Rng + ?Sized>(
    rng: &mut R,
    family: &EncoderFamily,
    frame_width: Qubit,
) -> GateString {
    loop {
        let a = rng.gen_range(1..=frame_width);
        let b = rng.gen_range(1..=frame_width);
        let l = rng.gen_range(family.min_degree..=family.max_degree);
        if a == b && !family.allow_same_index {
            continue;
        }
        if let Ok(g) = GateString::new(a, b, l) {
            return g;
        }
    }
}

/// Draws an encoder with `0..=max_strings` strings.
pub fn random_encoder<R: Rng + ?Sized>(rng: &mut R, family: &EncoderFamily) -> PearlNecklace {
    let min_width = if family.allow_same_index { 1 } else { 2 };
    let frame_width = rng.gen_range(min_width..=family.max_frame_width);
    let count = rng.gen_range(0..=family.max_strings);
    random_encoder_of(rng, family, frame_width, count)
}

/// Draws exactly `count` strings on frames of `frame_width` qubits.
pub fn random_encoder_of<R: Rng + ?Sized>(
    rng: &mut R,
    family: &EncoderFamily,
    frame_width: Qubit,
    count: usize,
) -> PearlNecklace {
    let strings = (0..count)
        .map(|_| random_gate(rng, family, frame_width))
        .collect();
    PearlNecklace::new(strings, frame_width).expect("indices drawn within the frame")
}
