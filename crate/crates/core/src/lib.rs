//! Finite-prefix constructions for monochromatic paths, forests and connected
//! subgraphs in edge-colorings of the complete graph on the naturals.
//!
//! Vertices are the positive integers `1..=n`. Colors are small indices with
//! the fixed convention red = 0, blue = 1, green = 2.

pub mod assembly;
pub mod colorings;
pub mod connected;
pub mod density;
pub mod engine;
mod error;

pub use error::{Error, Result};

use serde::{Deserialize, Serialize};
use std::fmt;

/// A vertex of the host graph. Always at least 1.
pub type Vertex = u32;

/// Exact ratio used for every density value.
pub type Ratio = num_rational::Ratio<u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColorId(pub u8);

pub const RED: ColorId = ColorId(0);
pub const BLUE: ColorId = ColorId(1);
pub const GREEN: ColorId = ColorId(2);

impl ColorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// The other color of a 2-coloring.
    pub fn flip(self) -> ColorId {
        ColorId(1 - self.0.min(1))
    }
}

impl fmt::Display for ColorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => f.write_str("red"),
            1 => f.write_str("blue"),
            2 => f.write_str("green"),
            c => write!(f, "color{c}"),
        }
    }
}

/// Convert an exact ratio to a float for display columns.
pub fn ratio_f64(r: Ratio) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
