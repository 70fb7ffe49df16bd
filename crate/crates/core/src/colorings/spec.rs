use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::affine::AffinePlane;
use super::intervals::{IntFn, IntervalPartition, SizeRule};
use crate::error::ensure;
use crate::{ColorId, Error, Result};

/// Rule for an explicit coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExplicitRule {
    /// Row-major lower triangle (undirected) or full `m x m` matrix (directed,
    /// diagonal ignored) over the vertices `1..=m`.
    Matrix { m: u32, colors: Vec<u8> },
    /// Every pair gets the same color; defined on all of the naturals.
    Fill { color: u8 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scheme {
    DirectedResidue { k: u32 },
    DirectedGrowth { h: IntFn },
    Affine { q: u32 },
    StrongLower { partition: IntervalPartition },
    AffineLower3 { partition: IntervalPartition },
    EgStrong23,
    EgUpper89,
    BoundedIndependence { h: IntFn },
    Explicit(ExplicitRule),
    SeededRandom { seed: u64 },
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::DirectedResidue { .. } => "directed-residue-k",
            Scheme::DirectedGrowth { .. } => "directed-growth",
            Scheme::Affine { .. } => "affine",
            Scheme::StrongLower { .. } => "strong-lower",
            Scheme::AffineLower3 { .. } => "affine-lower-3",
            Scheme::EgStrong23 => "eg-strong-2-3",
            Scheme::EgUpper89 => "eg-upper-8-9",
            Scheme::BoundedIndependence { .. } => "bounded-independence",
            Scheme::Explicit(_) => "explicit",
            Scheme::SeededRandom { .. } => "seeded-random",
        }
    }
}

/// A deterministic coloring of all pairs of naturals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct ColoringSpec {
    pub scheme: Scheme,
    pub directed: bool,
    pub num_colors: u8,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    scheme: String,
    directed: bool,
    num_colors: u8,
    #[serde(default)]
    params: Value,
}

pub fn gen_directed_residue(k: u32) -> Result<ColoringSpec> {
    ColoringSpec::new(Scheme::DirectedResidue { k }, true, 2)
}

pub fn gen_directed_growth(h: IntFn) -> Result<ColoringSpec> {
    ColoringSpec::new(Scheme::DirectedGrowth { h }, true, 3)
}

pub fn gen_affine(q: u32) -> Result<ColoringSpec> {
    ensure!(q < 255, Param, "affine plane order {q} too large for color ids");
    ColoringSpec::new(Scheme::Affine { q }, false, q as u8 + 1)
}

pub fn gen_strong_lower(partition: IntervalPartition) -> Result<ColoringSpec> {
    ColoringSpec::new(Scheme::StrongLower { partition }, false, 2)
}

pub fn gen_affine_lower3(partition: IntervalPartition) -> Result<ColoringSpec> {
    ColoringSpec::new(Scheme::AffineLower3 { partition }, false, 3)
}

pub fn gen_eg_strong_2_3() -> ColoringSpec {
    ColoringSpec { scheme: Scheme::EgStrong23, directed: false, num_colors: 2 }
}

pub fn gen_eg_upper_8_9() -> ColoringSpec {
    ColoringSpec { scheme: Scheme::EgUpper89, directed: false, num_colors: 2 }
}

pub fn gen_bounded_independence(h: IntFn) -> Result<ColoringSpec> {
    ColoringSpec::new(Scheme::BoundedIndependence { h }, false, 2)
}

pub fn gen_seeded_random(seed: u64, num_colors: u8, directed: bool) -> Result<ColoringSpec> {
    ColoringSpec::new(Scheme::SeededRandom { seed }, directed, num_colors)
}

pub fn gen_constant(color: ColorId, num_colors: u8, directed: bool) -> Result<ColoringSpec> {
    ColoringSpec::new(Scheme::Explicit(ExplicitRule::Fill { color: color.0 }), directed, num_colors)
}

pub fn gen_explicit(m: u32, colors: Vec<u8>, num_colors: u8, directed: bool) -> Result<ColoringSpec> {
    ColoringSpec::new(Scheme::Explicit(ExplicitRule::Matrix { m, colors }), directed, num_colors)
}

impl ColoringSpec {
    pub fn new(scheme: Scheme, directed: bool, num_colors: u8) -> Result<Self> {
        let spec = ColoringSpec { scheme, directed, num_colors };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.num_colors;
        ensure!(r >= 1, Param, "num_colors must be positive");
        let fixed = |directed: bool, colors: u8| -> Result<()> {
            ensure!(
                self.directed == directed && r == colors,
                Param,
                "{} requires directed={directed}, num_colors={colors}",
                self.scheme.name()
            );
            Ok(())
        };
        match &self.scheme {
            Scheme::DirectedResidue { k } => {
                ensure!(*k >= 2, Param, "residue classes need k >= 2, got {k}");
                fixed(true, 2)
            }
            Scheme::DirectedGrowth { h } => {
                h.validate_nondecreasing()?;
                fixed(true, 3)
            }
            Scheme::Affine { q } => {
                AffinePlane::new(*q)?;
                fixed(false, (*q + 1).min(255) as u8)
            }
            Scheme::StrongLower { partition } => {
                partition.validate()?;
                fixed(false, 2)
            }
            Scheme::AffineLower3 { partition } => {
                partition.validate()?;
                fixed(false, 3)
            }
            Scheme::EgStrong23 | Scheme::EgUpper89 => fixed(false, 2),
            Scheme::BoundedIndependence { h } => {
                h.validate_nondecreasing()?;
                fixed(false, 2)
            }
            Scheme::Explicit(ExplicitRule::Fill { color }) => {
                ensure!(*color < r, Param, "fill color {color} out of range");
                Ok(())
            }
            Scheme::Explicit(ExplicitRule::Matrix { m, colors }) => {
                let m = *m as usize;
                let want = if self.directed { m * m } else { m * m.saturating_sub(1) / 2 };
                ensure!(colors.len() == want, Param, "explicit matrix has {} entries, expected {want}", colors.len());
                ensure!(colors.iter().all(|&c| c < r), Param, "explicit matrix color out of range");
                Ok(())
            }
            Scheme::SeededRandom { .. } => Ok(()),
        }
    }

    /// Largest prefix on which the spec is defined, if finite.
    pub fn max_prefix(&self) -> Option<u32> {
        match &self.scheme {
            Scheme::Explicit(ExplicitRule::Matrix { m, .. }) => Some(*m),
            Scheme::StrongLower { partition } | Scheme::AffineLower3 { partition } => match &partition.rule {
                SizeRule::Explicit { sizes } => Some(sizes.iter().sum::<u64>().min(u32::MAX as u64) as u32),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

fn field<T: serde::de::DeserializeOwned>(params: &Value, key: &str) -> Result<T> {
    let v = params.get(key).ok_or_else(|| Error::Param(format!("missing parameter '{key}'")))?;
    serde_json::from_value(v.clone()).map_err(|e| Error::Param(format!("parameter '{key}': {e}")))
}

impl TryFrom<RawSpec> for ColoringSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        let p = &raw.params;
        let scheme = match raw.scheme.as_str() {
            "directed-residue-k" => Scheme::DirectedResidue { k: field(p, "k")? },
            "directed-growth" => Scheme::DirectedGrowth { h: field(p, "h")? },
            "affine" => Scheme::Affine { q: field(p, "q")? },
            "strong-lower" => Scheme::StrongLower { partition: field(p, "partition")? },
            "affine-lower-3" => Scheme::AffineLower3 { partition: field(p, "partition")? },
            "eg-strong-2-3" => Scheme::EgStrong23,
            "eg-upper-8-9" => Scheme::EgUpper89,
            "bounded-independence" => Scheme::BoundedIndependence { h: field(p, "h")? },
            "explicit" => {
                if p.get("fill").is_some() {
                    Scheme::Explicit(ExplicitRule::Fill { color: field(p, "fill")? })
                } else {
                    Scheme::Explicit(ExplicitRule::Matrix { m: field(p, "n")?, colors: field(p, "matrix")? })
                }
            }
            "seeded-random" => Scheme::SeededRandom { seed: field(p, "seed")? },
            other => return Err(Error::Param(format!("unknown scheme '{other}'"))),
        };
        ColoringSpec::new(scheme, raw.directed, raw.num_colors)
    }
}

impl From<ColoringSpec> for RawSpec {
    fn from(spec: ColoringSpec) -> RawSpec {
        let params = match &spec.scheme {
            Scheme::DirectedResidue { k } => json!({ "k": k }),
            Scheme::DirectedGrowth { h } | Scheme::BoundedIndependence { h } => json!({ "h": h }),
            Scheme::Affine { q } => json!({ "q": q }),
            Scheme::StrongLower { partition } | Scheme::AffineLower3 { partition } => json!({ "partition": partition }),
            Scheme::EgStrong23 | Scheme::EgUpper89 => json!({}),
            Scheme::Explicit(ExplicitRule::Fill { color }) => json!({ "fill": color }),
            Scheme::Explicit(ExplicitRule::Matrix { m, colors }) => json!({ "n": m, "matrix": colors }),
            Scheme::SeededRandom { seed } => json!({ "seed": seed }),
        };
        RawSpec { scheme: spec.scheme.name().to_string(), directed: spec.directed, num_colors: spec.num_colors, params }
    }
}
