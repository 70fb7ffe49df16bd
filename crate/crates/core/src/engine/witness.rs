use serde::{Deserialize, Serialize};

use crate::colorings::EdgeColoring;
use crate::error::ensure;
use crate::{ColorId, Result, Vertex};

/// Direction of one path edge on a directed host: `F` uses the arc `v_i -> v_{i+1}`, `B` the arc `v_{i+1} -> v_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dir {
    F,
    B,
}

/// Orientation constraint for path searches on directed hosts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    Unconstrained,
    Consistent,
    AntiDirected,
    Word(Vec<Dir>),
}

/// A path with its claimed color and, on directed hosts, the direction of every edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathWitness {
    pub vertices: Vec<Vertex>,
    pub color: ColorId,
    pub pattern: Option<String>,
}

impl PathWitness {
    pub fn new(vertices: Vec<Vertex>, color: ColorId) -> Self {
        PathWitness { vertices, color, pattern: None }
    }

    pub fn directed(vertices: Vec<Vertex>, color: ColorId, dirs: &[Dir]) -> Self {
        PathWitness { vertices, color, pattern: Some(pattern_string(dirs)) }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn first(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn last(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    pub fn dirs(&self) -> Result<Vec<Dir>> {
        parse_pattern(self.pattern.as_deref().unwrap_or(""))
    }

    pub fn reversed(&self) -> PathWitness {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        let pattern = self.pattern.as_ref().map(|p| {
            p.chars().rev().map(|c| if c == 'F' { 'B' } else { 'F' }).collect()
        });
        PathWitness { vertices, color: self.color, pattern }
    }
}

pub fn pattern_string(dirs: &[Dir]) -> String {
    dirs.iter().map(|d| if *d == Dir::F { 'F' } else { 'B' }).collect()
}

pub fn parse_pattern(s: &str) -> Result<Vec<Dir>> {
    s.chars()
        .map(|c| match c {
            'F' => Ok(Dir::F),
            'B' => Ok(Dir::B),
            other => Err(crate::Error::Param(format!("bad pattern letter '{other}'"))),
        })
        .collect()
}

/// Check that `w` is a path of its claimed color (and directions) in `coloring`.
pub fn validate_path<C: EdgeColoring + ?Sized>(coloring: &C, w: &PathWitness) -> Result<()> {
    let n = coloring.order();
    ensure!(!w.vertices.is_empty(), Witness, "empty path");
    ensure!(w.color.0 < coloring.num_colors(), Witness, "color {} out of range", w.color.0);
    let mut seen = std::collections::HashSet::with_capacity(w.vertices.len());
    for &v in &w.vertices {
        ensure!(v >= 1 && v <= n, Witness, "vertex {v} outside [{n}]");
        ensure!(seen.insert(v), Witness, "vertex {v} repeated");
    }
    if coloring.is_directed() {
        let dirs = w.dirs()?;
        ensure!(dirs.len() + 1 == w.vertices.len(), Witness, "pattern length {} for {} vertices", dirs.len(), w.vertices.len());
        for (i, pair) in w.vertices.windows(2).enumerate() {
            let (a, b) = if dirs[i] == Dir::F { (pair[0], pair[1]) } else { (pair[1], pair[0]) };
            ensure!(coloring.color(a, b) == w.color, Witness, "arc ({a},{b}) is not {}", w.color);
        }
    } else {
        ensure!(w.pattern.is_none(), Witness, "orientation pattern on an undirected host");
        for pair in w.vertices.windows(2) {
            let c = coloring.color(pair[0], pair[1]);
            ensure!(c == w.color, Witness, "edge {{{},{}}} is {c}, not {}", pair[0], pair[1], w.color);
        }
    }
    Ok(())
}

/// Whether the path's directions satisfy an orientation constraint.
pub fn matches_orientation(dirs: &[Dir], o: &Orientation) -> bool {
    match o {
        Orientation::Unconstrained => true,
        Orientation::Consistent => dirs.iter().all(|&d| d == dirs[0]),
        Orientation::AntiDirected => dirs.windows(2).all(|w| w[0] != w[1]),
        Orientation::Word(word) => {
            dirs.len() <= word.len() && (dirs == &word[..dirs.len()] || dirs.iter().rev().map(flip).eq(word[..dirs.len()].iter().copied()))
        }
    }
}

fn flip(d: &Dir) -> Dir {
    if *d == Dir::F {
        Dir::B
    } else {
        Dir::F
    }
}

/// 1-based positions of the out-switches (in-degree 0) and in-switches (out-degree 0).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwitchProfile {
    pub out_switches: Vec<usize>,
    pub in_switches: Vec<usize>,
}

impl SwitchProfile {
    /// All positions that are switches of either kind.
    pub fn positions(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.out_switches.iter().chain(&self.in_switches).copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }
}

pub fn switch_profile<C: EdgeColoring + ?Sized>(coloring: &C, w: &PathWitness) -> Result<SwitchProfile> {
    ensure!(coloring.is_directed(), Param, "switches are defined on directed hosts");
    validate_path(coloring, w)?;
    let dirs = w.dirs()?;
    let len = w.vertices.len();
    let mut out_switches = Vec::new();
    let mut in_switches = Vec::new();
    for i in 0..len {
        let incoming = (i > 0 && dirs[i - 1] == Dir::F) as u8 + (i + 1 < len && dirs[i] == Dir::B) as u8;
        let outgoing = (i > 0 && dirs[i - 1] == Dir::B) as u8 + (i + 1 < len && dirs[i] == Dir::F) as u8;
        if incoming == 0 {
            out_switches.push(i + 1);
        }
        if outgoing == 0 {
            in_switches.push(i + 1);
        }
    }
    Ok(SwitchProfile { out_switches, in_switches })
}

/// Vertex-disjoint paths of one color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestWitness {
    pub paths: Vec<PathWitness>,
    pub color: ColorId,
}

impl ForestWitness {
    pub fn empty(color: ColorId) -> Self {
        ForestWitness { paths: Vec::new(), color }
    }

    pub fn size(&self) -> usize {
        self.paths.iter().map(|p| p.len()).sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.paths.iter().flat_map(|p| p.vertices.iter().copied())
    }

    /// `|F ∩ [l]|`
    pub fn count_upto(&self, l: Vertex) -> usize {
        self.vertices().filter(|&v| v <= l).count()
    }
}

/// Check a forest: every path valid in the forest color, paths disjoint, and on total
/// colorings every path endpoint carries the forest color.
pub fn validate_forest<C: EdgeColoring + ?Sized>(coloring: &C, f: &ForestWitness) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for p in &f.paths {
        ensure!(p.color == f.color, Witness, "path color {} in a {} forest", p.color, f.color);
        validate_path(coloring, p)?;
        for &v in &p.vertices {
            ensure!(seen.insert(v), Witness, "forest paths share vertex {v}");
        }
        for end in [p.first(), p.last()] {
            if let Some(c) = coloring.vertex_color(end) {
                ensure!(c == f.color, Witness, "endpoint {end} has vertex color {c}, forest is {}", f.color);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorings::ColorTable;
    use crate::{BLUE, RED};

    fn all_red_digraph(n: u32) -> ColorTable {
        ColorTable::new(n, 2, true)
    }

    #[test]
    fn validates_undirected_paths() {
        let mut t = ColorTable::new(4, 2, false);
        t.set(2, 3, BLUE);
        assert!(validate_path(&t, &PathWitness::new(vec![1, 2, 4, 3], RED)).is_ok());
        assert!(validate_path(&t, &PathWitness::new(vec![1, 2, 3], RED)).is_err());
        assert!(validate_path(&t, &PathWitness::new(vec![1, 2, 1], RED)).is_err());
        assert!(validate_path(&t, &PathWitness::new(vec![1, 5], RED)).is_err());
        assert!(validate_path(&t, &PathWitness::new(vec![], RED)).is_err());
    }

    #[test]
    fn switch_examples() {
        let t = all_red_digraph(5);
        let consistent = PathWitness::directed(vec![1, 2, 3, 4, 5], RED, &[Dir::F; 4]);
        assert_eq!(switch_profile(&t, &consistent).unwrap().positions(), vec![1, 5]);
        let anti = PathWitness::directed(vec![1, 2, 3, 4, 5], RED, &[Dir::F, Dir::B, Dir::F, Dir::B]);
        let sp = switch_profile(&t, &anti).unwrap();
        assert_eq!(sp.positions(), vec![1, 2, 3, 4, 5]);
        assert_eq!(sp.out_switches, vec![1, 3, 5]);
        assert_eq!(sp.in_switches, vec![2, 4]);
        let ud = ColorTable::new(3, 2, false);
        assert!(switch_profile(&ud, &PathWitness::new(vec![1, 2], RED)).is_err());
    }

    #[test]
    fn reversal_keeps_validity() {
        let mut t = ColorTable::new(4, 2, true);
        t.set(2, 1, BLUE);
        let w = PathWitness::directed(vec![1, 2, 3], RED, &[Dir::F, Dir::F]);
        assert!(validate_path(&t, &w).is_ok());
        assert!(validate_path(&t, &w.reversed()).is_ok());
        assert_eq!(w.reversed().pattern.as_deref(), Some("BB"));
        let bad = PathWitness::directed(vec![1, 2, 3], RED, &[Dir::B, Dir::F]);
        assert!(validate_path(&t, &bad).is_err());
    }

    #[test]
    fn orientation_matching() {
        use Dir::*;
        assert!(matches_orientation(&[F, F, F], &Orientation::Consistent));
        assert!(matches_orientation(&[B, B], &Orientation::Consistent));
        assert!(!matches_orientation(&[F, B], &Orientation::Consistent));
        assert!(matches_orientation(&[F, B, F], &Orientation::AntiDirected));
        assert!(matches_orientation(&[F, B], &Orientation::Word(vec![F, B, B])));
        assert!(!matches_orientation(&[B, B], &Orientation::Word(vec![F, B, B])));
    }

    #[test]
    fn forest_endpoint_colors() {
        let mut t = ColorTable::new(4, 2, false);
        t.set_vertex_colors(vec![RED, BLUE, RED, RED]);
        let ok = ForestWitness { paths: vec![PathWitness::new(vec![1, 2, 3], RED), PathWitness::new(vec![4], RED)], color: RED };
        assert!(validate_forest(&t, &ok).is_ok());
        let bad = ForestWitness { paths: vec![PathWitness::new(vec![1, 2], RED)], color: RED };
        assert!(validate_forest(&t, &bad).is_err());
        let overlap = ForestWitness { paths: vec![PathWitness::new(vec![1, 3], RED), PathWitness::new(vec![3], RED)], color: RED };
        assert!(validate_forest(&t, &overlap).is_err());
    }
}
