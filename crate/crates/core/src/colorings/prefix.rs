use super::affine::AffinePlane;
use super::intervals::{IntervalPartition, Intervals, SizeRule};
use super::spec::{ColoringSpec, ExplicitRule, Scheme};
use crate::error::ensure;
use crate::{ColorId, Result, Vertex, BLUE, GREEN, RED};

/// Read access to a coloring of the pairs of `1..=order()`.
pub trait EdgeColoring: Sync {
    fn order(&self) -> u32;
    fn num_colors(&self) -> u8;
    fn is_directed(&self) -> bool;
    /// Color of `{u, v}`, or of the arc `u -> v` on directed hosts. Requires `u != v`.
    fn color(&self, u: Vertex, v: Vertex) -> ColorId;
    fn vertex_color(&self, _v: Vertex) -> Option<ColorId> {
        None
    }
}

#[derive(Debug, Clone)]
enum Rule {
    Residue { k: u32 },
    Growth { iv: Intervals },
    Affine { plane: AffinePlane, points: u32 },
    StrongLower { iv: Intervals },
    AffineLower3 { iv: Intervals },
    EgStrong,
    EgUpper,
    BoundedIndependence { iv: Intervals },
    Matrix { m: u32, colors: Vec<u8> },
    Fill(ColorId),
    Random { seed: u64, r: u64 },
}

/// A spec restricted to `[n]`, evaluated by rule in O(1) per pair.
#[derive(Debug, Clone)]
pub struct PrefixColoring {
    n: u32,
    spec: ColoringSpec,
    rule: Rule,
    vertex_colors: Option<Vec<ColorId>>,
}

pub fn materialize(spec: &ColoringSpec, n: u32) -> Result<PrefixColoring> {
    ensure!(n >= 1, Param, "prefix length must be at least 1");
    spec.validate()?;
    if let Some(max) = spec.max_prefix() {
        ensure!(n <= max, Param, "spec is defined only on [{max}], asked for [{n}]");
    }
    let rule = match &spec.scheme {
        Scheme::DirectedResidue { k } => Rule::Residue { k: *k },
        Scheme::DirectedGrowth { h } => Rule::Growth {
            iv: IntervalPartition { rule: SizeRule::Function { h: h.clone(), times_position: false }, first_index: 1 }
                .materialize(n)?,
        },
        Scheme::Affine { q } => Rule::Affine { plane: AffinePlane::new(*q)?, points: q * q },
        Scheme::StrongLower { partition } => Rule::StrongLower { iv: partition.materialize(n)? },
        Scheme::AffineLower3 { partition } => Rule::AffineLower3 { iv: partition.materialize(n)? },
        Scheme::EgStrong23 => Rule::EgStrong,
        Scheme::EgUpper89 => Rule::EgUpper,
        Scheme::BoundedIndependence { h } => Rule::BoundedIndependence {
            iv: IntervalPartition { rule: SizeRule::Function { h: h.clone(), times_position: true }, first_index: 1 }
                .materialize(n)?,
        },
        Scheme::Explicit(ExplicitRule::Matrix { m, colors }) => Rule::Matrix { m: *m, colors: colors.clone() },
        Scheme::Explicit(ExplicitRule::Fill { color }) => Rule::Fill(ColorId(*color)),
        Scheme::SeededRandom { seed } => Rule::Random { seed: *seed, r: spec.num_colors as u64 },
    };
    Ok(PrefixColoring { n, spec: spec.clone(), rule, vertex_colors: None })
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Interval index of `v` when `A_m = [2^m, 2^(m+1) - 1]`.
fn dyadic_index(v: Vertex) -> u32 {
    31 - v.leading_zeros()
}

const LOWER3: [[u8; 4]; 4] = [[0, 2, 1, 0], [2, 0, 0, 1], [1, 0, 0, 2], [0, 1, 2, 0]];

impl PrefixColoring {
    pub fn spec(&self) -> &ColoringSpec {
        &self.spec
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn try_color(&self, u: Vertex, v: Vertex) -> Result<ColorId> {
        ensure!(u != v, Param, "no color on the loop ({u},{u})");
        ensure!(
            (1..=self.n).contains(&u) && (1..=self.n).contains(&v),
            Param,
            "pair ({u},{v}) outside [{}]",
            self.n
        );
        Ok(self.color(u, v))
    }

    /// Attach vertex colors, turning this into a total coloring.
    pub fn with_vertex_colors(mut self, colors: Vec<ColorId>) -> Result<Self> {
        ensure!(colors.len() == self.n as usize, Param, "need {} vertex colors, got {}", self.n, colors.len());
        ensure!(colors.iter().all(|c| c.0 < self.spec.num_colors), Param, "vertex color out of range");
        self.vertex_colors = Some(colors);
        Ok(self)
    }

    pub fn vertex_colors(&self) -> Option<&[ColorId]> {
        self.vertex_colors.as_deref()
    }

    pub fn restrict(&self, m: u32) -> Result<PrefixColoring> {
        ensure!(m <= self.n, Param, "cannot restrict [{}] to [{m}]", self.n);
        let mut out = materialize(&self.spec, m)?;
        out.vertex_colors = self.vertex_colors.as_ref().map(|v| v[..m as usize].to_vec());
        Ok(out)
    }

    /// Right ends of the construction's intervals inside `[n]`, if it has any.
    pub fn interval_ends(&self) -> Option<Vec<Vertex>> {
        match &self.rule {
            Rule::Growth { iv } | Rule::StrongLower { iv } | Rule::AffineLower3 { iv } | Rule::BoundedIndependence { iv } => {
                Some(iv.ends.clone())
            }
            Rule::EgUpper => Some((0..32).map(|m| (1u64 << (m + 1)) - 1).take_while(|&e| e <= self.n as u64).map(|e| e as u32).collect()),
            _ => None,
        }
    }

    /// Intervals of the construction, where the construction is interval based.
    pub fn intervals(&self) -> Option<&Intervals> {
        match &self.rule {
            Rule::Growth { iv } | Rule::StrongLower { iv } | Rule::AffineLower3 { iv } | Rule::BoundedIndependence { iv } => Some(iv),
            _ => None,
        }
    }

    /// Class label used by the construction for `v` (residue, interval label or point class).
    pub fn class_of(&self, v: Vertex) -> Option<u32> {
        match &self.rule {
            Rule::Residue { k } => Some(v % k),
            Rule::Affine { points, .. } => Some(v % points),
            Rule::Growth { iv } | Rule::StrongLower { iv } | Rule::BoundedIndependence { iv } => Some(iv.label(v)),
            Rule::AffineLower3 { iv } => Some(iv.label(v) % 4),
            Rule::EgUpper => Some(dyadic_index(v)),
            Rule::EgStrong => Some(u32::from(v % 3 == 0)),
            _ => None,
        }
    }

    /// Dense copy of the colors of `[n]`.
    pub fn to_table(&self) -> ColorTable {
        ColorTable::from_coloring(self)
    }
}

impl EdgeColoring for PrefixColoring {
    fn order(&self) -> u32 {
        self.n
    }

    fn num_colors(&self) -> u8 {
        self.spec.num_colors
    }

    fn is_directed(&self) -> bool {
        self.spec.directed
    }

    fn color(&self, u: Vertex, v: Vertex) -> ColorId {
        debug_assert!(u != v);
        match &self.rule {
            Rule::Residue { k } => {
                let (cu, cv) = (u % k, v % k);
                if cu == cv {
                    if u < v { RED } else { BLUE }
                } else if cu < cv {
                    BLUE
                } else {
                    RED
                }
            }
            Rule::Growth { iv } => {
                let (a, b) = (iv.position(u), iv.position(v));
                if a == b {
                    GREEN
                } else if a < b {
                    RED
                } else {
                    BLUE
                }
            }
            Rule::Affine { plane, points } => {
                let (a, b) = (u % points, v % points);
                if a == b { RED } else { ColorId(plane.parallel_class(a, b) as u8) }
            }
            Rule::StrongLower { iv } => {
                if iv.label(u).max(iv.label(v)) % 2 == 1 { RED } else { BLUE }
            }
            Rule::AffineLower3 { iv } => ColorId(LOWER3[(iv.label(u) % 4) as usize][(iv.label(v) % 4) as usize]),
            Rule::EgStrong => {
                if (u % 3 == 0) != (v % 3 == 0) { RED } else { BLUE }
            }
            Rule::EgUpper => {
                if dyadic_index(u.min(v)) % 2 == 0 { RED } else { BLUE }
            }
            Rule::BoundedIndependence { iv } => {
                if iv.position(u) == iv.position(v) { BLUE } else { RED }
            }
            Rule::Matrix { m, colors } => {
                let (i, j) = (u as usize - 1, v as usize - 1);
                let idx = if self.spec.directed {
                    i * *m as usize + j
                } else {
                    let (hi, lo) = if i > j { (i, j) } else { (j, i) };
                    hi * (hi - 1) / 2 + lo
                };
                ColorId(colors[idx])
            }
            Rule::Fill(c) => *c,
            Rule::Random { seed, r } => {
                let (a, b) = if self.spec.directed || u < v { (u, v) } else { (v, u) };
                let h = splitmix(seed ^ splitmix(((a as u64) << 32) | b as u64));
                ColorId((if r.is_power_of_two() { h & (r - 1) } else { h % r }) as u8)
            }
        }
    }

    fn vertex_color(&self, v: Vertex) -> Option<ColorId> {
        self.vertex_colors.as_ref().map(|c| c[v as usize - 1])
    }
}

/// Dense color table on `[n]`, used by exhaustive searches and small instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorTable {
    n: u32,
    r: u8,
    directed: bool,
    cells: Vec<u8>,
    vertex: Option<Vec<ColorId>>,
}

impl ColorTable {
    pub fn new(n: u32, r: u8, directed: bool) -> Self {
        ColorTable { n, r, directed, cells: vec![0; (n * n) as usize], vertex: None }
    }

    pub fn from_coloring<C: EdgeColoring + ?Sized>(c: &C) -> Self {
        let n = c.order();
        let mut t = ColorTable::new(n, c.num_colors(), c.is_directed());
        for u in 1..=n {
            for v in 1..=n {
                if u != v {
                    t.cells[((u - 1) * n + v - 1) as usize] = c.color(u, v).0;
                }
            }
        }
        if c.vertex_color(1).is_some() {
            t.vertex = Some((1..=n).map(|v| c.vertex_color(v).unwrap()).collect());
        }
        t
    }

    /// Undirected table from pair colors listed in the order (2,1),(3,1),(3,2),(4,1),...
    pub fn from_pair_colors(n: u32, r: u8, colors: impl IntoIterator<Item = u8>) -> Self {
        let mut t = ColorTable::new(n, r, false);
        let mut it = colors.into_iter();
        for u in 2..=n {
            for v in 1..u {
                t.set(u, v, ColorId(it.next().expect("enough pair colors")));
            }
        }
        t
    }

    /// Set the color of `{u, v}` (or of the arc `u -> v` when directed).
    pub fn set(&mut self, u: Vertex, v: Vertex, c: ColorId) {
        let n = self.n;
        self.cells[((u - 1) * n + v - 1) as usize] = c.0;
        if !self.directed {
            self.cells[((v - 1) * n + u - 1) as usize] = c.0;
        }
    }

    pub fn set_vertex_colors(&mut self, colors: Vec<ColorId>) {
        assert_eq!(colors.len(), self.n as usize);
        self.vertex = Some(colors);
    }

    /// The same coloring as an explicit spec.
    pub fn to_spec(&self) -> ColoringSpec {
        let n = self.n;
        let colors = if self.directed {
            self.cells.clone()
        } else {
            let mut out = Vec::with_capacity((n * n.saturating_sub(1) / 2) as usize);
            for u in 2..=n {
                for v in 1..u {
                    out.push(self.cells[((u - 1) * n + v - 1) as usize]);
                }
            }
            out
        };
        ColoringSpec {
            scheme: Scheme::Explicit(ExplicitRule::Matrix { m: n, colors }),
            directed: self.directed,
            num_colors: self.r,
        }
    }
}

impl EdgeColoring for ColorTable {
    fn order(&self) -> u32 {
        self.n
    }

    fn num_colors(&self) -> u8 {
        self.r
    }

    fn is_directed(&self) -> bool {
        self.directed
    }

    #[inline]
    fn color(&self, u: Vertex, v: Vertex) -> ColorId {
        ColorId(self.cells[((u - 1) * self.n + v - 1) as usize])
    }

    fn vertex_color(&self, v: Vertex) -> Option<ColorId> {
        self.vertex.as_ref().map(|c| c[v as usize - 1])
    }
}

/// View of a host coloring on a list of vertices, relabeled `1..=labels.len()` in list order.
pub struct Relabeled<'a, C: EdgeColoring + ?Sized> {
    host: &'a C,
    labels: Vec<Vertex>,
}

impl<'a, C: EdgeColoring + ?Sized> Relabeled<'a, C> {
    pub fn new(host: &'a C, labels: Vec<Vertex>) -> Self {
        Relabeled { host, labels }
    }

    /// Host vertex behind local vertex `v`.
    pub fn host_vertex(&self, v: Vertex) -> Vertex {
        self.labels[v as usize - 1]
    }

    pub fn labels(&self) -> &[Vertex] {
        &self.labels
    }
}

impl<C: EdgeColoring + ?Sized> EdgeColoring for Relabeled<'_, C> {
    fn order(&self) -> u32 {
        self.labels.len() as u32
    }

    fn num_colors(&self) -> u8 {
        self.host.num_colors()
    }

    fn is_directed(&self) -> bool {
        self.host.is_directed()
    }

    fn color(&self, u: Vertex, v: Vertex) -> ColorId {
        self.host.color(self.host_vertex(u), self.host_vertex(v))
    }

    fn vertex_color(&self, v: Vertex) -> Option<ColorId> {
        self.host.vertex_color(self.host_vertex(v))
    }
}

/// A host coloring paired with an explicit vertex coloring.
pub struct WithVertexColors<'a, C: EdgeColoring + ?Sized> {
    host: &'a C,
    colors: Vec<ColorId>,
}

impl<'a, C: EdgeColoring + ?Sized> WithVertexColors<'a, C> {
    pub fn new(host: &'a C, colors: Vec<ColorId>) -> Self {
        assert_eq!(colors.len(), host.order() as usize);
        WithVertexColors { host, colors }
    }
}

impl<C: EdgeColoring + ?Sized> EdgeColoring for WithVertexColors<'_, C> {
    fn order(&self) -> u32 {
        self.host.order()
    }

    fn num_colors(&self) -> u8 {
        self.host.num_colors()
    }

    fn is_directed(&self) -> bool {
        self.host.is_directed()
    }

    fn color(&self, u: Vertex, v: Vertex) -> ColorId {
        self.host.color(u, v)
    }

    fn vertex_color(&self, v: Vertex) -> Option<ColorId> {
        Some(self.colors[v as usize - 1])
    }
}
