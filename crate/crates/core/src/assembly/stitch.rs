use fixedbitset::FixedBitSet;

use super::trace::{CaseTag, Piece, Source};
use crate::colorings::EdgeColoring;
use crate::{ColorId, Vertex};

/// Sequential builder of a monochromatic path from artifacts and short joins.
pub(crate) struct Stitch<'a, C: EdgeColoring + ?Sized> {
    coloring: &'a C,
    pub color: ColorId,
    /// Vertices on the path or reserved for later artifacts; indexed by vertex.
    taken: FixedBitSet,
    pub pieces: Vec<Piece>,
    pub discarded: Vec<String>,
    pub end: Option<Vertex>,
}

impl<'a, C: EdgeColoring + ?Sized> Stitch<'a, C> {
    pub fn new(coloring: &'a C, color: ColorId) -> Self {
        let n = coloring.order() as usize;
        Stitch { coloring, color, taken: FixedBitSet::with_capacity(n + 1), pieces: Vec::new(), discarded: Vec::new(), end: None }
    }

    pub fn edge(&self, a: Vertex, b: Vertex) -> bool {
        a != b && self.coloring.color(a, b) == self.color
    }

    pub fn reserve(&mut self, vs: impl IntoIterator<Item = Vertex>) {
        for v in vs {
            self.taken.insert(v as usize);
        }
    }

    pub fn release(&mut self, vs: impl IntoIterator<Item = Vertex>) {
        for v in vs {
            self.taken.set(v as usize, false);
        }
    }

    pub fn is_free(&self, v: Vertex) -> bool {
        !self.taken.contains(v as usize)
    }

    /// Shortest join (at most two free intermediates passing `allow`) from the current end to one of `targets`.
    pub fn find_join(&self, targets: &[Vertex], allow: &dyn Fn(Vertex) -> bool) -> Option<(Vec<Vertex>, Vertex)> {
        let e = self.end?;
        if let Some(&t) = targets.iter().find(|&&t| self.edge(e, t)) {
            return Some((Vec::new(), t));
        }
        let n = self.coloring.order();
        let free: Vec<Vertex> = (1..=n).filter(|&z| self.is_free(z) && allow(z) && z != e && !targets.contains(&z)).collect();
        let near: Vec<Vertex> = free.iter().copied().filter(|&z| self.edge(e, z)).collect();
        for &z in &near {
            if let Some(&t) = targets.iter().find(|&&t| self.edge(z, t)) {
                return Some((vec![z], t));
            }
        }
        for &t in targets {
            let far: Vec<Vertex> = free.iter().copied().filter(|&z| self.edge(z, t)).collect();
            for &z1 in &near {
                if let Some(&z2) = far.iter().find(|&&z2| self.edge(z1, z2)) {
                    return Some((vec![z1, z2], t));
                }
            }
        }
        None
    }

    pub fn push_join(&mut self, via: Vec<Vertex>, tag: Option<CaseTag>) {
        self.reserve(via.iter().copied());
        self.pieces.push(Piece::Join { via, tag });
    }

    pub fn push_artifact(&mut self, intervals: Vec<usize>, source: Source, vertices: Vec<Vertex>) {
        self.reserve(vertices.iter().copied());
        self.end = vertices.last().copied();
        self.pieces.push(Piece::Artifact { intervals, source, vertices });
    }
}
