use petgraph::unionfind::UnionFind;

use crate::colorings::EdgeColoring;
use crate::density::VertexSet;
use crate::{ColorId, Vertex};

/// Components of the `color` subgraph (arcs read as undirected edges), largest first, ties by lowest member.
pub fn mono_components<C: EdgeColoring + ?Sized>(coloring: &C, color: ColorId) -> Vec<VertexSet> {
    let n = coloring.order() as usize;
    let mut uf = UnionFind::<usize>::new(n + 1);
    for u in 1..=n as Vertex {
        for v in u + 1..=n as Vertex {
            if coloring.color(u, v) == color || (coloring.is_directed() && coloring.color(v, u) == color) {
                uf.union(u as usize, v as usize);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<Vertex>> = Default::default();
    for v in 1..=n {
        groups.entry(uf.find(v)).or_default().push(v as Vertex);
    }
    let mut comps: Vec<VertexSet> = groups.into_values().map(VertexSet::new).collect();
    comps.sort_by_key(|c| (std::cmp::Reverse(c.len()), c.members()[0]));
    comps
}

/// Largest monochromatic component over all colors; ties go to the lowest color.
pub fn largest_mono_component<C: EdgeColoring + ?Sized>(coloring: &C) -> (ColorId, VertexSet) {
    let mut best: Option<(ColorId, VertexSet)> = None;
    for c in 0..coloring.num_colors() {
        let comp = mono_components(coloring, ColorId(c)).into_iter().next().unwrap_or_default();
        if best.as_ref().map_or(true, |(_, b)| comp.len() > b.len()) {
            best = Some((ColorId(c), comp));
        }
    }
    best.unwrap_or((ColorId(0), VertexSet::default()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorings::{gen_affine, gen_seeded_random, materialize};

    #[test]
    fn two_colorings_have_spanning_components() {
        for seed in 0..20 {
            let c = materialize(&gen_seeded_random(seed, 2, false).unwrap(), 15).unwrap();
            assert_eq!(largest_mono_component(&c).1.len(), 15);
        }
    }

    #[test]
    fn affine_q2_on_8() {
        let c = materialize(&gen_affine(2).unwrap(), 8).unwrap();
        assert_eq!(largest_mono_component(&c).1.len(), 4);
    }
}
