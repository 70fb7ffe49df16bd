use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::colorings::EdgeColoring;
use crate::density::VertexSet;
use crate::error::ensure;
use crate::{ColorId, Error, Result, Vertex};

/// Components of the `color` subgraph induced on `verts`, largest first, ties by lowest member.
pub fn components_on<C: EdgeColoring + ?Sized>(c: &C, verts: &[Vertex], color: ColorId) -> Vec<VertexSet> {
    let k = verts.len();
    let mut uf = UnionFind::<usize>::new(k);
    for i in 0..k {
        for j in 0..i {
            if c.color(verts[i], verts[j]) == color {
                uf.union(i, j);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<Vertex>> = Default::default();
    for (i, &v) in verts.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(v);
    }
    let mut comps: Vec<VertexSet> = groups.into_values().map(VertexSet::new).collect();
    comps.sort_by_key(|s| (std::cmp::Reverse(s.len()), s.members()[0]));
    comps
}

fn is_connected_in<C: EdgeColoring + ?Sized>(c: &C, set: &[Vertex], color: ColorId) -> bool {
    set.is_empty() || components_on(c, set, color).len() == 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrichotomyCase {
    I,
    II,
    III,
}

/// One checked block: its name and the number of edges (or pairs) examined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCheck {
    pub block: String,
    pub edges: u64,
}

/// Structure of a 3-colored complete graph on `[n]`. `roles` lists the actual colors playing
/// the parts of blue, red and green in the case descriptions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrichotomyCertificate {
    pub n: u32,
    pub case: TrichotomyCase,
    pub roles: [ColorId; 3],
    pub spanning: Option<ColorId>,
    pub w: VertexSet,
    pub x: VertexSet,
    pub y: VertexSet,
    pub z: VertexSet,
    pub transcript: Vec<BlockCheck>,
}

impl TrichotomyCertificate {
    pub fn parts(&self) -> [&VertexSet; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }

    /// Role index (0 blue, 1 red, 2 green) of the complete block between parts `p != q` in case (ii).
    pub fn type_ii_block_role(p: usize, q: usize) -> usize {
        match (p.min(q), p.max(q)) {
            (0, 1) | (2, 3) => 0,
            (0, 2) | (1, 3) => 1,
            _ => 2,
        }
    }

    /// The three connected sets of case (iii): `W∪X∪Y`, `W∪X∪Z`, `W∪Y∪Z` (blue, red, green roles).
    pub fn type_iii_sets(&self) -> [VertexSet; 3] {
        let join = |a: &VertexSet, b: &VertexSet, c: &VertexSet| a.iter().chain(b.iter()).chain(c.iter()).collect::<VertexSet>();
        [join(&self.w, &self.x, &self.y), join(&self.w, &self.x, &self.z), join(&self.w, &self.y, &self.z)]
    }
}

/// Case (i), (ii) or (iii) for `[n]`, following the maximal-component argument; the
/// certificate is validated before it is returned.
pub fn trichotomy<C: EdgeColoring + ?Sized>(coloring: &C) -> Result<TrichotomyCertificate> {
    let n = coloring.order();
    ensure!(n >= 2, Param, "need n ≥ 2");
    ensure!(!coloring.is_directed() && coloring.num_colors() == 3, Param, "need an undirected 3-coloring");
    let verts: Vec<Vertex> = (1..=n).collect();
    let comps: Vec<Vec<VertexSet>> = (0..3).map(|c| components_on(coloring, &verts, ColorId(c))).collect();
    let pick = |cands: Vec<(u8, &VertexSet)>| cands.into_iter().min_by_key(|(c, s)| (std::cmp::Reverse(s.len()), *c, s.members()[0])).map(|(c, s)| (ColorId(c), s.clone()));
    let (b, bset) = pick((0..3u8).map(|c| (c, &comps[c as usize][0])).collect()).expect("three colors");
    let empty = VertexSet::default();
    let mut cert = TrichotomyCertificate {
        n,
        case: TrichotomyCase::I,
        roles: [b, ColorId((b.0 + 1) % 3), ColorId((b.0 + 2) % 3)],
        spanning: None,
        w: VertexSet::default(),
        x: empty.clone(),
        y: empty.clone(),
        z: empty,
        transcript: Vec::new(),
    };
    if bset.len() == n as usize {
        cert.spanning = Some(b);
        cert.w = bset;
    } else {
        let u: VertexSet = verts.iter().copied().filter(|&v| !bset.contains(v)).collect();
        let others = [(b.0 + 1) % 3, (b.0 + 2) % 3];
        let meeting: Vec<(u8, &VertexSet)> = others
            .iter()
            .flat_map(|&c| comps[c as usize].iter().map(move |s| (c, s)))
            .filter(|(_, s)| s.iter().any(|v| bset.contains(v)) && s.iter().any(|v| u.contains(v)))
            .collect();
        let (r, rset) = pick(meeting).ok_or_else(|| Error::Internal("no component meets both B and its complement".into()))?;
        let g = ColorId(3 - b.0 - r.0);
        cert.roles = [b, r, g];
        let inter = |a: &VertexSet, f: &dyn Fn(Vertex) -> bool| a.iter().filter(|&v| f(v)).collect::<VertexSet>();
        if u.iter().any(|v| !rset.contains(v)) {
            cert.case = TrichotomyCase::II;
            cert.w = inter(&bset, &|v| rset.contains(v));
            cert.x = inter(&bset, &|v| !rset.contains(v));
            cert.y = inter(&u, &|v| rset.contains(v));
            cert.z = inter(&u, &|v| !rset.contains(v));
        } else {
            let u0 = u.members()[0];
            let gset = comps[g.index()].iter().find(|s| s.contains(u0)).expect("every vertex has a component").clone();
            cert.case = TrichotomyCase::III;
            cert.w = inter(&bset, &|v| rset.contains(v) && gset.contains(v));
            cert.x = inter(&bset, &|v| !gset.contains(v));
            cert.y = inter(&bset, &|v| !rset.contains(v));
            cert.z = u;
        }
    }
    cert.transcript = validate_trichotomy(coloring, &cert).map_err(|e| Error::Internal(format!("trichotomy certificate failed validation: {e}")))?;
    Ok(cert)
}

/// Check every stated block of a certificate edge by edge; returns the transcript.
pub fn validate_trichotomy<C: EdgeColoring + ?Sized>(c: &C, cert: &TrichotomyCertificate) -> Result<Vec<BlockCheck>> {
    let n = cert.n;
    ensure!(c.order() == n, Witness, "certificate is for [{n}], coloring has order {}", c.order());
    let mut transcript = Vec::new();
    if cert.case == TrichotomyCase::I {
        let col = cert.spanning.ok_or_else(|| Error::Witness("case (i) without a spanning color".into()))?;
        let verts: Vec<Vertex> = (1..=n).collect();
        ensure!(is_connected_in(c, &verts, col), Witness, "color {col} does not connect [{n}]");
        transcript.push(BlockCheck { block: format!("[n] connected in {col}"), edges: (n as u64) * (n as u64 - 1) / 2 });
        return Ok(transcript);
    }
    let parts = cert.parts();
    let mut all: Vec<Vertex> = parts.iter().flat_map(|p| p.iter()).collect();
    all.sort_unstable();
    ensure!(all == (1..=n).collect::<Vec<_>>(), Witness, "W, X, Y, Z do not partition [{n}]");
    let [b, r, g] = cert.roles;
    ensure!(b != r && r != g && b != g, Witness, "roles must be three distinct colors");
    let names = ["W", "X", "Y", "Z"];
    let mut block = |p: usize, q: usize, ok: &dyn Fn(ColorId) -> bool, what: String| -> Result<()> {
        let mut edges = 0;
        for u in parts[p].iter() {
            for v in parts[q].iter() {
                let col = c.color(u, v);
                ensure!(ok(col), Witness, "edge {{{u},{v}}} in [{},{}] has color {col}; expected {what}", names[p], names[q]);
                edges += 1;
            }
        }
        transcript.push(BlockCheck { block: format!("[{},{}] {what}", names[p], names[q]), edges });
        Ok(())
    };
    match cert.case {
        TrichotomyCase::II => {
            ensure!(parts.iter().all(|p| !p.is_empty()), Witness, "case (ii) needs four nonempty parts");
            for (p, q) in [(0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)] {
                let col = cert.roles[TrichotomyCertificate::type_ii_block_role(p, q)];
                block(p, q, &|x| x == col, format!("complete {col}"))?;
            }
        }
        TrichotomyCase::III => {
            ensure!(parts[1..].iter().all(|p| !p.is_empty()), Witness, "case (iii) needs X, Y, Z nonempty");
            block(1, 2, &|x| x == b, format!("complete {b}"))?;
            block(1, 3, &|x| x == r, format!("complete {r}"))?;
            block(2, 3, &|x| x == g, format!("complete {g}"))?;
            block(0, 1, &|x| x != g, format!("no {g}"))?;
            block(0, 2, &|x| x != r, format!("no {r}"))?;
            block(0, 3, &|x| x != b, format!("no {b}"))?;
            let sets = cert.type_iii_sets();
            for (set, col, name) in [(&sets[0], b, "W∪X∪Y"), (&sets[1], r, "W∪X∪Z"), (&sets[2], g, "W∪Y∪Z")] {
                ensure!(is_connected_in(c, set.members(), col), Witness, "{name} is not connected in {col}");
                let k = set.len() as u64;
                transcript.push(BlockCheck { block: format!("{name} connected in {col}"), edges: k * k.saturating_sub(1) / 2 });
            }
        }
        TrichotomyCase::I => unreachable!(),
    }
    Ok(transcript)
}

/// Parts (0..4 for W, X, Y, Z) that a new vertex `v` can join while keeping the case (ii)
/// block structure: every edge from `v` to part `q` has the color of the block `[p, q]`.
pub fn type_ii_slots<C: EdgeColoring + ?Sized>(c: &C, cert: &TrichotomyCertificate, v: Vertex) -> Vec<usize> {
    let parts = cert.parts();
    (0..4)
        .filter(|&p| {
            (0..4).filter(|&q| q != p).all(|q| {
                let col = cert.roles[TrichotomyCertificate::type_ii_block_role(p, q)];
                parts[q].iter().all(|u| c.color(v, u) == col)
            })
        })
        .collect()
}

/// Extend a case (ii) certificate on `[n]` by the vertex `n + 1`; `None` when no part accepts it.
pub fn extend_type_ii<C: EdgeColoring + ?Sized>(c: &C, cert: &TrichotomyCertificate) -> Result<Option<TrichotomyCertificate>> {
    ensure!(cert.case == TrichotomyCase::II, Param, "only case (ii) certificates extend");
    let v = cert.n + 1;
    ensure!(v <= c.order(), Param, "coloring has no vertex {v}");
    let slots = type_ii_slots(c, cert, v);
    ensure!(slots.len() <= 1, Internal, "vertex {v} fits {} parts", slots.len());
    Ok(slots.first().map(|&p| {
        let mut next = cert.clone();
        next.n = v;
        let part = match p {
            0 => &mut next.w,
            1 => &mut next.x,
            2 => &mut next.y,
            _ => &mut next.z,
        };
        *part = part.iter().chain(std::iter::once(v)).collect();
        next.transcript.clear();
        next
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorings::ColorTable;
    use crate::{BLUE, GREEN, RED};

    #[test]
    fn all_red_is_case_i() {
        let t = ColorTable::new(5, 3, false);
        let cert = trichotomy(&t).unwrap();
        assert_eq!(cert.case, TrichotomyCase::I);
        assert_eq!(cert.spanning, Some(RED));
    }

    #[test]
    fn four_singletons_case_ii() {
        // W=1, X=2, Y=3, Z=4.
        let mut t = ColorTable::new(4, 3, false);
        t.set(1, 2, BLUE);
        t.set(3, 4, BLUE);
        t.set(1, 3, RED);
        t.set(2, 4, RED);
        t.set(1, 4, GREEN);
        t.set(2, 3, GREEN);
        let cert = trichotomy(&t).unwrap();
        assert_eq!(cert.case, TrichotomyCase::II);
        assert_eq!(cert.transcript.len(), 6);
        assert!(cert.parts().iter().all(|p| p.len() == 1));
    }
}
