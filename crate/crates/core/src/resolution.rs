//! Complete resolutions of a decorated diagram as oriented plane graphs.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::braid::{DecoratedDiagram, DiagramVertex, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolutionError {
    #[error("assignment has {got} bits but the diagram has {want} crossings")]
    Length { got: usize, want: usize },
    #[error("bad assignment bit `{0}` (expected 0 or 1)")]
    BadBit(char),
    #[error("{vertices} vertices exceed the subset cap {cap}; use the coherent_cycles mode")]
    SubsetCap { vertices: usize, cap: usize },
}

/// Bit per crossing, in crossing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResolutionAssignment(pub Vec<bool>);

impl ResolutionAssignment {
    pub fn zeros(n: usize) -> Self {
        ResolutionAssignment(vec![false; n])
    }

    /// Bit `k` of `mask` is crossing `k`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        ResolutionAssignment((0..n).map(|k| mask >> k & 1 == 1).collect())
    }

    pub fn mask(&self) -> u64 {
        self.0.iter().enumerate().fold(0, |m, (k, &b)| m | (b as u64) << k)
    }

    pub fn parse(bits: &str, n: usize) -> Result<Self, ResolutionError> {
        let v = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(ResolutionError::BadBit(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if v.len() != n {
            return Err(ResolutionError::Length { got: v.len(), want: n });
        }
        Ok(ResolutionAssignment(v))
    }

    pub fn ones(&self) -> usize {
        self.0.iter().filter(|b| **b).count()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for ResolutionAssignment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in &self.0 {
            write!(f, "{}", if *b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// Positive crossings are singular at 0, negative ones at 1.
pub fn is_singular(sign: Sign, bit: bool) -> bool {
    (sign == Sign::Positive) != bit
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Vertex {
    Singular(usize),
    Half(usize, Side),
    Marked,
}

impl Vertex {
    pub fn weight(self) -> usize {
        match self {
            Vertex::Singular(_) => 2,
            Vertex::Half(..) => 1,
            Vertex::Marked => 0,
        }
    }
}

/// The graph depends only on the generator sequence and which crossings are
/// singular, so this is the memoization key for everything built on it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResolutionKey {
    pub strands: usize,
    pub generators: Vec<usize>,
    pub singular: Vec<bool>,
}

/// Face id in the original projection: 0 outer, 1 right, `2 + k` the face
/// just above letter `k`, `2 + n + g` an inner gap with no letter.
pub type FaceId = usize;

#[derive(Debug, Clone)]
pub struct ResolutionGraph {
    key: ResolutionKey,
    vertices: Vec<Vertex>,
    tails: Vec<usize>,
    heads: Vec<usize>,
    /// per edge: (position, height) from the diagram
    edge_geom: Vec<(usize, usize)>,
    /// per crossing: (a, b, c, d)
    labels: Vec<(usize, usize, usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VertexSubset {
    /// Bit `i` set for vertex index `i` (never the marked vertex).
    pub members: u64,
    pub weight: usize,
    /// Edges from `W` to its complement.
    pub out_boundary: Vec<usize>,
    /// Edges from the complement into `W`.
    pub in_boundary: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationMode {
    All,
    CoherentCycles,
}

impl std::str::FromStr for RelationMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(RelationMode::All),
            "coherent" | "coherent_cycles" | "coherent-cycles" => Ok(RelationMode::CoherentCycles),
            other => Err(format!("unknown relation mode `{other}` (all | coherent_cycles)")),
        }
    }
}

pub const DEFAULT_SUBSET_CAP: usize = 22;

impl ResolutionGraph {
    pub fn new(d: &DecoratedDiagram, a: &ResolutionAssignment) -> Result<Self, ResolutionError> {
        let n = d.crossings().len();
        if a.len() != n {
            return Err(ResolutionError::Length { got: a.len(), want: n });
        }
        let singular = d.crossings().iter().zip(&a.0).map(|(c, &b)| is_singular(c.sign, b)).collect();
        let key = ResolutionKey {
            strands: d.strands(),
            generators: d.crossings().iter().map(|c| c.generator).collect(),
            singular,
        };
        let geom = d.edges().iter().map(|e| (e.position, e.height)).collect::<Vec<_>>();
        let ends: Vec<(DiagramVertex, DiagramVertex)> = d.edges().iter().map(|e| (e.tail, e.head)).collect();
        let labels = d.crossings().iter().map(|c| (c.a, c.b, c.c, c.d)).collect();
        Ok(Self::assemble(key, geom, &ends, labels))
    }

    fn assemble(
        key: ResolutionKey,
        edge_geom: Vec<(usize, usize)>,
        ends: &[(DiagramVertex, DiagramVertex)],
        labels: Vec<(usize, usize, usize, usize)>,
    ) -> Self {
        let mut vertices = Vec::new();
        // vertex index of crossing k's left/right part (equal when singular)
        let mut at = Vec::with_capacity(key.singular.len());
        for (k, &s) in key.singular.iter().enumerate() {
            if s {
                at.push((vertices.len(), vertices.len()));
                vertices.push(Vertex::Singular(k));
            } else {
                at.push((vertices.len(), vertices.len() + 1));
                vertices.push(Vertex::Half(k, Side::Left));
                vertices.push(Vertex::Half(k, Side::Right));
            }
        }
        let marked = vertices.len();
        vertices.push(Vertex::Marked);
        let mut tails = vec![0; ends.len()];
        let mut heads = vec![0; ends.len()];
        for (e, (t, h)) in ends.iter().enumerate() {
            tails[e] = match *t {
                DiagramVertex::Marked => marked,
                // outgoing a is the left half, b the right half
                DiagramVertex::Crossing(k) => if labels[k].0 == e { at[k].0 } else { at[k].1 },
            };
            heads[e] = match *h {
                DiagramVertex::Marked => marked,
                // incoming c is the left half, d the right half
                DiagramVertex::Crossing(k) => if labels[k].2 == e { at[k].0 } else { at[k].1 },
            };
        }
        ResolutionGraph { key, vertices, tails, heads, edge_geom, labels }
    }

    pub fn key(&self) -> &ResolutionKey {
        &self.key
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.tails.len()
    }

    pub fn tail(&self, e: usize) -> usize {
        self.tails[e]
    }

    pub fn head(&self, e: usize) -> usize {
        self.heads[e]
    }

    pub fn marked(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn strands(&self) -> usize {
        self.key.strands
    }

    pub fn crossing_count(&self) -> usize {
        self.key.singular.len()
    }

    /// Edge labels `(a, b, c, d)` of crossing `k`.
    pub fn labels(&self, k: usize) -> (usize, usize, usize, usize) {
        self.labels[k]
    }

    pub fn is_singular(&self, k: usize) -> bool {
        self.key.singular[k]
    }

    /// Number of singular vertices.
    pub fn sigma(&self) -> usize {
        self.key.singular.iter().filter(|s| **s).count()
    }

    pub fn total_weight(&self) -> usize {
        self.vertices.iter().map(|v| v.weight()).sum()
    }

    /// Component label per vertex, and the number of components.
    pub fn connected_components(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in 0..self.edge_count() {
            uf.union(self.tails[e], self.heads[e]);
        }
        uf.labels()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().1 == 1
    }

    /// Weight and boundary edge sets of a vertex subset given as a bitmask.
    pub fn subset(&self, members: u64) -> VertexSubset {
        debug_assert_eq!(members >> self.marked() & 1, 0, "marked vertex is never in W");
        let weight = self.vertices.iter().enumerate().filter(|(i, _)| members >> i & 1 == 1).map(|(_, v)| v.weight()).sum();
        let (mut out_boundary, mut in_boundary) = (Vec::new(), Vec::new());
        for e in 0..self.edge_count() {
            let (t, h) = (members >> self.tails[e] & 1 == 1, members >> self.heads[e] & 1 == 1);
            if t && !h {
                out_boundary.push(e);
            } else if h && !t {
                in_boundary.push(e);
            }
        }
        VertexSubset { members, weight, out_boundary, in_boundary }
    }

    /// Streams the vertex subsets that generate relations in the given mode.
    pub fn enumerate_subsets(
        &self,
        mode: RelationMode,
        cap: usize,
    ) -> Result<Box<dyn Iterator<Item = VertexSubset> + '_>, ResolutionError> {
        let m = self.marked();
        match mode {
            RelationMode::All => {
                if m > cap || m > 63 {
                    return Err(ResolutionError::SubsetCap { vertices: m, cap });
                }
                Ok(Box::new((1u64..(1u64 << m)).map(move |mask| self.subset(mask))))
            }
            RelationMode::CoherentCycles => {
                let mut masks: BTreeSet<u64> = (0..m).map(|i| 1u64 << i).collect();
                masks.extend(self.coherent_cycle_regions());
                Ok(Box::new(masks.into_iter().map(move |mask| self.subset(mask))))
            }
        }
    }

    // --- faces -----------------------------------------------------------

    fn letters(&self) -> usize {
        self.key.generators.len()
    }

    pub fn face_count(&self) -> usize {
        2 + self.letters() + self.key.strands
    }

    /// Face of the original projection in gap `g` (between positions `g` and
    /// `g + 1`) just above height `h`.
    pub fn face_at(&self, g: usize, h: usize) -> FaceId {
        let n = self.letters();
        if g == 0 {
            return 0;
        }
        if g == self.key.strands {
            return 1;
        }
        let gens = &self.key.generators;
        (0..h.min(n))
            .rev()
            .find(|&k| gens[k] == g)
            .or_else(|| (0..n).rev().find(|&k| gens[k] == g))
            .map(|k| 2 + k)
            .unwrap_or(2 + n + g)
    }

    /// Faces (left, right) of edge `e`.
    pub fn edge_faces(&self, e: usize) -> (FaceId, FaceId) {
        let (p, h) = self.edge_geom[e];
        (self.face_at(p - 1, h), self.face_at(p, h))
    }

    /// Corner faces (left, right, top, bottom) of crossing `k`.
    pub fn crossing_corners(&self, k: usize) -> [FaceId; 4] {
        let g = self.key.generators[k];
        [self.face_at(g - 1, k + 1), self.face_at(g + 1, k + 1), 2 + k, self.face_at(g, k)]
    }

    /// The two faces adjoining the distinguished edge.
    pub fn distinguished_faces(&self) -> (FaceId, FaceId) {
        self.edge_faces(0)
    }

    /// Generalized Kauffman states: bijections from crossings to the regions
    /// not adjoining the distinguished edge, through allowed corners. A
    /// singular crossing may use its left, right, or (twice) its bottom
    /// corner; a smoothed one its top or bottom corner.
    pub fn count_kauffman_states(&self) -> u64 {
        let n = self.letters();
        let (f0, f1) = self.distinguished_faces();
        let allowed: Vec<Vec<(FaceId, u64)>> = (0..n)
            .map(|k| {
                let [l, r, t, b] = self.crossing_corners(k);
                let opts = if self.key.singular[k] { vec![(l, 1), (r, 1), (b, 2)] } else { vec![(t, 1), (b, 1)] };
                opts.into_iter().filter(|(f, _)| *f != f0 && *f != f1).collect()
            })
            .collect();
        // every inner gap of a knot diagram carries a letter, so the faces are
        // exactly outer, right and one per letter
        let regions = (0..2 + n).filter(|f| *f != f0 && *f != f1).count();
        if regions != n {
            return 0;
        }
        let mut used = BTreeSet::new();
        fn go(k: usize, allowed: &[Vec<(FaceId, u64)>], used: &mut BTreeSet<FaceId>) -> u64 {
            if k == allowed.len() {
                return 1;
            }
            let mut total = 0;
            for &(f, mult) in &allowed[k] {
                if used.insert(f) {
                    total += mult * go(k + 1, allowed, used);
                    used.remove(&f);
                }
            }
            total
        }
        go(0, &allowed, &mut used)
    }

    /// Faces of this resolution: original faces merged across every smoothing.
    fn resolved_faces(&self) -> UnionFind {
        let mut uf = UnionFind::new(self.face_count());
        for k in 0..self.letters() {
            if !self.key.singular[k] {
                let [_, _, t, b] = self.crossing_corners(k);
                uf.union(t, b);
            }
        }
        uf
    }

    fn vertex_faces(&self, v: usize) -> Vec<FaceId> {
        match self.vertices[v] {
            Vertex::Singular(k) => self.crossing_corners(k).to_vec(),
            Vertex::Half(k, Side::Left) => {
                let [l, _, t, b] = self.crossing_corners(k);
                vec![l, t, b]
            }
            Vertex::Half(k, Side::Right) => {
                let [_, r, t, b] = self.crossing_corners(k);
                vec![r, t, b]
            }
            Vertex::Marked => {
                let (a, b) = self.distinguished_faces();
                vec![a, b]
            }
        }
    }

    /// Directed simple cycles avoiding the marked vertex, as edge lists.
    pub fn simple_cycles(&self) -> Vec<Vec<usize>> {
        let m = self.marked();
        let mut out_edges = vec![Vec::new(); self.vertices.len()];
        for e in 0..self.edge_count() {
            if self.tails[e] != m && self.heads[e] != m {
                out_edges[self.tails[e]].push(e);
            }
        }
        let mut cycles = Vec::new();
        for s in 0..m {
            let mut path = Vec::new();
            let mut on_path = vec![false; self.vertices.len()];
            on_path[s] = true;
            self.cycle_dfs(s, s, &out_edges, &mut path, &mut on_path, &mut cycles);
        }
        cycles
    }

    fn cycle_dfs(
        &self,
        start: usize,
        v: usize,
        out_edges: &[Vec<usize>],
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        cycles: &mut Vec<Vec<usize>>,
    ) {
        for &e in &out_edges[v] {
            let h = self.heads[e];
            if h == start {
                let mut c = path.clone();
                c.push(e);
                cycles.push(c);
            } else if h > start && !on_path[h] {
                on_path[h] = true;
                path.push(e);
                self.cycle_dfs(start, h, out_edges, path, on_path, cycles);
                path.pop();
                on_path[h] = false;
            }
        }
    }

    /// For each simple cycle, the vertices on it or on the side away from
    /// the distinguished edge.
    fn coherent_cycle_regions(&self) -> Vec<u64> {
        let faces = self.resolved_faces();
        let m = self.marked();
        let mut out = Vec::new();
        for cyc in self.simple_cycles() {
            let mut on_z = vec![false; self.edge_count()];
            for &e in &cyc {
                on_z[e] = true;
            }
            let mut sides = faces.clone();
            for e in (0..self.edge_count()).filter(|e| !on_z[*e]) {
                let (l, r) = self.edge_faces(e);
                sides.union(l, r);
            }
            let outside = sides.find(self.distinguished_faces().0);
            let mut mask = 0u64;
            for &e in &cyc {
                mask |= 1 << self.tails[e];
            }
            for v in 0..m {
                if self.vertex_faces(v).iter().any(|&f| sides.find(f) != outside) {
                    mask |= 1 << v;
                }
            }
            out.push(mask);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices,
            "weights": self.vertices.iter().map(|v| v.weight()).collect::<Vec<_>>(),
            "edges": (0..self.edge_count()).map(|e| serde_json::json!({"id": e, "tail": self.tails[e], "head": self.heads[e]})).collect::<Vec<_>>(),
            "sigma": self.sigma(),
        })
    }
}

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Dense component labels in order of first appearance.
    pub(crate) fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut map = vec![usize::MAX; n];
        let mut next = 0;
        let mut out = vec![0; n];
        for i in 0..n {
            let r = self.find(i);
            if map[r] == usize::MAX {
                map[r] = next;
                next += 1;
            }
            out[i] = map[r];
        }
        (out, next)
    }
}
