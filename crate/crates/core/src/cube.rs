//! The cube of resolutions and its total complex.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{algebra_for, default_degree_cap, AlgebraError, GradedAlgebra};
use crate::arith::{LaurentPoly, RatFunc, SparseMatrix, SparseVec};
use crate::braid::{DecoratedDiagram, Sign};
use crate::resolution::{RelationMode, ResolutionAssignment, ResolutionError, ResolutionGraph, ResolutionKey, DEFAULT_SUBSET_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error("edge {from} -> {to} does not flip exactly one crossing from 0 to 1")]
    NotAnEdge { from: String, to: String },
    #[error("D^2 != 0 in Alexander grading {a_prime} from Maslov grading {m}")]
    DSquared { a_prime: i64, m: i64 },
    #[error("2-face at {from} flipping crossings {p} and {q} does not anticommute")]
    Face { from: String, p: usize, q: usize },
    #[error("half-integer grading in a knot complex at vertex {0}")]
    HalfInteger(String),
    #[error("{0} crossings is too many for a full cube")]
    TooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Unzip,
    Zip,
}

/// Sign conventions; anything but `Standard` exists to exercise the checks.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum SignRule {
    #[default]
    Standard,
    /// Standard rule with crossings ranked by the given order.
    Reordered(Vec<usize>),
    /// Every edge positive: breaks anticommutation on purpose.
    AllPositive,
}

impl SignRule {
    /// `ε(I < I + p)`: parity of the 1-bits of `I` ranked before `p`.
    pub fn sign(&self, from: u64, p: usize, n: usize) -> i64 {
        let rank = |q: usize| match self {
            SignRule::Reordered(order) => order.iter().position(|&x| x == q).expect("order is a permutation"),
            _ => q,
        };
        match self {
            SignRule::AllPositive => 1,
            _ => {
                let count = (0..n).filter(|&q| from >> q & 1 == 1 && rank(q) < rank(p)).count();
                if count % 2 == 0 { 1 } else { -1 }
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct CubeConfig {
    pub mode: RelationMode,
    pub subset_cap: usize,
    /// `None` means `2n + 2`.
    pub degree_cap: Option<usize>,
    pub check_faces: bool,
    pub signs: SignRule,
}

impl CubeConfig {
    /// Defaults that depend on the crossing count.
    pub fn for_crossings(n: usize) -> Self {
        CubeConfig {
            mode: if n <= 6 { RelationMode::All } else { RelationMode::CoherentCycles },
            subset_cap: DEFAULT_SUBSET_CAP,
            degree_cap: None,
            check_faces: n <= 8,
            signs: SignRule::Standard,
        }
    }
}

/// Edge map blocks indexed by source degree.
pub type EdgeBlocks = Vec<SparseMatrix>;

type AlgKey = (ResolutionKey, RelationMode);

/// Shared memo of algebras and unsigned edge maps. Both depend only on the
/// resolution graph, so braids with the same generator sequence share them.
#[derive(Default)]
pub struct Memo {
    algebras: RwLock<HashMap<AlgKey, Arc<GradedAlgebra>>>,
    edges: RwLock<HashMap<(AlgKey, usize), Arc<EdgeBlocks>>>,
}

impl Memo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn algebra_count(&self) -> usize {
        self.algebras.read().expect("memo lock").len()
    }

    fn algebra(&self, g: &ResolutionGraph, cfg: &CubeConfig) -> Result<Arc<GradedAlgebra>, AlgebraError> {
        let key = (g.key().clone(), cfg.mode);
        if let Some(a) = self.algebras.read().expect("memo lock").get(&key) {
            return Ok(a.clone());
        }
        let cap = cfg.degree_cap.unwrap_or_else(|| default_degree_cap(g.crossing_count()));
        let a = Arc::new(algebra_for(g, cfg.mode, cfg.subset_cap, cap)?);
        self.algebras.write().expect("memo lock").insert(key, a.clone());
        Ok(a)
    }
}

/// Unzip: reduce each basis monomial. Zip: multiply by `t U_a - U_d` first.
pub fn edge_map(from: &GradedAlgebra, to: &GradedAlgebra, to_graph: &ResolutionGraph, kind: EdgeKind, crossing: usize) -> EdgeBlocks {
    let (a, _, _, d_edge) = to_graph.labels(crossing);
    (0..from.top_degree())
        .map(|deg| {
            let target = if kind == EdgeKind::Zip { deg + 1 } else { deg };
            let cols: Vec<SparseVec> = (0..from.dim(deg))
                .map(|i| {
                    let m = from.basis_monomial(deg, i);
                    let poly = match kind {
                        EdgeKind::Unzip => vec![(RatFunc::one(), m)],
                        EdgeKind::Zip => {
                            let mut ma = m.clone();
                            ma.push(a);
                            let mut md = m;
                            md.push(d_edge);
                            vec![(RatFunc::t(), ma), (-RatFunc::one(), md)]
                        }
                    };
                    to.reduce_in_degree(target, &poly)
                })
                .collect();
            SparseMatrix::from_rows(to.dim(target), cols).transpose()
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct CubeVertex {
    pub assignment: ResolutionAssignment,
    pub graph: ResolutionGraph,
    pub algebra: Arc<GradedAlgebra>,
    /// Twice the Alexander renormalization, `-N + |I|`.
    pub shift_ap2: i64,
}

#[derive(Debug, Clone)]
pub struct CubeEdge {
    pub from: u64,
    pub to: u64,
    pub crossing: usize,
    pub kind: EdgeKind,
    pub sign: i64,
    pub blocks: Arc<EdgeBlocks>,
}

pub struct Cube {
    pub diagram: DecoratedDiagram,
    pub vertices: Vec<CubeVertex>,
    /// edges out of each vertex, by crossing
    pub edges: Vec<Vec<CubeEdge>>,
    pub config: CubeConfig,
}

pub const MAX_CUBE_CROSSINGS: usize = 24;

impl Cube {
    pub fn build(d: &DecoratedDiagram, cfg: &CubeConfig, memo: &Memo) -> Result<Self, CubeError> {
        let n = d.crossings().len();
        if n > MAX_CUBE_CROSSINGS {
            return Err(CubeError::TooLarge(n));
        }
        let negatives = d.word().negative_count() as i64;
        let vertices: Vec<CubeVertex> = (0..1u64 << n)
            .into_par_iter()
            .map(|mask| {
                let assignment = ResolutionAssignment::from_mask(n, mask);
                let graph = ResolutionGraph::new(d, &assignment)?;
                let algebra = memo.algebra(&graph, cfg)?;
                let shift_ap2 = assignment.ones() as i64 - negatives;
                Ok(CubeVertex { assignment, graph, algebra, shift_ap2 })
            })
            .collect::<Result<_, CubeError>>()?;
        let edges: Vec<Vec<CubeEdge>> = (0..1u64 << n)
            .into_par_iter()
            .map(|from| {
                (0..n)
                    .filter(|p| from >> p & 1 == 0)
                    .map(|p| {
                        let to = from | 1 << p;
                        let kind = if d.crossings()[p].sign == Sign::Positive { EdgeKind::Unzip } else { EdgeKind::Zip };
                        let key = ((vertices[from as usize].graph.key().clone(), cfg.mode), p);
                        let cached = memo.edges.read().expect("memo lock").get(&key).cloned();
                        let blocks = match cached {
                            Some(b) => b,
                            None => {
                                let (f, t) = (&vertices[from as usize], &vertices[to as usize]);
                                let b = Arc::new(edge_map(&f.algebra, &t.algebra, &t.graph, kind, p));
                                memo.edges.write().expect("memo lock").insert(key, b.clone());
                                b
                            }
                        };
                        CubeEdge { from, to, crossing: p, kind, sign: cfg.signs.sign(from, p, n), blocks }
                    })
                    .collect()
            })
            .collect();
        let cube = Cube { diagram: d.clone(), vertices, edges, config: cfg.clone() };
        if cfg.check_faces {
            cube.check_faces()?;
        }
        Ok(cube)
    }

    pub fn crossing_count(&self) -> usize {
        self.diagram.crossings().len()
    }

    fn edge(&self, from: u64, p: usize) -> &CubeEdge {
        self.edges[from as usize].iter().find(|e| e.crossing == p).expect("edge exists")
    }

    /// Edge block out of source degree `d`, zero-filled to the right shape.
    pub fn block(&self, e: &CubeEdge, d: usize) -> SparseMatrix {
        let rows = self.vertices[e.to as usize].algebra.dim(Self::target_degree(e.kind, d));
        let cols = self.vertices[e.from as usize].algebra.dim(d);
        match e.blocks.get(d) {
            Some(b) => b.clone(),
            None => SparseMatrix::zeros(rows, cols),
        }
    }

    /// Source degree shift of an edge: zip raises U-degree by one.
    fn target_degree(kind: EdgeKind, d: usize) -> usize {
        if kind == EdgeKind::Zip { d + 1 } else { d }
    }

    /// Signed sum of the two paths around every 2-face must vanish.
    pub fn check_faces(&self) -> Result<(), CubeError> {
        let n = self.crossing_count();
        let faces: Vec<(u64, usize, usize)> = (0..1u64 << n)
            .flat_map(|i| {
                (0..n).flat_map(move |p| (p + 1..n).map(move |q| (i, p, q))).filter(move |(i, p, q)| i >> p & 1 == 0 && i >> q & 1 == 0)
            })
            .collect();
        faces.into_par_iter().try_for_each(|(i, p, q)| {
            let bad = || CubeError::Face { from: ResolutionAssignment::from_mask(n, i).to_string(), p, q };
            let (ep, eq) = (self.edge(i, p), self.edge(i, q));
            let (epq, eqp) = (self.edge(i | 1 << p, q), self.edge(i | 1 << q, p));
            for d in 0..self.vertices[i as usize].algebra.top_degree() {
                let path = |first: &CubeEdge, second: &CubeEdge| -> Result<SparseMatrix, CubeError> {
                    let mid = Self::target_degree(first.kind, d);
                    let prod = self.block(second, mid).mul(&self.block(first, d)).map_err(|_| bad())?;
                    Ok(prod.scale(&RatFunc::from_int(first.sign * second.sign)))
                };
                let x = path(ep, epq)?;
                let y = path(eq, eqp)?;
                if !x.add(&y).map_err(|_| bad())?.is_zero() {
                    return Err(bad());
                }
            }
            Ok(())
        })
    }

    /// Groups per (A', M) and the differential between them.
    pub fn total_complex(&self) -> Result<TotalComplex, CubeError> {
        let mut slices: BTreeMap<i64, Slice> = BTreeMap::new();
        for (mask, v) in self.vertices.iter().enumerate() {
            for d in 0..v.algebra.top_degree() {
                let m = v.algebra.a2_of_degree(d);
                let ap2 = m + v.shift_ap2;
                if ap2 % 2 != 0 {
                    return Err(CubeError::HalfInteger(v.assignment.to_string()));
                }
                let group = slices.entry(ap2 / 2).or_default().groups.entry(m).or_default();
                let offset = group.iter().map(|b| b.dim).sum();
                group.push(Block { vertex: mask as u64, degree: d, offset, dim: v.algebra.dim(d) });
            }
        }
        for slice in slices.values_mut() {
            let ms: Vec<i64> = slice.groups.keys().copied().collect();
            for m in ms {
                let src = &slice.groups[&m];
                let Some(dst) = slice.groups.get(&(m - 1)) else { continue };
                let rows = dst.iter().map(|b| b.dim).sum();
                let cols: usize = src.iter().map(|b| b.dim).sum();
                let at: HashMap<(u64, usize), &Block> = dst.iter().map(|b| ((b.vertex, b.degree), b)).collect();
                let mut col_vecs: Vec<Vec<(usize, RatFunc)>> = vec![Vec::new(); cols];
                for b in src {
                    for e in &self.edges[b.vertex as usize] {
                        let td = Self::target_degree(e.kind, b.degree);
                        let Some(tb) = at.get(&(e.to, td)) else { continue };
                        let block = &e.blocks[b.degree];
                        let sign = RatFunc::from_int(e.sign);
                        for (r, c, v) in block.iter() {
                            col_vecs[b.offset + c].push((tb.offset + r, v * &sign));
                        }
                    }
                }
                let mat = SparseMatrix::from_rows(rows, col_vecs.into_iter().map(SparseVec::from_pairs).collect()).transpose();
                slice.diffs.insert(m, mat);
            }
        }
        let tc = TotalComplex { slices };
        tc.check_d_squared()?;
        Ok(tc)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Block {
    pub vertex: u64,
    pub degree: usize,
    pub offset: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, Default)]
pub struct Slice {
    /// Maslov grading -> blocks
    pub groups: BTreeMap<i64, Vec<Block>>,
    /// source Maslov grading -> matrix into `m - 1`
    pub diffs: BTreeMap<i64, SparseMatrix>,
}

impl Slice {
    pub fn dim(&self, m: i64) -> usize {
        self.groups.get(&m).map_or(0, |g| g.iter().map(|b| b.dim).sum())
    }
}

#[derive(Debug, Clone, Default)]
pub struct TotalComplex {
    /// Alexander grading A' -> slice
    pub slices: BTreeMap<i64, Slice>,
}

impl TotalComplex {
    pub fn check_d_squared(&self) -> Result<(), CubeError> {
        for (&ap, s) in &self.slices {
            for (&m, d1) in &s.diffs {
                if let Some(d2) = s.diffs.get(&(m - 1)) {
                    let sq = d2.mul(d1).map_err(|_| CubeError::DSquared { a_prime: ap, m })?;
                    if !sq.is_zero() {
                        return Err(CubeError::DSquared { a_prime: ap, m });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn total_dim(&self) -> usize {
        self.slices.values().map(|s| s.groups.keys().map(|m| s.dim(*m)).sum::<usize>()).sum()
    }

    /// Euler characteristic `sum (-1)^M dim T^A'` of each cube column, indexed
    /// by the number of 1-resolutions.
    pub fn column_euler(&self, crossings: usize) -> Vec<LaurentPoly> {
        let mut cols = vec![LaurentPoly::zero(); crossings + 1];
        for (&ap, s) in &self.slices {
            for (&m, blocks) in &s.groups {
                let sign: i64 = if m.rem_euclid(2) == 0 { 1 } else { -1 };
                for b in blocks {
                    cols[b.vertex.count_ones() as usize].add_term((sign * b.dim as i64).into(), ap);
                }
            }
        }
        cols
    }
}
