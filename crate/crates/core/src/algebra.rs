//! The graded algebra of a complete resolution, over Q(t) with `U0 = 0`.
//!
//! Linear relations are solved first, leaving a polynomial ring in the free
//! edge variables. Each graded piece of the ideal is then the span of the
//! previous piece times the variables plus the relations of that degree.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{rref_rows, Rref, RatFunc, SparseVec};
use crate::resolution::{RelationMode, ResolutionError, ResolutionGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error("algebra did not vanish by degree {cap}")]
    DegreeCap { cap: usize },
    #[error("subset relation with boundary sizes {out} and {inn} is not homogeneous")]
    Inhomogeneous { out: usize, inn: usize },
    #[error("edge {edge} out of range for {edges} edges")]
    EdgeRange { edge: usize, edges: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    Hat,
    LinearSingular,
    QuadraticSingular,
    SmoothLeft,
    SmoothRight,
    Subset,
}

/// `coeff * t^t_pow * prod U_v`
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Term {
    pub coeff: i64,
    pub t_pow: u32,
    pub vars: Vec<usize>,
}

impl Term {
    fn new(t_pow: u32, mut vars: Vec<usize>) -> Self {
        vars.sort_unstable();
        Term { coeff: 1, t_pow, vars }
    }

    fn value(&self) -> RatFunc {
        RatFunc::t_pow(self.t_pow as usize).scale(&num_rational::BigRational::from_integer(self.coeff.into()))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.coeff != 1 || (self.t_pow == 0 && self.vars.is_empty()) {
            parts.push(self.coeff.to_string());
        }
        match self.t_pow {
            0 => {}
            1 => parts.push("t".into()),
            k => parts.push(format!("t^{k}")),
        }
        parts.extend(self.vars.iter().map(|v| format!("U{v}")));
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Relation {
    pub kind: RelationKind,
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
}

impl Relation {
    /// Common U-degree of all terms, or `None` if the relation mixes degrees.
    pub fn degree(&self) -> Option<usize> {
        let degs: BTreeSet<usize> = self.lhs.iter().chain(&self.rhs).map(|t| t.vars.len()).collect();
        match degs.len() {
            0 => Some(0),
            1 => degs.into_iter().next(),
            _ => None,
        }
    }

    /// `lhs - rhs` as (coefficient, variables) terms.
    pub fn polynomial(&self) -> Vec<(RatFunc, Vec<usize>)> {
        let mut out: Vec<_> = self.lhs.iter().map(|t| (t.value(), t.vars.clone())).collect();
        out.extend(self.rhs.iter().map(|t| (-t.value(), t.vars.clone())));
        out
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |ts: &[Term]| {
            if ts.is_empty() {
                "0".to_string()
            } else {
                ts.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" + ")
            }
        };
        write!(f, "{} = {}", side(&self.lhs), side(&self.rhs))
    }
}

/// Vertex relations, the subset relations of `mode`, and `U0 = 0`.
pub fn generate_relations(g: &ResolutionGraph, mode: RelationMode, cap: usize) -> Result<Vec<Relation>, AlgebraError> {
    let mut rels = vec![Relation { kind: RelationKind::Hat, lhs: vec![Term::new(0, vec![0])], rhs: vec![] }];
    for k in 0..g.crossing_count() {
        let (a, b, c, d) = g.labels(k);
        if g.is_singular(k) {
            rels.push(Relation {
                kind: RelationKind::LinearSingular,
                lhs: vec![Term::new(1, vec![a]), Term::new(1, vec![b])],
                rhs: vec![Term::new(0, vec![c]), Term::new(0, vec![d])],
            });
            rels.push(Relation {
                kind: RelationKind::QuadraticSingular,
                lhs: vec![Term::new(2, vec![a, b])],
                rhs: vec![Term::new(0, vec![c, d])],
            });
        } else {
            rels.push(Relation { kind: RelationKind::SmoothLeft, lhs: vec![Term::new(1, vec![a])], rhs: vec![Term::new(0, vec![c])] });
            rels.push(Relation { kind: RelationKind::SmoothRight, lhs: vec![Term::new(1, vec![b])], rhs: vec![Term::new(0, vec![d])] });
        }
    }
    let mut seen = BTreeSet::new();
    for w in g.enumerate_subsets(mode, cap)? {
        if w.out_boundary.len() != w.in_boundary.len() {
            return Err(AlgebraError::Inhomogeneous { out: w.out_boundary.len(), inn: w.in_boundary.len() });
        }
        if seen.insert((w.weight, w.out_boundary.clone(), w.in_boundary.clone())) {
            rels.push(Relation {
                kind: RelationKind::Subset,
                lhs: vec![Term::new(w.weight as u32, w.out_boundary)],
                rhs: vec![Term::new(0, w.in_boundary)],
            });
        }
    }
    Ok(rels)
}

/// Exponent vector over the free variables.
pub type Mono = Vec<u8>;

/// Polynomial in the free variables.
type MPoly = BTreeMap<Mono, RatFunc>;

#[derive(Debug, Clone)]
struct Piece {
    monos: Vec<Mono>,
    index: HashMap<Mono, usize>,
    ideal: Rref,
    /// column -> basis position, for non-pivot columns
    basis_of_col: Vec<Option<usize>>,
    basis: Vec<usize>,
}

impl Piece {
    fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// The quotient algebra, one graded piece per U-degree until it vanishes.
#[derive(Debug, Clone)]
pub struct GradedAlgebra {
    edge_count: usize,
    strands: usize,
    sigma: usize,
    free: Vec<usize>,
    /// linear form in the free variables for each edge variable
    subst: Vec<SparseVec>,
    pieces: Vec<Piece>,
    relations: Vec<Relation>,
}

/// Descending lexicographic list of exponent vectors of total degree `d`.
fn monomials(vars: usize, d: usize) -> Vec<Mono> {
    fn go(prefix: &mut Mono, vars: usize, left: usize, out: &mut Vec<Mono>) {
        if prefix.len() + 1 == vars {
            prefix.push(left as u8);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e as u8);
            go(prefix, vars, left - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if vars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(&mut Vec::with_capacity(vars), vars, d, &mut out);
    out
}

fn mul_linear(p: &MPoly, l: &SparseVec) -> MPoly {
    let mut out = MPoly::new();
    for (m, c) in p {
        for (i, lc) in l.iter() {
            let mut m2 = m.clone();
            m2[*i] += 1;
            let v = c * lc;
            let slot = out.entry(m2).or_default();
            *slot = &*slot + &v;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

impl GradedAlgebra {
    /// Builds the quotient by `relations` degree by degree.
    pub fn build(g: &ResolutionGraph, relations: Vec<Relation>, degree_cap: usize) -> Result<Self, AlgebraError> {
        let edges = g.edge_count();
        for r in &relations {
            for t in r.lhs.iter().chain(&r.rhs) {
                if let Some(&e) = t.vars.iter().find(|&&e| e >= edges) {
                    return Err(AlgebraError::EdgeRange { edge: e, edges });
                }
            }
        }
        let mut alg = GradedAlgebra {
            edge_count: edges,
            strands: g.strands(),
            sigma: g.sigma(),
            free: Vec::new(),
            subst: Vec::new(),
            pieces: Vec::new(),
            relations,
        };
        if !g.is_connected() {
            return Ok(alg);
        }
        let mut by_degree: BTreeMap<usize, Vec<&Relation>> = BTreeMap::new();
        for r in &alg.relations {
            let d = r.degree().ok_or_else(|| {
                let (o, i) = (r.lhs.first().map_or(0, |t| t.vars.len()), r.rhs.first().map_or(0, |t| t.vars.len()));
                AlgebraError::Inhomogeneous { out: o, inn: i }
            })?;
            by_degree.entry(d).or_default().push(r);
        }
        if by_degree.get(&0).is_some_and(|rs| rs.iter().any(|r| {
            r.polynomial().iter().fold(RatFunc::zero(), |acc, (c, _)| &acc + c) != RatFunc::zero()
        })) {
            return Ok(alg);
        }

        // solve the linear relations
        let linear_rows: Vec<SparseVec> = by_degree
            .get(&1)
            .map(|rs| {
                rs.iter()
                    .map(|r| SparseVec::from_pairs(r.polynomial().into_iter().map(|(c, v)| (v[0], c)).collect()))
                    .collect()
            })
            .unwrap_or_default();
        let lin = rref_rows(edges, linear_rows);
        let mut pivot_row = vec![None; edges];
        for (row, &p) in lin.pivots.iter().enumerate() {
            pivot_row[p] = Some(row);
        }
        alg.free = (0..edges).filter(|e| pivot_row[*e].is_none()).collect();
        let free_pos: HashMap<usize, usize> = alg.free.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        alg.subst = (0..edges)
            .map(|e| match pivot_row[e] {
                None => SparseVec::unit(free_pos[&e]),
                Some(row) => SparseVec::from_pairs(
                    lin.rows[row].iter().filter(|(c, _)| *c != e).map(|(c, v)| (free_pos[c], -v)).collect(),
                ),
            })
            .collect();

        let k = alg.free.len();
        let top = degree_cap;
        for d in 0..=top {
            let monos = monomials(k, d);
            let index: HashMap<Mono, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let mut rows = Vec::new();
            if d >= 2 {
                let prev = alg.pieces.last().expect("previous degree exists");
                for r in &prev.ideal.rows {
                    for v in 0..k {
                        rows.push(SparseVec::from_pairs(
                            r.iter()
                                .map(|(col, c)| {
                                    let mut m = prev.monos[*col].clone();
                                    m[v] += 1;
                                    (index[&m], c.clone())
                                })
                                .collect(),
                        ));
                    }
                }
                for r in by_degree.get(&d).into_iter().flatten() {
                    let p = alg.substitute(&r.polynomial());
                    rows.push(SparseVec::from_pairs(p.into_iter().map(|(m, c)| (index[&m], c)).collect()));
                }
            }
            let ideal = rref_rows(monos.len(), rows);
            let mut is_pivot = vec![false; monos.len()];
            for &p in &ideal.pivots {
                is_pivot[p] = true;
            }
            let basis: Vec<usize> = (0..monos.len()).filter(|c| !is_pivot[*c]).collect();
            let mut basis_of_col = vec![None; monos.len()];
            for (i, &c) in basis.iter().enumerate() {
                basis_of_col[c] = Some(i);
            }
            if basis.is_empty() {
                return Ok(alg);
            }
            alg.pieces.push(Piece { monos, index, ideal, basis_of_col, basis });
        }
        Err(AlgebraError::DegreeCap { cap: degree_cap })
    }

    /// Rewrites a polynomial in edge variables in terms of the free ones.
    fn substitute(&self, poly: &[(RatFunc, Vec<usize>)]) -> MPoly {
        let k = self.free.len();
        let mut out = MPoly::new();
        if self.subst.is_empty() {
            return out;
        }
        for (c, vars) in poly {
            if c.is_zero() {
                continue;
            }
            let mut p = MPoly::from([(vec![0u8; k], c.clone())]);
            for &e in vars {
                p = mul_linear(&p, &self.subst[e]);
                if p.is_empty() {
                    break;
                }
            }
            for (m, v) in p {
                let slot = out.entry(m).or_default();
                *slot = &*slot + &v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// Edges whose variables survive the linear relations.
    pub fn free_edges(&self) -> &[usize] {
        &self.free
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// One past the highest nonzero degree.
    pub fn top_degree(&self) -> usize {
        self.pieces.len()
    }

    pub fn dim(&self, d: usize) -> usize {
        self.pieces.get(d).map_or(0, Piece::dim)
    }

    pub fn dims_by_degree(&self) -> Vec<usize> {
        self.pieces.iter().map(Piece::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.pieces.iter().map(Piece::dim).sum()
    }

    /// Twice the Alexander shift, `sigma - b + 1`.
    pub fn shift_a2(&self) -> i64 {
        self.sigma as i64 - self.strands as i64 + 1
    }

    /// Twice the Alexander grading of degree `d`.
    pub fn a2_of_degree(&self, d: usize) -> i64 {
        self.shift_a2() - 2 * d as i64
    }

    /// Dimensions keyed by twice the Alexander grading.
    pub fn dims_by_a2(&self) -> BTreeMap<i64, usize> {
        (0..self.top_degree()).map(|d| (self.a2_of_degree(d), self.dim(d))).collect()
    }

    /// Standard monomial `i` of degree `d` as a sorted list of edge variables.
    pub fn basis_monomial(&self, d: usize, i: usize) -> Vec<usize> {
        let p = &self.pieces[d];
        let m = &p.monos[p.basis[i]];
        let mut vars = Vec::with_capacity(d);
        for (v, &e) in m.iter().enumerate() {
            vars.extend(std::iter::repeat(self.free[v]).take(e as usize));
        }
        vars
    }

    /// Coordinates of `poly` in the standard basis, one vector per degree.
    pub fn reduce(&self, poly: &[(RatFunc, Vec<usize>)]) -> Vec<SparseVec> {
        let mut per_degree: Vec<Vec<(usize, RatFunc)>> = vec![Vec::new(); self.top_degree()];
        for (m, c) in self.substitute(poly) {
            let d: usize = m.iter().map(|&e| e as usize).sum();
            if let Some(p) = self.pieces.get(d) {
                per_degree[d].push((p.index[&m], c));
            }
        }
        per_degree
            .into_iter()
            .enumerate()
            .map(|(d, pairs)| {
                let p = &self.pieces[d];
                let r = p.ideal.reduce(&SparseVec::from_pairs(pairs));
                SparseVec::from_pairs(r.iter().map(|(c, v)| (p.basis_of_col[*c].expect("reduced to standard"), v.clone())).collect())
            })
            .collect()
    }

    /// Coordinates of a homogeneous polynomial of degree `d`.
    pub fn reduce_in_degree(&self, d: usize, poly: &[(RatFunc, Vec<usize>)]) -> SparseVec {
        self.reduce(poly).into_iter().nth(d).unwrap_or_default()
    }

    /// Human-readable dump: relations, dimensions, standard monomials.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        s.push_str("relations:\n");
        for r in &self.relations {
            s.push_str(&format!("  {r}\n"));
        }
        if self.is_zero() {
            s.push_str("zero algebra (disconnected resolution)\n");
            return s;
        }
        s.push_str(&format!("free variables: {}\n", self.free.iter().map(|e| format!("U{e}")).collect::<Vec<_>>().join(" ")));
        for d in 0..self.top_degree() {
            let names: Vec<String> = (0..self.dim(d))
                .map(|i| {
                    let v = self.basis_monomial(d, i);
                    if v.is_empty() { "1".into() } else { v.iter().map(|e| format!("U{e}")).collect::<Vec<_>>().join("*") }
                })
                .collect();
            s.push_str(&format!("degree {d} (A = {}): dim {}: {}\n", fmt_half(self.a2_of_degree(d)), self.dim(d), names.join(", ")));
        }
        s.push_str(&format!("total dimension: {}\n", self.total_dim()));
        s
    }

    /// `{"A": dim}` with gradings written as `p/q`.
    pub fn dims_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> =
            self.dims_by_a2().into_iter().rev().map(|(a2, d)| (fmt_half(a2), d.into())).collect();
        serde_json::Value::Object(map)
    }
}

/// Formats `x / 2` as an integer or `p/2`.
pub fn fmt_half(x2: i64) -> String {
    if x2 % 2 == 0 { (x2 / 2).to_string() } else { format!("{x2}/2") }
}

/// Relations for `g` in `mode`, then the algebra.
pub fn algebra_for(g: &ResolutionGraph, mode: RelationMode, subset_cap: usize, degree_cap: usize) -> Result<GradedAlgebra, AlgebraError> {
    if !g.is_connected() {
        return GradedAlgebra::build(g, Vec::new(), degree_cap);
    }
    let rels = generate_relations(g, mode, subset_cap)?;
    GradedAlgebra::build(g, rels, degree_cap)
}

pub fn default_degree_cap(crossings: usize) -> usize {
    2 * crossings + 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{build_diagram, parse_braid};
    use crate::resolution::{ResolutionAssignment, DEFAULT_SUBSET_CAP};

    fn alg(word: &str, bits: &str, mode: RelationMode) -> (ResolutionGraph, GradedAlgebra) {
        let d = build_diagram(&parse_braid(word).unwrap());
        let g = ResolutionGraph::new(&d, &ResolutionAssignment::parse(bits, d.crossings().len()).unwrap()).unwrap();
        let a = algebra_for(&g, mode, DEFAULT_SUBSET_CAP, default_degree_cap(d.crossings().len())).unwrap();
        (g, a)
    }

    #[test]
    fn singular_trefoil_dims() {
        let (_, a) = alg("B2: s1 s1 s1", "000", RelationMode::All);
        assert_eq!(a.dims_by_degree(), vec![1, 2, 1]);
        assert_eq!(a.shift_a2(), 2);
        assert_eq!(a.dims_by_a2(), BTreeMap::from([(2, 1), (0, 2), (-2, 1)]));
    }

    #[test]
    fn singular_figure_eight_dims() {
        let (_, a) = alg("B3: s1 -s2 s1 -s2", "0101", RelationMode::All);
        assert_eq!(a.total_dim(), 5);
        assert_eq!(a.dim(2), 1);
    }

    #[test]
    fn disconnected_is_zero() {
        let (_, a) = alg("B2: s1 s1 s1", "111", RelationMode::All);
        assert!(a.is_zero());
    }

    #[test]
    fn hat_edges_vanish() {
        let (g, a) = alg("B2: s1 s1 s1", "000", RelationMode::All);
        let last = g.edge_count() - 1;
        assert!(a.reduce(&[(RatFunc::one(), vec![last])]).iter().all(SparseVec::is_zero));
        assert!(a.reduce(&[(RatFunc::one(), vec![0])]).iter().all(SparseVec::is_zero));
        assert_eq!(a.reduce(&[(RatFunc::one(), vec![])])[0], SparseVec::unit(0));
    }

    #[test]
    fn trefoil_linear_relations_pair_edges() {
        // B1 + B2 = 0 in the text's naming: the two edges into a vertex
        // adjacent to the vanishing edge sum to zero
        let (g, a) = alg("B2: s1 s1 s1", "000", RelationMode::All);
        let (_, _, c, d) = g.labels(1);
        let x = a.reduce(&[(RatFunc::one(), vec![c]), (RatFunc::one(), vec![d])]);
        let (aa, bb, _, _) = g.labels(1);
        let y = a.reduce(&[(RatFunc::one(), vec![aa]), (RatFunc::one(), vec![bb])]);
        assert!(x[1].is_zero() || y[1].is_zero());
    }

    #[test]
    fn modes_agree_on_examples() {
        for (w, bits) in [("B2: s1 s1 s1", "000"), ("B3: s1 -s2 s1 -s2", "0101"), ("B3: s1 -s2 s1 -s2", "0000"), ("B3: s1 s2 s1 s2", "0110")] {
            let (_, a) = alg(w, bits, RelationMode::All);
            let (_, b) = alg(w, bits, RelationMode::CoherentCycles);
            assert_eq!(a.dims_by_a2(), b.dims_by_a2(), "{w} {bits}");
        }
    }
}
