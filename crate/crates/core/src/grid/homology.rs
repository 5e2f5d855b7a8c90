//! The tilde rectangle complex over GF(2) and its deflation.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;

use super::diagram::{rectangles_from, GridDiagram};
use super::GridError;
use crate::arith::LaurentPoly;
use crate::homology::PoincarePolynomial;

/// Largest grid handled by default.
pub const DEFAULT_MAX_SIZE: usize = 8;

/// All permutations of `0..n` in lexicographic order.
pub fn all_states(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { break };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

/// Lexicographic rank of a permutation.
pub fn state_index(p: &[usize]) -> usize {
    let n = p.len();
    let mut idx = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&v| v < p[i]).count();
        idx = idx * (n - i) + smaller;
    }
    idx
}

/// The tilde complex: states, gradings and the GF(2) differential.
pub struct TildeComplex {
    pub n: usize,
    pub states: Vec<Vec<usize>>,
    /// `(M, A)` per state
    pub grading: Vec<(i64, i64)>,
    /// targets of `∂` per state, each listed once (mod 2)
    pub diff: Vec<Vec<usize>>,
}

impl TildeComplex {
    pub fn build(g: &GridDiagram, max_size: usize) -> Result<Self, GridError> {
        g.require_knot()?;
        if g.n > max_size {
            return Err(GridError::TooLarge { n: g.n, max: max_size });
        }
        let n = g.n;
        let marked: Vec<(usize, usize)> = g.o.iter().chain(&g.x).copied().collect();
        let states = all_states(n);
        let rows: Vec<((i64, i64), Vec<usize>)> = states
            .par_iter()
            .map(|s| {
                let gr = g.gradings(s);
                let mut targets: Vec<usize> = rectangles_from(s)
                    .filter(|(r, _)| !marked.iter().any(|&m| r.contains_square(n, m)))
                    .map(|(_, y)| state_index(&y))
                    .collect();
                targets.sort_unstable();
                let mut odd = Vec::with_capacity(targets.len());
                for t in targets {
                    if odd.last() == Some(&t) {
                        odd.pop();
                    } else {
                        odd.push(t);
                    }
                }
                ((gr.m2 / 2, gr.a2 / 2), odd)
            })
            .collect();
        let (grading, diff) = rows.into_iter().unzip();
        Ok(TildeComplex { n, states, grading, diff })
    }

    /// True when `∂∘∂ = 0` over GF(2).
    pub fn d_squared_vanishes(&self) -> bool {
        (0..self.states.len()).into_par_iter().all(|s| {
            let mut count: HashMap<usize, u32> = HashMap::new();
            for &y in &self.diff[s] {
                for &z in &self.diff[y] {
                    *count.entry(z).or_default() += 1;
                }
            }
            count.values().all(|c| c % 2 == 0)
        })
    }

    /// True when `∂` lowers `M` by one and preserves `A`.
    pub fn is_graded(&self) -> bool {
        self.diff.iter().enumerate().all(|(s, ts)| {
            let (m, a) = self.grading[s];
            ts.iter().all(|&t| self.grading[t] == (m - 1, a))
        })
    }

    /// Ranks of the homology keyed by `(M, A)`.
    pub fn homology(&self) -> BTreeMap<(i64, i64), usize> {
        let mut blocks: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
        for (s, &g) in self.grading.iter().enumerate() {
            blocks.entry(g).or_default().push(s);
        }
        let mut pos = vec![0; self.states.len()];
        for members in blocks.values() {
            for (i, &s) in members.iter().enumerate() {
                pos[s] = i;
            }
        }
        let keys: Vec<(i64, i64)> = blocks.keys().copied().collect();
        // rank of ∂ out of each block
        let ranks: HashMap<(i64, i64), usize> = keys
            .par_iter()
            .map(|&(m, a)| {
                let cols = blocks.get(&(m - 1, a)).map_or(0, |b| b.len());
                let rows: Vec<Vec<u64>> = blocks[&(m, a)]
                    .iter()
                    .map(|&s| {
                        let mut v = vec![0u64; cols.div_ceil(64)];
                        for &t in &self.diff[s] {
                            v[pos[t] / 64] ^= 1 << (pos[t] % 64);
                        }
                        v
                    })
                    .collect();
                ((m, a), gf2_rank(rows))
            })
            .collect();
        keys.iter()
            .filter_map(|&(m, a)| {
                let h = blocks[&(m, a)].len() - ranks[&(m, a)] - ranks.get(&(m + 1, a)).copied().unwrap_or(0);
                (h > 0).then_some(((m, a), h))
            })
            .collect()
    }
}

fn gf2_rank(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let words = rows.first().map_or(0, |r| r.len());
    for w in 0..words {
        for bit in 0..64 {
            let mask = 1u64 << bit;
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & mask != 0) else { continue };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for r in rows.iter_mut().skip(rank + 1) {
                if r[w] & mask != 0 {
                    for (a, b) in r.iter_mut().zip(&pivot).skip(w) {
                        *a ^= b;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Tilde homology and the knot Floer homology recovered from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridHomology {
    pub tilde: PoincarePolynomial,
    pub deflated: PoincarePolynomial,
}

/// Divides the generating function by `(1 + q^-1 T^-1)^(n-1)`.
pub fn deflate(tilde: &BTreeMap<(i64, i64), usize>, n: usize, knot: &str) -> Result<PoincarePolynomial, GridError> {
    let mut by_delta: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
    for (&(m, a), &r) in tilde {
        by_delta.entry(m - a).or_default().add_term(BigInt::from(r), a);
    }
    let mut entries = BTreeMap::new();
    for (delta, mut p) in by_delta {
        for _ in 1..n {
            p = p.div_one_plus_inv().ok_or(GridError::Deflation)?;
        }
        for (a, c) in p.terms() {
            let r: usize = c.try_into().map_err(|_| GridError::Deflation)?;
            entries.insert((delta + a, a), r);
        }
    }
    Ok(PoincarePolynomial { knot: knot.to_string(), entries })
}

pub fn grid_homology_tilde(g: &GridDiagram, max_size: usize, knot: &str) -> Result<GridHomology, GridError> {
    let c = TildeComplex::build(g, max_size)?;
    let tilde = c.homology();
    let deflated = deflate(&tilde, g.n, knot)?;
    Ok(GridHomology { tilde: PoincarePolynomial { knot: knot.to_string(), entries: tilde }, deflated })
}
