//! Bigraded homology ranks of the total complex over Q(t).

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{modp, LaurentPoly};
use crate::braid::{build_diagram, BraidWord};
use crate::cube::{Cube, CubeConfig, CubeError, Memo, Slice, TotalComplex};

/// Ranks keyed by (Maslov m, Alexander s).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PoincarePolynomial {
    pub knot: String,
    pub entries: BTreeMap<(i64, i64), usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankEntry {
    pub m: i64,
    pub s: i64,
    pub rank: usize,
}

#[derive(Serialize)]
struct HomologyJson<'a> {
    knot: &'a str,
    ranks: Vec<RankEntry>,
    euler: String,
}

impl PoincarePolynomial {
    pub fn total_rank(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn rank(&self, m: i64, s: i64) -> usize {
        self.entries.get(&(m, s)).copied().unwrap_or(0)
    }

    /// Sorted by Alexander grading, then Maslov grading, both descending.
    pub fn sorted(&self) -> Vec<RankEntry> {
        let mut v: Vec<RankEntry> = self.entries.iter().map(|(&(m, s), &rank)| RankEntry { m, s, rank }).collect();
        v.sort_by(|a, b| (b.s, b.m).cmp(&(a.s, a.m)));
        v
    }

    /// `sum (-1)^m rank T^s`
    pub fn euler(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (&(m, s), &r) in &self.entries {
            let sign: i64 = if m.rem_euclid(2) == 0 { 1 } else { -1 };
            p.add_term((sign * r as i64).into(), s);
        }
        p
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(HomologyJson { knot: &self.knot, ranks: self.sorted(), euler: self.euler().to_string() })
            .expect("homology serializes")
    }

    /// Plain table, one line per nonzero group.
    pub fn table(&self) -> String {
        let mut s = format!("{:>6} {:>6} {:>6}\n", "A", "M", "rank");
        for e in self.sorted() {
            s.push_str(&format!("{:>6} {:>6} {:>6}\n", e.s, e.m, e.rank));
        }
        s
    }
}

/// Knot Floer homology of the closure of `w`.
pub fn knot_floer(w: &BraidWord, cfg: &CubeConfig, memo: &Memo) -> Result<PoincarePolynomial, CubeError> {
    let cube = Cube::build(&build_diagram(w), cfg, memo)?;
    Ok(homology(&cube.total_complex()?, &w.to_string()))
}

/// `rank H_M = dim C_M - rank D_M - rank D_{M+1}` in every Alexander slice.
pub fn homology(c: &TotalComplex, knot: &str) -> PoincarePolynomial {
    let per_slice: Vec<Vec<((i64, i64), usize)>> = c
        .slices
        .par_iter()
        .map(|(&ap, slice)| {
            let ranks = slice_ranks(slice);
            slice
                .groups
                .keys()
                .filter_map(|&m| {
                    let h = slice.dim(m) - ranks.get(&m).copied().unwrap_or(0) - ranks.get(&(m + 1)).copied().unwrap_or(0);
                    (h > 0).then_some(((m, ap), h))
                })
                .collect()
        })
        .collect();
    PoincarePolynomial { knot: knot.to_string(), entries: per_slice.into_iter().flatten().collect() }
}

/// Points tried for the modular lower bound.
const SAMPLE_POINTS: [u64; 3] = [1_000_003, 7_654_321, 123_456_789_011];

/// Exact ranks of the differentials of one slice.
///
/// Modular ranks give lower bounds. `D^2 = 0` turns them into upper bounds
/// on the neighbours, and only differentials whose bounds differ are ranked
/// over Q(t).
pub fn slice_ranks(slice: &Slice) -> BTreeMap<i64, usize> {
    let mut lo: BTreeMap<i64, usize> = BTreeMap::new();
    let mut exact: BTreeMap<i64, bool> = BTreeMap::new();
    for (&m, d) in &slice.diffs {
        let bound = SAMPLE_POINTS.iter().filter_map(|&t0| modp::rank_mod(d, t0)).max().unwrap_or(0);
        lo.insert(m, bound);
        exact.insert(m, false);
    }
    loop {
        let open = slice.diffs.iter().find_map(|(&m, d)| {
            let into = lo.get(&(m + 1)).copied().unwrap_or(0);
            let out = lo.get(&(m - 1)).copied().unwrap_or(0);
            let hi = d.rows().min(d.cols()).min(slice.dim(m) - into).min(slice.dim(m - 1) - out);
            (lo[&m] < hi && !exact[&m]).then_some(m)
        });
        let Some(m) = open else { break };
        lo.insert(m, slice.diffs[&m].rank());
        exact.insert(m, true);
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{build_diagram, parse_braid};
    use crate::cube::{Cube, CubeConfig, Memo};

    fn hfk(word: &str) -> PoincarePolynomial {
        let d = build_diagram(&parse_braid(word).unwrap());
        let cube = Cube::build(&d, &CubeConfig::for_crossings(d.crossings().len()), &Memo::new()).unwrap();
        homology(&cube.total_complex().unwrap(), word)
    }

    #[test]
    fn unknot() {
        let h = hfk("B1:");
        assert_eq!(h.entries, BTreeMap::from([((0, 0), 1)]));
        assert_eq!(h.euler(), LaurentPoly::one());
    }

    #[test]
    fn right_trefoil() {
        let h = hfk("B2: s1 s1 s1");
        assert_eq!(h.entries, BTreeMap::from([((0, 1), 1), ((-1, 0), 1), ((-2, -1), 1)]));
        assert_eq!(h.euler().to_string(), "T - 1 + T^-1");
        let s: Vec<_> = h.sorted().iter().map(|e| e.s).collect();
        assert_eq!(s, vec![1, 0, -1]);
    }

    #[test]
    fn left_trefoil() {
        let h = hfk("B2: -s1 -s1 -s1");
        assert_eq!(h.entries, BTreeMap::from([((0, -1), 1), ((1, 0), 1), ((2, 1), 1)]));
    }

    #[test]
    fn figure_eight() {
        let h = hfk("B3: s1 -s2 s1 -s2");
        assert_eq!(h.total_rank(), 5);
        assert_eq!(h.euler(), LaurentPoly::from_terms([(-1, -1), (0, 3), (1, -1)]));
        let by_s = |s: i64| h.entries.iter().filter(|((_, s2), _)| *s2 == s).map(|(_, r)| r).sum::<usize>();
        for s in -2..=2 {
            assert_eq!(by_s(s), by_s(-s));
        }
    }
}
