//! Sparse vectors and matrices over Q(t), with reduced row echelon form.

use std::collections::BTreeMap;

use super::ratfunc::RatFunc;
use super::ArithError;

/// Sparse vector as `(index, value)` pairs, sorted by index, no zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, RatFunc)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Builds from unsorted pairs, summing duplicates and dropping zeros.
    pub fn from_pairs(mut pairs: Vec<(usize, RatFunc)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, RatFunc)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, w)) if *j == i => *w = &*w + &v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, RatFunc::one())] }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, RatFunc)> {
        self.entries.iter()
    }

    pub fn leading(&self) -> Option<&(usize, RatFunc)> {
        self.entries.first()
    }

    pub fn get(&self, i: usize) -> Option<&RatFunc> {
        self.entries.binary_search_by_key(&i, |(j, _)| *j).ok().map(|k| &self.entries[k].1)
    }

    pub fn scale(&self, c: &RatFunc) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    /// `self + c * other`
    pub fn axpy(&self, c: &RatFunc, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let s = x + &(y * c);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&RatFunc::one(), other)
    }

    pub fn dot_dense(&self, dense: &[RatFunc]) -> RatFunc {
        let mut acc = RatFunc::zero();
        for (i, v) in &self.entries {
            if !dense[*i].is_zero() {
                acc = &acc + &(v * &dense[*i]);
            }
        }
        acc
    }
}

/// Sparse matrix stored row-major; iteration order is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn from_rows(cols: usize, data: Vec<SparseVec>) -> Self {
        debug_assert!(data.iter().all(|r| r.iter().all(|(c, _)| *c < cols)));
        SparseMatrix { rows: data.len(), cols, data }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { rows: n, cols: n, data: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn row_vecs(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn set_row(&mut self, r: usize, v: SparseVec) {
        self.data[r] = v;
    }

    pub fn get(&self, r: usize, c: usize) -> RatFunc {
        self.data[r].get(c).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, r: usize, c: usize, v: RatFunc) {
        let mut pairs: Vec<_> = self.data[r].iter().filter(|(j, _)| *j != c).cloned().collect();
        pairs.push((c, v));
        self.data[r] = SparseVec::from_pairs(pairs);
    }

    /// Nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &RatFunc)> {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<Vec<(usize, RatFunc)>> = vec![Vec::new(); self.cols];
        for (r, c, v) in self.iter() {
            cols[c].push((r, v.clone()));
        }
        SparseMatrix { rows: self.cols, cols: self.rows, data: cols.into_iter().map(|e| SparseVec { entries: e }).collect() }
    }

    /// `self * other`
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, ArithError> {
        if self.cols != other.rows {
            return Err(ArithError::Shape { left: (self.rows, self.cols), right: (other.rows, other.cols) });
        }
        let data = self
            .data
            .iter()
            .map(|row| row.iter().fold(SparseVec::new(), |acc, (k, v)| acc.axpy(v, &other.data[*k])))
            .collect();
        Ok(SparseMatrix { rows: self.rows, cols: other.cols, data })
    }

    pub fn scale(&self, c: &RatFunc) -> SparseMatrix {
        SparseMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| r.scale(c)).collect() }
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix, ArithError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(ArithError::Shape { left: (self.rows, self.cols), right: (other.rows, other.cols) });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        Ok(SparseMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Apply to a column vector given sparsely.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut dense = vec![RatFunc::zero(); self.cols];
        for (i, x) in v.iter() {
            dense[*i] = x.clone();
        }
        SparseVec::from_pairs(self.data.iter().enumerate().map(|(r, row)| (r, row.dot_dense(&dense))).collect())
    }

    pub fn rref(&self) -> Rref {
        rref_rows(self.cols, self.data.clone())
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of `{v : self * v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let r = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &r.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|c| !is_pivot[*c])
            .map(|f| {
                let mut pairs = vec![(f, RatFunc::one())];
                for (row, &p) in r.rows.iter().zip(&r.pivots) {
                    if let Some(v) = row.get(f) {
                        pairs.push((p, -v));
                    }
                }
                SparseVec::from_pairs(pairs)
            })
            .collect()
    }
}

/// Reduced row echelon form: unit pivots, pivot columns cleared elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub cols: usize,
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn matrix(&self) -> SparseMatrix {
        SparseMatrix::from_rows(self.cols, self.rows.clone())
    }

    /// Reduce `v` modulo the row space.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if let Some(c) = v.get(p).cloned() {
                v = v.axpy(&-&c, row);
            }
        }
        v
    }
}

/// Reduced row echelon form of the span of `data`, built one row at a time
/// with the simplest rows first. Stops early once the rank reaches `cols`.
pub fn rref_rows(cols: usize, data: Vec<SparseVec>) -> Rref {
    let mut data: Vec<SparseVec> = data.into_iter().filter(|r| !r.is_zero()).collect();
    data.sort_by_cached_key(|r| (r.iter().map(|(_, v)| v.complexity()).max().unwrap_or(0), r.len()));
    // fully reduced rows keyed by pivot column
    let mut basis: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for row in data {
        if basis.len() == cols {
            break;
        }
        let mut acc: BTreeMap<usize, RatFunc> = BTreeMap::new();
        for (c, v) in row.iter() {
            if let Some(b) = basis.get(c) {
                for (bc, bv) in b.iter() {
                    if bc != c {
                        let e = acc.entry(*bc).or_default();
                        *e = &*e - &(v * bv);
                    }
                }
            } else {
                let e = acc.entry(*c).or_default();
                *e = &*e + v;
            }
        }
        acc.retain(|c, v| !v.is_zero() && !basis.contains_key(c));
        let Some((&col, lead)) = acc.iter().next() else { continue };
        let inv = lead.inv().expect("pivot is nonzero");
        let prow = SparseVec::from_pairs(acc.into_iter().map(|(c, v)| (c, &v * &inv)).collect());
        for r in basis.values_mut() {
            if let Some(c) = r.get(col).cloned() {
                *r = r.axpy(&-&c, &prow);
            }
        }
        basis.insert(col, prow);
    }
    let (pivots, rows) = basis.into_iter().unzip();
    Rref { cols, rows, pivots }
}

#[cfg(test)]
mod tests {
    use super::super::poly::UniPoly;
    use super::*;

    fn c(v: i64) -> RatFunc {
        RatFunc::from_int(v)
    }

    fn dense(rows: &[&[RatFunc]]) -> SparseMatrix {
        let cols = rows[0].len();
        SparseMatrix::from_rows(
            cols,
            rows.iter().map(|r| SparseVec::from_pairs(r.iter().cloned().enumerate().collect())).collect(),
        )
    }

    #[test]
    fn rank_over_function_field() {
        let t = RatFunc::t();
        // rows (1, t) and (t, t^2) are dependent over Q(t) but not over Q
        let m = dense(&[&[c(1), t.clone()], &[t.clone(), &t * &t]]);
        assert_eq!(m.rank(), 1);
        let m = dense(&[&[c(1), t.clone()], &[t.clone(), c(1)]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn pivot_prefers_simplest_entry() {
        let t = RatFunc::t();
        let m = dense(&[&[t.clone(), c(1)], &[c(2), c(0)]]);
        let r = m.rref();
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rows[0], SparseVec::unit(0));
    }

    #[test]
    fn kernel_is_annihilated() {
        let t = RatFunc::t();
        let u = RatFunc::from_poly(UniPoly::from_ints(&[1, 1]));
        let m = dense(&[&[c(1), t.clone(), u.clone(), c(0)], &[t.clone(), c(0), c(1), u.clone()]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).is_zero());
        }
    }
}
