//! Grid diagrams from braid words.
//!
//! Strands run up the columns of the cylinder picture. A letter is a row in
//! which one strand jogs sideways under its neighbour's column. Fresh columns
//! are inserted into a linked order next to the columns they must neighbour,
//! and return rows close the braid into the columns it started from.

use super::diagram::{GridDiagram, Square};
use super::GridError;
use crate::braid::{BraidWord, Sign};

/// Row layout of a construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    /// Jog every strand off its starting column before the first letter.
    pub start_rows: bool,
    /// Make every crossing special: adjacent X's and a follow-up row.
    pub special: bool,
    /// In special layouts, step the over strand aside before each letter.
    pub lift: bool,
}

/// A grid together with the squares where letters cross.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidGrid {
    pub grid: GridDiagram,
    /// one crossing square per letter, in order
    pub crossings: Vec<Square>,
    pub signs: Vec<Sign>,
    /// column of the leftmost strand at the top of the braid
    pub marked_column: usize,
}

struct Builder {
    order: Vec<usize>,
    next_id: usize,
    rows: Vec<(usize, usize)>,
    pos: Vec<usize>,
    crossings: Vec<(usize, usize)>,
}

impl Builder {
    fn fresh(&mut self, at: usize) -> usize {
        let id = self.next_id;
        self.next_id += 1;
        self.order.insert(at, id);
        id
    }

    fn idx(&self, col: usize) -> usize {
        self.order.iter().position(|&c| c == col).expect("column is placed")
    }

    fn jog(&mut self, strand: usize, to: usize) {
        self.rows.push((self.pos[strand], to));
        self.pos[strand] = to;
    }

    /// An order of return rows, each jogging a strand back to its starting
    /// column without passing an active column. `first` must come first and
    /// is taken to be at its current column already.
    fn return_order(&self, first: Option<usize>) -> Option<Vec<usize>> {
        let b = self.pos.len();
        let mut done = vec![false; b];
        let mut out = Vec::new();
        if let Some(f) = first {
            if !self.clear(f, &done) {
                return None;
            }
            done[f] = true;
            out.push(f);
        }
        self.dfs(&mut done, &mut out).then_some(out)
    }

    fn clear(&self, i: usize, done: &[bool]) -> bool {
        let (a, c) = (self.idx(self.pos[i]), self.idx(i));
        // a column cannot take a strand back while another still runs up it
        if a == c || (0..done.len()).any(|j| !done[j] && j != i && self.pos[j] == i) {
            return false;
        }
        let (lo, hi) = (a.min(c), a.max(c));
        let active = |j: usize| if done[j] { j } else { self.pos[j] };
        (0..done.len()).filter(|&j| j != i).all(|j| {
            let k = self.idx(active(j));
            k <= lo || k >= hi
        })
    }

    fn dfs(&self, done: &mut [bool], out: &mut Vec<usize>) -> bool {
        if out.len() == done.len() {
            return true;
        }
        for i in 0..done.len() {
            if !done[i] && self.clear(i, done) {
                done[i] = true;
                out.push(i);
                if self.dfs(done, out) {
                    return true;
                }
                out.pop();
                done[i] = false;
            }
        }
        false
    }
}

/// Grid whose knot is the closure of `w`, laid out by `layout`.
pub fn braid_grid(w: &BraidWord, layout: Layout) -> Result<BraidGrid, GridError> {
    let b = w.strands();
    if w.is_empty() {
        return if b == 1 { Ok(unknot_grid()) } else { Err(GridError::Construction("split braid".into())) };
    }
    let mut bld = Builder { order: Vec::new(), next_id: b, rows: Vec::new(), pos: (0..b).collect(), crossings: Vec::new() };
    bld.order.extend(0..b);
    if layout.start_rows {
        for i in 0..b {
            let d = bld.fresh(i);
            bld.jog(i, d);
        }
    }
    let letters = w.letters();
    let mut merged: Option<(usize, Vec<usize>)> = None;
    for (k, l) in letters.iter().enumerate() {
        let g = l.generator - 1;
        // the under strand jogs from `s` across the over strand `t`
        let (s, t, left) = match l.sign {
            Sign::Positive => (g + 1, g, true),
            Sign::Negative => (g, g + 1, false),
        };
        if layout.special && layout.lift {
            let at = if left { bld.idx(bld.pos[t]) + 1 } else { bld.idx(bld.pos[t]) };
            let c = bld.fresh(at);
            bld.jog(t, c);
        }
        let tau = bld.pos[t];
        if layout.special {
            let want = if left { Some(bld.idx(tau) + 1) } else { bld.idx(tau).checked_sub(1) };
            if Some(bld.idx(bld.pos[s])) != want {
                let at = if left { bld.idx(tau) + 1 } else { bld.idx(tau) };
                let c = bld.fresh(at);
                bld.jog(s, c);
            }
        }
        let q = bld.fresh(if left { bld.idx(tau) } else { bld.idx(tau) + 1 });
        bld.jog(s, q);
        bld.crossings.push((tau, bld.rows.len() - 1));
        bld.pos.swap(g, g + 1);
        if layout.special {
            // the over strand leaves its column right above the crossing
            let t = if left { g + 1 } else { g };
            let last = k + 1 == letters.len();
            let beside = if left { bld.idx(tau) + 1 } else { bld.idx(tau).wrapping_sub(1) };
            let free_corner = bld.order.get(beside) != Some(&t);
            let plan = (last && free_corner && bld.pos[0] == bld.order[0]).then(|| bld.return_order(Some(t))).flatten();
            if let Some(plan) = plan {
                merged = Some((t, plan));
                bld.jog(t, t);
            } else {
                // land next to the partner of the following letter, if any
                let partner = letters.get(k + 1).and_then(|l2| {
                    let g2 = l2.generator - 1;
                    (t == g2 || t == g2 + 1).then(|| if t == g2 { g2 + 1 } else { g2 })
                });
                let at = match partner {
                    Some(p) => {
                        let pc = bld.idx(bld.pos[p]);
                        if pc > bld.idx(tau) { pc } else { pc + 1 }
                    }
                    None if left => bld.idx(tau),
                    None => bld.idx(tau) + 1,
                };
                let wcol = bld.fresh(at);
                bld.jog(t, wcol);
            }
        }
    }
    if layout.special && bld.pos[0] != bld.order[0] {
        let c = bld.fresh(0);
        bld.jog(0, c);
    }
    let marked = bld.pos[0];
    let returns = match merged {
        Some((_, plan)) => plan[1..].to_vec(),
        None => bld.return_order(None).ok_or_else(|| GridError::Construction("no crossing-free return rows".into()))?,
    };
    for i in returns {
        bld.jog(i, i);
    }
    finish(bld, w, marked)
}

fn finish(bld: Builder, w: &BraidWord, marked: usize) -> Result<BraidGrid, GridError> {
    let n = bld.rows.len();
    if bld.order.len() != n {
        return Err(GridError::Construction(format!("{} columns for {n} rows", bld.order.len())));
    }
    let mut col_of = vec![0; bld.next_id];
    for (i, &c) in bld.order.iter().enumerate() {
        col_of[c] = i;
    }
    let o = bld.rows.iter().enumerate().map(|(r, &(_, oc))| (col_of[oc], r)).collect();
    let x = bld.rows.iter().enumerate().map(|(r, &(xc, _))| (col_of[xc], r)).collect();
    let grid = GridDiagram::new(n, o, x, Vec::new())?;
    let crossings: Vec<Square> = bld.crossings.iter().map(|&(c, r)| (col_of[c], r)).collect();
    let mut found = grid.crossing_squares();
    let mut want = crossings.clone();
    found.sort();
    want.sort();
    if found != want {
        return Err(GridError::Construction(format!("crossing squares {found:?}, expected {want:?}")));
    }
    grid.require_knot()?;
    Ok(BraidGrid { grid, crossings, signs: w.letters().iter().map(|l| l.sign).collect(), marked_column: col_of[marked] })
}

fn unknot_grid() -> BraidGrid {
    BraidGrid { grid: GridDiagram::from_perms(&[0, 1], &[1, 0]).expect("valid grid"), crossings: Vec::new(), signs: Vec::new(), marked_column: 0 }
}

/// Smallest grid from the two plain layouts.
pub fn braid_to_grid(w: &BraidWord) -> Result<BraidGrid, GridError> {
    braid_grid(w, Layout { start_rows: false, special: false, lift: false })
        .or_else(|_| braid_grid(w, Layout { start_rows: true, special: false, lift: false }))
}
