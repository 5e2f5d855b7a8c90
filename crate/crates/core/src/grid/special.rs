//! Special grid diagrams and the rectangle maps at a crossing corner.
//!
//! At a lattice point `c` the four squares are labelled `A` (upper-left,
//! lower-right) and `B` (upper-right, lower-left). `G_A` and `G_B` share the
//! O's and the remaining X's `X_0` and put their other two X's on `A` resp.
//! `B`. States through `c` form the part `X`, the rest form `Y`. The map
//! `X -> Y` counts rectangles of `G_A`, the map `Y -> X` those of `G_B`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::build::{braid_grid, BraidGrid, Layout};
use super::diagram::{rectangles_between, rectangles_from, GridDiagram, Rect, Square};
use super::homology::all_states;
use super::GridError;
use crate::braid::BraidWord;

/// Largest grid whose square sets fit a `u128` mask.
const MAX_MASK_SIZE: usize = 11;

/// A special grid with the crossing corner of every letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialGrid {
    pub braid: BraidGrid,
    pub corners: Vec<Square>,
}

/// Numbers of the violated conditions of the definition of a special grid.
pub fn special_violations(bg: &BraidGrid) -> Vec<usize> {
    let g = &bg.grid;
    let n = g.n;
    let sq = &bg.crossings;
    let mut bad = Vec::new();
    let one_per_line = (0..n).all(|l| sq.iter().filter(|s| s.0 == l).count() <= 1 && sq.iter().filter(|s| s.1 == l).count() <= 1);
    if !one_per_line {
        bad.push(1);
    }
    let corners_of = |(c, r): Square| [(c, r), ((c + 1) % n, r), (c, (r + 1) % n), ((c + 1) % n, (r + 1) % n)];
    let share = sq.iter().enumerate().any(|(i, &a)| sq[i + 1..].iter().any(|&b| corners_of(a).iter().any(|p| corners_of(b).contains(p))));
    if share {
        bad.push(2);
    }
    let corners: Option<Vec<Square>> = sq.iter().map(|&s| crossing_corner(g, s)).collect();
    match corners {
        None => bad.push(3),
        Some(cs) => {
            let blocked = cs.iter().enumerate().any(|(i, &p)| cs[i + 1..].iter().any(|&q| !corner_rects_have_x(g, p, q)));
            if blocked {
                bad.push(4);
            }
        }
    }
    if bg.marked_column != 0 {
        bad.push(5);
    }
    bad
}

/// The corner shared by the crossing square and its two neighbouring X's.
pub fn crossing_corner(g: &GridDiagram, (c, r): Square) -> Option<Square> {
    let n = g.n;
    let (left, right) = ((c + n - 1) % n, (c + 1) % n);
    let (down, up) = ((r + n - 1) % n, (r + 1) % n);
    let h: Vec<usize> = [left, right].into_iter().filter(|&k| g.is_x((k, r))).collect();
    let v: Vec<usize> = [down, up].into_iter().filter(|&k| g.is_x((c, k))).collect();
    if h.len() != 1 || v.len() != 1 {
        return None;
    }
    let px = if h[0] == right { right } else { c };
    let py = if v[0] == up { up } else { r };
    Some((px, py))
}

/// The planar rectangle with opposite corners `p` and `q` contains an X.
fn corner_rects_have_x(g: &GridDiagram, p: Square, q: Square) -> bool {
    if p.0 == q.0 || p.1 == q.1 {
        return true;
    }
    let r = Rect { col: p.0.min(q.0), width: p.0.abs_diff(q.0), row: p.1.min(q.1), height: p.1.abs_diff(q.1) };
    g.x.iter().chain(&g.xx).any(|&s| r.contains_square(g.n, s))
}

const LAYOUTS: [(bool, bool); 4] = [(false, false), (true, false), (false, true), (true, true)];

/// Special grid for `w`, trying the compact layout first.
pub fn special_grid(w: &BraidWord) -> Result<SpecialGrid, GridError> {
    special_grids(w).next().unwrap_or_else(|| Err(GridError::Construction("no layout tried".into())))
}

/// Special grid for `w` whose crossing corners contract to a singular grid,
/// together with that grid.
pub fn singular_grid(w: &BraidWord) -> Result<(SpecialGrid, GridDiagram), GridError> {
    let mut last = GridError::Construction("no layout tried".into());
    for sg in special_grids(w) {
        match sg.and_then(|sg| singularize(&sg.braid.grid, &sg.corners).map(|s| (sg, s))) {
            Ok(pair) => return Ok(pair),
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// Special grids from every layout that yields one, followed by the last
/// failure if any.
fn special_grids(w: &BraidWord) -> impl Iterator<Item = Result<SpecialGrid, GridError>> + '_ {
    let mut tried: Vec<Result<SpecialGrid, GridError>> = LAYOUTS
        .iter()
        .map(|&(start_rows, lift)| {
            let bg = braid_grid(w, Layout { start_rows, special: true, lift })?;
            let bad = special_violations(&bg);
            if !bad.is_empty() {
                return Err(GridError::NotSpecial(bad));
            }
            let corners = bg.crossings.iter().map(|&s| crossing_corner(&bg.grid, s).expect("condition 3 holds")).collect();
            Ok(SpecialGrid { braid: bg, corners })
        })
        .collect();
    let last_err = tried.iter().rposition(|r| r.is_err()).map(|i| tried.remove(i));
    tried.retain(|r| r.is_ok());
    tried.into_iter().chain(last_err)
}

/// The labelled squares and O's around a crossing corner.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CornerMarking {
    pub n: usize,
    pub corner: Square,
    pub a: [Square; 2],
    pub b: [Square; 2],
    pub x0: Vec<Square>,
    pub o: Vec<Square>,
    /// O's of the row below, row above, column right and column left of the corner
    pub o_a: Square,
    pub o_b: Square,
    pub o_c: Square,
    pub o_d: Square,
}

impl CornerMarking {
    pub fn at(g: &GridDiagram, corner: Square) -> Result<Self, GridError> {
        let n = g.n;
        if g.is_singular() || n > MAX_MASK_SIZE {
            return Err(GridError::Corner(corner, "needs a non-singular grid of size at most 11".into()));
        }
        let (i, j) = corner;
        let (il, jd) = ((i + n - 1) % n, (j + n - 1) % n);
        let (ul, ur, ll, lr) = ((il, j), (i, j), (il, jd), (i, jd));
        let four = [ul, ur, ll, lr];
        if g.o.iter().any(|s| four.contains(s)) {
            return Err(GridError::Corner(corner, "an O touches the corner".into()));
        }
        let on_a = g.is_x(ul) && g.is_x(lr) && !g.is_x(ur) && !g.is_x(ll);
        let on_b = g.is_x(ur) && g.is_x(ll) && !g.is_x(ul) && !g.is_x(lr);
        if !on_a && !on_b {
            return Err(GridError::Corner(corner, "the X's do not sit on a diagonal pair".into()));
        }
        let o_in_row = |r: usize| *g.o.iter().find(|s| s.1 == r).expect("row has an O");
        let o_in_col = |c: usize| *g.o.iter().find(|s| s.0 == c).expect("column has an O");
        Ok(CornerMarking {
            n,
            corner,
            a: [ul, lr],
            b: [ur, ll],
            x0: g.x.iter().copied().filter(|s| !four.contains(s)).collect(),
            o: g.o.clone(),
            o_a: o_in_row(jd),
            o_b: o_in_row(j),
            o_c: o_in_col(i),
            o_d: o_in_col(il),
        })
    }

    fn grid_with(&self, pair: [Square; 2]) -> GridDiagram {
        let mut x = self.x0.clone();
        x.extend(pair);
        GridDiagram { n: self.n, o: self.o.clone(), x, xx: Vec::new() }
    }

    pub fn grid_a(&self) -> GridDiagram {
        self.grid_with(self.a)
    }

    pub fn grid_b(&self) -> GridDiagram {
        self.grid_with(self.b)
    }

    fn allowed(&self, r: &Rect, pair: &[Square; 2]) -> bool {
        !self.x0.iter().chain(pair).any(|&s| r.contains_square(self.n, s))
    }

    fn through_corner(&self, s: &[usize]) -> bool {
        s[self.corner.0] == self.corner.1
    }

    fn row_mask(&self, r: usize) -> u128 {
        Rect { col: 0, width: self.n, row: r, height: 1 }.mask(self.n)
    }

    fn col_mask(&self, c: usize) -> u128 {
        Rect { col: c, width: 1, row: 0, height: self.n }.mask(self.n)
    }

    fn o_label(&self, mask: u128) -> Vec<&'static str> {
        let n = self.n;
        [("U_a", self.o_a), ("U_b", self.o_b), ("U_c", self.o_c), ("U_d", self.o_d)]
            .into_iter()
            .filter(|(_, (c, r))| mask >> (c * n + r) & 1 == 1)
            .map(|(l, _)| l)
            .collect()
    }
}

/// Outcome of composing the two corner maps on every state through the corner.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompositeReport {
    pub corner: Square,
    pub states: usize,
    /// per state: the annuli returning to it, as `(label, sign)`
    pub diagonal_terms: Vec<(String, i64)>,
    /// domains to other states with an odd number of decompositions
    pub unpaired: usize,
    pub holds: bool,
    /// first state where the identity fails
    pub violation: Option<Vec<usize>>,
}

/// Checks `Φ_A ∘ Φ_B = U_a + U_b - U_c - U_d` on the states through the corner.
///
/// Annuli returning to the state get the sign `+1` when horizontal and `-1`
/// when vertical. Other domains must split into rectangle pairs in an even
/// number of ways, so that their signed counts cancel.
pub fn special_composite_check(m: &CornerMarking) -> CompositeReport {
    let n = m.n;
    let (i, j) = m.corner;
    let (il, jd) = ((i + n - 1) % n, (j + n - 1) % n);
    let expected: HashMap<u128, (String, i64)> = [
        (m.row_mask(jd), 1),
        (m.row_mask(j), 1),
        (m.col_mask(i), -1),
        (m.col_mask(il), -1),
    ]
    .into_iter()
    .map(|(mask, sign)| (mask, (m.o_label(mask).join("+"), sign)))
    .collect();
    let states: Vec<Vec<usize>> = all_states(n).into_iter().filter(|s| m.through_corner(s)).collect();
    let mut report = CompositeReport {
        corner: m.corner,
        states: states.len(),
        diagonal_terms: Vec::new(),
        unpaired: 0,
        holds: true,
        violation: None,
    };
    let per_state: Vec<(Vec<(String, i64)>, usize, bool)> = states
        .par_iter()
        .map(|x| {
            let mut domains: HashMap<(Vec<usize>, u128, u128), usize> = HashMap::new();
            for (r1, y) in rectangles_from(x).filter(|(r, y)| m.allowed(r, &m.a) && !m.through_corner(y)) {
                let m1 = r1.mask(n);
                for (r2, z) in rectangles_from(&y).filter(|(r, z)| m.allowed(r, &m.b) && m.through_corner(z)) {
                    let m2 = r2.mask(n);
                    *domains.entry((z, m1 & m2, m1 ^ m2)).or_default() += 1;
                }
            }
            let mut diagonal = Vec::new();
            let mut unpaired = 0;
            let mut ok = true;
            for ((z, twice, once), count) in domains {
                if z == *x {
                    match expected.get(&once) {
                        Some(term) if twice == 0 && count == 1 => diagonal.push(term.clone()),
                        _ => ok = false,
                    }
                } else if count % 2 == 1 {
                    unpaired += 1;
                    ok = false;
                }
            }
            diagonal.sort();
            (diagonal, unpaired, ok)
        })
        .collect();
    for (x, (diagonal, unpaired, ok)) in states.iter().zip(per_state) {
        report.unpaired += unpaired;
        let mut ok = ok && diagonal.len() == 4;
        if report.diagonal_terms.is_empty() {
            report.diagonal_terms = diagonal.clone();
        }
        ok &= diagonal == report.diagonal_terms;
        if !ok && report.violation.is_none() {
            report.violation = Some(x.clone());
            report.holds = false;
        }
    }
    report
}

/// The two rectangles from `Λ` of `G_A` to `Λ` of `G_B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZipReport {
    pub corner: Square,
    /// `(rectangle, O labels, annulus kind)` per rectangle found
    pub rectangles: Vec<(Rect, Vec<&'static str>, &'static str)>,
    pub opposite_signs: bool,
    pub holds: bool,
}

/// Counts the rectangles of `G_B` from the canonical generator of `G_A` to
/// that of `G_B`. Each is completed by the lower-left square, a rectangle
/// back from `Λ_B` to `Λ_A`, into a thin annulus whose direction fixes its
/// relative sign.
pub fn zip_on_lambda_check(m: &CornerMarking) -> ZipReport {
    let n = m.n;
    let (lam_a, lam_b) = (m.grid_a().canonical_generator(), m.grid_b().canonical_generator());
    let rects = zip_rectangles(m, &lam_a, &lam_b);
    let back = rectangles_between(&lam_b, &lam_a);
    let unit = back.iter().find(|r| r.width == 1 && r.height == 1).map(|r| r.mask(n));
    let (i, j) = m.corner;
    let (il, jd) = ((i + n - 1) % n, (j + n - 1) % n);
    let rectangles: Vec<(Rect, Vec<&'static str>, &'static str)> = rects
        .iter()
        .map(|r| {
            let mask = r.mask(n);
            let kind = match unit.map(|u| u | mask) {
                Some(a) if a == m.row_mask(jd) && mask & unit.unwrap_or(0) == 0 => "horizontal",
                Some(a) if a == m.col_mask(il) && mask & unit.unwrap_or(0) == 0 => "vertical",
                _ => "none",
            };
            (*r, m.o_label(mask), kind)
        })
        .collect();
    let kinds: Vec<&str> = rectangles.iter().map(|r| r.2).collect();
    let opposite_signs = kinds.len() == 2 && kinds.contains(&"horizontal") && kinds.contains(&"vertical");
    let labels_ok = rectangles.iter().all(|(_, l, k)| match *k {
        "horizontal" => l == &["U_a"],
        "vertical" => l == &["U_d"],
        _ => false,
    });
    ZipReport { corner: m.corner, holds: opposite_signs && labels_ok, opposite_signs, rectangles }
}

/// Rectangles of `G_B` from `from` to `to`.
pub fn zip_rectangles(m: &CornerMarking, from: &[usize], to: &[usize]) -> Vec<Rect> {
    rectangles_between(from, to).into_iter().filter(|r| m.allowed(r, &m.b)).collect()
}

/// No rectangle avoiding every X leaves the canonical generator.
pub fn lambda_is_cycle(g: &GridDiagram) -> bool {
    let lam = g.canonical_generator();
    let xs: Vec<Square> = g.x.iter().chain(&g.xx).copied().collect();
    let leaving = rectangles_from(&lam).any(|(r, _)| !xs.iter().any(|&s| r.contains_square(g.n, s)));
    !leaving
}

/// Alexander grading of the canonical generator and the maximum over all states.
pub fn lambda_alexander(g: &GridDiagram) -> (i64, i64) {
    let lam = g.gradings(&g.canonical_generator()).a2;
    let max = all_states(g.n).par_iter().map(|s| g.gradings(s).a2).max().expect("states exist");
    (lam, max)
}

/// Contracts the two rows and two columns around each corner into a single
/// square marked `XX`, one singular point per corner.
pub fn singularize(g: &GridDiagram, corners: &[Square]) -> Result<GridDiagram, GridError> {
    let mut g = g.clone();
    let mut corners = corners.to_vec();
    while let Some((i, j)) = corners.pop() {
        let n = g.n;
        if n < 2 {
            return Err(GridError::Corner((i, j), "grid too small".into()));
        }
        let (il, jd) = ((i + n - 1) % n, (j + n - 1) % n);
        let four = [(il, j), (i, j), (il, jd), (i, jd)];
        let xs: Vec<Square> = four.iter().copied().filter(|&s| g.x.contains(&s)).collect();
        let diagonal = xs.len() == 2 && xs[0].0 != xs[1].0 && xs[0].1 != xs[1].1;
        if !diagonal || g.o.iter().chain(&g.xx).any(|s| four.contains(s)) {
            return Err(GridError::Corner((i, j), "not a crossing corner".into()));
        }
        if corners.iter().any(|&(c, r)| c == i || r == j) {
            return Err(GridError::Corner((i, j), "shares a line with another corner".into()));
        }
        let col = |c: usize| if c == i { il.min(n - 2) } else if c > i { c - 1 } else { c };
        let row = |r: usize| if r == j { jd.min(n - 2) } else if r > j { r - 1 } else { r };
        let map = |v: &[Square]| v.iter().filter(|s| !four.contains(s)).map(|&(c, r)| (col(c), row(r))).collect::<Vec<_>>();
        let mut xx = map(&g.xx);
        xx.push((col(il), row(jd)));
        g = GridDiagram::new(n - 1, map(&g.o), map(&g.x), xx)?;
        corners = corners.into_iter().map(|(c, r)| (col(c), row(r))).collect();
    }
    Ok(g)
}
