//! Toroidal grid diagrams, states and empty rectangles.

use serde::{Deserialize, Serialize};

use super::GridError;

/// A square `(column, row)`, rows counted upwards.
pub type Square = (usize, usize);

/// An `n x n` grid with O, X and doubled X markings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridDiagram {
    pub n: usize,
    #[serde(rename = "O")]
    pub o: Vec<Square>,
    #[serde(rename = "X")]
    pub x: Vec<Square>,
    #[serde(rename = "XX", default)]
    pub xx: Vec<Square>,
}

impl GridDiagram {
    /// Checks the row and column marking counts.
    pub fn new(n: usize, o: Vec<Square>, x: Vec<Square>, xx: Vec<Square>) -> Result<Self, GridError> {
        let g = GridDiagram { n, o, x, xx };
        g.validate()?;
        Ok(g)
    }

    /// Non-singular grid from `column -> row` permutations.
    pub fn from_perms(o: &[usize], x: &[usize]) -> Result<Self, GridError> {
        if o.len() != x.len() {
            return Err(GridError::Shape(format!("{} O's but {} X's", o.len(), x.len())));
        }
        Self::new(o.len(), o.iter().copied().enumerate().collect(), x.iter().copied().enumerate().collect(), Vec::new())
    }

    fn validate(&self) -> Result<(), GridError> {
        let n = self.n;
        if n == 0 {
            return Err(GridError::Shape("empty grid".into()));
        }
        if let Some(s) = self.o.iter().chain(&self.x).chain(&self.xx).find(|(c, r)| *c >= n || *r >= n) {
            return Err(GridError::Shape(format!("square {s:?} outside a {n}x{n} grid")));
        }
        let mut seen = vec![false; n * n];
        for &(c, r) in self.o.iter().chain(&self.x).chain(&self.xx) {
            let k = c * n + r;
            if std::mem::replace(&mut seen[k], true) {
                return Err(GridError::Shape(format!("square {:?} is marked twice", (c, r))));
            }
        }
        for line in 0..n {
            for (name, pick) in [("column", 0usize), ("row", 1)] {
                let on = |s: &Square| if pick == 0 { s.0 == line } else { s.1 == line };
                let os = self.o.iter().filter(|s| on(s)).count();
                let xs = self.x.iter().filter(|s| on(s)).count() + 2 * self.xx.iter().filter(|s| on(s)).count();
                if os != xs || !(1..=2).contains(&os) {
                    return Err(GridError::Shape(format!("{name} {line} has {os} O's and {xs} X's")));
                }
            }
        }
        Ok(())
    }

    pub fn is_singular(&self) -> bool {
        !self.xx.is_empty() || self.o.len() != self.n
    }

    /// `column -> row` of the O's; non-singular grids only.
    pub fn o_perm(&self) -> Vec<usize> {
        perm(self.n, &self.o)
    }

    pub fn x_perm(&self) -> Vec<usize> {
        perm(self.n, &self.x)
    }

    /// Number of link components of a non-singular grid.
    pub fn components(&self) -> usize {
        let (o, x) = (self.o_perm(), self.x_perm());
        let mut o_in_row = vec![0; self.n];
        for (c, &r) in o.iter().enumerate() {
            o_in_row[r] = c;
        }
        // column c: O -> X vertically, then X -> O along row x[c]
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut c = start;
            while !seen[c] {
                seen[c] = true;
                c = o_in_row[x[c]];
            }
        }
        count
    }

    pub fn require_knot(&self) -> Result<(), GridError> {
        if self.is_singular() {
            return Err(GridError::NotAKnot("singular grid".into()));
        }
        match self.components() {
            1 => Ok(()),
            k => Err(GridError::NotAKnot(format!("{k} components"))),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("grid serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, GridError> {
        let g: GridDiagram = serde_json::from_str(s).map_err(|e| GridError::Json(e.to_string()))?;
        g.validate()?;
        Ok(g)
    }

    /// Squares crossed by a vertical arc over a horizontal one.
    pub fn crossing_squares(&self) -> Vec<Square> {
        let n = self.n;
        let (o, x) = (self.o_perm(), self.x_perm());
        let (mut o_col, mut x_col) = (vec![0; n], vec![0; n]);
        for c in 0..n {
            o_col[o[c]] = c;
            x_col[x[c]] = c;
        }
        let mut out = Vec::new();
        for r in 0..n {
            let (a, b) = (x_col[r].min(o_col[r]), x_col[r].max(o_col[r]));
            for c in a + 1..b {
                // the column arc runs upwards from its O to its X
                let up = (r + n - o[c]) % n;
                if up > 0 && up < (x[c] + n - o[c]) % n {
                    out.push((c, r));
                }
            }
        }
        out
    }

    pub fn is_x(&self, s: Square) -> bool {
        self.x.contains(&s) || self.xx.contains(&s)
    }

    /// Lower-left corners of the squares carrying X's.
    pub fn canonical_generator(&self) -> Vec<usize> {
        let mut pts: Vec<Square> = self.x.iter().chain(&self.xx).copied().collect();
        pts.sort();
        let mut state = vec![usize::MAX; self.n];
        for (c, r) in pts {
            state[c] = r;
        }
        state
    }

    /// `2 M_O`, `2 M_X` and `2 A` of a state.
    pub fn gradings(&self, state: &[usize]) -> Gradings {
        let pts: Vec<(i64, i64)> = state.iter().enumerate().map(|(c, &r)| (2 * c as i64, 2 * r as i64)).collect();
        let marks = |v: &[Square], w: &[Square]| -> Vec<(i64, i64)> {
            v.iter().chain(w).chain(w).map(|&(c, r)| (2 * c as i64 + 1, 2 * r as i64 + 1)).collect()
        };
        let (os, xs) = (marks(&self.o, &[]), marks(&self.x, &self.xx));
        let m2 = |q: &[(i64, i64)]| j2(&pts, &pts) - 2 * j2(&pts, q) + j2(q, q) + 2;
        let (mo, mx) = (m2(&os), m2(&xs));
        Gradings { m2: mo, mx2: mx, a2: (mo - mx) / 2 - (self.n as i64 - 1) }
    }
}

/// Grid moves on non-singular grids.
impl GridDiagram {
    /// Translation on the torus by `dc` columns and `dr` rows.
    pub fn shift(&self, dc: usize, dr: usize) -> GridDiagram {
        let n = self.n;
        let mv = |v: &[Square]| v.iter().map(|&(c, r)| ((c + dc) % n, (r + dr) % n)).collect();
        GridDiagram { n, o: mv(&self.o), x: mv(&self.x), xx: mv(&self.xx) }
    }

    /// Swaps columns `i` and `i + 1` when their arcs are disjoint or nested.
    pub fn commute_columns(&self, i: usize) -> Option<GridDiagram> {
        let n = self.n;
        if self.is_singular() || i + 1 >= n {
            return None;
        }
        let (o, x) = (self.o_perm(), self.x_perm());
        let span = |c: usize| (o[c].min(x[c]), o[c].max(x[c]));
        let ((a0, a1), (b0, b1)) = (span(i), span(i + 1));
        let shared = [a0, a1].iter().any(|r| *r == b0 || *r == b1);
        let interleaved = (a0 < b0 && b0 < a1 && a1 < b1) || (b0 < a0 && a0 < b1 && b1 < a1);
        if shared || interleaved {
            return None;
        }
        let (mut o, mut x) = (o, x);
        o.swap(i, i + 1);
        x.swap(i, i + 1);
        GridDiagram::from_perms(&o, &x).ok()
    }

    /// Replaces the X in column `c` by a 2x2 block with X's at its
    /// lower-right and upper-left squares and an O at its upper-right.
    pub fn stabilize(&self, c: usize) -> Option<GridDiagram> {
        if self.is_singular() || c >= self.n {
            return None;
        }
        let (o, x) = (self.o_perm(), self.x_perm());
        let r = x[c];
        let up = |v: usize, at: usize| if v > at { v + 1 } else { v };
        let mut o2: Vec<usize> = o.iter().map(|&v| up(v, r)).collect();
        let mut x2: Vec<usize> = x.iter().map(|&v| up(v, r)).collect();
        x2[c] = r + 1;
        o2.insert(c + 1, r + 1);
        x2.insert(c + 1, r);
        GridDiagram::from_perms(&o2, &x2).ok()
    }
}

fn perm(n: usize, marks: &[Square]) -> Vec<usize> {
    let mut p = vec![usize::MAX; n];
    for &(c, r) in marks {
        p[c] = r;
    }
    p
}

/// `I(P,Q) + I(Q,P)` with `I` counting strictly south-west pairs.
fn j2(p: &[(i64, i64)], q: &[(i64, i64)]) -> i64 {
    let sw = |a: &[(i64, i64)], b: &[(i64, i64)]| -> i64 {
        a.iter().map(|u| b.iter().filter(|v| u.0 < v.0 && u.1 < v.1).count() as i64).sum()
    };
    sw(p, q) + sw(q, p)
}

/// Doubled Maslov and Alexander gradings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gradings {
    pub m2: i64,
    pub mx2: i64,
    pub a2: i64,
}

/// A rectangle on the torus: columns `col..col + width`, rows `row..row + height`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Rect {
    pub col: usize,
    pub width: usize,
    pub row: usize,
    pub height: usize,
}

impl Rect {
    pub fn contains_square(&self, n: usize, (c, r): Square) -> bool {
        (c + n - self.col) % n < self.width && (r + n - self.row) % n < self.height
    }

    /// Lattice point strictly inside.
    pub fn contains_point(&self, n: usize, (c, r): Square) -> bool {
        let (dc, dr) = ((c + n - self.col) % n, (r + n - self.row) % n);
        dc > 0 && dc < self.width && dr > 0 && dr < self.height
    }

    /// Bit mask of the covered squares, indexed `c * n + r`.
    pub fn mask(&self, n: usize) -> u128 {
        let mut m = 0u128;
        for i in 0..self.width {
            for j in 0..self.height {
                m |= 1 << (((self.col + i) % n) * n + (self.row + j) % n);
            }
        }
        m
    }
}

/// Empty rectangles leaving `state`: its points sit at the lower-left and
/// upper-right corners, and the target swaps their rows.
pub fn rectangles_from(state: &[usize]) -> impl Iterator<Item = (Rect, Vec<usize>)> + '_ {
    let n = state.len();
    (0..n).flat_map(move |a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).filter_map(move |(a, b)| {
        let (ra, rb) = (state[a], state[b]);
        if ra == rb {
            return None;
        }
        let rect = Rect { col: a, width: (b + n - a) % n, row: ra, height: (rb + n - ra) % n };
        let empty = (1..rect.width).all(|i| {
            let c = (a + i) % n;
            !rect.contains_point(n, (c, state[c]))
        });
        empty.then(|| {
            let mut y = state.to_vec();
            y.swap(a, b);
            (rect, y)
        })
    })
}

/// Rectangles from `x` to `y`; empty unless they differ in exactly two columns.
pub fn rectangles_between(x: &[usize], y: &[usize]) -> Vec<Rect> {
    let diff: Vec<usize> = (0..x.len()).filter(|&c| x[c] != y[c]).collect();
    if diff.len() != 2 {
        return Vec::new();
    }
    rectangles_from(x).filter(|(_, t)| t == y).map(|(r, _)| r).collect()
}
