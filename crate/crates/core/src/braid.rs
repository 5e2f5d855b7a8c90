//! Braid words and the decorated diagram of their closure.
//!
//! Strands run upward. Letter `k` (0-based) sits at height `k + 1`, and the
//! distinguished vertex sits on position 1 above every crossing. Edges are
//! numbered in traversal order starting right after that vertex.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("syntax error at column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("closure is a link, not a knot: {components} components with strand cycles {cycles:?}")]
    NotAKnot { components: usize, cycles: Vec<Vec<usize>> },
    #[error("diagram does not match its braid word: {0}")]
    Inconsistent(String),
    #[error("malformed diagram JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

/// Generator `σ_gen` (1-based) with a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub sign: Sign,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Positive => write!(f, "s{}", self.generator),
            Sign::Negative => write!(f, "-s{}", self.generator),
        }
    }
}

impl FromStr for Letter {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (sign, rest) = match s.strip_prefix('-') {
            Some(r) => (Sign::Negative, r),
            None => (Sign::Positive, s),
        };
        let digits = rest.strip_prefix('s').ok_or_else(|| format!("expected `s<k>` or `-s<k>`, found `{s}`"))?;
        let generator: usize = digits.parse().map_err(|_| format!("bad generator index in `{s}`"))?;
        if generator == 0 {
            return Err("generator indices start at 1".into());
        }
        Ok(Letter { generator, sign })
    }
}

impl Serialize for Letter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A braid word whose closure is a knot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    /// Validates generator range and that the closure has one component.
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::Syntax { col: 1, msg: "a braid needs at least one strand".into() });
        }
        if let Some(l) = letters.iter().find(|l| l.generator >= strands) {
            return Err(BraidError::Syntax {
                col: 1,
                msg: format!("generator s{} out of range for {strands} strands", l.generator),
            });
        }
        let w = BraidWord { strands, letters };
        let cycles = w.cycles();
        if cycles.len() != 1 {
            return Err(BraidError::NotAKnot { components: cycles.len(), cycles });
        }
        Ok(w)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn negative_count(&self) -> usize {
        self.letters.iter().filter(|l| l.sign == Sign::Negative).count()
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.sign.value()).sum()
    }

    /// Cycles of the strand permutation (1-based positions); one per component.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        cycles_of(self.strands, &self.letters)
    }
}

/// `perm[p]` is where the strand starting at position `p` ends (0-based).
fn permutation(strands: usize, letters: &[Letter]) -> Vec<usize> {
    let mut at: Vec<usize> = (0..strands).collect();
    for l in letters {
        at.swap(l.generator - 1, l.generator);
    }
    let mut perm = vec![0; strands];
    for (pos, &start) in at.iter().enumerate() {
        perm[start] = pos;
    }
    perm
}

fn cycles_of(strands: usize, letters: &[Letter]) -> Vec<Vec<usize>> {
    let perm = permutation(strands, letters);
    let mut seen = vec![false; strands];
    let mut out = Vec::new();
    for s in 0..strands {
        if seen[s] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut p = s;
        while !seen[p] {
            seen[p] = true;
            cyc.push(p + 1);
            p = perm[p];
        }
        out.push(cyc);
    }
    out
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;
    fn from_str(s: &str) -> Result<Self, BraidError> {
        parse_braid(s)
    }
}

/// Parses `B<strands>: (s<k> | -s<k>)*`.
pub fn parse_braid(text: &str) -> Result<BraidWord, BraidError> {
    let lead = text.len() - text.trim_start().len();
    let body = text.trim_start();
    let syntax = |col: usize, msg: String| BraidError::Syntax { col: col + 1, msg };
    let rest = body.strip_prefix('B').ok_or_else(|| syntax(lead, "expected `B<strands>:`".into()))?;
    let colon = rest.find(':').ok_or_else(|| syntax(lead + 1, "missing `:` after strand count".into()))?;
    let strands: usize =
        rest[..colon].trim().parse().map_err(|_| syntax(lead + 1, format!("bad strand count `{}`", &rest[..colon])))?;
    if strands == 0 {
        return Err(syntax(lead + 1, "a braid needs at least one strand".into()));
    }
    let base = lead + 1 + colon + 1;
    let tail = &rest[colon + 1..];
    let mut letters = Vec::new();
    let mut offset = 0;
    for tok in tail.split_whitespace() {
        let at = offset + tail[offset..].find(tok).expect("token comes from this string");
        offset = at + tok.len();
        let letter: Letter = tok.parse().map_err(|m| syntax(base + at, m))?;
        if letter.generator >= strands {
            return Err(syntax(base + at, format!("generator s{} out of range for {strands} strands", letter.generator)));
        }
        letters.push(letter);
    }
    BraidWord::new(strands, letters)
}

/// A vertex of the decorated diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagramVertex {
    Crossing(usize),
    Marked,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: usize,
    pub tail: DiagramVertex,
    pub head: DiagramVertex,
    /// Braid position (1-based) the edge runs along.
    pub position: usize,
    /// Height just above the tail: `k + 1` after crossing `k`, `n` after the marked vertex.
    pub height: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub index: usize,
    pub generator: usize,
    pub sign: Sign,
    /// outgoing left
    pub a: usize,
    /// outgoing right
    pub b: usize,
    /// incoming left
    pub c: usize,
    /// incoming right
    pub d: usize,
}

/// The closure with its distinguished vertex, edges in traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecoratedDiagram {
    word: BraidWord,
    edges: Vec<Edge>,
    crossings: Vec<Crossing>,
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    strands: usize,
    letters: Vec<Letter>,
    edges: Vec<Edge>,
    crossings: Vec<Crossing>,
    distinguished_edge: usize,
}

impl DecoratedDiagram {
    pub fn word(&self) -> &BraidWord {
        &self.word
    }

    pub fn strands(&self) -> usize {
        self.word.strands
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edge leaving the distinguished vertex; always `0`.
    pub fn distinguished_edge(&self) -> usize {
        0
    }

    /// Edge entering the distinguished vertex.
    pub fn final_edge(&self) -> usize {
        self.edges.len() - 1
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DiagramJson {
            strands: self.word.strands,
            letters: self.word.letters.clone(),
            edges: self.edges.clone(),
            crossings: self.crossings.clone(),
            distinguished_edge: 0,
        })
        .expect("diagram serializes")
    }

    /// Parses and checks the stored data against a fresh build from the word.
    pub fn from_json(s: &str) -> Result<Self, BraidError> {
        let j: DiagramJson = serde_json::from_str(s).map_err(|e| BraidError::Json(e.to_string()))?;
        let d = build_diagram(&BraidWord::new(j.strands, j.letters)?);
        if j.distinguished_edge != 0 {
            return Err(BraidError::Inconsistent("distinguished edge must be 0".into()));
        }
        if d.edges != j.edges {
            return Err(BraidError::Inconsistent("edge list differs".into()));
        }
        if d.crossings != j.crossings {
            return Err(BraidError::Inconsistent("crossing labels differ".into()));
        }
        Ok(d)
    }
}

/// Walks the closure from the distinguished vertex and labels every edge end.
pub fn build_diagram(w: &BraidWord) -> DecoratedDiagram {
    let n = w.letters.len();
    let mut crossings: Vec<Crossing> = w
        .letters
        .iter()
        .enumerate()
        .map(|(index, l)| Crossing { index, generator: l.generator, sign: l.sign, a: 0, b: 0, c: 0, d: 0 })
        .collect();
    let mut edges = Vec::with_capacity(2 * n + 1);
    // state: position (1-based) and height of the tail
    let (mut pos, mut height, mut tail) = (1usize, n, DiagramVertex::Marked);
    loop {
        let id = edges.len();
        // next letter above `height` touching `pos`, wrapping through the bottom
        let touches = |k: usize| {
            let g = w.letters[k].generator;
            g == pos || g + 1 == pos
        };
        let next = (height..n).find(|&k| touches(k)).or_else(|| {
            // the marked vertex tops position 1; every other position wraps
            if pos == 1 && tail != DiagramVertex::Marked {
                None
            } else {
                (0..n).find(|&k| touches(k))
            }
        });
        match next {
            None => {
                edges.push(Edge { id, tail, head: DiagramVertex::Marked, position: pos, height });
                break;
            }
            Some(k) => {
                edges.push(Edge { id, tail, head: DiagramVertex::Crossing(k), position: pos, height });
                let g = crossings[k].generator;
                if pos == g {
                    crossings[k].c = id;
                    pos = g + 1;
                } else {
                    crossings[k].d = id;
                    pos = g;
                }
                height = k + 1;
                tail = DiagramVertex::Crossing(k);
            }
        }
    }
    // outgoing labels: the edge leaving crossing k on the left is `a`, right is `b`
    for e in &edges {
        if let DiagramVertex::Crossing(k) = e.tail {
            if e.position == crossings[k].generator {
                crossings[k].a = e.id;
            } else {
                crossings[k].b = e.id;
            }
        }
    }
    debug_assert_eq!(edges.len(), 2 * n + 1);
    DecoratedDiagram { word: w.clone(), edges, crossings }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let w = parse_braid("B2: s1 s1 s1").unwrap();
        assert_eq!((w.strands(), w.len(), w.negative_count()), (2, 3, 0));
        let u = parse_braid("B1:").unwrap();
        assert!(u.is_empty());
        match parse_braid("B2: s1 s1") {
            Err(BraidError::NotAKnot { components, .. }) => assert_eq!(components, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_columns() {
        match parse_braid("B3: s1 x2") {
            Err(BraidError::Syntax { col, .. }) => assert_eq!(col, 8),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_braid("B2: s2"), Err(BraidError::Syntax { .. })));
        assert!(matches!(parse_braid("2: s1"), Err(BraidError::Syntax { .. })));
        assert!(matches!(parse_braid("B0:"), Err(BraidError::Syntax { .. })));
    }

    #[test]
    fn display_round_trips() {
        let w = parse_braid("  B3:  s1   -s2 s1 -s2 ").unwrap();
        assert_eq!(w.to_string(), "B3: s1 -s2 s1 -s2");
        assert_eq!(parse_braid(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn trefoil_labels() {
        let d = build_diagram(&parse_braid("B2: s1 s1 s1").unwrap());
        assert_eq!(d.edge_count(), 7);
        let cs: Vec<_> = d.crossings().iter().map(|c| (c.a, c.b, c.c, c.d)).collect();
        // e0 enters crossing 0 on the left and leaves on the right, and so on
        assert_eq!(cs, vec![(4, 1, 0, 3), (2, 5, 4, 1), (6, 3, 2, 5)]);
    }

    #[test]
    fn unknot_has_one_edge() {
        let d = build_diagram(&parse_braid("B1:").unwrap());
        assert_eq!(d.edge_count(), 1);
        assert_eq!((d.edges()[0].tail, d.edges()[0].head), (DiagramVertex::Marked, DiagramVertex::Marked));
    }
}
