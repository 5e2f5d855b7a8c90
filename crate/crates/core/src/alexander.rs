//! Alexander polynomial of a braid closure from the reduced Burau representation.

use num_traits::{Signed, Zero};

use crate::arith::{LaurentPoly, RatFunc, UniPoly};
use crate::braid::{BraidWord, Sign};

type Dense = Vec<Vec<RatFunc>>;

fn identity(n: usize) -> Dense {
    (0..n).map(|i| (0..n).map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() }).collect()).collect()
}

fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(RatFunc::zero(), |acc, k| {
                        if a[i][k].is_zero() || b[k][j].is_zero() { acc } else { &acc + &(&a[i][k] * &b[k][j]) }
                    })
                })
                .collect()
        })
        .collect()
}

/// Reduced Burau matrix of `σ_i` (1-based) on `strands` strands.
pub fn burau_generator(strands: usize, i: usize) -> Vec<Vec<RatFunc>> {
    let n = strands - 1;
    let mut m = identity(n);
    let t = RatFunc::t();
    let k = i - 1;
    m[k][k] = -&t;
    if k > 0 {
        m[k][k - 1] = t.clone();
    }
    if k + 1 < n {
        m[k][k + 1] = RatFunc::one();
    }
    m
}

/// Inverse by Gauss-Jordan; the Burau generators are always invertible.
fn inverse(a: &Dense) -> Dense {
    let n = a.len();
    let mut m: Vec<Vec<RatFunc>> = a.iter().zip(identity(n)).map(|(r, e)| r.iter().cloned().chain(e).collect()).collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero()).expect("invertible");
        m.swap(col, p);
        let inv = m[col][col].inv().expect("nonzero pivot");
        m[col] = m[col].iter().map(|x| x * &inv).collect();
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let prow = m[col].clone();
                m[r] = m[r].iter().zip(&prow).map(|(x, y)| x - &(&f * y)).collect();
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

pub fn det(a: &Dense) -> RatFunc {
    let n = a.len();
    let mut m = a.clone();
    let mut acc = RatFunc::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return RatFunc::zero();
        };
        if p != col {
            m.swap(col, p);
            acc = -acc;
        }
        acc = &acc * &m[col][col];
        let inv = m[col][col].inv().expect("nonzero pivot");
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = &m[r][col] * &inv;
                let prow = m[col].clone();
                m[r] = m[r].iter().zip(&prow).map(|(x, y)| x - &(&f * y)).collect();
            }
        }
    }
    acc
}

/// Product of the generator matrices in word order.
pub fn burau_matrix(w: &BraidWord) -> Vec<Vec<RatFunc>> {
    let n = w.strands() - 1;
    let mut acc = identity(n);
    for l in w.letters() {
        let g = burau_generator(w.strands(), l.generator);
        let g = if l.sign == Sign::Positive { g } else { inverse(&g) };
        acc = matmul(&acc, &g);
    }
    acc
}

/// Symmetrized Alexander polynomial with `Δ(1) = 1`.
pub fn alexander_from_braid(w: &BraidWord) -> LaurentPoly {
    let n = w.strands() - 1;
    let psi = burau_matrix(w);
    let diff: Dense = identity(n).iter().zip(&psi).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect()).collect();
    // det(I - ψ) (1 - t) / (1 - t^b)
    let one_minus_t = RatFunc::from_poly(UniPoly::from_ints(&[1, -1]));
    let mut geom = vec![0i64; w.strands() + 1];
    geom[0] = 1;
    geom[w.strands()] = -1;
    let one_minus_tb = RatFunc::from_poly(UniPoly::from_ints(&geom));
    let q = (&det(&diff) * &one_minus_t).checked_div(&one_minus_tb).expect("1 - t^b is nonzero");
    laurent_normalize(&q)
}

/// Turns `p(t) / t^k` into a centred integer Laurent polynomial, value 1 at 1.
fn laurent_normalize(q: &RatFunc) -> LaurentPoly {
    let den = q.den();
    let k = den.degree().expect("nonzero");
    assert!(
        den.coeffs()[..k].iter().all(|c| c.is_zero()),
        "Burau quotient is not a Laurent polynomial: {q}"
    );
    let mut p = LaurentPoly::zero();
    for (e, c) in q.num().coeffs().iter().enumerate() {
        assert!(c.is_integer(), "Burau quotient has a non-integral coefficient: {q}");
        p.add_term(c.to_integer(), e as i64 - k as i64);
    }
    let p = p.centered().expect("knot Alexander polynomials have even span");
    if p.eval_one().is_negative() { p.neg() } else { p }
}
