//! Reduction modulo the prime `2^61 - 1` at a fixed point `t = t0`.
//!
//! The rank of a reduced matrix is a lower bound for its rank over Q(t).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::poly::UniPoly;
use super::ratfunc::RatFunc;
use super::sparse::SparseMatrix;

pub const PRIME: u64 = (1 << 61) - 1;

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> Option<u64> {
    (a != 0).then(|| pow(a, PRIME - 2))
}

fn int_mod(n: &BigInt) -> u64 {
    let p = BigInt::from(PRIME);
    let r = ((n % &p) + &p) % &p;
    r.to_u64().expect("reduced below the prime")
}

/// `None` when the denominator vanishes mod the prime.
pub fn rational_mod(q: &BigRational) -> Option<u64> {
    Some(mul(int_mod(q.numer()), inv(int_mod(q.denom()))?))
}

pub fn poly_mod(p: &UniPoly, t0: u64) -> Option<u64> {
    let mut acc = 0;
    for c in p.coeffs().iter().rev() {
        acc = (mul(acc, t0) + rational_mod(c)?) % PRIME;
    }
    Some(acc)
}

/// `None` when `t0` is a pole mod the prime.
pub fn ratfunc_mod(f: &RatFunc, t0: u64) -> Option<u64> {
    Some(mul(poly_mod(f.num(), t0)?, inv(poly_mod(f.den(), t0)?)?))
}

/// Rank of `m` reduced at `t = t0`; `None` if some entry has a pole there.
pub fn rank_mod(m: &SparseMatrix, t0: u64) -> Option<usize> {
    let cols = m.cols();
    let mut rows = Vec::with_capacity(m.rows());
    for r in m.row_vecs() {
        let mut dense = vec![0u64; cols];
        for (c, v) in r.iter() {
            dense[*c] = ratfunc_mod(v, t0)?;
        }
        rows.push(dense);
    }
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, p);
        let pinv = inv(rows[rank][col]).expect("nonzero pivot");
        let prow = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = mul(row[col], pinv);
            if f != 0 {
                for (x, y) in row.iter_mut().zip(&prow).skip(col) {
                    *x = (*x + PRIME - mul(f, *y)) % PRIME;
                }
            }
        }
        rank += 1;
    }
    Some(rank)
}
