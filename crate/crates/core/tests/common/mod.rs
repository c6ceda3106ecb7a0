//! Independent reference computations over the rationals, written directly on
//! `BigRational` without the library's matrix or polynomial code.

#![allow(dead_code)]

use cagekit::{FieldElement, Node};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn to_q(x: &FieldElement) -> Q {
    x.to_rational().expect("rational element").clone()
}

pub fn point_q(node: &Node) -> Vec<Q> {
    node.point().iter().map(to_q).collect()
}

/// `C(n, k)` by the multiplicative formula in 128-bit arithmetic.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    acc as u64
}

/// All exponent vectors of total degree `k` in `vars` variables, any order.
pub fn exponents(k: u32, vars: usize) -> Vec<Vec<u32>> {
    if vars == 1 {
        return vec![vec![k]];
    }
    let mut out = Vec::new();
    for first in 0..=k {
        for mut rest in exponents(k - first, vars - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn monomial_value(p: &[Q], e: &[u32]) -> Q {
    let mut acc = Q::one();
    for (x, &k) in p.iter().zip(e) {
        for _ in 0..k {
            acc *= x;
        }
    }
    acc
}

pub fn eval_matrix(points: &[Vec<Q>], k: u32) -> (Vec<Vec<Q>>, Vec<Vec<u32>>) {
    let vars = points[0].len();
    let exps = exponents(k, vars);
    let rows = points
        .iter()
        .map(|p| exps.iter().map(|e| monomial_value(p, e)).collect())
        .collect();
    (rows, exps)
}

/// Row-echelon reduction; returns (rank, reduced rows, pivot columns).
pub fn reduce(mut m: Vec<Vec<Q>>) -> (usize, Vec<Vec<Q>>, Vec<usize>) {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = Q::one() / &m[rank][c];
        for x in m[rank].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for cc in 0..cols {
                    let sub = &f * &m[rank][cc];
                    m[r][cc] -= sub;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    (rank, m, pivots)
}

pub fn rank(m: Vec<Vec<Q>>) -> usize {
    reduce(m).0
}

/// Rank after scaling every row to integers, by fraction-free elimination
/// with exact division by the previous pivot.
pub fn integer_rank(m: &[Vec<Q>]) -> usize {
    let mut rows: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let den = row.iter().fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
            row.iter().map(|x| x.numer() * (&den / x.denom())).collect()
        })
        .collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for r in rank + 1..rows.len() {
            for cc in c + 1..cols {
                let v = &rows[rank][c] * &rows[r][cc] - &rows[r][c] * &rows[rank][cc];
                rows[r][cc] = v / &prev;
            }
            rows[r][c] = BigInt::zero();
        }
        prev = rows[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Kernel basis of `m` (as column vectors of length `cols`).
pub fn kernel(m: Vec<Vec<Q>>, cols: usize) -> Vec<Vec<Q>> {
    let (rank, r, pivots) = reduce(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (row, &pc) in pivots.iter().enumerate().take(rank) {
                v[pc] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

pub fn eval_poly(coeffs: &[Q], exps: &[Vec<u32>], p: &[Q]) -> Q {
    coeffs
        .iter()
        .zip(exps)
        .fold(Q::zero(), |acc, (c, e)| acc + c * monomial_value(p, e))
}

/// Elementary symmetric functions by summing products over all subsets.
pub fn elementary_symmetric(values: &[Q]) -> Vec<Q> {
    let n = values.len();
    let mut e = vec![Q::zero(); n];
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        let prod = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .fold(Q::one(), |acc, i| acc * &values[i]);
        e[size - 1] += prod;
    }
    e
}

pub fn is_integer(x: &Q) -> bool {
    x.denom() == &BigInt::one()
}
