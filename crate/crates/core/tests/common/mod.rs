//! Oracles shared by the integration tests. Nothing here calls the library's
//! elimination routines.
#![allow(dead_code)]

use fourfold_core::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn to_i128(m: &IntMatrix) -> Vec<Vec<i128>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_i128().expect("small entries")).collect())
        .collect()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-bound..=bound)))
}

/// Fraction-free Bareiss determinant.
pub fn det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: `d_1 ⋯ d_k` is the gcd of
/// the `k × k` minors.
pub fn invariant_factors_by_minors(m: &IntMatrix) -> Vec<BigInt> {
    let a = to_i128(m);
    let (r, c) = (m.rows(), m.cols());
    let mut divisors = vec![1i128];
    for k in 1..=r.min(c) {
        let mut g = 0i128;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let minor = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| a[i][j]).collect())
                    .collect();
                g = g.gcd(&det(minor));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    divisors
        .windows(2)
        .map(|w| BigInt::from(w[1] / w[0]))
        .collect()
}

pub fn rank_mod_p(m: &IntMatrix, p: i128) -> usize {
    let mut a: Vec<Vec<i128>> = to_i128(m)
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = (0..p).find(|x| (x * a[rank][col]) % p == 1).unwrap();
        for i in 0..rows {
            if i != rank && a[i][col] != 0 {
                let f = a[i][col] * inv % p;
                let pivot = a[rank].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Exhaustive search for `A x = b` with `|x_i| ≤ bound`.
pub fn brute_force_solve(a: &[Vec<i64>], b: &[i64], cols: usize, bound: i64) -> Option<Vec<i64>> {
    let mut x = vec![-bound; cols];
    loop {
        if a
            .iter()
            .zip(b)
            .all(|(row, &bi)| row.iter().zip(&x).map(|(p, q)| p * q).sum::<i64>() == bi)
        {
            return Some(x);
        }
        let mut i = 0;
        loop {
            if i == cols {
                return None;
            }
            if x[i] < bound {
                x[i] += 1;
                break;
            }
            x[i] = -bound;
            i += 1;
        }
    }
}

/// Product of random elementary operations, so unimodular by construction.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    if n < 2 {
        return u;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        u.add_row_multiple(i, j, &BigInt::from(rng.gen_range(-2..=2)));
        if rng.gen_bool(0.3) {
            u.swap_rows(i, j);
        }
    }
    u
}
