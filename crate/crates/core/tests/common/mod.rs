//! Brute-force reference answers, written without any solver code.
//!
//! A set of 0/1 vectors spans a column when some subset of it combines to
//! that column: by integer sum staying 0/1 (binary) or by OR (boolean). The
//! rank is the smallest size of a set spanning every column, and the bases
//! are all spanning sets of that size.

#![allow(dead_code)]

use rankforge::{BinaryMatrix, Semiring};

pub fn entries(a: &BinaryMatrix) -> Vec<Vec<u8>> {
    (0..a.n_rows()).map(|r| (0..a.n_cols()).map(|c| a.get(r, c) as u8).collect()).collect()
}

fn column(a: &[Vec<u8>], c: usize) -> Vec<u8> {
    a.iter().map(|row| row[c]).collect()
}

fn to_vec(bits: u64, n: usize) -> Vec<u8> {
    (0..n).map(|i| (bits >> i & 1) as u8).collect()
}

/// Some subset of `set` combines to `target`.
pub fn spans(set: &[Vec<u8>], target: &[u8], s: Semiring) -> bool {
    let k = set.len();
    for mask in 0u32..1 << k {
        let mut acc = vec![0u32; target.len()];
        for (i, v) in set.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for (a, &x) in acc.iter_mut().zip(v) {
                    *a += x as u32;
                }
            }
        }
        let ok = acc.iter().zip(target).all(|(&a, &t)| match s {
            Semiring::Binary => a == t as u32,
            Semiring::Boolean => (a > 0) == (t == 1),
        });
        if ok {
            return true;
        }
    }
    false
}

fn for_each_combination(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i + 1, cur, f);
            cur.pop();
        }
    }
    go(n, k, 0, &mut Vec::new(), f);
}

/// Rank and every base, each base as sorted vector strings ("0110" form,
/// row 0 first).
pub fn rank_and_bases(a: &BinaryMatrix, s: Semiring) -> (usize, Vec<Vec<String>>) {
    let rows = entries(a);
    let n = a.n_rows();
    let cols: Vec<Vec<u8>> = (0..a.n_cols()).map(|c| column(&rows, c)).collect();
    if cols.iter().all(|c| c.iter().all(|&x| x == 0)) {
        return (0, Vec::new());
    }
    let candidates: Vec<Vec<u8>> = (1..1u64 << n).map(|b| to_vec(b, n)).collect();
    for k in 1..=a.n_cols().min(n) {
        let mut found = Vec::new();
        for_each_combination(candidates.len(), k, &mut |idx| {
            let set: Vec<Vec<u8>> = idx.iter().map(|&i| candidates[i].clone()).collect();
            if cols.iter().all(|c| spans(&set, c, s)) {
                let mut labels: Vec<String> =
                    set.iter().map(|v| v.iter().map(|&x| if x == 1 { '1' } else { '0' }).collect()).collect();
                labels.sort();
                found.push(labels);
            }
        });
        if !found.is_empty() {
            found.sort();
            return (k, found);
        }
    }
    unreachable!("the columns themselves always span")
}

pub fn rank(a: &BinaryMatrix, s: Semiring) -> usize {
    let rows = entries(a);
    let n = a.n_rows();
    let cols: Vec<Vec<u8>> = (0..a.n_cols()).map(|c| column(&rows, c)).collect();
    if cols.iter().all(|c| c.iter().all(|&x| x == 0)) {
        return 0;
    }
    let candidates: Vec<Vec<u8>> = (1..1u64 << n).map(|b| to_vec(b, n)).collect();
    for k in 1.. {
        let mut hit = false;
        for_each_combination(candidates.len(), k, &mut |idx| {
            if !hit {
                let set: Vec<Vec<u8>> = idx.iter().map(|&i| candidates[i].clone()).collect();
                hit = cols.iter().all(|c| spans(&set, c, s));
            }
        });
        if hit {
            return k;
        }
    }
    unreachable!()
}

/// Rank over the rationals by elimination on exact fractions held as
/// (numerator, denominator) i128 pairs.
#[allow(clippy::needless_range_loop)]
pub fn real_rank(a: &BinaryMatrix) -> usize {
    let mut m: Vec<Vec<(i128, i128)>> =
        entries(a).into_iter().map(|r| r.into_iter().map(|x| (x as i128, 1)).collect()).collect();
    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    fn norm((p, q): (i128, i128)) -> (i128, i128) {
        let g = gcd(p, q).max(1);
        let s = if q < 0 { -1 } else { 1 };
        (s * p / g, s * q / g)
    }
    let (n, cols) = (a.n_rows(), a.n_cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..n).find(|&r| m[r][c].0 != 0) else { continue };
        m.swap(rank, p);
        for r in 0..n {
            if r != rank && m[r][c].0 != 0 {
                let (fp, fq) = norm((m[r][c].0 * m[rank][c].1, m[r][c].1 * m[rank][c].0));
                for j in 0..cols {
                    let (xp, xq) = m[r][j];
                    let (yp, yq) = m[rank][j];
                    m[r][j] = norm((xp * yq * fq - yp * fp * xq, xq * yq * fq));
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Deterministic random matrix with the given density of ones.
pub fn random_matrix(rng: &mut impl rand::Rng, n: usize, m: usize, density: f64) -> BinaryMatrix {
    let rows: Vec<Vec<u8>> = (0..n).map(|_| (0..m).map(|_| rng.gen_bool(density) as u8).collect()).collect();
    BinaryMatrix::from_rows(&rows).unwrap()
}
