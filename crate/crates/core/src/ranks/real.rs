use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::matrix::BinaryMatrix;

/// Rank over the rationals by fraction-free (Bareiss) elimination on
/// arbitrary-precision integers.
pub fn real_rank(a: &BinaryMatrix) -> usize {
    let (n, m) = a.shape();
    let mut rows: Vec<Vec<BigInt>> =
        (0..n).map(|r| (0..m).map(|c| BigInt::from(u8::from(a.get(r, c)))).collect()).collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..m {
        if rank == n {
            break;
        }
        let Some(pivot) = (rank..n).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            for c in col + 1..m {
                let num = &row[c] * &prow[col] - &row[col] * &prow[c];
                debug_assert!((&num % &prev).is_zero());
                row[c] = num / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = rows[rank][col].clone();
        rank += 1;
    }
    rank
}
