use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{bits, BinaryMatrix};

use super::{binary_rank, boolean_rank};

/// Greedy fooling set: 1-cells taken in row-major order whenever no chosen
/// cell can share a rectangle with it. Its size lower-bounds both the binary
/// and the boolean rank.
pub fn fooling_set(a: &BinaryMatrix) -> Vec<(usize, usize)> {
    greedy_fooling(a.row_masks(), a.row_masks())
}

/// Same greedy rule restricted to the cells in `candidates` (per-row masks),
/// with co-rectangularity judged against the full matrix `ones`.
pub(crate) fn greedy_fooling(ones: &[u64], candidates: &[u64]) -> Vec<(usize, usize)> {
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    for (r, &row) in candidates.iter().enumerate() {
        for c in bits(row) {
            let compatible = chosen.iter().all(|&(r2, c2)| ones[r] >> c2 & 1 == 0 || ones[r2] >> c & 1 == 0);
            if compatible {
                chosen.push((r, c));
            }
        }
    }
    chosen
}

/// Communication-complexity bounds read off the two ranks:
/// `log2(binary rank) <= D(A)` and `N(A) = log2(boolean rank)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CcBounds {
    pub binary_rank: usize,
    pub boolean_rank: usize,
    pub d_lower: f64,
    pub n_exact: f64,
}

pub fn cc_bounds(a: &BinaryMatrix) -> Result<CcBounds> {
    if a.is_zero() {
        return Err(Error::InvalidArgument("communication bounds are undefined for the all-zero matrix".into()));
    }
    let binary = binary_rank(a)?.rank;
    let boolean = boolean_rank(a)?.rank;
    Ok(CcBounds {
        binary_rank: binary,
        boolean_rank: boolean,
        d_lower: (binary as f64).log2(),
        n_exact: (boolean as f64).log2(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fooling_set_on_identity_is_the_diagonal() {
        let i4 = BinaryMatrix::identity(4).unwrap();
        assert_eq!(fooling_set(&i4), vec![(0, 0), (1, 1), (2, 2), (3, 3)]);
        assert_eq!(fooling_set(&BinaryMatrix::ones(3, 3).unwrap()).len(), 1);
    }

    #[test]
    fn cc_bounds_values() {
        let ones = BinaryMatrix::ones(3, 2).unwrap();
        let b = cc_bounds(&ones).unwrap();
        assert_eq!((b.d_lower, b.n_exact), (0.0, 0.0));
        let b = cc_bounds(&BinaryMatrix::identity(4).unwrap()).unwrap();
        assert_eq!((b.d_lower, b.n_exact), (2.0, 2.0));
        let a: BinaryMatrix = "010\n110\n111\n011".parse().unwrap();
        assert_eq!(cc_bounds(&a).unwrap().d_lower, 3f64.log2());
        assert!(matches!(cc_bounds(&BinaryMatrix::zeros(2, 2).unwrap()), Err(Error::InvalidArgument(_))));
    }
}
