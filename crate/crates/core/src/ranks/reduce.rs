//! Rank-preserving shrinking of a matrix before search.
//!
//! Zero rows/columns and duplicate rows/columns never change the binary or
//! boolean rank: any factorization of the reduced matrix extends by copying
//! factor rows, and ranks are monotone under taking submatrices. The same
//! holds across connected components of the bipartite row/column graph,
//! since a rectangle of 1-entries is connected and so lies inside one
//! component.

use crate::matrix::{bits, BinaryMatrix};

use super::Rectangle;

/// A deduplicated matrix together with the original indices each reduced
/// row and column stands for.
pub(crate) struct Reduced {
    pub matrix: Option<BinaryMatrix>,
    pub row_groups: Vec<u64>,
    pub col_groups: Vec<u64>,
}

impl Reduced {
    pub fn lift(&self, rect: &Rectangle) -> Rectangle {
        let rows = bits(rect.row_mask()).fold(0, |acc, r| acc | self.row_groups[r]);
        let cols = bits(rect.col_mask()).fold(0, |acc, c| acc | self.col_groups[c]);
        Rectangle::raw(rows, cols)
    }
}

fn group(masks: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let mut reps: Vec<u64> = Vec::new();
    let mut groups: Vec<u64> = Vec::new();
    for (i, &m) in masks.iter().enumerate() {
        if m == 0 {
            continue;
        }
        match reps.iter().position(|&r| r == m) {
            Some(g) => groups[g] |= 1 << i,
            None => {
                reps.push(m);
                groups.push(1 << i);
            }
        }
    }
    (reps, groups)
}

pub(crate) fn dedup(a: &BinaryMatrix) -> Reduced {
    let (row_reps, row_groups) = group(a.row_masks());
    if row_reps.is_empty() {
        return Reduced { matrix: None, row_groups, col_groups: Vec::new() };
    }
    let kept = BinaryMatrix::from_row_masks(a.n_cols(), row_reps).expect("nonempty");
    let (col_reps, col_groups) = group(&kept.col_masks());
    // col_reps are column masks over the kept rows; transpose back.
    let t = BinaryMatrix::from_row_masks(kept.n_rows(), col_reps).expect("nonempty");
    Reduced { matrix: Some(t.transpose()), row_groups, col_groups }
}

/// Connected components of the bipartite graph whose edges are the 1-entries,
/// as `(row mask, col mask)` pairs ordered by lowest row. Zero rows and
/// columns are dropped.
pub(crate) fn components(a: &BinaryMatrix) -> Vec<(u64, u64)> {
    let col_masks = a.col_masks();
    let mut seen_rows = 0u64;
    let mut out = Vec::new();
    for start in 0..a.n_rows() {
        if seen_rows >> start & 1 == 1 || a.row_mask(start) == 0 {
            continue;
        }
        let mut rows = 1u64 << start;
        let mut cols = 0u64;
        loop {
            let new_cols = bits(rows).fold(0, |acc, r| acc | a.row_mask(r)) & !cols;
            cols |= new_cols;
            let new_rows = bits(new_cols).fold(0, |acc, c| acc | col_masks[c]) & !rows;
            if new_rows == 0 {
                break;
            }
            rows |= new_rows;
        }
        seen_rows |= rows;
        out.push((rows, cols));
    }
    out
}

/// The submatrix on a component, with its original row and column indices.
pub(crate) fn restrict(a: &BinaryMatrix, rows: u64, cols: u64) -> (BinaryMatrix, Vec<usize>, Vec<usize>) {
    let row_idx: Vec<usize> = bits(rows).collect();
    let col_idx: Vec<usize> = bits(cols).collect();
    let sub = a.select_rows(&row_idx).and_then(|s| s.select_columns(&col_idx)).expect("indices in range");
    (sub, row_idx, col_idx)
}

pub(crate) fn unrestrict(rect: &Rectangle, row_idx: &[usize], col_idx: &[usize]) -> Rectangle {
    let rows = bits(rect.row_mask()).fold(0, |acc, r| acc | 1 << row_idx[r]);
    let cols = bits(rect.col_mask()).fold(0, |acc, c| acc | 1 << col_idx[c]);
    Rectangle::raw(rows, cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedup_merges_identical_lines() {
        let a: BinaryMatrix = "1111\n1111\n0011\n0000\n1100".parse().unwrap();
        let red = dedup(&a);
        let m = red.matrix.as_ref().unwrap();
        assert_eq!(m.shape(), (3, 2));
        assert_eq!(red.row_groups, vec![0b00011, 0b00100, 0b10000]);
        assert_eq!(red.col_groups, vec![0b0011, 0b1100]);
        let lifted = red.lift(&Rectangle::new(&[0], &[0, 1]).unwrap());
        assert_eq!(lifted, Rectangle::new(&[0, 1], &[0, 1, 2, 3]).unwrap());
    }

    #[test]
    fn components_split_block_diagonal() {
        let a: BinaryMatrix = "1100\n0000\n0011\n1000".parse().unwrap();
        assert_eq!(components(&a), vec![(0b1001, 0b0011), (0b0100, 0b1100)]);
    }
}
