//! Exact real, binary and boolean rank.
//!
//! The binary rank of a 0/1 matrix is the least number of all-ones
//! rectangles that partition its 1-entries; the boolean rank is the least
//! number that cover them. Both solvers return a witness together with the
//! rank, and both answer 0 on the all-zero matrix.

mod bounds;
mod cover;
mod partition;
mod real;
mod reduce;

use std::cmp::Ordering;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::config::check_size;
use crate::error::{Error, Result};
use crate::matrix::{bits, cmp_index_sets, BinaryMatrix, ColumnVector, Semiring};

pub use bounds::{cc_bounds, fooling_set, CcBounds};
pub use cover::{boolean_rank, boolean_rank_direct, cover_solutions, enumerate_maximal_rectangles};
pub use partition::{binary_rank, binary_rank_direct, partition_solutions};
pub use real::real_rank;

/// An all-ones combinatorial rectangle `rows × cols`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rectangle {
    rows: u64,
    cols: u64,
}

impl Rectangle {
    pub fn new(rows: &[usize], cols: &[usize]) -> Result<Self> {
        let mask = |idx: &[usize]| -> Result<u64> {
            idx.iter().try_fold(0u64, |acc, &i| {
                if i >= 64 {
                    Err(Error::InvalidArgument(format!("index {i} out of range")))
                } else {
                    Ok(acc | 1 << i)
                }
            })
        };
        Self::from_masks(mask(rows)?, mask(cols)?)
    }

    pub fn from_masks(rows: u64, cols: u64) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument("rectangle needs a row and a column".into()));
        }
        Ok(Rectangle { rows, cols })
    }

    pub(crate) fn raw(rows: u64, cols: u64) -> Self {
        debug_assert!(rows != 0 && cols != 0);
        Rectangle { rows, cols }
    }

    pub fn rows(&self) -> Vec<usize> {
        bits(self.rows).collect()
    }

    pub fn cols(&self) -> Vec<usize> {
        bits(self.cols).collect()
    }

    pub fn row_mask(&self) -> u64 {
        self.rows
    }

    pub fn col_mask(&self) -> u64 {
        self.cols
    }

    pub fn area(&self) -> usize {
        (self.rows.count_ones() * self.cols.count_ones()) as usize
    }

    pub fn contains(&self, r: usize, c: usize) -> bool {
        self.rows >> r & 1 == 1 && self.cols >> c & 1 == 1
    }

    pub fn overlaps(&self, other: &Rectangle) -> bool {
        self.rows & other.rows != 0 && self.cols & other.cols != 0
    }

    /// True iff every cell lies on a 1-entry of `a`.
    pub fn is_monochromatic_in(&self, a: &BinaryMatrix) -> bool {
        if self.rows >> a.n_rows() != 0 || self.cols >> a.n_cols() != 0 {
            return false;
        }
        bits(self.rows).all(|r| a.row_mask(r) & self.cols == self.cols)
    }

    /// Row support as a column vector of dimension `n_rows`.
    pub fn row_vector(&self, n_rows: usize) -> ColumnVector {
        ColumnVector::from_bits(n_rows, self.rows)
    }
}

impl Ord for Rectangle {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_index_sets(self.rows, other.rows).then_with(|| cmp_index_sets(self.cols, other.cols))
    }
}

impl PartialOrd for Rectangle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rows {:?} x cols {:?}", self.rows(), self.cols())
    }
}

#[derive(Serialize, Deserialize)]
struct RectangleJson {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl Serialize for Rectangle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RectangleJson { rows: self.rows(), cols: self.cols() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Rectangle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RectangleJson::deserialize(d)?;
        Rectangle::new(&raw.rows, &raw.cols).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolutionKind {
    Partition,
    Cover,
}

impl SolutionKind {
    pub fn semiring(self) -> Semiring {
        match self {
            SolutionKind::Partition => Semiring::Binary,
            SolutionKind::Cover => Semiring::Boolean,
        }
    }

    pub fn for_semiring(s: Semiring) -> Self {
        match s {
            Semiring::Binary => SolutionKind::Partition,
            Semiring::Boolean => SolutionKind::Cover,
        }
    }
}

/// A partition or cover of the 1-entries of a matrix by rectangles, kept in
/// canonical (sorted) order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RectangleSolution {
    pub kind: SolutionKind,
    pub rectangles: Vec<Rectangle>,
    pub matrix_shape: (usize, usize),
}

impl RectangleSolution {
    pub(crate) fn canonical(kind: SolutionKind, mut rectangles: Vec<Rectangle>, matrix_shape: (usize, usize)) -> Self {
        rectangles.sort();
        RectangleSolution { kind, rectangles, matrix_shape }
    }

    pub fn len(&self) -> usize {
        self.rectangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rectangles.is_empty()
    }

    /// Checks every structural invariant against `a`: each rectangle is
    /// all-ones, the union is exactly the 1-cells, and for partitions the
    /// rectangles are pairwise disjoint.
    pub fn validate(&self, a: &BinaryMatrix) -> Result<()> {
        if self.matrix_shape != a.shape() {
            return Err(Error::Dimension(format!(
                "solution for {:?} checked against {:?}",
                self.matrix_shape,
                a.shape()
            )));
        }
        let mut covered = vec![0u64; a.n_rows()];
        for (i, rect) in self.rectangles.iter().enumerate() {
            if !rect.is_monochromatic_in(a) {
                return Err(Error::Inconsistency(format!("rectangle {rect} touches a 0-entry")));
            }
            if self.kind == SolutionKind::Partition {
                if let Some(other) = self.rectangles[..i].iter().find(|o| o.overlaps(rect)) {
                    return Err(Error::Inconsistency(format!("rectangles {other} and {rect} overlap in a partition")));
                }
            }
            for r in bits(rect.rows) {
                covered[r] |= rect.cols;
            }
        }
        if covered.as_slice() != a.row_masks() {
            return Err(Error::Inconsistency("rectangles do not cover every 1-entry".into()));
        }
        Ok(())
    }

    /// `U` has the rectangles' row supports as columns; `V` has their column
    /// supports as rows. `None` when there are no rectangles.
    pub fn factors(&self) -> Option<(BinaryMatrix, BinaryMatrix)> {
        if self.rectangles.is_empty() {
            return None;
        }
        let (n, m) = self.matrix_shape;
        let u_cols: Vec<ColumnVector> = self.rectangles.iter().map(|r| ColumnVector::from_bits(n, r.rows)).collect();
        let u = BinaryMatrix::from_columns(&u_cols).ok()?;
        let v = BinaryMatrix::from_row_masks(m, self.rectangles.iter().map(|r| r.cols).collect()).ok()?;
        Some((u, v))
    }

    /// The row supports of the rectangles.
    pub fn row_vectors(&self) -> Vec<ColumnVector> {
        self.rectangles.iter().map(|r| r.row_vector(self.matrix_shape.0)).collect()
    }
}

/// A rank value with an optional witnessing solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankResult {
    pub rank: usize,
    pub witness: Option<RectangleSolution>,
}

impl RankResult {
    pub fn real(rank: usize) -> Self {
        RankResult { rank, witness: None }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("rank result serializes")
    }
}

impl Serialize for RankResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RankResult", 3)?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("kind", &self.witness.as_ref().map(|w| w.kind))?;
        let empty = Vec::new();
        st.serialize_field("rectangles", self.witness.as_ref().map_or(&empty, |w| &w.rectangles))?;
        st.end()
    }
}

/// Rank under a semiring: binary rank for `Binary`, boolean rank for `Boolean`.
pub fn rank(a: &BinaryMatrix, s: Semiring) -> Result<RankResult> {
    match s {
        Semiring::Binary => binary_rank(a),
        Semiring::Boolean => boolean_rank(a),
    }
}

/// All optimal partitions (`Binary`) or optimal covers (`Boolean`).
pub fn optimal_solutions(a: &BinaryMatrix, s: Semiring) -> Result<Vec<RectangleSolution>> {
    check_size(a)?;
    let k = rank(a, s)?.rank;
    if k == 0 {
        return Ok(Vec::new());
    }
    match s {
        Semiring::Binary => partition_solutions(a, k),
        Semiring::Boolean => cover_solutions(a, k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rectangles_order_by_rows_then_cols() {
        let a = Rectangle::new(&[0], &[0, 1]).unwrap();
        let b = Rectangle::new(&[0, 1], &[1]).unwrap();
        let c = Rectangle::new(&[1], &[1, 2]).unwrap();
        let mut v = vec![c, a, b];
        v.sort();
        assert_eq!(v, vec![a, b, c]);
    }

    #[test]
    fn validate_catches_overlap_and_gaps() {
        let a: BinaryMatrix = "11\n11".parse().unwrap();
        let full = Rectangle::new(&[0, 1], &[0, 1]).unwrap();
        let top = Rectangle::new(&[0], &[0, 1]).unwrap();
        let ok = RectangleSolution::canonical(SolutionKind::Partition, vec![full], (2, 2));
        ok.validate(&a).unwrap();
        let overlap = RectangleSolution::canonical(SolutionKind::Partition, vec![full, top], (2, 2));
        assert!(overlap.validate(&a).is_err());
        let cover = RectangleSolution::canonical(SolutionKind::Cover, vec![full, top], (2, 2));
        cover.validate(&a).unwrap();
        let gap = RectangleSolution::canonical(SolutionKind::Cover, vec![top], (2, 2));
        assert!(gap.validate(&a).is_err());
    }

    #[test]
    fn rank_result_json() {
        let r = RankResult::real(3);
        assert_eq!(r.to_json(), serde_json::json!({"rank": 3, "kind": null, "rectangles": []}));
        let sol =
            RectangleSolution::canonical(SolutionKind::Partition, vec![Rectangle::new(&[0], &[1]).unwrap()], (1, 2));
        let r = RankResult { rank: 1, witness: Some(sol) };
        assert_eq!(
            r.to_json(),
            serde_json::json!({"rank": 1, "kind": "partition", "rectangles": [{"rows": [0], "cols": [1]}]})
        );
    }
}
