//! Dense 0/1 matrices with word-packed rows.
//!
//! Row `r` is stored as a `u64` whose bit `c` holds entry `(r, c)`; column
//! vectors use the same layout with bit `r` holding row `r`. Both dimensions
//! are therefore limited to [`MAX_DIM`]. All values are immutable: every
//! operation returns a new matrix.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported number of rows or columns.
pub const MAX_DIM: usize = 64;

pub(crate) fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// Iterates the indices of set bits, lowest first.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Lexicographic comparison of two index sets given as bitmasks, where each
/// set is read as its ascending list of indices.
pub(crate) fn cmp_index_sets(a: u64, b: u64) -> Ordering {
    let mut ia = bits(a);
    let mut ib = bits(b);
    loop {
        match (ia.next(), ib.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) if x != y => return x.cmp(&y),
            _ => {}
        }
    }
}

/// Addition rule used when combining 0/1 vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Semiring {
    /// Integer addition; sums must stay in {0, 1}.
    Binary,
    /// OR, so 1 + 1 = 1.
    Boolean,
}

impl Semiring {
    pub const ALL: [Semiring; 2] = [Semiring::Binary, Semiring::Boolean];

    pub fn name(self) -> &'static str {
        match self {
            Semiring::Binary => "binary",
            Semiring::Boolean => "boolean",
        }
    }
}

impl fmt::Display for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Semiring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "binary" => Ok(Semiring::Binary),
            "boolean" | "bool" => Ok(Semiring::Boolean),
            other => Err(Error::InvalidArgument(format!("unknown semiring `{other}`"))),
        }
    }
}

/// A 0/1 column vector of dimension at most [`MAX_DIM`].
///
/// Vectors order lexicographically by their entry string read from the top
/// row down, so `0011 < 0110 < 1111`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColumnVector {
    dim: usize,
    bits: u64,
}

impl ColumnVector {
    pub fn new(dim: usize, bits: u64) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidArgument(format!("vector dimension {dim} outside 1..={MAX_DIM}")));
        }
        if bits & !low_mask(dim) != 0 {
            return Err(Error::InvalidArgument(format!("bits set beyond dimension {dim}")));
        }
        Ok(ColumnVector { dim, bits })
    }

    pub(crate) fn from_bits(dim: usize, bits: u64) -> Self {
        debug_assert!((1..=MAX_DIM).contains(&dim) && bits & !low_mask(dim) == 0);
        ColumnVector { dim, bits }
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Self::new(dim, 0)
    }

    /// Standard basis vector `e_i` (zero-based).
    pub fn unit(dim: usize, i: usize) -> Result<Self> {
        if i >= dim {
            return Err(Error::InvalidArgument(format!("index {i} >= dimension {dim}")));
        }
        Self::new(dim, 1 << i)
    }

    pub fn from_entries(entries: &[u8]) -> Result<Self> {
        let mut bits = 0u64;
        for (i, &e) in entries.iter().enumerate() {
            match e {
                0 => {}
                1 if i < MAX_DIM => bits |= 1 << i,
                1 => {}
                other => return Err(Error::InvalidArgument(format!("entry {other} is not 0 or 1"))),
            }
        }
        Self::new(entries.len(), bits)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Support as a bitmask, bit `r` for row `r`.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        i < self.dim && self.bits >> i & 1 == 1
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn support(&self) -> Vec<usize> {
        bits(self.bits).collect()
    }

    pub fn is_disjoint(&self, other: &ColumnVector) -> bool {
        self.bits & other.bits == 0
    }

    pub fn is_subset_of(&self, other: &ColumnVector) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn entries(&self) -> Vec<u8> {
        (0..self.dim).map(|i| self.get(i) as u8).collect()
    }
}

impl Ord for ColumnVector {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.bits ^ other.bits;
        if diff == 0 {
            return self.dim.cmp(&other.dim);
        }
        // The first differing entry decides; a 0 there sorts first.
        let first = diff.trailing_zeros();
        if self.bits >> first & 1 == 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for ColumnVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ColumnVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for ColumnVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Format("empty vector".into()));
        }
        if s.len() > MAX_DIM {
            return Err(Error::ResourceLimit(format!("vector of length {} exceeds {MAX_DIM}", s.len())));
        }
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                other => return Err(Error::Format(format!("illegal character {other:?}"))),
            }
        }
        ColumnVector::new(s.len(), bits)
    }
}

impl Serialize for ColumnVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ColumnVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Dense binary matrix, at least 1×1 and at most 64×64.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    n_rows: usize,
    n_cols: usize,
    rows: Vec<u64>,
}

impl BinaryMatrix {
    /// Builds a matrix from packed rows (bit `c` of `rows[r]` is entry `(r, c)`).
    pub fn from_row_masks(n_cols: usize, rows: Vec<u64>) -> Result<Self> {
        if rows.is_empty() || n_cols == 0 {
            return Err(Error::InvalidArgument("matrix must be at least 1x1".into()));
        }
        if rows.len() > MAX_DIM || n_cols > MAX_DIM {
            return Err(Error::ResourceLimit(format!(
                "{}x{n_cols} exceeds the {MAX_DIM}x{MAX_DIM} representation limit",
                rows.len()
            )));
        }
        if rows.iter().any(|&r| r & !low_mask(n_cols) != 0) {
            return Err(Error::InvalidArgument(format!("row bits set beyond column {n_cols}")));
        }
        Ok(BinaryMatrix { n_rows: rows.len(), n_cols, rows })
    }

    /// Builds a matrix from rows of 0/1 entries.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let n_cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut masks = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n_cols {
                return Err(Error::Dimension(format!("row {i} has {} entries, expected {n_cols}", row.len())));
            }
            masks.push(ColumnVector::from_entries(row)?.bits);
        }
        Self::from_row_masks(n_cols, masks)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[ColumnVector]) -> Result<Self> {
        let Some(first) = cols.first() else {
            return Err(Error::InvalidArgument("matrix must be at least 1x1".into()));
        };
        let n = first.dim;
        if let Some(bad) = cols.iter().find(|c| c.dim != n) {
            return Err(Error::Dimension(format!("column of dimension {} next to dimension {n}", bad.dim)));
        }
        if cols.len() > MAX_DIM {
            return Err(Error::ResourceLimit(format!("{} columns exceed {MAX_DIM}", cols.len())));
        }
        let mut rows = vec![0u64; n];
        for (c, col) in cols.iter().enumerate() {
            for r in bits(col.bits) {
                rows[r] |= 1 << c;
            }
        }
        Self::from_row_masks(cols.len(), rows)
    }

    pub fn zeros(n_rows: usize, n_cols: usize) -> Result<Self> {
        Self::from_row_masks(n_cols, vec![0; n_rows])
    }

    pub fn ones(n_rows: usize, n_cols: usize) -> Result<Self> {
        Self::from_row_masks(n_cols, vec![low_mask(n_cols); n_rows])
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_row_masks(n, (0..n.min(MAX_DIM + 1)).map(|i| 1u64.wrapping_shl(i as u32)).collect())
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n_rows, self.n_cols)
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r] >> c & 1 == 1
    }

    pub fn row_mask(&self, r: usize) -> u64 {
        self.rows[r]
    }

    pub fn row_masks(&self) -> &[u64] {
        &self.rows
    }

    pub fn col_mask(&self, c: usize) -> u64 {
        self.rows.iter().enumerate().filter(|(_, &row)| row >> c & 1 == 1).fold(0, |acc, (r, _)| acc | 1 << r)
    }

    pub fn col_masks(&self) -> Vec<u64> {
        (0..self.n_cols).map(|c| self.col_mask(c)).collect()
    }

    pub fn column(&self, c: usize) -> ColumnVector {
        ColumnVector::from_bits(self.n_rows, self.col_mask(c))
    }

    pub fn columns(&self) -> Vec<ColumnVector> {
        (0..self.n_cols).map(|c| self.column(c)).collect()
    }

    /// Row `r` read as a vector of dimension `n_cols`.
    pub fn row(&self, r: usize) -> ColumnVector {
        ColumnVector::from_bits(self.n_cols, self.rows[r])
    }

    pub fn count_ones(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn transpose(&self) -> BinaryMatrix {
        BinaryMatrix { n_rows: self.n_cols, n_cols: self.n_rows, rows: self.col_masks() }
    }

    /// Submatrix on the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Result<BinaryMatrix> {
        if let Some(&bad) = rows.iter().find(|&&r| r >= self.n_rows) {
            return Err(Error::Dimension(format!("row index {bad} out of range")));
        }
        Self::from_row_masks(self.n_cols, rows.iter().map(|&r| self.rows[r]).collect())
    }

    /// Submatrix on the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<BinaryMatrix> {
        if let Some(&bad) = cols.iter().find(|&&c| c >= self.n_cols) {
            return Err(Error::Dimension(format!("column index {bad} out of range")));
        }
        let picked: Vec<ColumnVector> = cols.iter().map(|&c| self.column(c)).collect();
        Self::from_columns(&picked)
    }

    /// Returns the matrix with entry `(r, c)` flipped.
    pub fn with_flipped(&self, r: usize, c: usize) -> Result<BinaryMatrix> {
        if r >= self.n_rows || c >= self.n_cols {
            return Err(Error::Dimension(format!("cell ({r}, {c}) out of range")));
        }
        let mut rows = self.rows.clone();
        rows[r] ^= 1 << c;
        Self::from_row_masks(self.n_cols, rows)
    }

    /// Canonical text form: one line of `0`/`1` per row, each newline-terminated.
    pub fn serialize(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<BinaryMatrix> {
        text.parse()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("matrix serializes")
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n_rows {
            writeln!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n_rows).map(|r| self.row(r).to_string()).collect();
        write!(f, "BinaryMatrix({}x{} [{}])", self.n_rows, self.n_cols, rows.join(" "))
    }
}

impl FromStr for BinaryMatrix {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        let body = body.strip_suffix('\r').unwrap_or(body);
        if body.is_empty() {
            return Err(Error::Format("empty input".into()));
        }
        let mut rows = Vec::new();
        let mut width = None;
        for (i, line) in body.split('\n').enumerate() {
            let line = line.strip_suffix('\r').unwrap_or(line);
            if line.is_empty() {
                return Err(Error::Format(format!("line {} is empty", i + 1)));
            }
            if let Some(bad) = line.chars().find(|ch| *ch != '0' && *ch != '1') {
                return Err(Error::Format(format!("illegal character {bad:?} on line {}", i + 1)));
            }
            match width {
                None => width = Some(line.len()),
                Some(w) if w != line.len() => {
                    return Err(Error::Format(format!(
                        "ragged input: line {} has {} entries, expected {w}",
                        i + 1,
                        line.len()
                    )))
                }
                _ => {}
            }
            if line.len() > MAX_DIM || rows.len() >= MAX_DIM {
                return Err(Error::ResourceLimit(format!(
                    "matrix exceeds the {MAX_DIM}x{MAX_DIM} representation limit"
                )));
            }
            rows.push(line.parse::<ColumnVector>()?.bits);
        }
        BinaryMatrix::from_row_masks(width.unwrap_or(0), rows)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    data: Vec<String>,
}

impl Serialize for BinaryMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.n_rows,
            cols: self.n_cols,
            data: (0..self.n_rows).map(|r| self.row(r).to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BinaryMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MatrixJson::deserialize(d)?;
        if raw.data.len() != raw.rows {
            return Err(D::Error::custom("`rows` disagrees with `data` length"));
        }
        let m: BinaryMatrix = raw.data.join("\n").parse().map_err(D::Error::custom)?;
        if m.n_cols != raw.cols {
            return Err(D::Error::custom("`cols` disagrees with row width"));
        }
        Ok(m)
    }
}

/// `(A | x_1, ..., x_t)`: appends the vectors as new rightmost columns.
pub fn augment(a: &BinaryMatrix, xs: &[ColumnVector]) -> Result<BinaryMatrix> {
    if let Some(bad) = xs.iter().find(|x| x.dim != a.n_rows) {
        return Err(Error::Dimension(format!(
            "vector of dimension {} cannot augment a matrix with {} rows",
            bad.dim, a.n_rows
        )));
    }
    let width = a.n_cols + xs.len();
    if width > MAX_DIM {
        return Err(Error::ResourceLimit(format!("augmented width {width} exceeds {MAX_DIM}")));
    }
    let mut rows = a.rows.clone();
    for (k, x) in xs.iter().enumerate() {
        for r in bits(x.bits) {
            rows[r] |= 1 << (a.n_cols + k);
        }
    }
    BinaryMatrix::from_row_masks(width, rows)
}

/// `[[B, 0], [0, C]]`.
pub fn block_diag(b: &BinaryMatrix, c: &BinaryMatrix) -> Result<BinaryMatrix> {
    let width = b.n_cols + c.n_cols;
    let mut rows = b.rows.clone();
    rows.extend(c.rows.iter().map(|&r| r << b.n_cols));
    if width > MAX_DIM || rows.len() > MAX_DIM {
        return Err(Error::ResourceLimit(format!("{}x{width} block diagonal exceeds {MAX_DIM}x{MAX_DIM}", rows.len())));
    }
    BinaryMatrix::from_row_masks(width, rows)
}

/// `I_d ⊗ A`: `d` copies of `A` along the diagonal.
pub fn tensor_identity(a: &BinaryMatrix, d: usize) -> Result<BinaryMatrix> {
    if d == 0 {
        return Err(Error::InvalidArgument("tensor factor d must be at least 1".into()));
    }
    let mut out = a.clone();
    for _ in 1..d {
        out = block_diag(&out, a)?;
    }
    Ok(out)
}

/// Result of multiplying two binary matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Product {
    pub entries: Vec<Vec<u32>>,
    /// True iff every entry is 0 or 1.
    pub is_binary: bool,
}

impl Product {
    pub fn to_matrix(&self) -> Option<BinaryMatrix> {
        if !self.is_binary {
            return None;
        }
        let rows: Vec<Vec<u8>> = self.entries.iter().map(|row| row.iter().map(|&e| e as u8).collect()).collect();
        BinaryMatrix::from_rows(&rows).ok()
    }
}

/// `U · V` over the integers (Binary) or over OR/AND (Boolean).
pub fn product(u: &BinaryMatrix, v: &BinaryMatrix, s: Semiring) -> Result<Product> {
    if u.n_cols != v.n_rows {
        return Err(Error::Dimension(format!(
            "cannot multiply {}x{} by {}x{}",
            u.n_rows, u.n_cols, v.n_rows, v.n_cols
        )));
    }
    let v_cols = v.col_masks();
    let entries: Vec<Vec<u32>> = u
        .rows
        .iter()
        .map(|&urow| {
            v_cols
                .iter()
                .map(|&vcol| {
                    let common = (urow & vcol).count_ones();
                    match s {
                        Semiring::Binary => common,
                        Semiring::Boolean => u32::from(common > 0),
                    }
                })
                .collect()
        })
        .collect();
    let is_binary = entries.iter().flatten().all(|&e| e <= 1);
    Ok(Product { entries, is_binary })
}
