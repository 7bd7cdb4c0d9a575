//! Named fixtures and the gap families, each carrying the rank claims that
//! are expected to hold for it.

use std::fmt;

use serde::Serialize;

use crate::bases::base_graph;
use crate::config::max_cells;
use crate::error::{Error, Result};
use crate::matrix::{augment, tensor_identity, BinaryMatrix, ColumnVector, Semiring, MAX_DIM};
use crate::ranks;

/// Identifiers accepted by [`fixture`].
pub const FIXTURE_NAMES: [&str; 7] =
    ["sec2_example", "boolean_example", "single_source", "identical_rows", "sums_inline", "gap_boolean_base", "a_k"];

const SEC2: &str = "010\n110\n111\n011";
const BOOLEAN_EXAMPLE: &str = "111\n111\n011\n001";
const SINGLE_SOURCE: &str = "110\n011\n011\n001";
const IDENTICAL_ROWS: &str = "11111\n11111\n00011\n01100\n01001\n00110";
const SUMS_INLINE: &str = "110\n001\n011\n111";
/// The two source bases of the `sec2_example` matrix, in display order.
const SEC2_U1: [&str; 3] = ["0110", "1001", "0011"];
const SEC2_U2: [&str; 3] = ["0110", "1100", "0011"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RankKind {
    Real,
    Binary,
    Boolean,
}

impl RankKind {
    pub fn compute(self, a: &BinaryMatrix) -> Result<usize> {
        Ok(match self {
            RankKind::Real => ranks::real_rank(a),
            RankKind::Binary => ranks::binary_rank(a)?.rank,
            RankKind::Boolean => ranks::boolean_rank(a)?.rank,
        })
    }
}

impl From<Semiring> for RankKind {
    fn from(s: Semiring) -> Self {
        match s {
            Semiring::Binary => RankKind::Binary,
            Semiring::Boolean => RankKind::Boolean,
        }
    }
}

impl fmt::Display for RankKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RankKind::Real => "real",
            RankKind::Binary => "binary",
            RankKind::Boolean => "boolean",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "relation", content = "value", rename_all = "snake_case")]
pub enum Bound {
    Exactly(usize),
    AtLeast(usize),
}

impl Bound {
    pub fn admits(self, value: usize) -> bool {
        match self {
            Bound::Exactly(v) => value == v,
            Bound::AtLeast(v) => value >= v,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Exactly(v) => write!(f, "= {v}"),
            Bound::AtLeast(v) => write!(f, ">= {v}"),
        }
    }
}

/// A rank claim about the fixture matrix augmented with the named vectors
/// (none: the matrix itself).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankClaim {
    pub subject: Vec<String>,
    pub kind: RankKind,
    pub bound: Bound,
}

impl RankClaim {
    fn new(subject: &[&str], kind: RankKind, bound: Bound) -> Self {
        RankClaim { subject: subject.iter().map(|s| s.to_string()).collect(), kind, bound }
    }

    pub fn describe(&self) -> String {
        let subject = if self.subject.is_empty() {
            "A".to_string()
        } else if self.subject.len() > 3 {
            format!("A|{}..{}", self.subject[0], self.subject[self.subject.len() - 1])
        } else {
            format!("A|{}", self.subject.join(","))
        };
        format!("{} rank of {subject} {}", self.kind, self.bound)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    pub claim: RankClaim,
    pub observed: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fixture {
    pub name: String,
    pub matrix: BinaryMatrix,
    pub vectors: Vec<(String, ColumnVector)>,
    pub claims: Vec<RankClaim>,
}

impl Fixture {
    pub fn vector(&self, name: &str) -> Option<&ColumnVector> {
        self.vectors.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    /// The fixture matrix with the named vectors appended in order.
    pub fn augmented(&self, names: &[String]) -> Result<BinaryMatrix> {
        let xs = names
            .iter()
            .map(|n| self.vector(n).copied().ok_or_else(|| Error::NotFound(format!("vector {n}"))))
            .collect::<Result<Vec<_>>>()?;
        augment(&self.matrix, &xs)
    }

    /// The matrix with every vector appended.
    pub fn fully_augmented(&self) -> Result<BinaryMatrix> {
        let xs: Vec<ColumnVector> = self.vectors.iter().map(|(_, v)| *v).collect();
        augment(&self.matrix, &xs)
    }

    pub fn check_claim(&self, claim: &RankClaim) -> Result<ClaimCheck> {
        let observed = claim.kind.compute(&self.augmented(&claim.subject)?)?;
        Ok(ClaimCheck { claim: claim.clone(), observed, passed: claim.bound.admits(observed) })
    }

    pub fn check_claims(&self) -> Result<Vec<ClaimCheck>> {
        self.claims.iter().map(|c| self.check_claim(c)).collect()
    }

    /// Sidecar listing the vectors and claims.
    pub fn claims_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "rows": self.matrix.n_rows(),
            "cols": self.matrix.n_cols(),
            "vectors": self.vectors.iter().map(|(n, v)| serde_json::json!({"name": n, "vector": v.to_string()})).collect::<Vec<_>>(),
            "claims": self.claims,
        })
    }
}

fn vec_of(text: &str) -> ColumnVector {
    text.parse().expect("literal vector")
}

fn mat(text: &str) -> BinaryMatrix {
    text.parse().expect("literal matrix")
}

fn named(pairs: &[(&str, &str)]) -> Vec<(String, ColumnVector)> {
    pairs.iter().map(|(n, v)| (n.to_string(), vec_of(v))).collect()
}

use Bound::{AtLeast, Exactly};
use RankKind::{Binary, Boolean, Real};

/// A fixture by name; `a_k` is the `k = 3` member of the family.
pub fn fixture(name: &str) -> Result<Fixture> {
    let fx = match name {
        "sec2_example" => Fixture {
            name: name.into(),
            matrix: mat(SEC2),
            vectors: named(&[("x", "1001"), ("y", "1100")]),
            claims: vec![
                RankClaim::new(&[], Binary, Exactly(3)),
                RankClaim::new(&[], Real, Exactly(3)),
                RankClaim::new(&["x"], Binary, Exactly(3)),
                RankClaim::new(&["y"], Binary, Exactly(3)),
                RankClaim::new(&["x", "y"], Binary, Exactly(4)),
            ],
        },
        "boolean_example" => Fixture {
            name: name.into(),
            matrix: mat(BOOLEAN_EXAMPLE),
            vectors: named(&[("x", "0110"), ("y", "0010")]),
            claims: vec![
                RankClaim::new(&[], Boolean, Exactly(3)),
                RankClaim::new(&["x"], Boolean, Exactly(3)),
                RankClaim::new(&["y"], Boolean, Exactly(3)),
                RankClaim::new(&["x", "y"], Boolean, Exactly(4)),
            ],
        },
        "single_source" => Fixture {
            name: name.into(),
            matrix: mat(SINGLE_SOURCE),
            vectors: Vec::new(),
            claims: vec![RankClaim::new(&[], Binary, Exactly(3))],
        },
        "identical_rows" => Fixture {
            name: name.into(),
            matrix: mat(IDENTICAL_ROWS),
            vectors: Vec::new(),
            claims: vec![RankClaim::new(&[], Binary, Exactly(5))],
        },
        "sums_inline" => Fixture {
            name: name.into(),
            matrix: mat(SUMS_INLINE),
            vectors: Vec::new(),
            claims: vec![RankClaim::new(&[], Binary, Exactly(3)), RankClaim::new(&[], Real, Exactly(3))],
        },
        "gap_boolean_base" => Fixture {
            name: name.into(),
            matrix: mat(SEC2),
            vectors: named(&[("x", "1001"), ("y", "1100")]),
            claims: vec![
                RankClaim::new(&[], Boolean, Exactly(3)),
                RankClaim::new(&[], Real, Exactly(3)),
                RankClaim::new(&["x", "y"], Boolean, Exactly(4)),
                RankClaim::new(&["x", "y"], Real, Exactly(3)),
            ],
        },
        "a_k" => return build_ak(3),
        _ => return Err(Error::NotFound(format!("fixture {name:?}"))),
    };
    Ok(fx)
}

fn check_dims(rows: usize, cols: usize) -> Result<()> {
    if rows > MAX_DIM || cols > MAX_DIM || rows * cols > max_cells() {
        return Err(Error::ResourceLimit(format!(
            "construction would be {rows}x{cols}, above the size cap of {} cells",
            max_cells()
        )));
    }
    Ok(())
}

fn positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        return Err(Error::InvalidArgument(format!("{name} must be at least 1")));
    }
    Ok(())
}

/// `v` placed in block `b` of `d` blocks of height `v.dim()`.
fn shifted(v: &ColumnVector, b: usize, d: usize) -> ColumnVector {
    ColumnVector::new(v.dim() * d, v.bits() << (v.dim() * b)).expect("within 64 rows")
}

fn block_augmented(name: &str, d: usize, per_block: &[&str]) -> Result<Fixture> {
    let base = mat(SEC2);
    let matrix = tensor_identity(&base, d)?;
    let mut vectors = Vec::new();
    for b in 0..d {
        for (i, v) in per_block.iter().enumerate() {
            vectors.push((format!("b{}_{}", b + 1, i + 1), shifted(&vec_of(v), b, d)));
        }
    }
    Ok(Fixture { name: name.into(), matrix, vectors, claims: Vec::new() })
}

fn all_names(fx: &Fixture) -> Vec<String> {
    fx.vectors.iter().map(|(n, _)| n.clone()).collect()
}

/// `I_d ⊗ A` followed, block by block, by the two source bases of the
/// `sec2_example` matrix. Binary rank at least `4d`, real rank `3d`.
pub fn build_gap_binary(d: usize) -> Result<Fixture> {
    positive("d", d)?;
    check_dims(4 * d, 9 * d)?;
    let per_block: Vec<&str> = SEC2_U1.iter().chain(SEC2_U2.iter()).copied().collect();
    let mut fx = block_augmented("gap_binary", d, &per_block)?;
    let all = all_names(&fx);
    fx.claims = vec![
        RankClaim { subject: Vec::new(), kind: Binary, bound: Exactly(3 * d) },
        RankClaim { subject: Vec::new(), kind: Real, bound: Exactly(3 * d) },
        RankClaim { subject: all.clone(), kind: Binary, bound: AtLeast(4 * d) },
        RankClaim { subject: all, kind: Real, bound: Exactly(3 * d) },
    ];
    Ok(fx)
}

/// `I_d ⊗ A` followed, block by block, by `x = 1001` and `y = 1100`.
/// Boolean and binary rank `4d`, real rank `3d`.
pub fn build_gap_boolean(d: usize) -> Result<Fixture> {
    positive("d", d)?;
    check_dims(4 * d, 5 * d)?;
    let mut fx = block_augmented("gap_boolean", d, &["1001", "1100"])?;
    let all = all_names(&fx);
    fx.claims = vec![
        RankClaim { subject: Vec::new(), kind: Boolean, bound: Exactly(3 * d) },
        RankClaim { subject: all.clone(), kind: Boolean, bound: Exactly(4 * d) },
        RankClaim { subject: all.clone(), kind: Real, bound: Exactly(3 * d) },
        RankClaim { subject: all, kind: Binary, bound: Exactly(4 * d) },
    ];
    Ok(fx)
}

/// `k` all-ones rows of width 4 above `0011, 1100, 1001, 0110`, with
/// `x_i = (e_i, 1, 0, 0, 0)`.
pub fn build_ak(k: usize) -> Result<Fixture> {
    positive("k", k)?;
    check_dims(k + 4, k + 4)?;
    let mut rows: Vec<&str> = vec!["1111"; k];
    rows.extend(["0011", "1100", "1001", "0110"]);
    let matrix = mat(&rows.join("\n"));
    let n = k + 4;
    let vectors: Vec<(String, ColumnVector)> = (0..k)
        .map(|i| {
            let v = ColumnVector::new(n, 1 << i | 1 << k).expect("within 64 rows");
            (format!("x{}", i + 1), v)
        })
        .collect();
    let all: Vec<String> = vectors.iter().map(|(n, _)| n.clone()).collect();
    let mut claims = vec![
        RankClaim { subject: Vec::new(), kind: Binary, bound: Exactly(4) },
        RankClaim { subject: Vec::new(), kind: Boolean, bound: Exactly(4) },
        RankClaim { subject: Vec::new(), kind: Real, bound: Exactly(3) },
    ];
    for name in &all {
        claims.push(RankClaim { subject: vec![name.clone()], kind: Binary, bound: Exactly(4) });
        claims.push(RankClaim { subject: vec![name.clone()], kind: Boolean, bound: Exactly(4) });
    }
    if k > 1 {
        // For k = 1 this is the single-vector claim above.
        claims.push(RankClaim { subject: all.clone(), kind: Binary, bound: Exactly(k + 3) });
    }
    claims.push(RankClaim { subject: all.clone(), kind: Real, bound: Exactly(k + 3) });
    claims.push(RankClaim { subject: all, kind: Boolean, bound: AtLeast(k) });
    Ok(Fixture { name: format!("a_{k}"), matrix, vectors, claims })
}

/// `A` with every vector of the first two sources of its base graph. The
/// rank must rise; under the binary semiring, when the real rank already
/// equals the binary rank, the real rank must stay put.
pub fn augment_with_source_bases(a: &BinaryMatrix, s: Semiring) -> Result<Fixture> {
    let graph = base_graph(a, s)?;
    let sources = graph.source_bases();
    if sources.len() < 2 {
        return Err(Error::InvalidArgument(format!("base graph has {} source(s); two are needed", sources.len())));
    }
    let mut vectors: Vec<(String, ColumnVector)> = Vec::new();
    for (tag, base) in ["u", "v"].iter().zip(&sources[..2]) {
        for (i, v) in base.vectors().iter().enumerate() {
            vectors.push((format!("{tag}{}", i + 1), *v));
        }
    }
    check_dims(a.n_rows(), a.n_cols() + vectors.len())?;
    let rank = ranks::rank(a, s)?.rank;
    let all: Vec<String> = vectors.iter().map(|(n, _)| n.clone()).collect();
    let mut claims = vec![
        RankClaim { subject: Vec::new(), kind: s.into(), bound: Exactly(rank) },
        RankClaim { subject: all.clone(), kind: s.into(), bound: AtLeast(rank + 1) },
    ];
    let real = ranks::real_rank(a);
    if s == Semiring::Binary && real == rank {
        claims.push(RankClaim { subject: all, kind: Real, bound: Exactly(real) });
    }
    Ok(Fixture { name: "source_augmented".into(), matrix: a.clone(), vectors, claims })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_named_fixture_builds() {
        for name in FIXTURE_NAMES {
            let fx = fixture(name).unwrap();
            assert!(!fx.claims.is_empty(), "{name}");
        }
        assert!(matches!(fixture("nope"), Err(Error::NotFound(_))));
    }

    #[test]
    fn small_fixture_claims_hold() {
        for name in
            ["sec2_example", "boolean_example", "single_source", "identical_rows", "sums_inline", "gap_boolean_base"]
        {
            for check in fixture(name).unwrap().check_claims().unwrap() {
                assert!(check.passed, "{name}: {} observed {}", check.claim.describe(), check.observed);
            }
        }
    }

    #[test]
    fn gap_shapes() {
        assert_eq!(build_gap_binary(1).unwrap().fully_augmented().unwrap().shape(), (4, 9));
        assert_eq!(build_gap_binary(2).unwrap().fully_augmented().unwrap().shape(), (8, 18));
        let gb = build_gap_boolean(1).unwrap().fully_augmented().unwrap();
        assert_eq!(gb, mat("01011\n11001\n11100\n01110"));
        assert!(matches!(build_gap_binary(0), Err(Error::InvalidArgument(_))));
        assert!(matches!(build_gap_binary(8), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn ak_layout() {
        let fx = build_ak(4).unwrap();
        let full = fx.fully_augmented().unwrap();
        assert_eq!(full, mat("11111000\n11110100\n11110010\n11110001\n00111111\n11000000\n10010000\n01100000"));
    }

    #[test]
    fn source_augmentation_requires_two_sources() {
        let i3 = BinaryMatrix::identity(3).unwrap();
        assert!(matches!(augment_with_source_bases(&i3, Semiring::Binary), Err(Error::InvalidArgument(_))));
        let fx = augment_with_source_bases(&mat(SEC2), Semiring::Binary).unwrap();
        for check in fx.check_claims().unwrap() {
            assert!(check.passed, "{}", check.claim.describe());
        }
    }
}
