//! Bases, the spans relation and the base graph.
//!
//! A base of `A` under a semiring is a minimum set of 0/1 column vectors
//! from which every column of `A` is a 0/1 combination. Each base is the set
//! of row supports of the rectangles in some optimal partition (binary) or
//! optimal cover (boolean). The base graph has an edge `X -> Y` whenever `X`
//! spans `Y`; it is always acyclic, and `A` has the augmentation property
//! exactly when the graph has a single source.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::config::check_size;
use crate::error::{Error, Result};
use crate::matrix::{augment, product, BinaryMatrix, ColumnVector, Semiring};
use crate::par;
use crate::ranks::{self, RectangleSolution};

/// A set of distinct column vectors of one dimension, sorted
/// lexicographically, tagged with the semiring it spans under.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Base {
    vectors: Vec<ColumnVector>,
    semiring: Semiring,
    dim: usize,
}

impl Base {
    pub fn new(mut vectors: Vec<ColumnVector>, semiring: Semiring) -> Result<Self> {
        let Some(first) = vectors.first() else {
            return Err(Error::InvalidArgument("a base needs at least one vector".into()));
        };
        let dim = first.dim();
        if vectors.iter().any(|v| v.dim() != dim) {
            return Err(Error::Dimension("base vectors differ in dimension".into()));
        }
        vectors.sort();
        if vectors.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("base vectors must be distinct".into()));
        }
        Ok(Base { vectors, semiring, dim })
    }

    /// The row supports of an optimal solution's rectangles.
    pub fn from_solution(solution: &RectangleSolution) -> Result<Self> {
        Base::new(solution.row_vectors(), solution.kind.semiring())
    }

    /// The columns of `u`.
    pub fn from_columns_of(u: &BinaryMatrix, semiring: Semiring) -> Result<Self> {
        Base::new(u.columns(), semiring)
    }

    pub fn vectors(&self) -> &[ColumnVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn semiring(&self) -> Semiring {
        self.semiring
    }

    /// No two vectors share a 1 in any row.
    pub fn is_disjoint_in_rows(&self) -> bool {
        let mut seen = 0u64;
        for v in &self.vectors {
            if seen & v.bits() != 0 {
                return false;
            }
            seen |= v.bits();
        }
        true
    }

    /// The base as an `n × k` matrix with the vectors as columns.
    pub fn to_matrix(&self) -> BinaryMatrix {
        BinaryMatrix::from_columns(&self.vectors).expect("base is nonempty")
    }

    pub fn labels(&self) -> Vec<String> {
        self.vectors.iter().map(ToString::to_string).collect()
    }

    pub fn contains(&self, v: &ColumnVector) -> bool {
        self.vectors.binary_search(v).is_ok()
    }
}

impl Ord for Base {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vectors.cmp(&other.vectors).then_with(|| self.semiring.cmp(&other.semiring))
    }
}

impl PartialOrd for Base {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A factorization `A = U · V` under a semiring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub u: BinaryMatrix,
    pub v: BinaryMatrix,
    pub semiring: Semiring,
}

impl Decomposition {
    /// `U` from the rectangles' row supports, `V` from their column supports.
    pub fn from_solution(solution: &RectangleSolution) -> Option<Self> {
        let (u, v) = solution.factors()?;
        Some(Decomposition { u, v, semiring: solution.kind.semiring() })
    }

    pub fn size(&self) -> usize {
        self.u.n_cols()
    }

    /// True iff the product is binary and equals `a`.
    pub fn reproduces(&self, a: &BinaryMatrix) -> bool {
        product(&self.u, &self.v, self.semiring).ok().and_then(|p| p.to_matrix()).is_some_and(|m| &m == a)
    }
}

fn check_dim(x: &Base, y: &ColumnVector) -> Result<()> {
    if x.dim != y.dim() {
        return Err(Error::Dimension(format!("vector of dimension {} against base of dimension {}", y.dim(), x.dim)));
    }
    Ok(())
}

/// Indices of a subset of `vectors` with pairwise disjoint supports whose sum
/// is `target`, first found in lexicographic index order.
pub(crate) fn disjoint_sum(vectors: &[u64], target: u64) -> Option<Vec<usize>> {
    fn go(vectors: &[u64], start: usize, residual: u64, chosen: &mut Vec<usize>) -> bool {
        if residual == 0 {
            return true;
        }
        for i in start..vectors.len() {
            let v = vectors[i];
            if v != 0 && v & !residual == 0 {
                chosen.push(i);
                if go(vectors, i + 1, residual & !v, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    go(vectors, 0, target, &mut chosen).then_some(chosen)
}

/// Indices of a smallest subset of `vectors` whose union is `target`,
/// lexicographically first among the smallest.
pub(crate) fn covering_union(vectors: &[u64], target: u64) -> Option<Vec<usize>> {
    if target == 0 {
        return Some(Vec::new());
    }
    let inside: Vec<usize> = (0..vectors.len()).filter(|&i| vectors[i] != 0 && vectors[i] & !target == 0).collect();
    if inside.iter().fold(0, |acc, &i| acc | vectors[i]) != target {
        return None;
    }
    fn go(
        vectors: &[u64],
        inside: &[usize],
        start: usize,
        left: usize,
        acc: u64,
        target: u64,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if left == 0 {
            return acc == target;
        }
        for p in start..inside.len() {
            let i = inside[p];
            chosen.push(i);
            if go(vectors, inside, p + 1, left - 1, acc | vectors[i], target, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    (1..=inside.len()).find_map(|size| {
        let mut chosen = Vec::new();
        go(vectors, &inside, 0, size, 0, target, &mut chosen).then_some(chosen)
    })
}

/// A subset of `x` that combines to `y`, if any.
///
/// Binary: vectors with pairwise disjoint supports summing to `y`, first in
/// depth-first order over the canonical vector order. Boolean: a smallest
/// set of vectors, each inside `y`, whose union is `y`. The zero vector is
/// spanned by the empty subset.
pub fn spans_vector(x: &Base, y: &ColumnVector) -> Result<Option<Vec<ColumnVector>>> {
    check_dim(x, y)?;
    let raw: Vec<u64> = x.vectors.iter().map(|v| v.bits()).collect();
    let picked = match x.semiring {
        Semiring::Binary => disjoint_sum(&raw, y.bits()),
        Semiring::Boolean => covering_union(&raw, y.bits()),
    };
    Ok(picked.map(|idx| idx.into_iter().map(|i| x.vectors[i]).collect()))
}

/// Whether `x` spans every vector of `y`.
pub fn spans_base(x: &Base, y: &Base) -> Result<bool> {
    if x.semiring != y.semiring {
        return Err(Error::InvalidArgument(format!("cannot compare a {} base with a {} base", x.semiring, y.semiring)));
    }
    if x.dim != y.dim {
        return Err(Error::Dimension(format!("base dimensions {} and {} differ", x.dim, y.dim)));
    }
    for v in &y.vectors {
        if spans_vector(x, v)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every distinct base of `a` in canonical order; empty for the zero matrix.
pub fn enumerate_bases(a: &BinaryMatrix, s: Semiring) -> Result<Vec<Base>> {
    check_size(a)?;
    if a.is_zero() {
        return Ok(Vec::new());
    }
    let mut bases = BTreeSet::new();
    for sol in ranks::optimal_solutions(a, s)? {
        bases.insert(Base::from_solution(&sol)?);
    }
    Ok(bases.into_iter().collect())
}

/// Directed graph on the bases of a matrix, edge `(i, j)` when base `i`
/// spans base `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseGraph {
    pub nodes: Vec<Base>,
    pub edges: Vec<(usize, usize)>,
}

impl BaseGraph {
    /// Builds the graph over the given nodes and checks acyclicity.
    pub fn build(nodes: Vec<Base>) -> Result<Self> {
        let pairs: Vec<(usize, usize)> =
            (0..nodes.len()).flat_map(|i| (0..nodes.len()).filter(move |&j| j != i).map(move |j| (i, j))).collect();
        let verdicts = par::map(pairs.clone(), |(i, j)| spans_base(&nodes[i], &nodes[j]));
        let mut edges = Vec::new();
        for (pair, verdict) in pairs.into_iter().zip(verdicts) {
            if verdict? {
                edges.push(pair);
            }
        }
        let graph = BaseGraph { nodes, edges };
        if !graph.is_acyclic() {
            return Err(Error::AcyclicityViolation);
        }
        Ok(graph)
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edges.binary_search(&(from, to)).is_ok()
    }

    pub fn in_degree(&self, node: usize) -> usize {
        self.edges.iter().filter(|&&(_, j)| j == node).count()
    }

    /// Indices of nodes with no incoming edge, ascending.
    pub fn sources(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.in_degree(i) == 0).collect()
    }

    pub fn source_bases(&self) -> Vec<Base> {
        self.sources().into_iter().map(|i| self.nodes[i].clone()).collect()
    }

    pub fn index_of(&self, base: &Base) -> Option<usize> {
        self.nodes.binary_search(base).ok()
    }

    /// Kahn's algorithm.
    pub fn is_acyclic(&self) -> bool {
        let n = self.nodes.len();
        let mut indegree = vec![0usize; n];
        for &(_, j) in &self.edges {
            indegree[j] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut seen = 0;
        while let Some(i) = ready.pop() {
            seen += 1;
            for &(from, to) in &self.edges {
                if from == i {
                    indegree[to] -= 1;
                    if indegree[to] == 0 {
                        ready.push(to);
                    }
                }
            }
        }
        seen == n
    }

    /// Every path of length two is shortcut by an edge.
    pub fn is_transitive(&self) -> bool {
        self.edges.iter().all(|&(i, j)| {
            self.edges.iter().filter(|&&(from, _)| from == j).all(|&(_, k)| k == i || self.has_edge(i, k))
        })
    }

    pub fn to_dot(&self) -> String {
        let sources = self.sources();
        let mut out = String::from("digraph bases {\n");
        for (i, base) in self.nodes.iter().enumerate() {
            let shape = if sources.contains(&i) { ", shape=doublecircle" } else { "" };
            let _ = writeln!(out, "  {i} [label=\"{i}\", tooltip=\"{}\"{shape}];", base.labels().join(" "));
        }
        for &(i, j) in &self.edges {
            let _ = writeln!(out, "  {i} -> {j};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "bases": self.nodes.iter().map(Base::labels).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
            "sources": self.sources(),
        })
    }
}

pub fn base_graph(a: &BinaryMatrix, s: Semiring) -> Result<BaseGraph> {
    BaseGraph::build(enumerate_bases(a, s)?)
}

pub fn sources(g: &BaseGraph) -> Vec<Base> {
    g.source_bases()
}

/// The bases of a matrix together with its rank, for repeated queries.
#[derive(Debug, Clone)]
pub struct BaseSet {
    pub matrix: BinaryMatrix,
    pub semiring: Semiring,
    pub rank: usize,
    pub bases: Vec<Base>,
}

impl BaseSet {
    pub fn compute(a: &BinaryMatrix, s: Semiring) -> Result<Self> {
        let rank = ranks::rank(a, s)?.rank;
        let bases = enumerate_bases(a, s)?;
        Ok(BaseSet { matrix: a.clone(), semiring: s, rank, bases })
    }

    /// First base (in canonical order) spanning `x`.
    pub fn spanning_base(&self, x: &ColumnVector) -> Result<Option<&Base>> {
        if x.dim() != self.matrix.n_rows() {
            return Err(Error::Dimension(format!(
                "vector of dimension {} against {} rows",
                x.dim(),
                self.matrix.n_rows()
            )));
        }
        if self.bases.is_empty() {
            // Zero matrix: only the zero vector keeps rank 0.
            return Ok(None);
        }
        for base in &self.bases {
            if spans_vector(base, x)?.is_some() {
                return Ok(Some(base));
            }
        }
        Ok(None)
    }

    /// `rank(A | x) == rank(A)`, cross-checked against "some base spans x".
    pub fn is_rank_preserving(&self, x: &ColumnVector) -> Result<bool> {
        let direct = ranks::rank(&augment(&self.matrix, &[*x])?, self.semiring)?.rank == self.rank;
        let via_bases = if self.bases.is_empty() { x.is_zero() } else { self.spanning_base(x)?.is_some() };
        if direct != via_bases {
            return Err(Error::Inconsistency(format!(
                "augmenting by {x}: rank test says {direct}, base test says {via_bases}"
            )));
        }
        Ok(direct)
    }
}

pub fn is_rank_preserving(a: &BinaryMatrix, x: &ColumnVector, s: Semiring) -> Result<bool> {
    if x.dim() != a.n_rows() {
        return Err(Error::Dimension(format!("vector of dimension {} against {} rows", x.dim(), a.n_rows())));
    }
    BaseSet::compute(a, s)?.is_rank_preserving(x)
}

/// Outcome of the augmentation-property decision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AugmentationVerdict {
    pub semiring: Semiring,
    pub holds: bool,
    pub rank: usize,
    pub base_count: usize,
    pub source_count: usize,
    /// The unique source, which spans every base.
    pub spanning_base: Option<Base>,
    /// The first two sources in canonical order.
    pub counterexample_sources: Option<(Base, Base)>,
    /// Rank after augmenting with every vector of both sources.
    pub augmented_rank: Option<usize>,
}

/// Decides the augmentation property: it holds iff the base graph has
/// exactly one source. The all-zero matrix has no bases and holds
/// vacuously. On failure the two reported sources are checked to raise the
/// rank when appended together.
pub fn has_augmentation_property(a: &BinaryMatrix, s: Semiring) -> Result<AugmentationVerdict> {
    let rank = ranks::rank(a, s)?.rank;
    let graph = base_graph(a, s)?;
    let sources = graph.source_bases();
    let mut verdict = AugmentationVerdict {
        semiring: s,
        holds: sources.len() <= 1,
        rank,
        base_count: graph.nodes.len(),
        source_count: sources.len(),
        spanning_base: None,
        counterexample_sources: None,
        augmented_rank: None,
    };
    match sources.as_slice() {
        [] => {}
        [only] => {
            let i = graph.index_of(only).expect("source is a node");
            let covers_all = (0..graph.nodes.len()).all(|j| j == i || graph.has_edge(i, j));
            if !covers_all {
                return Err(Error::Inconsistency("single source does not span every base".into()));
            }
            verdict.spanning_base = Some(only.clone());
        }
        [first, second, ..] => {
            let mut vectors: Vec<ColumnVector> = first.vectors().to_vec();
            vectors.extend(second.vectors().iter().filter(|v| !first.contains(v)));
            let augmented = ranks::rank(&augment(a, &vectors)?, s)?.rank;
            if augmented <= rank {
                return Err(Error::Inconsistency(format!(
                    "two sources appended together kept the rank at {augmented}"
                )));
            }
            verdict.counterexample_sources = Some((first.clone(), second.clone()));
            verdict.augmented_rank = Some(augmented);
        }
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(text: &str) -> BinaryMatrix {
        text.parse().unwrap()
    }

    fn v(text: &str) -> ColumnVector {
        text.parse().unwrap()
    }

    fn base(vs: &[&str], s: Semiring) -> Base {
        Base::new(vs.iter().map(|t| v(t)).collect(), s).unwrap()
    }

    #[test]
    fn base_rejects_duplicates_and_mixed_dims() {
        assert!(Base::new(vec![v("01"), v("01")], Semiring::Binary).is_err());
        assert!(Base::new(vec![v("01"), v("011")], Semiring::Binary).is_err());
        assert!(Base::new(vec![], Semiring::Binary).is_err());
    }

    #[test]
    fn standard_base_spans_everything() {
        let std = base(&["1000", "0100", "0010", "0001"], Semiring::Binary);
        for bits in 0..16u64 {
            let y = ColumnVector::new(4, bits).unwrap();
            let w = spans_vector(&std, &y).unwrap().unwrap();
            let expected: Vec<ColumnVector> =
                (0..4).filter(|i| bits >> i & 1 == 1).map(|i| ColumnVector::unit(4, i).unwrap()).collect();
            let mut w_sorted = w.clone();
            w_sorted.sort();
            let mut e_sorted = expected;
            e_sorted.sort();
            assert_eq!(w_sorted, e_sorted);
        }
    }

    #[test]
    fn spans_vector_binary_requires_disjointness() {
        let x = base(&["110", "011"], Semiring::Binary);
        assert!(spans_vector(&x, &v("111")).unwrap().is_none());
        let x = base(&["110", "011"], Semiring::Boolean);
        assert_eq!(spans_vector(&x, &v("111")).unwrap().unwrap().len(), 2);
        assert!(matches!(spans_vector(&x, &v("11")), Err(Error::Dimension(_))));
    }

    #[test]
    fn spans_base_rejects_mixed_semirings() {
        let x = base(&["10", "01"], Semiring::Binary);
        let y = base(&["10", "01"], Semiring::Boolean);
        assert!(matches!(spans_base(&x, &y), Err(Error::InvalidArgument(_))));
        assert!(spans_base(&x, &x).unwrap());
    }

    #[test]
    fn identity_has_one_base() {
        let i3 = BinaryMatrix::identity(3).unwrap();
        let g = base_graph(&i3, Semiring::Binary).unwrap();
        assert_eq!(g.nodes.len(), 1);
        assert!(g.edges.is_empty());
        assert_eq!(g.sources(), vec![0]);
    }

    #[test]
    fn path_graph_has_one_source() {
        let nodes =
            vec![base(&["0011", "0110", "1111"], Semiring::Binary), base(&["0011", "0110", "1001"], Semiring::Binary)];
        let g = BaseGraph::build(nodes).unwrap();
        assert_eq!(g.edges, vec![(1, 0)]);
        assert_eq!(g.sources(), vec![1]);
    }

    #[test]
    fn dot_and_json_exports() {
        let a = m("010\n110\n111\n011");
        let g = base_graph(&a, Semiring::Binary).unwrap();
        let dot = g.to_dot();
        assert!(dot.starts_with("digraph bases {"));
        assert_eq!(dot.matches("->").count(), 2);
        let json = g.to_json();
        assert_eq!(json["bases"].as_array().unwrap().len(), 3);
        assert_eq!(json["edges"].as_array().unwrap().len(), 2);
        assert_eq!(json["sources"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn zero_matrix_is_vacuous() {
        let z = BinaryMatrix::zeros(3, 2).unwrap();
        assert!(enumerate_bases(&z, Semiring::Binary).unwrap().is_empty());
        let verdict = has_augmentation_property(&z, Semiring::Binary).unwrap();
        assert!(verdict.holds);
        assert!(is_rank_preserving(&z, &v("000"), Semiring::Binary).unwrap());
        assert!(!is_rank_preserving(&z, &v("010"), Semiring::Binary).unwrap());
    }
}
