//! Exact boolean rank as minimum set cover over maximal rectangles, and
//! enumeration of optimal covers.

use std::collections::{BTreeSet, HashSet};

use crate::config::check_size;
use crate::error::{Error, Result};
use crate::matrix::{bits, BinaryMatrix};
use crate::par;

use super::bounds::{fooling_set, greedy_fooling};
use super::reduce::{components, dedup, restrict, unrestrict};
use super::{RankResult, Rectangle, RectangleSolution, SolutionKind};

const MAX_RECTANGLES: usize = 1 << 18;
/// Cover enumeration walks every subset of each column's support.
const MAX_COLUMN_WEIGHT: u32 = 20;

/// All inclusion-maximal all-ones rectangles, sorted by row set then column
/// set. Empty for the all-zero matrix.
pub fn enumerate_maximal_rectangles(a: &BinaryMatrix) -> Result<Vec<Rectangle>> {
    check_size(a)?;
    // Column sets of maximal rectangles are exactly the nonempty
    // intersections of nonempty sets of rows.
    let mut intents: HashSet<u64> = HashSet::new();
    for &row in a.row_masks().iter().filter(|&&r| r != 0) {
        let mut fresh = vec![row];
        fresh.extend(intents.iter().map(|&s| s & row).filter(|&x| x != 0));
        intents.extend(fresh);
        if intents.len() > MAX_RECTANGLES {
            return Err(Error::ResourceLimit(format!("more than {MAX_RECTANGLES} maximal rectangles")));
        }
    }
    let mut rects: Vec<Rectangle> = intents
        .into_iter()
        .map(|cols| {
            let rows = a
                .row_masks()
                .iter()
                .enumerate()
                .filter(|(_, &r)| r & cols == cols)
                .fold(0u64, |acc, (i, _)| acc | 1 << i);
            Rectangle::raw(rows, cols)
        })
        .collect();
    rects.sort();
    Ok(rects)
}

#[derive(Clone)]
struct Node {
    covered: Vec<u64>,
    chosen: Vec<usize>,
}

struct CoverSearch<'a> {
    ones: &'a [u64],
    n_cols: usize,
    rects: Vec<Rectangle>,
    /// Candidate rectangle ids containing each cell `r * n_cols + c`.
    by_cell: Vec<Vec<usize>>,
    k: usize,
}

impl<'a> CoverSearch<'a> {
    fn new(ones: &'a [u64], n_cols: usize, rects: Vec<Rectangle>, k: usize) -> Self {
        let mut by_cell = vec![Vec::new(); ones.len() * n_cols];
        for (id, rect) in rects.iter().enumerate() {
            for r in bits(rect.row_mask()) {
                for c in bits(rect.col_mask()) {
                    by_cell[r * n_cols + c].push(id);
                }
            }
        }
        CoverSearch { ones, n_cols, rects, by_cell, k }
    }

    fn root(&self) -> Node {
        Node { covered: vec![0; self.ones.len()], chosen: Vec::new() }
    }

    fn uncovered(&self, node: &Node) -> Vec<u64> {
        self.ones.iter().zip(&node.covered).map(|(&o, &c)| o & !c).collect()
    }

    /// Lower bound on rectangles still needed, or `None` when fully covered.
    fn remaining_bound(&self, uncovered: &[u64]) -> Option<usize> {
        if uncovered.iter().all(|&u| u == 0) {
            None
        } else {
            Some(greedy_fooling(self.ones, uncovered).len())
        }
    }

    /// Uncovered cell with the fewest candidate rectangles, first in
    /// row-major order on ties.
    fn branching_cell(&self, uncovered: &[u64]) -> usize {
        let mut best: Option<(usize, usize)> = None;
        for (r, &row) in uncovered.iter().enumerate() {
            for c in bits(row) {
                let cell = r * self.n_cols + c;
                let n = self.by_cell[cell].len();
                if best.is_none_or(|(_, bn)| n < bn) {
                    best = Some((cell, n));
                }
            }
        }
        best.expect("some cell is uncovered").0
    }

    fn first_uncovered(&self, uncovered: &[u64]) -> usize {
        uncovered
            .iter()
            .enumerate()
            .find_map(|(r, &row)| (row != 0).then(|| r * self.n_cols + row.trailing_zeros() as usize))
            .expect("some cell is uncovered")
    }

    fn apply(&self, node: &mut Node, id: usize) -> Vec<(usize, u64)> {
        let rect = self.rects[id];
        let saved = bits(rect.row_mask()).map(|r| (r, node.covered[r])).collect();
        for r in bits(rect.row_mask()) {
            node.covered[r] |= rect.col_mask();
        }
        node.chosen.push(id);
        saved
    }

    fn revert(&self, node: &mut Node, saved: Vec<(usize, u64)>) {
        for (r, old) in saved {
            node.covered[r] = old;
        }
        node.chosen.pop();
    }

    /// First cover of size at most `k` below `node`, depth first.
    fn first(&self, node: &mut Node) -> bool {
        let uncovered = self.uncovered(node);
        let Some(bound) = self.remaining_bound(&uncovered) else {
            return true;
        };
        if node.chosen.len() + bound > self.k {
            return false;
        }
        let cell = self.branching_cell(&uncovered);
        for &id in &self.by_cell[cell] {
            let saved = self.apply(node, id);
            if self.first(node) {
                return true;
            }
            self.revert(node, saved);
        }
        false
    }

    fn is_irredundant(&self, chosen: &[usize]) -> bool {
        chosen.iter().enumerate().all(|(i, &id)| {
            let rect = self.rects[id];
            bits(rect.row_mask()).any(|r| {
                let others = chosen
                    .iter()
                    .enumerate()
                    .filter(|&(j, &o)| j != i && self.rects[o].row_mask() >> r & 1 == 1)
                    .fold(0u64, |acc, (_, &o)| acc | self.rects[o].col_mask());
                rect.col_mask() & !others != 0
            })
        })
    }

    /// Every irredundant cover of size exactly `k` below `node`.
    fn all(&self, node: &mut Node, out: &mut BTreeSet<Vec<usize>>) {
        let uncovered = self.uncovered(node);
        let Some(bound) = self.remaining_bound(&uncovered) else {
            if node.chosen.len() == self.k && self.is_irredundant(&node.chosen) {
                let mut ids = node.chosen.clone();
                ids.sort_unstable();
                out.insert(ids);
            }
            return;
        };
        if node.chosen.len() + bound > self.k {
            return;
        }
        let cell = self.first_uncovered(&uncovered);
        for &id in &self.by_cell[cell] {
            let saved = self.apply(node, id);
            self.all(node, out);
            self.revert(node, saved);
        }
    }

    /// One level of expansion per round, preserving depth-first order.
    fn frontier(&self, pick: impl Fn(&Self, &[u64]) -> usize) -> Vec<Node> {
        let mut level = vec![self.root()];
        if !crate::config::parallel_enabled() {
            return level;
        }
        for _ in 0..2 {
            let mut next = Vec::new();
            for node in level {
                let uncovered = self.uncovered(&node);
                if node.chosen.len() >= self.k || self.remaining_bound(&uncovered).is_none() {
                    next.push(node);
                    continue;
                }
                let cell = pick(self, &uncovered);
                for &id in &self.by_cell[cell] {
                    let mut child = node.clone();
                    self.apply(&mut child, id);
                    next.push(child);
                }
            }
            level = next;
        }
        level
    }
}

fn minimum_cover(a: &BinaryMatrix) -> Result<Vec<Rectangle>> {
    let rects = enumerate_maximal_rectangles(a)?;
    let lower = fooling_set(a).len();
    let upper = a.row_masks().iter().filter(|&&r| r != 0).count();
    for k in lower..=upper {
        let search = CoverSearch::new(a.row_masks(), a.n_cols(), rects.clone(), k);
        let found = par::find_map_first(search.frontier(CoverSearch::branching_cell), |mut node| {
            search.first(&mut node).then(|| node.chosen.iter().map(|&id| search.rects[id]).collect())
        });
        if let Some(cover) = found {
            return Ok(cover);
        }
    }
    unreachable!("row-by-row cover has {upper} rectangles")
}

fn zero_result(a: &BinaryMatrix) -> RankResult {
    RankResult { rank: 0, witness: Some(RectangleSolution::canonical(SolutionKind::Cover, Vec::new(), a.shape())) }
}

/// Boolean rank with a minimum cover by maximal rectangles as witness.
/// Components and duplicate lines are reduced away first, as for the
/// binary rank.
pub fn boolean_rank(a: &BinaryMatrix) -> Result<RankResult> {
    check_size(a)?;
    if a.is_zero() {
        return Ok(zero_result(a));
    }
    let mut rects = Vec::new();
    for (rows, cols) in components(a) {
        let (sub, row_idx, col_idx) = restrict(a, rows, cols);
        let red = dedup(&sub);
        let core = red.matrix.as_ref().expect("component has a 1-entry");
        for rect in minimum_cover(core)? {
            rects.push(unrestrict(&red.lift(&rect), &row_idx, &col_idx));
        }
    }
    Ok(RankResult {
        rank: rects.len(),
        witness: Some(RectangleSolution::canonical(SolutionKind::Cover, rects, a.shape())),
    })
}

/// Boolean rank searched on the matrix as given.
pub fn boolean_rank_direct(a: &BinaryMatrix) -> Result<RankResult> {
    check_size(a)?;
    if a.is_zero() {
        return Ok(zero_result(a));
    }
    let rects = minimum_cover(a)?;
    Ok(RankResult {
        rank: rects.len(),
        witness: Some(RectangleSolution::canonical(SolutionKind::Cover, rects, a.shape())),
    })
}

/// Rectangles `R × C(R)` for every nonempty row set `R` with a common
/// 1-column, where `C(R)` is the set of all such columns.
fn column_maximal_rectangles(a: &BinaryMatrix) -> Result<Vec<Rectangle>> {
    let mut row_sets: HashSet<u64> = HashSet::new();
    for col in a.col_masks() {
        if col.count_ones() > MAX_COLUMN_WEIGHT {
            return Err(Error::ResourceLimit(format!("cover enumeration needs column weights <= {MAX_COLUMN_WEIGHT}")));
        }
        // every nonempty subset of the column's support
        let mut sub = col;
        while sub != 0 {
            row_sets.insert(sub);
            sub = (sub - 1) & col;
        }
        if row_sets.len() > MAX_RECTANGLES {
            return Err(Error::ResourceLimit(format!("more than {MAX_RECTANGLES} candidate rectangles")));
        }
    }
    let mut rects: Vec<Rectangle> = row_sets
        .into_iter()
        .map(|rows| {
            let cols = bits(rows).fold(u64::MAX, |acc, r| acc & a.row_mask(r));
            Rectangle::raw(rows, cols)
        })
        .collect();
    rects.sort();
    Ok(rects)
}

/// Every irredundant cover of the 1-cells by exactly `k` rectangles, in
/// canonical order.
///
/// Row supports are unrestricted and each rectangle takes every column its
/// rows share. Any cover maps to one of these by widening each rectangle to
/// its full column set, which keeps the row supports (and so the induced
/// base) unchanged. At the optimal `k` every cover is irredundant.
pub fn cover_solutions(a: &BinaryMatrix, k: usize) -> Result<Vec<RectangleSolution>> {
    check_size(a)?;
    if a.is_zero() || k == 0 {
        return Ok(if a.is_zero() && k == 0 {
            vec![RectangleSolution::canonical(SolutionKind::Cover, Vec::new(), a.shape())]
        } else {
            Vec::new()
        });
    }
    let rects = column_maximal_rectangles(a)?;
    let search = CoverSearch::new(a.row_masks(), a.n_cols(), rects, k);
    let parts = par::map(search.frontier(CoverSearch::first_uncovered), |mut node| {
        let mut out = BTreeSet::new();
        search.all(&mut node, &mut out);
        out
    });
    let ids: BTreeSet<Vec<usize>> = parts.into_iter().flatten().collect();
    let mut solutions: Vec<RectangleSolution> = ids
        .into_iter()
        .map(|set| {
            let rects = set.iter().map(|&id| search.rects[id]).collect();
            RectangleSolution::canonical(SolutionKind::Cover, rects, a.shape())
        })
        .collect();
    solutions.sort_by(|x, y| x.rectangles.cmp(&y.rectangles));
    Ok(solutions)
}
