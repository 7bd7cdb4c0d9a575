//! Exact binary rank by rectangle partition search.
//!
//! The 1-cells are colored in row-major order with at most `k` colors. A
//! color class is always a full rectangle `R × C`: when a cell `(r, c)`
//! joins color `i`, every cell of `(R ∪ {r}) × (C ∪ {c})` must be a 1 that
//! is uncolored or already `i`, and all of them are colored `i` at once.
//! A fresh color may only be opened as the next unused index, so every
//! unordered partition is visited exactly once.

use crate::config::check_size;
use crate::error::Result;
use crate::matrix::{bits, BinaryMatrix};
use crate::par;

use super::bounds::fooling_set;
use super::real::real_rank;
use super::reduce::{components, dedup, restrict, unrestrict};
use super::{RankResult, Rectangle, RectangleSolution, SolutionKind};

/// Target number of independent subtrees handed to the thread pool.
const FRONTIER_TARGET: usize = 64;
const FRONTIER_MAX_DEPTH: usize = 12;

#[derive(Clone)]
struct Node {
    rect_rows: Vec<u64>,
    rect_cols: Vec<u64>,
    colored: Vec<u64>,
    used: usize,
    cursor: usize,
}

struct Undo {
    color: usize,
    old_rows: u64,
    old_cols: u64,
    new_rows: u64,
    new_cols: u64,
    old_used: usize,
    old_cursor: usize,
}

struct Search<'a> {
    ones: &'a [u64],
    k: usize,
}

impl<'a> Search<'a> {
    fn root(&self) -> Node {
        Node {
            rect_rows: vec![0; self.k],
            rect_cols: vec![0; self.k],
            colored: vec![0; self.ones.len()],
            used: 0,
            cursor: 0,
        }
    }

    fn next_cell(&self, node: &Node) -> Option<(usize, usize)> {
        (node.cursor..self.ones.len()).find_map(|r| {
            let free = self.ones[r] & !node.colored[r];
            (free != 0).then(|| (r, free.trailing_zeros() as usize))
        })
    }

    fn uncolored(&self, node: &Node) -> usize {
        (node.cursor..self.ones.len()).map(|r| (self.ones[r] & !node.colored[r]).count_ones() as usize).sum()
    }

    fn assign(&self, node: &mut Node, color: usize, r: usize, c: usize) -> Option<Undo> {
        let old_rows = node.rect_rows[color];
        let old_cols = node.rect_cols[color];
        let new_rows = old_rows | 1 << r;
        let new_cols = old_cols | 1 << c;
        for row in bits(new_rows) {
            if self.ones[row] & new_cols != new_cols {
                return None;
            }
            let own = if old_rows >> row & 1 == 1 { old_cols } else { 0 };
            if (node.colored[row] & !own) & new_cols != 0 {
                return None;
            }
        }
        for row in bits(new_rows) {
            node.colored[row] |= new_cols;
        }
        let undo = Undo { color, old_rows, old_cols, new_rows, new_cols, old_used: node.used, old_cursor: node.cursor };
        node.rect_rows[color] = new_rows;
        node.rect_cols[color] = new_cols;
        node.used = node.used.max(color + 1);
        node.cursor = r;
        Some(undo)
    }

    fn undo(&self, node: &mut Node, u: Undo) {
        for row in bits(u.new_rows) {
            node.colored[row] &= !u.new_cols;
            if u.old_rows >> row & 1 == 1 {
                node.colored[row] |= u.old_cols;
            }
        }
        node.rect_rows[u.color] = u.old_rows;
        node.rect_cols[u.color] = u.old_cols;
        node.used = u.old_used;
        node.cursor = u.old_cursor;
    }

    /// Whether `(r, c)` could join `color` without mutating the node.
    fn can_join(&self, node: &Node, color: usize, r: usize, c: usize) -> bool {
        let old_rows = node.rect_rows[color];
        let old_cols = node.rect_cols[color];
        let new_rows = old_rows | 1 << r;
        let new_cols = old_cols | 1 << c;
        bits(new_rows).all(|row| {
            let own = if old_rows >> row & 1 == 1 { old_cols } else { 0 };
            self.ones[row] & new_cols == new_cols && (node.colored[row] & !own) & new_cols == 0
        })
    }

    /// Uncolored cells that fit no open rectangle can never join one, since
    /// rectangles only grow. A fooling set among them needs that many fresh
    /// colors.
    fn within_budget(&self, node: &Node) -> bool {
        let spare = self.k - node.used;
        let mut chosen: Vec<(usize, usize)> = Vec::new();
        for r in node.cursor..self.ones.len() {
            for c in bits(self.ones[r] & !node.colored[r]) {
                if (0..node.used).any(|color| self.can_join(node, color, r, c)) {
                    continue;
                }
                let fooling = chosen.iter().all(|&(r2, c2)| self.ones[r] >> c2 & 1 == 0 || self.ones[r2] >> c & 1 == 0);
                if fooling {
                    chosen.push((r, c));
                    if chosen.len() > spare {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn color_limit(&self, node: &Node) -> usize {
        (node.used + 1).min(self.k)
    }

    /// Depth-first search for the first complete partition below `node`.
    fn first(&self, node: &mut Node) -> bool {
        let Some((r, c)) = self.next_cell(node) else {
            return true;
        };
        if !self.within_budget(node) {
            return false;
        }
        for color in 0..self.color_limit(node) {
            if let Some(u) = self.assign(node, color, r, c) {
                if self.first(node) {
                    return true;
                }
                self.undo(node, u);
            }
        }
        false
    }

    /// Every partition below `node` using exactly `k` colors, in DFS order.
    fn all(&self, node: &mut Node, out: &mut Vec<Vec<Rectangle>>) {
        let Some((r, c)) = self.next_cell(node) else {
            if node.used == self.k {
                out.push(extract(node));
            }
            return;
        };
        if node.used + self.uncolored(node) < self.k || !self.within_budget(node) {
            return;
        }
        for color in 0..self.color_limit(node) {
            if let Some(u) = self.assign(node, color, r, c) {
                self.all(node, out);
                self.undo(node, u);
            }
        }
    }

    /// Breadth-first expansion of the top of the tree. Children are listed
    /// in the same order the depth-first search would visit them, so the
    /// frontier concatenates to the sequential search order.
    fn frontier(&self) -> Vec<Node> {
        let mut level = vec![self.root()];
        if !crate::config::parallel_enabled() {
            return level;
        }
        for _ in 0..FRONTIER_MAX_DEPTH {
            if level.len() >= FRONTIER_TARGET {
                break;
            }
            let mut next = Vec::new();
            let mut grew = false;
            for node in level {
                match self.next_cell(&node) {
                    None => next.push(node),
                    Some((r, c)) => {
                        grew = true;
                        for color in 0..self.color_limit(&node) {
                            let mut child = node.clone();
                            if self.assign(&mut child, color, r, c).is_some() {
                                next.push(child);
                            }
                        }
                    }
                }
            }
            level = next;
            if !grew {
                break;
            }
        }
        level
    }
}

fn extract(node: &Node) -> Vec<Rectangle> {
    (0..node.used).map(|i| Rectangle::raw(node.rect_rows[i], node.rect_cols[i])).collect()
}

/// A partition of the 1-cells of `ones` into at most `k` rectangles.
fn find_partition(ones: &[u64], k: usize) -> Option<Vec<Rectangle>> {
    let search = Search { ones, k };
    par::find_map_first(search.frontier(), |mut node| search.first(&mut node).then(|| extract(&node)))
}

/// Iterative deepening from `max(real rank, fooling set)`.
fn minimum_partition(a: &BinaryMatrix) -> Vec<Rectangle> {
    let lower = real_rank(a).max(fooling_set(a).len());
    // One rectangle per nonzero row always works.
    let upper = a.row_masks().iter().filter(|&&r| r != 0).count();
    for k in lower..=upper {
        if let Some(rects) = find_partition(a.row_masks(), k) {
            return rects;
        }
    }
    unreachable!("row-by-row partition has {upper} rectangles")
}

fn zero_result(a: &BinaryMatrix) -> RankResult {
    RankResult { rank: 0, witness: Some(RectangleSolution::canonical(SolutionKind::Partition, Vec::new(), a.shape())) }
}

/// Binary rank with a minimum partition as witness.
///
/// The matrix is first split into connected components and each component
/// is stripped of zero and duplicate rows and columns; the witness is lifted
/// back to the original indices.
pub fn binary_rank(a: &BinaryMatrix) -> Result<RankResult> {
    check_size(a)?;
    if a.is_zero() {
        return Ok(zero_result(a));
    }
    let mut rects = Vec::new();
    for (rows, cols) in components(a) {
        let (sub, row_idx, col_idx) = restrict(a, rows, cols);
        let red = dedup(&sub);
        let core = red.matrix.as_ref().expect("component has a 1-entry");
        for rect in minimum_partition(core) {
            rects.push(unrestrict(&red.lift(&rect), &row_idx, &col_idx));
        }
    }
    Ok(RankResult {
        rank: rects.len(),
        witness: Some(RectangleSolution::canonical(SolutionKind::Partition, rects, a.shape())),
    })
}

/// Binary rank searched on the matrix as given, without component splitting
/// or deduplication.
pub fn binary_rank_direct(a: &BinaryMatrix) -> Result<RankResult> {
    check_size(a)?;
    if a.is_zero() {
        return Ok(zero_result(a));
    }
    let rects = minimum_partition(a);
    Ok(RankResult {
        rank: rects.len(),
        witness: Some(RectangleSolution::canonical(SolutionKind::Partition, rects, a.shape())),
    })
}

/// Every partition of the 1-cells into exactly `k` rectangles, each listed
/// once, in canonical order.
pub fn partition_solutions(a: &BinaryMatrix, k: usize) -> Result<Vec<RectangleSolution>> {
    check_size(a)?;
    if a.is_zero() || k == 0 {
        return Ok(if a.is_zero() && k == 0 {
            vec![RectangleSolution::canonical(SolutionKind::Partition, Vec::new(), a.shape())]
        } else {
            Vec::new()
        });
    }
    if k > a.count_ones() {
        return Ok(Vec::new());
    }
    let search = Search { ones: a.row_masks(), k };
    let found = par::map(search.frontier(), |mut node| {
        let mut out = Vec::new();
        search.all(&mut node, &mut out);
        out
    });
    let mut solutions: Vec<RectangleSolution> = found
        .into_iter()
        .flatten()
        .map(|rects| RectangleSolution::canonical(SolutionKind::Partition, rects, a.shape()))
        .collect();
    solutions.sort_by(|x, y| x.rectangles.cmp(&y.rectangles));
    Ok(solutions)
}
