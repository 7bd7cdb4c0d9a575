//! Sufficient conditions for the augmentation property: disjoint-in-rows
//! bases, unique base rows sums, and decompositions whose `V` rows are rows
//! of `A`.

use serde::Serialize;

use crate::bases::{covering_union, disjoint_sum, enumerate_bases, spans_base, Base, Decomposition};
use crate::config::check_size;
use crate::error::{Error, Result};
use crate::matrix::{bits, BinaryMatrix, Semiring};
use crate::par;
use crate::ranks::{self, RectangleSolution};

/// The binary base whose vectors have pairwise disjoint supports, if any.
/// At most one exists; finding two is reported as an error.
pub fn find_disjoint_in_rows_base(a: &BinaryMatrix) -> Result<Option<Base>> {
    let mut found: Vec<Base> =
        enumerate_bases(a, Semiring::Binary)?.into_iter().filter(Base::is_disjoint_in_rows).collect();
    match found.len() {
        0 | 1 => Ok(found.pop()),
        n => Err(Error::MultipleDisjointBases(n)),
    }
}

/// Two disjoint nonempty sets of `V` rows with equal sums.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumsCounterexample {
    pub decomposition: Decomposition,
    /// Coefficient per row of `V`, in `{-1, 0, 1}`, first nonzero `+1`.
    pub kernel: Vec<i8>,
    pub plus_rows: Vec<usize>,
    pub minus_rows: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniqueSumsVerdict {
    pub semiring: Semiring,
    pub holds: bool,
    pub decompositions_checked: usize,
    pub counterexample: Option<SumsCounterexample>,
}

/// Nonzero `c` in `{-1,0,1}^k` with `c·V = 0` over the integers, first
/// nonzero entry `+1`. `rows` are the column masks of the rows of `V`.
fn integer_kernel(rows: &[u64]) -> Option<Vec<i8>> {
    let width = rows.iter().fold(0u64, |acc, r| acc | r);
    let cols: Vec<usize> = bits(width).collect();
    // remaining[i][j]: rows at index >= i with a 1 in column cols[j].
    let mut remaining = vec![vec![0i32; cols.len()]; rows.len() + 1];
    for i in (0..rows.len()).rev() {
        for (j, &c) in cols.iter().enumerate() {
            remaining[i][j] = remaining[i + 1][j] + (rows[i] >> c & 1) as i32;
        }
    }
    fn go(
        rows: &[u64],
        cols: &[usize],
        remaining: &[Vec<i32>],
        i: usize,
        sums: &mut [i32],
        coeffs: &mut Vec<i8>,
        started: bool,
    ) -> bool {
        if sums.iter().zip(&remaining[i]).any(|(s, r)| s.abs() > *r) {
            return false;
        }
        if i == rows.len() {
            return started && sums.iter().all(|&s| s == 0);
        }
        let choices: &[i8] = if started { &[0, 1, -1] } else { &[0, 1] };
        for &c in choices {
            for (j, &col) in cols.iter().enumerate() {
                sums[j] += c as i32 * (rows[i] >> col & 1) as i32;
            }
            coeffs.push(c);
            if go(rows, cols, remaining, i + 1, sums, coeffs, started || c != 0) {
                return true;
            }
            coeffs.pop();
            for (j, &col) in cols.iter().enumerate() {
                sums[j] -= c as i32 * (rows[i] >> col & 1) as i32;
            }
        }
        false
    }
    let mut sums = vec![0i32; cols.len()];
    let mut coeffs = Vec::with_capacity(rows.len());
    go(rows, &cols, &remaining, 0, &mut sums, &mut coeffs, false).then_some(coeffs)
}

/// Two disjoint nonempty row sets with equal unions, encoded like
/// [`integer_kernel`].
fn union_collision(rows: &[u64]) -> Option<Vec<i8>> {
    let suffix: Vec<u64> = {
        let mut s = vec![0u64; rows.len() + 1];
        for i in (0..rows.len()).rev() {
            s[i] = s[i + 1] | rows[i];
        }
        s
    };
    fn go(rows: &[u64], suffix: &[u64], i: usize, plus: u64, minus: u64, coeffs: &mut Vec<i8>) -> bool {
        // A column on one side only must still be reachable from the rest.
        if (plus ^ minus) & !suffix[i] != 0 {
            return false;
        }
        if i == rows.len() {
            return plus != 0 && minus != 0 && plus == minus;
        }
        let started = coeffs.iter().any(|&c| c != 0);
        let choices: &[i8] = if started { &[0, 1, -1] } else { &[0, 1] };
        for &c in choices {
            let (p, m) = match c {
                1 => (plus | rows[i], minus),
                -1 => (plus, minus | rows[i]),
                _ => (plus, minus),
            };
            coeffs.push(c);
            if go(rows, suffix, i + 1, p, m, coeffs) {
                return true;
            }
            coeffs.pop();
        }
        false
    }
    let mut coeffs = Vec::with_capacity(rows.len());
    go(rows, &suffix, 0, 0, 0, &mut coeffs).then_some(coeffs)
}

fn counterexample_for(sol: &RectangleSolution, s: Semiring) -> Option<SumsCounterexample> {
    let decomposition = Decomposition::from_solution(sol)?;
    let rows = decomposition.v.row_masks();
    let kernel = match s {
        Semiring::Binary => integer_kernel(rows),
        Semiring::Boolean => union_collision(rows),
    }?;
    let pick = |sign: i8| (0..kernel.len()).filter(|&i| kernel[i] == sign).collect();
    Some(SumsCounterexample { plus_rows: pick(1), minus_rows: pick(-1), kernel, decomposition })
}

/// Unique base rows sums under the binary semiring, checked over every
/// optimal partition.
pub fn has_unique_base_rows_sums(a: &BinaryMatrix) -> Result<UniqueSumsVerdict> {
    has_unique_base_rows_sums_in(a, Semiring::Binary)
}

/// Binary: no optimal decomposition has a `{-1,0,1}` integer kernel vector
/// on the rows of `V`. Boolean: no optimal cover decomposition has two
/// disjoint nonempty sets of `V` rows with equal unions.
pub fn has_unique_base_rows_sums_in(a: &BinaryMatrix, s: Semiring) -> Result<UniqueSumsVerdict> {
    let solutions = ranks::optimal_solutions(a, s)?;
    let found = par::map(solutions.iter().collect(), |sol| counterexample_for(sol, s));
    let counterexample = found.into_iter().flatten().next();
    Ok(UniqueSumsVerdict {
        semiring: s,
        holds: counterexample.is_none(),
        decompositions_checked: solutions.len(),
        counterexample,
    })
}

fn expressible(rows: &[u64], target: u64, s: Semiring) -> Option<Vec<usize>> {
    match s {
        Semiring::Binary => disjoint_sum(rows, target),
        Semiring::Boolean => covering_union(rows, target),
    }
}

/// Binary decomposition with every row of `V` a row of `A`, if one exists.
pub fn rows_of_a_decomposition(a: &BinaryMatrix) -> Result<Option<Decomposition>> {
    rows_of_a_decomposition_in(a, Semiring::Binary)
}

/// Drops, highest index first and until nothing changes, every row that is
/// a 0/1 combination of the other remaining rows. The survivors form `V`
/// when their rank equals their count. `None` for the zero matrix.
pub fn rows_of_a_decomposition_in(a: &BinaryMatrix, s: Semiring) -> Result<Option<Decomposition>> {
    check_size(a)?;
    if a.is_zero() {
        return Ok(None);
    }
    let masks = a.row_masks();
    let mut survivors: Vec<usize> = (0..a.n_rows()).collect();
    'outer: loop {
        for pos in (0..survivors.len()).rev() {
            let others: Vec<u64> =
                survivors.iter().enumerate().filter(|&(p, _)| p != pos).map(|(_, &r)| masks[r]).collect();
            if expressible(&others, masks[survivors[pos]], s).is_some() {
                survivors.remove(pos);
                continue 'outer;
            }
        }
        break;
    }
    let v = a.select_rows(&survivors)?;
    if ranks::rank(&v, s)?.rank != survivors.len() {
        return Ok(None);
    }
    let basis: Vec<u64> = survivors.iter().map(|&r| masks[r]).collect();
    let mut u_rows = Vec::with_capacity(a.n_rows());
    for &row in masks {
        let Some(idx) = expressible(&basis, row, s) else {
            return Err(Error::Inconsistency("a dropped row is not a combination of the surviving rows".into()));
        };
        u_rows.push(idx.into_iter().fold(0u64, |acc, i| acc | 1 << i));
    }
    let u = BinaryMatrix::from_row_masks(survivors.len(), u_rows)?;
    let d = Decomposition { u, v, semiring: s };
    debug_assert!(d.reproduces(a));
    Ok(Some(d))
}

/// `rows` combine to `rows[target]` with the other listed indices.
fn is_sum_of(rows: &[u64], subset: &[usize], target: usize) -> bool {
    let mut acc = 0u64;
    for &i in subset.iter().filter(|&&i| i != target) {
        if acc & rows[i] != 0 {
            return false;
        }
        acc |= rows[i];
    }
    acc == rows[target]
}

fn for_each_subset(n: usize, size: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn go(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == size {
            return f(cur);
        }
        for i in start..n {
            cur.push(i);
            let ok = go(n, size, i + 1, cur, f);
            cur.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    go(n, size, 0, &mut Vec::new(), f)
}

/// For every set of at most `min(n, 5)` row indices and every choice of
/// target row in it, the target row of `U` is the sum of the others exactly
/// when the same holds in `A`.
///
/// Requires `d` to be an optimal binary decomposition of `a` and `a` to have
/// unique base rows sums.
pub fn verify_dependency_transfer(a: &BinaryMatrix, d: &Decomposition) -> Result<bool> {
    if d.semiring != Semiring::Binary || !d.reproduces(a) {
        return Err(Error::InvalidArgument("decomposition is not a binary factorization of A".into()));
    }
    if d.size() != ranks::binary_rank(a)?.rank {
        return Err(Error::InvalidArgument("decomposition is not optimal".into()));
    }
    if !has_unique_base_rows_sums(a)?.holds {
        return Err(Error::InvalidArgument("matrix lacks unique base rows sums".into()));
    }
    let x = d.u.row_masks();
    let y = a.row_masks();
    let n = a.n_rows();
    for size in 1..=n.min(5) {
        let ok = for_each_subset(n, size, &mut |subset| {
            subset.iter().all(|&t| is_sum_of(x, subset, t) == is_sum_of(y, subset, t))
        });
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowsOfAVerdict {
    pub applies: bool,
    pub confirmed: Option<bool>,
    pub unique_sums: bool,
    pub decomposition: Option<Decomposition>,
}

/// When `A` has a rows-of-A decomposition and unique base rows sums, the
/// decomposition's `U` must span every binary base.
pub fn rows_of_a_verdict(a: &BinaryMatrix) -> Result<RowsOfAVerdict> {
    let decomposition = rows_of_a_decomposition(a)?;
    let unique_sums = has_unique_base_rows_sums(a)?.holds;
    let applies = decomposition.is_some() && unique_sums;
    let mut confirmed = None;
    if applies {
        let d = decomposition.as_ref().expect("applies");
        let u = Base::from_columns_of(&d.u, Semiring::Binary)?;
        for base in enumerate_bases(a, Semiring::Binary)? {
            if !spans_base(&u, &base)? {
                return Err(Error::RowsOfASpanViolation(format!(
                    "U = {:?} does not span {:?}",
                    u.labels(),
                    base.labels()
                )));
            }
        }
        confirmed = Some(true);
    }
    Ok(RowsOfAVerdict { applies, confirmed, unique_sums, decomposition })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ColumnVector;

    fn m(text: &str) -> BinaryMatrix {
        text.parse().unwrap()
    }

    #[test]
    fn kernel_search() {
        assert_eq!(integer_kernel(&[0b001, 0b010, 0b100]), None);
        assert_eq!(integer_kernel(&[0b011, 0b001, 0b010]), Some(vec![1, -1, -1]));
        assert_eq!(integer_kernel(&[0b11, 0b11]), Some(vec![1, -1]));
        assert_eq!(union_collision(&[0b111, 0b110, 0b100]), None);
        assert_eq!(union_collision(&[0b011, 0b001, 0b010]), Some(vec![1, -1, -1]));
        assert_eq!(union_collision(&[0b111, 0b011, 0b110]), Some(vec![1, -1, -1]));
    }

    #[test]
    fn identity_properties() {
        let i4 = BinaryMatrix::identity(4).unwrap();
        let base = find_disjoint_in_rows_base(&i4).unwrap().unwrap();
        assert_eq!(base.vectors(), i4.columns().iter().rev().cloned().collect::<Vec<_>>().as_slice());
        assert!(has_unique_base_rows_sums(&i4).unwrap().holds);
        let d = rows_of_a_decomposition(&i4).unwrap().unwrap();
        assert_eq!((d.u.clone(), d.v.clone()), (i4.clone(), i4.clone()));
        assert!(verify_dependency_transfer(&i4, &d).unwrap());
    }

    #[test]
    fn sums_inline_decomposition() {
        let a = m("110\n001\n011\n111");
        let d = rows_of_a_decomposition(&a).unwrap().unwrap();
        assert_eq!(d.u, m("100\n010\n001\n110"));
        assert_eq!(d.v, m("110\n001\n011"));
        assert!(verify_dependency_transfer(&a, &d).unwrap());
    }

    #[test]
    fn sec2_matrix_has_no_rows_of_a_decomposition() {
        let a = m("010\n110\n111\n011");
        assert!(rows_of_a_decomposition(&a).unwrap().is_none());
        assert!(find_disjoint_in_rows_base(&a).unwrap().is_none());
    }

    #[test]
    fn single_source_verdicts() {
        let a = m("110\n011\n011\n001");
        let base = find_disjoint_in_rows_base(&a).unwrap().unwrap();
        let expected: Vec<ColumnVector> = ["1000", "0110", "0001"].iter().map(|t| t.parse().unwrap()).collect();
        assert_eq!(base, Base::new(expected, Semiring::Binary).unwrap());
        let v = rows_of_a_verdict(&a).unwrap();
        assert!(v.applies);
        assert_eq!(v.confirmed, Some(true));
    }

    #[test]
    fn identical_rows_fail_unique_sums() {
        let a = m("11111\n11111\n00011\n01100\n01001\n00110");
        let verdict = has_unique_base_rows_sums(&a).unwrap();
        assert!(!verdict.holds);
        let cx = verdict.counterexample.unwrap();
        let v = cx.decomposition.v.row_masks();
        let sum =
            |idx: &[usize]| -> Vec<u32> { (0..5).map(|c| idx.iter().map(|&i| (v[i] >> c & 1) as u32).sum()).collect() };
        assert_eq!(sum(&cx.plus_rows), sum(&cx.minus_rows));
        assert!(!rows_of_a_verdict(&a).unwrap().applies);
    }

    #[test]
    fn dependency_transfer_rejects_bad_preconditions() {
        let a = m("11111\n11111\n00011\n01100\n01001\n00110");
        let sol = ranks::binary_rank(&a).unwrap().witness.unwrap();
        let d = Decomposition::from_solution(&sol).unwrap();
        assert!(matches!(verify_dependency_transfer(&a, &d), Err(Error::InvalidArgument(_))));
    }
}
