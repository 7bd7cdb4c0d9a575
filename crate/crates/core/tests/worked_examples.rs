use rankforge::bases::{base_graph, spans_base, Base};
use rankforge::constructions::{augment_with_source_bases, build_ak, build_gap_binary, build_gap_boolean, fixture};
use rankforge::properties::{
    find_disjoint_in_rows_base, has_unique_base_rows_sums, has_unique_base_rows_sums_in, rows_of_a_decomposition_in,
    rows_of_a_verdict, verify_dependency_transfer,
};
use rankforge::ranks::{self, partition_solutions};
use rankforge::{has_augmentation_property, BinaryMatrix, ColumnVector, Decomposition, Error, Semiring};

fn base(vs: &[&str], s: Semiring) -> Base {
    Base::new(vs.iter().map(|v| v.parse::<ColumnVector>().unwrap()).collect(), s).unwrap()
}

fn m(text: &str) -> BinaryMatrix {
    text.parse().unwrap()
}

#[test]
fn two_source_example_base_graph() {
    let a = fixture("sec2_example").unwrap().matrix;
    let g = base_graph(&a, Semiring::Binary).unwrap();
    let u1 = base(&["0110", "1001", "0011"], Semiring::Binary);
    let u2 = base(&["0110", "1100", "0011"], Semiring::Binary);
    let u3 = base(&["0110", "1111", "0011"], Semiring::Binary);
    assert_eq!(g.nodes, vec![u1.clone(), u2.clone(), u3.clone()]);
    let idx = |b: &Base| g.index_of(b).unwrap();
    assert_eq!(g.edges, vec![(idx(&u1), idx(&u3)), (idx(&u2), idx(&u3))]);
    assert_eq!(g.source_bases(), vec![u1, u2]);
}

#[test]
fn boolean_sources_of_the_gap_base_matrix() {
    let a = fixture("gap_boolean_base").unwrap().matrix;
    let sources = base_graph(&a, Semiring::Boolean).unwrap().source_bases();
    assert!(sources.contains(&base(&["0110", "1001", "0011"], Semiring::Boolean)));
    assert!(sources.contains(&base(&["0110", "1100", "0011"], Semiring::Boolean)));
}

#[test]
fn boolean_example_sources_differ_by_semiring() {
    let a = fixture("boolean_example").unwrap().matrix;
    assert_eq!(base_graph(&a, Semiring::Binary).unwrap().sources().len(), 1);
    assert!(base_graph(&a, Semiring::Boolean).unwrap().sources().len() >= 2);
    assert!(has_augmentation_property(&a, Semiring::Binary).unwrap().holds);
    assert!(!has_augmentation_property(&a, Semiring::Boolean).unwrap().holds);
}

#[test]
fn single_source_example() {
    let a = fixture("single_source").unwrap().matrix;
    let g = base_graph(&a, Semiring::Binary).unwrap();
    let u1 = base(&["1000", "1110", "0111"], Semiring::Binary);
    let u2 = base(&["1000", "0110", "0111"], Semiring::Binary);
    let u3 = base(&["1000", "0110", "0001"], Semiring::Binary);
    assert_eq!(g.nodes.len(), 3);
    for b in [&u1, &u2, &u3] {
        assert!(g.index_of(b).is_some());
    }
    assert_eq!(g.source_bases(), vec![u3.clone()]);
    assert!(spans_base(&u3, &u1).unwrap() && spans_base(&u3, &u2).unwrap());
    assert_eq!(find_disjoint_in_rows_base(&a).unwrap(), Some(u3));
}

#[test]
fn identical_rows_example() {
    let a = fixture("identical_rows").unwrap().matrix;
    assert_eq!(ranks::binary_rank(&a).unwrap().rank, 5);
    let u1 = base(&["110000", "001000", "000100", "000010", "000001"], Semiring::Binary);
    let u2 = base(&["110000", "100010", "100001", "010100", "011000"], Semiring::Binary);
    assert!(u1.is_disjoint_in_rows());
    assert!(!spans_base(&u1, &u2).unwrap());
    let g = base_graph(&a, Semiring::Binary).unwrap();
    assert!(g.index_of(&u1).is_some() && g.index_of(&u2).is_some());
    assert!(!has_augmentation_property(&a, Semiring::Binary).unwrap().holds);

    // V of the U2 decomposition: rows {1,2,3} and {1,4,5} (1-based) share a sum.
    let sols = partition_solutions(&a, 5).unwrap();
    let v2 = sols
        .iter()
        .filter(|s| Base::from_solution(s).unwrap() == u2)
        .map(|s| Decomposition::from_solution(s).unwrap())
        .next()
        .unwrap();
    let u_cols = v2.u.columns();
    let row_of = |label: &str| u_cols.iter().position(|c| c.to_string() == label).unwrap();
    let v = v2.v.row_masks();
    let order = ["110000", "100010", "100001", "010100", "011000"].map(row_of);
    let sum = |idx: &[usize]| -> Vec<u32> {
        (0..5).map(|c| idx.iter().map(|&i| (v[order[i]] >> c & 1) as u32).sum()).collect()
    };
    assert_eq!(sum(&[1, 2]), sum(&[3, 4]));

    let verdict = has_unique_base_rows_sums(&a).unwrap();
    assert!(!verdict.holds);
    let cx = verdict.counterexample.unwrap();
    let rows = cx.decomposition.v.row_masks();
    let total =
        |idx: &[usize]| -> Vec<u32> { (0..5).map(|c| idx.iter().map(|&i| (rows[i] >> c & 1) as u32).sum()).collect() };
    assert_eq!(total(&cx.plus_rows), total(&cx.minus_rows));
    assert!(ranks::real_rank(&a) < 5);
}

#[test]
fn boolean_non_transfer_regression() {
    let a = fixture("boolean_example").unwrap().matrix;
    let d = rows_of_a_decomposition_in(&a, Semiring::Boolean).unwrap().unwrap();
    assert_eq!(d.u, m("100\n100\n010\n001"));
    assert_eq!(d.v, m("111\n011\n001"));
    assert!(Base::from_columns_of(&d.u, Semiring::Boolean).unwrap().is_disjoint_in_rows());
    let sums = has_unique_base_rows_sums_in(&a, Semiring::Boolean).unwrap();
    assert!(sums.holds);
    for sol in ranks::cover_solutions(&a, 3).unwrap() {
        let (_, v) = sol.factors().unwrap();
        assert_eq!(v.col_mask(0).count_ones(), 1);
    }
    assert!(!has_augmentation_property(&a, Semiring::Boolean).unwrap().holds);
}

#[test]
fn rows_of_a_pipeline() {
    let v = rows_of_a_verdict(&fixture("single_source").unwrap().matrix).unwrap();
    assert!(v.applies && v.confirmed == Some(true));
    let v = rows_of_a_verdict(&fixture("identical_rows").unwrap().matrix).unwrap();
    assert!(!v.applies && v.confirmed.is_none());
    let v = rows_of_a_verdict(&fixture("sums_inline").unwrap().matrix).unwrap();
    assert!(v.applies && v.confirmed == Some(true));
}

#[test]
fn dependency_transfer_on_ak() {
    let a = build_ak(3).unwrap().matrix;
    let unique = has_unique_base_rows_sums(&a).unwrap().holds;
    for sol in partition_solutions(&a, 4).unwrap() {
        let d = Decomposition::from_solution(&sol).unwrap();
        match verify_dependency_transfer(&a, &d) {
            Ok(ok) => {
                assert!(unique);
                assert!(ok);
            }
            Err(e) => {
                assert!(!unique);
                assert!(matches!(e, Error::InvalidArgument(_)));
            }
        }
    }
}

#[test]
fn source_augmentation_examples() {
    let sec2 = fixture("sec2_example").unwrap().matrix;
    let fx = augment_with_source_bases(&sec2, Semiring::Binary).unwrap();
    let full = fx.fully_augmented().unwrap();
    assert!(ranks::binary_rank(&full).unwrap().rank >= 4);
    assert_eq!(ranks::real_rank(&full), 3);
    let boolean = fixture("boolean_example").unwrap().matrix;
    let fx = augment_with_source_bases(&boolean, Semiring::Boolean).unwrap();
    assert!(ranks::boolean_rank(&fx.fully_augmented().unwrap()).unwrap().rank >= 4);
}

#[test]
fn gap_family_values() {
    let b1 = build_gap_binary(1).unwrap().fully_augmented().unwrap();
    assert_eq!(b1.shape(), (4, 9));
    assert_eq!(ranks::binary_rank(&b1).unwrap().rank, 4);
    assert_eq!(ranks::real_rank(&b1), 3);
    let g1 = build_gap_boolean(1).unwrap().fully_augmented().unwrap();
    assert_eq!(ranks::boolean_rank(&g1).unwrap().rank, 4);
    assert_eq!(ranks::binary_rank(&g1).unwrap().rank, 4);
    assert_eq!(ranks::real_rank(&g1), 3);
    let g2 = build_gap_boolean(2).unwrap().fully_augmented().unwrap();
    assert_eq!(g2.shape(), (8, 10));
    assert_eq!(ranks::boolean_rank(&g2).unwrap().rank, 8);
    assert_eq!(ranks::real_rank(&g2), 6);
}

#[test]
fn gap_binary_matches_column_permuted_block_form() {
    for d in 1..=2 {
        let fx = build_gap_binary(d).unwrap();
        let layout = fx.fully_augmented().unwrap();
        let block = build_gap_binary(1).unwrap().fully_augmented().unwrap();
        let permuted = rankforge::tensor_identity(&block, d).unwrap();
        let mut a_cols: Vec<ColumnVector> = layout.columns();
        let mut b_cols: Vec<ColumnVector> = permuted.columns();
        a_cols.sort();
        b_cols.sort();
        assert_eq!(a_cols, b_cols);
        assert_eq!(ranks::binary_rank(&layout).unwrap().rank, ranks::binary_rank(&permuted).unwrap().rank);
        assert_eq!(ranks::boolean_rank(&layout).unwrap().rank, ranks::boolean_rank(&permuted).unwrap().rank);
        assert_eq!(ranks::real_rank(&layout), ranks::real_rank(&permuted));
    }
}

#[test]
fn ak_claims() {
    for k in 1..=4 {
        for check in build_ak(k).unwrap().check_claims().unwrap() {
            assert!(check.passed, "k={k}: {} observed {}", check.claim.describe(), check.observed);
        }
    }
}

#[test]
fn all_fixture_claims() {
    for name in rankforge::constructions::FIXTURE_NAMES {
        for check in fixture(name).unwrap().check_claims().unwrap() {
            assert!(check.passed, "{name}: {} observed {}", check.claim.describe(), check.observed);
        }
    }
}
