mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankforge::bases::enumerate_bases;
use rankforge::ranks::{self, binary_rank_direct, boolean_rank_direct};
use rankforge::{BinaryMatrix, Semiring};

fn all_3x3() -> impl Iterator<Item = BinaryMatrix> {
    (0u64..512).map(|bits| {
        let rows = (0..3).map(|r| bits >> (3 * r) & 0b111).collect();
        BinaryMatrix::from_row_masks(3, rows).unwrap()
    })
}

fn random_4x4(count: usize, seed: u64) -> Vec<BinaryMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| common::random_matrix(&mut rng, 4, 4, 0.5)).collect()
}

fn check_ranks(a: &BinaryMatrix) {
    for s in Semiring::ALL {
        let expected = common::rank(a, s);
        let got = ranks::rank(a, s).unwrap();
        assert_eq!(got.rank, expected, "{s} rank of\n{a}");
        got.witness.unwrap().validate(a).unwrap();
    }
    assert_eq!(binary_rank_direct(a).unwrap().rank, common::rank(a, Semiring::Binary));
    assert_eq!(boolean_rank_direct(a).unwrap().rank, common::rank(a, Semiring::Boolean));
    assert_eq!(ranks::real_rank(a), common::real_rank(a), "real rank of\n{a}");
}

fn check_bases(a: &BinaryMatrix) {
    for s in Semiring::ALL {
        let (_, expected) = common::rank_and_bases(a, s);
        let got: Vec<Vec<String>> = enumerate_bases(a, s).unwrap().iter().map(|b| b.labels()).collect();
        assert_eq!(got, expected, "{s} bases of\n{a}");
    }
}

#[test]
fn ranks_match_on_every_3x3() {
    all_3x3().for_each(|a| check_ranks(&a));
}

#[test]
fn ranks_match_on_random_4x4() {
    random_4x4(100, 11).iter().for_each(check_ranks);
}

#[test]
fn bases_match_on_every_3x3() {
    all_3x3().for_each(|a| check_bases(&a));
}

#[test]
fn bases_match_on_random_4x4() {
    random_4x4(40, 12).iter().for_each(check_bases);
}

#[test]
fn rectangular_shapes() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for (n, m) in [(2, 5), (5, 2), (3, 5), (5, 3), (4, 5)] {
        for _ in 0..10 {
            check_ranks(&common::random_matrix(&mut rng, n, m, 0.55));
        }
    }
}
