use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use grouptk::nilpotent::{free_nilpotent, witt_number, PcGroup};
use grouptk::word::{commutator, Word};

fn element(g: &PcGroup, w: &[(usize, i64)]) -> grouptk::nilpotent::PcElement {
    g.collect(&grouptk::reduce(w.iter().copied())).unwrap()
}

fn word_strategy(gens: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..gens, -2i64..=2), 0..10)
}

type Mat = [[i64; 3]; 3];

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let mut c = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

/// Image in the integral Heisenberg group, faithful on the free
/// nilpotent group of rank 2 and class 2.
fn heisenberg(w: &Word) -> Mat {
    let gens: [Mat; 2] = [[[1, 1, 0], [0, 1, 0], [0, 0, 1]], [[1, 0, 0], [0, 1, 1], [0, 0, 1]]];
    let invs: [Mat; 2] = [[[1, -1, 0], [0, 1, 0], [0, 0, 1]], [[1, 0, 0], [0, 1, -1], [0, 0, 1]]];
    let mut m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for (g, e) in w.letters() {
        m = mat_mul(&m, if e > 0 { &gens[g] } else { &invs[g] });
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, rng_algorithm: prop::test_runner::RngAlgorithm::ChaCha, ..ProptestConfig::default() })]

    #[test]
    fn class_two_normal_form_matches_unitriangular_oracle(w in word_strategy(2)) {
        let g = free_nilpotent(2, 2).unwrap();
        let word = grouptk::reduce(w.iter().copied());
        let x = g.collect(&word).unwrap();
        let e = x.exponents();
        let (a, b) = (Word::letter(0), Word::letter(1));
        let normal = a.pow(e[0] as i64).mul(&b.pow(e[1] as i64)).mul(&commutator(&a, &b).pow(e[2] as i64));
        prop_assert_eq!(heisenberg(&normal), heisenberg(&word));
        prop_assert_eq!(x.is_identity(), heisenberg(&word) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
    }

    #[test]
    fn multiplication_is_associative(a in word_strategy(3), b in word_strategy(3), c in word_strategy(3)) {
        let g = free_nilpotent(3, 4).unwrap();
        let (x, y, z) = (element(&g, &a), element(&g, &b), element(&g, &c));
        let left = g.mul(&g.mul(&x, &y).unwrap(), &z).unwrap();
        let right = g.mul(&x, &g.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(g.mul(&x, &g.inv(&x).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn collection_is_a_homomorphism(a in word_strategy(2), b in word_strategy(2)) {
        let g = free_nilpotent(2, 5).unwrap();
        let (wa, wb) = (grouptk::reduce(a.iter().copied()), grouptk::reduce(b.iter().copied()));
        let joint = g.collect(&wa.mul(&wb)).unwrap();
        prop_assert_eq!(joint, g.mul(&g.collect(&wa).unwrap(), &g.collect(&wb).unwrap()).unwrap());
    }

    #[test]
    fn projection_to_lower_class_is_a_homomorphism(a in word_strategy(2), b in word_strategy(2)) {
        let g = free_nilpotent(2, 4).unwrap();
        let h = free_nilpotent(2, 3).unwrap();
        let (x, y) = (element(&g, &a), element(&g, &b));
        let lhs = g.project(&g.mul(&x, &y).unwrap(), &h).unwrap();
        let rhs = h.mul(&g.project(&x, &h).unwrap(), &g.project(&y, &h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(g.project(&x, &h).unwrap(), element(&h, &a));
    }
}

#[test]
fn igs_is_canonical_under_shuffled_generators() {
    let g = free_nilpotent(3, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let seeds: Vec<_> = [vec![(0, 2), (1, 1)], vec![(1, 3)], vec![(0, 1), (2, -1), (0, 1)], vec![(2, 4), (1, -2)]]
        .iter()
        .map(|w| element(&g, w))
        .collect();
    let reference = g.subgroup(&seeds).unwrap();
    let normal = g.normal_closure(&seeds).unwrap();
    for _ in 0..20 {
        let mut s = seeds.clone();
        s.shuffle(&mut rng);
        let extra = g.mul(&s[0], &s[1]).unwrap();
        s.push(extra);
        assert_eq!(g.subgroup(&s).unwrap(), reference);
        assert_eq!(g.normal_closure(&s).unwrap(), normal);
    }
}

#[test]
fn witt_numbers_match_necklace_counts() {
    // number of aperiodic binary and ternary necklaces
    assert_eq!((1..=6).map(|w| witt_number(2, w)).collect::<Vec<_>>(), vec![2, 1, 2, 3, 6, 9]);
    assert_eq!((1..=4).map(|w| witt_number(3, w)).collect::<Vec<_>>(), vec![3, 3, 8, 18]);
    assert_eq!(free_nilpotent(4, 5).unwrap().len(), 4 + 6 + 20 + 60 + 204);
}

#[test]
fn lower_central_series_is_graded_by_weight() {
    let g = free_nilpotent(2, 4).unwrap();
    for w in 1..=4 {
        let gamma = g.lower_central(w);
        let expected: usize = (w..=4).map(|k| witt_number(2, k) as usize).sum();
        assert_eq!(gamma.hirsch_length(), expected);
    }
    let whole = g.whole();
    assert_eq!(whole.commutator(&whole).unwrap(), g.lower_central(2));
}
