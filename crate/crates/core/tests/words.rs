use proptest::prelude::*;

use grouptk::word::{commutator, conjugate, indexed_alphabet, left_normed, Word};
use grouptk::{hopf_element, parse_presentation, parse_word, reduce, Presentation};

fn word_strategy(gens: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..gens, -3i64..=3), 0..12).prop_map(reduce)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, rng_algorithm: prop::test_runner::RngAlgorithm::ChaCha, ..ProptestConfig::default() })]

    #[test]
    fn render_parse_round_trip(w in word_strategy(4)) {
        let alphabet = indexed_alphabet("g", 4);
        let text = w.render(&alphabet);
        prop_assert_eq!(parse_word(&text, &alphabet).unwrap(), w);
    }

    #[test]
    fn presentation_round_trip(rels in prop::collection::vec(word_strategy(3), 0..5)) {
        let rels: Vec<Word> = rels.into_iter().filter(|r| !r.is_identity()).collect();
        let p = Presentation::new(indexed_alphabet("x", 3), rels).unwrap();
        let q = parse_presentation(&p.render()).unwrap();
        prop_assert_eq!(q.relators(), p.relators());
        prop_assert_eq!(q.generators(), p.generators());
    }

    #[test]
    fn inverse_cancels(w in word_strategy(3)) {
        prop_assert!(w.mul(&w.inverse()).is_identity());
    }

    #[test]
    fn commutator_of_conjugates(a in word_strategy(3), b in word_strategy(3), g in word_strategy(3)) {
        let lhs = conjugate(&commutator(&a, &b), &g);
        let rhs = commutator(&conjugate(&a, &g), &conjugate(&b, &g));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn commutator_convention() {
    let (x, y) = (Word::letter(0), Word::letter(1));
    let alphabet = indexed_alphabet("y", 2);
    assert_eq!(commutator(&x, &y).render(&alphabet), "y0*y1*y0^-1*y1^-1");
    assert_eq!(conjugate(&y, &x).render(&alphabet), "y0*y1*y0^-1");
}

#[test]
fn left_normed_nests_to_the_left() {
    let (a, b, c) = (Word::letter(0), Word::letter(1), Word::letter(2));
    let expected = commutator(&commutator(&a, &b), &c);
    assert_eq!(left_normed(&[a, b, c]).unwrap(), expected);
}

#[test]
fn first_hopf_elements() {
    let alphabet = indexed_alphabet("y", 3);
    assert_eq!(hopf_element(1).unwrap().render(&alphabet), "y0*y1*y0^-1*y1^-1");
    let (y0, y1, y2) = (Word::letter(0), Word::letter(1), Word::letter(2));
    let e11 = commutator(&y0, &y1);
    let e12 = commutator(&y0, &y1.mul(&y2));
    assert_eq!(hopf_element(2).unwrap(), commutator(&e11, &e12));
}

#[test]
fn syntax_errors_carry_positions() {
    let err = parse_presentation("gens: a, b | rels: a^2, b*").unwrap_err();
    assert!(matches!(err, grouptk::Error::Syntax { .. }), "{err:?}");
    let err = parse_presentation("gens: a | rels: c").unwrap_err();
    assert!(matches!(err, grouptk::Error::UnknownGenerator { .. }), "{err:?}");
}

#[test]
fn deeper_hopf_brackets_match_printed_forms() {
    use grouptk::word::hopf_expression;
    let y = indexed_alphabet("y", 6);
    let four = "[[[[y0,y1],[y0,y1y2]],[[y0,y1],[y0,y1y2y3]]],[[[y0,y1],[y0,y1y2]],[[y0,y1],[y0,y1y2y3y4]]]]";
    let five = "[[[[[y0,y1],[y0,y1y2]],[[y0,y1],[y0,y1y2y3]]],[[[y0,y1],[y0,y1y2]],[[y0,y1],[y0,y1y2y3y4]]]],\
[[[[y0,y1],[y0,y1y2]],[[y0,y1],[y0,y1y2y3]]],[[[y0,y1],[y0,y1y2]],[[y0,y1],[y0,y1y2y3y4y5]]]]]";
    assert_eq!(hopf_expression(4).unwrap().render_compact(&y), four);
    assert_eq!(hopf_expression(5).unwrap().render_compact(&y), five);
}
