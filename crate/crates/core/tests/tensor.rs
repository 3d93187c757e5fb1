use grouptk::colimit::NormalTuple;
use grouptk::finite::{catalog, catalog_names_up_to, realize, Strategy, DEFAULT_COSET_LIMIT};
use grouptk::tensor::{build_e, build_t, kernel_of_boundary, Family, TensorSymbol};

#[test]
fn dsl_uses_stable_symbol_names() {
    let g = catalog("C2").unwrap();
    let t = NormalTuple::new(vec![g.whole(), g.whole()]).unwrap();
    let tp = build_t(&t).unwrap();
    let dsl = tp.to_dsl();
    assert!(dsl.starts_with("gens: t_1_2_0_0, t_1_2_0_1, t_1_2_1_0, t_1_2_1_1, t_2_1_0_0, "), "{dsl}");
    assert!(dsl.contains("rels: t_1_2_0_0*t_2_1_0_0, "), "{dsl}");
    let s = TensorSymbol { a_set: 0b011, b_set: 0b100, a: 3, b: 5 };
    assert_eq!(s.name(), "t_12_3_3_5");
}

#[test]
fn family_counts_for_two_subgroups() {
    let g = catalog("C2").unwrap();
    let t = NormalTuple::new(vec![g.whole(), g.whole()]).unwrap();
    let tp = build_t(&t).unwrap();
    let counts = tp.family_counts();
    let get = |f: Family| counts.iter().find(|(k, _)| *k == f).map_or(0, |(_, c)| *c);
    assert_eq!(tp.symbols().len(), 8);
    assert_eq!(get(Family::ThreeFold), 0);
    assert_eq!(tp.presentation().relators().len(), counts.iter().map(|(_, c)| c).sum::<usize>());
}

#[test]
fn e_adds_diagonal_relators() {
    let g = catalog("S3").unwrap();
    let e = build_e(&g.whole(), &g.whole()).unwrap();
    let counts = e.family_counts();
    let diagonal = counts.iter().find(|(k, _)| *k == Family::Diagonal).map_or(0, |(_, c)| *c);
    // one per nonidentity x and ordered partition of the three indices
    assert_eq!(diagonal, 5 * 6);
}

#[test]
fn one_orientation_preserves_order() {
    for name in catalog_names_up_to(4) {
        let g = catalog(&name).unwrap();
        let t = NormalTuple::new(vec![g.whole(), g.whole()]).unwrap();
        let tp = build_t(&t).unwrap();
        let full = realize(tp.presentation(), DEFAULT_COSET_LIMIT).unwrap().order();
        let reduced = realize(&tp.one_orientation().unwrap(), DEFAULT_COSET_LIMIT).unwrap().order();
        assert_eq!(full, reduced, "{name}");
    }
}

#[test]
fn cyclic_squares_have_cyclic_kernels() {
    // for cyclic G the nonabelian square G⊗G is cyclic of order |G|
    for (name, order) in [("C2", 2), ("C3", 3), ("C4", 4)] {
        let g = catalog(name).unwrap();
        let t = NormalTuple::new(vec![g.whole(), g.whole()]).unwrap();
        let tp = build_t(&t).unwrap();
        let k = kernel_of_boundary(&tp, DEFAULT_COSET_LIMIT, Strategy::Felsch).unwrap();
        assert_eq!(k.t_order, order);
        assert_eq!(k.kernel_order, order);
        assert!(k.is_consistent());
    }
}
