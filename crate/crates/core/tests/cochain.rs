use coxcoh::cochain::{
    build_coxeter_complex, cohomology, coxeter_cohomology_dims, reorder_sign, reordering_isomorphism,
    simplicial_reduced_complex,
};
use coxcoh::coxeter::{independent_sets, CoxeterGraph};
use coxcoh::exactfield::{elim, RankMode};
use coxcoh::representations::{reflection, trivial, zero};

#[test]
fn space_dimensions() {
    let a2 = build_coxeter_complex(&reflection(&CoxeterGraph::type_a(2)).unwrap()).unwrap();
    assert_eq!(a2.complex.dims, [2, 2]);
    assert_eq!(elim::rank(&a2.complex.diffs[0]), 2);
    let a3 = build_coxeter_complex(&reflection(&CoxeterGraph::type_a(3)).unwrap()).unwrap();
    assert_eq!(a3.complex.dims, [3, 6, 1]);
}

#[test]
fn trivial_coefficients_count_independent_sets() {
    for g in [CoxeterGraph::type_a(5), CoxeterGraph::type_d(5), CoxeterGraph::type_e(6)] {
        let c = build_coxeter_complex(&trivial(&g, 2)).unwrap();
        for (k, &d) in c.complex.dims.iter().enumerate() {
            assert_eq!(d, 2 * independent_sets(&g, k).len(), "{} k={k}", g.name());
        }
    }
}

#[test]
fn small_cohomology() {
    assert_eq!(coxeter_cohomology_dims(&trivial(&CoxeterGraph::type_a(2), 1)).unwrap(), [0, 1]);
    assert_eq!(coxeter_cohomology_dims(&reflection(&CoxeterGraph::type_a(3)).unwrap()).unwrap(), [0, 2, 0]);
    let d4 = build_coxeter_complex(&reflection(&CoxeterGraph::type_d(4)).unwrap()).unwrap();
    let h = cohomology(&d4, RankMode::Exact, 0).unwrap();
    assert_eq!(h.space_dims, [4, 12, 6, 1]);
    assert_eq!(h.dims.iter().sum::<usize>(), 3);
    assert_eq!(h.dims.iter().filter(|&&d| d > 0).count(), 1);
    assert_eq!(h.euler, -3);
    assert!(coxeter_cohomology_dims(&zero(&CoxeterGraph::type_b(3))).unwrap().iter().all(|&d| d == 0));
}

#[test]
fn modular_and_exact_cohomology_agree() {
    let c = build_coxeter_complex(&trivial(&CoxeterGraph::type_a(7), 1)).unwrap();
    let e = cohomology(&c, RankMode::Exact, 0).unwrap();
    let m = cohomology(&c, RankMode::Modular, 11).unwrap();
    assert_eq!(e.dims, m.dims);
    assert!(m.probabilistic && m.agreed);
}

#[test]
fn reordering() {
    assert_eq!(reorder_sign(&[0, 2], &[0, 1, 2]), 1);
    assert_eq!(reorder_sign(&[0, 2], &[2, 1, 0]), -1);
    let rep = reflection(&CoxeterGraph::type_a(3)).unwrap();
    let same = reordering_isomorphism(&rep, &[0, 1, 2]).unwrap();
    assert!(same.is_chain_isomorphism);
    assert!(same.epsilon.iter().flatten().all(|&e| e == 1));
    let rev = reordering_isomorphism(&rep, &[2, 1, 0]).unwrap();
    assert!(rev.is_chain_isomorphism);
    assert_eq!(rev.epsilon[2], [-1]);
    assert_eq!(cohomology(&rev.reordered, RankMode::Exact, 0).unwrap().dims, [0, 2, 0]);
    let e6 = reflection(&CoxeterGraph::type_e(6)).unwrap();
    assert!(reordering_isomorphism(&e6, &[5, 0, 3, 1, 4, 2]).unwrap().is_chain_isomorphism);
}

#[test]
fn independence_complex_cohomology() {
    let h = |g: CoxeterGraph| simplicial_reduced_complex(&g, 1).unwrap().homology(RankMode::Exact, 0).unwrap().dims;
    // Two points: reduced H^0 = Q, sitting in degree 1 of the shifted complex.
    assert_eq!(h(CoxeterGraph::type_a(2)), [0, 1]);
    assert!(h(CoxeterGraph::type_a(1)).iter().all(|&d| d == 0));
    let a5 = h(CoxeterGraph::type_a(5));
    assert_eq!(a5.iter().sum::<usize>(), 1);
    assert_eq!(a5[2], 1);
}
