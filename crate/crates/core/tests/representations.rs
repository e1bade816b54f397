use coxcoh::coxeter::CoxeterGraph;
use coxcoh::exactfield::{elim, ExactMatrix, FieldSpec, Rat};
use coxcoh::representations::symmetric::{hook_length_dim, partitions};
use coxcoh::representations::{
    external_tensor, invariants, reflection, regular, restrict, sign, sign_twist, specht, tensor_power, trivial,
};

#[test]
fn reflection_of_a1_is_minus_one() {
    let r = reflection(&CoxeterGraph::type_a(1)).unwrap();
    assert_eq!(r.dim(), 1);
    assert_eq!(r.generator(0).get_rat(0, 0), Some(Rat::int(-1)));
}

#[test]
fn reflection_relations_hold_exactly() {
    let a2 = reflection(&CoxeterGraph::type_a(2)).unwrap();
    let (m1, m2) = (a2.generator(0), a2.generator(1));
    let q = FieldSpec::rationals();
    assert_eq!(m1.mul(m1).unwrap(), ExactMatrix::identity(&q, 2));
    assert_eq!(m1.mul(m2).unwrap().pow(3).unwrap(), ExactMatrix::identity(&q, 2));
    // s1 fixes α2 + α1 in the α basis: column 1 is (1, 1).
    assert_eq!(m1.get_rat(0, 1), Some(Rat::int(1)));
    assert_eq!(m1.get_rat(1, 1), Some(Rat::int(1)));

    let i5 = reflection(&CoxeterGraph::type_i2(5)).unwrap();
    assert_eq!(i5.field().m(), 5);
    let p = i5.generator(0).mul(i5.generator(1)).unwrap();
    assert_eq!(p.pow(5).unwrap(), ExactMatrix::identity(i5.field(), 2));
    assert_ne!(p.pow(1).unwrap(), ExactMatrix::identity(i5.field(), 2));
}

#[test]
fn dimensions_of_standard_modules() {
    let a2 = CoxeterGraph::type_a(2);
    assert_eq!(regular(&a2).unwrap().dim(), 6);
    let t = tensor_power(&a2, 2).unwrap();
    assert_eq!(t.dim(), 8);
    // s_1 swaps the first two factors: e_0⊗e_1⊗e_0 (index 2) ↔ e_1⊗e_0⊗e_0 (index 4).
    assert_eq!(t.generator(0).get_rat(4, 2), Some(Rat::int(1)));
    assert_eq!(specht(&a2, &[2, 1]).unwrap().dim(), 2);
    for n in 2..=5 {
        let g = CoxeterGraph::type_a(n - 1);
        for lambda in partitions(n) {
            assert_eq!(specht(&g, &lambda).unwrap().dim(), hook_length_dim(&lambda), "{lambda:?}");
        }
    }
}

#[test]
fn invariant_subspaces() {
    let a2 = CoxeterGraph::type_a(2);
    let reg = regular(&a2).unwrap();
    assert_eq!(invariants(&reg, &[0]).unwrap().dim(), 3);
    let a3 = CoxeterGraph::type_a(3);
    let reg4 = regular(&a3).unwrap();
    assert_eq!(invariants(&reg4, &[0, 2]).unwrap().dim(), 24 / 4);

    let v2 = reflection(&a2).unwrap();
    assert_eq!(invariants(&v2, &[0]).unwrap().dim(), 1);
    let full = invariants(&v2, &[]).unwrap();
    assert_eq!(full.columns, ExactMatrix::identity(v2.field(), 2));
}

#[test]
fn functors() {
    let a1 = CoxeterGraph::type_a(1);
    let prod = external_tensor(&reflection(&a1).unwrap(), &trivial(&a1, 1)).unwrap();
    assert_eq!(prod.dim(), 1);
    assert_eq!(prod.generator(0).get_rat(0, 0), Some(Rat::int(-1)));
    assert_eq!(prod.generator(1).get_rat(0, 0), Some(Rat::int(1)));

    let a4 = CoxeterGraph::type_a(4);
    assert_eq!(sign_twist(&trivial(&a4, 1)).generators(), sign(&a4).generators());

    let r1 = reflection(&CoxeterGraph::type_a(2)).unwrap();
    let r2 = reflection(&CoxeterGraph::type_b(2)).unwrap();
    let t = external_tensor(&r1, &r2).unwrap();
    let back = restrict(&t, &[0, 1]).unwrap();
    for s in 0..2 {
        let lifted = r1.generator(s).lift(back.field()).unwrap();
        let expected = lifted.kron(&ExactMatrix::identity(back.field(), 2)).unwrap();
        assert_eq!(back.generator(s), &expected);
    }
}

#[test]
fn restricted_d4_reflection_splits() {
    let v4 = reflection(&CoxeterGraph::type_d(4)).unwrap();
    let r = restrict(&v4, &[0, 2, 3]).unwrap();
    let q = FieldSpec::rationals();
    // Each generator is a reflection: its -1 eigenspace is a line.
    let mut lines = Vec::new();
    for s in 0..3 {
        let m = r.generator(s).add(&ExactMatrix::identity(&q, 4)).unwrap();
        let k = elim::kernel(&m);
        assert_eq!(k.cols(), 1);
        lines.push(k);
    }
    // The three lines are independent and each is fixed by the other generators.
    let stacked = ExactMatrix::hstack(&[&lines[0], &lines[1], &lines[2]]).unwrap();
    assert_eq!(elim::rank(&stacked), 3);
    for (a, line) in lines.iter().enumerate() {
        for b in (0..3).filter(|&b| b != a) {
            assert_eq!(&r.generator(b).mul(line).unwrap(), line);
        }
    }
    // The common fixed space completes the decomposition.
    assert_eq!(invariants(&r, &[0, 1, 2]).unwrap().dim(), 1);
}
