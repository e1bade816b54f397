use coxcoh::coxeter::{classify, independent_sets, parabolic_deletions, parse_graph, CoxeterGraph, Label};

#[test]
fn parse_named_graphs() {
    let a3 = parse_graph("A3").unwrap();
    assert_eq!(a3.n(), 3);
    assert_eq!(a3.label(0, 1), Label::Finite(3));
    assert_eq!(a3.label(1, 2), Label::Finite(3));
    assert!(a3.commute(0, 2));

    let i7 = parse_graph("I2(7)").unwrap();
    assert_eq!(i7.n(), 2);
    assert_eq!(i7.label(0, 1), Label::Finite(7));

    let p = parse_graph("A2xA1").unwrap();
    assert_eq!(p.n(), 3);
    assert_eq!(p.label(0, 1), Label::Finite(3));
    assert!(p.commute(0, 2) && p.commute(1, 2));

    assert_eq!(parse_graph("C3").unwrap(), parse_graph("B3").unwrap());
}

#[test]
fn parse_custom_graph() {
    let g = parse_graph("custom;n=3;edges=1-2:5,2-3:inf").unwrap();
    assert_eq!(g.label(0, 1), Label::Finite(5));
    assert_eq!(g.label(1, 2), Label::Infinite);
    assert!(g.has_infinite_label());
    assert_eq!(g.field_modulus(), 5);
}

#[test]
fn parse_rejects_bad_specs() {
    for bad in ["", "A0", "E9", "F3", "H5", "D3", "Z2", "A 3", "I2(1)", "I2(5", "custom;n=2;edges=1-3:3", "custom;n=2;edges=1-2:1"] {
        assert!(parse_graph(bad).is_err(), "{bad:?}");
    }
}

fn brute_force(g: &CoxeterGraph, k: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut out: Vec<Vec<usize>> = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect::<Vec<_>>())
        .filter(|s| s.iter().all(|&a| s.iter().all(|&b| a == b || g.commute(a, b))))
        .collect();
    out.sort();
    out
}

#[test]
fn independent_sets_match_brute_force() {
    assert_eq!(independent_sets(&CoxeterGraph::type_a(3), 2), vec![vec![0, 2]]);
    let d4 = CoxeterGraph::type_d(4);
    assert_eq!(independent_sets(&d4, 3), vec![vec![0, 2, 3]]);
    for g in [CoxeterGraph::type_a(6), CoxeterGraph::type_d(6), CoxeterGraph::type_e(7), CoxeterGraph::type_f4()] {
        assert_eq!(independent_sets(&g, 0), vec![Vec::<usize>::new()]);
        for k in 0..=g.n() {
            assert_eq!(independent_sets(&g, k), brute_force(&g, k), "{} k={k}", g.name());
        }
    }
}

#[test]
fn parabolic_deletions_of_the_families() {
    for n in 4..=8 {
        let d = parabolic_deletions(&CoxeterGraph::type_a(n), n - 3).unwrap();
        let expected_far = if n == 4 { "A1".to_string() } else { format!("A{}xA1", n - 4) };
        assert_eq!(d.minus_s.name(), format!("A{}xA2", n - 3));
        assert_eq!(d.far.name(), expected_far);
    }
    for n in 4..=7 {
        let d = parabolic_deletions(&CoxeterGraph::type_d(n), n - 3).unwrap();
        assert_eq!(d.minus_s.name(), format!("A{}xA1xA1", n - 3));
        let far = if n == 4 { "trivial".to_string() } else { format!("A{}", n - 4) };
        assert_eq!(d.far.name(), far);
    }
    for n in 6..=8 {
        let d = parabolic_deletions(&CoxeterGraph::type_e(n), 3).unwrap();
        let mut parts: Vec<String> = d.minus_s.name().split('x').map(String::from).collect();
        parts.sort();
        let mut expected = vec!["A2".to_string(), "A1".to_string(), format!("A{}", n - 4)];
        expected.sort();
        assert_eq!(parts, expected, "E{n}");
        let mut far: Vec<String> = d.far.name().split('x').map(String::from).collect();
        far.sort();
        let mut exp_far = vec!["A1".to_string(), format!("A{}", n - 5)];
        exp_far.sort();
        assert_eq!(far, exp_far, "E{n}");
    }
}

#[test]
fn classification_round_trips() {
    for spec in ["A1", "A7", "B5", "D6", "E6", "E7", "E8", "F4", "H3", "H4", "I2(9)"] {
        assert_eq!(classify(&parse_graph(spec).unwrap()), spec);
    }
}
