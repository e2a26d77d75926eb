use super::*;

fn f2() -> PrimeField {
    PrimeField::binary()
}

fn span_dim(a: &StructAlgebra, vs: &[Vec<u32>]) -> usize {
    Subspace::spanned_by(a.field(), a.dim(), vs).dim()
}

#[test]
fn truncated_polynomial_is_three_dimensional() {
    let a = truncated_polynomial(f2(), 3).unwrap();
    assert_eq!(a.dim(), 3);
    assert_eq!(a.num_vertices(), 1);
    assert_eq!(a.loewy_length(), 3);
}

#[test]
fn linear_a2_has_three_paths() {
    let a = linear_path_algebra(f2(), 2).unwrap();
    assert_eq!(a.dim(), 3);
    assert_eq!(a.block(0, 1).len(), 1);
    assert!(a.block(1, 0).is_empty());
}

#[test]
fn cyclic_nakayama_a22_is_four_dimensional() {
    let a = selfinjective_nakayama(f2(), 2, 2).unwrap();
    assert_eq!(a.dim(), 4);
}

#[test]
fn loop_without_relations_is_infinite() {
    let q = Quiver::from_names(&["1"], &[("x", "1", "1")]).unwrap();
    let err = bound_quiver_algebra("k[x]", &q, &RelationSet::default(), f2(), 8).unwrap_err();
    assert!(matches!(err, Error::InfiniteDimensional { cutoff: 8 }));
}

#[test]
fn short_relation_is_inadmissible() {
    let q = Quiver::from_names(&["1"], &[("x", "1", "1")]).unwrap();
    let rel = RelationSet::new(vec![Relation::monomial(vec![0])]);
    let err = bound_quiver_algebra("bad", &q, &rel, f2(), 8).unwrap_err();
    assert!(matches!(err, Error::InadmissibleRelation(_)));
}

#[test]
fn commutativity_relation_is_supported() {
    // square 1 -> 2 -> 4, 1 -> 3 -> 4 with ab = cd
    let q = Quiver::from_names(
        &["1", "2", "3", "4"],
        &[
            ("a", "1", "2"),
            ("b", "2", "4"),
            ("c", "1", "3"),
            ("d", "3", "4"),
        ],
    )
    .unwrap();
    let ab = q.parse_path("ab").unwrap();
    let cd = q.parse_path("cd").unwrap();
    let p = PrimeField::new(3).unwrap();
    let rel = RelationSet::new(vec![Relation {
        terms: vec![(1, ab), (2, cd)],
    }]);
    let a = bound_quiver_algebra("square", &q, &rel, p, 30).unwrap();
    assert_eq!(a.dim(), 4 + 4 + 1);
}

#[test]
fn opposite_of_commutative_algebra_has_equal_constants() {
    let a = truncated_polynomial(f2(), 3).unwrap();
    let op = a.opposite();
    assert!(a.same_as(&op));
}

#[test]
fn opposite_is_an_involution() {
    let a = linear_path_algebra(f2(), 3).unwrap();
    let op = a.opposite();
    let back = op.opposite();
    assert!(Arc::ptr_eq(&a, &back));
    // a freshly built double opposite is identical as data
    let fresh = op.build_opposite();
    assert!(fresh.identical(&a));
}

#[test]
fn opposite_of_a2_is_reversed_a2() {
    let a = linear_path_algebra(f2(), 2).unwrap();
    let q = Quiver::from_names(&["1", "2"], &[("b", "2", "1")]).unwrap();
    let reversed = bound_quiver_algebra("rev", &q, &RelationSet::default(), f2(), 30).unwrap();
    let iso = find_relabeling(&a.opposite(), &reversed).expect("relabeling exists");
    assert!(iso.is_isomorphism());
}

#[test]
fn triangular_dimensions() {
    let base = truncated_polynomial(f2(), 3).unwrap();
    for n in 1..=4 {
        let t = triangular_matrix_algebra(&base, n).unwrap();
        assert_eq!(t.dim(), 3 * n * (n + 1) / 2);
    }
    let t1 = triangular_matrix_algebra(&base, 1).unwrap();
    assert!(find_relabeling(&t1, &base).is_some());
}

#[test]
fn t3_of_field_is_linear_a3() {
    let k = semisimple_algebra(f2(), 1).unwrap();
    let t3 = triangular_matrix_algebra(&k, 3).unwrap();
    assert_eq!(t3.dim(), 6);
    let a3 = linear_path_algebra(f2(), 3).unwrap();
    let iso = find_relabeling(&t3, &a3).expect("T_3(k) is the path algebra of A_3");
    assert!(iso.is_isomorphism());
}

#[test]
fn a3_relation_algebra_shape() {
    let k = semisimple_algebra(f2(), 1).unwrap();
    let a = a3_relation_algebra(&k).unwrap();
    assert_eq!(a.dim(), 5);
    let q = Quiver::from_names(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
    let rel = RelationSet::monomial_words(&q, &["ab"]).unwrap();
    let bound = bound_quiver_algebra("A3/ab", &q, &rel, f2(), 30).unwrap();
    assert!(find_relabeling(&a, &bound).is_some());

    let dual = truncated_polynomial(f2(), 2).unwrap();
    let b = a3_relation_algebra(&dual).unwrap();
    assert_eq!(b.dim(), 10);
    // the (3,1) entry vanishes: nothing from matrix index 3 to matrix index 1
    assert!(b.block(2, 0).is_empty());
    assert!(!b.block(2, 1).is_empty());
}

#[test]
fn s3_is_path_algebra_of_two_arrows_into_a_sink() {
    let k = semisimple_algebra(f2(), 1).unwrap();
    let s = s3_algebra(&k).unwrap();
    assert_eq!(s.dim(), 5);
    assert_eq!(s.num_vertices(), 3);
    let q =
        Quiver::from_names(&["w1", "w2", "w3"], &[("a", "w1", "w2"), ("b", "w3", "w2")]).unwrap();
    let bound = bound_quiver_algebra("S3", &q, &RelationSet::default(), f2(), 30).unwrap();
    assert!(find_relabeling(&s, &bound).is_some());
    let base = truncated_polynomial(f2(), 3).unwrap();
    assert_eq!(s3_algebra(&base).unwrap().dim(), 15);
}

#[test]
fn radical_examples() {
    let a = truncated_polynomial(f2(), 3).unwrap();
    assert_eq!(a.radical().len(), 2);
    let generic = a.generic_radical().unwrap();
    assert_eq!(span_dim(&a, &generic), 2);
    let ss = semisimple_algebra(f2(), 2).unwrap();
    assert!(ss.radical().is_empty());
    assert!(ss.generic_radical().unwrap().is_empty());
}

fn radicals_agree(a: &Arc<StructAlgebra>) {
    let given = a.radical().to_vec();
    let generic = a.generic_radical().unwrap();
    let d = span_dim(a, &given);
    assert_eq!(d, span_dim(a, &generic));
    let mut both = given.clone();
    both.extend(generic);
    assert_eq!(span_dim(a, &both), d);
}

#[test]
fn radical_backends_agree() {
    for p in [2, 3, 5] {
        let f = PrimeField::new(p).unwrap();
        let k3 = truncated_polynomial(f, 3).unwrap();
        radicals_agree(&k3);
        radicals_agree(&selfinjective_nakayama(f, 2, 2).unwrap());
        radicals_agree(&linear_path_algebra(f, 3).unwrap());
        radicals_agree(&triangular_matrix_algebra(&k3, 2).unwrap());
        radicals_agree(&a3_relation_algebra(&truncated_polynomial(f, 2).unwrap()).unwrap());
    }
}

#[test]
fn radical_is_nilpotent_and_quotient_is_semisimple() {
    let base = truncated_polynomial(f2(), 2).unwrap();
    for a in [
        triangular_matrix_algebra(&base, 3).unwrap(),
        selfinjective_nakayama(f2(), 3, 2).unwrap(),
    ] {
        let mut power = a.radical().to_vec();
        for _ in 0..=a.dim() {
            power = a.product_space(&power, a.radical());
        }
        assert!(power.is_empty());
        let top = a.quotient(a.radical(), "top").unwrap();
        assert_eq!(top.algebra.dim(), a.num_vertices());
        assert!(top.algebra.generic_radical().unwrap().is_empty());
    }
}

#[test]
fn nonlocal_corner_is_rejected() {
    // k x k presented with a single idempotent
    let f = f2();
    let data = AlgebraData {
        name: "kxk".into(),
        field: f,
        basis_labels: vec!["1".into(), "e".into()],
        vertex_labels: vec!["v".into()],
        idempotents: vec![0],
        table: vec![vec![(0, 1)], vec![(1, 1)], vec![(1, 1)], vec![(1, 1)]],
    };
    assert!(StructAlgebra::from_data(data).is_err());
}

#[test]
fn residue_field_extension_is_local() {
    // F_4 = F_2[t]/(t^2 + t + 1) as a one-vertex algebra
    let f = f2();
    let data = AlgebraData {
        name: "F4".into(),
        field: f,
        basis_labels: vec!["1".into(), "t".into()],
        vertex_labels: vec!["v".into()],
        idempotents: vec![0],
        // t * t = t + 1
        table: vec![
            vec![(0, 1)],
            vec![(1, 1)],
            vec![(1, 1)],
            vec![(0, 1), (1, 1)],
        ],
    };
    let a = StructAlgebra::from_data(data).unwrap();
    assert!(a.radical().is_empty());
    assert_eq!(a.generators().len(), 1);
}

#[test]
fn non_associative_table_is_rejected() {
    let f = f2();
    // x x = y and x y = y, so (x x) x = 0 but x (x x) = y
    let data = AlgebraData {
        name: "bad".into(),
        field: f,
        basis_labels: vec!["1".into(), "x".into(), "y".into()],
        vertex_labels: vec!["v".into()],
        idempotents: vec![0],
        table: vec![
            vec![(0, 1)],
            vec![(1, 1)],
            vec![(2, 1)],
            vec![(1, 1)],
            vec![(2, 1)],
            vec![(2, 1)],
            vec![(2, 1)],
            vec![],
            vec![],
        ],
    };
    assert!(matches!(
        StructAlgebra::from_data(data),
        Err(Error::InvalidAlgebra(_))
    ));
}

#[test]
fn words_span_the_algebra() {
    let base = truncated_polynomial(f2(), 3).unwrap();
    let t = triangular_matrix_algebra(&base, 3).unwrap();
    assert_eq!(t.words().len(), t.dim());
    // every basis element is recovered from its word expansion
    for b in 0..t.dim() {
        let mut acc = vec![0u32; t.dim()];
        for &(w, c) in &t.presentation().basis_in_words[b] {
            for (x, &y) in acc.iter_mut().zip(&t.words()[w].element) {
                *x = t.field().add(*x, t.field().mul(c, y));
            }
        }
        assert_eq!(acc, t.unit_vector(b));
    }
}
