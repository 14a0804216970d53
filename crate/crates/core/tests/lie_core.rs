use orbitkit::fixtures;
use orbitkit::lie_core::{
    parse_algebra, parse_bracket_table, parse_covector_list, Ambient, Covector, LieAlgebra, LieError, Subspace,
};
use orbitkit::rational::{q, qr, Q};
use proptest::prelude::*;

fn v(xs: &[i64]) -> Vec<Q> {
    xs.iter().map(|&x| q(x)).collect()
}

fn cov(xs: &[i64]) -> Covector {
    Covector::new(v(xs))
}

fn e(alg: &LieAlgebra, label: &str) -> Vec<Q> {
    alg.basis_vector(alg.label_index(label).unwrap())
}

#[test]
fn freefall_bracket_from_file() {
    let (g, _) = fixtures::freefall();
    assert_eq!(g.dim(), 5);
    assert_eq!(g.bracket(&e(&g, "e5"), &e(&g, "e4")).unwrap(), v(&[0, 0, -1, 0, 0]));
    assert_eq!(g.bracket(&e(&g, "e4"), &e(&g, "e5")).unwrap(), v(&[0, 0, 1, 0, 0]));
}

#[test]
fn one_dimensional_abelian_file() {
    let g = parse_algebra("dim 1\n").unwrap();
    assert_eq!(g.dim(), 1);
    assert!(g.structure().is_empty());
    assert_eq!(g.nilpotent_class(), Some(1));
}

#[test]
fn parse_errors_are_reported_with_lines() {
    let err = parse_algebra("dim 5\nbracket e4 e5 -> e3\nbracket e5 e4 -> e3\n").unwrap_err();
    assert!(matches!(err, LieError::InconsistentAntisymmetry { line: 3, .. }));
    // a consistent restatement in the opposite order is accepted
    let ok = parse_algebra("dim 5\nbracket e4 e5 -> e3\nbracket e5 e4 -> -e3\n").unwrap();
    assert_eq!(ok.structure().len(), 1);
    let err = parse_algebra("dim 3\nbracket e1 e2 -> e3\nbracket e1 e2 -> e3\n").unwrap_err();
    assert!(matches!(err, LieError::DuplicateBracket { line: 3, first_line: 2, .. }));
    let err = parse_algebra("dim 3\nbracket e1 e4 -> e3\n").unwrap_err();
    assert!(matches!(err, LieError::UnknownLabel { line: 2, .. }));
    let err = parse_algebra("dim 3\nbracket e1 e2 -> e7\n").unwrap_err();
    assert!(matches!(err, LieError::UnknownLabel { line: 2, .. }));
    let err = parse_algebra("dim 3\n\n# comment\nbracket e1 e2 e3\n").unwrap_err();
    assert!(matches!(err, LieError::Syntax { line: 4, .. }));
    let err = parse_algebra("dim 2\nbracket e1 e2 -> 1/0*e1\n").unwrap_err();
    assert!(matches!(err, LieError::Syntax { line: 2, .. }));
    assert!(parse_algebra("bracket e1 e2 -> e1\n").is_err());
    assert!(parse_algebra(fixtures::FREEFALL.replace("dim 5", "dim x").as_str()).is_err());
}

#[test]
fn heisenberg_bracket_matches_matrix_commutator() {
    let (g, _) = fixtures::heisenberg();
    assert_eq!(g.bracket(&e(&g, "e_b"), &e(&g, "e_c")).unwrap(), e(&g, "e_a"));
    let u = v(&[3, -2, 5]);
    assert_eq!(g.bracket(&u, &u).unwrap(), v(&[0, 0, 0]));
    assert!(matches!(g.bracket(&v(&[1, 0]), &u), Err(LieError::DimensionMismatch { .. })));
}

#[test]
fn structure_reports() {
    let (ff, _) = fixtures::freefall();
    let r = ff.structure_check();
    assert!(r.antisymmetric && r.jacobi);
    assert_eq!(r.nilpotent_class, Some(3));
    let lcs = ff.lower_central_series();
    assert_eq!(lcs[0], ff.span_basis(&[0, 1, 2]));
    assert_eq!(lcs[1], ff.span_basis(&[0, 1]));
    assert_eq!(lcs[2].dim(), 0);

    let (a6, _) = fixtures::alg6();
    assert_eq!(a6.structure_check().nilpotent_class, Some(5));
    let dims: Vec<usize> = a6.lower_central_series().iter().map(Subspace::dim).collect();
    assert_eq!(dims, vec![4, 3, 2, 1, 0]);

    let (heis, _) = fixtures::heisenberg();
    assert_eq!(heis.structure_check().nilpotent_class, Some(2));
}

#[test]
fn jacobi_failure_is_detected() {
    // [e4, e3] = e4 breaks Jacobi on (e5, e4, e3): the cyclic sum is -e3.
    let bad = fixtures::FREEFALL.replace("bracket e4 e3 -> e1", "bracket e4 e3 -> e4");
    let g = parse_bracket_table(&bad).unwrap();
    let r = g.structure_check();
    assert!(!r.jacobi);
    assert_eq!(g.jacobi_violation(), Some((2, 3, 4)));
    assert!(matches!(parse_algebra(&bad), Err(LieError::JacobiViolation { .. })));
    // [e4, e3] = e2 instead still satisfies Jacobi: every double bracket lands on zero.
    let other = fixtures::FREEFALL.replace("bracket e4 e3 -> e1", "bracket e4 e3 -> e2");
    assert!(parse_bracket_table(&other).unwrap().structure_check().jacobi);
}

#[test]
fn non_nilpotent_algebra_has_no_class() {
    let (gal, _) = fixtures::galilei_massive();
    let r = gal.structure_check();
    assert!(r.jacobi);
    assert_eq!(r.nilpotent_class, None);
    let x = Covector::zero(gal.dim());
    assert_eq!(gal.exp_coadjoint(&gal.basis_vector(0), &x), Err(LieError::NotNilpotent));
}

#[test]
fn coadjoint_vector_examples() {
    let (h, x) = fixtures::heisenberg();
    let b = qr(7, 3);
    let z = vec![q(0), b.clone(), q(0)];
    assert_eq!(h.coadjoint_vector(&z, &x).unwrap(), Covector::new(vec![q(0), q(0), b]));
    assert!(h.coadjoint_vector(&e(&h, "e_a"), &x).unwrap().is_zero());

    let (ff, x) = fixtures::freefall();
    assert_eq!(ff.coadjoint_vector(&e(&ff, "e5"), &x).unwrap(), cov(&[0, 0, 1, 0, 0]));
}

#[test]
fn exp_coadjoint_examples() {
    let (ff, _) = fixtures::freefall();
    let c = qr(5, 2);
    let x = Covector::new(vec![q(1), q(1), q(0), q(0), c.clone()]);
    for qv in [q(1), q(-3), qr(1, 2)] {
        let z: Vec<Q> = vec![q(0), q(0), q(0), qv.clone(), q(0)];
        let y = ff.exp_coadjoint(&z, &x).unwrap();
        let expected = vec![q(1), q(1), -qv.clone(), q(0), &qv * &qv / q(2) + &c];
        assert_eq!(y.coords(), expected.as_slice());
    }
    assert_eq!(ff.exp_coadjoint(&v(&[0, 0, 0, 0, 0]), &x).unwrap(), x);

    let (h, x) = fixtures::heisenberg();
    let b = qr(-4, 5);
    let y = h.exp_coadjoint(&[q(0), b.clone(), q(0)], &x).unwrap();
    assert_eq!(y, Covector::new(vec![q(-1), q(0), b]));
}

#[test]
fn perp_at_examples() {
    let (a6, x) = fixtures::alg6();
    let e123 = a6.span_basis(&[0, 1, 2]);
    assert_eq!(a6.perp_at(&e123, &x).unwrap(), a6.span_basis(&[0, 1, 2, 5]));
    // same answer for every c
    let xc = parse_covector_list("1,0,0,0,0,7/3", 6).unwrap();
    assert_eq!(a6.perp_at(&e123, &xc).unwrap(), a6.span_basis(&[0, 1, 2, 5]));

    let zero = Subspace::zero(Ambient::Algebra, 6);
    assert!(a6.perp_at(&zero, &x).unwrap().is_full());

    let (h, x) = fixtures::heisenberg();
    assert_eq!(h.stabilizer(&x).unwrap(), h.span_basis(&[0]));
}

#[test]
fn orth_examples() {
    let (ff, _) = fixtures::freefall();
    let s = ff.span([v(&[1, -1, 0, 0, 0])]);
    let o = ff.orth(&s);
    assert_eq!(o.ambient(), Ambient::Dual);
    assert_eq!(o.dim(), 4);
    assert!(o.contains(&v(&[3, 3, 1, 2, 5])));
    assert!(!o.contains(&v(&[1, 0, 0, 0, 0])));
    assert_eq!(ff.orth(&ff.full()).dim(), 0);
    let c = ff.span_basis(&[0, 1]);
    let oc = ff.orth(&c);
    assert_eq!(oc, Subspace::span(Ambient::Dual, 5, [v(&[0, 0, 1, 0, 0]), v(&[0, 0, 0, 1, 0]), v(&[0, 0, 0, 0, 1])]));
}

#[test]
fn strictly_upper_matrices_are_nilpotent() {
    for n in 2..=5 {
        let g = fixtures::strictly_upper(n);
        let r = g.structure_check();
        assert!(r.jacobi);
        assert_eq!(r.nilpotent_class, Some(n - 1));
    }
}

fn nilpotent_fixtures() -> Vec<LieAlgebra> {
    vec![
        fixtures::freefall().0,
        fixtures::heisenberg().0,
        fixtures::bargmann().0,
        fixtures::alg6().0,
        fixtures::strictly_upper(4),
    ]
}

fn rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| qr(n, d))
}

/// A random unitriangular change of basis keeps the algebra nilpotent and exact.
fn changed(alg: &LieAlgebra, entries: &[Q]) -> LieAlgebra {
    let n = alg.dim();
    let basis: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { q(1) } else if j < i { entries[(i * n + j) % entries.len()].clone() } else { q(0) }).collect())
        .collect();
    alg.in_basis(&basis).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_identities_on_fixtures(
        which in 0usize..5,
        entries in proptest::collection::vec(rational(), 36),
        xs in proptest::collection::vec(rational(), 6),
        zs in proptest::collection::vec(rational(), 6),
    ) {
        let g = changed(&nilpotent_fixtures()[which], &entries);
        let n = g.dim();
        let r = g.structure_check();
        prop_assert!(r.antisymmetric && r.jacobi);
        let class = r.nilpotent_class.unwrap();
        let x = Covector::new(xs[..n].to_vec());
        let z = zs[..n].to_vec();
        let minus: Vec<Q> = z.iter().map(|c| -c.clone()).collect();
        let y = g.exp_coadjoint(&z, &x).unwrap();
        prop_assert_eq!(g.exp_coadjoint(&minus, &y).unwrap(), x.clone());

        // the series has at most `class` nonzero correction terms
        let mut t = x.clone();
        for _ in 0..class {
            t = g.coadjoint_vector(&z, &t).unwrap();
        }
        prop_assert!(t.is_zero());

        // stabilizer characterization
        let stab = g.stabilizer(&x).unwrap();
        for i in 0..n {
            let b = g.basis_vector(i);
            prop_assert_eq!(stab.contains(&b), g.coadjoint_vector(&b, &x).unwrap().is_zero());
        }
        for row in stab.rows() {
            prop_assert!(g.coadjoint_vector(row, &x).unwrap().is_zero());
        }

        // linearity of the coadjoint vector in Z and x
        let z2: Vec<Q> = z.iter().rev().cloned().collect();
        let sum: Vec<Q> = z.iter().zip(&z2).map(|(a, b)| a + b).collect();
        let lhs = g.coadjoint_vector(&sum, &x).unwrap();
        let rhs = g.coadjoint_vector(&z, &x).unwrap().add(&g.coadjoint_vector(&z2, &x).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn orth_is_an_involution(
        n in 1usize..7,
        rows in proptest::collection::vec(proptest::collection::vec(rational(), 6), 0..6),
    ) {
        let s = Subspace::span(Ambient::Algebra, n, rows.iter().map(|r| r[..n].to_vec()));
        let o = s.orth();
        prop_assert_eq!(s.dim() + o.dim(), n);
        prop_assert_eq!(o.orth(), s);
    }

    #[test]
    fn bracket_file_round_trip(which in 0usize..5, entries in proptest::collection::vec(rational(), 36)) {
        let g = changed(&nilpotent_fixtures()[which], &entries);
        let back = parse_algebra(&g.to_bracket_file()).unwrap();
        prop_assert_eq!(back, g);
    }
}
