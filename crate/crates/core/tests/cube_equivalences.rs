mod common;

use common::{naive_cover_holds, simple_matrix};
use mcheck_core::cube::{
    algebra_satisfies, build_counterexample_algebra, check_cube_verdict, implies_cube_family, implies_cube_general,
    implies_cube_simple, preserves, preserves_direct, CubeRelation, NamedOperation, OracleVerdict, TwoElementAlgebra,
};
use mcheck_core::families::{family, Family};
use mcheck_core::lex::{check_lex_verdict, implies_lex};
use mcheck_core::{intersect, presentation, SimpleMatrix};
use proptest::prelude::*;

fn cube(n: u32) -> SimpleMatrix {
    family(Family::Cube { n, k: 2 }).unwrap().as_simple().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cover_test_matches_naive_enumeration(m in simple_matrix(4, 4, 3), n_prime in 2usize..=3) {
        let v = implies_cube_simple(&m, n_prime);
        prop_assert_eq!(v.holds(), naive_cover_holds(&m, n_prime));
        prop_assert!(check_cube_verdict(&m, &v).is_ok());
    }

    #[test]
    fn comparison_bounds(m in simple_matrix(4, 4, 3), n_prime in 2usize..=4) {
        let v = implies_cube_simple(&m, n_prime);
        let (n, cols) = (m.n() as u64, m.m() as u64);
        let tuples = n.pow(n_prime as u32);
        prop_assert!(v.element_comparisons <= n_prime as u64 * cols * tuples);
        prop_assert!(v.column_checks <= cols * tuples);
        if n_prime == 2 {
            prop_assert!(v.element_comparisons <= 2 * cols * n * n);
        }
    }

    #[test]
    fn lex_against_cube_agrees_with_cover_test(m in simple_matrix(4, 4, 3), n_prime in 2u32..=3) {
        let target = cube(n_prime);
        let lex = implies_lex(&m, &target);
        prop_assert!(check_lex_verdict(&m, &target, &lex).is_ok());
        prop_assert_eq!(lex.holds(), implies_cube_simple(&m, n_prime as usize).holds());
    }

    #[test]
    fn oracle_agrees_with_cover_test(m in simple_matrix(3, 4, 2), n_prime in 2usize..=3) {
        let cover = implies_cube_simple(&m, n_prime);
        let oracle = implies_cube_general(&m, n_prime).unwrap();
        prop_assert_eq!(oracle.holds(), Some(cover.holds()));
        if let OracleVerdict::Fails { algebra, .. } = &oracle {
            prop_assert_eq!(algebra_satisfies(algebra, &presentation(&m)), Ok(true));
            let r = CubeRelation::new(n_prime);
            for named in &algebra.ops {
                prop_assert!(preserves_direct(&named.op, &r));
            }
        }
    }

    #[test]
    fn counterexample_algebra_is_sound(m in simple_matrix(4, 4, 3), n_prime in 2usize..=3) {
        if !implies_cube_simple(&m, n_prime).holds() {
            let p = build_counterexample_algebra(&m, n_prime).unwrap();
            let r = CubeRelation::new(n_prime);
            prop_assert!(preserves(&p, &r));
            prop_assert!(preserves_direct(&p, &r));
            let algebra = TwoElementAlgebra::new(vec![NamedOperation { symbol: "p".into(), op: p }]);
            prop_assert_eq!(algebra_satisfies(&algebra, &presentation(&m)), Ok(true));
        } else {
            prop_assert!(build_counterexample_algebra(&m, n_prime).is_err());
        }
    }

    #[test]
    fn intersection_is_disjunction(a in simple_matrix(3, 3, 3), b in simple_matrix(3, 3, 3), n_prime in 2usize..=3) {
        let both = intersect(&a, &b);
        let expected = implies_cube_simple(&a, n_prime).holds() || implies_cube_simple(&b, n_prime).holds();
        prop_assert_eq!(implies_cube_simple(&both, n_prime).holds(), expected);
        let fam = implies_cube_family(&[a, b], n_prime);
        prop_assert!(fam.consistent());
        prop_assert_eq!(fam.holds(), expected);
    }

    #[test]
    fn monotone_in_cube_arity(m in simple_matrix(4, 4, 3), n_prime in 2usize..=4) {
        if implies_cube_simple(&m, n_prime).holds() {
            prop_assert!(implies_cube_simple(&m, n_prime + 1).holds());
        }
    }
}

#[test]
fn cube_matrices_are_lex_equivalent_across_k() {
    for n in 2..=3 {
        for k1 in 2..=3 {
            for k2 in 2..=3 {
                let a = family(Family::Cube { n, k: k1 }).unwrap().as_simple().unwrap();
                let b = family(Family::Cube { n, k: k2 }).unwrap().as_simple().unwrap();
                let v = implies_lex(&a, &b);
                assert!(v.holds(), "Cube_{{{n},{k1}}} => Cube_{{{n},{k2}}}");
                check_lex_verdict(&a, &b, &v).unwrap();
            }
            let c = family(Family::Cube { n, k: k1 }).unwrap().as_simple().unwrap();
            assert!(implies_cube_simple(&c, n as usize).holds());
        }
    }
}

#[test]
fn exhaustive_two_row_binary_matrices() {
    // every simple matrix with n <= 2, m <= 3, k = 2
    for n in 1..=2usize {
        for m in 0..=3usize {
            let cells = n * m + n;
            for code in 0..1u32 << cells {
                let bit = |p: usize| ((code >> p) & 1) + 1;
                let left = (0..n).map(|i| (0..m).map(|j| bit(i * m + j)).collect()).collect();
                let right = (0..n).map(|i| bit(n * m + i)).collect();
                let mat = SimpleMatrix::from_rows(left, right, 2).unwrap();
                for n_prime in 2..=3usize {
                    let cover = implies_cube_simple(&mat, n_prime).holds();
                    assert_eq!(cover, naive_cover_holds(&mat, n_prime));
                    assert_eq!(implies_cube_general(&mat, n_prime).unwrap().holds(), Some(cover));
                    assert_eq!(implies_lex(&mat, &cube(n_prime as u32)).holds(), cover);
                }
            }
        }
    }
}
