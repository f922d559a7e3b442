use proptest::prelude::*;
use spinh::fock::{commutator_check, cutjoin_eigen_check, heisenberg_check, parity_check};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn vertex_operator_commutators(m in -3i64..=3, n in -3i64..=3) {
        prop_assert!(commutator_check(m, n, 4, 6).unwrap());
    }

    #[test]
    fn vertex_operator_parity(m in -4i64..=4) {
        prop_assert!(parity_check(m, 4, 6).unwrap());
    }

    #[test]
    fn cut_and_join_eigenvalues(half in 1u32..=4) {
        prop_assert!(cutjoin_eigen_check(2 * half, 6).unwrap());
    }
}

#[test]
fn heisenberg_relations() {
    assert!(heisenberg_check(7, 6).unwrap());
}
