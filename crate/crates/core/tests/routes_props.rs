use std::sync::OnceLock;

use num_traits::Zero;
use proptest::prelude::*;
use spinh::closed_forms::{one_part_single_fd, one_part_single_stirling};
use spinh::cohft::{omega_integral, spin_elsv};
use spinh::hurwitz::{connected_single, single_b};
use spinh::rational::{qi, Q};
use spinh::tr::TrEngine;
use spinh::{Error, Partition};

fn engine() -> &'static TrEngine {
    static ENGINE: OnceLock<TrEngine> = OnceLock::new();
    ENGINE.get_or_init(|| TrEngine::spin(2).unwrap())
}

fn zero_if_no_covers(v: spinh::Result<Q>) -> Q {
    match v {
        Err(Error::NoCovers(_)) => Q::zero(),
        other => other.unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn one_part_routes_agree(g in 0u32..=2, half_mu in 0u32..10, s in 1u32..=3) {
        let (mu, r) = (2 * half_mu + 1, 2 * s);
        prop_assume!(single_b(g as i64, &Partition::single(mu), r).is_ok());
        let chars = connected_single(g, &Partition::single(mu), r).unwrap();
        prop_assert_eq!(one_part_single_fd(g, mu, r).unwrap(), chars.clone());
        prop_assert_eq!(one_part_single_stirling(g, mu, r).unwrap(), chars);
    }

    #[test]
    fn elsv_matches_characters(g in 0u32..=2, a in 0u32..5, b in 0u32..4, two in any::<bool>(), s in 1u32..=2) {
        let mut parts = vec![2 * a + 1];
        if two {
            parts.push(2 * b + 1);
        }
        let mu = Partition::new(parts).unwrap();
        let r = 2 * s;
        prop_assert_eq!(zero_if_no_covers(spin_elsv(g, &mu, r)), zero_if_no_covers(connected_single(g, &mu, r)));
    }

    #[test]
    fn omega_vanishes_off_the_residue_condition(g in 0u32..=1, a in prop::collection::vec(0u32..3, 1..=3), k in prop::collection::vec(0u32..3, 3)) {
        let n = a.len();
        prop_assume!(2 * g as usize + n >= 3);
        let s = 3u32;
        let psi: Vec<u32> = k[..n].to_vec();
        let total: i64 = a.iter().map(|&x| x as i64).sum();
        let v = omega_integral(g, &a, 2 * s, &psi).unwrap();
        if (total - g as i64 + 1).rem_euclid(s as i64) != 0 {
            prop_assert!(v.is_zero());
        }
    }

    #[test]
    fn correlators_are_symmetric_and_even(idx in 0usize..4, z in prop::collection::vec(-20i64..=20, 4), flip in 0usize..4) {
        let (g, n) = [(0u32, 3usize), (1, 1), (1, 2), (0, 4)][idx];
        let corr = engine().correlator(g, n).unwrap();
        let point: Vec<Q> = z[..n].iter().map(|&v| qi(v) / qi(41)).collect();
        let mut reversed = point.clone();
        reversed.reverse();
        prop_assert_eq!(corr.eval(&point), corr.eval(&reversed));
        let mut swapped = point.clone();
        swapped.swap(0, flip % n);
        prop_assert_eq!(corr.eval(&point), corr.eval(&swapped));
        let mut negated = point.clone();
        let i = flip % n;
        negated[i] = -negated[i].clone();
        prop_assert_eq!(corr.eval(&point), corr.eval(&negated));
    }
}
