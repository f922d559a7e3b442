use num_traits::Zero;

use super::*;
use crate::hurwitz::connected_single;
use crate::partitions::{enumerate_up_to, Partition, PartitionClass};
use crate::rational::{q, qi, Q};

#[test]
fn bernoulli_identity() {
    for s in 1..=6i64 {
        let sum: Q = (0..s)
            .map(|a| bernoulli_polynomial(2, &q(2 * a + 1, 2 * s)))
            .sum();
        assert_eq!(sum, q(-1, 12 * s));
    }
    assert_eq!(bernoulli_numbers(4)[4], q(-1, 30));
}

#[test]
fn genus_one_one_point_class() {
    for s in 1..4u32 {
        let r = 2 * s;
        assert_eq!(
            omega_integral(1, &[0], r, &[1]).unwrap(),
            qi(s as i64) / qi(24)
        );
        assert_eq!(
            omega_integral(1, &[0], r, &[0]).unwrap(),
            q(1, 48 * s as i64)
        );
        for a in 1..s {
            assert!(omega_integral(1, &[a], r, &[0]).unwrap().is_zero());
        }
    }
}

#[test]
fn r2_double_hodge_values() {
    // 2^{2g−2} Λ(1)Λ(−1/2) paired with ψ^k on M̄_{2,1}
    let expected = [qi(0), q(-1, 2880), q(7, 5760), q(1, 240), q(1, 288)];
    for (k, e) in expected.iter().enumerate() {
        assert_eq!(
            &omega_integral(2, &[0], 2, &[k as u32]).unwrap(),
            e,
            "k = {k}"
        );
    }
}

#[test]
fn elsv_examples() {
    assert_eq!(spin_elsv(1, &Partition::single(3), 2).unwrap(), qi(1));
    assert_eq!(spin_elsv(2, &Partition::single(1), 2).unwrap(), q(1, 72));
}

#[test]
fn elsv_matches_characters_small() {
    for r in [2, 4] {
        for g in 0..=1 {
            for mu in enumerate_up_to(7, PartitionClass::Odd) {
                if mu.is_empty() || mu.len() > 2 {
                    continue;
                }
                let lhs = spin_elsv(g, &mu, r);
                let rhs = connected_single(g, &mu, r);
                match (lhs, rhs) {
                    (Ok(a), Ok(b)) => assert_eq!(a, b, "r={r} g={g} μ={mu:?}"),
                    (Err(_), Err(_)) => {}
                    (a, b) => panic!("r={r} g={g} μ={mu:?}: {a:?} vs {b:?}"),
                }
            }
        }
    }
}
