use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use spinh::linalg::determinant;
use spinh::partitions::{enumerate, enumerate_up_to, Partition, PartitionClass};
use spinh::qschur::{
    character, leading_coefficient_positive, q_matrix, scalar_product, schur_q, GammaElement,
};
use spinh::rational::{pow2, qb, qi, Q};

fn strict_up_to(d: u32) -> Vec<Partition> {
    enumerate_up_to(d, PartitionClass::Strict)
        .into_iter()
        .filter(|p| !p.is_empty())
        .collect()
}

/// Evaluates an element of Γ at `p_k = values[k − 1]`.
fn eval(x: &GammaElement, values: &[Q]) -> Q {
    x.terms()
        .iter()
        .map(|(mu, c)| {
            mu.parts()
                .iter()
                .fold(c.clone(), |acc, &k| acc * &values[k as usize - 1])
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn row_orthogonality(d in 1u32..=10, i in 0usize..64, j in 0usize..64) {
        let strict = enumerate(d, PartitionClass::Strict);
        let (rho, sigma) = (&strict[i % strict.len()], &strict[j % strict.len()]);
        let mut sum = Q::zero();
        for mu in enumerate(d, PartitionClass::Odd) {
            let a = qb(character(rho, &mu).unwrap());
            let b = qb(character(sigma, &mu).unwrap());
            sum += a * b * pow2(-(mu.len() as i64)) / qb(mu.z_factor());
        }
        let expected = if rho == sigma { pow2(rho.parity_delta().unwrap() as i64) } else { Q::zero() };
        prop_assert_eq!(sum, expected);
    }

    #[test]
    fn column_orthogonality(d in 1u32..=10, i in 0usize..64, j in 0usize..64) {
        let odd = enumerate(d, PartitionClass::Odd);
        let (mu, nu) = (&odd[i % odd.len()], &odd[j % odd.len()]);
        let mut sum = Q::zero();
        for rho in enumerate(d, PartitionClass::Strict) {
            let a = qb(character(&rho, mu).unwrap());
            let b = qb(character(&rho, nu).unwrap());
            sum += a * b * pow2(-(rho.parity_delta().unwrap() as i64));
        }
        let expected = if mu == nu { pow2(mu.len() as i64) * qb(mu.z_factor()) } else { Q::zero() };
        prop_assert_eq!(sum, expected);
    }

    #[test]
    fn q_functions_are_orthogonal(i in 0usize..200, j in 0usize..200) {
        let all = strict_up_to(10);
        let (l, m) = (&all[i % all.len()], &all[j % all.len()]);
        let pairing = scalar_product(&schur_q(l).unwrap(), &schur_q(m).unwrap());
        let expected = if l == m { pow2(l.len() as i64) } else { Q::zero() };
        prop_assert_eq!(pairing, expected);
    }

    #[test]
    fn leading_term(i in 0usize..200) {
        let all = strict_up_to(10);
        let l = &all[i % all.len()];
        let q = schur_q(l).unwrap();
        prop_assert_eq!(q.degree(), Some(l.size()));
        prop_assert!(leading_coefficient_positive(l).unwrap());
    }

    #[test]
    fn pfaffian_squared_is_determinant(i in 0usize..100, values in prop::collection::vec(-5i64..=5, 8)) {
        let all = strict_up_to(8);
        let l = &all[i % all.len()];
        let point: Vec<Q> = values.iter().map(|&v| qi(v)).collect();
        let m: Vec<Vec<Q>> = q_matrix(l).iter().map(|row| row.iter().map(|x| eval(x, &point)).collect()).collect();
        let pf = eval(&schur_q(l).unwrap(), &point);
        prop_assert_eq!(&pf * &pf, determinant(&m));
    }

    #[test]
    fn identity_class_gives_dimension_multiples(d in 1u32..=10, i in 0usize..64) {
        // ζ^λ_{(1^d)} is a positive integer
        let strict = enumerate(d, PartitionClass::Strict);
        let l = &strict[i % strict.len()];
        prop_assert!(character(l, &Partition::ones(d)).unwrap() >= BigInt::one());
    }
}
