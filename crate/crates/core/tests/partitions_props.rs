use proptest::prelude::*;
use spinh::partitions::{enumerate, Partition, PartitionClass};

proptest! {
    #[test]
    fn odd_and_strict_counts_agree(d in 0u32..=30) {
        prop_assert_eq!(enumerate(d, PartitionClass::Odd).len(), enumerate(d, PartitionClass::Strict).len());
    }

    #[test]
    fn enumeration_is_exact_and_duplicate_free(d in 0u32..=16) {
        for class in [PartitionClass::Odd, PartitionClass::Strict, PartitionClass::All] {
            let all = enumerate(d, class);
            let mut seen = all.clone();
            seen.sort();
            seen.dedup();
            prop_assert_eq!(seen.len(), all.len());
            prop_assert!(all.iter().all(|p| p.size() == d && p.belongs_to(class)));
        }
    }

    #[test]
    fn parse_inverts_display(parts in prop::collection::vec(1u32..20, 0..6)) {
        let p = Partition::new(parts).unwrap();
        prop_assert_eq!(Partition::parse(&p.to_string()).unwrap(), p);
    }
}
