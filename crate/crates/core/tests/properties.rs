use proptest::prelude::*;

use pmscheme::combinat::{double_factorial, hook_dimension};
use pmscheme::matchings::{intersection_size, matching_count, rank, union_shape, unrank};
use pmscheme::quotient::{orbit_partition, quotient_matrix};
use pmscheme::rational::{self, ratio};
use pmscheme::{Execution, IntegerPartition};

fn matching_pair() -> impl Strategy<Value = (usize, usize, usize)> {
    (1usize..=7).prop_flat_map(|k| {
        let n = matching_count(k).unwrap();
        (Just(k), 0..n, 0..n)
    })
}

proptest! {
    #[test]
    fn rank_inverts_unrank((k, i, _) in matching_pair()) {
        prop_assert_eq!(rank(&unrank(k, i)), i);
    }

    #[test]
    fn union_shape_is_symmetric_even_partition((k, i, j) in matching_pair()) {
        let (p, q) = (unrank(k, i), unrank(k, j));
        let s = union_shape(&p, &q).unwrap();
        prop_assert_eq!(&s, &union_shape(&q, &p).unwrap());
        prop_assert!(s.is_even());
        prop_assert_eq!(s.n(), 2 * k);
        prop_assert_eq!(s.count_of(2), intersection_size(&p, &q).unwrap());
    }

    #[test]
    fn relabelling_preserves_shape((k, i, j) in matching_pair(), seed in any::<u64>()) {
        let n = 2 * k;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for a in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(a, (s >> 33) as usize % (a + 1));
        }
        let (p, q) = (unrank(k, i), unrank(k, j));
        prop_assert_eq!(union_shape(&p, &q).unwrap(), union_shape(&p.permuted(&perm), &q.permuted(&perm)).unwrap());
    }

    #[test]
    fn rationals_round_trip(p in -100000i64..100000, q in 1i64..100000) {
        let r = ratio(p, q);
        let s = rational::to_string(&r);
        prop_assert!(s.contains('/'));
        prop_assert_eq!(rational::parse(&s).unwrap(), r);
    }
}

#[test]
fn hook_dimensions_of_doubled_shapes_sum_to_count() {
    // The modules are the doubled partitions of k, each once.
    for k in 1..=7 {
        let total: num_bigint::BigUint =
            pmscheme::combinat::partitions(k).iter().map(|p| hook_dimension(&p.doubled())).sum();
        assert_eq!(total, double_factorial(2 * k as i64 - 1).unwrap(), "k = {k}");
    }
}

#[test]
fn orbit_partitions_are_invariant_under_the_subgroup() {
    for parts in [vec![6, 2], vec![4, 4], vec![4, 2, 2]] {
        let lam = IntegerPartition::new(parts).unwrap();
        let orbits = orbit_partition(4, &lam).unwrap();
        orbits.validate_by_group_action().unwrap();
    }
}

#[test]
fn sequential_and_parallel_quotients_agree() {
    let class = IntegerPartition::new(vec![8, 2]).unwrap();
    let lam = IntegerPartition::new(vec![6, 2, 2]).unwrap();
    let a = quotient_matrix(5, &class, &lam, Execution::Sequential).unwrap();
    let b = quotient_matrix(5, &class, &lam, Execution::Parallel).unwrap();
    assert_eq!(a.entries, b.entries);
}
