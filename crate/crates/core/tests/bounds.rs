mod common;

use common::{brute_optimum, coindependent, family_from, instance, set};
use matroid_core::bounds::{
    check_contracted_containment, check_dual_containment, dual_rank_upper_bound,
    find_covering_cocovering_bases, lower_bound_contracted_derived, lower_bound_contracted_printed,
    lower_bound_dual_union, union_of_duals, upper_bound_partition, CoveringBases, CoveringSearch,
};
use matroid_core::ops::{contract, dual};
use matroid_core::{Matroid, Subset};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn sandwich(seed in any::<u64>(), n in 0usize..=6, m in 1usize..=3, f in 0usize..5) {
        let ms = instance(family_from(f), n, m, seed);
        let opt = brute_optimum(&ms, Subset::full(n));
        prop_assert!(upper_bound_partition(&ms).unwrap().value >= opt);
        let low = lower_bound_dual_union(&ms).unwrap();
        prop_assert!(low.raw <= opt as i64);
        prop_assert!(low.clamped() <= opt);
    }

    #[test]
    fn dual_containment_holds(seed in any::<u64>(), n in 0usize..=6, m in 1usize..=3, f in 0usize..5) {
        let ms = instance(family_from(f), n, m, seed);
        let c = check_dual_containment(&ms).unwrap();
        prop_assert!(c.contained(), "{:?}", c);
        if m == 1 {
            prop_assert!(c.equal());
        }
        // the left side is the dual of the intersection, by definition
        let opt_sets: Vec<Subset> = Subset::full(n)
            .subsets()
            .filter(|&s| ms.iter().all(|x| x.is_independent(s).unwrap()))
            .collect();
        let maximal: Vec<Subset> = opt_sets
            .iter()
            .copied()
            .filter(|&s| !opt_sets.iter().any(|&t| s != t && s.is_subset_of(t)))
            .collect();
        let left = Subset::full(n)
            .subsets()
            .filter(|&s| maximal.iter().any(|b| b.is_disjoint(s)))
            .count();
        prop_assert_eq!(left, c.left_count);
    }

    #[test]
    fn covering_bound_chain(seed in any::<u64>(), n in 0usize..=6, m in 2usize..=3, f in 0usize..5) {
        let ms = instance(family_from(f), n, m, seed);
        let search = find_covering_cocovering_bases(&ms).unwrap();
        prop_assert!(!matches!(search, CoveringSearch::NotFound));
        if let Some(c) = search.found() {
            let ts = c.bases();
            prop_assert!(CoveringBases::new(&ms, ts.to_vec()).is_ok());
            let opt = brute_optimum(&ms, Subset::full(n)) as i64;
            let derived = lower_bound_contracted_derived(&ms, ts).unwrap();
            prop_assert!(derived.consistent());
            prop_assert!(derived.bound.raw <= opt);
            let printed = lower_bound_contracted_printed(&ms, ts).unwrap();
            prop_assert!(printed.raw >= derived.bound.raw);
            prop_assert!(check_contracted_containment(&ms, ts).unwrap().contained());
        }
    }

    #[test]
    fn dual_rank_bound_over_subsets_of_x(
        seed in any::<u64>(), n in 0usize..=5, m in 1usize..=3, f in 0usize..5, mask in any::<u32>(),
    ) {
        let ms = instance(family_from(f), n, m, seed);
        let x = Subset::from_bits(n, mask & ((1u32 << n) - 1)).unwrap();
        let d = dual_rank_upper_bound(&ms, x).unwrap();
        prop_assert!(d.over_all_subsets <= d.over_subsets_of_x);
        prop_assert!(d.subsets_of_x_dominates(), "{:?}", d);
    }
}

#[test]
fn single_matroid_union_of_duals_is_the_dual() {
    for seed in 0..20 {
        let m = &instance(family_from(seed as usize), 5, 1, seed)[0];
        let u = union_of_duals(std::slice::from_ref(m)).unwrap();
        for s in m.ground().subsets() {
            assert_eq!(u.is_independent(s).unwrap(), coindependent(m, s));
        }
    }
}

#[test]
fn contracted_duals_are_free_on_complements() {
    let u = Matroid::uniform(4, 2).unwrap();
    let t = set(4, &[0, 1]);
    let d = dual(&contract(&u, t).unwrap());
    assert_eq!(d.ground(), set(4, &[2, 3]));
    assert!(d.is_independent(set(4, &[2, 3])).unwrap());
}
