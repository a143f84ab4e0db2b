//! Every bound on one instance next to the brute-force optimum.

use itertools::Itertools;

use crate::bounds::{
    check_contracted_containment, check_dual_containment, check_dual_equality_two,
    dual_rank_upper_bound, find_covering_cocovering_bases, lower_bound_contracted_derived,
    lower_bound_contracted_printed, lower_bound_dual_union, upper_bound_partition, CoveringBases,
    CoveringSearch, DerivedBound, DualEqualityReport, FamilyComparison, LowerBound,
};
use crate::error::{MatroidError, Result};
use crate::intersection::{
    common_ground, edmonds_minmax_rhs, filtration_minmax_rhs, intersect, is_matroid,
    max_common_independent_bruteforce, max_common_two_augmenting,
    prefix_intersections_are_matroids, Chain, MatroidCheck, MinMaxValue, Optimum,
};
use crate::matroid::Matroid;
use crate::subset::Subset;

/// Largest ground set for the scan of the dual-rank bound over every `X`.
pub const DUAL_RANK_SCAN_CAP: usize = 8;
/// Largest `m` for which every ordering of the matroids is tried.
pub const PERMUTATION_CAP: usize = 5;

pub const FLAG_UPPER_BELOW_OPTIMUM: &str = "upper_partition_below_optimum";
pub const FLAG_DUAL_UNION_EXCEEDS: &str = "lower_dual_union_exceeds_optimum";
pub const FLAG_PRINTED_EXCEEDS: &str = "thm13_printed_exceeds_optimum";
pub const FLAG_DERIVED_EXCEEDS: &str = "thm13_derived_exceeds_optimum";
pub const FLAG_DERIVED_MISMATCH: &str = "contracted_derived_oracle_mismatch";
pub const FLAG_EDMONDS_MISMATCH: &str = "edmonds_rhs_mismatch";
pub const FLAG_AUGMENTING_MISMATCH: &str = "augmenting_mismatch";
pub const FLAG_FILTRATION_BELOW: &str = "filtration_below_optimum";
pub const FLAG_FILTRATION_EQUALITY: &str = "filtration_equality_failed";
pub const FLAG_CHAIN_BELOW: &str = "declared_chain_below_optimum";
pub const FLAG_DUAL_CONTAINMENT: &str = "dual_containment_violated";
pub const FLAG_CONTRACTED_CONTAINMENT: &str = "contracted_containment_violated";
pub const FLAG_DUAL_RANK_UPPER: &str = "dual_rank_upper_violated";

#[derive(Clone, Debug)]
pub struct AuditOptions {
    /// Covering and co-covering bases to use instead of searching.
    pub covering_bases: Option<Vec<Subset>>,
    /// A chain whose value is checked against the optimum.
    pub chain: Option<Chain>,
    pub search_covering: bool,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            covering_bases: None,
            chain: None,
            search_covering: true,
        }
    }
}

/// Smallest slack of the two readings of the dual-rank upper bound over all
/// `X ⊆ E`; negative means the bound fails somewhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualRankSlack {
    pub over_subsets_of_x: (i64, Subset),
    pub over_all_subsets: (i64, Subset),
}

/// Values that were not computed are `None`; `skipped` says why.
#[derive(Clone, Debug, Default)]
pub struct BoundReport {
    pub n: usize,
    pub m: usize,
    pub optimum: Option<Optimum>,
    pub augmenting: Option<usize>,
    pub edmonds_rhs: Option<MinMaxValue<Subset>>,
    pub filtration_rhs: Option<MinMaxValue<Chain>>,
    pub declared_chain_value: Option<usize>,
    pub upper_partition: Option<MinMaxValue<Vec<Subset>>>,
    pub lower_dual_union: Option<LowerBound>,
    pub dual_rank_slack: Option<DualRankSlack>,
    pub covering: Option<CoveringSearch>,
    pub lower_contracted_printed: Option<LowerBound>,
    pub lower_contracted_derived: Option<DerivedBound>,
    pub dual_containment: Option<FamilyComparison>,
    pub contracted_containment: Option<FamilyComparison>,
    pub dual_equality_two: Option<DualEqualityReport>,
    /// Whether the dual-union lower bound equals the optimum (m = 2).
    pub lower_equals_optimum_two: Option<bool>,
    pub intersection_is_matroid: Option<MatroidCheck>,
    pub prefix_matroids: Option<Vec<bool>>,
    /// Whether some ordering of the matroids makes every prefix
    /// intersection a matroid.
    pub prefix_matroids_some_order: Option<bool>,
    pub flags: Vec<&'static str>,
    pub skipped: Vec<String>,
}

impl BoundReport {
    pub fn covering_bases(&self) -> Option<&CoveringBases> {
        self.covering.as_ref().and_then(CoveringSearch::found)
    }

    pub fn flagged(&self, flag: &str) -> bool {
        self.flags.contains(&flag)
    }
}

/// Turns a cap error into a recorded skip; other errors propagate.
fn capped<T>(skipped: &mut Vec<String>, what: &str, r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e @ MatroidError::TooLarge { .. }) => {
            skipped.push(format!("{what}: {e}"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn dual_rank_slack(ms: &[Matroid], ground: Subset) -> Result<DualRankSlack> {
    if ground.len() > DUAL_RANK_SCAN_CAP {
        return Err(MatroidError::TooLarge {
            what: "ground set for the dual-rank scan",
            size: ground.len() as u64,
            cap: DUAL_RANK_SCAN_CAP as u64,
        });
    }
    let mut slack = DualRankSlack {
        over_subsets_of_x: (i64::MAX, ground),
        over_all_subsets: (i64::MAX, ground),
    };
    for x in ground.subsets() {
        let d = dual_rank_upper_bound(ms, x)?;
        let r = d.intersection_dual_rank as i64;
        if d.over_subsets_of_x - r < slack.over_subsets_of_x.0 {
            slack.over_subsets_of_x = (d.over_subsets_of_x - r, x);
        }
        if d.over_all_subsets - r < slack.over_all_subsets.0 {
            slack.over_all_subsets = (d.over_all_subsets - r, x);
        }
    }
    Ok(slack)
}

fn some_order_works(ms: &[Matroid]) -> Result<bool> {
    if ms.len() > PERMUTATION_CAP {
        return Err(MatroidError::TooLarge {
            what: "matroid count for the ordering scan",
            size: ms.len() as u64,
            cap: PERMUTATION_CAP as u64,
        });
    }
    for order in (0..ms.len()).permutations(ms.len()) {
        let permuted: Vec<Matroid> = order.iter().map(|&i| ms[i].clone()).collect();
        if prefix_intersections_are_matroids(&permuted)?
            .iter()
            .all(|&b| b)
        {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Computes every bound that fits under the caps and flags each failed
/// inequality. Cap errors are recorded in `skipped`.
pub fn audit_instance(ms: &[Matroid], options: &AuditOptions) -> Result<BoundReport> {
    let ground = common_ground(ms)?;
    let m = ms.len();
    let mut r = BoundReport {
        n: ground.len(),
        m,
        ..BoundReport::default()
    };
    let sk = &mut r.skipped;

    r.optimum = capped(sk, "optimum", max_common_independent_bruteforce(ms))?;
    if m == 2 {
        r.augmenting = Some(max_common_two_augmenting(&ms[0], &ms[1])?.size);
        r.edmonds_rhs = capped(sk, "edmonds_rhs", edmonds_minmax_rhs(&ms[0], &ms[1]))?;
    }
    if m >= 2 {
        r.filtration_rhs = capped(sk, "filtration_rhs", filtration_minmax_rhs(ms))?;
    }
    if let Some(chain) = &options.chain {
        r.declared_chain_value = Some(chain.value(ms)?);
    }
    r.upper_partition = capped(sk, "upper_partition", upper_bound_partition(ms))?;
    r.lower_dual_union = capped(sk, "lower_dual_union", lower_bound_dual_union(ms))?;
    r.dual_rank_slack = capped(sk, "dual_rank_slack", dual_rank_slack(ms, ground))?;

    let bases = match &options.covering_bases {
        Some(ts) => {
            let c = CoveringBases::new(ms, ts.clone())?;
            r.covering = Some(CoveringSearch::Found(c.clone()));
            Some(c)
        }
        None if options.search_covering => {
            r.covering = capped(sk, "covering", find_covering_cocovering_bases(ms))?;
            r.covering.as_ref().and_then(|c| c.found().cloned())
        }
        None => None,
    };
    if let Some(c) = &bases {
        let ts = c.bases();
        r.lower_contracted_printed = capped(
            sk,
            "contracted_printed",
            lower_bound_contracted_printed(ms, ts),
        )?;
        r.lower_contracted_derived = capped(
            sk,
            "contracted_derived",
            lower_bound_contracted_derived(ms, ts),
        )?;
        r.contracted_containment = capped(
            sk,
            "contracted_containment",
            check_contracted_containment(ms, ts),
        )?;
    }

    r.dual_containment = capped(sk, "dual_containment", check_dual_containment(ms))?;
    if m == 2 {
        r.dual_equality_two = capped(
            sk,
            "dual_equality_two",
            check_dual_equality_two(&ms[0], &ms[1]),
        )?;
    }
    let system = intersect(ms)?;
    r.intersection_is_matroid = capped(sk, "is_matroid", is_matroid(&system))?;
    if m >= 2 {
        r.prefix_matroids = capped(sk, "prefix_matroids", prefix_intersections_are_matroids(ms))?;
        r.prefix_matroids_some_order = capped(sk, "prefix_orders", some_order_works(ms))?;
    }
    if let (Some(opt), Some(low), Some(true)) = (
        r.optimum,
        r.lower_dual_union,
        r.intersection_is_matroid.map(|c| c.holds && m == 2),
    ) {
        r.lower_equals_optimum_two = Some(low.raw == opt.size as i64);
    }

    r.flags = flags(&r);
    Ok(r)
}

fn flags(r: &BoundReport) -> Vec<&'static str> {
    let mut out = Vec::new();
    let mut flag = |cond: bool, name: &'static str| {
        if cond {
            out.push(name);
        }
    };
    if let Some(derived) = &r.lower_contracted_derived {
        flag(!derived.consistent(), FLAG_DERIVED_MISMATCH);
    }
    if let Some(c) = &r.dual_containment {
        flag(!c.contained(), FLAG_DUAL_CONTAINMENT);
    }
    if let Some(c) = &r.contracted_containment {
        flag(!c.contained(), FLAG_CONTRACTED_CONTAINMENT);
    }
    if let Some(s) = &r.dual_rank_slack {
        flag(s.over_subsets_of_x.0 < 0, FLAG_DUAL_RANK_UPPER);
    }
    let Some(opt) = r.optimum.map(|o| o.size) else {
        return out;
    };
    let opt_i = opt as i64;
    if let Some(u) = &r.upper_partition {
        flag(u.value < opt, FLAG_UPPER_BELOW_OPTIMUM);
    }
    if let Some(l) = &r.lower_dual_union {
        flag(l.raw > opt_i, FLAG_DUAL_UNION_EXCEEDS);
    }
    if let Some(p) = &r.lower_contracted_printed {
        flag(p.raw > opt_i, FLAG_PRINTED_EXCEEDS);
    }
    if let Some(d) = &r.lower_contracted_derived {
        flag(d.bound.raw > opt_i, FLAG_DERIVED_EXCEEDS);
    }
    if let Some(a) = r.augmenting {
        flag(a != opt, FLAG_AUGMENTING_MISMATCH);
    }
    if let Some(e) = &r.edmonds_rhs {
        flag(e.value != opt, FLAG_EDMONDS_MISMATCH);
    }
    if let Some(f) = &r.filtration_rhs {
        flag(f.value < opt, FLAG_FILTRATION_BELOW);
        let hypothesis = r
            .prefix_matroids
            .as_ref()
            .is_some_and(|p| p.iter().all(|&b| b));
        flag(hypothesis && f.value != opt, FLAG_FILTRATION_EQUALITY);
    }
    if let Some(v) = r.declared_chain_value {
        flag(v < opt, FLAG_CHAIN_BELOW);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, xs: &[usize]) -> Subset {
        Subset::from_indices(n, xs.iter().copied()).unwrap()
    }

    #[test]
    fn uniform_against_partition() {
        let ms = [
            Matroid::uniform(3, 2).unwrap(),
            Matroid::partition(vec![vec![0, 1], vec![2]], vec![1, 1]).unwrap(),
        ];
        let r = audit_instance(&ms, &AuditOptions::default()).unwrap();
        assert_eq!(r.optimum.unwrap().size, 2);
        assert_eq!(r.upper_partition.as_ref().unwrap().value, 2);
        assert_eq!(r.lower_dual_union.unwrap().raw, 1);
        assert_eq!(r.edmonds_rhs.as_ref().unwrap().value, 2);
        assert_eq!(r.augmenting, Some(2));
        assert!(r.flags.is_empty(), "{:?}", r.flags);
        assert!(r.skipped.is_empty(), "{:?}", r.skipped);
        // the intersection is the partition matroid, yet the lower bound is 1
        assert_eq!(r.lower_equals_optimum_two, Some(false));
    }

    #[test]
    fn printed_contracted_bound_flagged() {
        let u = Matroid::uniform(4, 2).unwrap();
        let opts = AuditOptions {
            covering_bases: Some(vec![set(4, &[0, 1]), set(4, &[2, 3])]),
            ..AuditOptions::default()
        };
        let r = audit_instance(&[u.clone(), u], &opts).unwrap();
        assert_eq!(r.optimum.unwrap().size, 2);
        assert_eq!(r.lower_contracted_printed.unwrap().raw, 4);
        assert_eq!(r.lower_contracted_derived.unwrap().bound.raw, 0);
        assert!(r.flagged(FLAG_PRINTED_EXCEEDS));
        assert!(!r.flagged(FLAG_DERIVED_EXCEEDS));
        assert_eq!(r.flags, vec![FLAG_PRINTED_EXCEEDS]);
    }

    #[test]
    fn searched_bases_give_the_same_flags() {
        let u = Matroid::uniform(4, 2).unwrap();
        let r = audit_instance(&[u.clone(), u], &AuditOptions::default()).unwrap();
        assert!(r.covering_bases().is_some());
        assert!(r.flagged(FLAG_PRINTED_EXCEEDS));
        assert!(!r.flagged(FLAG_DERIVED_EXCEEDS));
    }

    #[test]
    fn rank_zero_pair() {
        let z = Matroid::zero(3).unwrap();
        let r = audit_instance(&[z.clone(), z], &AuditOptions::default()).unwrap();
        assert_eq!(r.optimum.unwrap().size, 0);
        assert_eq!(r.upper_partition.as_ref().unwrap().value, 0);
        assert_eq!(r.lower_dual_union.unwrap().raw, 0);
        assert_eq!(r.edmonds_rhs.as_ref().unwrap().value, 0);
        assert_eq!(r.filtration_rhs.as_ref().unwrap().value, 0);
        assert!(r.flags.is_empty(), "{:?}", r.flags);
    }

    #[test]
    fn declared_bases_are_validated() {
        let u = Matroid::uniform(4, 2).unwrap();
        let opts = AuditOptions {
            covering_bases: Some(vec![set(4, &[0, 1]), set(4, &[0, 1])]),
            ..AuditOptions::default()
        };
        assert!(audit_instance(&[u.clone(), u], &opts).is_err());
    }

    #[test]
    fn declared_chain_is_evaluated() {
        let u = Matroid::uniform(3, 2).unwrap();
        let chain = Chain::new(vec![set(3, &[0]), set(3, &[0, 1])]).unwrap();
        let opts = AuditOptions {
            chain: Some(chain),
            ..AuditOptions::default()
        };
        let r = audit_instance(&[u.clone(), u.clone(), u], &opts).unwrap();
        assert_eq!(r.declared_chain_value, Some(3));
        assert_eq!(r.filtration_rhs.as_ref().unwrap().value, 2);
        assert_eq!(r.prefix_matroids, Some(vec![true, true]));
        assert_eq!(r.flags, vec![FLAG_PRINTED_EXCEEDS]);
    }

    #[test]
    fn partition_pair_orders() {
        let ms = [
            Matroid::partition(vec![vec![0, 1], vec![2, 3]], vec![1, 1]).unwrap(),
            Matroid::partition(vec![vec![0, 2], vec![1, 3]], vec![1, 1]).unwrap(),
        ];
        let r = audit_instance(&ms, &AuditOptions::default()).unwrap();
        assert_eq!(r.prefix_matroids, Some(vec![false]));
        assert_eq!(r.prefix_matroids_some_order, Some(false));
        assert!(r.dual_containment.unwrap().strict());
        assert_eq!(r.flags, vec![FLAG_PRINTED_EXCEEDS]);
    }
}
