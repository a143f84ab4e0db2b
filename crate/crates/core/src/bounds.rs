//! Bounds on the largest common independent set of several matroids, and the
//! duality containments they rest on.
//!
//! Every quantity here is computed by exhaustive enumeration. Lower bounds are
//! reported as signed integers because the raw expressions can be negative.

use crate::error::{MatroidError, Result};
use crate::intersection::{
    check_enumeration, common_ground, intersect, is_matroid, min_over_level_assignments,
    MinMaxValue,
};
use crate::matroid::Matroid;
use crate::ops::{contract, dual, general_union, loop_extend, union};
use crate::subset::Subset;
use crate::system::IndependenceOracle;

/// Cap on the ground set for family comparisons, which test union
/// membership for every subset.
pub const FAMILY_COMPARISON_CAP: usize = 12;
/// Largest product of basis counts searched exhaustively for covering bases.
pub const COVERING_PRODUCT_CAP: u64 = 1_000_000;
/// Restarts of the randomized covering search when exhaustive search is off.
pub const COVERING_RESTARTS: usize = 2_000;

/// Upper bound `min Σ r_i(X_i)` over ordered partitions `E = X_1 ⊔ .. ⊔ X_m`.
pub fn upper_bound_partition(ms: &[Matroid]) -> Result<MinMaxValue<Vec<Subset>>> {
    let (value, parts) = min_over_level_assignments(ms)?;
    Ok(MinMaxValue {
        value,
        argmin: parts,
    })
}

/// A lower bound maximized over `A ⊆ E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LowerBound {
    /// The maximum of the raw expression; may be negative.
    pub raw: i64,
    /// First maximizer in ascending mask order.
    pub argmax: Subset,
}

impl LowerBound {
    /// `max(raw, 0)`: the empty set is always common independent.
    pub fn clamped(&self) -> usize {
        self.raw.max(0) as usize
    }
}

fn maximize<F>(ground: Subset, term: F) -> LowerBound
where
    F: Fn(Subset) -> i64,
{
    let mut best = LowerBound {
        raw: i64::MIN,
        argmax: Subset::empty(ground.universe()),
    };
    for a in ground.subsets() {
        let v = term(a);
        if v > best.raw {
            best = LowerBound { raw: v, argmax: a };
        }
    }
    best
}

fn total_rank(ms: &[Matroid]) -> i64 {
    ms.iter().map(|m| m.full_rank() as i64).sum()
}

/// `Σ r_i(E) - Σ r_i(E \ A) - (m-1)|A|` at a single `A`.
pub fn dual_union_term(ms: &[Matroid], a: Subset) -> Result<i64> {
    let ground = common_ground(ms)?;
    ms[0].check_subset(a)?;
    Ok(dual_union_term_unchecked(ms, ground, a))
}

fn dual_union_term_unchecked(ms: &[Matroid], ground: Subset, a: Subset) -> i64 {
    let rest = ground.difference(a);
    let m = ms.len() as i64;
    total_rank(ms)
        - ms.iter().map(|r| r.rank_of(rest) as i64).sum::<i64>()
        - (m - 1) * a.len() as i64
}

/// `max_A Σ r_i(E) - Σ r_i(E \ A) - (m-1)|A|`, a lower bound on the optimum.
pub fn lower_bound_dual_union(ms: &[Matroid]) -> Result<LowerBound> {
    let ground = common_ground(ms)?;
    check_enumeration(ground)?;
    Ok(maximize(ground, |a| {
        dual_union_term_unchecked(ms, ground, a)
    }))
}

/// Both readings of the upper bound on the dual rank of the intersection at
/// `x`, next to the enumerated dual rank itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualRankUpper {
    /// `min_{A ⊆ x} |x| + (m-1)|A| + Σ r_i(E \ A) - Σ r_i(E)`.
    pub over_subsets_of_x: i64,
    /// The same expression minimized over all `A ⊆ E`.
    pub over_all_subsets: i64,
    /// Rank of `x` in the dual of the intersection system.
    pub intersection_dual_rank: usize,
}

impl DualRankUpper {
    pub fn subsets_of_x_dominates(&self) -> bool {
        self.over_subsets_of_x >= self.intersection_dual_rank as i64
    }

    pub fn all_subsets_dominates(&self) -> bool {
        self.over_all_subsets >= self.intersection_dual_rank as i64
    }
}

pub fn dual_rank_upper_bound(ms: &[Matroid], x: Subset) -> Result<DualRankUpper> {
    let ground = common_ground(ms)?;
    check_enumeration(ground)?;
    ms[0].check_subset(x)?;
    let m = ms.len() as i64;
    let total = total_rank(ms);
    let term = |a: Subset| -> i64 {
        let rest = ground.difference(a);
        x.len() as i64
            + (m - 1) * a.len() as i64
            + ms.iter().map(|r| r.rank_of(rest) as i64).sum::<i64>()
            - total
    };
    let over_subsets_of_x = x.subsets().map(term).min().expect("nonempty");
    let over_all_subsets = ground.subsets().map(term).min().expect("nonempty");
    let intersection_dual_rank = intersect(ms)?.dual_rank(x)?;
    Ok(DualRankUpper {
        over_subsets_of_x,
        over_all_subsets,
        intersection_dual_rank,
    })
}

/// Bases `T_i` of the respective matroids whose union is `E` and whose
/// complements also cover `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringBases {
    ts: Vec<Subset>,
}

impl CoveringBases {
    /// Validates every condition: one basis per matroid, covering and
    /// co-covering.
    pub fn new(ms: &[Matroid], ts: Vec<Subset>) -> Result<Self> {
        let ground = check_bases(ms, &ts)?;
        let cover = ts
            .iter()
            .fold(Subset::empty(ground.universe()), |a, t| a.union(*t));
        if cover != ground {
            return Err(MatroidError::Invalid(format!(
                "bases cover only {cover}, not {ground}"
            )));
        }
        let common = ts.iter().fold(ground, |a, t| a.intersection(*t));
        if !common.is_empty() {
            return Err(MatroidError::Invalid(format!(
                "complements miss {common}: not a co-covering"
            )));
        }
        Ok(CoveringBases { ts })
    }

    pub fn bases(&self) -> &[Subset] {
        &self.ts
    }
}

/// Checks that `ts[i]` is a basis of `ms[i]`; returns the common ground set.
fn check_bases(ms: &[Matroid], ts: &[Subset]) -> Result<Subset> {
    let ground = common_ground(ms)?;
    if ts.len() != ms.len() {
        return Err(MatroidError::Invalid(format!(
            "{} sets for {} matroids",
            ts.len(),
            ms.len()
        )));
    }
    for (i, (t, m)) in ts.iter().zip(ms).enumerate() {
        if !m.is_independent(*t)? || t.len() != m.full_rank() {
            return Err(MatroidError::Invalid(format!(
                "{t} is not a basis of matroid {i}"
            )));
        }
    }
    Ok(ground)
}

/// Outcome of [`find_covering_cocovering_bases`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoveringSearch {
    Found(CoveringBases),
    /// Exhaustive search proved that no such bases exist.
    NoneExist,
    /// The randomized search gave up; existence is undecided.
    NotFound,
}

impl CoveringSearch {
    pub fn found(&self) -> Option<&CoveringBases> {
        match self {
            CoveringSearch::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// Searches for covering and co-covering bases. Exhaustive (first hit in
/// lexicographic order of ascending-mask basis lists) when the product of
/// basis counts is at most [`COVERING_PRODUCT_CAP`], randomized greedy with
/// restarts otherwise.
pub fn find_covering_cocovering_bases(ms: &[Matroid]) -> Result<CoveringSearch> {
    let ground = common_ground(ms)?;
    check_enumeration(ground)?;
    let bases: Vec<Vec<Subset>> = ms.iter().map(Matroid::bases).collect::<Result<_>>()?;
    let product = bases
        .iter()
        .try_fold(1u64, |acc, b| acc.checked_mul(b.len() as u64))
        .unwrap_or(u64::MAX);
    if product <= COVERING_PRODUCT_CAP {
        let mut chosen = Vec::with_capacity(ms.len());
        let empty = Subset::empty(ground.universe());
        if covering_dfs(&bases, ground, empty, ground, &mut chosen) {
            return Ok(CoveringSearch::Found(CoveringBases { ts: chosen }));
        }
        return Ok(CoveringSearch::NoneExist);
    }
    Ok(random_covering_search(ms, ground))
}

fn covering_dfs(
    bases: &[Vec<Subset>],
    ground: Subset,
    covered: Subset,
    common: Subset,
    chosen: &mut Vec<Subset>,
) -> bool {
    let i = chosen.len();
    if i == bases.len() {
        return covered == ground && common.is_empty();
    }
    for &b in &bases[i] {
        chosen.push(b);
        if covering_dfs(
            bases,
            ground,
            covered.union(b),
            common.intersection(b),
            chosen,
        ) {
            return true;
        }
        chosen.pop();
    }
    false
}

fn random_covering_search(ms: &[Matroid], ground: Subset) -> CoveringSearch {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let elems = ground.to_vec();
    for _ in 0..COVERING_RESTARTS {
        let mut ts = Vec::with_capacity(ms.len());
        for m in ms {
            let mut order = elems.clone();
            order.shuffle(&mut rng);
            let mut t = Subset::empty(ground.universe());
            for e in order {
                if m.independent(t.with(e)) {
                    t = t.with(e);
                }
            }
            ts.push(t);
        }
        if let Ok(c) = CoveringBases::new(ms, ts) {
            return CoveringSearch::Found(c);
        }
    }
    CoveringSearch::NotFound
}

fn covering_term_parts(ms: &[Matroid], ground: Subset, ts: &[Subset], a: Subset) -> (i64, i64) {
    // (Σ r_i(E \ (A ∩ T_i^c)), Σ |A ∩ T_i^c|)
    let mut rank_sum = 0i64;
    let mut size_sum = 0i64;
    for (m, t) in ms.iter().zip(ts) {
        let cut = a.intersection(ground.difference(*t));
        rank_sum += m.rank_of(ground.difference(cut)) as i64;
        size_sum += cut.len() as i64;
    }
    (rank_sum, size_sum)
}

/// `2 Σ r_i(E) - (m-1)|A| - Σ r_i(E \ (A ∩ T_i^c))` at a single `A`.
pub fn contracted_printed_term(ms: &[Matroid], ts: &[Subset], a: Subset) -> Result<i64> {
    let ground = check_bases(ms, ts)?;
    ms[0].check_subset(a)?;
    Ok(printed_term(ms, ground, ts, a))
}

fn printed_term(ms: &[Matroid], ground: Subset, ts: &[Subset], a: Subset) -> i64 {
    let m = ms.len() as i64;
    let (rank_sum, _) = covering_term_parts(ms, ground, ts, a);
    2 * total_rank(ms) - (m - 1) * a.len() as i64 - rank_sum
}

/// `|A| - Σ |A ∩ T_i^c| + Σ r_i(E) - Σ r_i(E \ (A ∩ T_i^c))` at a single `A`.
pub fn contracted_derived_term(ms: &[Matroid], ts: &[Subset], a: Subset) -> Result<i64> {
    let ground = check_bases(ms, ts)?;
    ms[0].check_subset(a)?;
    Ok(derived_term(ms, ground, ts, a))
}

fn derived_term(ms: &[Matroid], ground: Subset, ts: &[Subset], a: Subset) -> i64 {
    let (rank_sum, size_sum) = covering_term_parts(ms, ground, ts, a);
    a.len() as i64 - size_sum + total_rank(ms) - rank_sum
}

/// The contracted-basis expression exactly as printed, maximized over `A`.
/// It is an audited quantity, not a proven bound.
pub fn lower_bound_contracted_printed(ms: &[Matroid], ts: &[Subset]) -> Result<LowerBound> {
    let ground = check_bases(ms, ts)?;
    check_enumeration(ground)?;
    Ok(maximize(ground, |a| printed_term(ms, ground, ts, a)))
}

/// The contracted-basis bound re-derived through the dual-union argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DerivedBound {
    pub bound: LowerBound,
    /// `|E| - r_N(E)` with `N` the union of the loop-extended `(M_i/T_i)*`,
    /// evaluated through the operation oracles.
    pub oracle: i64,
}

impl DerivedBound {
    pub fn consistent(&self) -> bool {
        self.bound.raw == self.oracle
    }
}

/// The union of the `(M_i/T_i)*`, loop-extended to `E`.
pub fn contracted_dual_union(ms: &[Matroid], ts: &[Subset]) -> Result<Matroid> {
    let ground = check_bases(ms, ts)?;
    let parts = ms
        .iter()
        .zip(ts)
        .map(|(m, t)| Ok(dual(&contract(m, *t)?)))
        .collect::<Result<Vec<_>>>()?;
    let joined = general_union(&parts)?;
    loop_extend(&joined, ground)
}

/// `max_A |A| - Σ|A ∩ T_i^c| + Σ r_i(E) - Σ r_i(E \ (A ∩ T_i^c))`, checked
/// against `|E| - r_N(E)`.
pub fn lower_bound_contracted_derived(ms: &[Matroid], ts: &[Subset]) -> Result<DerivedBound> {
    let ground = check_bases(ms, ts)?;
    check_enumeration(ground)?;
    let bound = maximize(ground, |a| derived_term(ms, ground, ts, a));
    let n = contracted_dual_union(ms, ts)?;
    let oracle = ground.len() as i64 - n.full_rank() as i64;
    debug_assert_eq!(
        bound.raw, oracle,
        "expanded bound disagrees with |E| - r_N(E)"
    );
    Ok(DerivedBound { bound, oracle })
}

/// Comparison of two families on the subsets of a ground set. Witnesses are
/// the smallest sets (then smallest mask) in each difference.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyComparison {
    pub left_count: usize,
    pub right_count: usize,
    pub left_only: Option<Subset>,
    pub right_only: Option<Subset>,
}

impl FamilyComparison {
    /// Left family ⊆ right family.
    pub fn contained(&self) -> bool {
        self.left_only.is_none()
    }

    pub fn equal(&self) -> bool {
        self.left_only.is_none() && self.right_only.is_none()
    }

    /// Containment holds and is proper.
    pub fn strict(&self) -> bool {
        self.contained() && self.right_only.is_some()
    }
}

fn smaller(a: Option<Subset>, s: Subset) -> Option<Subset> {
    match a {
        Some(w) if (w.len(), w.bits()) <= (s.len(), s.bits()) => Some(w),
        _ => Some(s),
    }
}

pub fn compare_families<L, R>(ground: Subset, left: &L, right: &R) -> Result<FamilyComparison>
where
    L: IndependenceOracle + ?Sized,
    R: IndependenceOracle + ?Sized,
{
    if ground.len() > FAMILY_COMPARISON_CAP {
        return Err(MatroidError::TooLarge {
            what: "ground set for family comparison",
            size: ground.len() as u64,
            cap: FAMILY_COMPARISON_CAP as u64,
        });
    }
    let mut out = FamilyComparison {
        left_count: 0,
        right_count: 0,
        left_only: None,
        right_only: None,
    };
    for s in ground.subsets() {
        let l = left.independent(s);
        let r = right.independent(s);
        out.left_count += usize::from(l);
        out.right_count += usize::from(r);
        if l && !r {
            out.left_only = smaller(out.left_only, s);
        }
        if r && !l {
            out.right_only = smaller(out.right_only, s);
        }
    }
    Ok(out)
}

/// Union of the duals `⊔ F_i*`.
pub fn union_of_duals(ms: &[Matroid]) -> Result<Matroid> {
    let duals: Vec<Matroid> = ms.iter().map(dual).collect();
    union(&duals)
}

/// `(∩ F_i)*` against `⊔ F_i*`. The first is expected to be contained in the
/// second.
pub fn check_dual_containment(ms: &[Matroid]) -> Result<FamilyComparison> {
    let ground = common_ground(ms)?;
    if ground.len() > FAMILY_COMPARISON_CAP {
        return Err(MatroidError::TooLarge {
            what: "ground set for family comparison",
            size: ground.len() as u64,
            cap: FAMILY_COMPARISON_CAP as u64,
        });
    }
    let lhs = intersect(ms)?.dual()?;
    let rhs = union_of_duals(ms)?;
    compare_families(ground, &lhs, &rhs)
}

/// `(∩ M_i)*` against the union of the `(M_i/T_i)*`, loop-extended to `E`.
pub fn check_contracted_containment(ms: &[Matroid], ts: &[Subset]) -> Result<FamilyComparison> {
    let ground = common_ground(ms)?;
    if ground.len() > FAMILY_COMPARISON_CAP {
        return Err(MatroidError::TooLarge {
            what: "ground set for family comparison",
            size: ground.len() as u64,
            cap: FAMILY_COMPARISON_CAP as u64,
        });
    }
    let lhs = intersect(ms)?.dual()?;
    let rhs = contracted_dual_union(ms, ts)?;
    compare_families(ground, &lhs, &rhs)
}

/// Two-matroid dual equality check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualEqualityReport {
    pub comparison: FamilyComparison,
    pub intersection_is_matroid: bool,
}

impl DualEqualityReport {
    pub fn equal(&self) -> bool {
        self.comparison.equal()
    }

    /// Equality is claimed whenever the intersection is a matroid.
    pub fn claim_violated(&self) -> bool {
        self.intersection_is_matroid && !self.equal()
    }
}

pub fn check_dual_equality_two(m1: &Matroid, m2: &Matroid) -> Result<DualEqualityReport> {
    let ms = [m1.clone(), m2.clone()];
    let comparison = check_dual_containment(&ms)?;
    let intersection_is_matroid = is_matroid(&intersect(&ms)?)?.holds;
    Ok(DualEqualityReport {
        comparison,
        intersection_is_matroid,
    })
}
