//! Independent oracles and random instances shared by the integration tests.
#![allow(dead_code)]

use matroid_core::generate::{random_matroid, Family};
use matroid_core::{Construction, Matroid, Subset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn set(n: usize, xs: &[usize]) -> Subset {
    Subset::from_indices(n, xs.iter().copied()).unwrap()
}

pub fn family_from(index: usize) -> Family {
    Family::ALL[index % Family::ALL.len()]
}

/// `m` matroids on `0..n`; with `Family::Mixed` each member is drawn
/// independently.
pub fn instance(family: Family, n: usize, m: usize, seed: u64) -> Vec<Matroid> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..m)
        .map(|_| random_matroid(family, n, &mut rng).unwrap())
        .collect()
}

/// A random matroid over GF(3), which the generator never produces.
pub fn ternary(n: usize, seed: u64) -> Matroid {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = rng.gen_range(1..=n.max(1));
    let columns = (0..n)
        .map(|_| (0..rows).map(|_| rng.gen_range(0..3)).collect())
        .collect();
    Matroid::linear(3, columns).unwrap()
}

/// Independence straight from the construction's definition, without the
/// library's rank routines.
pub fn defining_oracle(m: &Matroid, s: Subset) -> bool {
    match m.construction() {
        Construction::Uniform { k } => s.len() <= *k,
        Construction::Partition { blocks, capacities } => blocks
            .iter()
            .zip(capacities)
            .all(|(b, &c)| s.intersection(*b).len() <= c),
        Construction::Graphic { vertices, edges } => is_forest(*vertices, edges, s),
        Construction::Linear { prime, columns } => columns_independent(*prime, columns, s),
        Construction::Explicit { family } => family.contains(&s.bits()),
        Construction::Derived(_) => panic!("no defining oracle for derived matroids"),
    }
}

/// A forest has exactly `|V| - components` edges; components by repeated
/// relabeling.
fn is_forest(vertices: usize, edges: &[(usize, usize)], s: Subset) -> bool {
    let mut label: Vec<usize> = (0..vertices).collect();
    loop {
        let mut changed = false;
        for e in s.iter() {
            let (u, v) = edges[e];
            let low = label[u].min(label[v]);
            for w in [u, v] {
                if label[w] != low {
                    label[w] = low;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let components = (0..vertices).filter(|&v| label[v] == v).count();
    vertices - components == s.len()
}

/// No non-trivial combination of the chosen columns vanishes.
fn columns_independent(prime: u32, columns: &[Vec<u32>], s: Subset) -> bool {
    let chosen: Vec<&Vec<u32>> = s.iter().map(|i| &columns[i]).collect();
    let k = chosen.len();
    let rows = columns.first().map_or(0, Vec::len);
    let total = (prime as u64).pow(k as u32);
    for code in 1..total {
        let mut coeffs = Vec::with_capacity(k);
        let mut c = code;
        for _ in 0..k {
            coeffs.push((c % prime as u64) as u32);
            c /= prime as u64;
        }
        let vanishes = (0..rows).all(|r| {
            chosen
                .iter()
                .zip(&coeffs)
                .map(|(col, &a)| col[r] * a)
                .sum::<u32>()
                % prime
                == 0
        });
        if vanishes {
            return false;
        }
    }
    true
}

/// Largest independent subset, by enumeration.
pub fn brute_rank(m: &Matroid, x: Subset) -> usize {
    x.subsets()
        .filter(|&s| m.is_independent(s).unwrap())
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}

/// Whether `x` splits into parts independent in the respective matroids,
/// trying every assignment.
pub fn partible(ms: &[Matroid], x: Subset) -> bool {
    let elems = x.to_vec();
    let m = ms.len();
    if m == 0 {
        return x.is_empty();
    }
    let total = m.pow(elems.len() as u32);
    (0..total).any(|code| {
        let mut parts = vec![Subset::empty(x.universe()); m];
        let mut c = code;
        for &e in &elems {
            parts[c % m] = parts[c % m].with(e);
            c /= m;
        }
        parts
            .iter()
            .zip(ms)
            .all(|(p, mi)| mi.is_independent(*p).unwrap())
    })
}

/// Every chain `X ⊆ X_1 ⊆ .. ⊆ X_{m-2} ⊆ E` by nested submask enumeration.
pub fn chain_minimum(ms: &[Matroid], ground: Subset) -> usize {
    fn go(ms: &[Matroid], top: Subset, levels_left: usize) -> usize {
        // ms[..=levels_left] still to place inside `top`
        if levels_left == 0 {
            return ms[0].rank(top).unwrap();
        }
        top.subsets()
            .map(|inner| {
                go(ms, inner, levels_left - 1)
                    + ms[levels_left].rank(top.difference(inner)).unwrap()
            })
            .min()
            .unwrap()
    }
    go(ms, ground, ms.len() - 1)
}

/// Largest common independent set, by enumeration.
pub fn brute_optimum(ms: &[Matroid], ground: Subset) -> usize {
    ground
        .subsets()
        .filter(|&s| ms.iter().all(|m| m.is_independent(s).unwrap()))
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}

/// Sets disjoint from some basis.
pub fn coindependent(m: &Matroid, s: Subset) -> bool {
    m.bases().unwrap().iter().any(|b| b.is_disjoint(s))
}
