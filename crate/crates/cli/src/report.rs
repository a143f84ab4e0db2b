//! Batch audits written as CSV, one row per instance.

use std::io::Write;

use rayon::prelude::*;

use matroid_core::audit::{audit_instance, AuditOptions, BoundReport};
use matroid_core::generate::{generate_random, Family};
use matroid_core::{Matroid, MatroidError};

use crate::format::Instance;

pub const COLUMNS: [&str; 15] = [
    "instance_id",
    "n",
    "m",
    "optimum",
    "edmonds_rhs",
    "filtration_rhs",
    "upper_partition",
    "lower_dual_union_raw",
    "lower_contracted_printed",
    "lower_contracted_derived",
    "covering_found",
    "dual_containment_strict",
    "dual_equality_two",
    "is_matroid_intersection",
    "violation_flags",
];

fn cell<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Cells in [`COLUMNS`] order; inapplicable or skipped values are empty.
pub fn row(id: &str, r: &BoundReport) -> Vec<String> {
    vec![
        id.to_string(),
        r.n.to_string(),
        r.m.to_string(),
        cell(r.optimum.map(|o| o.size)),
        cell(r.edmonds_rhs.as_ref().map(|v| v.value)),
        cell(r.filtration_rhs.as_ref().map(|v| v.value)),
        cell(r.upper_partition.as_ref().map(|v| v.value)),
        cell(r.lower_dual_union.map(|l| l.raw)),
        cell(r.lower_contracted_printed.map(|l| l.raw)),
        cell(r.lower_contracted_derived.map(|d| d.bound.raw)),
        cell(r.covering.as_ref().map(|c| c.found().is_some())),
        cell(r.dual_containment.map(|c| c.strict())),
        cell(r.dual_equality_two.map(|d| d.equal())),
        cell(r.intersection_is_matroid.map(|c| c.holds)),
        r.flags.join(";"),
    ]
}

/// Identifier used for instance `index` when the file gives none.
pub fn instance_id(inst: &Instance, index: usize) -> String {
    inst.id
        .clone()
        .unwrap_or_else(|| format!("instance-{index}"))
}

/// Audits every instance, concurrently, and returns the reports in input
/// order.
pub fn audit_all(instances: &[Instance]) -> Result<Vec<BoundReport>, MatroidError> {
    instances
        .par_iter()
        .map(|inst| {
            let options = AuditOptions {
                covering_bases: inst.covering_bases.clone(),
                chain: inst.chain.clone(),
                search_covering: true,
            };
            audit_instance(&inst.matroids, &options)
        })
        .collect()
}

pub fn write_csv<W: Write>(
    out: W,
    instances: &[Instance],
    reports: &[BoundReport],
) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    for (i, (inst, r)) in instances.iter().zip(reports).enumerate() {
        w.write_record(row(&instance_id(inst, i), r))?;
    }
    w.flush()?;
    Ok(())
}

/// Audits and writes in one step.
pub fn run_audit<W: Write>(out: W, instances: &[Instance]) -> anyhow::Result<Vec<BoundReport>> {
    let reports = audit_all(instances)?;
    write_csv(out, instances, &reports)?;
    Ok(reports)
}

/// `count` generated instances; instance `i` uses seed `seed + i`.
pub fn generated_instances(
    family: Family,
    n: usize,
    m: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<Instance>, MatroidError> {
    (0..count)
        .map(|i| {
            let s = seed.wrapping_add(i as u64);
            let matroids: Vec<Matroid> = generate_random(family, n, m, s)?;
            Ok(Instance {
                id: Some(format!("{family}-n{n}-m{m}-s{s}")),
                matroids,
                covering_bases: None,
                chain: None,
            })
        })
        .collect()
}
