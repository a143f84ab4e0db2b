use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use matroid_cli::format::{
    parse_instances, serialize_matroid, Instance, InstanceFile, MatroidFile,
};
use matroid_cli::report::{generated_instances, run_audit};
use matroid_core::axioms::{check_matroid_axioms, check_rank_properties};
use matroid_core::generate::{generate_random, Family};
use matroid_core::intersection::{max_common_independent_bruteforce, max_common_two_augmenting};
use matroid_core::ops::{contract, delete, dual, general_union, restrict};
use matroid_core::search::{counterexample_search, SearchConfig};
use matroid_core::subset::parse_index_list;
use matroid_core::Matroid;

/// Matroid constructions, minors, unions and exhaustive bound audits.
///
/// Matroid files are JSON objects with a "type" key (uniform, graphic,
/// linear, partition or explicit). Instance files hold {"matroids": [...]}
/// with optional "id", "covering_bases" and "chain" keys, or an array of
/// such objects.
#[derive(Parser)]
#[command(name = "matroid", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the independence axioms and rank properties of a matroid file
    Check { file: PathBuf },
    /// Rank of a subset
    Rank {
        file: PathBuf,
        /// Comma-separated element indices, e.g. 0,2,3 (empty for the empty set)
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Emit the dual matroid
    Dual {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Emit the deletion M \ X
    Delete(MinorArgs),
    /// Emit the contraction M / X
    Contract(MinorArgs),
    /// Emit the restriction of M to C
    Restrict(MinorArgs),
    /// Emit the union of several matroids on one universe; differing ground
    /// sets are loop-extended
    Union {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Largest common independent set: brute force, plus augmenting paths
    /// for two matroids
    IntersectMax {
        /// One instance file, or several matroid files
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Audit every bound on a batch of instances and write CSV
    BoundsAudit {
        /// Instance file; when absent, instances are generated
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        gen: GenArgs,
        #[command(flatten)]
        out: Out,
    },
    /// Search random instances where the dual of the intersection differs
    /// from the union of the duals
    FindCounterexample {
        /// Comma-separated families to draw from
        #[arg(long, default_value = "partition")]
        family: String,
        /// Ground-set size, or a range such as 2-6 (at most 8)
        #[arg(long, default_value = "4")]
        n: String,
        /// Number of matroids, or a range such as 2-3 (at most 3)
        #[arg(long, default_value = "2")]
        m: String,
        /// Number of instances to draw
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use m copies of one generated matroid
        #[arg(long)]
        identical: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Generate random instances as an instance file
    Generate {
        #[command(flatten)]
        gen: GenArgs,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args)]
struct MinorArgs {
    file: PathBuf,
    /// Comma-separated element indices
    #[arg(long, allow_hyphen_values = true)]
    set: String,
    #[command(flatten)]
    out: Out,
}

#[derive(Args)]
struct GenArgs {
    /// uniform, graphic, linear, partition or mixed
    #[arg(long, default_value = "mixed")]
    family: String,
    /// Ground-set size
    #[arg(long, default_value_t = 6)]
    n: usize,
    /// Number of matroids per instance
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Number of instances; instance i uses seed + i
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct Out {
    /// Output path; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Out {
    fn write(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => {
                io::stdout().write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }

    fn writer(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(p) => Box::new(io::BufWriter::new(
                fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
            )),
            None => Box::new(io::stdout().lock()),
        })
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_matroid(path: &Path) -> Result<Matroid> {
    let file: MatroidFile = serde_json::from_str(&read(path)?)
        .with_context(|| format!("parsing {}", path.display()))?;
    file.to_matroid()
        .with_context(|| format!("in {}", path.display()))
}

fn load_instances(path: &Path) -> Result<Vec<Instance>> {
    let files =
        parse_instances(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    files
        .iter()
        .enumerate()
        .map(|(i, f)| {
            f.load()
                .with_context(|| format!("instance {i} of {}", path.display()))
        })
        .collect()
}

fn emit(m: &Matroid, out: &Out) -> Result<()> {
    let mut text = serialize_matroid(m)?;
    text.push('\n');
    out.write(&text)
}

fn range(text: &str) -> Result<RangeInclusive<usize>> {
    let parse = |s: &str| -> Result<usize> {
        s.trim()
            .parse()
            .with_context(|| format!("bad number {s:?}"))
    };
    match text.split_once('-') {
        Some((a, b)) => Ok(parse(a)?..=parse(b)?),
        None => {
            let v = parse(text)?;
            Ok(v..=v)
        }
    }
}

fn families(text: &str) -> Result<Vec<Family>> {
    text.split(',')
        .map(|s| Ok(s.trim().parse::<Family>()?))
        .collect()
}

#[derive(Serialize)]
struct FoundInstance {
    index: usize,
    family: String,
    n: usize,
    m: usize,
    seed: u64,
    /// Smallest set in the union of the duals only.
    witness: Option<Vec<usize>>,
    /// Smallest set in the dual of the intersection only; never expected.
    violation: Option<Vec<usize>>,
    dual_of_intersection_count: usize,
    union_of_duals_count: usize,
    instance: InstanceFile,
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Check { file } => {
            let m = load_matroid(&file)?;
            println!("matroid: {}", m.describe());
            println!("ground set: {}", m.ground());
            println!("rank: {}", m.full_rank());
            match check_matroid_axioms(&m) {
                Ok(r) => println!("axioms: {r}"),
                Err(e) => println!("axioms: skipped ({e})"),
            }
            match check_rank_properties(&m) {
                Ok(r) => println!("rank properties: {r}"),
                Err(e) => println!("rank properties: skipped ({e})"),
            }
        }
        Command::Rank { file, set } => {
            let m = load_matroid(&file)?;
            let s = parse_index_list(m.universe(), &set)?;
            println!("{}", m.rank(s)?);
        }
        Command::Dual { file, out } => emit(&dual(&load_matroid(&file)?), &out)?,
        Command::Delete(a) => {
            let m = load_matroid(&a.file)?;
            emit(
                &delete(&m, parse_index_list(m.universe(), &a.set)?)?,
                &a.out,
            )?
        }
        Command::Contract(a) => {
            let m = load_matroid(&a.file)?;
            emit(
                &contract(&m, parse_index_list(m.universe(), &a.set)?)?,
                &a.out,
            )?
        }
        Command::Restrict(a) => {
            let m = load_matroid(&a.file)?;
            emit(
                &restrict(&m, parse_index_list(m.universe(), &a.set)?)?,
                &a.out,
            )?
        }
        Command::Union { files, out } => {
            let ms = files
                .iter()
                .map(|f| load_matroid(f))
                .collect::<Result<Vec<_>>>()?;
            emit(&general_union(&ms)?, &out)?
        }
        Command::IntersectMax { files } => {
            let ms = if files.len() == 1 {
                let mut insts = load_instances(&files[0])?;
                if insts.len() != 1 {
                    bail!("expected one instance, found {}", insts.len());
                }
                insts.remove(0).matroids
            } else {
                files
                    .iter()
                    .map(|f| load_matroid(f))
                    .collect::<Result<Vec<_>>>()?
            };
            let best = max_common_independent_bruteforce(&ms)?;
            println!("brute force: {} {}", best.size, best.witness);
            if let [m1, m2] = ms.as_slice() {
                let aug = max_common_two_augmenting(m1, m2)?;
                println!("augmenting: {} {}", aug.size, aug.witness);
            }
        }
        Command::BoundsAudit { input, gen, out } => {
            let instances = match input {
                Some(p) => load_instances(&p)?,
                None => {
                    generated_instances(gen.family.parse()?, gen.n, gen.m, gen.count, gen.seed)?
                }
            };
            run_audit(out.writer()?, &instances)?;
        }
        Command::FindCounterexample {
            family,
            n,
            m,
            count,
            seed,
            identical,
            out,
        } => {
            let config = SearchConfig {
                families: families(&family)?,
                n: range(&n)?,
                m: range(&m)?,
                count,
                identical,
            };
            let found = counterexample_search(&config, seed)?
                .into_iter()
                .map(|ce| {
                    Ok(FoundInstance {
                        index: ce.draw.index,
                        family: ce.draw.family.to_string(),
                        n: ce.draw.n,
                        m: ce.draw.m,
                        seed: ce.draw.seed,
                        witness: ce.comparison.right_only.map(|s| s.to_vec()),
                        violation: ce.comparison.left_only.map(|s| s.to_vec()),
                        dual_of_intersection_count: ce.comparison.left_count,
                        union_of_duals_count: ce.comparison.right_count,
                        instance: InstanceFile::from_matroids(
                            Some(format!("draw-{}", ce.draw.index)),
                            &ce.matroids,
                        )?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            out.write(&(serde_json::to_string_pretty(&found)? + "\n"))?;
        }
        Command::Generate { gen, out } => {
            let family: Family = gen.family.parse()?;
            let files = (0..gen.count)
                .map(|i| {
                    let s = gen.seed.wrapping_add(i as u64);
                    let ms = generate_random(family, gen.n, gen.m, s)?;
                    Ok(InstanceFile::from_matroids(
                        Some(format!("{family}-n{}-m{}-s{s}", gen.n, gen.m)),
                        &ms,
                    )?)
                })
                .collect::<Result<Vec<_>>>()?;
            let text = if files.len() == 1 {
                serde_json::to_string_pretty(&files[0])?
            } else {
                serde_json::to_string_pretty(&files)?
            };
            out.write(&(text + "\n"))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
