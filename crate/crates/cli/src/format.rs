//! JSON matroid and instance files.

use serde::{Deserialize, Serialize};

use matroid_core::intersection::Chain;
use matroid_core::{Construction, GroundSet, Matroid, MatroidError, Subset};

/// Largest ground set written out as an explicit family.
pub const EXPLICIT_EMIT_CAP: usize = 14;

// causes are rendered inline, so none is exposed as a source
#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("malformed document: {0}")]
    Syntax(serde_json::Error),

    #[error("key `{key}`: {error}")]
    Key { key: String, error: MatroidError },
}

impl From<serde_json::Error> for FileError {
    fn from(e: serde_json::Error) -> Self {
        FileError::Syntax(e)
    }
}

fn at(key: impl Into<String>) -> impl FnOnce(MatroidError) -> FileError {
    let key = key.into();
    move |error| FileError::Key { key, error }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum MatroidFile {
    Uniform {
        n: usize,
        k: usize,
    },
    Graphic {
        vertices: usize,
        edges: Vec<[usize; 2]>,
    },
    Linear {
        prime: u32,
        columns: Vec<Vec<u32>>,
    },
    Partition {
        blocks: Vec<Vec<usize>>,
        capacities: Vec<usize>,
    },
    Explicit {
        n: usize,
        /// Absent when the ground set is all of `0..n`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ground: Option<Vec<usize>>,
        independent: Vec<Vec<usize>>,
    },
}

fn subset(n: usize, xs: &[usize], key: String) -> Result<Subset, FileError> {
    Subset::from_indices(n, xs.iter().copied()).map_err(at(key))
}

impl MatroidFile {
    /// Builds and validates the matroid. Errors name the offending key.
    pub fn to_matroid(&self) -> Result<Matroid, FileError> {
        match self {
            MatroidFile::Uniform { n, k } => {
                GroundSet::new(*n).map_err(at("n"))?;
                Matroid::uniform(*n, *k).map_err(at("k"))
            }
            MatroidFile::Graphic { vertices, edges } => {
                let edges = edges.iter().map(|&[u, v]| (u, v)).collect();
                Matroid::graphic(*vertices, edges).map_err(at("edges"))
            }
            MatroidFile::Linear { prime, columns } => {
                Matroid::linear(*prime, columns.clone()).map_err(at("columns"))
            }
            MatroidFile::Partition { blocks, capacities } => {
                Matroid::partition(blocks.clone(), capacities.clone()).map_err(at("blocks"))
            }
            MatroidFile::Explicit {
                n,
                ground,
                independent,
            } => {
                GroundSet::new(*n).map_err(at("n"))?;
                let ground = match ground {
                    Some(g) => subset(*n, g, "ground".into())?,
                    None => Subset::full(*n),
                };
                let sets = independent
                    .iter()
                    .enumerate()
                    .map(|(i, s)| subset(*n, s, format!("independent[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                Matroid::explicit_on(ground, &sets).map_err(at("independent"))
            }
        }
    }

    /// The file for `m`. Constructions map to their own type; anything
    /// derived becomes an explicit family, if the ground set is small enough.
    pub fn from_matroid(m: &Matroid) -> Result<Self, FileError> {
        let n = m.universe();
        let full = m.ground() == Subset::full(n);
        Ok(match m.construction() {
            Construction::Uniform { k } if full => MatroidFile::Uniform { n, k: *k },
            Construction::Graphic { vertices, edges } if full => MatroidFile::Graphic {
                vertices: *vertices,
                edges: edges.iter().map(|&(u, v)| [u, v]).collect(),
            },
            Construction::Linear { prime, columns } if full => MatroidFile::Linear {
                prime: *prime,
                columns: columns.clone(),
            },
            Construction::Partition { blocks, capacities } if full => MatroidFile::Partition {
                blocks: blocks.iter().map(Subset::to_vec).collect(),
                capacities: capacities.clone(),
            },
            _ => {
                if m.ground().len() > EXPLICIT_EMIT_CAP {
                    return Err(FileError::Key {
                        key: "independent".into(),
                        error: MatroidError::TooLarge {
                            what: "ground set for an explicit file",
                            size: m.ground().len() as u64,
                            cap: EXPLICIT_EMIT_CAP as u64,
                        },
                    });
                }
                let independent = m
                    .independent_sets()
                    .map_err(at("independent"))?
                    .iter()
                    .map(Subset::to_vec)
                    .collect();
                MatroidFile::Explicit {
                    n,
                    ground: (!full).then(|| m.ground().to_vec()),
                    independent,
                }
            }
        })
    }
}

pub fn parse_matroid(text: &str) -> Result<Matroid, FileError> {
    let file: MatroidFile = serde_json::from_str(text)?;
    file.to_matroid()
}

pub fn serialize_matroid(m: &Matroid) -> Result<String, FileError> {
    Ok(serde_json::to_string_pretty(&MatroidFile::from_matroid(
        m,
    )?)?)
}

/// Several matroids on a common ground set, with optional declared
/// covering bases and chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub matroids: Vec<MatroidFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covering_bases: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub id: Option<String>,
    pub matroids: Vec<Matroid>,
    pub covering_bases: Option<Vec<Subset>>,
    pub chain: Option<Chain>,
}

impl InstanceFile {
    pub fn from_matroids(id: Option<String>, ms: &[Matroid]) -> Result<Self, FileError> {
        Ok(InstanceFile {
            id,
            matroids: ms
                .iter()
                .map(MatroidFile::from_matroid)
                .collect::<Result<_, _>>()?,
            covering_bases: None,
            chain: None,
        })
    }

    pub fn load(&self) -> Result<Instance, FileError> {
        let matroids = self
            .matroids
            .iter()
            .enumerate()
            .map(|(i, f)| {
                f.to_matroid().map_err(|e| match e {
                    FileError::Key { key, error } => FileError::Key {
                        key: format!("matroids[{i}].{key}"),
                        error,
                    },
                    other => other,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if matroids.is_empty() {
            return Err(at("matroids")(MatroidError::Invalid("no matroids".into())));
        }
        let n = matroids[0].universe();
        if let Some(i) = matroids.iter().position(|m| m.universe() != n) {
            return Err(at(format!("matroids[{i}]"))(MatroidError::GroundMismatch(
                format!("size {} differs from {n}", matroids[i].universe()),
            )));
        }
        let lists = |key: &str, xs: &[Vec<usize>]| -> Result<Vec<Subset>, FileError> {
            xs.iter()
                .enumerate()
                .map(|(i, s)| subset(n, s, format!("{key}[{i}]")))
                .collect()
        };
        let covering_bases = match &self.covering_bases {
            Some(ts) => Some(lists("covering_bases", ts)?),
            None => None,
        };
        let chain = match &self.chain {
            Some(levels) => Some(Chain::new(lists("chain", levels)?).map_err(at("chain"))?),
            None => None,
        };
        Ok(Instance {
            id: self.id.clone(),
            matroids,
            covering_bases,
            chain,
        })
    }
}

/// A single instance object or an array of them.
pub fn parse_instances(text: &str) -> Result<Vec<InstanceFile>, FileError> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum OneOrMany {
        Many(Vec<InstanceFile>),
        One(InstanceFile),
    }
    // untagged enums hide the inner error, so retry for a located message
    match serde_json::from_str::<OneOrMany>(text) {
        Ok(OneOrMany::Many(v)) => Ok(v),
        Ok(OneOrMany::One(i)) => Ok(vec![i]),
        Err(_) => {
            if text.trim_start().starts_with('[') {
                Ok(serde_json::from_str::<Vec<InstanceFile>>(text)?)
            } else {
                Ok(vec![serde_json::from_str::<InstanceFile>(text)?])
            }
        }
    }
}
