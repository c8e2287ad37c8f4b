//! Corpus descriptions: comma-separated items naming families, built-in
//! collections, or `.ggr` files.
//!
//! ```text
//! builtin:paper-families    builtin:cycles
//! cycle:N:NUM/DEN           complete:N[:ones|:flip|:SEED]
//! bipartite:A:B[:ones|:flip|:SEED]
//! path:N                    random:N:MAXDEG:SEED
//! file:PATH
//! ```

use std::path::PathBuf;

use thiserror::Error;

use crate::angle::GainAngle;
use crate::families::{FamilySpec, GainPolicy};
use crate::graph::{parse_gain_graph, GainGraph};
use crate::spectral::MAX_ORDER;

use super::VerifyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("unknown corpus item `{0}`")]
    UnknownItem(String),
    #[error("unknown built-in corpus `{0}`")]
    UnknownBuiltin(String),
    #[error("bad parameter `{param}` in `{item}`")]
    BadParameter { item: String, param: String },
    #[error("wrong number of parameters in `{0}`")]
    Arity(String),
    #[error("order {got} in `{item}` exceeds the limit {max}")]
    TooLarge {
        item: String,
        got: usize,
        max: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    PaperFamilies,
    Cycles,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusItem {
    Family(FamilySpec),
    Builtin(Builtin),
    File(PathBuf),
}

/// A named graph in a corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub id: String,
    pub graph: GainGraph,
}

pub fn parse_corpus_spec(spec: &str) -> Result<Vec<CorpusItem>, CorpusError> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse_item)
        .collect()
}

fn parse_item(item: &str) -> Result<CorpusItem, CorpusError> {
    let (kind, rest) = item.split_once(':').unwrap_or((item, ""));
    if kind == "file" {
        if rest.is_empty() {
            return Err(CorpusError::Arity(item.to_string()));
        }
        return Ok(CorpusItem::File(PathBuf::from(rest)));
    }
    if kind == "builtin" {
        return match rest {
            "paper-families" => Ok(CorpusItem::Builtin(Builtin::PaperFamilies)),
            "cycles" => Ok(CorpusItem::Builtin(Builtin::Cycles)),
            other => Err(CorpusError::UnknownBuiltin(other.to_string())),
        };
    }
    let params: Vec<&str> = if rest.is_empty() {
        Vec::new()
    } else {
        rest.split(':').collect()
    };
    let bad = |param: &str| CorpusError::BadParameter {
        item: item.to_string(),
        param: param.to_string(),
    };
    let arity = || CorpusError::Arity(item.to_string());
    let order = |p: &str| -> Result<usize, CorpusError> {
        let n: usize = p.parse().map_err(|_| bad(p))?;
        if n > MAX_ORDER {
            return Err(CorpusError::TooLarge {
                item: item.to_string(),
                got: n,
                max: MAX_ORDER,
            });
        }
        Ok(n)
    };
    let policy = |p: Option<&&str>| -> Result<GainPolicy, CorpusError> {
        match p.copied() {
            None | Some("ones") => Ok(GainPolicy::AllOnes),
            Some("flip") => Ok(GainPolicy::OneFlipped),
            Some(s) => s.parse().map(GainPolicy::Seeded).map_err(|_| bad(s)),
        }
    };
    let spec = match (kind, params.as_slice()) {
        ("cycle", [n, gain]) => FamilySpec::Cycle {
            n: order(n)?,
            gain: gain.parse::<GainAngle>().map_err(|_| bad(gain))?,
        },
        ("complete", [n, tail @ ..]) if tail.len() <= 1 => FamilySpec::Complete {
            n: order(n)?,
            policy: policy(tail.first())?,
        },
        ("bipartite", [a, b, tail @ ..]) if tail.len() <= 1 => {
            let (a, b) = (order(a)?, order(b)?);
            if a + b > MAX_ORDER {
                return Err(CorpusError::TooLarge {
                    item: item.to_string(),
                    got: a + b,
                    max: MAX_ORDER,
                });
            }
            FamilySpec::CompleteBipartite {
                a,
                b,
                policy: policy(tail.first())?,
            }
        }
        ("path", [n]) => FamilySpec::Path { n: order(n)? },
        ("random", [n, d, seed]) => FamilySpec::RandomConnected {
            n: order(n)?,
            max_deg: d.parse().map_err(|_| bad(d))?,
            seed: seed.parse().map_err(|_| bad(seed))?,
        },
        ("cycle" | "complete" | "bipartite" | "path" | "random", _) => return Err(arity()),
        _ => return Err(CorpusError::UnknownItem(item.to_string())),
    };
    Ok(CorpusItem::Family(spec))
}

/// Families of a built-in corpus, in a fixed order.
pub fn builtin_families(b: Builtin) -> Vec<FamilySpec> {
    let angle = |num, den| GainAngle::new(num, den).unwrap();
    let mut out = Vec::new();
    match b {
        Builtin::Cycles => {
            for gain in [angle(0, 1), angle(1, 1), angle(1, 2)] {
                for n in 3..=12 {
                    out.push(FamilySpec::Cycle { n, gain });
                }
            }
        }
        Builtin::PaperFamilies => {
            for gain in [angle(0, 1), angle(1, 1), angle(1, 2), angle(1, 3)] {
                for n in 3..=12 {
                    out.push(FamilySpec::Cycle { n, gain });
                }
            }
            for n in 2..=8 {
                for policy in [
                    GainPolicy::AllOnes,
                    GainPolicy::Seeded(1),
                    GainPolicy::Seeded(2),
                    GainPolicy::Seeded(3),
                ] {
                    out.push(FamilySpec::Complete { n, policy });
                }
            }
            for a in 1..=4 {
                for b in 1..=a {
                    for policy in [GainPolicy::AllOnes, GainPolicy::OneFlipped] {
                        out.push(FamilySpec::CompleteBipartite { a, b, policy });
                    }
                }
            }
            for seed in 0..20u64 {
                let n = 4 + (seed % 7) as usize;
                let max_deg = 3 + (seed % 2) as usize;
                out.push(FamilySpec::RandomConnected { n, max_deg, seed });
            }
        }
    }
    out
}

/// Expands items into numbered instances. Ids are `NNNN-label`.
pub fn build_instances(items: &[CorpusItem]) -> Result<Vec<Instance>, VerifyError> {
    let mut named: Vec<(String, GainGraph)> = Vec::new();
    for item in items {
        match item {
            CorpusItem::Family(spec) => named.push((spec.label(), spec.build()?)),
            CorpusItem::Builtin(b) => {
                for spec in builtin_families(*b) {
                    named.push((spec.label(), spec.build()?));
                }
            }
            CorpusItem::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| VerifyError::Io {
                    path: path.clone(),
                    source,
                })?;
                let graph = parse_gain_graph(&text).map_err(|source| VerifyError::Graph {
                    path: path.clone(),
                    source,
                })?;
                let stem = path
                    .file_stem()
                    .map_or_else(|| "file".into(), |s| s.to_string_lossy().into_owned());
                named.push((format!("file-{stem}"), graph));
            }
        }
    }
    Ok(named
        .into_iter()
        .enumerate()
        .map(|(k, (label, graph))| Instance {
            id: format!("{k:04}-{label}"),
            graph,
        })
        .collect())
}

pub fn build_corpus(spec: &str) -> Result<Vec<Instance>, VerifyError> {
    build_instances(&parse_corpus_spec(spec)?)
}
