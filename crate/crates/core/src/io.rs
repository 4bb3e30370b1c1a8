//! JSON specs for groups, graphs and certificates.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::build::{bicoset_graph, coset_graph, generalized_petersen, truncation};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::perm::{PermGroup, Permutation};
use crate::pipeline::Producer;
use crate::search::{check_cycle, HamiltonCertificate};

/// `{ "degree": n, "generators": [[images..], ..], "name": .. }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    #[serde(default)]
    pub name: String,
}

impl GroupSpec {
    pub fn from_group(name: impl Into<String>, g: &PermGroup) -> Self {
        Self {
            degree: g.degree(),
            generators: g.generators().iter().map(Permutation::images).collect(),
            name: name.into(),
        }
    }

    pub fn permutations(&self) -> Result<Vec<Permutation>> {
        perms(self.degree, &self.generators)
    }

    pub fn to_group(&self) -> Result<PermGroup> {
        PermGroup::new(self.degree, self.permutations()?)
    }
}

fn perms(degree: usize, lists: &[Vec<usize>]) -> Result<Vec<Permutation>> {
    lists
        .iter()
        .map(|imgs| {
            if imgs.len() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: imgs.len(),
                });
            }
            Permutation::from_images(imgs.clone())
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GraphSpec {
    Coset {
        group: GroupSpec,
        #[serde(default)]
        subgroup: Vec<Vec<usize>>,
        connection: Vec<Vec<usize>>,
    },
    Bicoset {
        group: GroupSpec,
        left: Vec<Vec<usize>>,
        right: Vec<Vec<usize>>,
        connection: Vec<Vec<usize>>,
    },
    Cayley {
        group: GroupSpec,
        connection: Vec<Vec<usize>>,
    },
    Gp {
        n: usize,
        k: usize,
    },
    Truncation {
        base: Box<GraphSpec>,
    },
    Edges {
        #[serde(default)]
        order: Option<usize>,
        edges: Vec<(usize, usize)>,
    },
}

/// A built graph with the group acting on it, when the construction supplies one.
#[derive(Clone, Debug)]
pub struct BuiltGraph {
    pub graph: SimpleGraph,
    pub witness: Option<PermGroup>,
    pub diagnostics: serde_json::Value,
}

impl GraphSpec {
    pub fn build(&self) -> Result<BuiltGraph> {
        match self {
            GraphSpec::Coset {
                group,
                subgroup,
                connection,
            } => {
                let g = group.to_group()?;
                let h = perms(group.degree, subgroup)?;
                let s = perms(group.degree, connection)?;
                let c = coset_graph(&g, &h, &s)?;
                Ok(BuiltGraph {
                    witness: Some(c.witness()),
                    diagnostics: serde_json::to_value(c.diagnostics())?,
                    graph: c.graph,
                })
            }
            GraphSpec::Cayley { group, connection } => GraphSpec::Coset {
                group: group.clone(),
                subgroup: Vec::new(),
                connection: connection.clone(),
            }
            .build(),
            GraphSpec::Bicoset {
                group,
                left,
                right,
                connection,
            } => {
                let g = group.to_group()?;
                let b = bicoset_graph(
                    &g,
                    &perms(group.degree, left)?,
                    &perms(group.degree, right)?,
                    &perms(group.degree, connection)?,
                )?;
                Ok(BuiltGraph {
                    diagnostics: serde_json::json!({
                        "connected": b.connected,
                        "generates": b.generates,
                        "left": b.left,
                        "closed_connection": b.closed_d,
                    }),
                    graph: b.graph,
                    witness: None,
                })
            }
            GraphSpec::Gp { n, k } => Ok(BuiltGraph {
                graph: generalized_petersen(*n, *k)?,
                witness: None,
                diagnostics: serde_json::Value::Null,
            }),
            GraphSpec::Truncation { base } => {
                let b = base.build()?;
                Ok(BuiltGraph {
                    graph: truncation(&b.graph)?,
                    witness: None,
                    diagnostics: serde_json::Value::Null,
                })
            }
            GraphSpec::Edges { order, edges } => {
                let n = order.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
                Ok(BuiltGraph {
                    graph: SimpleGraph::from_edges(n, edges.iter().copied())?,
                    witness: None,
                    diagnostics: serde_json::Value::Null,
                })
            }
        }
    }
}

/// `{ "graph_hash", "order", "cycle", "producer", "trace" }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub graph_hash: String,
    pub order: usize,
    pub cycle: Vec<usize>,
    pub producer: Producer,
    #[serde(default)]
    pub trace: Vec<String>,
}

impl CertificateFile {
    pub fn new(cert: &HamiltonCertificate, producer: Producer, trace: Vec<String>) -> Self {
        Self {
            graph_hash: cert.graph_hash.clone(),
            order: cert.cycle.len(),
            cycle: cert.cycle.clone(),
            producer,
            trace,
        }
    }

    /// Hash, order and cycle all checked against `graph`.
    pub fn verify(&self, graph: &SimpleGraph) -> Result<()> {
        if self.graph_hash != graph.hash() {
            return Err(Error::CertificateRejected("graph hash mismatch".into()));
        }
        if self.order != graph.order() {
            return Err(Error::CertificateRejected(format!(
                "order {} but the graph has {} vertices",
                self.order,
                graph.order()
            )));
        }
        check_cycle(graph, &self.cycle).map_err(Error::CertificateRejected)
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: impl AsRef<Path>) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// A permutation as a JSON image list or in cycle notation such as `(0 1 2)(3 4)`.
pub fn parse_permutation(text: &str, degree: usize) -> Result<Permutation> {
    let t = text.trim();
    if t.starts_with('[') {
        let imgs: Vec<usize> = serde_json::from_str(t)?;
        return perms(degree, &[imgs]).map(|mut v| v.remove(0));
    }
    let mut cycles = Vec::new();
    for chunk in t.split(')') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let body = chunk
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
        let cycle = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|e| Error::Parse(format!("{s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        cycles.push(cycle);
    }
    Permutation::from_cycles(degree, &cycles)
}

/// Blocks as one whitespace-separated line of vertices per block.
pub fn parse_blocks(text: &str) -> Result<Vec<Vec<usize>>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|e| Error::Parse(format!("{s:?}: {e}"))))
                .collect()
        })
        .collect()
}
