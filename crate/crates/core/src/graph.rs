//! Undirected simple graphs with sorted adjacency lists.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl SimpleGraph {
    /// Edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Self {
        Self {
            adj: vec![Vec::new(); order],
            labels: None,
        }
    }

    /// Builds a graph from an edge list; duplicate edges collapse, loops are rejected.
    pub fn from_edges(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); order];
        for (u, v) in edges {
            if u == v || u >= order || v >= order {
                return Err(Error::InvalidEdge(u, v));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for row in adj.iter_mut() {
            row.sort_unstable();
            row.dedup();
        }
        Ok(Self { adj, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order() {
            return Err(Error::InvalidParams(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.order()
            )));
        }
        let mut sorted = labels.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParams("vertex labels are not unique".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, row) in self.adj.iter().enumerate() {
            for &v in row.iter().filter(|&&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Common degree when the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first()?.len();
        self.adj.iter().all(|r| r.len() == d).then_some(d)
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut cells = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < cells.len() {
                let u = cells[i];
                i += 1;
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        cells.push(w);
                    }
                }
            }
            cells.sort_unstable();
            out.push(cells);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.order() > 0 && self.components().len() == 1
    }

    /// Length of a shortest cycle, if any.
    pub fn girth(&self) -> Option<usize> {
        let n = self.order();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        for s in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            parent[s] = usize::MAX;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        q.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        (best != usize::MAX).then_some(best)
    }

    /// Canonical text form of the edge set: a header line followed by one `u v` per edge.
    pub fn canonical_edge_list(&self) -> String {
        let mut s = format!("order {}\n", self.order());
        for (u, v) in self.edges() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    /// Hex SHA-256 of [`Self::canonical_edge_list`].
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_edge_list().as_bytes()))
    }

    /// One edge per line, `u v`.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for (u, v) in self.edges() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    /// Parses `u v` lines. Blank lines and `#` comments are skipped. The order is
    /// `order` when given, else one more than the largest endpoint.
    pub fn parse_edge_list(text: &str, order: Option<usize>) -> Result<Self> {
        let mut edges = Vec::new();
        let mut max = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) => {
                    max = Some(max.unwrap_or(0).max(u).max(v));
                    edges.push((u, v));
                }
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: expected two vertex indices",
                        lineno + 1
                    )))
                }
            }
        }
        let n = order.unwrap_or_else(|| max.map_or(0, |m| m + 1));
        Self::from_edges(n, edges)
    }

    /// Graphviz form. Vertex labels are emitted when present.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph {} {{\n", dot_id(name));
        if let Some(labels) = &self.labels {
            for (v, l) in labels.iter().enumerate() {
                let _ = writeln!(s, "  {v} [label=\"{}\"];", l.replace('"', "\\\""));
            }
        } else {
            for v in 0..self.order() {
                let _ = writeln!(s, "  {v};");
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(s, "  {u} -- {v};");
        }
        s.push_str("}\n");
        s
    }

    /// Subgraph induced on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        let mut pos = vec![usize::MAX; self.order()];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.order() || pos[v] != usize::MAX {
                return Err(Error::InvalidParams(format!("vertex {v} out of range or repeated")));
            }
            pos[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                if pos[w] != usize::MAX && pos[w] > i {
                    edges.push((i, pos[w]));
                }
            }
        }
        let g = Self::from_edges(vertices.len(), edges)?;
        self.inherit_labels(g, vertices)
    }

    /// Bipartite subgraph with parts `u` then `w`; only edges across the parts are kept.
    pub fn bipartite_between(&self, u: &[usize], w: &[usize]) -> Result<Self> {
        let mut side = vec![0u8; self.order()];
        let mut pos = vec![usize::MAX; self.order()];
        for (i, &v) in u.iter().enumerate() {
            if v >= self.order() || side[v] != 0 {
                return Err(Error::InvalidParams(format!("vertex {v} out of range or repeated")));
            }
            side[v] = 1;
            pos[v] = i;
        }
        for (i, &v) in w.iter().enumerate() {
            if v >= self.order() {
                return Err(Error::InvalidParams(format!("vertex {v} out of range")));
            }
            if side[v] != 0 {
                return Err(Error::Overlap);
            }
            side[v] = 2;
            pos[v] = u.len() + i;
        }
        let mut edges = Vec::new();
        for &v in u {
            for &x in &self.adj[v] {
                if side[x] == 2 {
                    edges.push((pos[v], pos[x]));
                }
            }
        }
        let g = Self::from_edges(u.len() + w.len(), edges)?;
        let all: Vec<usize> = u.iter().chain(w).copied().collect();
        self.inherit_labels(g, &all)
    }

    fn inherit_labels(&self, g: Self, vertices: &[usize]) -> Result<Self> {
        match &self.labels {
            Some(l) => g.with_labels(vertices.iter().map(|&v| l[v].clone()).collect()),
            None => Ok(g),
        }
    }

    /// Common degree of the induced subgraph on `u`, if regular.
    pub fn regular_valency(&self, u: &[usize]) -> Option<usize> {
        let mut inside = vec![false; self.order()];
        for &v in u {
            if v >= self.order() {
                return None;
            }
            inside[v] = true;
        }
        let mut common = None;
        for &v in u {
            let d = self.adj[v].iter().filter(|&&w| inside[w]).count();
            match common {
                None => common = Some(d),
                Some(c) if c != d => return None,
                _ => {}
            }
        }
        common
    }

    /// Common cross degree when every vertex of `u` has `d` neighbours in `w` and
    /// every vertex of `w` has `d` neighbours in `u`.
    pub fn regular_bivalency(&self, u: &[usize], w: &[usize]) -> Option<usize> {
        let n = self.order();
        let mut in_u = vec![false; n];
        let mut in_w = vec![false; n];
        for &v in u {
            if v >= n {
                return None;
            }
            in_u[v] = true;
        }
        for &v in w {
            if v >= n || in_u[v] {
                return None;
            }
            in_w[v] = true;
        }
        let mut common = None;
        let sides = u
            .iter()
            .map(|&v| (v, &in_w))
            .chain(w.iter().map(|&v| (v, &in_u)));
        for (v, other) in sides {
            let d = self.adj[v].iter().filter(|&&x| other[x]).count();
            match common {
                None => common = Some(d),
                Some(c) if c != d => return None,
                _ => {}
            }
        }
        common
    }

    /// Whether `p` maps edges to edges.
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.order()
            && self
                .edges()
                .into_iter()
                .all(|(u, v)| self.has_edge(p.apply(u), p.apply(v)))
    }

    /// Image of the graph under a relabelling `v -> p(v)`.
    pub fn relabeled(&self, p: &Permutation) -> Result<Self> {
        if p.degree() != self.order() {
            return Err(Error::DegreeMismatch {
                expected: self.order(),
                found: p.degree(),
            });
        }
        let g = Self::from_edges(
            self.order(),
            self.edges().into_iter().map(|(u, v)| (p.apply(u), p.apply(v))),
        )?;
        match &self.labels {
            Some(l) => {
                let mut nl = vec![String::new(); l.len()];
                for (v, lab) in l.iter().enumerate() {
                    nl[p.apply(v)] = lab.clone();
                }
                g.with_labels(nl)
            }
            None => Ok(g),
        }
    }

    /// An isomorphism `self -> other` as an image table, by backtracking.
    pub fn isomorphism_to(&self, other: &SimpleGraph) -> Option<Vec<usize>> {
        if self.order() != other.order() || self.edge_count() != other.edge_count() {
            return None;
        }
        let mut da: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut db: Vec<usize> = other.adj.iter().map(Vec::len).collect();
        da.sort_unstable();
        db.sort_unstable();
        if da != db {
            return None;
        }
        let order = self.bfs_order();
        let mut map = vec![usize::MAX; self.order()];
        let mut used = vec![false; other.order()];
        if extend_iso(self, other, &order, 0, &mut map, &mut used, &|_, _| true) {
            Some(map)
        } else {
            None
        }
    }

    pub fn is_isomorphic(&self, other: &SimpleGraph) -> bool {
        self.isomorphism_to(other).is_some()
    }

    fn bfs_order(&self) -> Vec<usize> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            out.push(s);
            let mut i = out.len() - 1;
            while i < out.len() {
                let u = out[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        out.push(w);
                    }
                }
            }
        }
        out
    }

    /// Generators of the full automorphism group.
    ///
    /// For each point `i`, with `0..i` fixed, one automorphism is found for every
    /// reachable image of `i`. The collected maps form a strong generating set.
    /// Intended for small graphs.
    pub fn automorphism_generators(&self) -> Vec<Permutation> {
        let n = self.order();
        let mut gens: Vec<Permutation> = Vec::new();
        for i in 0..n {
            let fixed = i;
            let mut reached = vec![false; n];
            reached[i] = true;
            for target in i + 1..n {
                if reached[target] || self.degree(target) != self.degree(i) {
                    continue;
                }
                let order = {
                    let mut o: Vec<usize> = (0..=i).collect();
                    o.extend(self.bfs_order().into_iter().filter(|&v| v > i));
                    o
                };
                let mut map = vec![usize::MAX; n];
                let mut used = vec![false; n];
                let pin = |v: usize, img: usize| {
                    if v < fixed {
                        img == v
                    } else if v == fixed {
                        img == target
                    } else {
                        true
                    }
                };
                if extend_iso(self, self, &order, 0, &mut map, &mut used, &pin) {
                    let p = Permutation::from_images(map).expect("automorphism is a bijection");
                    // Orbit of i under the stabiliser of 0..i grows with each new map.
                    let mut frontier = vec![i];
                    let mut all: Vec<Permutation> =
                        gens.iter().filter(|g| (0..i).all(|x| g.apply(x) == x)).cloned().collect();
                    all.push(p.clone());
                    let mut r = vec![false; n];
                    r[i] = true;
                    while let Some(x) = frontier.pop() {
                        for g in &all {
                            let y = g.apply(x);
                            if !r[y] {
                                r[y] = true;
                                frontier.push(y);
                            }
                        }
                    }
                    reached = r;
                    gens.push(p);
                }
            }
        }
        gens
    }

    /// Full automorphism group as a (possibly trivial) permutation group.
    pub fn automorphism_group(&self) -> PermGroup {
        let gens = self.automorphism_generators();
        if gens.is_empty() {
            PermGroup::trivial(self.order().max(1))
        } else {
            PermGroup::new(self.order(), gens).expect("generators share the graph order")
        }
    }
}

fn dot_id(name: &str) -> String {
    if !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        name.to_string()
    } else {
        format!("\"{}\"", name.replace('"', "\\\""))
    }
}

fn extend_iso(
    a: &SimpleGraph,
    b: &SimpleGraph,
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
    allow: &dyn Fn(usize, usize) -> bool,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    let anchor = a.adj[v].iter().copied().find(|&w| map[w] != usize::MAX);
    let candidates: Vec<usize> = match anchor {
        Some(w) => b.adj[map[w]].to_vec(),
        None => (0..b.order()).collect(),
    };
    for c in candidates {
        if used[c] || b.degree(c) != a.degree(v) || !allow(v, c) {
            continue;
        }
        let consistent = a.adj[v]
            .iter()
            .filter(|&&w| map[w] != usize::MAX)
            .all(|&w| b.has_edge(c, map[w]))
            && mapped_degree_matches(a, b, v, c, map, used);
        if !consistent {
            continue;
        }
        map[v] = c;
        used[c] = true;
        if extend_iso(a, b, order, depth + 1, map, used, allow) {
            return true;
        }
        map[v] = usize::MAX;
        used[c] = false;
    }
    false
}

fn mapped_degree_matches(a: &SimpleGraph, b: &SimpleGraph, v: usize, c: usize, map: &[usize], used: &[bool]) -> bool {
    // Every mapped neighbour of c in b must come from a neighbour of v in a.
    let mapped_a = a.adj[v].iter().filter(|&&w| map[w] != usize::MAX).count();
    let mapped_b = b.adj[c].iter().filter(|&&x| used[x]).count();
    mapped_a == mapped_b
}

/// Standard small graphs used as fixtures and reference objects.
pub mod standard {
    use super::SimpleGraph;

    pub fn cycle(n: usize) -> SimpleGraph {
        SimpleGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn path(n: usize) -> SimpleGraph {
        SimpleGraph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn complete(n: usize) -> SimpleGraph {
        SimpleGraph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            .expect("valid complete graph")
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> SimpleGraph {
        SimpleGraph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
            .expect("valid complete bipartite graph")
    }

    /// Circulant graph on `Z_n` with the given connection offsets (closed under negation here).
    pub fn circulant(n: usize, offsets: &[usize]) -> SimpleGraph {
        let edges = (0..n).flat_map(|i| offsets.iter().map(move |&s| (i, (i + s) % n)));
        SimpleGraph::from_edges(n, edges.filter(|(u, v)| u != v)).expect("valid circulant")
    }

    pub fn hypercube(d: u32) -> SimpleGraph {
        let n = 1usize << d;
        let edges = (0..n).flat_map(|u| (0..d).map(move |b| (u, u ^ (1 << b))).filter(|(u, v)| u < v));
        SimpleGraph::from_edges(n, edges).expect("valid hypercube")
    }
}
