//! Quotient multigraphs, lifting of quotient cycles along a semiregular
//! automorphism of prime order, and the degree-3 guided search.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::perm::SemiregularDecomposition;
use crate::search::{
    hamilton_path_from, hamilton_search, EntryBound, HamiltonCertificate, SearchOptions,
};

#[derive(Clone, Debug, Serialize)]
pub struct QuotientMultigraph {
    pub cells: Vec<Vec<usize>>,
    /// `d(A, B)` when the pair is bi-regular, else 0.
    pub multiplicity: Vec<Vec<usize>>,
    /// Adjacent pairs `(A, B)`, `A < B`, that are not bi-regular.
    pub irregular: Vec<(usize, usize)>,
    /// Valency of the subgraph induced on each cell, when regular.
    pub internal: Vec<Option<usize>>,
    /// Cells joined whenever any edge runs between them.
    pub underlying: SimpleGraph,
}

impl QuotientMultigraph {
    pub fn is_bi_regular(&self) -> bool {
        self.irregular.is_empty()
    }

    /// DOT with multiplicities as edge labels.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph \"{}\" {{\n", name.replace('"', ""));
        for (c, cell) in self.cells.iter().enumerate() {
            let _ = writeln!(s, "  {c} [label=\"{c} ({})\"];", cell.len());
        }
        for (a, b) in self.underlying.edges() {
            let m = self.multiplicity[a][b];
            let label = if m == 0 { "?".to_string() } else { m.to_string() };
            let _ = writeln!(s, "  {a} -- {b} [label=\"{label}\"];");
        }
        s.push_str("}\n");
        s
    }
}

/// Cell index of every vertex, validating that `cells` partitions `0..order`.
pub fn cell_index(order: usize, cells: &[Vec<usize>]) -> Result<Vec<usize>> {
    let mut cell_of = vec![usize::MAX; order];
    for (c, cell) in cells.iter().enumerate() {
        if cell.is_empty() {
            return Err(Error::InvalidPartition("empty cell".into()));
        }
        for &v in cell {
            if v >= order || cell_of[v] != usize::MAX {
                return Err(Error::InvalidPartition(format!("vertex {v} out of range or repeated")));
            }
            cell_of[v] = c;
        }
    }
    if cell_of.contains(&usize::MAX) {
        return Err(Error::InvalidPartition("cells do not cover all vertices".into()));
    }
    Ok(cell_of)
}

pub fn quotient_multigraph(x: &SimpleGraph, cells: &[Vec<usize>]) -> Result<QuotientMultigraph> {
    let cell_of = cell_index(x.order(), cells)?;
    let m = cells.len();
    // Least and greatest number of neighbours a vertex of A has in B.
    let mut min_deg = vec![vec![usize::MAX; m]; m];
    let mut max_deg = vec![vec![0usize; m]; m];
    for (a, cell) in cells.iter().enumerate() {
        let mut count = vec![0usize; m];
        for &v in cell {
            count.iter_mut().for_each(|c| *c = 0);
            for &w in x.neighbors(v) {
                count[cell_of[w]] += 1;
            }
            for b in 0..m {
                min_deg[a][b] = min_deg[a][b].min(count[b]);
                max_deg[a][b] = max_deg[a][b].max(count[b]);
            }
        }
    }
    let mut multiplicity = vec![vec![0; m]; m];
    let mut irregular = Vec::new();
    let mut edges = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            if max_deg[a][b] == 0 && max_deg[b][a] == 0 {
                continue;
            }
            edges.push((a, b));
            let regular = min_deg[a][b] == max_deg[a][b]
                && min_deg[b][a] == max_deg[b][a]
                && max_deg[a][b] == max_deg[b][a];
            if regular {
                multiplicity[a][b] = max_deg[a][b];
                multiplicity[b][a] = max_deg[a][b];
            } else {
                irregular.push((a, b));
            }
        }
    }
    let internal = (0..m)
        .map(|a| (min_deg[a][a] == max_deg[a][a]).then_some(max_deg[a][a]))
        .collect();
    Ok(QuotientMultigraph {
        cells: cells.to_vec(),
        multiplicity,
        irregular,
        internal,
        underlying: SimpleGraph::from_edges(m, edges)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LiftKind {
    LongCycle { cycle: Vec<usize> },
    DisjointCycles { cycles: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftResult {
    #[serde(flatten)]
    pub kind: LiftKind,
    pub source_cycle: Vec<usize>,
    /// Position shift used on each quotient edge `C_i -> C_{i+1}`.
    pub voltages: Vec<usize>,
    /// Sum of the voltages modulo the orbit length.
    pub net: usize,
}

impl LiftResult {
    pub fn long_cycle(&self) -> Option<&[usize]> {
        match &self.kind {
            LiftKind::LongCycle { cycle } => Some(cycle),
            LiftKind::DisjointCycles { .. } => None,
        }
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Whether `seq` is a cycle of `x`: distinct vertices, consecutive ones
/// adjacent, last adjacent to first.
pub fn is_cycle_in(x: &SimpleGraph, seq: &[usize]) -> bool {
    let k = seq.len();
    if k < 3 {
        return false;
    }
    let mut seen = std::collections::HashSet::with_capacity(k);
    seq.iter().all(|&v| v < x.order() && seen.insert(v))
        && (0..k).all(|i| x.has_edge(seq[i], seq[(i + 1) % k]))
}

/// Offsets `s` such that the first point of orbit `a` is adjacent to the point
/// at position `s` of orbit `b`, in increasing order.
pub fn voltage_set(x: &SimpleGraph, rho: &SemiregularDecomposition, pos: &[usize], a: usize, b: usize) -> Vec<usize> {
    let a0 = rho.orbits[a][0];
    let mut out: Vec<usize> = x
        .neighbors(a0)
        .iter()
        .filter(|&&w| rho.orbits[b].contains(&w))
        .map(|&w| pos[w])
        .collect();
    out.sort_unstable();
    out
}

/// Lifts the quotient cycle `c` (orbit indices of `rho`) to `x`.
///
/// Along every quotient edge the least voltage is taken. When the total is 0
/// modulo `p`, the first quotient edge with a second voltage is redirected
/// through it. The lift is a single `kp`-cycle when the total is nonzero, and
/// `p` disjoint `k`-cycles otherwise.
pub fn lift_cycle(x: &SimpleGraph, rho: &SemiregularDecomposition, c: &[usize]) -> Result<LiftResult> {
    let p = rho.n;
    if !is_prime(p) {
        return Err(Error::InvalidParams(format!("orbit length {p} is not prime")));
    }
    if rho.perm.degree() != x.order() || !x.is_automorphism(&rho.perm) {
        return Err(Error::NotAutomorphism);
    }
    let k = c.len();
    if k < 2 {
        return Err(Error::NotACycle("a quotient cycle needs at least two cells".into()));
    }
    let mut seen = vec![false; rho.m];
    for &a in c {
        if a >= rho.m || seen[a] {
            return Err(Error::NotACycle(format!("cell {a} out of range or repeated")));
        }
        seen[a] = true;
    }
    let pos = rho.positions();
    let sets: Vec<Vec<usize>> = (0..k)
        .map(|i| voltage_set(x, rho, &pos, c[i], c[(i + 1) % k]))
        .collect();
    for (i, s) in sets.iter().enumerate() {
        if s.is_empty() {
            return Err(Error::NoLiftEdge(c[i], c[(i + 1) % k]));
        }
    }
    let mut voltages: Vec<usize> = sets.iter().map(|s| s[0]).collect();
    if k == 2 {
        // The return edge must differ from the outgoing one: s1 + s2 != 0.
        let back = sets[1].iter().copied().find(|&s| !(voltages[0] + s).is_multiple_of(p));
        match back {
            Some(s) => voltages[1] = s,
            None => {
                return Err(Error::NotACycle(
                    "a 2-cycle in the quotient needs a multiple edge".into(),
                ))
            }
        }
    }
    let net_of = |v: &[usize]| v.iter().sum::<usize>() % p;
    if net_of(&voltages) == 0 {
        'redirect: for i in 0..k {
            for &s in &sets[i][1..] {
                let mut trial = voltages.clone();
                trial[i] = s;
                if net_of(&trial) != 0 {
                    voltages = trial;
                    break 'redirect;
                }
            }
        }
    }
    let net = net_of(&voltages);
    let at = |cell: usize, j: usize| rho.orbits[cell][j % p];
    let kind = if net != 0 {
        let mut cycle = Vec::with_capacity(k * p);
        let mut j = 0;
        for _ in 0..p {
            for i in 0..k {
                cycle.push(at(c[i], j));
                j = (j + voltages[i]) % p;
            }
        }
        if !is_cycle_in(x, &cycle) {
            return Err(Error::NotACycle("lifted sequence failed verification".into()));
        }
        LiftKind::LongCycle { cycle }
    } else {
        let cycles: Vec<Vec<usize>> = (0..p)
            .map(|start| {
                let mut j = start;
                c.iter()
                    .zip(&voltages)
                    .map(|(&cell, &s)| {
                        let v = at(cell, j);
                        j = (j + s) % p;
                        v
                    })
                    .collect()
            })
            .collect();
        if k >= 3 && !cycles.iter().all(|cy| is_cycle_in(x, cy)) {
            return Err(Error::NotACycle("lifted sequence failed verification".into()));
        }
        LiftKind::DisjointCycles { cycles }
    };
    Ok(LiftResult {
        kind,
        source_cycle: c.to_vec(),
        voltages,
        net,
    })
}

/// Dirac-type guarantee for connected vertex-transitive graphs: minimum degree
/// at least a third of the order.
pub fn jackson_guarantee(x: &SimpleGraph) -> bool {
    x.order() >= 3 && x.is_connected() && 3 * x.min_degree() >= x.order()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuidedPlan {
    /// Orbit indices forming a Hamilton path of the quotient, ending at `heavy`.
    pub orbit_path: Vec<usize>,
    /// An orbit whose induced subgraph has valency at least 3.
    pub heavy: usize,
    pub cells: Vec<Vec<usize>>,
}

/// Connected orbit subgraphs, one of valency at least 3, and a quotient
/// Hamilton path ending at that orbit.
pub fn check_deg3_hypotheses(x: &SimpleGraph, rho: &SemiregularDecomposition) -> Option<GuidedPlan> {
    if rho.n < 4 || rho.perm.degree() != x.order() {
        return None;
    }
    let mut heavy = Vec::new();
    for (i, orbit) in rho.orbits.iter().enumerate() {
        let sub = x.induced(orbit).ok()?;
        if !sub.is_connected() {
            return None;
        }
        if sub.regular_degree().is_some_and(|d| d >= 3) {
            heavy.push(i);
        }
    }
    let q = quotient_multigraph(x, &rho.orbits).ok()?;
    for h in heavy {
        if let Some(mut path) = hamilton_path_from(&q.underlying, h, 1_000_000) {
            path.reverse();
            return Some(GuidedPlan {
                orbit_path: path,
                heavy: h,
                cells: rho.orbits.clone(),
            });
        }
    }
    None
}

/// Search steered by the plan: neighbours in the same orbit first, then the
/// next orbit of the plan. A pass with each orbit entered at most twice runs
/// first, then an unrestricted pass. Failure is not a refutation.
pub fn guided_hamilton(x: &SimpleGraph, plan: &GuidedPlan, budget: u64) -> Result<HamiltonCertificate> {
    let cell_of = cell_index(x.order(), &plan.cells)?;
    let mut rank = vec![0; plan.cells.len()];
    for (r, &c) in plan.orbit_path.iter().enumerate() {
        rank[c] = r;
    }
    let order = SearchOptions::orbit_hint(x, &cell_of, &rank);
    let passes = [Some(2u32), None];
    for bound in passes {
        let opts = SearchOptions {
            budget: budget / 2,
            workers: 1,
            neighbor_order: Some(order.clone()),
            entry_bound: bound.map(|max_entries| EntryBound {
                cell_of: cell_of.clone(),
                max_entries,
            }),
        };
        if let Some(cert) = hamilton_search(x, &opts).certificate() {
            return Ok(cert.clone());
        }
    }
    Err(Error::GuidedFailed(format!(
        "no cycle within budget {budget} along plan {:?}",
        plan.orbit_path
    )))
}
