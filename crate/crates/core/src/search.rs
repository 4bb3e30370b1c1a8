//! Backtracking Hamilton-cycle search with pruning, certificates and verification.
//!
//! The search starts at vertex 0 and branches on the lowest-index neighbour
//! first. At each node it applies, in order: a forced-move rule (an unvisited
//! neighbour of the head with one remaining exit must be entered next), a
//! residual-degree test, and a 2-connectivity test on the unvisited region
//! joined to both path ends.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::graph::SimpleGraph;

/// Default node budget for a search.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonCertificate {
    pub graph_hash: String,
    pub cycle: Vec<usize>,
}

impl HamiltonCertificate {
    pub fn new(graph: &SimpleGraph, cycle: Vec<usize>) -> Self {
        Self {
            graph_hash: graph.hash(),
            cycle,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub pruned_degree: u64,
    pub pruned_forced: u64,
    pub pruned_connectivity: u64,
    pub pruned_articulation: u64,
    pub pruned_reentry: u64,
}

impl SearchStats {
    fn absorb(&mut self, o: &SearchStats) {
        self.nodes += o.nodes;
        self.pruned_degree += o.pruned_degree;
        self.pruned_forced += o.pruned_forced;
        self.pruned_connectivity += o.pruned_connectivity;
        self.pruned_articulation += o.pruned_articulation;
        self.pruned_reentry += o.pruned_reentry;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found {
        certificate: HamiltonCertificate,
        stats: SearchStats,
    },
    ExhaustedNone {
        stats: SearchStats,
    },
    BudgetExceeded {
        stats: SearchStats,
    },
}

impl SearchOutcome {
    pub fn stats(&self) -> &SearchStats {
        match self {
            SearchOutcome::Found { stats, .. }
            | SearchOutcome::ExhaustedNone { stats }
            | SearchOutcome::BudgetExceeded { stats } => stats,
        }
    }

    pub fn certificate(&self) -> Option<&HamiltonCertificate> {
        match self {
            SearchOutcome::Found { certificate, .. } => Some(certificate),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SearchOutcome::Found { .. } => "found",
            SearchOutcome::ExhaustedNone { .. } => "exhausted_none",
            SearchOutcome::BudgetExceeded { .. } => "budget_exceeded",
        }
    }
}

/// Restricts how often the path may enter each cell of a partition.
#[derive(Clone, Debug)]
pub struct EntryBound {
    pub cell_of: Vec<usize>,
    pub max_entries: u32,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub budget: u64,
    pub workers: usize,
    /// Per-vertex neighbour order; defaults to increasing index.
    pub neighbor_order: Option<Vec<Vec<usize>>>,
    pub entry_bound: Option<EntryBound>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            workers: 1,
            neighbor_order: None,
            entry_bound: None,
        }
    }
}

impl SearchOptions {
    pub fn with_budget(budget: u64) -> Self {
        Self {
            budget,
            ..Self::default()
        }
    }

    /// Orders each vertex's neighbours by plan position of their cell: same cell
    /// first, then the next cell of `cell_rank`'s cyclic order, then the rest.
    pub fn orbit_hint(graph: &SimpleGraph, cell_of: &[usize], cell_rank: &[usize]) -> Vec<Vec<usize>> {
        let m = cell_rank.len().max(1);
        (0..graph.order())
            .map(|v| {
                let rv = cell_rank[cell_of[v]];
                let mut ns = graph.neighbors(v).to_vec();
                ns.sort_by_key(|&w| {
                    let rw = cell_rank[cell_of[w]];
                    let class = if rw == rv {
                        0
                    } else if rw == (rv + 1) % m {
                        1
                    } else {
                        2
                    };
                    (class, w)
                });
                ns
            })
            .collect()
    }
}

/// Whether `cycle` is a Hamilton cycle of `graph`, with a reason when not.
pub fn check_cycle(graph: &SimpleGraph, cycle: &[usize]) -> std::result::Result<(), String> {
    let n = graph.order();
    if n < 3 {
        return Err(format!("order {n} admits no Hamilton cycle"));
    }
    if cycle.len() != n {
        return Err(format!("cycle has {} vertices, graph has {n}", cycle.len()));
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v >= n {
            return Err(format!("vertex {v} out of range"));
        }
        if seen[v] {
            return Err(format!("vertex {v} repeated"));
        }
        seen[v] = true;
    }
    for i in 0..n {
        let (a, b) = (cycle[i], cycle[(i + 1) % n]);
        if !graph.has_edge(a, b) {
            return Err(format!("step {i}: {a} and {b} are not adjacent"));
        }
    }
    Ok(())
}

/// Hash match plus [`check_cycle`].
pub fn verify_certificate(graph: &SimpleGraph, cert: &HamiltonCertificate) -> bool {
    cert.graph_hash == graph.hash() && check_cycle(graph, &cert.cycle).is_ok()
}

struct BitMatrix {
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(g: &SimpleGraph) -> Self {
        let n = g.order();
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        for (u, v) in g.edges() {
            bits[u * words + v / 64] |= 1 << (v % 64);
            bits[v * words + u / 64] |= 1 << (u % 64);
        }
        Self { words, bits }
    }

    #[inline]
    fn get(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
    Budget,
}

enum Cut {
    Disconnected,
    Articulation,
}

/// Shared controls for a parallel run.
struct Shared<'a> {
    nodes: &'a AtomicU64,
    /// Lowest task index that has produced a cycle; tasks above it abort.
    best: &'a AtomicUsize,
    abort: &'a AtomicBool,
}

struct Engine<'a> {
    adj: &'a [Vec<usize>],
    mat: &'a BitMatrix,
    n: usize,
    start: usize,
    visited: Vec<bool>,
    /// Unvisited neighbours of every vertex.
    free: Vec<u32>,
    path: Vec<usize>,
    entries: Vec<u32>,
    bound: Option<&'a EntryBound>,
    budget: u64,
    stats: SearchStats,
    // Scratch for the 2-connectivity test.
    disc: Vec<u32>,
    low: Vec<u32>,
    stamp: Vec<u32>,
    epoch: u32,
    shared: Option<(&'a Shared<'a>, usize)>,
    local_nodes: u64,
}

impl<'a> Engine<'a> {
    fn new(adj: &'a [Vec<usize>], mat: &'a BitMatrix, budget: u64, bound: Option<&'a EntryBound>) -> Self {
        let n = adj.len();
        let cells = bound.map_or(0, |b| b.cell_of.iter().max().map_or(0, |m| m + 1));
        let mut e = Self {
            adj,
            mat,
            n,
            start: 0,
            visited: vec![false; n],
            free: adj.iter().map(|r| r.len() as u32).collect(),
            path: Vec::with_capacity(n),
            entries: vec![0; cells],
            bound,
            budget,
            stats: SearchStats::default(),
            disc: vec![0; n],
            low: vec![0; n],
            stamp: vec![0; n],
            epoch: 0,
            shared: None,
            local_nodes: 0,
        };
        e.visit(0);
        e
    }

    fn visit(&mut self, v: usize) {
        self.visited[v] = true;
        self.path.push(v);
        for &w in &self.adj[v] {
            self.free[w] -= 1;
        }
        if let Some(b) = self.bound {
            let c = b.cell_of[v];
            let prev = self.path.len().checked_sub(2).map(|i| b.cell_of[self.path[i]]);
            if prev != Some(c) {
                self.entries[c] += 1;
            }
        }
    }

    fn unvisit(&mut self) {
        let v = self.path.pop().expect("nonempty path");
        self.visited[v] = false;
        for &w in &self.adj[v] {
            self.free[w] += 1;
        }
        if let Some(b) = self.bound {
            let c = b.cell_of[v];
            let prev = self.path.last().map(|&u| b.cell_of[u]);
            if prev != Some(c) {
                self.entries[c] -= 1;
            }
        }
    }

    fn reentry_blocked(&self, from: usize, to: usize) -> bool {
        match self.bound {
            Some(b) => {
                let (cf, ct) = (b.cell_of[from], b.cell_of[to]);
                cf != ct && self.entries[ct] >= b.max_entries
            }
            None => false,
        }
    }

    fn tick(&mut self) -> bool {
        self.stats.nodes += 1;
        match self.shared {
            None => self.stats.nodes > self.budget,
            Some((sh, task)) => {
                self.local_nodes += 1;
                if self.local_nodes == 256 {
                    sh.nodes.fetch_add(256, Ordering::Relaxed);
                    self.local_nodes = 0;
                }
                sh.abort.load(Ordering::Relaxed)
                    || sh.best.load(Ordering::Relaxed) < task
                    || sh.nodes.load(Ordering::Relaxed) > self.budget
            }
        }
    }

    /// 2-connectivity of the unvisited region plus both path ends joined by a
    /// virtual edge.
    fn cut_test(&mut self) -> Option<Cut> {
        let head = *self.path.last().expect("nonempty");
        let start = self.start;
        let remaining = self.n - self.path.len();
        if remaining == 0 {
            return None;
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        let epoch = self.epoch;
        let in_region = |e: &Self, w: usize| !e.visited[w] || w == head || w == start;
        let target = remaining + if head == start { 1 } else { 2 };
        let mut time = 0u32;
        let mut stack: Vec<(usize, usize, usize)> = vec![(head, usize::MAX, 0)];
        self.stamp[head] = epoch;
        self.disc[head] = time;
        self.low[head] = time;
        time += 1;
        let mut root_children = 0;
        let mut articulation = false;
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            let deg = self.adj[v].len();
            // Index `deg` stands for the virtual edge between head and start.
            if *idx <= deg {
                let i = *idx;
                *idx += 1;
                let w = if i < deg {
                    self.adj[v][i]
                } else if v == head && head != start {
                    start
                } else if v == start && head != start {
                    head
                } else {
                    continue;
                };
                if !in_region(self, w) {
                    continue;
                }
                if self.stamp[w] != epoch {
                    self.stamp[w] = epoch;
                    self.disc[w] = time;
                    self.low[w] = time;
                    time += 1;
                    if v == head {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if w != parent {
                    self.low[v] = self.low[v].min(self.disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    self.low[parent] = self.low[parent].min(self.low[v]);
                    if parent != head && self.low[v] >= self.disc[parent] {
                        articulation = true;
                    }
                }
            }
        }
        if (time as usize) < target {
            return Some(Cut::Disconnected);
        }
        if articulation || root_children > 1 {
            return Some(Cut::Articulation);
        }
        None
    }

    fn run(&mut self, sink: &mut dyn FnMut(&[usize]) -> bool) -> Flow {
        if self.tick() {
            return Flow::Budget;
        }
        let head = *self.path.last().expect("nonempty");
        if self.path.len() == self.n {
            if self.mat.get(head, self.start) && self.n >= 3 {
                return if sink(&self.path) { Flow::Continue } else { Flow::Stop };
            }
            return Flow::Continue;
        }
        let last_step = self.path.len() + 1 == self.n;
        let mut forced = None;
        if !last_step {
            for &x in &self.adj[head] {
                if self.visited[x] {
                    continue;
                }
                let exits = self.free[x] + u32::from(self.mat.get(x, self.start));
                if exits <= 1 {
                    if exits == 0 || forced.is_some() {
                        self.stats.pruned_forced += 1;
                        return Flow::Continue;
                    }
                    forced = Some(x);
                }
            }
        }
        let adj = self.adj;
        let candidates: &[usize] = match &forced {
            Some(x) => std::slice::from_ref(x),
            None => &adj[head],
        };
        for &x in candidates {
            if self.visited[x] {
                continue;
            }
            if self.reentry_blocked(head, x) {
                self.stats.pruned_reentry += 1;
                continue;
            }
            self.visit(x);
            if let Some(flow) = self.prune_after_move(head, x) {
                self.unvisit();
                if flow == Flow::Continue {
                    continue;
                }
                return flow;
            }
            let flow = self.run(sink);
            self.unvisit();
            if flow != Flow::Continue {
                return flow;
            }
        }
        Flow::Continue
    }

    /// Returns `Some(Continue)` when the move is pruned.
    fn prune_after_move(&mut self, old: usize, new: usize) -> Option<Flow> {
        if self.path.len() == self.n {
            return None;
        }
        if old != self.start {
            for &y in &self.adj[old] {
                if self.visited[y] {
                    continue;
                }
                let avail = self.free[y] + u32::from(self.mat.get(y, new)) + u32::from(self.mat.get(y, self.start));
                if avail < 2 {
                    self.stats.pruned_degree += 1;
                    return Some(Flow::Continue);
                }
            }
        }
        match self.cut_test() {
            Some(Cut::Disconnected) => {
                self.stats.pruned_connectivity += 1;
                Some(Flow::Continue)
            }
            Some(Cut::Articulation) => {
                self.stats.pruned_articulation += 1;
                Some(Flow::Continue)
            }
            None => None,
        }
    }

    /// Prefixes of length up to `depth + 1` surviving the pruning rules, in
    /// branching order. Paths that already close are returned as is.
    fn prefixes(&mut self, depth: usize, out: &mut Vec<Vec<usize>>) {
        let head = *self.path.last().expect("nonempty");
        if self.path.len() > depth || self.path.len() == self.n {
            out.push(self.path.clone());
            return;
        }
        let adj = self.adj;
        for &x in &adj[head] {
            if self.visited[x] || self.reentry_blocked(head, x) {
                continue;
            }
            self.visit(x);
            if self.prune_after_move(head, x).is_none() {
                self.prefixes(depth, out);
            }
            self.unvisit();
        }
    }
}

fn prepare(graph: &SimpleGraph, opts: &SearchOptions) -> (Vec<Vec<usize>>, BitMatrix) {
    let adj = match &opts.neighbor_order {
        Some(o) => o.clone(),
        None => (0..graph.order()).map(|v| graph.neighbors(v).to_vec()).collect(),
    };
    (adj, BitMatrix::new(graph))
}

fn trivially_none(graph: &SimpleGraph) -> bool {
    graph.order() < 3 || graph.min_degree() < 2 || !graph.is_connected()
}

/// Calls `sink` with every Hamilton cycle starting at vertex 0 (each undirected
/// cycle appears once per direction) until it returns `false`.
pub fn for_each_hamilton_cycle(
    graph: &SimpleGraph,
    opts: &SearchOptions,
    mut sink: impl FnMut(&[usize]) -> bool,
) -> (bool, SearchStats) {
    if trivially_none(graph) {
        return (true, SearchStats::default());
    }
    let (adj, mat) = prepare(graph, opts);
    let mut e = Engine::new(&adj, &mat, opts.budget, opts.entry_bound.as_ref());
    let flow = e.run(&mut sink);
    (flow != Flow::Budget, e.stats)
}

/// Searches for a Hamilton cycle. The result is verified before it is returned.
pub fn hamilton_search(graph: &SimpleGraph, opts: &SearchOptions) -> SearchOutcome {
    if trivially_none(graph) {
        return SearchOutcome::ExhaustedNone {
            stats: SearchStats::default(),
        };
    }
    let outcome = if opts.workers > 1 {
        parallel_search(graph, opts)
    } else {
        let mut found = None;
        let (complete, stats) = for_each_hamilton_cycle(graph, opts, |c| {
            found = Some(c.to_vec());
            false
        });
        match found {
            Some(cycle) => SearchOutcome::Found {
                certificate: HamiltonCertificate::new(graph, cycle),
                stats,
            },
            None if complete => SearchOutcome::ExhaustedNone { stats },
            None => SearchOutcome::BudgetExceeded { stats },
        }
    };
    if let SearchOutcome::Found { certificate, .. } = &outcome {
        assert!(
            verify_certificate(graph, certificate),
            "search produced an invalid certificate"
        );
    }
    outcome
}

fn parallel_search(graph: &SimpleGraph, opts: &SearchOptions) -> SearchOutcome {
    let (adj, mat) = prepare(graph, opts);
    let bound = opts.entry_bound.as_ref();
    let mut seed = Engine::new(&adj, &mat, opts.budget, bound);
    let mut tasks = Vec::new();
    seed.prefixes(2, &mut tasks);
    let mut stats = seed.stats;

    let nodes = AtomicU64::new(stats.nodes);
    let best = AtomicUsize::new(usize::MAX);
    let abort = AtomicBool::new(false);
    let shared = Shared {
        nodes: &nodes,
        best: &best,
        abort: &abort,
    };
    let next = AtomicUsize::new(0);
    // Per task: Some(cycle) when found, or whether the subtree was exhausted.
    let results: Mutex<Vec<(Option<Vec<usize>>, bool)>> = Mutex::new(vec![(None, false); tasks.len()]);
    let worker_stats: Mutex<SearchStats> = Mutex::new(SearchStats::default());

    std::thread::scope(|scope| {
        for _ in 0..opts.workers.min(tasks.len().max(1)) {
            scope.spawn(|| {
                let mut local = SearchStats::default();
                loop {
                    let t = next.fetch_add(1, Ordering::SeqCst);
                    if t >= tasks.len() || best.load(Ordering::SeqCst) < t {
                        break;
                    }
                    let mut e = Engine::new(&adj, &mat, opts.budget, bound);
                    for &v in &tasks[t][1..] {
                        e.visit(v);
                    }
                    e.shared = Some((&shared, t));
                    let mut found = None;
                    let flow = e.run(&mut |c: &[usize]| {
                        found = Some(c.to_vec());
                        false
                    });
                    local.absorb(&e.stats);
                    let exhausted = flow == Flow::Continue;
                    if found.is_some() {
                        best.fetch_min(t, Ordering::SeqCst);
                    }
                    results.lock().expect("results lock")[t] = (found, exhausted);
                }
                worker_stats.lock().expect("stats lock").absorb(&local);
            });
        }
    });
    stats.absorb(&worker_stats.into_inner().expect("stats lock"));
    let results = results.into_inner().expect("results lock");
    if let Some((cycle, _)) = results.iter().find(|(c, _)| c.is_some()) {
        return SearchOutcome::Found {
            certificate: HamiltonCertificate::new(graph, cycle.clone().expect("found")),
            stats,
        };
    }
    if results.iter().all(|(_, exhausted)| *exhausted) {
        SearchOutcome::ExhaustedNone { stats }
    } else {
        SearchOutcome::BudgetExceeded { stats }
    }
}

/// Complete exhaustion without a cycle, with the statistics of the run.
pub fn prove_nonhamiltonian(graph: &SimpleGraph, budget: u64) -> Option<SearchStats> {
    match hamilton_search(graph, &SearchOptions::with_budget(budget)) {
        SearchOutcome::ExhaustedNone { stats } => Some(stats),
        _ => None,
    }
}

/// A Hamilton path beginning at `start`, by plain backtracking with a
/// connectivity test. Intended for small quotient graphs.
pub fn hamilton_path_from(graph: &SimpleGraph, start: usize, budget: u64) -> Option<Vec<usize>> {
    let n = graph.order();
    if start >= n {
        return None;
    }
    let mut visited = vec![false; n];
    let mut path = vec![start];
    visited[start] = true;
    let mut nodes = 0u64;
    fn reachable_all(g: &SimpleGraph, visited: &[bool], head: usize) -> bool {
        let mut seen = visited.to_vec();
        let mut stack = vec![head];
        let mut count = visited.iter().filter(|&&v| v).count();
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == g.order()
    }
    fn go(g: &SimpleGraph, visited: &mut Vec<bool>, path: &mut Vec<usize>, nodes: &mut u64, budget: u64) -> bool {
        *nodes += 1;
        if path.len() == g.order() {
            return true;
        }
        if *nodes > budget {
            return false;
        }
        let head = *path.last().expect("nonempty");
        if !reachable_all(g, visited, head) {
            return false;
        }
        for &w in g.neighbors(head) {
            if visited[w] {
                continue;
            }
            visited[w] = true;
            path.push(w);
            if go(g, visited, path, nodes, budget) {
                return true;
            }
            path.pop();
            visited[w] = false;
        }
        false
    }
    go(graph, &mut visited, &mut path, &mut nodes, budget).then_some(path)
}
