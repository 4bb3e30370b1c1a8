//! Strategy dispatcher: exception detection, the minimum-degree fast path,
//! normal block systems with quotient lifting or family walks, guided search,
//! and plain search as the last resort.

use std::collections::HashSet;
use std::fmt;
use std::time::Instant;

use log::{debug, info};
use serde::{Deserialize, Serialize, Serializer};

use crate::build::is_petersen;
use crate::error::{Error, Result};
use crate::family::{build_block_graph, family_walk, BlockCase, RIM_PAIRS, SPOKE_PAIRS};
use crate::graph::SimpleGraph;
use crate::perm::{element_cap, semiregular_decomposition, BlockSystem, PermGroup, Permutation, SemiregularDecomposition};
use crate::quotient::{
    cell_index, check_deg3_hypotheses, guided_hamilton, jackson_guarantee, lift_cycle, quotient_multigraph, LiftResult,
};
use crate::search::{
    for_each_hamilton_cycle, hamilton_search, verify_certificate, HamiltonCertificate, SearchOptions, SearchOutcome,
    SearchStats, DEFAULT_BUDGET,
};
use crate::union_find::UnionFind;

/// Witness-free inputs up to this order get their automorphism group computed.
pub const AUTOMORPHISM_FALLBACK_ORDER: usize = 30;
/// Quotient Hamilton cycles tried per block system.
pub const QUOTIENT_CYCLE_LIMIT: usize = 64;
/// Semiregular candidates tried by the guided stage.
pub const GUIDED_CANDIDATES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseTag {
    ExceptionPetersen,
    ExceptionTruncatedPetersen,
    Jackson,
    Lift(usize),
    FamilyWalk,
    Deg3Guided,
    FallbackSearch,
    NonHamiltonian,
    Inconclusive,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::ExceptionPetersen => f.write_str("exception_petersen"),
            CaseTag::ExceptionTruncatedPetersen => f.write_str("exception_truncated_petersen"),
            CaseTag::Jackson => f.write_str("jackson"),
            CaseTag::Lift(r) => write!(f, "lift_{r}"),
            CaseTag::FamilyWalk => f.write_str("family_walk"),
            CaseTag::Deg3Guided => f.write_str("deg3_guided"),
            CaseTag::FallbackSearch => f.write_str("fallback_search"),
            CaseTag::NonHamiltonian => f.write_str("non_hamiltonian"),
            CaseTag::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

impl Serialize for CaseTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Producer {
    Search,
    Walk,
    Lift,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DispatchOutcome {
    Certificate {
        producer: Producer,
        certificate: HamiltonCertificate,
    },
    /// Complete exhaustion without a Hamilton cycle.
    Exception { stats: SearchStats },
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockSystemSummary {
    pub description: String,
    pub r: usize,
    pub blocks: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct WalkSummary {
    pub case: BlockCase,
    pub r: usize,
    pub pieces: Vec<String>,
    pub errata: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DispatchTrace {
    pub input: Option<String>,
    pub graph_hash: String,
    pub order: usize,
    pub witness: Option<String>,
    pub block_systems: Vec<BlockSystemSummary>,
    pub case: CaseTag,
    pub outcome: DispatchOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lift: Option<LiftResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub walk: Option<WalkSummary>,
    pub log: Vec<String>,
    pub timings_ms: Vec<(String, f64)>,
}

impl DispatchTrace {
    pub fn exit_code(&self) -> i32 {
        match self.outcome {
            DispatchOutcome::Certificate { .. } => 0,
            DispatchOutcome::Exception { .. } => 2,
            DispatchOutcome::Inconclusive { .. } => 3,
        }
    }

    pub fn certificate(&self) -> Option<&HamiltonCertificate> {
        match &self.outcome {
            DispatchOutcome::Certificate { certificate, .. } => Some(certificate),
            _ => None,
        }
    }

    pub fn producer(&self) -> Option<Producer> {
        match &self.outcome {
            DispatchOutcome::Certificate { producer, .. } => Some(*producer),
            _ => None,
        }
    }

    /// Tag and attached artifacts agree.
    pub fn is_consistent(&self) -> bool {
        let cert = self.certificate().is_some();
        let exc = matches!(self.outcome, DispatchOutcome::Exception { .. });
        match self.case {
            CaseTag::ExceptionPetersen | CaseTag::ExceptionTruncatedPetersen | CaseTag::NonHamiltonian => exc,
            CaseTag::Lift(_) => cert && self.lift.is_some() && self.producer() == Some(Producer::Lift),
            CaseTag::FamilyWalk => cert && self.walk.is_some() && self.producer() == Some(Producer::Walk),
            CaseTag::Jackson | CaseTag::Deg3Guided | CaseTag::FallbackSearch => {
                cert && self.producer() == Some(Producer::Search)
            }
            CaseTag::Inconclusive => matches!(self.outcome, DispatchOutcome::Inconclusive { .. }),
        }
    }

    /// The trace without timings, for run-to-run comparison.
    pub fn deterministic_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("trace serializes");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("timings_ms");
        }
        v
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("graph {} (order {})\n", self.graph_hash, self.order));
        if let Some(w) = &self.witness {
            out.push_str(&format!("witness: {w}\n"));
        }
        for b in &self.block_systems {
            out.push_str(&format!("block system r={} ({} blocks): {}\n", b.r, b.blocks, b.description));
        }
        for line in &self.log {
            out.push_str(&format!("  {line}\n"));
        }
        out.push_str(&format!("case: {}\n", self.case));
        match &self.outcome {
            DispatchOutcome::Certificate { producer, certificate } => out.push_str(&format!(
                "certificate: {producer:?} cycle of length {}\n",
                certificate.cycle.len()
            )),
            DispatchOutcome::Exception { stats } => {
                out.push_str(&format!("no Hamilton cycle: exhausted after {} nodes\n", stats.nodes))
            }
            DispatchOutcome::Inconclusive { reason } => out.push_str(&format!("inconclusive: {reason}\n")),
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct DispatchOptions {
    pub budget: u64,
    pub workers: usize,
    /// Extra block system to try, e.g. for family walks when no witness is known.
    pub blocks: Option<Vec<Vec<usize>>>,
}

impl Default for DispatchOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            workers: 1,
            blocks: None,
        }
    }
}

/// Order 30, cubic, covered by 10 disjoint triangles whose contraction is Petersen.
pub fn is_truncated_petersen(x: &SimpleGraph) -> bool {
    if x.order() != 30 || x.regular_degree() != Some(3) {
        return false;
    }
    let mut tri_of = vec![usize::MAX; 30];
    let mut count = 0;
    for v in 0..30 {
        let nb = x.neighbors(v);
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if v < a && a < b && x.has_edge(a, b) {
                    for w in [v, a, b] {
                        if tri_of[w] != usize::MAX {
                            return false;
                        }
                        tri_of[w] = count;
                    }
                    count += 1;
                }
            }
        }
    }
    if count != 10 || tri_of.contains(&usize::MAX) {
        return false;
    }
    let edges = x
        .edges()
        .into_iter()
        .filter(|&(u, v)| tri_of[u] != tri_of[v])
        .map(|(u, v)| (tri_of[u], tri_of[v]));
    match SimpleGraph::from_edges(10, edges) {
        Ok(q) => q.edge_count() == 15 && is_petersen(&q),
        Err(_) => false,
    }
}

#[derive(Clone, Debug)]
pub struct NormalBlockSystem {
    pub description: String,
    pub r: usize,
    pub system: BlockSystem,
}

/// Orbit systems of normal closures of single elements, deduplicated by
/// partition and ordered by block size.
pub fn classify_normal_block_systems(x: &SimpleGraph, g: &PermGroup) -> Result<Vec<NormalBlockSystem>> {
    check_witness(x, g)?;
    let closed;
    let g = if g.is_cached() {
        g
    } else {
        closed = g.closed(element_cap())?;
        &closed
    };
    let elements = g.cached_elements()?;
    let n = g.degree();
    let mut in_class = vec![false; elements.len()];
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, e) in elements.iter().enumerate() {
        if in_class[i] || e.is_identity() {
            continue;
        }
        let mut class = vec![e.clone()];
        in_class[i] = true;
        let mut k = 0;
        while k < class.len() {
            for h in g.generators() {
                let c = class[k].conjugate_by(h);
                let j = g.index_of(&c).ok_or_else(|| Error::NotSubgroup("conjugate outside the group".into()))?;
                if !in_class[j] {
                    in_class[j] = true;
                    class.push(c);
                }
            }
            k += 1;
        }
        let mut uf = UnionFind::new(n);
        for c in &class {
            for v in 0..n {
                uf.union(v, c.apply(v));
            }
        }
        let cells = uf.cells();
        if cells.len() == 1 {
            continue;
        }
        let system = BlockSystem::from_partition(cells, n)?;
        if seen.insert(system.clone()) {
            out.push(NormalBlockSystem {
                description: format!(
                    "normal closure of an element of order {} (class size {})",
                    e.order(),
                    class.len()
                ),
                r: system.block_size(),
                system,
            });
        }
    }
    out.sort_by(|a, b| (a.r, a.system.blocks()).cmp(&(b.r, b.system.blocks())));
    Ok(out)
}

/// An element of order `q` whose cycles are exactly the given blocks.
pub fn semiregular_from_prime_blocks(g: &PermGroup, blocks: &BlockSystem) -> Result<SemiregularDecomposition> {
    let q = blocks.block_size();
    let elements = g.cached_elements()?;
    let block_of = blocks.block_of();
    for e in elements {
        if e.order() != q as u64 {
            continue;
        }
        if !(0..g.degree()).all(|v| e.apply(v) != v && block_of[e.apply(v)] == block_of[v]) {
            continue;
        }
        if let Some(d) = semiregular_decomposition(e) {
            if d.n == q {
                return Ok(d);
            }
        }
    }
    Err(Error::NoWitness(format!("no element of order {q} cycles the blocks")))
}

fn check_witness(x: &SimpleGraph, g: &PermGroup) -> Result<()> {
    if g.degree() != x.order() {
        return Err(Error::DegreeMismatch {
            expected: x.order(),
            found: g.degree(),
        });
    }
    if !g.generators().iter().all(|p| x.is_automorphism(p)) {
        return Err(Error::NotAutomorphism);
    }
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    Ok(())
}

fn is_prime(n: usize) -> bool {
    crate::family::is_prime(n as u64)
}

/// Block-to-layout map `phi` sending the quotient onto the Petersen layout with
/// the matching pairs on spokes (case A) or on rims (case B).
fn layout_map(q: &SimpleGraph, matched: &dyn Fn(usize, usize) -> bool, case: BlockCase) -> Option<Vec<usize>> {
    let layout = SimpleGraph::from_edges(10, RIM_PAIRS.iter().chain(SPOKE_PAIRS.iter()).copied()).ok()?;
    let spoke = |a: usize, b: usize| SPOKE_PAIRS.iter().any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b));
    let want_match = |a: usize, b: usize| match case {
        BlockCase::A => spoke(a, b),
        BlockCase::B => !spoke(a, b),
    };
    let mut phi = vec![usize::MAX; 10];
    let mut used = [false; 10];
    fn extend(
        v: usize,
        q: &SimpleGraph,
        layout: &SimpleGraph,
        phi: &mut Vec<usize>,
        used: &mut [bool; 10],
        ok: &dyn Fn(usize, usize, usize, usize) -> bool,
    ) -> bool {
        if v == 10 {
            return true;
        }
        for t in 0..10 {
            if used[t] {
                continue;
            }
            let fits = q.neighbors(v).iter().all(|&w| {
                w > v || (layout.has_edge(t, phi[w]) && ok(v, w, t, phi[w]))
            });
            if fits {
                phi[v] = t;
                used[t] = true;
                if extend(v + 1, q, layout, phi, used, ok) {
                    return true;
                }
                used[t] = false;
            }
        }
        false
    }
    let ok = |v: usize, w: usize, t: usize, s: usize| matched(v, w) == want_match(t, s);
    extend(0, q, &layout, &mut phi, &mut used, &ok).then_some(phi)
}

/// Relabels `x` over ten blocks of prime size `r` onto a block graph, when
/// every adjacent block pair is complete bipartite or a perfect matching in one
/// of the two patterns. Returns the block graph case and the map from block
/// graph vertices to vertices of `x`.
pub fn match_block_graph(x: &SimpleGraph, cells: &[Vec<usize>]) -> Option<(BlockCase, usize, Vec<usize>)> {
    if cells.len() != 10 {
        return None;
    }
    let r = cells[0].len();
    if r < 7 || !is_prime(r) {
        return None;
    }
    let q = quotient_multigraph(x, cells).ok()?;
    if !q.is_bi_regular() || !is_petersen(&q.underlying) {
        return None;
    }
    for (a, b) in q.underlying.edges() {
        let d = q.multiplicity[a][b];
        if d != 1 && d != r {
            return None;
        }
    }
    let matched = |a: usize, b: usize| q.multiplicity[a][b] == 1;
    let matched_edges: Vec<(usize, usize)> = q.underlying.edges().into_iter().filter(|&(a, b)| matched(a, b)).collect();
    let case = match matched_edges.len() {
        5 => BlockCase::A,
        10 => BlockCase::B,
        _ => return None,
    };
    let phi = layout_map(&q.underlying, &matched, case)?;
    let mut block = [0; 10];
    for (c, &t) in phi.iter().enumerate() {
        block[t] = c;
    }
    let cell_of = cell_index(x.order(), cells).ok()?;
    // The unique neighbour of v in cell c.
    let partner = |v: usize, c: usize| -> Option<usize> {
        let mut it = x.neighbors(v).iter().filter(|&&w| cell_of[w] == c);
        let w = *it.next()?;
        it.next().is_none().then_some(w)
    };
    let mut label = vec![usize::MAX; 10 * r];
    let set = |label: &mut Vec<usize>, i: usize, j: usize, v: usize| label[i * r + j % r] = v;
    match case {
        BlockCase::A => {
            for i in 0..5 {
                let mut vs = cells[block[i]].clone();
                vs.sort_unstable();
                for (j, &v) in vs.iter().enumerate() {
                    set(&mut label, i, j, v);
                    let w = partner(v, block[5 + i])?;
                    let jj = if i != 1 {
                        j + 1
                    } else if j == 1 {
                        0
                    } else if j == r - 1 {
                        2
                    } else {
                        j + 1
                    };
                    set(&mut label, 5 + i, jj, w);
                }
            }
        }
        BlockCase::B => {
            let rings: [[usize; 5]; 2] = [[0, 1, 2, 3, 4], [5, 7, 9, 6, 8]];
            for ring in rings {
                let start = *cells[block[ring[0]]].iter().min()?;
                let around = |v: usize| -> Option<usize> {
                    let mut w = v;
                    for s in 1..=5 {
                        w = partner(w, block[ring[s % 5]])?;
                    }
                    Some(w)
                };
                let mut v = start;
                for k in 0..r {
                    let mut w = v;
                    set(&mut label, ring[0], 5 * k, w);
                    for (s, &blk) in ring.iter().enumerate().skip(1) {
                        w = partner(w, block[blk])?;
                        set(&mut label, blk, 5 * k + s, w);
                    }
                    v = around(v)?;
                }
                if v != start {
                    return None;
                }
            }
        }
    }
    let mut seen = vec![false; x.order()];
    if label.iter().any(|&v| v == usize::MAX || std::mem::replace(&mut seen[v], true)) {
        return None;
    }
    let bg = build_block_graph(r, case).ok()?;
    bg.graph
        .edges()
        .into_iter()
        .all(|(a, b)| x.has_edge(label[a], label[b]))
        .then_some((case, r, label))
}

struct Stage<'a> {
    x: &'a SimpleGraph,
    opts: &'a DispatchOptions,
    log: Vec<String>,
    timings: Vec<(String, f64)>,
    clock: Instant,
}

impl Stage<'_> {
    fn note(&mut self, s: impl Into<String>) {
        let s = s.into();
        debug!("{s}");
        self.log.push(s);
    }

    fn lap(&mut self, name: &str) {
        let now = Instant::now();
        self.timings
            .push((name.to_string(), now.duration_since(self.clock).as_secs_f64() * 1e3));
        self.clock = now;
    }

    fn search(&self, budget: u64) -> SearchOutcome {
        let opts = SearchOptions {
            budget,
            workers: self.opts.workers,
            ..SearchOptions::default()
        };
        hamilton_search(self.x, &opts)
    }
}

fn certificate_outcome(x: &SimpleGraph, producer: Producer, cycle: Vec<usize>) -> Option<DispatchOutcome> {
    let certificate = HamiltonCertificate::new(x, cycle);
    verify_certificate(x, &certificate).then_some(DispatchOutcome::Certificate { producer, certificate })
}

/// Runs the strategy on `x`. A witness must act transitively by automorphisms.
pub fn dispatch(x: &SimpleGraph, witness: Option<&PermGroup>, opts: &DispatchOptions) -> Result<DispatchTrace> {
    let mut st = Stage {
        x,
        opts,
        log: Vec::new(),
        timings: Vec::new(),
        clock: Instant::now(),
    };
    let mut trace = DispatchTrace {
        input: None,
        graph_hash: x.hash(),
        order: x.order(),
        witness: None,
        block_systems: Vec::new(),
        case: CaseTag::Inconclusive,
        outcome: DispatchOutcome::Inconclusive {
            reason: String::new(),
        },
        lift: None,
        walk: None,
        log: Vec::new(),
        timings_ms: Vec::new(),
    };
    let (case, outcome) = run(&mut st, &mut trace, witness)?;
    info!("dispatch finished: {case}");
    trace.case = case;
    trace.outcome = outcome;
    trace.log = st.log;
    trace.timings_ms = st.timings;
    debug_assert!(trace.is_consistent());
    Ok(trace)
}

fn run(st: &mut Stage, trace: &mut DispatchTrace, witness: Option<&PermGroup>) -> Result<(CaseTag, DispatchOutcome)> {
    let x = st.x;
    let budget = st.opts.budget;
    if let Some(g) = witness {
        check_witness(x, g)?;
    }

    // Exceptions.
    for (is_exc, tag) in [
        (is_petersen(x), CaseTag::ExceptionPetersen),
        (is_truncated_petersen(x), CaseTag::ExceptionTruncatedPetersen),
    ] {
        if !is_exc {
            continue;
        }
        st.note(format!("fingerprint matches {tag}"));
        let outcome = st.search(budget);
        st.lap("exception");
        return Ok(match outcome {
            SearchOutcome::ExhaustedNone { stats } => (tag, DispatchOutcome::Exception { stats }),
            other => (
                CaseTag::Inconclusive,
                DispatchOutcome::Inconclusive {
                    reason: format!("exception fingerprint but search ended {}", other.kind()),
                },
            ),
        });
    }
    if x.order() < 3 || !x.is_connected() {
        st.note("graph is disconnected or too small");
        return Ok((
            CaseTag::NonHamiltonian,
            DispatchOutcome::Exception {
                stats: SearchStats::default(),
            },
        ));
    }

    // Minimum degree fast path.
    if jackson_guarantee(x) {
        let outcome = st.search(budget);
        st.lap("jackson");
        if let Some(c) = outcome.certificate() {
            st.note("minimum degree at least a third of the order; search succeeded");
            return Ok((
                CaseTag::Jackson,
                DispatchOutcome::Certificate {
                    producer: Producer::Search,
                    certificate: c.clone(),
                },
            ));
        }
        st.note(format!("minimum degree fast path ended {}", outcome.kind()));
    }

    // Witness.
    let group = match witness {
        Some(g) => {
            trace.witness = Some(format!("given, {} generators", g.generators().len()));
            Some(g.clone())
        }
        None if x.order() <= AUTOMORPHISM_FALLBACK_ORDER => {
            trace.witness = Some("automorphism group".into());
            Some(x.automorphism_group())
        }
        None => {
            st.note("no witness; block classification skipped");
            None
        }
    };
    let group = match group.map(|g| g.closed(element_cap())).transpose() {
        Ok(g) => g,
        Err(Error::CapExceeded { cap }) => {
            st.note(format!("witness closure exceeds {cap} elements; block classification skipped"));
            None
        }
        Err(e) => return Err(e),
    };
    if let (Some(g), Some(w)) = (&group, trace.witness.as_mut()) {
        w.push_str(&format!(", order {}", g.order().unwrap_or(0)));
    }

    // Block systems.
    let mut systems = Vec::new();
    if let Some(g) = &group {
        systems = classify_normal_block_systems(x, g)?;
        st.lap("classify");
    }
    if let Some(cells) = &st.opts.blocks {
        let sys = BlockSystem::from_partition(cells.clone(), x.order())?;
        if !systems.iter().any(|s| s.system == sys) {
            systems.insert(
                0,
                NormalBlockSystem {
                    description: "supplied blocks".into(),
                    r: sys.block_size(),
                    system: sys,
                },
            );
        }
    }
    trace.block_systems = systems
        .iter()
        .map(|s| BlockSystemSummary {
            description: s.description.clone(),
            r: s.r,
            blocks: s.system.num_blocks(),
        })
        .collect();

    for sys in systems.iter().filter(|s| is_prime(s.r)) {
        let cells = sys.system.blocks();
        if cells.len() == 10 {
            if let Some((case, r, label)) = match_block_graph(x, cells) {
                let bg = build_block_graph(r, case)?;
                let w = family_walk(&bg)?;
                let cycle: Vec<usize> = w.certificate.cycle.iter().map(|&v| label[v]).collect();
                st.lap("family_walk");
                if let Some(outcome) = certificate_outcome(x, Producer::Walk, cycle) {
                    st.note(format!("Petersen quotient with r = {r}, block pairs of case {case:?}"));
                    trace.walk = Some(WalkSummary {
                        case,
                        r,
                        pieces: w.pieces,
                        errata: w.errata,
                    });
                    return Ok((CaseTag::FamilyWalk, outcome));
                }
            }
        }
        let Some(g) = &group else { continue };
        let rho = match semiregular_from_prime_blocks(g, &sys.system) {
            Ok(rho) => rho,
            Err(e) => {
                st.note(format!("r = {}: {e}", sys.r));
                continue;
            }
        };
        let q = quotient_multigraph(x, &rho.orbits)?;
        if is_petersen(&q.underlying) {
            st.note(format!("r = {}: Petersen quotient without a matching block pattern", sys.r));
            continue;
        }
        let mut quotient_cycles = Vec::new();
        if rho.m == 2 {
            quotient_cycles.push(vec![0, 1]);
        } else {
            let qopts = SearchOptions::with_budget(budget);
            for_each_hamilton_cycle(&q.underlying, &qopts, |c| {
                quotient_cycles.push(c.to_vec());
                quotient_cycles.len() < QUOTIENT_CYCLE_LIMIT
            });
        }
        let mut lifted = None;
        for c in &quotient_cycles {
            match lift_cycle(x, &rho, c) {
                Ok(l) if l.long_cycle().is_some_and(|lc| lc.len() == x.order()) => {
                    lifted = Some(l);
                    break;
                }
                Ok(_) | Err(Error::NotACycle(_)) | Err(Error::NoLiftEdge(..)) => {}
                Err(e) => return Err(e),
            }
        }
        st.lap(&format!("lift_{}", sys.r));
        match lifted {
            Some(l) => {
                let cycle = l.long_cycle().expect("long cycle").to_vec();
                if let Some(outcome) = certificate_outcome(x, Producer::Lift, cycle) {
                    st.note(format!(
                        "r = {}: quotient cycle {:?} lifts with net voltage {}",
                        sys.r, l.source_cycle, l.net
                    ));
                    trace.lift = Some(l);
                    return Ok((CaseTag::Lift(sys.r), outcome));
                }
            }
            None => st.note(format!(
                "r = {}: {} quotient cycles, none lifts to a Hamilton cycle",
                sys.r,
                quotient_cycles.len()
            )),
        }
    }

    // Guided search along a semiregular element.
    if let Some(g) = &group {
        let mut tried = HashSet::new();
        let mut candidates = Vec::new();
        for e in g.cached_elements()? {
            if candidates.len() >= GUIDED_CANDIDATES {
                break;
            }
            if e.order() < 4 {
                continue;
            }
            if let Some(d) = semiregular_decomposition(e) {
                if tried.insert(d.orbits.clone()) {
                    candidates.push(d);
                }
            }
        }
        for rho in candidates {
            if let Some(plan) = check_deg3_hypotheses(x, &rho) {
                match guided_hamilton(x, &plan, budget) {
                    Ok(cert) => {
                        st.lap("deg3_guided");
                        st.note(format!(
                            "({}, {})-semiregular element, heavy orbit {}",
                            rho.m, rho.n, plan.heavy
                        ));
                        if let Some(o) = certificate_outcome(x, Producer::Search, cert.cycle) {
                            return Ok((CaseTag::Deg3Guided, o));
                        }
                    }
                    Err(e) => st.note(e.to_string()),
                }
            }
        }
        st.lap("deg3_guided");
    }

    // Plain search.
    let outcome = st.search(budget);
    st.lap("fallback_search");
    Ok(match outcome {
        SearchOutcome::Found { certificate, .. } => (
            CaseTag::FallbackSearch,
            DispatchOutcome::Certificate {
                producer: Producer::Search,
                certificate,
            },
        ),
        SearchOutcome::ExhaustedNone { stats } => {
            st.note("search exhausted without a Hamilton cycle");
            (CaseTag::NonHamiltonian, DispatchOutcome::Exception { stats })
        }
        SearchOutcome::BudgetExceeded { stats } => (
            CaseTag::Inconclusive,
            DispatchOutcome::Inconclusive {
                reason: format!("budget of {budget} nodes exhausted after {} nodes", stats.nodes),
            },
        ),
    })
}

/// Generators as a group, checked to be automorphisms of `x`.
pub fn witness_group(x: &SimpleGraph, gens: Vec<Permutation>) -> Result<PermGroup> {
    let g = PermGroup::new(x.order(), gens)?;
    check_witness(x, &g)?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{cayley_graph, generalized_petersen, petersen, truncation};
    use crate::family::build_block_graph;
    use crate::graph::standard;

    #[test]
    fn exceptions() {
        let t = dispatch(&petersen(), None, &DispatchOptions::default()).unwrap();
        assert_eq!(t.case, CaseTag::ExceptionPetersen);
        assert_eq!(t.exit_code(), 2);
        let tp = truncation(&petersen()).unwrap();
        assert!(is_truncated_petersen(&tp));
        let t = dispatch(&tp, None, &DispatchOptions::default()).unwrap();
        assert_eq!(t.case, CaseTag::ExceptionTruncatedPetersen);
        assert!(!is_truncated_petersen(&truncation(&standard::complete(4)).unwrap()));
    }

    #[test]
    fn cyclic_70_systems() {
        let g = PermGroup::cyclic(70);
        let x = cayley_graph(&g, &[Permutation::rotation(70, 1), Permutation::rotation(70, 69)])
            .unwrap()
            .graph;
        let g = g.closed(1000).unwrap();
        let rs: Vec<usize> = classify_normal_block_systems(&x, &g).unwrap().iter().map(|s| s.r).collect();
        assert_eq!(rs, vec![2, 5, 7, 10, 14, 35]);
        let systems = classify_normal_block_systems(&x, &g).unwrap();
        let s7 = systems.iter().find(|s| s.r == 7).unwrap();
        let rho = semiregular_from_prime_blocks(&g, &s7.system).unwrap();
        assert_eq!((rho.m, rho.n), (10, 7));
        let t = dispatch(&x, Some(&g), &DispatchOptions::default()).unwrap();
        assert!(t.certificate().is_some());
        assert!(t.is_consistent());
    }

    #[test]
    fn petersen_is_primitive() {
        let p = petersen();
        let g = p.automorphism_group().closed(1000).unwrap();
        assert!(classify_normal_block_systems(&p, &g).unwrap().is_empty());
    }

    #[test]
    fn block_graph_routes_to_family_walk() {
        for case in [BlockCase::A, BlockCase::B] {
            let bg = build_block_graph(7, case).unwrap();
            // Scramble the labels so the matcher has work to do.
            let perm: Vec<usize> = (0..70).map(|v| (v * 17 + 3) % 70).collect();
            let p = Permutation::from_images(perm).unwrap();
            let x = bg.graph.relabeled(&p).unwrap();
            let cells: Vec<Vec<usize>> = bg
                .blocks()
                .iter()
                .map(|c| {
                    let mut c: Vec<usize> = c.iter().map(|&v| p.apply(v)).collect();
                    c.sort_unstable();
                    c
                })
                .collect();
            let opts = DispatchOptions {
                blocks: Some(cells),
                ..DispatchOptions::default()
            };
            let t = dispatch(&x, None, &opts).unwrap();
            assert_eq!(t.case, CaseTag::FamilyWalk, "{case:?}");
            assert!(verify_certificate(&x, t.certificate().unwrap()));
        }
    }

    #[test]
    fn gp_small_dispatch() {
        let x = generalized_petersen(10, 3).unwrap();
        let t = dispatch(&x, None, &DispatchOptions::default()).unwrap();
        assert_eq!(t.exit_code(), 0);
        assert!(t.is_consistent());
    }
}
