//! Explicit Hamilton-cycle constructions for graphs of order `10p`.
//!
//! * Block graphs over a Petersen quotient with `K_{r,r}` / matching pairs and
//!   the walk templates that thread them.
//! * The CRT exponent and the generalized Petersen spanning subgraph.
//! * The three presentation flavours acting on `10p` cosets.
//! * The sign walk through ten blocks of a `Z_10` flavour graph.
//! * The chained block paths over a `K_{5,5} - 5K_{1,1}` quotient.

use serde::{Deserialize, Serialize};

use crate::build::generalized_petersen;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::perm::{PermGroup, Permutation};
use crate::search::{check_cycle, HamiltonCertificate};

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    let mut b = base % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Multiplicative order of `t` modulo prime `p`, or `None` when `p | t`.
pub fn mult_order(t: u64, p: u64) -> Option<u64> {
    let t = t % p;
    if t == 0 {
        return None;
    }
    let mut x = t;
    let mut k = 1;
    while x != 1 {
        x = x * t % p;
        k += 1;
    }
    Some(k)
}

fn modp(x: i64, p: usize) -> usize {
    x.rem_euclid(p as i64) as usize
}

// ---------------------------------------------------------------------------
// Block graphs over the Petersen quotient

/// Outer and inner 5-cycles of the block layout.
pub const RIM_PAIRS: [(usize, usize); 10] = [
    (0, 4),
    (4, 3),
    (3, 2),
    (2, 1),
    (1, 0),
    (5, 8),
    (8, 6),
    (6, 9),
    (9, 7),
    (7, 5),
];

/// Spokes of the block layout.
pub const SPOKE_PAIRS: [(usize, usize); 5] = [(0, 5), (4, 9), (3, 8), (2, 7), (1, 6)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockCase {
    /// Rim pairs complete bipartite, spokes perfect matchings.
    A,
    /// Rim pairs perfect matchings, spokes complete bipartite.
    B,
}

impl std::str::FromStr for BlockCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" | "casea" => Ok(BlockCase::A),
            "b" | "caseb" => Ok(BlockCase::B),
            _ => Err(Error::InvalidParams(format!("unknown block case {s:?}"))),
        }
    }
}

/// Ten blocks `B_i = {b_{i,0}, .., b_{i,r-1}}`; vertex `b_{i,j}` has index `i*r + j`.
#[derive(Clone, Debug)]
pub struct BlockLabeledGraph {
    pub r: usize,
    pub case: BlockCase,
    pub graph: SimpleGraph,
}

impl BlockLabeledGraph {
    pub fn vertex(&self, block: usize, offset: usize) -> usize {
        block * self.r + offset % self.r
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        (0..10).map(|i| (0..self.r).map(|j| i * self.r + j).collect()).collect()
    }
}

pub fn build_block_graph(r: usize, case: BlockCase) -> Result<BlockLabeledGraph> {
    if r < 7 || !is_prime(r as u64) {
        return Err(Error::InvalidParams(format!("block size {r} must be a prime >= 7")));
    }
    let b = |i: usize, j: usize| i * r + j % r;
    let mut edges = Vec::new();
    let complete = |edges: &mut Vec<(usize, usize)>, x: usize, y: usize| {
        for i in 0..r {
            for j in 0..r {
                edges.push((b(x, i), b(y, j)));
            }
        }
    };
    match case {
        BlockCase::A => {
            for &(x, y) in &RIM_PAIRS {
                complete(&mut edges, x, y);
            }
            edges.push((b(6, 0), b(1, 1)));
            edges.push((b(6, 2), b(1, r - 1)));
            for j in std::iter::once(0).chain(2..=r - 2) {
                edges.push((b(6, j + 1), b(1, j)));
            }
            for i in [0, 2, 3, 4] {
                for j in 0..r {
                    edges.push((b(i, j), b(5 + i, j + 1)));
                }
            }
        }
        BlockCase::B => {
            for &(x, y) in &SPOKE_PAIRS {
                complete(&mut edges, x, y);
            }
            for i in 0..5 {
                for j in 0..r {
                    edges.push((b(i, j), b((i + 1) % 5, j + 1)));
                    edges.push((b(5 + i, j), b(5 + (i + 2) % 5, j + 1)));
                }
            }
        }
    }
    let labels = (0..10 * r).map(|v| format!("b{},{}", v / r, v % r)).collect();
    let graph = SimpleGraph::from_edges(10 * r, edges)?.with_labels(labels)?;
    Ok(BlockLabeledGraph { r, case, graph })
}

/// A symbolic walk: `(block, offset)` steps. Offsets of relative templates are
/// added to the instantiation parameter.
#[derive(Clone, Copy, Debug)]
pub struct WalkTemplate {
    pub name: &'static str,
    pub relative: bool,
    pub steps: &'static [(usize, usize)],
}

pub const CASE_A_ALPHA: WalkTemplate = WalkTemplate {
    name: "W_alpha",
    relative: false,
    steps: &[
        (0, 0), (4, 0), (3, 0), (8, 1), (5, 0), (7, 0), (9, 1), (6, 0), (1, 1), (2, 0),
        (7, 1), (5, 1), (8, 0), (6, 1), (9, 0), (4, 1), (3, 1), (2, 2), (1, 0), (0, 1),
        (5, 2), (8, 2), (6, 2), (9, 2), (7, 2), (2, 1), (3, 2), (4, 2), (0, 2), (1, 2),
    ],
};

pub const CASE_A_BETA: WalkTemplate = WalkTemplate {
    name: "W_beta",
    relative: true,
    steps: &[
        (6, 0), (8, 0), (5, 0), (7, 0), (9, 1), (4, 0), (3, 0), (2, 1), (1, 0), (0, 0),
        (5, 1), (8, 1), (6, 1), (9, 0), (7, 1), (2, 0), (3, 1), (4, 1), (0, 1), (1, 1),
    ],
};

pub const CASE_B_ALPHA: WalkTemplate = WalkTemplate {
    name: "W_alpha",
    relative: false,
    steps: &[
        (0, 0), (5, 2), (8, 1), (3, 0), (4, 1), (9, 3), (7, 2), (2, 2), (1, 1), (6, 0),
        (1, 2), (6, 2), (9, 1), (4, 0), (0, 1), (5, 1), (8, 0), (3, 2), (2, 1), (7, 0),
        (2, 0), (7, 1), (9, 2), (4, 2), (3, 1), (8, 2), (6, 1), (1, 4), (0, 3), (5, 0),
    ],
};

pub const CASE_B_BETA: WalkTemplate = WalkTemplate {
    name: "W_beta",
    relative: false,
    steps: &[
        (0, 2), (5, 4), (8, 3), (3, 3), (4, 4), (9, 4), (7, 3), (2, 4), (1, 3), (6, 4),
        (1, 0), (6, 3), (8, 4), (3, 4), (2, 3), (7, 4), (9, 5), (4, 3), (0, 4), (5, 3),
    ],
};

pub const CASE_B_GAMMA: WalkTemplate = WalkTemplate {
    name: "W_gamma",
    relative: true,
    steps: &[
        (0, 0), (5, 1), (8, 0), (3, 0), (4, 1), (9, 1), (7, 0), (2, 1), (1, 0), (6, 1),
        (1, 1), (6, 0), (8, 1), (3, 1), (2, 0), (7, 1), (9, 2), (4, 0), (0, 1), (5, 0),
    ],
};

/// A correction to a transcribed template: two steps exchange places.
#[derive(Clone, Copy, Debug)]
pub struct Erratum {
    pub case: BlockCase,
    pub template: &'static str,
    pub swap: (usize, usize),
    pub note: &'static str,
}

/// As transcribed, case A's `W_alpha` steps from `b_{9,0}` to `b_{4,1}`, which
/// the spoke matching `b_{4,j} ~ b_{9,j+1}` does not join. Exchanging the two
/// visits to block 9 repairs both joins.
pub const ERRATA: &[Erratum] = &[Erratum {
    case: BlockCase::A,
    template: "W_alpha",
    swap: (14, 23),
    note: "case A W_alpha: steps 14 and 23 exchanged (b_{9,0} <-> b_{9,2})",
}];

/// One instantiated template in a chained walk.
#[derive(Clone, Debug, Serialize)]
pub struct WalkPiece {
    pub name: String,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WalkCertificate {
    pub certificate: HamiltonCertificate,
    pub pieces: Vec<String>,
    pub errata: Vec<String>,
}

fn instantiate(bg: &BlockLabeledGraph, t: &WalkTemplate, shift: usize, swap: Option<(usize, usize)>) -> WalkPiece {
    let mut steps = t.steps.to_vec();
    if let Some((a, b)) = swap {
        steps.swap(a, b);
    }
    let base = if t.relative { shift } else { 0 };
    let name = if t.relative {
        format!("{},{}", t.name, shift)
    } else {
        t.name.to_string()
    };
    WalkPiece {
        name,
        vertices: steps.iter().map(|&(i, j)| bg.vertex(i, base + j)).collect(),
    }
}

/// The chained template walk for `bg.case`, as pieces in order.
pub fn walk_pieces(bg: &BlockLabeledGraph, apply_errata: bool) -> Vec<WalkPiece> {
    let r = bg.r;
    let swap_for = |name: &str| {
        ERRATA
            .iter()
            .find(|e| apply_errata && e.case == bg.case && e.template == name)
            .map(|e| e.swap)
    };
    let mut pieces = Vec::new();
    match bg.case {
        BlockCase::A => {
            pieces.push(instantiate(bg, &CASE_A_ALPHA, 0, swap_for("W_alpha")));
            for j in (3..=r - 2).step_by(2) {
                pieces.push(instantiate(bg, &CASE_A_BETA, j, swap_for("W_beta")));
            }
        }
        BlockCase::B => {
            pieces.push(instantiate(bg, &CASE_B_ALPHA, 0, swap_for("W_alpha")));
            pieces.push(instantiate(bg, &CASE_B_BETA, 0, swap_for("W_beta")));
            for j in (5..=r - 2).step_by(2) {
                pieces.push(instantiate(bg, &CASE_B_GAMMA, j, swap_for("W_gamma")));
            }
        }
    }
    pieces
}

/// Concatenates pieces into a closed walk, naming the first non-edge.
pub fn chain_pieces(graph: &SimpleGraph, pieces: &[WalkPiece]) -> Result<Vec<usize>> {
    let cycle: Vec<usize> = pieces.iter().flat_map(|p| p.vertices.iter().copied()).collect();
    let n = cycle.len();
    let mut offset = 0;
    for p in pieces {
        for (s, &v) in p.vertices.iter().enumerate() {
            let next = cycle[(offset + s + 1) % n];
            if !graph.has_edge(v, next) {
                return Err(Error::WalkBreak {
                    template: p.name.clone(),
                    step: s,
                    from: graph.label(v),
                    to: graph.label(next),
                });
            }
        }
        offset += p.vertices.len();
    }
    check_cycle(graph, &cycle).map_err(Error::CertificateRejected)?;
    Ok(cycle)
}

/// Verified Hamilton cycle of a block graph from the chained templates.
pub fn family_walk(bg: &BlockLabeledGraph) -> Result<WalkCertificate> {
    family_walk_with(bg, true)
}

pub fn family_walk_with(bg: &BlockLabeledGraph, apply_errata: bool) -> Result<WalkCertificate> {
    let pieces = walk_pieces(bg, apply_errata);
    let cycle = chain_pieces(&bg.graph, &pieces)?;
    let errata = ERRATA
        .iter()
        .filter(|e| apply_errata && e.case == bg.case)
        .map(|e| e.note.to_string())
        .collect();
    Ok(WalkCertificate {
        certificate: HamiltonCertificate::new(&bg.graph, cycle),
        pieces: pieces.into_iter().map(|p| p.name).collect(),
        errata,
    })
}

// ---------------------------------------------------------------------------
// CRT exponent and the generalized Petersen spanning subgraph

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Least `l` in `[1, 5p]` with `l = t (mod p)` and `l = 2 (mod 5)`.
pub fn crt_exponent(t: i64, p: u64) -> Result<u64> {
    if p == 0 || p.is_multiple_of(5) {
        return Err(Error::InvalidParams(format!("modulus {p} must be coprime to 5")));
    }
    let p = p as i64;
    // p*m1 + 5*m2 = 1.
    let (g, m1, m2) = ext_gcd(p, 5);
    debug_assert_eq!(g, 1);
    let n = 5 * p;
    let l = (t.rem_euclid(p) * 5 * m2 + 2 * p * m1).rem_euclid(n);
    Ok(if l == 0 { n as u64 } else { l as u64 })
}

/// `GP(5p, l mod 5p)`.
pub fn gp_spanning_subgraph(p: u64, l: u64) -> Result<SimpleGraph> {
    let n = 5 * p as usize;
    let k = l as usize % n;
    if k == 0 || 2 * k == n {
        return Err(Error::InvalidParams(format!("step {l} is degenerate modulo {n}")));
    }
    generalized_petersen(n, k)
}

// ---------------------------------------------------------------------------
// Presentation flavours acting on 10p cosets

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    /// `<a> x <b> : <s>`, `a^p = b^5 = 1`, `a^s = a^t`, `b^s = b^2`, `|s| = 2^(k+2)`,
    /// point stabiliser `<s^2>`.
    Z5Z4,
    /// `<a> : <b>`, `a^p = b^20 = 1`, `a^b = a^t`, point stabiliser `<b^10>`.
    Z10,
    /// `(<a> x <b>) : <c>`, `a^p = b^5 = 1`, `b^c = b^-1`, `a^c = a^t`,
    /// `|c| = 2^(k+1)`, point stabiliser `<c^2>`.
    D10,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlavorParams {
    pub flavor: Flavor,
    pub p: u64,
    pub t: u64,
    pub k: u32,
}

impl FlavorParams {
    /// Exponent `e` with `t^e = 1` required by the presentation.
    fn exponent(&self) -> u64 {
        match self.flavor {
            Flavor::Z5Z4 => 1 << (self.k + 2),
            Flavor::Z10 => 20,
            Flavor::D10 => 1 << (self.k + 1),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.p < 7 || !is_prime(self.p) {
            return Err(Error::InvalidParams(format!("p = {} must be a prime >= 7", self.p)));
        }
        let t = self.t % self.p;
        if t == 0 {
            return Err(Error::Congruence(format!("t = {} vanishes modulo {}", self.t, self.p)));
        }
        let e = self.exponent();
        if pow_mod(t, e, self.p) != 1 {
            return Err(Error::Congruence(format!(
                "t^{e} = {} (mod {}), expected 1",
                pow_mod(t, e, self.p),
                self.p
            )));
        }
        Ok(())
    }

    /// `t^(2^(k+1)) = -1 (mod p)`, the congruence of the first Z5Z4 case.
    pub fn z5z4_case1(&self) -> bool {
        self.flavor == Flavor::Z5Z4 && pow_mod(self.t, 1 << (self.k + 1), self.p) == self.p - 1
    }

    /// Order of the permutation group on 10p cosets, from the presentation.
    pub fn predicted_order(&self) -> u64 {
        let p = self.p;
        let t2 = mult_order(self.t * self.t, p).unwrap_or(1);
        match self.flavor {
            // <s^2> acts on <b> with order 2 and on <a> with order ord(t^2).
            Flavor::Z5Z4 => 10 * p * lcm(2, t2),
            Flavor::Z10 => 10 * p * mult_order(pow_mod(self.t, 10, p), p).unwrap_or(1),
            Flavor::D10 => 10 * p * t2,
        }
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    let g = {
        let (mut x, mut y) = (a, b);
        while y != 0 {
            (x, y) = (y, x % y);
        }
        x
    };
    a / g * b
}

/// Generators acting on right cosets of the point stabiliser.
///
/// * Z5Z4: coset `M s^i a^x b^y` has index `(5i + y)p + x`; generators `a, b, s`.
/// * Z10: coset `M b^x a^y` has index `xp + y`; generators `a, b`.
/// * D10: coset `M c^i b^j a^x` has index `(5i + j)p + x`; generators `a, b, c`.
pub fn build_group_flavor(params: &FlavorParams) -> Result<PermGroup> {
    params.validate()?;
    let p = params.p as usize;
    let t = (params.t % params.p) as usize;
    let n = 10 * p;
    let gens: Vec<Vec<usize>> = match params.flavor {
        Flavor::Z5Z4 => {
            let idx = |i: usize, x: usize, y: usize| (5 * i + y) * p + x;
            let mut a = vec![0; n];
            let mut b = vec![0; n];
            let mut s = vec![0; n];
            for i in 0..2 {
                for x in 0..p {
                    for y in 0..5 {
                        let v = idx(i, x, y);
                        a[v] = idx(i, (x + 1) % p, y);
                        b[v] = idx(i, x, (y + 1) % 5);
                        s[v] = idx((i + 1) % 2, x * t % p, 2 * y % 5);
                    }
                }
            }
            vec![a, b, s]
        }
        Flavor::Z10 => {
            let idx = |x: usize, y: usize| x * p + y;
            let mut a = vec![0; n];
            let mut b = vec![0; n];
            for x in 0..10 {
                for y in 0..p {
                    a[idx(x, y)] = idx(x, (y + 1) % p);
                    b[idx(x, y)] = idx((x + 1) % 10, y * t % p);
                }
            }
            vec![a, b]
        }
        Flavor::D10 => {
            let idx = |i: usize, j: usize, x: usize| (5 * i + j) * p + x;
            let mut a = vec![0; n];
            let mut b = vec![0; n];
            let mut c = vec![0; n];
            for i in 0..2 {
                for j in 0..5 {
                    for x in 0..p {
                        let v = idx(i, j, x);
                        a[v] = idx(i, j, (x + 1) % p);
                        b[v] = idx(i, (j + 1) % 5, x);
                        c[v] = idx((i + 1) % 2, (5 - j) % 5, x * t % p);
                    }
                }
            }
            vec![a, b, c]
        }
    };
    let gens = gens
        .into_iter()
        .map(Permutation::from_images)
        .collect::<Result<Vec<_>>>()?;
    let g = PermGroup::new(n, gens)?;
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    Ok(g)
}

/// Valid `(k, t)` for the Z5Z4 flavour with `k <= k_max`.
pub fn z5z4_params(p: u64, k_max: u32) -> Vec<FlavorParams> {
    let mut out = Vec::new();
    for k in 0..=k_max {
        for t in 1..p {
            let fp = FlavorParams {
                flavor: Flavor::Z5Z4,
                p,
                t,
                k,
            };
            if fp.validate().is_ok() {
                out.push(fp);
            }
        }
    }
    out
}

/// Valid `t` for the Z10 flavour.
pub fn z10_params(p: u64) -> Vec<FlavorParams> {
    (1..p)
        .map(|t| FlavorParams {
            flavor: Flavor::Z10,
            p,
            t,
            k: 0,
        })
        .filter(|fp| fp.validate().is_ok())
        .collect()
}

/// Valid `(k, t)` for the D10 flavour with `k <= k_max`.
pub fn d10_params(p: u64, k_max: u32) -> Vec<FlavorParams> {
    let mut out = Vec::new();
    for k in 0..=k_max {
        for t in 1..p {
            let fp = FlavorParams {
                flavor: Flavor::D10,
                p,
                t,
                k,
            };
            if fp.validate().is_ok() {
                out.push(fp);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Sign walk through ten blocks

/// Signs on `t^0, .., t^9`.
pub const SIGN_PATTERN: [i64; 10] = [1, 1, -1, -1, 1, 1, -1, -1, 1, 1];

/// `sum_x SIGN_PATTERN[x] t^x (mod p)`.
pub fn sign_sum(t: u64, p: u64) -> u64 {
    let mut acc: i64 = 0;
    for (x, &d) in SIGN_PATTERN.iter().enumerate() {
        acc += d * pow_mod(t, x as u64, p) as i64;
    }
    acc.rem_euclid(p as i64) as u64
}

/// Preconditions of the sign walk: `t^10 = -1` and `t^4 != 1` modulo `p`.
pub fn sign_walk_admissible(p: u64, t: u64) -> bool {
    is_prime(p) && pow_mod(t, 10, p) == p - 1 && pow_mod(t, 4, p) != 1
}

/// Graph on `(x, y)`, `x` in `Z_10`, `y` in `Z_p`, index `xp + y`: edges
/// `(x, y) ~ (x, y + l t^x)` inside blocks and `(q_s, y) ~ (q_(s+1), y)` along
/// the block cycle `q`.
pub fn z10_sign_graph(p: u64, t: u64, l: u64, q: &[usize; 10]) -> Result<SimpleGraph> {
    let pu = p as usize;
    let mut edges = Vec::new();
    for x in 0..10 {
        let step = (l % p * pow_mod(t, x as u64, p) % p) as usize;
        for y in 0..pu {
            edges.push((x * pu + y, x * pu + (y + step) % pu));
        }
    }
    for s in 0..10 {
        let (a, b) = (q[s], q[(s + 1) % 10]);
        for y in 0..pu {
            edges.push((a * pu + y, b * pu + y));
        }
    }
    SimpleGraph::from_edges(10 * pu, edges)
}

pub const DEFAULT_BLOCK_ORDER: [usize; 10] = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9];

/// Each block `x = q_s` is traversed along its `l t^x` cycle in the direction
/// given by `SIGN_PATTERN[x]`, leaving at `entry + sign * l t^x`; blocks are joined
/// at equal `y`. The walk closes because the signed sum vanishes.
pub fn z10_sign_walk(p: u64, t: u64, l: u64, q: &[usize; 10]) -> Result<(SimpleGraph, HamiltonCertificate)> {
    if !sign_walk_admissible(p, t) {
        return Err(Error::Congruence(format!(
            "need t^10 = -1 and t^4 != 1 modulo prime p (p = {p}, t = {t})"
        )));
    }
    if l.is_multiple_of(p) {
        return Err(Error::InvalidParams("l must be nonzero modulo p".into()));
    }
    let mut sorted = *q;
    sorted.sort_unstable();
    if q[0] != 0 || sorted != DEFAULT_BLOCK_ORDER {
        return Err(Error::InvalidParams("block order must start at 0 and list 0..9 once".into()));
    }
    let graph = z10_sign_graph(p, t, l, q)?;
    let pu = p as usize;
    let mut cycle = Vec::with_capacity(10 * pu);
    let mut y: i64 = 0;
    for &x in q {
        let step = (l % p * pow_mod(t, x as u64, p) % p) as i64;
        let dir = -SIGN_PATTERN[x] * step;
        let mut cur = y;
        for _ in 0..pu {
            cycle.push(x * pu + modp(cur, pu));
            cur += dir;
        }
        y = cur - dir;
    }
    let last = *cycle.last().expect("nonempty");
    let closing = modp(y, pu);
    if closing != 0 {
        return Err(Error::CertificateRejected(format!(
            "walk closes at y = {closing} instead of 0 (last vertex {last})"
        )));
    }
    check_cycle(&graph, &cycle).map_err(Error::CertificateRejected)?;
    let cert = HamiltonCertificate::new(&graph, cycle);
    Ok((graph, cert))
}

// ---------------------------------------------------------------------------
// Chained block paths over K_{5,5} - 5K_{1,1}

/// Graph on `(i, x, y)`, `i` in `Z_2`, `x` in `Z_p`, `y` in `Z_5`, index
/// `(5i + y)p + x`. From `(0, x, y)`: `(1, x+l, y+1)`, `(1, x-il, y+2)`,
/// `(1, x-il, y+3)`, `(1, x+l, y+4)`; inside blocks `(i, x ± l', y)`.
pub fn k55_graph(p: u64, l: u64, lp: u64, iota: u64) -> Result<SimpleGraph> {
    let pu = p as usize;
    let idx = |i: usize, x: i64, y: usize| (5 * i + y % 5) * pu + modp(x, pu);
    let (l, lp, il) = (l as i64, lp as i64, (iota % p * (l % p) % p) as i64);
    let mut edges = Vec::new();
    for x in 0..pu as i64 {
        for y in 0..5 {
            let v = idx(0, x, y);
            edges.push((v, idx(1, x + l, y + 1)));
            edges.push((v, idx(1, x - il, y + 2)));
            edges.push((v, idx(1, x - il, y + 3)));
            edges.push((v, idx(1, x + l, y + 4)));
            for i in 0..2 {
                edges.push((idx(i, x, y), idx(i, x + lp, y)));
            }
        }
    }
    SimpleGraph::from_edges(10 * pu, edges)
}

/// Block visiting order of the chained cycle.
pub const K55_BLOCK_ORDER: [(usize, usize); 10] =
    [(0, 0), (1, 1), (0, 2), (1, 3), (0, 4), (1, 0), (0, 1), (1, 2), (0, 3), (1, 4)];

/// Blocks `(0, y)` are walked forward `x = 0, l', .., (p-1)l'`; blocks `(1, y)`
/// backward from `l + (p-1)l'` down to `l`. Consecutive blocks are joined by the
/// `y+1` edge `(0,x,y) ~ (1,x+l,y+1)` and the `y+4` edge `(1,x+l,y+1) ~ (0,x,y+2)`.
pub fn k55_case_cycle(p: u64, l: u64, lp: u64, iota: u64) -> Result<(SimpleGraph, HamiltonCertificate)> {
    if p < 7 || !is_prime(p) {
        return Err(Error::InvalidParams(format!("p = {p} must be a prime >= 7")));
    }
    if l.is_multiple_of(p) || lp.is_multiple_of(p) || iota.is_multiple_of(p) {
        return Err(Error::InvalidParams("l, l' and iota must be nonzero modulo p".into()));
    }
    let graph = k55_graph(p, l, lp, iota)?;
    let pu = p as usize;
    let (l, lp) = (l as i64, lp as i64);
    let mut cycle = Vec::with_capacity(10 * pu);
    for &(i, y) in &K55_BLOCK_ORDER {
        for m in 0..pu as i64 {
            let x = if i == 0 { m * lp } else { l + (pu as i64 - 1 - m) * lp };
            cycle.push((5 * i + y) * pu + modp(x, pu));
        }
    }
    check_cycle(&graph, &cycle).map_err(Error::CertificateRejected)?;
    let cert = HamiltonCertificate::new(&graph, cycle);
    Ok((graph, cert))
}
