//! Graph constructors: coset and bi-coset graphs, Cayley graphs, generalized
//! Petersen graphs, truncations and orbital graphs.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::perm::{element_cap, PermGroup, Permutation};

/// A coset graph together with the diagnostics of its construction.
#[derive(Clone, Debug)]
pub struct CosetGraph {
    pub graph: SimpleGraph,
    /// `HS⁻¹H = HSH`; when false the graph is the symmetric closure.
    pub undirected_ok: bool,
    pub connected: bool,
    /// `⟨H, S⟩ = G`.
    pub generates: bool,
    /// Elements of `S` lying in `H`, dropped before construction.
    pub discarded: Vec<Permutation>,
    /// One representative per vertex.
    pub representatives: Vec<Permutation>,
    /// Right multiplication by each generator of `G`, as permutations of the vertices.
    pub action: Vec<Permutation>,
}

#[derive(Clone, Debug)]
pub struct BiCosetGraph {
    pub graph: SimpleGraph,
    pub connected: bool,
    /// `⟨D⁻¹D⟩ = G` for the closed connection set.
    pub generates: bool,
    /// Number of `L`-cosets; these are vertices `0..left`, the `R`-cosets follow.
    pub left: usize,
    /// Size of the closure `R·D·L`.
    pub closed_d: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Diagnostics {
    pub undirected_ok: bool,
    pub connected: bool,
    pub generates: bool,
    pub discarded: usize,
}

impl CosetGraph {
    /// `G` acting on the vertices; transitive and by automorphisms.
    pub fn witness(&self) -> PermGroup {
        PermGroup::new(self.graph.order(), self.action.clone()).expect("degrees agree")
    }

    pub fn diagnostics(&self) -> Diagnostics {
        Diagnostics {
            undirected_ok: self.undirected_ok,
            connected: self.connected,
            generates: self.generates,
            discarded: self.discarded.len(),
        }
    }
}

/// Closes `g` (if needed) and checks that every generator of the subgroup lies in it.
fn closed_subgroup(g: &PermGroup, gens: &[Permutation], what: &str) -> Result<PermGroup> {
    for h in gens {
        if !g.contains(h)? {
            return Err(Error::NotSubgroup(format!("{what} generator {h} is not in G")));
        }
    }
    PermGroup::new(g.degree(), gens.to_vec())?.closed(element_cap())
}

/// Right cosets `Kx` of a subgroup `K`, enumerated breadth-first from `K` using
/// the generators of `G` in order. Returns the coset of every element of `G`
/// and one representative per coset.
fn right_cosets(g: &PermGroup, k: &PermGroup) -> Result<(Vec<usize>, Vec<usize>)> {
    let table = g.table().ok_or(Error::NotCached)?;
    let k_elems = k.cached_elements()?;
    let mut coset_of = vec![usize::MAX; table.len()];
    let mut reps = Vec::new();
    let mark = |x: usize, coset_of: &mut Vec<usize>, reps: &mut Vec<usize>| -> Result<usize> {
        let id = reps.len();
        reps.push(x);
        let xe = &table.elements()[x];
        for h in k_elems {
            let i = table
                .index_of(&h.then(xe))
                .ok_or_else(|| Error::NotSubgroup("subgroup element outside G".into()))?;
            coset_of[i] = id;
        }
        Ok(id)
    };
    let id = table.index_of(&Permutation::identity(g.degree())).ok_or(Error::NotCached)?;
    mark(id, &mut coset_of, &mut reps)?;
    let mut head = 0;
    while head < reps.len() {
        let x = &table.elements()[reps[head]];
        head += 1;
        for s in g.generators() {
            let y = table.index_of(&x.then(s)).ok_or(Error::NotCached)?;
            if coset_of[y] == usize::MAX {
                mark(y, &mut coset_of, &mut reps)?;
            }
        }
    }
    if coset_of.contains(&usize::MAX) {
        return Err(Error::NotCached);
    }
    Ok((coset_of, reps))
}

/// `A·B·C` as a set of element indices of `G`.
fn triple_product(g: &PermGroup, a: &[Permutation], b: &[Permutation], c: &[Permutation]) -> Result<Vec<usize>> {
    let table = g.table().ok_or(Error::NotCached)?;
    let mut seen = vec![false; table.len()];
    let mut out = Vec::new();
    for x in a {
        for y in b {
            let xy = x.then(y);
            for z in c {
                let i = table
                    .index_of(&xy.then(z))
                    .ok_or_else(|| Error::NotSubgroup("product leaves G".into()))?;
                if !seen[i] {
                    seen[i] = true;
                    out.push(i);
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn generates_group(g: &PermGroup, gens: Vec<Permutation>) -> Result<bool> {
    let target = g.order().ok_or(Error::NotCached)?;
    if gens.iter().all(Permutation::is_identity) {
        return Ok(target == 1);
    }
    let sub = PermGroup::new(g.degree(), gens)?.closed(target + 1)?;
    Ok(sub.order() == Some(target))
}

/// `Cos(G, H, HSH)`: right cosets of `H`, with `Hx ~ Hy` iff `yx⁻¹ ∈ HSH`.
pub fn coset_graph(g: &PermGroup, h_gens: &[Permutation], s: &[Permutation]) -> Result<CosetGraph> {
    let g = g.closed(element_cap())?;
    let h = closed_subgroup(&g, h_gens, "H")?;
    let table = g.table().expect("closed");
    let mut kept = Vec::new();
    let mut discarded = Vec::new();
    for x in s {
        if !g.contains(x)? {
            return Err(Error::NotSubgroup(format!("connection element {x} is not in G")));
        }
        if h.contains(x)? {
            log::warn!("connection element {x} lies in H and is discarded");
            discarded.push(x.clone());
        } else if !kept.contains(x) {
            kept.push(x.clone());
        }
    }
    let h_elems = h.cached_elements()?;
    let hsh = triple_product(&g, h_elems, &kept, h_elems)?;
    let inv: Vec<Permutation> = kept.iter().map(Permutation::inverse).collect();
    let hsih = triple_product(&g, h_elems, &inv, h_elems)?;
    let undirected_ok = hsh == hsih;
    if !undirected_ok {
        log::warn!("HS^-1H differs from HSH; using the symmetric closure");
    }
    let mut conn: Vec<usize> = hsh.iter().chain(hsih.iter()).copied().collect();
    conn.sort_unstable();
    conn.dedup();

    let (coset_of, reps) = right_cosets(&g, &h)?;
    // One element per right coset of H inside the connection set.
    let mut seen_coset = HashSet::new();
    let d_reps: Vec<&Permutation> = conn
        .iter()
        .filter(|&&i| seen_coset.insert(coset_of[i]))
        .map(|&i| &table.elements()[i])
        .collect();
    let mut edges = Vec::new();
    for (cx, &x) in reps.iter().enumerate() {
        let xe = &table.elements()[x];
        for d in &d_reps {
            let y = table.index_of(&d.then(xe)).expect("closed");
            edges.push((cx, coset_of[y]));
        }
    }
    let graph = SimpleGraph::from_edges(reps.len(), edges)?;
    let connected = graph.is_connected();
    let mut all = h_gens.to_vec();
    all.extend(kept.iter().cloned());
    let generates = generates_group(&g, all)?;
    let action = g
        .generators()
        .iter()
        .map(|s| {
            let images = reps
                .iter()
                .map(|&x| coset_of[table.index_of(&table.elements()[x].then(s)).expect("closed")])
                .collect();
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CosetGraph {
        graph,
        undirected_ok,
        connected,
        generates,
        discarded,
        action,
        representatives: reps.iter().map(|&i| table.elements()[i].clone()).collect(),
    })
}

/// Cayley graph `Cay(G, S)`: the coset graph over the trivial subgroup.
pub fn cayley_graph(g: &PermGroup, s: &[Permutation]) -> Result<CosetGraph> {
    coset_graph(g, &[], s)
}

/// `B(G, L, R, D)`: bipartite on `[G:L] ⊔ [G:R]` with edges `{Lg, Rdg}`.
///
/// The connection set is replaced by `R·D·L`, which leaves the edge set
/// unchanged and makes `Rdx` depend only on the coset `Lx`.
pub fn bicoset_graph(
    g: &PermGroup,
    l_gens: &[Permutation],
    r_gens: &[Permutation],
    d: &[Permutation],
) -> Result<BiCosetGraph> {
    if d.is_empty() {
        return Err(Error::InvalidParams("connection set D is empty".into()));
    }
    let g = g.closed(element_cap())?;
    let l = closed_subgroup(&g, l_gens, "L")?;
    let r = closed_subgroup(&g, r_gens, "R")?;
    for x in d {
        if !g.contains(x)? {
            return Err(Error::NotSubgroup(format!("connection element {x} is not in G")));
        }
    }
    let table = g.table().expect("closed");
    let rdl = triple_product(&g, r.cached_elements()?, d, l.cached_elements()?)?;
    let (_, l_reps) = right_cosets(&g, &l)?;
    let (r_coset, r_reps) = right_cosets(&g, &r)?;
    let left = l_reps.len();
    let mut seen = HashSet::new();
    let d_reps: Vec<&Permutation> = rdl
        .iter()
        .filter(|&&i| seen.insert(r_coset[i]))
        .map(|&i| &table.elements()[i])
        .collect();
    let mut edges = Vec::new();
    for (cx, &x) in l_reps.iter().enumerate() {
        let xe = &table.elements()[x];
        for dd in &d_reps {
            let y = table.index_of(&dd.then(xe)).expect("closed");
            edges.push((cx, left + r_coset[y]));
        }
    }
    let graph = SimpleGraph::from_edges(left + r_reps.len(), edges)?;
    let connected = graph.is_connected();
    let elems = table.elements();
    let mut dd_gens = Vec::new();
    let base_inv = elems[rdl[0]].inverse();
    for &i in &rdl {
        // ⟨D⁻¹D⟩ is generated by d₀⁻¹d together with all d⁻¹d₀ products; the
        // former already generate it since d⁻¹e = (d₀⁻¹d)⁻¹(d₀⁻¹e).
        dd_gens.push(base_inv.then(&elems[i]));
    }
    let generates = generates_group(&g, dd_gens)?;
    Ok(BiCosetGraph {
        graph,
        connected,
        generates,
        left,
        closed_d: rdl.len(),
    })
}

/// `GP(n, k)`: `u_i = i`, `v_i = n + i`.
pub fn generalized_petersen(n: usize, k: usize) -> Result<SimpleGraph> {
    if n < 3 || k == 0 || k >= n || 2 * k == n {
        return Err(Error::InvalidParams(format!(
            "GP({n},{k}) needs n >= 3, 1 <= k < n and 2k != n"
        )));
    }
    let mut edges = Vec::with_capacity(3 * n);
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((i, n + i));
        edges.push((n + i, n + (i + k) % n));
    }
    let labels = (0..n)
        .map(|i| format!("u{i}"))
        .chain((0..n).map(|i| format!("v{i}")))
        .collect();
    SimpleGraph::from_edges(2 * n, edges)?.with_labels(labels)
}

/// Replaces every vertex `v` of a cubic graph by a triangle on its three edge-ends.
/// The end at `v` towards its `a`-th neighbour becomes vertex `3v + a`.
pub fn truncation(x: &SimpleGraph) -> Result<SimpleGraph> {
    if x.regular_degree() != Some(3) {
        return Err(Error::NotCubic);
    }
    let n = x.order();
    let mut edges = Vec::with_capacity(9 * n / 2);
    for v in 0..n {
        edges.extend([(3 * v, 3 * v + 1), (3 * v + 1, 3 * v + 2), (3 * v, 3 * v + 2)]);
    }
    for (u, v) in x.edges() {
        let a = x.neighbors(u).iter().position(|&w| w == v).expect("symmetric");
        let b = x.neighbors(v).iter().position(|&w| w == u).expect("symmetric");
        edges.push((3 * u + a, 3 * v + b));
    }
    let labels = (0..n)
        .flat_map(|v| x.neighbors(v).iter().map(move |&w| format!("{v}>{w}")))
        .collect();
    SimpleGraph::from_edges(3 * n, edges)?.with_labels(labels)
}

pub fn petersen() -> SimpleGraph {
    generalized_petersen(5, 2).expect("GP(5,2) is admissible")
}

/// Order 10, cubic, girth 5, confirmed by an explicit isomorphism to `GP(5,2)`.
pub fn is_petersen(x: &SimpleGraph) -> bool {
    x.order() == 10
        && x.regular_degree() == Some(3)
        && x.girth() == Some(5)
        && x.is_isomorphic(&petersen())
}

/// Every generator of `g` is an automorphism and `g` is transitive.
pub fn is_vertex_transitive_witnessed(x: &SimpleGraph, g: &PermGroup) -> Result<bool> {
    if g.degree() != x.order() {
        return Err(Error::DegreeMismatch {
            expected: x.order(),
            found: g.degree(),
        });
    }
    Ok(g.is_transitive() && g.generators().iter().all(|p| x.is_automorphism(p)))
}

/// Smallest graph containing `seeds` whose edge set is invariant under `gens`.
pub fn orbital_graph(degree: usize, gens: &[Permutation], seeds: &[(usize, usize)]) -> Result<SimpleGraph> {
    let key = |u: usize, v: usize| if u < v { (u, v) } else { (v, u) };
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut stack = Vec::new();
    for &(u, v) in seeds {
        if u == v || u >= degree || v >= degree {
            return Err(Error::InvalidEdge(u, v));
        }
        if seen.insert(key(u, v)) {
            stack.push(key(u, v));
        }
    }
    while let Some((u, v)) = stack.pop() {
        for g in gens {
            let e = key(g.apply(u), g.apply(v));
            if seen.insert(e) {
                stack.push(e);
            }
        }
    }
    let mut edges: Vec<_> = seen.into_iter().collect();
    edges.sort_unstable();
    SimpleGraph::from_edges(degree, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::standard;

    fn cyc(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &c.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn s3_coset_triangle() {
        let s3 = PermGroup::symmetric(3);
        let cg = coset_graph(&s3, &[cyc(3, &[&[0, 1]])], &[cyc(3, &[&[0, 1, 2]])]).unwrap();
        assert!(cg.graph.is_isomorphic(&standard::complete(3)));
        assert!(cg.undirected_ok && cg.connected && cg.generates);
    }

    #[test]
    fn cyclic_cayley_graphs() {
        let z = PermGroup::cyclic(10);
        let r1 = Permutation::rotation(10, 1);
        let cg = cayley_graph(&z, &[r1.clone(), r1.inverse()]).unwrap();
        assert!(cg.graph.is_isomorphic(&standard::cycle(10)));
        let r2 = Permutation::rotation(10, 2);
        let cg = cayley_graph(&z, &[r2.clone(), r2.inverse()]).unwrap();
        assert_eq!(cg.graph.components().len(), 2);
        assert!(!cg.connected && !cg.generates);
        let cg = cayley_graph(&z, std::slice::from_ref(&r1)).unwrap();
        assert!(!cg.undirected_ok);
        assert_eq!(cg.graph.regular_degree(), Some(2));
    }

    #[test]
    fn s_inside_h_is_discarded() {
        let s3 = PermGroup::symmetric(3);
        let t = cyc(3, &[&[0, 1]]);
        let cg = coset_graph(&s3, std::slice::from_ref(&t), &[t.clone(), cyc(3, &[&[0, 1, 2]])]).unwrap();
        assert_eq!(cg.discarded.len(), 1);
        assert_eq!(cg.graph.edge_count(), 3);
    }

    #[test]
    fn s3_bicoset_examples() {
        let s3 = PermGroup::symmetric(3).closed(10).unwrap();
        let l = vec![cyc(3, &[&[0, 1]])];
        let all = s3.elements().unwrap().to_vec();
        let b = bicoset_graph(&s3, &l, &l, &all).unwrap();
        assert!(b.graph.is_isomorphic(&standard::complete_bipartite(3, 3)));
        assert!(b.connected && b.generates);
        let lel: Vec<Permutation> = vec![Permutation::identity(3), cyc(3, &[&[0, 1]])];
        let b = bicoset_graph(&s3, &l, &l, &lel).unwrap();
        assert_eq!(b.graph.edge_count(), 3);
        assert_eq!(b.graph.regular_degree(), Some(1));
        assert!(!b.connected && !b.generates);
        let b = bicoset_graph(&s3, &l, &l, &[cyc(3, &[&[0, 1, 2]])]).unwrap();
        assert_eq!(b.closed_d, 4);
        assert_eq!(b.graph.edge_count(), 4 * 6 / 4);
    }

    #[test]
    fn gp_examples() {
        let p = petersen();
        assert_eq!((p.order(), p.regular_degree(), p.girth()), (10, Some(3), Some(5)));
        assert!(generalized_petersen(4, 1).unwrap().is_isomorphic(&standard::hypercube(3)));
        assert!(generalized_petersen(6, 3).is_err());
        assert!(generalized_petersen(2, 1).is_err());
        assert!(is_petersen(&p));
        assert!(!is_petersen(&generalized_petersen(7, 2).unwrap()));
        assert!(!is_petersen(&standard::complete_bipartite(5, 5)));
    }

    #[test]
    fn truncation_examples() {
        let t = truncation(&standard::complete(4)).unwrap();
        assert_eq!((t.order(), t.regular_degree()), (12, Some(3)));
        let tp = truncation(&petersen()).unwrap();
        assert_eq!((tp.order(), tp.regular_degree()), (30, Some(3)));
        assert!(tp.is_connected());
        assert!(matches!(truncation(&standard::cycle(5)), Err(Error::NotCubic)));
    }

    #[test]
    fn induced_petersen_rim() {
        let p = petersen();
        let outer: Vec<usize> = (0..5).collect();
        let inner: Vec<usize> = (5..10).collect();
        assert!(p.induced(&outer).unwrap().is_isomorphic(&standard::cycle(5)));
        assert_eq!(p.regular_bivalency(&outer, &inner), Some(1));
    }

    #[test]
    fn witnessed_transitivity() {
        let c = standard::cycle(10);
        assert!(is_vertex_transitive_witnessed(&c, &PermGroup::cyclic(10)).unwrap());
        let p = petersen();
        let aut = p.automorphism_group();
        assert!(is_vertex_transitive_witnessed(&p, &aut).unwrap());
        assert!(!is_vertex_transitive_witnessed(&standard::path(4), &PermGroup::cyclic(4)).unwrap());
        assert!(is_vertex_transitive_witnessed(&c, &PermGroup::cyclic(5)).is_err());
    }

    #[test]
    fn orbital_graph_of_rotation_is_cycle() {
        let g = orbital_graph(7, &[Permutation::rotation(7, 1)], &[(0, 1)]).unwrap();
        assert!(g.is_isomorphic(&standard::cycle(7)));
    }
}
