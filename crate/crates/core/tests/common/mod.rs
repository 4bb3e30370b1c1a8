#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use hamlift::build::orbital_graph;
use hamlift::perm::{PermGroup, Permutation};
use hamlift::SimpleGraph;
use rand::rngs::StdRng;
use rand::Rng;

/// Subset DP over Hamilton paths from vertex 0; exact for order <= 24.
pub fn held_karp(g: &SimpleGraph) -> bool {
    let n = g.order();
    assert!(n <= 24, "held_karp is exponential");
    if n < 3 {
        return false;
    }
    let full = (1usize << n) - 1;
    // reach[mask]: bitset of end vertices of paths 0 -> v covering `mask`.
    let mut reach = vec![0u32; 1 << n];
    reach[1] = 1;
    for mask in 1..=full {
        if mask & 1 == 0 || reach[mask] == 0 {
            continue;
        }
        let ends = reach[mask];
        for v in 0..n {
            if ends >> v & 1 == 0 {
                continue;
            }
            for &w in g.neighbors(v) {
                if mask >> w & 1 == 0 {
                    reach[mask | 1 << w] |= 1 << w;
                }
            }
        }
    }
    (0..n).any(|v| v != 0 && reach[full] >> v & 1 == 1 && g.has_edge(v, 0))
}

/// Literal enumeration of vertex orders starting at 0.
pub fn permutation_oracle(g: &SimpleGraph) -> bool {
    let n = g.order();
    assert!(n <= 10);
    if n < 3 {
        return false;
    }
    let mut rest: Vec<usize> = (1..n).collect();
    fn permute(k: usize, rest: &mut Vec<usize>, g: &SimpleGraph) -> bool {
        if k == rest.len() {
            let mut prev = 0;
            for &v in rest.iter() {
                if !g.has_edge(prev, v) {
                    return false;
                }
                prev = v;
            }
            return g.has_edge(prev, 0);
        }
        for i in k..rest.len() {
            rest.swap(k, i);
            if permute(k + 1, rest, g) {
                return true;
            }
            rest.swap(k, i);
        }
        false
    }
    permute(0, &mut rest, g)
}

/// Closure of a generator list by breadth-first multiplication.
pub fn closure(degree: usize, gens: &[Permutation]) -> Vec<Permutation> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut k = 0;
    while k < out.len() {
        let x = out[k].clone();
        k += 1;
        for s in gens {
            let y = x.then(s);
            if seen.insert(y.clone()) {
                out.push(y);
            }
        }
    }
    out
}

/// Directed coset arcs `Hx -> Hy` iff `y x^-1 in HSH`, found by enumerating
/// `h s x` for every coset representative. Returns whether the arc relation is
/// symmetric and whether `<H, S> = G`.
pub fn coset_oracle(g_elems: &[Permutation], h_elems: &[Permutation], s: &[Permutation]) -> (bool, bool) {
    let degree = g_elems[0].degree();
    let canon = |x: &Permutation| h_elems.iter().map(|h| h.then(x)).min().expect("H nonempty");
    let cosets: Vec<Permutation> = {
        let mut c: Vec<Permutation> = g_elems.iter().map(canon).collect();
        c.sort();
        c.dedup();
        c
    };
    let id_of: HashMap<Permutation, usize> = cosets.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let mut arcs = HashSet::new();
    for (i, x) in cosets.iter().enumerate() {
        for h in h_elems {
            for si in s {
                for h2 in h_elems {
                    let y = h.then(si).then(h2).then(x);
                    let j = id_of[&canon(&y)];
                    if i != j {
                        arcs.insert((i, j));
                    }
                }
            }
        }
    }
    let symmetric = arcs.iter().all(|&(i, j)| arcs.contains(&(j, i)));
    let mut gens: Vec<Permutation> = h_elems.to_vec();
    gens.extend(s.iter().cloned());
    let generated = closure(degree, &gens).len() == g_elems.len();
    (symmetric, generated)
}

/// Whether `<D'^-1 D'> = G` where `D' = R D L`.
pub fn bicoset_generation_oracle(
    g_elems: &[Permutation],
    l_elems: &[Permutation],
    r_elems: &[Permutation],
    d: &[Permutation],
) -> bool {
    let degree = g_elems[0].degree();
    let mut closed: Vec<Permutation> = Vec::new();
    for r in r_elems {
        for x in d {
            for l in l_elems {
                closed.push(r.then(x).then(l));
            }
        }
    }
    closed.sort();
    closed.dedup();
    let mut gens = Vec::new();
    for a in &closed {
        for b in &closed {
            gens.push(a.inverse().then(b));
        }
    }
    gens.sort();
    gens.dedup();
    closure(degree, &gens).len() == g_elems.len()
}

/// For a quotient cycle `c` over the cycles of `rho`: the number of
/// `<rho>`-classes of edges between consecutive orbits, and whether some choice
/// of one class per quotient edge forms a single cycle through every vertex of
/// the orbits in `c`.
pub fn lift_oracle(x: &SimpleGraph, rho: &Permutation, orbits: &[Vec<usize>], c: &[usize]) -> (Vec<usize>, bool) {
    let k = c.len();
    let canon = |u: usize, v: usize| {
        let mut best = (u.min(v), u.max(v));
        let (mut a, mut b) = (u, v);
        loop {
            a = rho.apply(a);
            b = rho.apply(b);
            if (a, b) == (u, v) {
                break;
            }
            best = best.min((a.min(b), a.max(b)));
        }
        best
    };
    let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
    for i in 0..k {
        let (a, b) = (&orbits[c[i]], &orbits[c[(i + 1) % k]]);
        let mut reps: Vec<(usize, usize)> = a
            .iter()
            .flat_map(|&u| x.neighbors(u).iter().filter(|w| b.contains(w)).map(move |&w| canon(u, w)))
            .collect();
        reps.sort();
        reps.dedup();
        classes.push(reps);
    }
    let mult: Vec<usize> = classes.iter().map(Vec::len).collect();
    let vertices: Vec<usize> = c.iter().flat_map(|&o| orbits[o].iter().copied()).collect();
    let mut choice = vec![0usize; k];
    let mut any_long = false;
    'outer: loop {
        let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..k {
            let (u0, w0) = classes[i][choice[i]];
            let (mut u, mut w) = (u0, w0);
            loop {
                adj.entry(u).or_default().push(w);
                adj.entry(w).or_default().push(u);
                u = rho.apply(u);
                w = rho.apply(w);
                if u == u0 {
                    break;
                }
            }
        }
        let two_regular = vertices.iter().all(|v| adj.get(v).is_some_and(|n| n.len() == 2));
        if two_regular {
            let mut seen = HashSet::from([vertices[0]]);
            let mut stack = vec![vertices[0]];
            while let Some(v) = stack.pop() {
                for &w in &adj[&v] {
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            if seen.len() == vertices.len() {
                any_long = true;
                break 'outer;
            }
        }
        let mut i = 0;
        loop {
            if i == k {
                break 'outer;
            }
            choice[i] += 1;
            if choice[i] < classes[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
    (mult, any_long)
}

pub fn perm(images: Vec<usize>) -> Permutation {
    Permutation::from_images(images).unwrap()
}

pub fn dihedral(n: usize) -> PermGroup {
    PermGroup::new(
        n,
        vec![
            perm((0..n).map(|i| (i + 1) % n).collect()),
            perm((0..n).map(|i| (n - i) % n).collect()),
        ],
    )
    .unwrap()
}

/// Product action on the disjoint union of the two point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let (da, db) = (a.degree(), b.degree());
    let mut gens = Vec::new();
    for g in a.generators() {
        gens.push(perm((0..da).map(|i| g.apply(i)).chain(da..da + db).collect()));
    }
    for g in b.generators() {
        gens.push(perm((0..da).chain((0..db).map(|i| da + g.apply(i))).collect()));
    }
    PermGroup::new(da + db, gens).unwrap()
}

pub fn alternating(n: usize) -> PermGroup {
    let three = perm((0..n).map(|i| [1, 2, 0].get(i).copied().unwrap_or(i)).collect());
    let long = if n % 2 == 1 {
        perm((0..n).map(|i| (i + 1) % n).collect())
    } else {
        perm((0..n).map(|i| if i == 0 { 0 } else { i % (n - 1) + 1 }).collect())
    };
    PermGroup::new(n, vec![three, long]).unwrap()
}

/// The four groups of order 70 as permutation groups.
pub fn order_70_groups() -> Vec<(&'static str, PermGroup)> {
    vec![
        ("Z70", PermGroup::cyclic(70)),
        ("D35", dihedral(35)),
        ("Z7xD5", direct_product(&PermGroup::cyclic(7), &dihedral(5))),
        ("Z5xD7", direct_product(&PermGroup::cyclic(5), &dihedral(7))),
    ]
}

/// Groups of order at most 120 for randomized coset specs.
pub fn small_groups() -> Vec<(&'static str, PermGroup)> {
    vec![
        ("S3", PermGroup::symmetric(3)),
        ("Z12", PermGroup::cyclic(12)),
        ("D6", dihedral(6)),
        ("D10", dihedral(10)),
        ("A4", alternating(4)),
        ("S4", PermGroup::symmetric(4)),
        ("Z3xS4", direct_product(&PermGroup::cyclic(3), &PermGroup::symmetric(4))),
        ("A5", alternating(5)),
        ("S5", PermGroup::symmetric(5)),
        ("Z2xA5", direct_product(&PermGroup::cyclic(2), &alternating(5))),
    ]
}

/// Up to three random non-identity elements together with their inverses.
pub fn random_symmetric_set(rng: &mut StdRng, elems: &[Permutation]) -> Vec<Permutation> {
    let k = rng.gen_range(1..=3);
    let mut s = Vec::new();
    for _ in 0..k {
        let x = &elems[rng.gen_range(1..elems.len())];
        for y in [x.clone(), x.inverse()] {
            if !s.contains(&y) {
                s.push(y);
            }
        }
    }
    s
}

/// Orbital graph of `p`-cycles on `m` orbits with a planted quotient cycle `c`.
pub fn random_lift_instance(rng: &mut StdRng) -> (SimpleGraph, Permutation, Vec<usize>) {
    let p = if rng.gen_bool(0.5) { 5 } else { 7 };
    let m = rng.gen_range(3..=70 / p);
    let n = m * p;
    let rho = Permutation::from_images((0..n).map(|v| v / p * p + (v % p + 1) % p).collect()).unwrap();
    let k = rng.gen_range(3..=m);
    let mut orbits: Vec<usize> = (0..m).collect();
    for i in (1..m).rev() {
        orbits.swap(i, rng.gen_range(0..=i));
    }
    let c: Vec<usize> = orbits[..k].to_vec();
    let mut seeds = Vec::new();
    for i in 0..k {
        seeds.push((c[i] * p, c[(i + 1) % k] * p + rng.gen_range(0..p)));
    }
    for _ in 0..rng.gen_range(0..=m) {
        let (a, b) = (rng.gen_range(0..m), rng.gen_range(0..m));
        let j = if a == b { rng.gen_range(1..p) } else { rng.gen_range(0..p) };
        seeds.push((a * p, b * p + j));
    }
    let x = orbital_graph(n, std::slice::from_ref(&rho), &seeds).unwrap();
    (x, rho, c)
}
