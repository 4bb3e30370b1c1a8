//! Permutations and small permutation groups.
//!
//! Products are read left to right: `p.then(&q)` applies `p` first and `q`
//! second, so `i^(pq) = (i^p)^q`. This matches the right actions used for
//! cosets throughout the crate (`Hx · g = H(xg)`).

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::union_find::UnionFind;

/// Default upper bound on the number of elements a closure may produce.
pub const DEFAULT_ELEMENT_CAP: usize = 2_000_000;

/// Environment variable overriding [`DEFAULT_ELEMENT_CAP`].
pub const ELEMENT_CAP_ENV: &str = "HAMLIFT_MAX_ELEMENTS";

/// Closure cap in effect, honouring `HAMLIFT_MAX_ELEMENTS`.
pub fn element_cap() -> usize {
    std::env::var(ELEMENT_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&c| c > 0)
        .unwrap_or(DEFAULT_ELEMENT_CAP)
}

/// A bijection of `{0, .., degree-1}` stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::NotAPermutation("empty image list".into()));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(format!(
                    "image {x} out of range or repeated (degree {n})"
                )));
            }
            seen[x] = true;
        }
        Ok(Self {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Builds a permutation from disjoint cycles, e.g. `[[0, 1, 2], [3, 4]]`.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a >= degree || touched[a] {
                    return Err(Error::NotAPermutation(format!(
                        "cycle point {a} out of range or repeated"
                    )));
                }
                touched[a] = true;
                images[a] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    /// The map `i -> i + shift (mod degree)`.
    pub fn rotation(degree: usize, shift: usize) -> Self {
        Self {
            images: (0..degree).map(|i| ((i + shift) % degree) as u32).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    /// `self` first, then `q`. Both must share a degree.
    pub fn then(&self, q: &Permutation) -> Permutation {
        assert_eq!(self.degree(), q.degree(), "degree mismatch in product");
        Permutation {
            images: self.images.iter().map(|&x| q.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// `g^-1 · self · g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// All cycles including fixed points, each starting at its least point,
    /// ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut cyc = vec![s];
            seen[s] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Points moved by the permutation.
    pub fn support(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.apply(i) != i).collect()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images()
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::from_images(v)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// `p` applied first, then `q`.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch {
            expected: p.degree(),
            found: q.degree(),
        });
    }
    Ok(p.then(q))
}

/// Closed element set with an index for membership tests.
#[derive(Debug)]
pub struct ElementTable {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl ElementTable {
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// A permutation group given by generators, optionally with its full element list.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    table: Option<Arc<ElementTable>>,
}

impl PermGroup {
    /// Group generated by `generators`; an empty list gives the trivial group.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidParams("degree must be positive".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(Self {
            degree,
            generators,
            table: None,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self {
            degree,
            generators: Vec::new(),
            table: None,
        }
    }

    /// The regular cyclic group generated by `i -> i+1 mod n`.
    pub fn cyclic(n: usize) -> Self {
        Self {
            degree: n,
            generators: vec![Permutation::rotation(n, 1)],
            table: None,
        }
    }

    /// Symmetric group on `n >= 2` points, generated by an `n`-cycle and a transposition.
    pub fn symmetric(n: usize) -> Self {
        let mut gens = vec![Permutation::rotation(n, 1)];
        if n > 2 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).expect("transposition"));
        }
        Self {
            degree: n,
            generators: gens,
            table: None,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn is_cached(&self) -> bool {
        self.table.is_some()
    }

    pub fn table(&self) -> Option<&ElementTable> {
        self.table.as_deref()
    }

    pub fn elements(&self) -> Option<&[Permutation]> {
        self.table.as_deref().map(|t| t.elements())
    }

    /// Elements, or `NotCached`.
    pub fn cached_elements(&self) -> Result<&[Permutation]> {
        self.elements().ok_or(Error::NotCached)
    }

    pub fn order(&self) -> Option<usize> {
        self.table.as_ref().map(|t| t.len())
    }

    /// Returns this group with its element list cached.
    pub fn closed(&self, cap: usize) -> Result<PermGroup> {
        if self.table.is_some() {
            return Ok(self.clone());
        }
        let table = close(self.degree, &self.generators, cap)?;
        Ok(PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            table: Some(Arc::new(table)),
        })
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        let t = self.table.as_deref().ok_or(Error::NotCached)?;
        Ok(t.index.contains_key(p))
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.table.as_deref().and_then(|t| t.index_of(p))
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Wraps an already closed element list; `elements` must form a group.
    pub(crate) fn from_closed_elements(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
    ) -> Self {
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        PermGroup {
            degree,
            generators,
            table: Some(Arc::new(ElementTable { elements, index })),
        }
    }
}

fn close(degree: usize, gens: &[Permutation], cap: usize) -> Result<ElementTable> {
    let id = Permutation::identity(degree);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::new();
    index.insert(id, 0usize);
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        head += 1;
        for g in gens {
            let y = x.then(g);
            if !index.contains_key(&y) {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                index.insert(y.clone(), elements.len());
                elements.push(y);
            }
        }
    }
    Ok(ElementTable { elements, index })
}

/// Breadth-first closure of `gens` under composition.
pub fn generate_elements(gens: &[Permutation], cap: usize) -> Result<PermGroup> {
    let first = gens.first().ok_or(Error::NoGenerators)?;
    let g = PermGroup::new(first.degree(), gens.to_vec())?;
    g.closed(cap)
}

fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(degree);
    for g in gens {
        for i in 0..degree {
            uf.union(i, g.apply(i));
        }
    }
    uf.cells()
}

/// Orbit partition of the group on its points, ordered by least point.
pub fn orbits(group: &PermGroup) -> Vec<Vec<usize>> {
    group.orbits()
}

/// A partition of the points into equal blocks, stored in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockSystem {
    blocks: Vec<Vec<usize>>,
    block_size: usize,
}

impl BlockSystem {
    /// Validates that `cells` is a partition of `{0..degree-1}` into equal cells.
    pub fn from_partition(mut cells: Vec<Vec<usize>>, degree: usize) -> Result<Self> {
        let mut seen = vec![false; degree];
        let mut size = None;
        for c in cells.iter_mut() {
            if c.is_empty() {
                return Err(Error::InvalidPartition("empty cell".into()));
            }
            c.sort_unstable();
            for &x in c.iter() {
                if x >= degree || seen[x] {
                    return Err(Error::InvalidPartition(format!(
                        "point {x} out of range or repeated"
                    )));
                }
                seen[x] = true;
            }
            match size {
                None => size = Some(c.len()),
                Some(s) if s != c.len() => {
                    return Err(Error::InvalidPartition("cells of unequal size".into()))
                }
                _ => {}
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::InvalidPartition("cells do not cover all points".into()));
        }
        cells.sort_unstable_by_key(|c| c[0]);
        Ok(Self {
            block_size: size.unwrap_or(0),
            blocks: cells,
        })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn degree(&self) -> usize {
        self.blocks.len() * self.block_size
    }

    /// Block index of every point.
    pub fn block_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.degree()];
        for (b, cell) in self.blocks.iter().enumerate() {
            for &x in cell {
                out[x] = b;
            }
        }
        out
    }

    /// Singletons or the whole set.
    pub fn is_trivial(&self) -> bool {
        self.block_size == 1 || self.blocks.len() == 1
    }

    /// Checks that every generator maps every block onto a block.
    pub fn is_invariant_under(&self, gens: &[Permutation]) -> bool {
        let block_of = self.block_of();
        gens.iter().all(|g| {
            g.degree() == self.degree()
                && self.blocks.iter().all(|cell| {
                    let target = block_of[g.apply(cell[0])];
                    cell.iter().all(|&x| block_of[g.apply(x)] == target)
                })
        })
    }

    /// True when every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &BlockSystem) -> bool {
        let outer = other.block_of();
        self.degree() == other.degree()
            && self
                .blocks
                .iter()
                .all(|c| c.iter().all(|&x| outer[x] == outer[c[0]]))
    }
}

/// The `N`-orbits as a block system of `G`. Checks `N ⊴ G` and equal orbit sizes.
pub fn orbit_block_system(g: &PermGroup, n: &PermGroup) -> Result<BlockSystem> {
    if g.degree() != n.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            found: n.degree(),
        });
    }
    if !is_normal(g, n)? {
        return Err(Error::NotNormal);
    }
    let cells = n.orbits();
    let size = cells[0].len();
    if cells.iter().any(|c| c.len() != size) {
        return Err(Error::UnequalOrbits);
    }
    let sys = BlockSystem::from_partition(cells, g.degree())?;
    debug_assert!(sys.is_invariant_under(g.generators()));
    Ok(sys)
}

/// Finest `G`-invariant partition in which `a` and `b` share a cell.
pub fn finest_block_system(degree: usize, gens: &[Permutation], a: usize, b: usize) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(degree);
    let mut queue = VecDeque::new();
    if uf.union(a, b).is_some() {
        queue.push_back((a, b));
    }
    while let Some((x, y)) = queue.pop_front() {
        for g in gens {
            let (gx, gy) = (g.apply(x), g.apply(y));
            let (rx, ry) = (uf.find(gx), uf.find(gy));
            if rx != ry {
                uf.union(rx, ry);
                queue.push_back((rx, ry));
            }
        }
    }
    uf.cells()
}

/// All minimal nontrivial block systems of a transitive group.
///
/// For each `v != 0` the finest system joining `0` and `v` is computed; the
/// distinct nontrivial ones are kept when no other candidate strictly refines
/// them. An empty result means the group is primitive.
pub fn minimal_block_systems(g: &PermGroup) -> Result<Vec<BlockSystem>> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let n = g.degree();
    let mut found: Vec<BlockSystem> = Vec::new();
    let mut seen = HashSet::new();
    for v in 1..n {
        let cells = finest_block_system(n, g.generators(), 0, v);
        if cells.len() == 1 {
            continue;
        }
        let sys = BlockSystem::from_partition(cells, n)?;
        if seen.insert(sys.clone()) {
            found.push(sys);
        }
    }
    let minimal: Vec<BlockSystem> = found
        .iter()
        .filter(|s| !found.iter().any(|t| t != *s && t.refines(s)))
        .cloned()
        .collect();
    Ok(minimal)
}

/// A permutation whose cycles all share one length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiregularDecomposition {
    pub perm: Permutation,
    /// Number of cycles.
    pub m: usize,
    /// Common cycle length.
    pub n: usize,
    /// Cycles in order of least point; each lists `x, x^ρ, x^ρ², ...`.
    pub orbits: Vec<Vec<usize>>,
}

impl SemiregularDecomposition {
    /// Position of every point within its cycle.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.perm.degree()];
        for cyc in &self.orbits {
            for (j, &x) in cyc.iter().enumerate() {
                pos[x] = j;
            }
        }
        pos
    }

    /// Cycle index of every point.
    pub fn cell_of(&self) -> Vec<usize> {
        let mut cell = vec![0; self.perm.degree()];
        for (c, cyc) in self.orbits.iter().enumerate() {
            for &x in cyc {
                cell[x] = c;
            }
        }
        cell
    }
}

/// `(m, n)` cycle structure when all cycles have equal length.
pub fn semiregular_decomposition(p: &Permutation) -> Option<SemiregularDecomposition> {
    let orbits = p.cycles();
    let n = orbits[0].len();
    if orbits.iter().any(|c| c.len() != n) {
        return None;
    }
    Some(SemiregularDecomposition {
        perm: p.clone(),
        m: orbits.len(),
        n,
        orbits,
    })
}

/// Elements of a cached group fixing `v`.
pub fn point_stabilizer(g: &PermGroup, v: usize) -> Result<PermGroup> {
    let elements = g.cached_elements()?;
    if v >= g.degree() {
        return Err(Error::InvalidParams(format!("point {v} out of range")));
    }
    let stab: Vec<Permutation> = elements.iter().filter(|p| p.apply(v) == v).cloned().collect();
    let gens: Vec<Permutation> = stab.iter().filter(|p| !p.is_identity()).cloned().collect();
    Ok(PermGroup::from_closed_elements(g.degree(), gens, stab))
}

/// Whether every conjugate of every generator of `n` by a generator of `g` lies in `n`.
pub fn is_normal(g: &PermGroup, n: &PermGroup) -> Result<bool> {
    if g.degree() != n.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            found: n.degree(),
        });
    }
    if n.generators().iter().all(Permutation::is_identity) {
        return Ok(true);
    }
    let closed;
    let n = if n.is_cached() {
        n
    } else {
        closed = n.closed(element_cap())?;
        &closed
    };
    for x in n.generators() {
        for h in g.generators() {
            if !n.contains(&x.conjugate_by(h))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Subgroup of a cached group generated by `gens`, closed inside the same cap.
pub fn subgroup(degree: usize, gens: Vec<Permutation>, cap: usize) -> Result<PermGroup> {
    PermGroup::new(degree, gens)?.closed(cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &c.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn compose_identity_and_involution() {
        let p = cyc(3, &[&[0, 1, 2]]);
        let id = Permutation::identity(3);
        assert_eq!(compose(&id, &p).unwrap(), p);
        let t = cyc(3, &[&[0, 1]]);
        assert!(compose(&t, &t).unwrap().is_identity());
    }

    #[test]
    fn compose_matches_pointwise_tables() {
        let p = cyc(3, &[&[0, 1, 2]]);
        let q = cyc(3, &[&[0, 1]]);
        let pq = compose(&p, &q).unwrap();
        // Pointwise: i -> q[p[i]].
        let expected: Vec<usize> = (0..3).map(|i| q.images()[p.images()[i]]).collect();
        assert_eq!(pq.images(), expected);
        assert_eq!(pq.images(), vec![0, 2, 1]);
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let err = compose(&Permutation::identity(3), &Permutation::identity(4));
        assert!(matches!(err, Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_images(vec![]).is_err());
    }

    #[test]
    fn closure_orders() {
        let g = generate_elements(&[Permutation::rotation(10, 1)], DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(g.order(), Some(10));
        let a5 = generate_elements(
            &[cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[0, 1, 2]])],
            DEFAULT_ELEMENT_CAP,
        )
        .unwrap();
        assert_eq!(a5.order(), Some(60));
        let s3 = generate_elements(&[cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])], DEFAULT_ELEMENT_CAP)
            .unwrap();
        assert_eq!(s3.order(), Some(6));
    }

    #[test]
    fn closure_cap_is_enforced() {
        let r = generate_elements(PermGroup::symmetric(6).generators(), 100);
        assert!(matches!(r, Err(Error::CapExceeded { cap: 100 })));
        assert!(matches!(generate_elements(&[], 10), Err(Error::NoGenerators)));
    }

    #[test]
    fn orbit_examples() {
        let g = PermGroup::new(5, vec![cyc(5, &[&[0, 1], &[2, 3]])]).unwrap();
        assert_eq!(orbits(&g), vec![vec![0, 1], vec![2, 3], vec![4]]);
        assert_eq!(orbits(&PermGroup::cyclic(10)).len(), 1);
        let g = PermGroup::new(10, vec![cyc(10, &[&[0, 5], &[1, 6], &[2, 7], &[3, 8], &[4, 9]])])
            .unwrap();
        assert!(orbits(&g).iter().all(|o| o.len() == 2));
        assert_eq!(orbits(&g).len(), 5);
    }

    #[test]
    fn orbit_block_systems_of_cyclic_group() {
        let g = PermGroup::cyclic(10);
        let n5 = PermGroup::new(10, vec![Permutation::rotation(10, 2)]).unwrap();
        let sys = orbit_block_system(&g, &n5).unwrap();
        assert_eq!((sys.num_blocks(), sys.block_size()), (2, 5));
        let n2 = PermGroup::new(10, vec![Permutation::rotation(10, 5)]).unwrap();
        let sys = orbit_block_system(&g, &n2).unwrap();
        assert_eq!((sys.num_blocks(), sys.block_size()), (5, 2));
    }

    #[test]
    fn orbit_block_system_rejects_non_normal() {
        let s3 = PermGroup::symmetric(3);
        let n = PermGroup::new(3, vec![cyc(3, &[&[0, 1]])]).unwrap();
        assert!(matches!(orbit_block_system(&s3, &n), Err(Error::NotNormal)));
    }

    #[test]
    fn minimal_blocks_examples() {
        let sizes: Vec<usize> = minimal_block_systems(&PermGroup::cyclic(10))
            .unwrap()
            .iter()
            .map(BlockSystem::block_size)
            .collect();
        assert_eq!(sizes.len(), 2);
        assert!(sizes.contains(&2) && sizes.contains(&5));
        let a5 = PermGroup::new(5, vec![cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[0, 1, 2]])]).unwrap();
        assert!(minimal_block_systems(&a5).unwrap().is_empty());
        assert!(minimal_block_systems(&PermGroup::cyclic(7)).unwrap().is_empty());
        // Z8: the size-4 system is refined by the size-2 one and is dropped.
        let z8 = minimal_block_systems(&PermGroup::cyclic(8)).unwrap();
        assert_eq!(z8.len(), 1);
        assert_eq!(z8[0].block_size(), 2);
    }

    #[test]
    fn minimal_blocks_requires_transitivity() {
        let g = PermGroup::new(4, vec![cyc(4, &[&[0, 1]])]).unwrap();
        assert!(matches!(minimal_block_systems(&g), Err(Error::NotTransitive)));
    }

    #[test]
    fn semiregular_examples() {
        let d = semiregular_decomposition(&Permutation::rotation(10, 1)).unwrap();
        assert_eq!((d.m, d.n), (1, 10));
        let d = semiregular_decomposition(&Permutation::rotation(10, 2)).unwrap();
        assert_eq!((d.m, d.n), (2, 5));
        assert_eq!(d.orbits[0], vec![0, 2, 4, 6, 8]);
        assert!(semiregular_decomposition(&cyc(10, &[&[0, 1]])).is_none());
    }

    #[test]
    fn stabilizer_examples() {
        let z = PermGroup::cyclic(10).closed(100).unwrap();
        assert_eq!(point_stabilizer(&z, 3).unwrap().order(), Some(1));
        let s3 = PermGroup::symmetric(3).closed(100).unwrap();
        assert_eq!(point_stabilizer(&s3, 0).unwrap().order(), Some(2));
        assert!(matches!(point_stabilizer(&PermGroup::symmetric(3), 0), Err(Error::NotCached)));
    }

    #[test]
    fn normality_examples() {
        let s3 = PermGroup::symmetric(3);
        assert!(is_normal(&s3, &PermGroup::trivial(3)).unwrap());
        let c3 = PermGroup::new(3, vec![cyc(3, &[&[0, 1, 2]])]).unwrap();
        assert!(is_normal(&s3, &c3).unwrap());
        let c2 = PermGroup::new(3, vec![cyc(3, &[&[0, 1]])]).unwrap();
        assert!(!is_normal(&s3, &c2).unwrap());
    }

    #[test]
    fn display_uses_cycle_notation() {
        assert_eq!(cyc(5, &[&[0, 1, 2], &[3, 4]]).to_string(), "(0 1 2)(3 4)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
        assert_eq!(cyc(6, &[&[0, 1, 2], &[3, 4]]).order(), 6);
    }

    #[test]
    fn serde_round_trip_and_rejects_bad_images() {
        let p = cyc(4, &[&[0, 2, 1]]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[2,0,1,3]");
        let back: Permutation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Permutation>("[0,0]").is_err());
    }
}
