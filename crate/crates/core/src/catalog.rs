//! Minimal transitive permutation groups of degree 10, with an audit that
//! re-checks transitivity and minimality by walking the subgroup lattice.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::GroupSpec;
use crate::perm::{PermGroup, Permutation};

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub order: usize,
    pub spec: GroupSpec,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Deg10Catalog {
    pub entries: Vec<CatalogEntry>,
    /// Number of groups the source lemma announces.
    pub stated_count: usize,
    /// The announced count differs from the number of listed groups.
    pub count_discrepancy: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryAudit {
    pub name: String,
    pub degree: usize,
    pub order: usize,
    pub transitive: bool,
    pub minimal: bool,
    pub subgroups: usize,
}

fn perm(images: Vec<usize>) -> Permutation {
    Permutation::from_images(images).expect("catalog permutations are bijections")
}

/// Right regular action of a closed group on its own element indices.
fn regular(g: &PermGroup) -> Result<Vec<Permutation>> {
    let elems = g.cached_elements()?;
    g.generators()
        .iter()
        .map(|s| {
            let images = elems
                .iter()
                .map(|x| g.index_of(&x.then(s)).ok_or(Error::NotCached))
                .collect::<Result<Vec<_>>>()?;
            Permutation::from_images(images)
        })
        .collect()
}

fn entry(name: &str, gens: Vec<Permutation>, note: &str) -> CatalogEntry {
    let g = PermGroup::new(10, gens).expect("degree 10");
    let order = g.closed(10_000).expect("small group").order().expect("closed");
    CatalogEntry {
        name: name.into(),
        order,
        spec: GroupSpec::from_group(name, &g),
        note: note.into(),
    }
}

pub fn deg10_catalog() -> Deg10Catalog {
    let z10 = perm((0..10).map(|i| (i + 1) % 10).collect());

    let d5 = PermGroup::new(5, vec![perm(vec![1, 2, 3, 4, 0]), perm(vec![0, 4, 3, 2, 1])])
        .expect("degree 5")
        .closed(100)
        .expect("order 10");
    let d10 = regular(&d5).expect("closed");

    // Points (h, j) = 5h + j. Translations act on each half; tau swaps the
    // halves and squares to j -> 2j, of order 8.
    let t0 = perm((0..10).map(|v| if v < 5 { (v + 1) % 5 } else { v }).collect());
    let t1 = perm((0..10).map(|v| if v < 5 { v } else { 5 + (v + 1) % 5 }).collect());
    let tau = perm((0..10).map(|v| if v < 5 { 5 + v } else { 2 * (v - 5) % 5 }).collect());

    // Points (i, e) = 2i + e. The 5-cycle moves i; flips act on even-weight
    // sets of coordinates.
    let rot = perm((0..10).map(|v| (v + 2) % 10).collect());
    let flip = perm((0..10).map(|v| if v < 4 { v ^ 1 } else { v }).collect());

    // Unordered pairs of Z_5 under x -> x + 1 and x -> 2x.
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    let on_pairs = |f: &dyn Fn(usize) -> usize| {
        perm(
            pairs
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (f(a), f(b));
                    pairs.iter().position(|&p| p == (x.min(y), x.max(y))).expect("pair")
                })
                .collect(),
        )
    };
    let shift = on_pairs(&|x| (x + 1) % 5);
    let double = on_pairs(&|x| 2 * x % 5);
    let three_cycle = on_pairs(&|x| [1, 2, 0, 3, 4][x]);

    let entries = vec![
        entry("Z10", vec![z10], "cyclic, regular"),
        entry("D10", d10, "dihedral of order 10, regular"),
        entry(
            "Z5^2:Z8",
            vec![t0, t1, tau],
            "Z5^2 by Z_(2^m) with m = 3; the swap acts on Z5^2 without invariant lines",
        ),
        entry("Z2^4:Z5", vec![rot, flip], "even-weight flips of five coordinate pairs, rotated by Z5"),
        entry("Z5:Z4", vec![shift.clone(), double], "affine group of Z5 on unordered pairs"),
        entry("A5", vec![shift, three_cycle], "alternating group on unordered pairs of five points"),
    ];
    Deg10Catalog {
        count_discrepancy: entries.len() != 5,
        stated_count: 5,
        entries,
    }
}

/// Every subgroup of a closed group, as sorted element-index sets. Built as
/// joins of cyclic subgroups until no new subgroup appears.
pub fn all_subgroups(g: &PermGroup) -> Result<Vec<Vec<usize>>> {
    let elems = g.cached_elements()?;
    let n = elems.len();
    let idx = |p: &Permutation| g.index_of(p).ok_or(Error::NotCached);
    let close = |gens: &[usize]| -> Result<Vec<usize>> {
        let id = idx(&Permutation::identity(g.degree()))?;
        let mut seen = vec![false; n];
        seen[id] = true;
        let mut out = vec![id];
        let mut k = 0;
        while k < out.len() {
            let x = &elems[out[k]];
            k += 1;
            for &s in gens {
                let y = idx(&x.then(&elems[s]))?;
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    };
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut gens_of: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for i in 0..n {
        let c = close(&[i])?;
        if found.insert(c.clone()) {
            gens_of.push((c, vec![i]));
        }
    }
    let cyclic = gens_of.clone();
    let mut frontier = gens_of.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (sub, gens) in &frontier {
            let members: HashSet<usize> = sub.iter().copied().collect();
            for (_, cg) in &cyclic {
                if members.contains(&cg[0]) {
                    continue;
                }
                let mut joined = gens.clone();
                joined.push(cg[0]);
                let c = close(&joined)?;
                if found.insert(c.clone()) {
                    next.push((c, joined));
                }
            }
        }
        frontier = next;
    }
    Ok(found.into_iter().collect())
}

/// Transitive, and every proper subgroup is intransitive.
pub fn is_minimal_transitive(g: &PermGroup) -> Result<bool> {
    let g = g.closed(100_000)?;
    if !g.is_transitive() {
        return Ok(false);
    }
    let elems = g.cached_elements()?;
    let order = elems.len();
    for sub in all_subgroups(&g)? {
        if sub.len() == order || sub.len() % g.degree() != 0 {
            continue;
        }
        let gens: Vec<Permutation> = sub.iter().map(|&i| elems[i].clone()).collect();
        if PermGroup::new(g.degree(), gens)?.is_transitive() {
            return Ok(false);
        }
    }
    Ok(true)
}

impl Deg10Catalog {
    pub fn audit(&self) -> Result<Vec<EntryAudit>> {
        self.entries
            .iter()
            .map(|e| {
                let g = e.spec.to_group()?.closed(100_000)?;
                Ok(EntryAudit {
                    name: e.name.clone(),
                    degree: g.degree(),
                    order: g.order().expect("closed"),
                    transitive: g.is_transitive(),
                    minimal: is_minimal_transitive(&g)?,
                    subgroups: all_subgroups(&g)?.len(),
                })
            })
            .collect()
    }
}
