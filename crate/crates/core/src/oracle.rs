//! Brute-force ground truth for small graphs: maximum induced subgraphs by
//! subset enumeration, exact treewidth by elimination-order dynamic
//! programming, and Kuratowski-subdivision search.
//!
//! Nothing here shares code with the reducers or the certifiers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{MultiGraph, VertexId};

pub const DEFAULT_CAP: usize = 16;
pub const TREEWIDTH_CAP: usize = 10;
pub const KURATOWSKI_CAP: usize = 12;
pub const CAP_ENV: &str = "PLANARIZE_ORACLE_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropertyId {
    IndependentSet,
    Matching,
    LinearForest,
    Forest,
    Pseudoforest,
    Treewidth2,
    Outerplanar,
    Planar,
}

impl PropertyId {
    pub const ALL: [PropertyId; 8] = [
        PropertyId::IndependentSet,
        PropertyId::Matching,
        PropertyId::LinearForest,
        PropertyId::Forest,
        PropertyId::Pseudoforest,
        PropertyId::Treewidth2,
        PropertyId::Outerplanar,
        PropertyId::Planar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PropertyId::IndependentSet => "independent-set",
            PropertyId::Matching => "matching",
            PropertyId::LinearForest => "linear-forest",
            PropertyId::Forest => "forest",
            PropertyId::Pseudoforest => "pseudoforest",
            PropertyId::Treewidth2 => "treewidth2",
            PropertyId::Outerplanar => "outerplanar",
            PropertyId::Planar => "planar",
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PropertyId {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Self, OracleError> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        PropertyId::ALL
            .into_iter()
            .find(|p| p.name() == key)
            .ok_or_else(|| OracleError::UnknownProperty(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the oracle cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("oracle inputs must be simple graphs")]
    NotSimple,
    #[error("unknown property {0:?}")]
    UnknownProperty(String),
}

/// Cap from `PLANARIZE_ORACLE_CAP`, else [`DEFAULT_CAP`].
pub fn configured_cap() -> usize {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

/// Simple graph on `0..n` as neighbour bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits {
    adj: Vec<u32>,
}

impl Bits {
    fn n(&self) -> usize {
        self.adj.len()
    }

    fn full(&self) -> u32 {
        if self.n() == 32 {
            u32::MAX
        } else {
            (1u32 << self.n()) - 1
        }
    }

    fn deg_in(&self, v: usize, mask: u32) -> u32 {
        (self.adj[v] & mask).count_ones()
    }

    fn edges_in(&self, mask: u32) -> u32 {
        ones(mask).map(|v| self.deg_in(v, mask)).sum::<u32>() / 2
    }

    /// Components of the subgraph induced by `mask`, as masks.
    fn components_in(&self, mask: u32) -> Vec<u32> {
        let mut left = mask;
        let mut out = Vec::new();
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            loop {
                let grown = ones(comp).fold(comp, |acc, v| acc | (self.adj[v] & mask));
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    }

    fn induced(&self, mask: u32) -> Bits {
        let keep: Vec<usize> = ones(mask).collect();
        let adj = keep
            .iter()
            .map(|&v| {
                keep.iter()
                    .enumerate()
                    .filter(|&(_, &w)| self.adj[v] >> w & 1 == 1)
                    .fold(0u32, |acc, (j, _)| acc | 1 << j)
            })
            .collect();
        Bits { adj }
    }

    fn with_apex(&self) -> Bits {
        let n = self.n();
        let mut adj: Vec<u32> = self.adj.iter().map(|&a| a | 1 << n).collect();
        adj.push(self.full());
        Bits { adj }
    }
}

fn ones(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Compresses a simple graph; `ids[i]` is the vertex behind bit `i`.
fn to_bits(g: &MultiGraph) -> Result<(Bits, Vec<VertexId>), OracleError> {
    if !g.is_simple() {
        return Err(OracleError::NotSimple);
    }
    let ids: Vec<VertexId> = g.vertices().collect();
    assert!(
        ids.len() <= 31,
        "bitmask oracle supports at most 31 vertices"
    );
    let pos = |v: VertexId| ids.binary_search(&v).expect("live vertex");
    let adj = ids
        .iter()
        .map(|&v| g.adjacent(v).fold(0u32, |acc, w| acc | 1 << pos(w)))
        .collect();
    Ok((Bits { adj }, ids))
}

fn is_forest(b: &Bits, mask: u32) -> bool {
    b.edges_in(mask) as usize + b.components_in(mask).len() == mask.count_ones() as usize
}

fn holds(b: &Bits, mask: u32, p: PropertyId) -> bool {
    let max_deg = || ones(mask).map(|v| b.deg_in(v, mask)).max().unwrap_or(0);
    match p {
        PropertyId::IndependentSet => b.edges_in(mask) == 0,
        PropertyId::Matching => max_deg() <= 1,
        PropertyId::LinearForest => max_deg() <= 2 && is_forest(b, mask),
        PropertyId::Forest => is_forest(b, mask),
        PropertyId::Pseudoforest => b
            .components_in(mask)
            .into_iter()
            .all(|c| b.edges_in(c) <= c.count_ones()),
        PropertyId::Treewidth2 => treewidth_bits(&b.induced(mask)) <= 2,
        PropertyId::Planar => kuratowski_bits(&b.induced(mask)).is_none(),
        PropertyId::Outerplanar => kuratowski_bits(&b.induced(mask).with_apex()).is_none(),
    }
}

/// Whether the whole graph has property `p`, decided by the oracle's own
/// definitions.
pub fn has_property(g: &MultiGraph, p: PropertyId) -> Result<bool, OracleError> {
    if g.n() > 31 {
        return Err(OracleError::TooLarge { n: g.n(), cap: 31 });
    }
    let (b, _) = to_bits(g)?;
    Ok(holds(&b, b.full(), p))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxInduced {
    pub property: PropertyId,
    pub size: usize,
    pub witness: Vec<VertexId>,
}

/// Maximum induced subgraph with `p`, using the configured cap.
pub fn max_induced(g: &MultiGraph, p: PropertyId) -> Result<MaxInduced, OracleError> {
    max_induced_with_cap(g, p, configured_cap())
}

/// Tries sizes from `n` downwards and subsets in lexicographic order, so the
/// witness is the lexicographically smallest among maximum sets.
pub fn max_induced_with_cap(
    g: &MultiGraph,
    p: PropertyId,
    cap: usize,
) -> Result<MaxInduced, OracleError> {
    if g.n() > cap.min(31) {
        return Err(OracleError::TooLarge { n: g.n(), cap });
    }
    let (b, ids) = to_bits(g)?;
    let n = b.n();
    for k in (0..=n).rev() {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let mask = idx.iter().fold(0u32, |acc, &i| acc | 1 << i);
            if holds(&b, mask, p) {
                return Ok(MaxInduced {
                    property: p,
                    size: k,
                    witness: idx.iter().map(|&i| ids[i]).collect(),
                });
            }
            let Some(i) = (0..k).rev().find(|&i| idx[i] < i + n - k) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    unreachable!("the empty set has every property")
}

/// Treewidth by dynamic programming over elimination prefixes:
/// `TW(S) = min_{v ∈ S} max(TW(S − v), |Q(S − v, v)|)`, where `Q(S, v)` is the
/// set of vertices outside `S ∪ {v}` reachable from `v` through `S`.
fn treewidth_bits(b: &Bits) -> usize {
    let n = b.n();
    if n == 0 {
        return 0;
    }
    let full = b.full() as usize;
    let mut tw = vec![usize::MAX; full + 1];
    tw[0] = 0;
    for s in 1..=full {
        let s32 = s as u32;
        let mut best = usize::MAX;
        for v in ones(s32) {
            let rest = s32 & !(1 << v);
            let prev = tw[rest as usize];
            if prev >= best {
                continue;
            }
            // flood from v through `rest`
            let mut inside = 1u32 << v;
            let mut frontier = 0u32;
            loop {
                let reach = ones(inside).fold(0u32, |acc, x| acc | b.adj[x]);
                frontier |= reach & !s32;
                let grown = inside | (reach & rest);
                if grown == inside {
                    break;
                }
                inside = grown;
            }
            best = best.min(prev.max(frontier.count_ones() as usize));
        }
        tw[s] = best;
    }
    tw[full]
}

/// Exact treewidth of a simple graph with at most [`TREEWIDTH_CAP`] vertices.
pub fn exact_treewidth(g: &MultiGraph) -> Result<usize, OracleError> {
    if g.n() > TREEWIDTH_CAP {
        return Err(OracleError::TooLarge {
            n: g.n(),
            cap: TREEWIDTH_CAP,
        });
    }
    let (b, _) = to_bits(g)?;
    Ok(treewidth_bits(&b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// Branch vertices plus one path per branch-vertex pair (`K5`) or per
/// cross pair (`K33`, sides `branch[..3]` and `branch[3..]`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    pub branch: Vec<VertexId>,
    pub paths: Vec<Vec<VertexId>>,
}

impl KuratowskiWitness {
    /// Checks the witness against `g`: edges exist, paths are internally
    /// disjoint and avoid other branch vertices.
    pub fn verify(&self, g: &MultiGraph) -> bool {
        let pairs: Vec<(VertexId, VertexId)> = match self.kind {
            KuratowskiKind::K5 if self.branch.len() == 5 => {
                let mut p = Vec::new();
                for i in 0..5 {
                    for j in i + 1..5 {
                        p.push((self.branch[i], self.branch[j]));
                    }
                }
                p
            }
            KuratowskiKind::K33 if self.branch.len() == 6 => {
                let mut p = Vec::new();
                for i in 0..3 {
                    for j in 3..6 {
                        p.push((self.branch[i], self.branch[j]));
                    }
                }
                p
            }
            _ => return false,
        };
        if pairs.len() != self.paths.len() {
            return false;
        }
        let branch: std::collections::BTreeSet<VertexId> = self.branch.iter().copied().collect();
        if branch.len() != self.branch.len() {
            return false;
        }
        let mut used = std::collections::BTreeSet::new();
        for ((a, b), path) in pairs.iter().zip(&self.paths) {
            if path.len() < 2 || path[0] != *a || path[path.len() - 1] != *b {
                return false;
            }
            if !path.windows(2).all(|w| g.has_edge(w[0], w[1])) {
                return false;
            }
            for &x in &path[1..path.len() - 1] {
                if branch.contains(&x) || !used.insert(x) {
                    return false;
                }
            }
        }
        true
    }
}

struct PathSearch<'a> {
    b: &'a Bits,
    pairs: Vec<(usize, usize)>,
    paths: Vec<Vec<usize>>,
}

impl PathSearch<'_> {
    /// Some path from `a` to `b` whose interior lies in `free`.
    fn reachable(&self, a: usize, t: usize, free: u32) -> bool {
        if self.b.adj[a] >> t & 1 == 1 {
            return true;
        }
        let mut seen = self.b.adj[a] & free;
        loop {
            if ones(seen).any(|x| self.b.adj[x] >> t & 1 == 1) {
                return true;
            }
            let grown = ones(seen).fold(seen, |acc, x| acc | (self.b.adj[x] & free));
            if grown == seen {
                return false;
            }
            seen = grown;
        }
    }

    fn solve(&mut self, k: usize, free: u32) -> bool {
        if k == self.pairs.len() {
            return true;
        }
        for &(a, t) in &self.pairs[k..] {
            if !self.reachable(a, t, free) {
                return false;
            }
        }
        let (a, t) = self.pairs[k];
        let mut path = vec![a];
        self.extend(k, t, free, &mut path)
    }

    fn extend(&mut self, k: usize, t: usize, free: u32, path: &mut Vec<usize>) -> bool {
        let last = *path.last().expect("non-empty");
        if self.b.adj[last] >> t & 1 == 1 {
            path.push(t);
            self.paths.push(path.clone());
            if self.solve(k + 1, free) {
                return true;
            }
            self.paths.pop();
            path.pop();
        }
        for x in ones(self.b.adj[last] & free) {
            path.push(x);
            if self.extend(k, t, free & !(1 << x), path) {
                return true;
            }
            path.pop();
        }
        false
    }
}

fn kuratowski_bits(b: &Bits) -> Option<(KuratowskiKind, Vec<usize>, Vec<Vec<usize>>)> {
    // vertices of degree <= 1 lie on no path between branch vertices
    let mut alive = b.full();
    loop {
        let weak = ones(alive)
            .filter(|&v| b.deg_in(v, alive) <= 1)
            .fold(0u32, |acc, v| acc | 1 << v);
        if weak == 0 {
            break;
        }
        alive &= !weak;
    }
    let m = b.edges_in(alive) as usize;
    let alive_n = alive.count_ones() as usize;
    if alive_n < 5 || m < 9 {
        return None;
    }
    let cand4: Vec<usize> = ones(alive).filter(|&v| b.deg_in(v, alive) >= 4).collect();
    let cand3: Vec<usize> = ones(alive).filter(|&v| b.deg_in(v, alive) >= 3).collect();
    let mut found = None;
    for_each_combination(&cand4, 5, &mut |br| {
        let branch_mask = br.iter().fold(0u32, |acc, &v| acc | 1 << v);
        let mut pairs = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                pairs.push((br[i], br[j]));
            }
        }
        let mut search = PathSearch {
            b,
            pairs,
            paths: Vec::new(),
        };
        if search.solve(0, alive & !branch_mask) {
            found = Some((KuratowskiKind::K5, br.to_vec(), search.paths));
            return true;
        }
        false
    });
    if found.is_some() {
        return found;
    }
    for_each_combination(&cand3, 6, &mut |six| {
        let branch_mask = six.iter().fold(0u32, |acc, &v| acc | 1 << v);
        // sides: six[0] plus two others, against the remaining three
        let rest = &six[1..];
        let mut hit = false;
        for_each_combination(rest, 2, &mut |two| {
            let side_a = [six[0], two[0], two[1]];
            let side_b: Vec<usize> = rest.iter().copied().filter(|x| !two.contains(x)).collect();
            let mut pairs = Vec::new();
            for &x in &side_a {
                for &y in &side_b {
                    pairs.push((x, y));
                }
            }
            let mut search = PathSearch {
                b,
                pairs,
                paths: Vec::new(),
            };
            if search.solve(0, alive & !branch_mask) {
                let mut branch = side_a.to_vec();
                branch.extend(side_b);
                found = Some((KuratowskiKind::K33, branch, search.paths));
                hit = true;
            }
            hit
        });
        hit
    });
    found
}

/// Calls `f` on each `k`-combination of `items` in lexicographic order until
/// it returns true.
fn for_each_combination(items: &[usize], k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    let n = items.len();
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf = vec![0; k];
    loop {
        for (slot, &i) in buf.iter_mut().zip(&idx) {
            *slot = items[i];
        }
        if f(&buf) {
            return true;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] < i + n - k) else {
            return false;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// A `K5` or `K3,3` subdivision in a simple graph with at most
/// [`KURATOWSKI_CAP`] vertices, or `None` when the graph is planar.
pub fn find_kuratowski(g: &MultiGraph) -> Result<Option<KuratowskiWitness>, OracleError> {
    if g.n() > KURATOWSKI_CAP {
        return Err(OracleError::TooLarge {
            n: g.n(),
            cap: KURATOWSKI_CAP,
        });
    }
    let (b, ids) = to_bits(g)?;
    Ok(
        kuratowski_bits(&b).map(|(kind, branch, paths)| KuratowskiWitness {
            kind,
            branch: branch.into_iter().map(|i| ids[i]).collect(),
            paths: paths
                .into_iter()
                .map(|p| p.into_iter().map(|i| ids[i]).collect())
                .collect(),
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, complete_bipartite, cycle, fixture, path, Fixture};

    fn size(g: &MultiGraph, p: PropertyId) -> usize {
        max_induced_with_cap(g, p, 16).unwrap().size
    }

    #[test]
    fn max_induced_examples() {
        assert_eq!(size(&complete_bipartite(3, 3), PropertyId::Pseudoforest), 4);
        assert_eq!(size(&complete(5), PropertyId::Treewidth2), 3);
        assert_eq!(size(&cycle(4).unwrap(), PropertyId::Forest), 3);
        assert_eq!(size(&complete(6), PropertyId::Planar), 4);
        let w = max_induced_with_cap(&complete(5), PropertyId::Treewidth2, 16).unwrap();
        assert_eq!(w.witness, vec![VertexId(0), VertexId(1), VertexId(2)]);
    }

    #[test]
    fn other_properties() {
        let c5 = cycle(5).unwrap();
        assert_eq!(size(&c5, PropertyId::IndependentSet), 2);
        assert_eq!(size(&c5, PropertyId::Matching), 3);
        assert_eq!(size(&c5, PropertyId::LinearForest), 4);
        assert_eq!(size(&complete(4), PropertyId::Outerplanar), 3);
        assert_eq!(size(&complete_bipartite(2, 3), PropertyId::Outerplanar), 4);
        assert_eq!(size(&fixture(Fixture::K33), PropertyId::Outerplanar), 4);
    }

    #[test]
    fn caps() {
        let g = path(17);
        assert_eq!(
            max_induced_with_cap(&g, PropertyId::Forest, 16),
            Err(OracleError::TooLarge { n: 17, cap: 16 })
        );
        assert!(exact_treewidth(&path(11)).is_err());
        assert!(find_kuratowski(&path(13)).is_err());
        let mut multi = path(3);
        multi.add_edge(0.into(), 1.into()).unwrap();
        assert_eq!(exact_treewidth(&multi), Err(OracleError::NotSimple));
    }

    #[test]
    fn treewidth_examples() {
        assert_eq!(exact_treewidth(&complete(4)).unwrap(), 3);
        assert_eq!(exact_treewidth(&cycle(5).unwrap()).unwrap(), 2);
        assert_eq!(exact_treewidth(&complete_bipartite(3, 3)).unwrap(), 3);
        for k in 1..=6 {
            assert_eq!(exact_treewidth(&complete(k)).unwrap(), k - 1);
        }
        assert_eq!(exact_treewidth(&path(6)).unwrap(), 1);
        assert_eq!(exact_treewidth(&MultiGraph::default()).unwrap(), 0);
        assert_eq!(exact_treewidth(&fixture(Fixture::Petersen)).unwrap(), 4);
    }

    #[test]
    fn kuratowski_examples() {
        let k5 = complete(5);
        let w = find_kuratowski(&k5).unwrap().unwrap();
        assert_eq!(w.kind, KuratowskiKind::K5);
        assert!(w.verify(&k5));
        assert_eq!(find_kuratowski(&path(8)).unwrap(), None);
        let p = fixture(Fixture::Petersen);
        let w = find_kuratowski(&p).unwrap().unwrap();
        assert_eq!(w.kind, KuratowskiKind::K33);
        assert!(w.verify(&p));
        assert_eq!(find_kuratowski(&complete(4)).unwrap(), None);
        let k33 = complete_bipartite(3, 3);
        assert!(find_kuratowski(&k33).unwrap().unwrap().verify(&k33));
    }

    #[test]
    fn property_names() {
        for p in PropertyId::ALL {
            assert_eq!(p.name().parse::<PropertyId>().unwrap(), p);
        }
        assert!("tw3".parse::<PropertyId>().is_err());
    }
}
