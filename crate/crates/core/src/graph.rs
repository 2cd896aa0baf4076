//! Mutable undirected multigraph used as the reduction substrate.
//!
//! Adjacency is keyed by neighbor with an edge multiplicity, so parallel
//! edges cost nothing extra and contraction is `O(degree · log degree)`.
//! A self-loop at `v` is stored as `adj[v][v] = loops`; every loop adds 2 to
//! [`MultiGraph::degree`] and 1 to [`MultiGraph::edge_degree`].
//!
//! Vertex ids are slots in a vector and are never reused within one graph,
//! so a vertex keeps the id of the input vertex it came from for its whole
//! lifetime.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Stable identity of a vertex inside one [`MultiGraph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for VertexId {
    #[inline]
    fn from(i: usize) -> Self {
        VertexId(u32::try_from(i).expect("vertex index exceeds u32"))
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0} in input")]
    LoopInInput(u64),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("no edge between {0} and {1}")]
    NoSuchEdge(VertexId, VertexId),
    #[error("contraction survivor {survivor} is not an endpoint of ({u}, {v})")]
    BadSurvivor {
        u: VertexId,
        v: VertexId,
        survivor: VertexId,
    },
    #[error("cannot contract a self-loop at {0}")]
    ContractLoop(VertexId),
}

/// Length of a shortest cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiGraph {
    adj: Vec<Option<BTreeMap<VertexId, usize>>>,
    /// Working vertex -> original input vertex it represents.
    origin: Vec<VertexId>,
    n: usize,
    m: usize,
}

impl MultiGraph {
    /// Graph with `n` isolated vertices `0..n`.
    pub fn with_vertices(n: usize) -> Self {
        MultiGraph {
            adj: vec![Some(BTreeMap::new()); n],
            origin: (0..n).map(VertexId::from).collect(),
            n,
            m: 0,
        }
    }

    /// Graph whose id space is `0..id_bound` but where only `present` exist.
    pub fn with_vertex_set(id_bound: usize, present: impl IntoIterator<Item = VertexId>) -> Self {
        let mut g = MultiGraph {
            adj: vec![None; id_bound],
            origin: (0..id_bound).map(VertexId::from).collect(),
            n: 0,
            m: 0,
        };
        for v in present {
            if g.adj[v.index()].is_none() {
                g.adj[v.index()] = Some(BTreeMap::new());
                g.n += 1;
            }
        }
        g
    }

    /// Simple graph from an edge list over labels `0..max(n_hint, max label + 1)`.
    /// Duplicate pairs collapse; a pair `(u, u)` is rejected.
    pub fn from_edge_list(edges: &[(usize, usize)], n_hint: usize) -> Result<Self, GraphError> {
        let bound = edges
            .iter()
            .map(|&(u, v)| u.max(v) + 1)
            .max()
            .unwrap_or(0)
            .max(n_hint);
        let mut g = MultiGraph::with_vertices(bound);
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::LoopInInput(u as u64));
            }
            let (u, v) = (VertexId::from(u), VertexId::from(v));
            if g.multiplicity(u, v) == 0 {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    /// Adds a fresh vertex with the next unused id.
    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId::from(self.adj.len());
        self.adj.push(Some(BTreeMap::new()));
        self.origin.push(id);
        self.n += 1;
        id
    }

    /// Adds one edge unit (parallel edges and loops allowed).
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        self.check(u)?;
        self.check(v)?;
        self.bump(u, v, 1);
        if u != v {
            self.bump(v, u, 1);
        }
        self.m += 1;
        Ok(())
    }

    /// Removes one edge unit between `u` and `v` (a loop when equal).
    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        self.check(u)?;
        self.check(v)?;
        if self.multiplicity(u, v) == 0 {
            return Err(GraphError::NoSuchEdge(u, v));
        }
        self.drop_units(u, v, 1);
        if u != v {
            self.drop_units(v, u, 1);
        }
        self.m -= 1;
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// One past the largest vertex id ever allocated.
    #[inline]
    pub fn id_bound(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.get(v.index()).is_some_and(Option::is_some)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj
            .iter()
            .enumerate()
            .filter(|(_, a)| a.is_some())
            .map(|(i, _)| VertexId::from(i))
    }

    /// Original input vertex represented by working vertex `v`.
    pub fn origin(&self, v: VertexId) -> Result<VertexId, GraphError> {
        self.check(v)?;
        Ok(self.origin[v.index()])
    }

    fn check(&self, v: VertexId) -> Result<(), GraphError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    #[inline]
    fn row(&self, v: VertexId) -> &BTreeMap<VertexId, usize> {
        self.adj[v.index()].as_ref().expect("vertex present")
    }

    #[inline]
    fn row_mut(&mut self, v: VertexId) -> &mut BTreeMap<VertexId, usize> {
        self.adj[v.index()].as_mut().expect("vertex present")
    }

    fn bump(&mut self, u: VertexId, v: VertexId, by: usize) {
        *self.row_mut(u).entry(v).or_insert(0) += by;
    }

    fn drop_units(&mut self, u: VertexId, v: VertexId, by: usize) {
        let row = self.row_mut(u);
        let e = row.get_mut(&v).expect("edge present");
        *e -= by;
        if *e == 0 {
            row.remove(&v);
        }
    }

    /// Number of parallel edge units between `u` and `v` (loops when `u == v`).
    /// Absent vertices have multiplicity 0.
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        if !self.contains(u) {
            return 0;
        }
        self.row(u).get(&v).copied().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.multiplicity(u, v) > 0
    }

    pub fn loops(&self, v: VertexId) -> usize {
        self.multiplicity(v, v)
    }

    /// Degree with each loop contributing 2.
    pub fn degree(&self, v: VertexId) -> Result<usize, GraphError> {
        self.check(v)?;
        Ok(self.deg(v))
    }

    /// Unchecked degree (loops count 2). Panics on an absent vertex.
    #[inline]
    pub fn deg(&self, v: VertexId) -> usize {
        let row = self.row(v);
        row.values().sum::<usize>() + row.get(&v).copied().unwrap_or(0)
    }

    /// Number of incident edge units, each loop counted once.
    #[inline]
    pub fn edge_degree(&self, v: VertexId) -> usize {
        self.row(v).values().sum()
    }

    /// Neighbors with multiplicities, in increasing id order. A loop shows up
    /// as `v` itself with the loop count.
    pub fn neighbors(
        &self,
        v: VertexId,
    ) -> Result<impl Iterator<Item = (VertexId, usize)> + '_, GraphError> {
        self.check(v)?;
        Ok(self.row(v).iter().map(|(&w, &k)| (w, k)))
    }

    /// Distinct neighbors other than `v` itself, increasing id order.
    pub fn adjacent(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.row(v).keys().copied().filter(move |&w| w != v)
    }

    /// Removes `v` and every incident edge; returns the number of edge units removed.
    pub fn delete_vertex(&mut self, v: VertexId) -> Result<usize, GraphError> {
        self.check(v)?;
        let row = self.adj[v.index()].take().expect("checked");
        let mut removed = 0;
        for (&w, &k) in &row {
            removed += k;
            if w != v {
                let r = self.row_mut(w);
                r.remove(&v);
            }
        }
        self.n -= 1;
        self.m -= removed;
        Ok(removed)
    }

    /// Contracts one copy of edge `(u, v)` into `survivor`.
    ///
    /// Remaining copies of `(u, v)` become loops at the survivor, and loops at
    /// the absorbed vertex move over. Nothing is simplified.
    pub fn contract_edge(
        &mut self,
        u: VertexId,
        v: VertexId,
        survivor: VertexId,
    ) -> Result<(), GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::ContractLoop(u));
        }
        if survivor != u && survivor != v {
            return Err(GraphError::BadSurvivor { u, v, survivor });
        }
        if !self.has_edge(u, v) {
            return Err(GraphError::NoSuchEdge(u, v));
        }
        let gone = if survivor == u { v } else { u };
        let row = self.adj[gone.index()].take().expect("checked");
        self.n -= 1;
        for (&w, &k) in &row {
            if w == gone {
                // loops at the absorbed vertex
                self.bump(survivor, survivor, k);
            } else if w == survivor {
                self.row_mut(survivor).remove(&gone);
                // one copy vanishes, the rest become loops
                self.m -= 1;
                if k > 1 {
                    self.bump(survivor, survivor, k - 1);
                }
            } else {
                self.row_mut(w).remove(&gone);
                self.bump(w, survivor, k);
                self.bump(survivor, w, k);
            }
        }
        Ok(())
    }

    /// Removes all loops and surplus parallel edges; returns removed units.
    pub fn simplify(&mut self) -> usize {
        let vs: Vec<VertexId> = self.vertices().collect();
        vs.into_iter().map(|v| self.simplify_at(v)).sum()
    }

    /// Removes loops at `v` and surplus parallels incident to `v`.
    pub fn simplify_at(&mut self, v: VertexId) -> usize {
        if !self.contains(v) {
            return 0;
        }
        let mut removed = 0;
        let surplus: Vec<(VertexId, usize)> = self
            .row(v)
            .iter()
            .filter(|&(&w, &k)| w == v || k > 1)
            .map(|(&w, &k)| (w, k))
            .collect();
        for (w, k) in surplus {
            if w == v {
                self.row_mut(v).remove(&v);
                removed += k;
            } else {
                self.drop_units(v, w, k - 1);
                self.drop_units(w, v, k - 1);
                removed += k - 1;
            }
        }
        self.m -= removed;
        removed
    }

    /// Removes the loops at `v` if it has another edge, else all loops but
    /// one; returns how many went.
    pub fn trim_loops(&mut self, v: VertexId) -> usize {
        if !self.contains(v) {
            return 0;
        }
        let k = self.loops(v);
        let keep = usize::from(self.row(v).len() == 1 && k > 0);
        let gone = k - keep;
        if gone > 0 {
            self.drop_units(v, v, gone);
            self.m -= gone;
        }
        gone
    }

    pub fn is_simple(&self) -> bool {
        self.vertices()
            .all(|v| self.row(v).iter().all(|(&w, &k)| w != v && k == 1))
    }

    pub fn is_d_regular(&self, d: usize) -> bool {
        self.vertices().all(|v| self.deg(v) == d)
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.deg(v)).max().unwrap_or(0)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.id_bound()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s.index()] {
                continue;
            }
            let mut comp = self.reach(s, &mut seen);
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `s` that are not yet marked in `seen`.
    pub(crate) fn reach(&self, s: VertexId, seen: &mut [bool]) -> Vec<VertexId> {
        let mut comp = vec![s];
        seen[s.index()] = true;
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for w in self.adjacent(v) {
                if !seen[w.index()] {
                    seen[w.index()] = true;
                    comp.push(w);
                }
            }
        }
        comp
    }

    /// Sorted component containing `v`.
    pub fn component_of(&self, v: VertexId) -> Vec<VertexId> {
        let mut seen = vec![false; self.id_bound()];
        let mut c = self.reach(v, &mut seen);
        c.sort_unstable();
        c
    }

    /// Exact girth. A loop gives 1, a parallel pair 2; otherwise BFS from
    /// every vertex.
    pub fn girth(&self) -> Girth {
        let mut best = usize::MAX;
        for v in self.vertices() {
            for (&w, &k) in self.row(v) {
                if w == v {
                    return Girth::Finite(1);
                }
                if k > 1 {
                    best = best.min(2);
                }
            }
        }
        if best == 2 {
            return Girth::Finite(2);
        }
        let mut dist = vec![usize::MAX; self.id_bound()];
        let mut parent = vec![VertexId(u32::MAX); self.id_bound()];
        let mut queue = VecDeque::new();
        for root in self.vertices() {
            let mut visited = vec![root];
            dist[root.index()] = 0;
            queue.push_back(root);
            'bfs: while let Some(u) = queue.pop_front() {
                let du = dist[u.index()];
                if 2 * du + 1 >= best {
                    break;
                }
                for w in self.adjacent(u) {
                    if dist[w.index()] == usize::MAX {
                        dist[w.index()] = du + 1;
                        parent[w.index()] = u;
                        visited.push(w);
                        queue.push_back(w);
                    } else if parent[u.index()] != w {
                        best = best.min(du + dist[w.index()] + 1);
                        if best <= 3 {
                            break 'bfs;
                        }
                    }
                }
            }
            queue.clear();
            for v in visited {
                dist[v.index()] = usize::MAX;
                parent[v.index()] = VertexId(u32::MAX);
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    /// All edge units as `(u, v, multiplicity)` with `u <= v`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in self.vertices() {
            for (&w, &k) in self.row(u).range(u..) {
                out.push((u, w, k));
            }
        }
        out
    }

    /// Induced subgraph on `keep`, preserving vertex ids.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Result<MultiGraph, GraphError> {
        for &v in keep {
            self.check(v)?;
        }
        let mut h = MultiGraph::with_vertex_set(self.id_bound(), keep.iter().copied());
        for &u in keep {
            for (&w, &k) in self.row(u).range(u..) {
                if keep.contains(&w) {
                    h.bump(u, w, k);
                    if w != u {
                        h.bump(w, u, k);
                    }
                    h.m += k;
                }
            }
        }
        Ok(h)
    }

    /// Consistency audit: symmetric adjacency, `m` equals the edge-unit sum,
    /// `n` equals the live vertex count, and the origin map is injective.
    pub fn audit(&self) -> Result<(), String> {
        let mut n = 0;
        let mut twice_m = 0;
        let mut origins = BTreeSet::new();
        for v in self.vertices() {
            n += 1;
            if !origins.insert(self.origin[v.index()]) {
                return Err(format!("origin of {v} is shared"));
            }
            for (&w, &k) in self.row(v) {
                if k == 0 {
                    return Err(format!("zero multiplicity entry {v}-{w}"));
                }
                if w == v {
                    twice_m += 2 * k;
                    continue;
                }
                if !self.contains(w) {
                    return Err(format!("{v} adjacent to missing {w}"));
                }
                if self.multiplicity(w, v) != k {
                    return Err(format!("asymmetric multiplicity {v}-{w}"));
                }
                twice_m += k;
            }
        }
        if n != self.n {
            return Err(format!("n = {} but {} live vertices", self.n, n));
        }
        if twice_m != 2 * self.m {
            return Err(format!("m = {} but degree sum is {}", self.m, twice_m));
        }
        Ok(())
    }
}
