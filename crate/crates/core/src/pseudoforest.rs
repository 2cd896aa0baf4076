//! Induced pseudoforests with `|S| >= n - 2m/9`.
//!
//! Each step runs the first applicable case of a fixed priority list. Every
//! live vertex carries the best case anchored at it; the dispatcher takes
//! the highest-priority non-empty label and its smallest vertex. After a
//! step only labels near the touched vertices are recomputed, which keeps
//! a run near-linear. [`first_applicable_case`] is the same dispatch done
//! by a full scan.
//!
//! Compound cases are split into primitive steps: the follow-up contraction
//! or triangle harvest happens on a later dispatch.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{MultiGraph, VertexId};
use crate::solution::{
    replay, AggregateCharge, Bound, Case, ReductionSolution, TraceError, TraceStep,
};

const MAX_DEG: usize = 4;

/// Dispatch order, highest priority first.
const PRIORITY: [Case; 15] = [
    Case::Preprocess,
    Case::Leaf,
    Case::Deg2NoTriangle,
    Case::DeltaA,
    Case::DeltaB,
    Case::DeltaC,
    Case::DeltaD,
    Case::Deg3AdjDeg4,
    Case::ThreeRegular,
    Case::FourRegA,
    Case::FourRegB,
    Case::FourRegC1,
    Case::FourRegC2,
    Case::FourRegC3,
    Case::FourRegC4,
];

fn rank(case: Case) -> usize {
    PRIORITY
        .iter()
        .position(|&c| c == case)
        .expect("pseudoforest case")
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PseudoforestError {
    #[error("edges remain but no case applies")]
    CaseAnalysisIncomplete,
    #[error("descriptor for {0:?} at vertex {1} no longer matches the graph")]
    StaleDescriptor(Case, VertexId),
}

/// One applicable case and the exact mutations it prescribes: deletions,
/// then contractions `(absorbed, survivor)`, then vertices moved to S
/// (removed from the graph with their remaining edges).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseDescriptor {
    pub case: Case,
    pub anchor: VertexId,
    pub delete: Vec<VertexId>,
    pub contract: Vec<(VertexId, VertexId)>,
    pub s_add: Vec<VertexId>,
}

impl CaseDescriptor {
    fn new(case: Case, anchor: VertexId) -> Self {
        CaseDescriptor {
            case,
            anchor,
            delete: Vec::new(),
            contract: Vec::new(),
            s_add: Vec::new(),
        }
    }

    fn deleting(case: Case, anchor: VertexId, delete: Vec<VertexId>) -> Self {
        CaseDescriptor {
            delete,
            ..CaseDescriptor::new(case, anchor)
        }
    }

    /// Vertices whose rows change when the case is applied.
    fn touched(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.delete
            .iter()
            .copied()
            .chain(self.contract.iter().flat_map(|&(a, b)| [a, b]))
            .chain(self.s_add.iter().copied())
    }
}

fn nbrs(g: &MultiGraph, v: VertexId) -> Vec<VertexId> {
    g.adjacent(v).collect()
}

/// The `K4` containing `v` with lexicographically smallest other three
/// vertices, sorted.
fn tetra_of(g: &MultiGraph, v: VertexId) -> Option<[VertexId; 4]> {
    let ns = nbrs(g, v);
    for i in 0..ns.len() {
        for j in i + 1..ns.len() {
            if !g.has_edge(ns[i], ns[j]) {
                continue;
            }
            for k in j + 1..ns.len() {
                if g.has_edge(ns[i], ns[k]) && g.has_edge(ns[j], ns[k]) {
                    let mut t = [v, ns[i], ns[j], ns[k]];
                    t.sort_unstable();
                    return Some(t);
                }
            }
        }
    }
    None
}

/// Case (a) at a degree-4 vertex: two disjoint non-adjacent pairs among the
/// neighbours. The pair with the smallest neighbour is kept; the other pair
/// is returned for deletion.
fn split_pairs(g: &MultiGraph, a: VertexId) -> Option<[VertexId; 2]> {
    let ns = nbrs(g, a);
    if ns.len() != 4 {
        return None;
    }
    for (keep, drop) in [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))] {
        if !g.has_edge(ns[keep.0], ns[keep.1]) && !g.has_edge(ns[drop.0], ns[drop.1]) {
            return Some([ns[drop.0], ns[drop.1]]);
        }
    }
    None
}

/// Case (b): the neighbourhood induces a star; returns its centre.
fn star_center(g: &MultiGraph, a: VertexId) -> Option<VertexId> {
    let ns = nbrs(g, a);
    let mut edges = Vec::new();
    for i in 0..ns.len() {
        for j in i + 1..ns.len() {
            if g.has_edge(ns[i], ns[j]) {
                edges.push((ns[i], ns[j]));
            }
        }
    }
    if edges.len() != 3 {
        return None;
    }
    ns.iter()
        .copied()
        .find(|&c| edges.iter().all(|&(x, y)| x == c || y == c))
}

/// Case (c)(ii) at `a`: a triangle `bcd` of `N(a)` has another common
/// neighbour `e`; returns `e`.
fn shared_triangle_partner(g: &MultiGraph, a: VertexId) -> Option<VertexId> {
    let ns = nbrs(g, a);
    for i in 0..ns.len() {
        for j in i + 1..ns.len() {
            for k in j + 1..ns.len() {
                let (b, c, d) = (ns[i], ns[j], ns[k]);
                if !(g.has_edge(b, c) && g.has_edge(b, d) && g.has_edge(c, d)) {
                    continue;
                }
                if let Some(e) = g
                    .adjacent(b)
                    .find(|&e| e != a && !ns.contains(&e) && g.has_edge(e, c) && g.has_edge(e, d))
                {
                    return Some(e);
                }
            }
        }
    }
    None
}

/// Case (c)(iii) at `a`: the tetrahedron `T` of `a` sends two edges `be`,
/// `dg` (sorted, `b < d`) to one other tetrahedron. Returns `[d, e]`.
fn doubly_joined(g: &MultiGraph, a: VertexId) -> Option<[VertexId; 2]> {
    let t = tetra_of(g, a)?;
    let mut groups: BTreeMap<VertexId, Vec<(VertexId, VertexId)>> = BTreeMap::new();
    for &x in &t {
        for y in g.adjacent(x) {
            if t.contains(&y) {
                continue;
            }
            if let Some(ty) = tetra_of(g, y) {
                if ty != t {
                    groups.entry(ty[0]).or_default().push((x, y));
                }
            }
        }
    }
    groups
        .into_values()
        .find(|e| e.len() >= 2)
        .map(|mut edges| {
            edges.sort_unstable();
            let (_, e) = edges[0];
            let (d, _) = edges[1];
            [d, e]
        })
}

/// Best case anchored at `v`, from local structure only.
pub fn label_at(g: &MultiGraph, v: VertexId) -> Option<Case> {
    let d = g.deg(v);
    Some(match d {
        0 => return None,
        1 => Case::Leaf,
        2 => {
            let ns = nbrs(g, v);
            let (b, c) = (ns[0], ns[1]);
            if !g.has_edge(b, c) {
                Case::Deg2NoTriangle
            } else {
                let mut ds = [g.deg(b), g.deg(c)];
                ds.sort_unstable();
                match ds {
                    [2, 2] => Case::DeltaA,
                    [2, 3] => Case::DeltaB,
                    [3, _] => Case::DeltaC,
                    _ => Case::DeltaD,
                }
            }
        }
        3 => {
            if g.adjacent(v).any(|w| g.deg(w) == 4) {
                Case::Deg3AdjDeg4
            } else {
                Case::ThreeRegular
            }
        }
        4 => {
            if split_pairs(g, v).is_some() {
                Case::FourRegA
            } else if star_center(g, v).is_some() {
                Case::FourRegB
            } else if nbrs(g, v).iter().all(|&w| g.deg(w) == 4) && {
                let ns = nbrs(g, v);
                (0..4).all(|i| (i + 1..4).all(|j| g.has_edge(ns[i], ns[j])))
            } {
                Case::FourRegC1
            } else if shared_triangle_partner(g, v).is_some() {
                Case::FourRegC2
            } else if doubly_joined(g, v).is_some() {
                Case::FourRegC3
            } else {
                Case::FourRegC4
            }
        }
        _ => Case::Preprocess,
    })
}

/// DFS frame: node, entry edge from the parent, position in the edge list.
type Frame = (VertexId, Option<(VertexId, VertexId)>, usize);

/// Cycle search in the graph with every tetrahedron contracted, from the
/// tetrahedron of `a`. Returns the two vertices of the smallest tetrahedron
/// on the cycle that the cycle does not use.
fn tetra_cycle_cut(g: &MultiGraph, a: VertexId) -> Option<[VertexId; 2]> {
    let start = tetra_of(g, a)?;
    // node = tetrahedron keyed by its smallest vertex
    let mut tetra: BTreeMap<VertexId, [VertexId; 4]> = BTreeMap::new();
    tetra.insert(start[0], start);
    let mut on_stack: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut done: BTreeSet<VertexId> = BTreeSet::new();
    let mut stack: Vec<Frame> = vec![(start[0], None, 0)];
    on_stack.insert(start[0], 0);
    while let Some(&(node, entry, pos)) = stack.last() {
        let t = tetra[&node];
        // external edges of this tetrahedron in a fixed order
        let ext: Vec<(VertexId, VertexId)> = t
            .iter()
            .flat_map(|&x| {
                g.adjacent(x)
                    .filter(|y| !t.contains(y))
                    .map(move |y| (x, y))
            })
            .collect();
        if pos == ext.len() {
            stack.pop();
            on_stack.remove(&node);
            done.insert(node);
            continue;
        }
        stack.last_mut().expect("non-empty").2 += 1;
        let (x, y) = ext[pos];
        if entry.is_some_and(|(_, child_end)| child_end == x) {
            continue; // the edge we arrived by
        }
        let ty = tetra_of(g, y)?;
        let key = ty[0];
        tetra.entry(key).or_insert(ty);
        if let Some(&depth) = on_stack.get(&key) {
            // cycle: stack[depth..] plus the closing edge (x, y)
            let mut cycle_edges: Vec<(VertexId, VertexId)> = stack[depth + 1..]
                .iter()
                .map(|&(_, e, _)| e.expect("non-root"))
                .collect();
            cycle_edges.push((x, y));
            let nodes: Vec<VertexId> = stack[depth..].iter().map(|&(n, _, _)| n).collect();
            let pick = *nodes.iter().min().expect("cycle non-empty");
            let pt = tetra[&pick];
            let used: BTreeSet<VertexId> = cycle_edges
                .iter()
                .flat_map(|&(p, q)| [p, q])
                .filter(|z| pt.contains(z))
                .collect();
            let off: Vec<VertexId> = pt.iter().copied().filter(|z| !used.contains(z)).collect();
            return (off.len() == 2).then(|| [off[0], off[1]]);
        }
        if done.contains(&key) {
            continue;
        }
        on_stack.insert(key, stack.len());
        stack.push((key, Some((x, y)), 0));
    }
    None
}

/// Full descriptor for `case` anchored at `v`.
pub fn describe(g: &MultiGraph, v: VertexId, case: Case) -> Option<CaseDescriptor> {
    let ns = nbrs(g, v);
    let d = match case {
        Case::Preprocess | Case::ThreeRegular => CaseDescriptor::deleting(case, v, vec![v]),
        Case::Leaf | Case::Deg2NoTriangle => {
            let mut d = CaseDescriptor::new(case, v);
            d.contract.push((v, ns[0]));
            d.s_add.push(v);
            d
        }
        Case::DeltaA => {
            let mut d = CaseDescriptor::new(case, v);
            d.s_add = vec![v, ns[0], ns[1]];
            d
        }
        Case::DeltaB => {
            let c = *ns.iter().find(|&&w| g.deg(w) == 3)?;
            let far = g.adjacent(c).find(|w| *w != v && !ns.contains(w))?;
            assert!(
                g.deg(far) >= 3,
                "earlier cases cover a low-degree vertex next to a triangle"
            );
            CaseDescriptor::deleting(case, v, vec![far])
        }
        Case::DeltaC => {
            let b = *ns.iter().find(|&&w| g.deg(w) == 3)?;
            let c = *ns.iter().find(|&&w| w != b)?;
            let x = g.adjacent(b).find(|&w| w != v && w != c)?;
            let mut d = CaseDescriptor::deleting(case, v, vec![c]);
            d.contract = vec![(v, b), (b, x)];
            d.s_add = vec![v, b];
            d
        }
        Case::DeltaD => {
            let b = *ns.iter().find(|&&w| g.deg(w) == 4)?;
            let c = *ns.iter().find(|&&w| w != b)?;
            let mut d = CaseDescriptor::deleting(case, v, vec![b]);
            d.contract.push((v, c));
            d.s_add.push(v);
            d
        }
        Case::Deg3AdjDeg4 => {
            let b = *ns.iter().find(|&&w| g.deg(w) == 4)?;
            CaseDescriptor::deleting(case, v, vec![b])
        }
        Case::FourRegA => CaseDescriptor::deleting(case, v, split_pairs(g, v)?.to_vec()),
        Case::FourRegB => {
            let center = star_center(g, v)?;
            let leaf = *ns.iter().find(|&&w| w != center)?;
            CaseDescriptor::deleting(case, v, split_pairs(g, leaf)?.to_vec())
        }
        Case::FourRegC1 => {
            let mut k5 = ns.clone();
            k5.push(v);
            k5.sort_unstable();
            CaseDescriptor::deleting(case, v, k5[..2].to_vec())
        }
        Case::FourRegC2 => {
            let e = shared_triangle_partner(g, v)?;
            CaseDescriptor::deleting(case, v, vec![v.min(e), v.max(e)])
        }
        Case::FourRegC3 => CaseDescriptor::deleting(case, v, doubly_joined(g, v)?.to_vec()),
        Case::FourRegC4 => CaseDescriptor::deleting(case, v, tetra_cycle_cut(g, v)?.to_vec()),
        _ => return None,
    };
    Some(d)
}

/// Highest-priority case over the whole graph (smallest anchor within a
/// case), by scanning every vertex. `None` once no edges remain.
pub fn first_applicable_case(g: &MultiGraph) -> Result<Option<CaseDescriptor>, PseudoforestError> {
    let best = g
        .vertices()
        .filter_map(|v| label_at(g, v).map(|c| (rank(c), v, c)))
        .min();
    match best {
        None if g.m() == 0 => Ok(None),
        None => Err(PseudoforestError::CaseAnalysisIncomplete),
        Some((_, v, c)) => describe(g, v, c)
            .map(Some)
            .ok_or(PseudoforestError::CaseAnalysisIncomplete),
    }
}

/// Applies a descriptor produced for the current graph and records the step.
pub fn apply_case(
    g: &mut MultiGraph,
    desc: &CaseDescriptor,
    sol: &mut ReductionSolution,
) -> Result<(), PseudoforestError> {
    let fresh = label_at(g, desc.anchor)
        .filter(|&c| c == desc.case)
        .and_then(|c| describe(g, desc.anchor, c));
    if fresh.as_ref() != Some(desc) {
        return Err(PseudoforestError::StaleDescriptor(desc.case, desc.anchor));
    }
    apply_unchecked(g, desc, sol);
    Ok(())
}

fn apply_unchecked(g: &mut MultiGraph, desc: &CaseDescriptor, sol: &mut ReductionSolution) {
    let mut step = TraceStep::new(desc.case);
    for &v in &desc.delete {
        step.removed_edges += g.delete_vertex(v).expect("descriptor vertex");
    }
    for &(a, b) in &desc.contract {
        g.contract_edge(a, b, b).expect("descriptor edge");
    }
    for &v in &desc.s_add {
        if g.contains(v) {
            step.removed_edges += g.delete_vertex(v).expect("present");
        }
        sol.s.insert(v);
    }
    debug_assert!(desc
        .contract
        .iter()
        .filter(|&&(_, b)| g.contains(b) && g.deg(b) <= MAX_DEG)
        .all(|&(_, b)| g.loops(b) == 0 && g.neighbors(b).expect("live").all(|(_, k)| k == 1)));
    step.deleted = desc.delete.clone();
    step.contracted = desc.contract.clone();
    step.s_added = desc.s_add.clone();
    sol.trace.push(step);
}

/// Moves isolated vertices among `candidates` into S as one step.
fn harvest(g: &mut MultiGraph, candidates: &BTreeSet<VertexId>, sol: &mut ReductionSolution) {
    if candidates.is_empty() {
        return;
    }
    let mut step = TraceStep::new(Case::HarvestIsolated);
    for &v in candidates {
        g.delete_vertex(v).expect("isolated vertex");
        sol.s.insert(v);
        step.s_added.push(v);
    }
    sol.trace.push(step);
}

struct Index {
    label: Vec<Option<Case>>,
    sets: Vec<BTreeSet<VertexId>>,
    isolated: BTreeSet<VertexId>,
}

impl Index {
    fn new(g: &MultiGraph) -> Self {
        let mut ix = Index {
            label: vec![None; g.id_bound()],
            sets: vec![BTreeSet::new(); PRIORITY.len()],
            isolated: BTreeSet::new(),
        };
        for v in g.vertices() {
            ix.refresh(g, v);
        }
        ix
    }

    fn refresh(&mut self, g: &MultiGraph, v: VertexId) {
        if let Some(old) = self.label[v.index()].take() {
            self.sets[rank(old)].remove(&v);
        }
        self.isolated.remove(&v);
        if !g.contains(v) {
            return;
        }
        match label_at(g, v) {
            Some(c) => {
                self.label[v.index()] = Some(c);
                self.sets[rank(c)].insert(v);
            }
            None => {
                self.isolated.insert(v);
            }
        }
    }

    fn best(&self) -> Option<(VertexId, Case)> {
        self.sets
            .iter()
            .zip(PRIORITY)
            .find_map(|(s, c)| s.first().map(|&v| (v, c)))
    }
}

/// Live vertices within distance `r` of `seeds`.
fn ball(g: &MultiGraph, seeds: impl IntoIterator<Item = VertexId>, r: usize) -> BTreeSet<VertexId> {
    let mut seen: BTreeSet<VertexId> = seeds.into_iter().filter(|&v| g.contains(v)).collect();
    let mut frontier: Vec<VertexId> = seen.iter().copied().collect();
    for _ in 0..r {
        let mut next = Vec::new();
        for v in frontier {
            for w in g.adjacent(v) {
                if seen.insert(w) {
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    seen
}

pub fn reduce_pseudoforest(g: &MultiGraph) -> ReductionSolution {
    run(g, false).expect("the case analysis is exhaustive")
}

/// Like [`reduce_pseudoforest`], but checks at every step that the indexed
/// dispatch agrees with [`first_applicable_case`].
pub fn reduce_pseudoforest_cross_checked(
    g: &MultiGraph,
) -> Result<ReductionSolution, PseudoforestError> {
    run(g, true)
}

fn run(input: &MultiGraph, cross_check: bool) -> Result<ReductionSolution, PseudoforestError> {
    let mut g = input.clone();
    g.simplify();
    let mut sol = ReductionSolution::new(Bound::PSEUDOFOREST);
    let mut ix = Index::new(&g);
    loop {
        let iso = std::mem::take(&mut ix.isolated);
        harvest(&mut g, &iso, &mut sol);
        let Some((v, case)) = ix.best() else {
            if g.m() > 0 {
                return Err(PseudoforestError::CaseAnalysisIncomplete);
            }
            break;
        };
        let desc = describe(&g, v, case).ok_or(PseudoforestError::CaseAnalysisIncomplete)?;
        if cross_check {
            let scan = first_applicable_case(&g)?;
            if scan.as_ref() != Some(&desc) {
                return Err(PseudoforestError::StaleDescriptor(case, v));
            }
        }
        // rows that change: touched vertices and their current neighbours
        let mut changed: BTreeSet<VertexId> = desc.touched().collect();
        let around: Vec<VertexId> = changed.iter().flat_map(|&t| g.adjacent(t)).collect();
        changed.extend(around);
        apply_unchecked(&mut g, &desc, &mut sol);
        let mut redo = ball(&g, changed.iter().copied(), 3);
        redo.extend(changed);
        for w in redo {
            ix.refresh(&g, w);
        }
    }
    debug_assert_eq!(g.n(), 0);
    Ok(sol)
}

/// Replays the trace and totals `+2` per edge event and `-9` per deletion
/// (the doubled `+1 / -4.5` accounting).
pub fn replay_charges(
    g: &MultiGraph,
    sol: &ReductionSolution,
) -> Result<AggregateCharge, TraceError> {
    let mut simple = g.clone();
    simple.simplify();
    let rep = replay(&simple, sol)?;
    Ok(AggregateCharge::new(&rep, 2, 9))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{induced_subgraph, is_pseudoforest};
    use crate::generators::{
        complete, complete_bipartite, cycle, disjoint_copies, fixture, path, Fixture,
    };

    fn v(i: usize) -> VertexId {
        VertexId::from(i)
    }

    fn check(g: &MultiGraph) -> ReductionSolution {
        let sol = reduce_pseudoforest_cross_checked(g).unwrap();
        assert!(sol.satisfies_bound(g));
        assert!(is_pseudoforest(&induced_subgraph(g, &sol.s).unwrap()));
        assert!(replay_charges(g, &sol).unwrap().non_negative());
        assert_eq!(sol, reduce_pseudoforest(g));
        sol
    }

    /// Tetrahedra `0..t`, tetrahedron `i` on vertices `4i..4i+4`, plus one
    /// edge per pair in `links` between free vertices.
    fn tetrahedra(t: usize, links: &[(usize, usize)]) -> MultiGraph {
        let mut e = Vec::new();
        for i in 0..t {
            for a in 0..4 {
                for b in a + 1..4 {
                    e.push((4 * i + a, 4 * i + b));
                }
            }
        }
        let mut next = vec![0; t];
        for &(i, j) in links {
            e.push((4 * i + next[i], 4 * j + next[j]));
            next[i] += 1;
            next[j] += 1;
        }
        MultiGraph::from_edge_list(&e, 4 * t).unwrap()
    }

    #[test]
    fn k33() {
        let g = complete_bipartite(3, 3);
        assert_eq!(
            first_applicable_case(&g).unwrap().unwrap().case,
            Case::ThreeRegular
        );
        assert_eq!(check(&g).s.len(), 4);
    }

    #[test]
    fn triangle() {
        let g = complete(3);
        let sol = check(&g);
        assert_eq!(sol.s.len(), 3);
        assert_eq!(sol.trace[0].case, Case::DeltaA);
        assert_eq!(sol.trace[0].removed_edges, 3);
    }

    #[test]
    fn edgeless() {
        assert_eq!(check(&MultiGraph::with_vertices(7)).s.len(), 7);
        assert_eq!(
            first_applicable_case(&MultiGraph::with_vertices(3)).unwrap(),
            None
        );
    }

    #[test]
    fn k5() {
        let g = complete(5);
        let sol = check(&g);
        assert_eq!(sol.s.len(), 3);
        assert_eq!(sol.trace[0].case, Case::FourRegC1);
    }

    #[test]
    fn path_starts_with_leaf() {
        let d = first_applicable_case(&path(5)).unwrap().unwrap();
        assert_eq!((d.case, d.anchor), (Case::Leaf, v(0)));
    }

    #[test]
    fn two_tetrahedra_matched() {
        let g = tetrahedra(2, &[(0, 1), (0, 1), (0, 1), (0, 1)]);
        assert!(g.is_d_regular(4));
        let d = first_applicable_case(&g).unwrap().unwrap();
        assert_eq!(d.case, Case::FourRegC3);
        // edges 0-4 and 1-5: delete 1 (first tetrahedron) and 4 (second)
        assert_eq!(d.delete, vec![v(1), v(4)]);
        check(&g);
    }

    #[test]
    fn tetrahedra_ring() {
        let mut links = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                links.push((i, j));
            }
        }
        let g = tetrahedra(5, &links);
        assert!(g.is_d_regular(4));
        let d = first_applicable_case(&g).unwrap().unwrap();
        assert_eq!(d.case, Case::FourRegC4);
        assert_eq!(d.delete.len(), 2);
        let t0: BTreeSet<VertexId> = (0..4).map(v).collect();
        assert!(d.delete.iter().all(|x| t0.contains(x)));
        assert!(!g.has_edge(d.delete[0], d.delete[1]) || t0.contains(&d.delete[1]));
        check(&g);
    }

    #[test]
    fn four_reg_a_deletes_pair() {
        // octahedron: every neighbourhood is a 4-cycle
        let e: Vec<(usize, usize)> = complete(6)
            .edges()
            .iter()
            .map(|&(a, b, _)| (a.index(), b.index()))
            .filter(|&(a, b)| !matches!((a, b), (0, 1) | (2, 3) | (4, 5)))
            .collect();
        let g = MultiGraph::from_edge_list(&e, 6).unwrap();
        let d = first_applicable_case(&g).unwrap().unwrap();
        assert_eq!(d.case, Case::FourRegA);
        // N(0) = {2,3,4,5}; (2,3) and (4,5) are non-adjacent, keep (2,3)
        assert_eq!(d.delete, vec![v(4), v(5)]);
        let mut h = g.clone();
        let mut sol = ReductionSolution::new(Bound::PSEUDOFOREST);
        apply_case(&mut h, &d, &mut sol).unwrap();
        assert_eq!(label_at(&h, v(0)), Some(Case::Deg2NoTriangle));
        check(&g);
    }

    #[test]
    fn four_reg_b_redirects() {
        // a = 0 with N(a) a star centred at 1; leaves 2, 3, 4
        let mut e = vec![(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)];
        // give leaves 2..4 two more neighbours each, avoiding 0 and 1
        e.extend([(2, 5), (2, 6), (3, 6), (3, 7), (4, 7), (4, 5)]);
        let g = MultiGraph::from_edge_list(&e, 8).unwrap();
        assert_eq!(label_at(&g, v(0)), Some(Case::FourRegB));
        let d = describe(&g, v(0), Case::FourRegB).unwrap();
        // case (a) at leaf 2: N(2) = {0,1,5,6}; (0,5) and (1,6) non-adjacent
        assert_eq!(d.delete, vec![v(1), v(6)]);
        let mut h = g.clone();
        let mut sol = ReductionSolution::new(Bound::PSEUDOFOREST);
        apply_case(&mut h, &d, &mut sol).unwrap();
        assert!(h.audit().is_ok());
    }

    #[test]
    fn four_reg_c2() {
        // K5 minus an edge (0-4) plus a vertex 5 joined to 0 and 4, fixed up
        // to 4-regular with a second copy
        let mut e = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                if (a, b) != (0, 4) {
                    e.push((a, b));
                }
            }
        }
        for a in 5..10 {
            for b in a + 1..10 {
                if (a, b) != (5, 9) {
                    e.push((a, b));
                }
            }
        }
        e.push((0, 5));
        e.push((4, 9));
        let g = MultiGraph::from_edge_list(&e, 10).unwrap();
        assert!(g.is_d_regular(4));
        let d = first_applicable_case(&g).unwrap().unwrap();
        assert_eq!(d.case, Case::FourRegC2);
        assert_eq!(d.delete, vec![v(0), v(4)]);
        check(&g);
    }

    #[test]
    fn stale_descriptor() {
        let g = complete(3);
        let d = first_applicable_case(&g).unwrap().unwrap();
        let mut h = g.clone();
        h.delete_vertex(v(2)).unwrap();
        let mut sol = ReductionSolution::new(Bound::PSEUDOFOREST);
        assert!(matches!(
            apply_case(&mut h, &d, &mut sol),
            Err(PseudoforestError::StaleDescriptor(..))
        ));
    }

    #[test]
    fn k33_copies_are_tight() {
        for t in [1, 10, 100] {
            let g = disjoint_copies(&complete_bipartite(3, 3), t);
            assert_eq!(check(&g).s.len(), 4 * t);
        }
    }

    #[test]
    fn fixtures_and_cycles() {
        for f in Fixture::ALL {
            check(&fixture(f));
        }
        for n in 3..9 {
            assert_eq!(check(&cycle(n).unwrap()).s.len(), n);
        }
        check(&complete(7));
    }
}
