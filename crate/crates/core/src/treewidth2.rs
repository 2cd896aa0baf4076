//! Induced subgraphs of treewidth at most 2 with `|S| >= n - m/5`.
//!
//! Contract low-degree vertices into S, otherwise delete a vertex of
//! largest degree next to a degree-3 vertex, otherwise a vertex of maximum
//! degree. Simplification after each contraction keeps the working graph
//! simple, so degrees never grow and stay at most 4 after preprocessing.

use std::collections::BTreeSet;

use crate::graph::{MultiGraph, VertexId};
use crate::solution::{
    replay, AggregateCharge, Bound, Case, ReductionSolution, TraceError, TraceStep,
};

const MAX_DEG: usize = 4;

struct State {
    g: MultiGraph,
    /// Degree recorded in `bucket`, `usize::MAX` once gone.
    recorded: Vec<usize>,
    bucket: Vec<BTreeSet<VertexId>>,
    /// Degree-4 vertices with a degree-3 neighbour.
    mixed4: BTreeSet<VertexId>,
    sol: ReductionSolution,
}

impl State {
    fn new(g: MultiGraph) -> Self {
        let mut st = State {
            recorded: vec![usize::MAX; g.id_bound()],
            bucket: vec![BTreeSet::new(); MAX_DEG + 1],
            mixed4: BTreeSet::new(),
            g,
            sol: ReductionSolution::new(Bound::TREEWIDTH2),
        };
        let all: Vec<VertexId> = st.g.vertices().collect();
        for v in all {
            st.refresh(v);
        }
        st
    }

    fn refresh(&mut self, v: VertexId) {
        let old = self.recorded[v.index()];
        if old != usize::MAX {
            self.bucket[old].remove(&v);
        }
        self.mixed4.remove(&v);
        if !self.g.contains(v) {
            self.recorded[v.index()] = usize::MAX;
            return;
        }
        let d = self.g.deg(v);
        debug_assert!(d <= MAX_DEG, "degree grew past the preprocessing cap");
        self.recorded[v.index()] = d;
        self.bucket[d].insert(v);
        if d == 4 && self.g.adjacent(v).any(|w| self.g.deg(w) == 3) {
            self.mixed4.insert(v);
        }
    }

    /// Refreshes `vs`, their neighbours, and the neighbours' neighbours
    /// (mixed-degree status depends on neighbour degrees).
    fn refresh_around(&mut self, vs: &[VertexId]) {
        let mut todo: BTreeSet<VertexId> = vs.iter().copied().collect();
        for &v in vs {
            if self.g.contains(v) {
                todo.extend(self.g.adjacent(v));
            }
        }
        for v in todo {
            self.refresh(v);
        }
    }

    fn delete(&mut self, v: VertexId, case: Case) {
        let nbrs: Vec<VertexId> = self.g.adjacent(v).collect();
        let mut step = TraceStep::new(case);
        step.removed_edges = self.g.delete_vertex(v).expect("live vertex");
        step.deleted.push(v);
        self.sol.trace.push(step);
        self.refresh(v);
        self.refresh_around(&nbrs);
    }

    fn harvest(&mut self) {
        if self.bucket[0].is_empty() {
            return;
        }
        let iso: Vec<VertexId> = std::mem::take(&mut self.bucket[0]).into_iter().collect();
        let mut step = TraceStep::new(Case::HarvestIsolated);
        for &v in &iso {
            self.g.delete_vertex(v).expect("live vertex");
            self.recorded[v.index()] = usize::MAX;
            self.sol.s.insert(v);
        }
        step.s_added = iso;
        self.sol.trace.push(step);
    }
}

pub fn reduce_treewidth2(g: &MultiGraph) -> ReductionSolution {
    let mut work = g.clone();
    work.simplify();
    // preprocessing: delete vertices of degree >= 5, smallest id first
    let mut trace = Vec::new();
    let mut high: BTreeSet<VertexId> = work.vertices().filter(|&v| work.deg(v) > MAX_DEG).collect();
    while let Some(v) = high.pop_first() {
        if work.deg(v) <= MAX_DEG {
            continue;
        }
        let nbrs: Vec<VertexId> = work.adjacent(v).collect();
        let mut step = TraceStep::new(Case::Preprocess);
        step.removed_edges = work.delete_vertex(v).expect("live vertex");
        step.deleted.push(v);
        trace.push(step);
        for w in nbrs {
            if work.deg(w) <= MAX_DEG {
                high.remove(&w);
            }
        }
    }
    let mut st = State::new(work);
    st.sol.trace = trace;

    loop {
        st.harvest();
        let low = [st.bucket[1].first(), st.bucket[2].first()]
            .into_iter()
            .flatten()
            .min()
            .copied();
        if let Some(v) = low {
            let u = st.g.adjacent(v).next().expect("degree >= 1");
            st.g.contract_edge(v, u, u).expect("edge exists");
            let simplified = st.g.simplify_at(u);
            let mut step = TraceStep::new(Case::ContractDeg12);
            step.contracted.push((v, u));
            step.simplified = simplified;
            step.s_added.push(v);
            st.sol.s.insert(v);
            st.sol.trace.push(step);
            st.refresh(v);
            let mut around = vec![u];
            around.extend(st.g.adjacent(u));
            st.refresh_around(&around);
            continue;
        }
        if !st.bucket[3].is_empty() {
            let x = match st.mixed4.first() {
                Some(&x) => x,
                None => *st.bucket[3].first().expect("non-empty"),
            };
            st.delete(x, Case::DeleteAdjDeg3);
            continue;
        }
        match st.bucket[4].first() {
            Some(&x) => st.delete(x, Case::DeleteMaxDeg),
            None => break,
        }
    }
    debug_assert_eq!(st.g.n(), 0);
    st.sol
}

/// Replays the trace and totals `+1` per edge event and `-5` per deletion.
pub fn replay_charges(
    g: &MultiGraph,
    sol: &ReductionSolution,
) -> Result<AggregateCharge, TraceError> {
    let mut simple = g.clone();
    simple.simplify();
    let rep = replay(&simple, sol)?;
    Ok(AggregateCharge::new(&rep, 1, 5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{induced_subgraph, is_partial_2_tree};
    use crate::generators::{complete, cycle, disjoint_copies, fixture, Fixture};

    fn check(g: &MultiGraph) -> ReductionSolution {
        let sol = reduce_treewidth2(g);
        assert!(sol.satisfies_bound(g));
        assert!(is_partial_2_tree(&induced_subgraph(g, &sol.s).unwrap()));
        let charge = replay_charges(g, &sol).unwrap();
        assert!(charge.non_negative(), "{charge:?}");
        sol
    }

    #[test]
    fn k5() {
        let g = complete(5);
        let sol = check(&g);
        assert_eq!(sol.s.len(), 3);
        let t = induced_subgraph(&g, &sol.s).unwrap();
        assert_eq!((t.n(), t.m()), (3, 3));
        assert_eq!(replay_charges(&g, &sol).unwrap().total, 0);
    }

    #[test]
    fn c4() {
        let g = cycle(4).unwrap();
        let sol = check(&g);
        assert_eq!(sol.s.len(), 4);
        assert_eq!(replay_charges(&g, &sol).unwrap().total, 4);
    }

    #[test]
    fn petersen() {
        let sol = check(&fixture(Fixture::Petersen));
        assert!(sol.s.len() >= 7);
    }

    #[test]
    fn k5_copies() {
        for t in [1, 10, 100] {
            let sol = check(&disjoint_copies(&complete(5), t));
            assert_eq!(sol.s.len(), 3 * t);
        }
    }

    #[test]
    fn edgeless_and_high_degree() {
        let g = MultiGraph::with_vertices(6);
        assert_eq!(check(&g).s.len(), 6);
        let k8 = complete(8);
        let sol = check(&k8);
        assert!(sol.trace.iter().any(|t| t.case == Case::Preprocess));
    }

    #[test]
    fn tampered_trace() {
        let g = complete(5);
        let mut sol = reduce_treewidth2(&g);
        let extra = *sol.s.iter().next().unwrap();
        sol.trace[0].deleted.push(extra);
        assert!(replay_charges(&g, &sol).is_err());
    }

    #[test]
    fn deterministic() {
        let g = fixture(Fixture::McGee);
        assert_eq!(reduce_treewidth2(&g), reduce_treewidth2(&g));
    }
}
