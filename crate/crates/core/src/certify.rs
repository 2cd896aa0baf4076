//! Independent checkers for the output properties: pseudoforest, treewidth
//! at most 2 (series-parallel rewriting), structure of planar reducer
//! components, and exact planarity.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::graph::{GraphError, MultiGraph, VertexId};

/// Every component has at most as many edge units as vertices.
pub fn is_pseudoforest(g: &MultiGraph) -> bool {
    g.components().iter().all(|comp| {
        let twice_m: usize = comp.iter().map(|&v| g.deg(v)).sum();
        twice_m / 2 <= comp.len()
    })
}

/// Treewidth at most 2, decided by series-parallel rewriting with the
/// default vertex order.
pub fn is_partial_2_tree(g: &MultiGraph) -> bool {
    let order: Vec<VertexId> = g.vertices().collect();
    is_partial_2_tree_with_order(g, &order)
}

/// Same verdict as [`is_partial_2_tree`] for any `order`; rewriting starts
/// from the listed vertices (others are appended).
pub fn is_partial_2_tree_with_order(g: &MultiGraph, order: &[VertexId]) -> bool {
    let mut h = g.clone();
    let mut work: Vec<VertexId> = order
        .iter()
        .rev()
        .copied()
        .filter(|&v| h.contains(v))
        .collect();
    let listed: BTreeSet<VertexId> = work.iter().copied().collect();
    work.splice(
        0..0,
        h.vertices()
            .filter(|v| !listed.contains(v))
            .collect::<Vec<_>>()
            .into_iter()
            .rev(),
    );
    while let Some(v) = work.pop() {
        if !h.contains(v) {
            continue;
        }
        h.simplify_at(v);
        let nbrs: Vec<VertexId> = h.adjacent(v).collect();
        match nbrs.len() {
            0 | 1 => {
                h.delete_vertex(v).expect("present");
                work.extend(nbrs);
            }
            2 => {
                h.delete_vertex(v).expect("present");
                let (a, b) = (nbrs[0], nbrs[1]);
                if !h.has_edge(a, b) {
                    h.add_edge(a, b).expect("present");
                }
                work.push(b);
                work.push(a);
            }
            _ => {}
        }
    }
    h.n() == 0
}

/// Residue of a connected component after pruning and smoothing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComponentClass {
    Empty,
    SingleVertex,
    LoopVertex,
    DipoleD3,
    K4,
    Reject(String),
}

impl ComponentClass {
    pub fn accepted(&self) -> bool {
        !matches!(self, ComponentClass::Reject(_))
    }
}

/// Reduces a connected multigraph and names the residue. The rules are
/// pruning degree-≤1 vertices, smoothing degree-2 vertices, dropping loops
/// at vertices that have other edges, and thinning parallel bundles (to one
/// edge while three or more vertices remain, to three on two vertices).
/// None of them changes planarity or a treewidth of at least 2, so an
/// accepted residue certifies a planar graph of treewidth at most 3.
pub fn classify_component(g: &MultiGraph) -> ComponentClass {
    if g.components().len() > 1 {
        return ComponentClass::Reject("component is disconnected".into());
    }
    let mut h = g.clone();
    let mut work: Vec<VertexId> = h.vertices().collect();
    work.reverse();
    loop {
        while let Some(v) = work.pop() {
            if !h.contains(v) || h.n() == 1 {
                continue;
            }
            let d = h.deg(v);
            let loops = h.loops(v);
            if loops > 0 && d > 2 * loops {
                h.trim_loops(v);
                work.push(v);
            } else if d <= 1 {
                let nbrs: Vec<VertexId> = h.adjacent(v).collect();
                h.delete_vertex(v).expect("present");
                work.extend(nbrs);
            } else if d == 2 && loops == 0 {
                let ends: Vec<VertexId> = h
                    .neighbors(v)
                    .expect("present")
                    .flat_map(|(w, k)| std::iter::repeat_n(w, k))
                    .collect();
                h.delete_vertex(v).expect("present");
                h.add_edge(ends[0], ends[1]).expect("present");
                work.extend(ends);
            }
        }
        let cap = if h.n() >= 3 { 1 } else { 3 };
        let thick: Vec<(VertexId, VertexId, usize)> = h
            .edges()
            .into_iter()
            .filter(|&(u, v, k)| u != v && k > cap)
            .collect();
        if thick.is_empty() {
            break;
        }
        for (u, v, k) in thick {
            for _ in cap..k {
                h.remove_edge(u, v).expect("bundle edge");
            }
            work.extend([u, v]);
        }
    }
    let vs: Vec<VertexId> = h.vertices().collect();
    match vs.len() {
        0 => ComponentClass::Empty,
        // the loop count left here depends on rule order; only acyclicity
        // of the input is stable
        1 if g.m() + 1 == g.n() => ComponentClass::SingleVertex,
        1 => ComponentClass::LoopVertex,
        2 if h.multiplicity(vs[0], vs[1]) == 3 && h.loops(vs[0]) + h.loops(vs[1]) == 0 => {
            ComponentClass::DipoleD3
        }
        4 if h.is_simple() && h.m() == 6 => ComponentClass::K4,
        n => ComponentClass::Reject(format!("residue with {n} vertices and {} edges", h.m())),
    }
}

/// Induced subgraph `G[S]` keeping original ids.
pub fn induced_subgraph(g: &MultiGraph, s: &BTreeSet<VertexId>) -> Result<MultiGraph, GraphError> {
    g.induced(s)
}

/// Exact planarity test: loops and parallels are dropped, the graph is split
/// into biconnected blocks, and each block is embedded by path addition.
pub fn is_planar(g: &MultiGraph) -> bool {
    let mut h = g.clone();
    h.simplify();
    if h.n() >= 3 && h.m() > 3 * h.n() - 6 {
        return false;
    }
    biconnected_blocks(&h)
        .iter()
        .all(|block| block_is_planar(&h, block))
}

/// Edge sets of the biconnected blocks of a simple graph, via an iterative
/// Hopcroft–Tarjan DFS.
fn biconnected_blocks(g: &MultiGraph) -> Vec<Vec<(VertexId, VertexId)>> {
    let bound = g.id_bound();
    let mut disc = vec![usize::MAX; bound];
    let mut low = vec![0usize; bound];
    let mut time = 0;
    let mut blocks = Vec::new();
    let mut edge_stack: Vec<(VertexId, VertexId)> = Vec::new();
    let adj: Vec<Vec<VertexId>> = (0..bound)
        .map(|i| {
            let v = VertexId::from(i);
            if g.contains(v) {
                g.adjacent(v).collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    for root in g.vertices() {
        if disc[root.index()] != usize::MAX {
            continue;
        }
        disc[root.index()] = time;
        low[root.index()] = time;
        time += 1;
        // (vertex, parent, next neighbour index)
        let mut stack: Vec<(VertexId, Option<VertexId>, usize)> = vec![(root, None, 0)];
        while let Some(&mut (v, parent, ref mut i)) = stack.last_mut() {
            if *i < adj[v.index()].len() {
                let w = adj[v.index()][*i];
                *i += 1;
                if Some(w) == parent {
                    continue;
                }
                if disc[w.index()] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w.index()] = time;
                    low[w.index()] = time;
                    time += 1;
                    stack.push((w, Some(v), 0));
                } else if disc[w.index()] < disc[v.index()] {
                    edge_stack.push((v, w));
                    low[v.index()] = low[v.index()].min(disc[w.index()]);
                }
            } else {
                stack.pop();
                if let Some(p) = parent {
                    low[p.index()] = low[p.index()].min(low[v.index()]);
                    if low[v.index()] >= disc[p.index()] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == (p, v) {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

/// Path-addition (Demoucron–Malgrange–Pertuiset) test on one block.
fn block_is_planar(g: &MultiGraph, block: &[(VertexId, VertexId)]) -> bool {
    let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
    for &(u, v) in block {
        adj.entry(u).or_default().insert(v);
        adj.entry(v).or_default().insert(u);
    }
    let n = adj.len();
    let m = block.len();
    if n <= 4 {
        return true;
    }
    if m > 3 * n - 6 {
        return false;
    }
    let bound = g.id_bound();
    let key = |u: VertexId, v: VertexId| (u.min(v), u.max(v));

    let mut embedded_v = vec![false; bound];
    let mut embedded_e: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let mut faces: Vec<Vec<VertexId>> = Vec::new();

    // initial cycle through the first edge
    {
        let (s, t) = block[0];
        let mut prev: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        let mut queue = std::collections::VecDeque::from([s]);
        prev.insert(s, s);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[&x] {
                if x == s && y == t {
                    continue;
                }
                if let std::collections::btree_map::Entry::Vacant(e) = prev.entry(y) {
                    e.insert(x);
                    queue.push_back(y);
                }
            }
        }
        let mut cyc = vec![t];
        let mut x = t;
        while x != s {
            x = prev[&x];
            cyc.push(x);
        }
        for i in 0..cyc.len() {
            let (a, b) = (cyc[i], cyc[(i + 1) % cyc.len()]);
            embedded_e.insert(key(a, b));
            embedded_v[a.index()] = true;
        }
        let mut rev = cyc.clone();
        rev.reverse();
        faces.push(cyc);
        faces.push(rev);
    }

    loop {
        // collect fragments: (contact vertices, path between two contacts)
        let mut fragments: Vec<(BTreeSet<VertexId>, Vec<VertexId>)> = Vec::new();
        for (&u, ns) in &adj {
            if !embedded_v[u.index()] {
                continue;
            }
            for &v in ns {
                if u < v && embedded_v[v.index()] && !embedded_e.contains(&key(u, v)) {
                    fragments.push((BTreeSet::from([u, v]), vec![u, v]));
                }
            }
        }
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        for &start in adj.keys() {
            if embedded_v[start.index()] || seen.contains(&start) {
                continue;
            }
            let mut comp = vec![start];
            seen.insert(start);
            let mut contacts = BTreeSet::new();
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                i += 1;
                for &y in &adj[&x] {
                    if embedded_v[y.index()] {
                        contacts.insert(y);
                    } else if seen.insert(y) {
                        comp.push(y);
                    }
                }
            }
            let path = fragment_path(&adj, &embedded_v, &comp, &contacts);
            fragments.push((contacts, path));
        }
        if fragments.is_empty() {
            return true;
        }

        let mut choice: Option<(usize, usize)> = None;
        for (fi, (contacts, _)) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| contacts.iter().all(|c| f.contains(c)))
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("fragments non-empty");
        let path = &fragments[fi].1;
        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, path);
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            embedded_e.insert(key(w[0], w[1]));
        }
        for &x in path {
            embedded_v[x.index()] = true;
        }
    }
}

/// Path from one contact through the component to a different contact.
fn fragment_path(
    adj: &BTreeMap<VertexId, BTreeSet<VertexId>>,
    embedded: &[bool],
    comp: &[VertexId],
    contacts: &BTreeSet<VertexId>,
) -> Vec<VertexId> {
    let in_comp: BTreeSet<VertexId> = comp.iter().copied().collect();
    let a = *contacts
        .iter()
        .next()
        .expect("blocks give at least two contacts");
    let x0 = *adj[&a]
        .iter()
        .find(|y| in_comp.contains(y))
        .expect("a touches the fragment");
    let mut prev: BTreeMap<VertexId, VertexId> = BTreeMap::from([(x0, x0)]);
    let mut queue = std::collections::VecDeque::from([x0]);
    while let Some(x) = queue.pop_front() {
        if let Some(&b) = adj[&x].iter().find(|&&y| embedded[y.index()] && y != a) {
            let mut inner = vec![x];
            let mut y = x;
            while y != x0 {
                y = prev[&y];
                inner.push(y);
            }
            inner.reverse();
            let mut path = vec![a];
            path.extend(inner);
            path.push(b);
            return path;
        }
        for &y in &adj[&x] {
            if in_comp.contains(&y) && !prev.contains_key(&y) {
                prev.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    unreachable!("a fragment of a biconnected graph has two contacts")
}

/// Splits a face cycle along a path joining two of its vertices.
fn split_face(face: &[VertexId], path: &[VertexId]) -> (Vec<VertexId>, Vec<VertexId>) {
    let a = path[0];
    let b = *path.last().expect("path has two ends");
    let ia = face.iter().position(|&x| x == a).expect("contact on face");
    let ib = face.iter().position(|&x| x == b).expect("contact on face");
    let len = face.len();
    let inner = &path[1..path.len() - 1];
    // walk a -> b along the face, then back through the path
    let mut f1 = Vec::new();
    let mut i = ia;
    loop {
        f1.push(face[i]);
        if i == ib {
            break;
        }
        i = (i + 1) % len;
    }
    f1.extend(inner.iter().rev());
    let mut f2 = Vec::new();
    let mut i = ib;
    loop {
        f2.push(face[i]);
        if i == ia {
            break;
        }
        i = (i + 1) % len;
    }
    f2.extend(inner.iter());
    (f1, f2)
}

/// Verdicts on `G[S]` for every property, as reported by the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub size: usize,
    pub pseudoforest: bool,
    pub partial_2_tree: bool,
    pub planar: bool,
    /// Structure classes of the components of `G[S]`, in component order.
    pub component_classes: Vec<ComponentClass>,
}

impl Verdicts {
    pub fn structure_ok(&self) -> bool {
        self.component_classes.iter().all(ComponentClass::accepted)
    }
}

pub fn verdicts(g: &MultiGraph, s: &BTreeSet<VertexId>) -> Result<Verdicts, GraphError> {
    let h = induced_subgraph(g, s)?;
    let component_classes = h
        .components()
        .into_iter()
        .map(|c| {
            let part = h
                .induced(&c.into_iter().collect())
                .expect("component vertices exist");
            classify_component(&part)
        })
        .collect();
    Ok(Verdicts {
        size: s.len(),
        pseudoforest: is_pseudoforest(&h),
        partial_2_tree: is_partial_2_tree(&h),
        planar: is_planar(&h),
        component_classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{
        complete, complete_bipartite, cycle, disjoint_copies, fixture, path, Fixture,
    };

    fn set(ids: &[usize]) -> BTreeSet<VertexId> {
        ids.iter().map(|&i| VertexId::from(i)).collect()
    }

    #[test]
    fn pseudoforest_examples() {
        assert!(is_pseudoforest(&complete(3)));
        assert!(!is_pseudoforest(&complete_bipartite(2, 3)));
        assert!(is_pseudoforest(&disjoint_copies(&cycle(4).unwrap(), 2)));
        let mut dipole = MultiGraph::with_vertices(2);
        dipole.add_edge(0.into(), 1.into()).unwrap();
        dipole.add_edge(0.into(), 1.into()).unwrap();
        assert!(is_pseudoforest(&dipole));
        dipole.add_edge(0.into(), 0.into()).unwrap();
        assert!(!is_pseudoforest(&dipole));
    }

    #[test]
    fn partial_2_tree_examples() {
        assert!(!is_partial_2_tree(&complete(4)));
        assert!(is_partial_2_tree(&complete_bipartite(2, 3)));
        assert!(is_partial_2_tree(&path(7)));
        assert!(is_partial_2_tree(&MultiGraph::default()));
        assert!(!is_partial_2_tree(&complete_bipartite(3, 3)));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify_component(&complete_bipartite(2, 3)),
            ComponentClass::DipoleD3
        );
        assert_eq!(
            classify_component(&cycle(7).unwrap()),
            ComponentClass::LoopVertex
        );
        assert!(!classify_component(&complete(5)).accepted());
        let mut k4_tail = complete(4);
        let a = k4_tail.add_vertex();
        let b = k4_tail.add_vertex();
        k4_tail.add_edge(0.into(), a).unwrap();
        k4_tail.add_edge(a, b).unwrap();
        assert_eq!(classify_component(&k4_tail), ComponentClass::K4);
        assert_eq!(classify_component(&path(5)), ComponentClass::SingleVertex);
        assert_eq!(
            classify_component(&MultiGraph::default()),
            ComponentClass::Empty
        );
        let k33 = complete_bipartite(3, 3);
        let minus = k33.induced(&set(&[0, 1, 2, 3, 4])).unwrap();
        assert_eq!(classify_component(&minus), ComponentClass::DipoleD3);
    }

    #[test]
    fn planarity_examples() {
        assert!(!is_planar(&complete(5)));
        assert!(is_planar(&complete(4)));
        let mut k33 = complete_bipartite(3, 3);
        assert!(!is_planar(&k33));
        let e = MultiGraph::from_edge_list(
            &k33.edges()
                .iter()
                .skip(1)
                .map(|&(u, v, _)| (u.index(), v.index()))
                .collect::<Vec<_>>(),
            6,
        )
        .unwrap();
        assert!(is_planar(&e));
        assert!(!is_planar(&fixture(Fixture::Petersen)));
        assert!(!is_planar(&fixture(Fixture::Heawood)));
        // a planar graph with many blocks and cycles
        let a = k33.add_vertex();
        k33.delete_vertex(0.into()).unwrap();
        k33.add_edge(1.into(), a).unwrap();
        assert!(is_planar(&k33));
        // octahedron: 4-regular, planar, m = 3n - 6
        let oct = MultiGraph::from_edge_list(
            &complete(6)
                .edges()
                .iter()
                .map(|&(u, v, _)| (u.index(), v.index()))
                .filter(|&(u, v)| !matches!((u, v), (0, 1) | (2, 3) | (4, 5)))
                .collect::<Vec<_>>(),
            6,
        )
        .unwrap();
        assert!(oct.is_d_regular(4));
        assert!(is_planar(&oct));
    }

    #[test]
    fn induced_examples() {
        let k5 = complete(5);
        let t = induced_subgraph(&k5, &set(&[1, 3, 4])).unwrap();
        assert_eq!((t.n(), t.m()), (3, 3));
        let side = induced_subgraph(&complete_bipartite(3, 3), &set(&[0, 1, 2])).unwrap();
        assert_eq!((side.n(), side.m()), (3, 0));
        let empty = induced_subgraph(&k5, &BTreeSet::new()).unwrap();
        assert_eq!(empty.n(), 0);
        assert!(induced_subgraph(&k5, &set(&[9])).is_err());
    }
}
