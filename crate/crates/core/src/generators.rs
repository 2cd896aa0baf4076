//! Deterministic graph families: tight examples, named fixtures and seeded
//! random graphs.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, so a spec
//! always produces the same graph.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{MultiGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fixture {
    Petersen,
    Heawood,
    McGee,
    TutteCoxeter,
    K33,
    K4,
    K5,
    C4,
}

impl Fixture {
    pub const ALL: [Fixture; 8] = [
        Fixture::Petersen,
        Fixture::Heawood,
        Fixture::McGee,
        Fixture::TutteCoxeter,
        Fixture::K33,
        Fixture::K4,
        Fixture::K5,
        Fixture::C4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Petersen => "petersen",
            Fixture::Heawood => "heawood",
            Fixture::McGee => "mcgee",
            Fixture::TutteCoxeter => "tutte-coxeter",
            Fixture::K33 => "k33",
            Fixture::K4 => "k4",
            Fixture::K5 => "k5",
            Fixture::C4 => "c4",
        }
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fixture {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, GenError> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .map(|c| c.to_ascii_lowercase())
            .collect();
        Fixture::ALL
            .into_iter()
            .find(|f| f.name().replace('-', "") == key)
            .ok_or_else(|| GenError::InvalidSpec(format!("unknown fixture {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilySpec {
    Complete(usize),
    CompleteBipartite(usize, usize),
    Cycle(usize),
    Path(usize),
    DisjointCopies(Box<FamilySpec>, usize),
    RandomRegular {
        n: usize,
        d: usize,
        seed: u64,
    },
    /// Uniform graph with `n` vertices and `m` distinct edges.
    RandomGnm {
        n: usize,
        m: usize,
        seed: u64,
    },
    /// Connected graph of maximum degree 3 and girth at least `girth`: a
    /// Hamiltonian cycle plus random chords that keep the girth.
    HighGirthSubcubic {
        n: usize,
        girth: usize,
        seed: u64,
    },
    Fixture(Fixture),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("invalid family spec: {0}")]
    InvalidSpec(String),
}

fn invalid(msg: impl Into<String>) -> GenError {
    GenError::InvalidSpec(msg.into())
}

fn simple(n: usize, edges: &[(usize, usize)]) -> MultiGraph {
    MultiGraph::from_edge_list(edges, n).expect("generator edges are loop-free")
}

pub fn complete(k: usize) -> MultiGraph {
    let mut e = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            e.push((i, j));
        }
    }
    simple(k, &e)
}

pub fn complete_bipartite(a: usize, b: usize) -> MultiGraph {
    let mut e = Vec::new();
    for i in 0..a {
        for j in 0..b {
            e.push((i, a + j));
        }
    }
    simple(a + b, &e)
}

pub fn path(n: usize) -> MultiGraph {
    let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    simple(n, &e)
}

pub fn cycle(n: usize) -> Result<MultiGraph, GenError> {
    if n < 3 {
        return Err(invalid(format!("cycle needs n >= 3, got {n}")));
    }
    let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(simple(n, &e))
}

/// Hamiltonian cubic graph from LCF notation `[shifts]^reps`.
fn lcf(shifts: &[i64], reps: usize) -> MultiGraph {
    let n = shifts.len() * reps;
    let mut e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    for i in 0..n {
        let j = (i as i64 + shifts[i % shifts.len()]).rem_euclid(n as i64) as usize;
        e.push((i.min(j), i.max(j)));
    }
    simple(n, &e)
}

fn petersen() -> MultiGraph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    simple(10, &e)
}

pub fn fixture(f: Fixture) -> MultiGraph {
    match f {
        Fixture::Petersen => petersen(),
        Fixture::Heawood => lcf(&[5, -5], 7),
        Fixture::McGee => lcf(&[12, 7, -7], 8),
        Fixture::TutteCoxeter => lcf(&[-13, -9, 7, -7, 9, 13], 5),
        Fixture::K33 => complete_bipartite(3, 3),
        Fixture::K4 => complete(4),
        Fixture::K5 => complete(5),
        Fixture::C4 => cycle(4).expect("n >= 3"),
    }
}

/// `t` disjoint copies of `g`; copy `i` occupies ids `i·b..(i+1)·b` where
/// `b = g.id_bound()`.
pub fn disjoint_copies(g: &MultiGraph, t: usize) -> MultiGraph {
    let b = g.id_bound();
    let present = (0..t).flat_map(|i| g.vertices().map(move |v| VertexId::from(i * b + v.index())));
    let mut out = MultiGraph::with_vertex_set(b * t, present);
    let edges = g.edges();
    for i in 0..t {
        for &(u, v, k) in &edges {
            let (u, v) = (
                VertexId::from(i * b + u.index()),
                VertexId::from(i * b + v.index()),
            );
            for _ in 0..k {
                out.add_edge(u, v).expect("vertices exist");
            }
        }
    }
    out
}

/// Pairing model: shuffle `n·d` points, pair neighbours, restart from the
/// same stream on any loop or parallel edge.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<MultiGraph, GenError> {
    if d >= n || (n * d) % 2 == 1 {
        return Err(invalid(format!(
            "random regular needs d < n and n·d even (n={n}, d={d})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..n * d).map(|p| p / d).collect();
    let mut seen = BTreeSet::new();
    'retry: loop {
        points.shuffle(&mut rng);
        seen.clear();
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !seen.insert((u, v)) {
                continue 'retry;
            }
        }
        let e: Vec<_> = seen.iter().copied().collect();
        return Ok(simple(n, &e));
    }
}

pub fn random_gnm(n: usize, m: usize, seed: u64) -> Result<MultiGraph, GenError> {
    let mut all = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            all.push((i, j));
        }
    }
    if m > all.len() {
        return Err(invalid(format!("G(n={n}, m={m}) has too many edges")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    all.shuffle(&mut rng);
    all.truncate(m);
    Ok(simple(n, &all))
}

/// BFS distance from `s` to `t`, giving up beyond `limit`.
fn distance_within(g: &MultiGraph, s: VertexId, t: VertexId, limit: usize) -> Option<usize> {
    let mut dist = vec![usize::MAX; g.id_bound()];
    dist[s.index()] = 0;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        if v == t {
            return Some(dist[v.index()]);
        }
        if dist[v.index()] == limit {
            continue;
        }
        for w in g.adjacent(v) {
            if dist[w.index()] == usize::MAX {
                dist[w.index()] = dist[v.index()] + 1;
                queue.push_back(w);
            }
        }
    }
    None
}

pub fn high_girth_subcubic(n: usize, girth: usize, seed: u64) -> Result<MultiGraph, GenError> {
    if n < girth.max(3) {
        return Err(invalid(format!("need n >= girth (n={n}, girth={girth})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let e: Vec<_> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
    let mut g = simple(n, &e);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((VertexId::from(i), VertexId::from(j)));
        }
    }
    pairs.shuffle(&mut rng);
    for (u, v) in pairs {
        if g.deg(u) >= 3 || g.deg(v) >= 3 || g.has_edge(u, v) {
            continue;
        }
        // the chord closes a cycle of length dist + 1
        if distance_within(&g, u, v, girth - 2).is_none() {
            g.add_edge(u, v).expect("vertices exist");
        }
    }
    Ok(g)
}

pub fn generate(spec: &FamilySpec) -> Result<MultiGraph, GenError> {
    Ok(match spec {
        FamilySpec::Complete(k) => complete(*k),
        FamilySpec::CompleteBipartite(a, b) => complete_bipartite(*a, *b),
        FamilySpec::Cycle(n) => cycle(*n)?,
        FamilySpec::Path(n) => path(*n),
        FamilySpec::DisjointCopies(inner, t) => disjoint_copies(&generate(inner)?, *t),
        FamilySpec::RandomRegular { n, d, seed } => random_regular(*n, *d, *seed)?,
        FamilySpec::RandomGnm { n, m, seed } => random_gnm(*n, *m, *seed)?,
        FamilySpec::HighGirthSubcubic { n, girth, seed } => high_girth_subcubic(*n, *girth, *seed)?,
        FamilySpec::Fixture(f) => fixture(*f),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Girth;

    #[test]
    fn copies_of_k33() {
        let g = generate(&FamilySpec::DisjointCopies(
            Box::new(FamilySpec::CompleteBipartite(3, 3)),
            3,
        ))
        .unwrap();
        assert_eq!((g.n(), g.m(), g.components().len()), (18, 27, 3));
    }

    #[test]
    fn small_families() {
        let c5 = generate(&FamilySpec::Cycle(5)).unwrap();
        assert!(c5.is_d_regular(2));
        assert_eq!((c5.n(), c5.m(), c5.girth()), (5, 5, Girth::Finite(5)));
        assert!(generate(&FamilySpec::Cycle(2)).is_err());
        assert_eq!(path(4).m(), 3);
        assert_eq!(complete(6).m(), 15);
    }

    #[test]
    fn random_regular_example() {
        let g = generate(&FamilySpec::RandomRegular {
            n: 20,
            d: 4,
            seed: 7,
        })
        .unwrap();
        assert!(g.is_simple() && g.is_d_regular(4));
        assert_eq!(g.m(), 40);
        assert_eq!(g, random_regular(20, 4, 7).unwrap());
        assert!(random_regular(5, 3, 0).is_err());
        assert!(random_regular(4, 4, 0).is_err());
    }

    #[test]
    fn random_regular_many_seeds() {
        for (n, d) in [(10, 3), (20, 4), (30, 5)] {
            for seed in 0..1000 {
                let g = random_regular(n, d, seed).unwrap();
                assert!(
                    g.is_simple() && g.is_d_regular(d),
                    "n={n} d={d} seed={seed}"
                );
                assert_eq!(g.n(), n);
            }
        }
    }

    #[test]
    fn fixture_girths() {
        let cases = [
            (Fixture::Petersen, 10, 15, 5),
            (Fixture::Heawood, 14, 21, 6),
            (Fixture::McGee, 24, 36, 7),
            (Fixture::TutteCoxeter, 30, 45, 8),
            (Fixture::K33, 6, 9, 4),
            (Fixture::K4, 4, 6, 3),
            (Fixture::K5, 5, 10, 3),
            (Fixture::C4, 4, 4, 4),
        ];
        for (f, n, m, girth) in cases {
            let g = fixture(f);
            assert_eq!(
                (g.n(), g.m(), g.girth()),
                (n, m, Girth::Finite(girth)),
                "{f}"
            );
            assert!(g.is_simple());
        }
    }

    #[test]
    fn fixture_names_parse() {
        for f in Fixture::ALL {
            assert_eq!(f.name().parse::<Fixture>().unwrap(), f);
        }
        assert_eq!(
            "Tutte_Coxeter".parse::<Fixture>().unwrap(),
            Fixture::TutteCoxeter
        );
        assert!("heawod".parse::<Fixture>().is_err());
    }

    #[test]
    fn high_girth_substitute() {
        for seed in 0..20 {
            let g = high_girth_subcubic(60, 11, seed).unwrap();
            assert!(g.is_simple() && g.max_degree() <= 3);
            assert_eq!(g.components().len(), 1);
            assert!(g.girth().finite().unwrap() >= 11);
            assert!(g.m() > g.n(), "some chords get added");
        }
    }

    #[test]
    fn gnm() {
        let g = random_gnm(8, 20, 3).unwrap();
        assert_eq!((g.n(), g.m()), (8, 20));
        assert!(random_gnm(4, 7, 0).is_err());
    }
}
