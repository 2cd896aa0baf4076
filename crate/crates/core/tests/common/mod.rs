#![allow(dead_code)]

use planarize_core::generators::{random_gnm, random_regular};
use planarize_core::MultiGraph;

/// Seeded sparse and dense random graphs used by the bound sweeps.
pub fn bound_corpus() -> Vec<(String, MultiGraph)> {
    let mut out = Vec::new();
    let regular = [
        (10, 3),
        (20, 4),
        (30, 5),
        (12, 4),
        (40, 3),
        (60, 4),
        (16, 5),
        (60, 5),
        (8, 3),
        (6, 5),
    ];
    for (n, d) in regular {
        for seed in 0..30 {
            out.push((
                format!("rr({n},{d},{seed})"),
                random_regular(n, d, seed).unwrap(),
            ));
        }
    }
    let dense = [(8, 20), (10, 30), (12, 25), (20, 60), (9, 36), (7, 21)];
    for (n, m) in dense {
        for seed in 0..40 {
            out.push((
                format!("gnm({n},{m},{seed})"),
                random_gnm(n, m, seed).unwrap(),
            ));
        }
    }
    out
}

/// Random simple graphs with at most nine vertices.
pub fn small_corpus(count: u64) -> Vec<(String, MultiGraph)> {
    (0..count)
        .map(|seed| {
            let n = 3 + (seed % 7) as usize;
            let max = n * (n - 1) / 2;
            let m = (seed as usize * 7 + 3) % (max + 1);
            (
                format!("gnm({n},{m},{seed})"),
                random_gnm(n, m, seed).unwrap(),
            )
        })
        .collect()
}
