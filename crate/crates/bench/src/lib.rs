//! Size ladders for scaling checks, shared by the criterion benches and
//! the `planarize bench` subcommand.

use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use planarize_core::generators::{complete, complete_bipartite, disjoint_copies, random_regular};
use planarize_core::planar::PlanarOptions;
use planarize_core::{Algorithm, MultiGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LadderFamily {
    K33Copies,
    K5Copies,
    RandomRegular { d: usize, seed: u64 },
}

impl FromStr for LadderFamily {
    type Err = String;

    /// `k33xt`, `k5xt`, or `random-regular:<d>[:<seed>]`.
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| {
            t.parse::<u64>()
                .map_err(|_| format!("bad number {t:?} in {s:?}"))
        };
        match parts.as_slice() {
            ["k33xt"] => Ok(LadderFamily::K33Copies),
            ["k5xt"] => Ok(LadderFamily::K5Copies),
            ["random-regular", d] => Ok(LadderFamily::RandomRegular {
                d: num(d)? as usize,
                seed: 0,
            }),
            ["random-regular", d, seed] => Ok(LadderFamily::RandomRegular {
                d: num(d)? as usize,
                seed: num(seed)?,
            }),
            _ => Err(format!("unknown ladder family {s:?}")),
        }
    }
}

impl LadderFamily {
    /// Instance with about `size` vertices (rounded down to whole copies).
    pub fn instance(self, size: usize) -> Result<MultiGraph, String> {
        match self {
            LadderFamily::K33Copies => Ok(disjoint_copies(&complete_bipartite(3, 3), size / 6)),
            LadderFamily::K5Copies => Ok(disjoint_copies(&complete(5), size / 5)),
            LadderFamily::RandomRegular { d, seed } => {
                random_regular(size, d, seed).map_err(|e| e.to_string())
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LadderRow {
    pub size: usize,
    pub n: usize,
    pub m: usize,
    pub s: usize,
    /// Fastest of the repetitions.
    pub seconds: f64,
    /// `seconds` over the previous row's `seconds`.
    pub ratio: Option<f64>,
}

/// Times `alg` on each rung; generation is not timed.
pub fn run_ladder(
    alg: Algorithm,
    family: LadderFamily,
    sizes: &[usize],
    reps: usize,
) -> Result<Vec<LadderRow>, String> {
    let opts = PlanarOptions::default();
    let mut rows: Vec<LadderRow> = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let g = family.instance(size)?;
        let mut best = f64::INFINITY;
        let mut s = 0;
        for _ in 0..reps.max(1) {
            let start = Instant::now();
            let (sol, _) = alg.run(&g, &opts).map_err(|e| e.to_string())?;
            best = best.min(start.elapsed().as_secs_f64());
            s = sol.s.len();
        }
        let ratio = rows.last().map(|r| best / r.seconds);
        rows.push(LadderRow {
            size,
            n: g.n(),
            m: g.m(),
            s,
            seconds: best,
            ratio,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_parse_and_build() {
        let f: LadderFamily = "random-regular:4:7".parse().unwrap();
        assert_eq!(f, LadderFamily::RandomRegular { d: 4, seed: 7 });
        assert_eq!(
            "k33xt"
                .parse::<LadderFamily>()
                .unwrap()
                .instance(60)
                .unwrap()
                .n(),
            60
        );
        assert!("k7xt".parse::<LadderFamily>().is_err());
    }

    #[test]
    fn empty_ladder() {
        assert!(
            run_ladder(Algorithm::Treewidth2, LadderFamily::K5Copies, &[], 1)
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn ratios_follow_rows() {
        let rows = run_ladder(
            Algorithm::Pseudoforest,
            LadderFamily::K33Copies,
            &[60, 120],
            1,
        )
        .unwrap();
        assert_eq!(rows[0].ratio, None);
        assert!(rows[1].ratio.is_some());
        assert_eq!(rows[1].s, 80);
    }
}
