//! Induced planar subgraphs of treewidth at most 3 with
//! `|S| >= n - 23m/120`, with a per-step charge and debt ledger.
//!
//! The input is simplified first. Case predicates look at the span of a
//! vertex (its number of distinct non-self neighbours); loops and parallel
//! edges created by contractions are kept and only add edge units.
//! Cases are evaluated per connected component, and deletions that split
//! a component queue the pieces.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{MultiGraph, VertexId};
use crate::lp::{check_feasible, Assignment, RationalLp};
use crate::rational::Rational;
use crate::solution::{Bound, Case, ReductionSolution, TraceStep};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarError {
    #[error("charge parameters violate the analysis constraints: {0}")]
    InfeasibleParams(String),
    #[error("step {step} ({case:?}) has negative charge {charge}")]
    NegativeCharge {
        step: usize,
        case: Case,
        charge: Rational,
    },
    #[error("vertex {vertex} carries debt {debt} above its cap {cap}")]
    DebtOverCap {
        vertex: VertexId,
        debt: Box<Rational>,
        cap: Box<Rational>,
    },
}

/// Credit limits `c_d` (with `c_2 = 1`), the slack `epsilon` and the
/// whole-graph limit `tau`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChargeParams {
    pub epsilon: Rational,
    pub c2: Rational,
    pub c3: Rational,
    pub c4: Rational,
    pub tau: Rational,
}

impl Default for ChargeParams {
    fn default() -> Self {
        ChargeParams {
            epsilon: Rational::new(5, 23),
            c2: Rational::one(),
            c3: Rational::new(9, 46),
            c4: Rational::new(1, 23),
            tau: Rational::new(15, 23),
        }
    }
}

impl ChargeParams {
    pub fn new(epsilon: Rational, c3: Rational, c4: Rational, tau: Rational) -> Self {
        ChargeParams {
            epsilon,
            c2: Rational::one(),
            c3,
            c4,
            tau,
        }
    }

    /// Credit limit of a degree-`d` vertex; degrees below 2 share `c_2`.
    pub fn cap(&self, d: usize) -> Rational {
        match d {
            0..=2 => self.c2.clone(),
            3 => self.c3.clone(),
            4 => self.c4.clone(),
            _ => Rational::zero(),
        }
    }

    /// `delta_d = c_d - c_{d+1}` for `d` in 2..=4.
    pub fn delta(&self, d: usize) -> Rational {
        self.cap(d) - self.cap(d + 1)
    }

    pub fn assignment(&self) -> Assignment {
        [
            ("epsilon", &self.epsilon),
            ("c3", &self.c3),
            ("c4", &self.c4),
            ("tau", &self.tau),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
    }

    pub fn validate(&self) -> Result<(), PlanarError> {
        if self.c2 != Rational::one() {
            return Err(PlanarError::InfeasibleParams(format!(
                "c2 = {} but must be 1",
                self.c2
            )));
        }
        if self.c3 > self.c2 {
            return Err(PlanarError::InfeasibleParams(format!(
                "c3 = {} exceeds c2",
                self.c3
            )));
        }
        let report = check_feasible(&RationalLp::planar_analysis(), &self.assignment())
            .map_err(|e| PlanarError::InfeasibleParams(e.to_string()))?;
        let bad: Vec<String> = report.violated().map(|e| e.name.clone()).collect();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(PlanarError::InfeasibleParams(format!(
                "violated: {}",
                bad.join(", ")
            )))
        }
    }
}

/// What one step did, as far as the ledger is concerned.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StepChange {
    /// Edge units removed or contracted.
    pub edge_events: usize,
    pub deleted: Vec<VertexId>,
    /// Vertices that left the working graph for S (contracted away or accepted).
    pub accepted: Vec<VertexId>,
    /// Surviving vertices whose degree dropped, with the new degree.
    pub drops: Vec<(VertexId, usize)>,
    pub tau_issued: usize,
    pub tau_cleared: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub step: usize,
    pub case: Case,
    pub charge: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerState {
    pub debt: BTreeMap<VertexId, Rational>,
    /// Outstanding whole-graph debt, per component keyed by its smallest vertex.
    pub tau_outstanding: BTreeMap<VertexId, bool>,
    pub params: ChargeParams,
    pub step_charges: Vec<LedgerEntry>,
}

impl LedgerState {
    pub fn new(params: ChargeParams) -> Self {
        LedgerState {
            debt: BTreeMap::new(),
            tau_outstanding: BTreeMap::new(),
            params,
            step_charges: Vec::new(),
        }
    }

    pub fn debt_of(&self, v: VertexId) -> Rational {
        self.debt.get(&v).cloned().unwrap_or_default()
    }

    /// Charges one step: `+1` per edge event, `-(5 + epsilon)` per deleted
    /// vertex, minus debts of departing vertices, plus debt raised to the
    /// cap on vertices whose span dropped to 2..=4, plus or minus `tau`.
    pub fn ledger_step(&mut self, case: Case, change: &StepChange) -> Rational {
        let p = &self.params;
        let mut charge = Rational::from_integer(change.edge_events as i64);
        charge -= &(&(Rational::from_integer(5) + p.epsilon.clone()) * change.deleted.len() as i64);
        for v in change.deleted.iter().chain(&change.accepted) {
            if let Some(d) = self.debt.remove(v) {
                charge -= &d;
            }
        }
        for &(v, d) in &change.drops {
            if !(2..=4).contains(&d) {
                continue;
            }
            let cap = p.cap(d);
            let old = self.debt_of(v);
            if cap > old {
                charge += &(cap.clone() - old);
                self.debt.insert(v, cap);
            }
        }
        charge += &(&p.tau * change.tau_issued as i64);
        charge -= &(&p.tau * change.tau_cleared as i64);
        self.step_charges.push(LedgerEntry {
            step: self.step_charges.len(),
            case,
            charge: charge.clone(),
        });
        charge
    }

    pub fn min_charge(&self) -> Option<&Rational> {
        self.step_charges.iter().map(|e| &e.charge).min()
    }

    fn check_caps(&self, g: &MultiGraph) -> Result<(), PlanarError> {
        for (&v, d) in &self.debt {
            let cap = self.params.cap(span(g, v));
            if d > &cap || d.is_negative() {
                return Err(PlanarError::DebtOverCap {
                    vertex: v,
                    debt: Box::new(d.clone()),
                    cap: Box::new(cap),
                });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarOptions {
    pub params: ChargeParams,
    /// Fail on the first negative step charge or cap violation.
    pub strict_ledger: bool,
}

impl Default for PlanarOptions {
    fn default() -> Self {
        PlanarOptions {
            params: ChargeParams::default(),
            strict_ledger: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanarRun {
    pub solution: ReductionSolution,
    pub ledger: LedgerState,
}

pub fn reduce_planar(g: &MultiGraph) -> Result<PlanarRun, PlanarError> {
    reduce_planar_with(g, &PlanarOptions::default())
}

/// Number of distinct neighbours other than `v` itself. All case
/// predicates use this degree; parallel edges and loops only add edge units.
pub fn span(g: &MultiGraph, v: VertexId) -> usize {
    g.adjacent(v).count()
}

/// Deletes vertices of span at least 6, smallest id first, and returns how
/// many went. Spans only shrink, so one ascending pass finds them all.
pub fn preprocess_high_degree(g: &mut MultiGraph) -> usize {
    let mut count = 0;
    let order: Vec<VertexId> = g.vertices().collect();
    for v in order {
        if span(g, v) >= 6 {
            g.delete_vertex(v).expect("live vertex");
            count += 1;
        }
    }
    count
}

fn component_within(g: &MultiGraph, start: VertexId) -> BTreeSet<VertexId> {
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for w in g.adjacent(v) {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen
}

/// Components of `g` restricted to the live members of `vs`.
fn split(g: &MultiGraph, vs: &BTreeSet<VertexId>) -> Vec<BTreeSet<VertexId>> {
    let mut left: BTreeSet<VertexId> = vs.iter().copied().filter(|&v| g.contains(v)).collect();
    let mut out = Vec::new();
    while let Some(&s) = left.first() {
        let c = component_within(g, s);
        for v in &c {
            left.remove(v);
        }
        out.push(c);
    }
    out
}

enum Action {
    Delete(Case, VertexId),
    Contract(VertexId, VertexId),
    Accept,
}

fn choose(g: &MultiGraph, c: &BTreeSet<VertexId>) -> Action {
    let deg = |v: &VertexId| span(g, *v);
    let first = |d: usize| c.iter().copied().find(|v| deg(v) == d);
    if let Some(&v) = c.iter().find(|v| deg(v) >= 6) {
        return Action::Delete(Case::Preprocess, v);
    }
    // paths and cycles, possibly with parallel edges: subdivided edges,
    // dipoles and looped vertices
    if c.iter().all(|v| deg(v) <= 2) {
        return Action::Accept;
    }
    if let Some(&v) = c.iter().find(|v| deg(v) <= 2) {
        let u = g.adjacent(v).next().expect("component has an edge");
        return Action::Contract(v, u);
    }
    let cubic = c.iter().all(|v| deg(v) == 3);
    if cubic && c.len() < 6 {
        return Action::Accept; // K4
    }
    if cubic {
        return Action::Delete(Case::PlanarThreeRegular, *c.first().expect("non-empty"));
    }
    if let Some(v) = first(5) {
        return Action::Delete(Case::DegreeFive, v);
    }
    if let Some(&v) = c
        .iter()
        .find(|&&v| deg(&v) == 4 && g.adjacent(v).any(|w| deg(&w) == 3))
    {
        return Action::Delete(Case::MixedDegrees, v);
    }
    Action::Delete(Case::FourRegular, *c.first().expect("non-empty"))
}

pub fn reduce_planar_with(
    input: &MultiGraph,
    opts: &PlanarOptions,
) -> Result<PlanarRun, PlanarError> {
    opts.params.validate()?;
    let mut g = input.clone();
    g.simplify();
    let mut sol = ReductionSolution::new(Bound::PLANAR);
    let mut ledger = LedgerState::new(opts.params.clone());
    let record = |ledger: &mut LedgerState, g: &MultiGraph, case: Case, change: &StepChange| {
        let charge = ledger.ledger_step(case, change);
        if opts.strict_ledger {
            if charge.is_negative() {
                return Err(PlanarError::NegativeCharge {
                    step: ledger.step_charges.len() - 1,
                    case,
                    charge,
                });
            }
            ledger.check_caps(g)?;
        }
        Ok(())
    };

    // components keyed by smallest vertex, with their tau flag
    let mut queue: BTreeMap<VertexId, (BTreeSet<VertexId>, bool)> = BTreeMap::new();
    let mut isolated = TraceStep::new(Case::HarvestIsolated);
    for c in g.components() {
        if c.len() == 1 && g.deg(c[0]) == 0 {
            isolated.s_added.push(c[0]);
        } else {
            queue.insert(c[0], (c.into_iter().collect(), false));
        }
    }
    if !isolated.s_added.is_empty() {
        for &v in &isolated.s_added {
            g.delete_vertex(v).expect("isolated vertex");
            sol.s.insert(v);
        }
        let change = StepChange {
            accepted: isolated.s_added.clone(),
            ..StepChange::default()
        };
        sol.trace.push(isolated);
        record(&mut ledger, &g, Case::HarvestIsolated, &change)?;
    }

    while let Some((key, (comp, tau))) = queue.pop_first() {
        ledger.tau_outstanding.remove(&key);
        let count3 =
            |g: &MultiGraph, c: &BTreeSet<VertexId>| c.iter().filter(|&&v| span(g, v) == 3).count();
        let count3_before = count3(&g, &comp);
        let mut change = StepChange::default();
        let mut step;
        match choose(&g, &comp) {
            Action::Accept => {
                step = TraceStep::new(Case::Planar);
                for &v in &comp {
                    step.removed_edges += g.delete_vertex(v).expect("member");
                    sol.s.insert(v);
                }
                step.s_added = comp.iter().copied().collect();
                change.edge_events = step.removed_edges;
                change.accepted = step.s_added.clone();
                change.tau_cleared = usize::from(tau);
                sol.trace.push(step);
                record(&mut ledger, &g, Case::Planar, &change)?;
                continue;
            }
            Action::Delete(case, v) => {
                let before: Vec<(VertexId, usize)> =
                    g.adjacent(v).map(|w| (w, span(&g, w))).collect();
                step = TraceStep::new(case);
                step.removed_edges = g.delete_vertex(v).expect("member");
                step.deleted.push(v);
                change.edge_events = step.removed_edges;
                change.deleted.push(v);
                // preprocessing issues no debt
                if case != Case::Preprocess {
                    change.drops = before.into_iter().map(|(w, _)| (w, span(&g, w))).collect();
                }
            }
            Action::Contract(v, u) => {
                step = TraceStep::new(Case::ContractLowDegree);
                g.contract_edge(v, u, u).expect("edge exists");
                step.contracted.push((v, u));
                step.s_added.push(v);
                sol.s.insert(v);
                change.edge_events = 1;
                change.accepted.push(v);
            }
        }

        let pieces = split(&g, &comp);
        let count3_after: usize = pieces.iter().map(|p| count3(&g, p)).sum();
        // tau is paid by the deletion that removes the last degree-3 vertex
        let deleting = !step.deleted.is_empty();
        if tau && deleting && count3_after == 0 {
            change.tau_cleared = 1;
        }
        if !tau && count3_before == 0 && count3_after > 0 {
            change.tau_issued = 1;
        }
        let owed = (tau || change.tau_issued > 0) && change.tau_cleared == 0;
        for p in pieces {
            let first = *p.first().expect("non-empty");
            if p.len() == 1 && g.deg(first) == 0 {
                // isolated by this step: accepted now, its debt paid now
                g.delete_vertex(first).expect("isolated vertex");
                sol.s.insert(first);
                step.s_added.push(first);
                change.accepted.push(first);
                continue;
            }
            let flag = owed && (!deleting || count3(&g, &p) > 0);
            if flag {
                ledger.tau_outstanding.insert(first, true);
            }
            queue.insert(first, (p, flag));
        }
        let case = step.case;
        sol.trace.push(step);
        record(&mut ledger, &g, case, &change)?;
    }
    debug_assert_eq!(g.n(), 0);
    Ok(PlanarRun {
        solution: sol,
        ledger,
    })
}
