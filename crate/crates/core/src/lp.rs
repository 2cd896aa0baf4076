//! Exact-rational linear programs with a handful of variables, solved by
//! enumerating every basic solution.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub name: String,
    pub coeffs: Vec<Rational>,
    pub rel: Relation,
    pub rhs: Rational,
}

impl Constraint {
    fn lhs(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// Non-negative exactly when the constraint holds.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        let lhs = self.lhs(x);
        match self.rel {
            Relation::Le => &self.rhs - &lhs,
            Relation::Ge => &lhs - &self.rhs,
        }
    }

    /// The same half-space written as `a·x <= b`.
    fn as_le(&self) -> (Vec<Rational>, Rational) {
        match self.rel {
            Relation::Le => (self.coeffs.clone(), self.rhs.clone()),
            Relation::Ge => (
                self.coeffs.iter().map(|a| -a.clone()).collect(),
                -self.rhs.clone(),
            ),
        }
    }
}

/// Maximize one variable subject to linear constraints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalLp {
    pub variables: Vec<String>,
    pub objective: usize,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LpError {
    #[error("assignment is missing variable {0:?}")]
    MissingVariable(String),
    #[error("no constraint named {0:?}")]
    UnknownConstraint(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("constraint {0:?} has the wrong number of coefficients")]
    Arity(String),
    #[error("the LP is infeasible")]
    Infeasible,
    #[error("the objective is unbounded")]
    Unbounded,
    #[error(
        "the constraint matrix has rank below the variable count, so basic solutions do not exist"
    )]
    NotPointed,
}

pub type Assignment = BTreeMap<String, Rational>;

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

fn row(c: [i64; 4], rel: Relation, rhs: i64, name: &str) -> Constraint {
    Constraint {
        name: name.to_string(),
        coeffs: c.iter().map(|&k| Rational::from_integer(k)).collect(),
        rel,
        rhs: Rational::from_integer(rhs),
    }
}

impl RationalLp {
    /// The charge LP behind the planar reducer's `23/120` guarantee, over
    /// `(epsilon, c3, c4, tau)` with `c2 = 1` fixed.
    pub fn planar_analysis() -> Self {
        use Relation::*;
        RationalLp {
            variables: ["epsilon", "c3", "c4", "tau"].map(String::from).to_vec(),
            objective: 0,
            constraints: vec![
                // delta2 = c2 - c3 >= delta3 = c3 - c4
                row([0, 2, -1, 0], Le, 1, "delta2_ge_delta3"),
                // delta3 >= delta4 = c4
                row([0, 1, -2, 0], Ge, 0, "delta3_ge_delta4"),
                row([0, 0, 1, 0], Ge, 0, "c4_nonneg"),
                row([0, 0, 0, 1], Ge, 0, "tau_nonneg"),
                row([0, 2, 0, 1], Le, 3, "planar"),
                row([1, 4, 0, 0], Le, 1, "three_regular"),
                row([1, 0, -5, 0], Le, 0, "degree_five"),
                row([1, -2, 4, 0], Le, 0, "mixed_a"),
                row([1, 4, 1, 1], Le, 3, "mixed_b"),
                row([1, -4, 5, -1], Le, -1, "four_regular"),
            ],
        }
    }

    /// The known optimum of [`RationalLp::planar_analysis`].
    pub fn planar_reference_assignment() -> Assignment {
        [
            ("epsilon", r(5, 23)),
            ("c3", r(9, 46)),
            ("c4", r(1, 23)),
            ("tau", r(15, 23)),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
    }

    /// `maximize x subject to x <= 1`.
    pub fn trivial() -> Self {
        RationalLp {
            variables: vec!["x".into()],
            objective: 0,
            constraints: vec![Constraint {
                name: "x_le_1".into(),
                coeffs: vec![Rational::one()],
                rel: Relation::Le,
                rhs: Rational::one(),
            }],
        }
    }

    pub fn constraint_names(&self) -> impl Iterator<Item = &str> {
        self.constraints.iter().map(|c| c.name.as_str())
    }

    pub fn without(&self, name: &str) -> Result<Self, LpError> {
        let mut out = self.clone();
        let before = out.constraints.len();
        out.constraints.retain(|c| c.name != name);
        if out.constraints.len() == before {
            return Err(LpError::UnknownConstraint(name.to_string()));
        }
        Ok(out)
    }

    pub fn set_objective(&mut self, var: &str) -> Result<(), LpError> {
        self.objective = self
            .variables
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| LpError::UnknownVariable(var.to_string()))?;
        Ok(())
    }

    fn validate(&self) -> Result<(), LpError> {
        for c in &self.constraints {
            if c.coeffs.len() != self.variables.len() {
                return Err(LpError::Arity(c.name.clone()));
            }
        }
        Ok(())
    }

    pub fn to_vector(&self, a: &Assignment) -> Result<Vec<Rational>, LpError> {
        self.variables
            .iter()
            .map(|v| {
                a.get(v)
                    .cloned()
                    .ok_or_else(|| LpError::MissingVariable(v.clone()))
            })
            .collect()
    }

    pub fn to_assignment(&self, x: &[Rational]) -> Assignment {
        self.variables
            .iter()
            .cloned()
            .zip(x.iter().cloned())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlackEntry {
    pub name: String,
    pub slack: Rational,
    pub tight: bool,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlackReport {
    pub feasible: bool,
    pub entries: Vec<SlackEntry>,
}

impl SlackReport {
    pub fn entry(&self, name: &str) -> Option<&SlackEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn violated(&self) -> impl Iterator<Item = &SlackEntry> {
        self.entries.iter().filter(|e| !e.satisfied)
    }

    pub fn tight(&self) -> impl Iterator<Item = &SlackEntry> {
        self.entries.iter().filter(|e| e.tight)
    }
}

pub fn check_feasible(lp: &RationalLp, assignment: &Assignment) -> Result<SlackReport, LpError> {
    lp.validate()?;
    let x = lp.to_vector(assignment)?;
    Ok(slack_report(lp, &x))
}

fn slack_report(lp: &RationalLp, x: &[Rational]) -> SlackReport {
    let entries: Vec<SlackEntry> = lp
        .constraints
        .iter()
        .map(|c| {
            let slack = c.slack(x);
            SlackEntry {
                name: c.name.clone(),
                tight: slack.is_zero(),
                satisfied: !slack.is_negative(),
                slack,
            }
        })
        .collect();
    SlackReport {
        feasible: entries.iter().all(|e| e.satisfied),
        entries,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LpSolution {
    pub value: Rational,
    pub assignment: Assignment,
    /// Names of the constraints tight at the optimum.
    pub tight: Vec<String>,
    /// Number of distinct basic feasible solutions examined.
    pub vertices: usize,
}

/// Solves the square system `rows · x = rhs`; `None` when singular.
fn solve_square(rows: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = rows.len();
    let mut a: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in &mut a[col][col..=n] {
            *x = &*x * &inv;
        }
        let pivot = a[col].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row[col..=n].iter_mut().zip(&pivot[col..=n]) {
                    *x -= &(&f * p);
                }
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

fn rank(rows: &[Vec<Rational>], width: usize) -> usize {
    let mut a = rows.to_vec();
    let mut rank = 0;
    for col in 0..width {
        let Some(piv) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = a[rank][col].recip();
        let pivot = a[rank].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let f = &row[col] * &inv;
                for (x, p) in row[col..width].iter_mut().zip(&pivot[col..width]) {
                    *x -= &(&f * p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Calls `f` with every `k`-subset of `0..n` in lexicographic order.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] < i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All distinct basic feasible solutions of `a·x <= b`, sorted.
fn basic_feasible(a: &[Vec<Rational>], b: &[Rational], width: usize) -> Vec<Vec<Rational>> {
    let mut found = Vec::new();
    for_each_subset(a.len(), width, |sub| {
        let rows: Vec<Vec<Rational>> = sub.iter().map(|&i| a[i].clone()).collect();
        let rhs: Vec<Rational> = sub.iter().map(|&i| b[i].clone()).collect();
        if let Some(x) = solve_square(&rows, &rhs) {
            let ok = a.iter().zip(b).all(|(row, bi)| {
                let lhs: Rational = row.iter().zip(&x).map(|(p, q)| p * q).sum();
                lhs <= *bi
            });
            if ok {
                found.push(x);
            }
        }
    });
    found.sort();
    found.dedup();
    found
}

fn le_form(lp: &RationalLp) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    lp.constraints.iter().map(Constraint::as_le).unzip()
}

/// Every basic feasible solution of the LP, sorted lexicographically.
pub fn enumerate_basic_feasible(lp: &RationalLp) -> Result<Vec<Assignment>, LpError> {
    lp.validate()?;
    let (a, b) = le_form(lp);
    let n = lp.variables.len();
    if rank(&a, n) < n {
        return Err(LpError::NotPointed);
    }
    Ok(basic_feasible(&a, &b, n)
        .iter()
        .map(|x| lp.to_assignment(x))
        .collect())
}

/// Maximizes the objective by exhausting basic feasible solutions. Among
/// optimal vertices the lexicographically smallest assignment (in variable
/// order) is returned.
pub fn solve(lp: &RationalLp) -> Result<LpSolution, LpError> {
    lp.validate()?;
    let n = lp.variables.len();
    let (a, b) = le_form(lp);
    if rank(&a, n) < n {
        return Err(LpError::NotPointed);
    }
    let vertices = basic_feasible(&a, &b, n);
    if vertices.is_empty() {
        // a pointed, non-empty polyhedron always has a vertex
        return Err(LpError::Infeasible);
    }

    // Unbounded iff some direction d with a·d <= 0 raises the objective.
    // Boxing d to [-1, 1] keeps this auxiliary problem pointed and bounded.
    let mut da = a.clone();
    let mut db = vec![Rational::zero(); a.len()];
    for i in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[i] = Rational::one();
        da.push(e.clone());
        db.push(Rational::one());
        e[i] = -Rational::one();
        da.push(e);
        db.push(Rational::one());
    }
    if basic_feasible(&da, &db, n)
        .iter()
        .any(|d| d[lp.objective] > Rational::zero())
    {
        return Err(LpError::Unbounded);
    }

    let best = vertices
        .iter()
        .map(|x| &x[lp.objective])
        .max()
        .expect("non-empty")
        .clone();
    // vertices are sorted, so the first maximizer is the smallest
    let x = vertices
        .iter()
        .find(|x| x[lp.objective] == best)
        .expect("maximizer exists");
    let report = slack_report(lp, x);
    Ok(LpSolution {
        value: best,
        assignment: lp.to_assignment(x),
        tight: report.tight().map(|e| e.name.clone()).collect(),
        vertices: vertices.len(),
    })
}
