//! Dense two-phase simplex with Bland's anti-cycling rule.
//!
//! Problems are small (the extremal LPs here have at most a few dozen
//! variables), so the full tableau is kept. After the optimal basis is found
//! the basic solution is recomputed from the original data by Gaussian
//! elimination, which removes the drift accumulated over the pivots.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-11;
const MAX_PIVOTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpConstraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

/// `maximize objective · x` subject to the rows and per-variable bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub constraints: Vec<LpConstraint>,
    /// `(lower, upper)`; either side may be infinite.
    pub bounds: Vec<(f64, f64)>,
}

impl LpProblem {
    /// A problem with every variable in `[0, ∞)`.
    pub fn new(objective: Vec<f64>) -> Self {
        let n = objective.len();
        Self {
            objective,
            constraints: Vec::new(),
            bounds: vec![(0.0, f64::INFINITY); n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn with_bounds(mut self, bounds: Vec<(f64, f64)>) -> Self {
        self.bounds = bounds;
        self
    }

    pub fn constrain(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) {
        self.constraints.push(LpConstraint {
            coeffs,
            relation,
            rhs,
        });
    }

    /// Largest violation of a row or bound at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for c in &self.constraints {
            let lhs: f64 = c.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
            let v = match c.relation {
                Relation::Le => lhs - c.rhs,
                Relation::Ge => c.rhs - lhs,
                Relation::Eq => (lhs - c.rhs).abs(),
            };
            worst = worst.max(v);
        }
        for (xi, &(lo, hi)) in x.iter().zip(&self.bounds) {
            worst = worst.max(lo - xi).max(xi - hi);
        }
        worst
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: f64,
    pub x: Vec<f64>,
    /// Indices of rows that hold with equality at `x`.
    pub binding: Vec<usize>,
    pub max_violation: f64,
    pub pivots: usize,
}

impl LpSolution {
    fn without_point(status: LpStatus, n: usize, pivots: usize) -> Self {
        Self {
            status,
            value: f64::NAN,
            x: vec![f64::NAN; n],
            binding: Vec::new(),
            max_violation: f64::NAN,
            pivots,
        }
    }
}

// How an original variable maps onto nonnegative standard-form columns.
#[derive(Debug, Clone, Copy)]
enum VarMap {
    Shifted { col: usize, lower: f64 },
    Reflected { col: usize, upper: f64 },
    Split { pos: usize, neg: usize },
}

struct Tableau {
    rows: usize,
    cols: usize,
    // rows × (cols + 1); last column is the right-hand side
    t: Vec<f64>,
    obj: Vec<f64>,
    basis: Vec<usize>,
    pivots: usize,
}

impl Tableau {
    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.t[i * (self.cols + 1) + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.cols)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let w = self.cols + 1;
        let p = self.t[row * w + col];
        for j in 0..w {
            self.t[row * w + j] /= p;
        }
        self.t[row * w + col] = 1.0;
        let pivot_row: Vec<f64> = self.t[row * w..(row + 1) * w].to_vec();
        for i in 0..self.rows {
            if i == row {
                continue;
            }
            let f = self.t[i * w + col];
            if f != 0.0 {
                for (dst, src) in self.t[i * w..(i + 1) * w].iter_mut().zip(&pivot_row) {
                    *dst -= f * src;
                }
                self.t[i * w + col] = 0.0;
            }
        }
        let f = self.obj[col];
        if f != 0.0 {
            for (dst, src) in self.obj.iter_mut().zip(&pivot_row) {
                *dst -= f * src;
            }
            self.obj[col] = 0.0;
        }
        self.basis[row] = col;
        self.pivots += 1;
    }

    // obj holds reduced costs c_j - c_B B^{-1} A_j and, in the last slot,
    // minus the current objective value.
    fn set_objective(&mut self, costs: &[f64]) {
        let w = self.cols + 1;
        let mut obj = vec![0.0; w];
        obj[..self.cols].copy_from_slice(costs);
        for i in 0..self.rows {
            let cb = costs[self.basis[i]];
            if cb != 0.0 {
                for j in 0..w {
                    obj[j] -= cb * self.t[i * w + j];
                }
            }
        }
        self.obj = obj;
    }

    /// Bland's rule iterations; `Ok(false)` means unbounded.
    fn optimize(&mut self, allowed: &[bool]) -> Result<bool> {
        loop {
            if self.pivots > MAX_PIVOTS {
                return Err(Error::LpStatus("cycling (pivot limit reached)"));
            }
            let Some(col) = (0..self.cols).find(|&j| allowed[j] && self.obj[j] > PIVOT_EPS) else {
                return Ok(true);
            };
            let mut best: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                let a = self.at(i, col);
                if a <= PIVOT_EPS {
                    continue;
                }
                let ratio = self.rhs(i).max(0.0) / a;
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        let tie = (ratio - br).abs() <= 1e-12 * (1.0 + br.abs());
                        if ratio < br && !tie || tie && self.basis[i] < self.basis[bi] {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            match best {
                None => return Ok(false),
                Some((row, _)) => self.pivot(row, col),
            }
        }
    }
}

/// Solves the LP; infeasible and unbounded problems are reported through
/// [`LpStatus`], numerical breakdown as an error.
pub fn lp_solve(problem: &LpProblem) -> Result<LpSolution> {
    let n = problem.num_vars();
    if problem.bounds.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: problem.bounds.len(),
        });
    }
    if let Some(c) = problem.constraints.iter().find(|c| c.coeffs.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            got: c.coeffs.len(),
        });
    }

    // Map variables onto nonnegative columns; finite upper bounds become rows.
    let mut maps = Vec::with_capacity(n);
    let mut structural = 0;
    let mut bound_rows: Vec<(usize, f64)> = Vec::new();
    for &(lo, hi) in &problem.bounds {
        if lo > hi {
            return Ok(LpSolution::without_point(LpStatus::Infeasible, n, 0));
        }
        if lo.is_finite() {
            maps.push(VarMap::Shifted {
                col: structural,
                lower: lo,
            });
            if hi.is_finite() {
                bound_rows.push((structural, hi - lo));
            }
            structural += 1;
        } else if hi.is_finite() {
            maps.push(VarMap::Reflected {
                col: structural,
                upper: hi,
            });
            structural += 1;
        } else {
            maps.push(VarMap::Split {
                pos: structural,
                neg: structural + 1,
            });
            structural += 2;
        }
    }

    // Standard-form rows over the structural columns.
    let mut std_rows: Vec<(Vec<f64>, Relation, f64)> = Vec::new();
    for c in &problem.constraints {
        let mut row = vec![0.0; structural];
        let mut rhs = c.rhs;
        for (i, &a) in c.coeffs.iter().enumerate() {
            match maps[i] {
                VarMap::Shifted { col, lower } => {
                    row[col] += a;
                    rhs -= a * lower;
                }
                VarMap::Reflected { col, upper } => {
                    row[col] -= a;
                    rhs -= a * upper;
                }
                VarMap::Split { pos, neg } => {
                    row[pos] += a;
                    row[neg] -= a;
                }
            }
        }
        std_rows.push((row, c.relation, rhs));
    }
    for &(col, cap) in &bound_rows {
        let mut row = vec![0.0; structural];
        row[col] = 1.0;
        std_rows.push((row, Relation::Le, cap));
    }
    for (row, rel, rhs) in std_rows.iter_mut() {
        if *rhs < 0.0 {
            row.iter_mut().for_each(|a| *a = -*a);
            *rhs = -*rhs;
            *rel = match rel {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }

    let m = std_rows.len();
    let slack_count = std_rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let art_count = std_rows.iter().filter(|r| r.1 != Relation::Le).count();
    let cols = structural + slack_count + art_count;
    let w = cols + 1;
    let mut t = vec![0.0; m * w];
    let mut basis = vec![0; m];
    let mut is_art = vec![false; cols];
    let (mut next_slack, mut next_art) = (structural, structural + slack_count);
    // per row: (slack column and its sign, artificial column)
    let mut row_aux: Vec<(Option<(usize, f64)>, Option<usize>)> = Vec::with_capacity(m);
    for (i, (row, rel, rhs)) in std_rows.iter().enumerate() {
        t[i * w..i * w + structural].copy_from_slice(row);
        t[i * w + cols] = *rhs;
        match rel {
            Relation::Le => {
                t[i * w + next_slack] = 1.0;
                basis[i] = next_slack;
                row_aux.push((Some((next_slack, 1.0)), None));
                next_slack += 1;
            }
            Relation::Ge => {
                t[i * w + next_slack] = -1.0;
                t[i * w + next_art] = 1.0;
                is_art[next_art] = true;
                basis[i] = next_art;
                row_aux.push((Some((next_slack, -1.0)), Some(next_art)));
                next_slack += 1;
                next_art += 1;
            }
            Relation::Eq => {
                t[i * w + next_art] = 1.0;
                is_art[next_art] = true;
                basis[i] = next_art;
                row_aux.push((None, Some(next_art)));
                next_art += 1;
            }
        }
    }
    let mut tab = Tableau {
        rows: m,
        cols,
        t,
        obj: vec![0.0; w],
        basis,
        pivots: 0,
    };

    let all = vec![true; cols];
    if art_count > 0 {
        let phase1: Vec<f64> = (0..cols)
            .map(|j| if is_art[j] { -1.0 } else { 0.0 })
            .collect();
        tab.set_objective(&phase1);
        tab.optimize(&all)?;
        let infeasibility = tab.obj[cols];
        let scale = 1.0 + std_rows.iter().map(|r| r.2.abs()).fold(0.0, f64::max);
        if infeasibility > 1e-9 * scale {
            return Ok(LpSolution::without_point(
                LpStatus::Infeasible,
                n,
                tab.pivots,
            ));
        }
        // Drive zero-level artificials out; rows where that fails are redundant.
        let mut redundant = Vec::new();
        for i in 0..m {
            if !is_art[tab.basis[i]] {
                continue;
            }
            match (0..cols).find(|&j| !is_art[j] && tab.at(i, j).abs() > 1e-9) {
                Some(j) => tab.pivot(i, j),
                None => redundant.push(i),
            }
        }
        if !redundant.is_empty() {
            let keep: Vec<usize> = (0..m).filter(|i| !redundant.contains(i)).collect();
            let mut t2 = Vec::with_capacity(keep.len() * w);
            for &i in &keep {
                t2.extend_from_slice(&tab.t[i * w..(i + 1) * w]);
            }
            tab.basis = keep.iter().map(|&i| tab.basis[i]).collect();
            tab.t = t2;
            tab.rows = keep.len();
            std_rows = keep.iter().map(|&i| std_rows[i].clone()).collect();
            row_aux = keep.iter().map(|&i| row_aux[i]).collect();
        }
    }

    let mut costs = vec![0.0; cols];
    for (i, &c) in problem.objective.iter().enumerate() {
        match maps[i] {
            VarMap::Shifted { col, .. } => costs[col] += c,
            VarMap::Reflected { col, .. } => costs[col] -= c,
            VarMap::Split { pos, neg } => {
                costs[pos] += c;
                costs[neg] -= c;
            }
        }
    }
    tab.set_objective(&costs);
    let allowed: Vec<bool> = is_art.iter().map(|a| !a).collect();
    if !tab.optimize(&allowed)? {
        return Ok(LpSolution::without_point(
            LpStatus::Unbounded,
            n,
            tab.pivots,
        ));
    }

    let xs = refactorize(&tab, &std_rows, &row_aux, structural, cols)?;

    let mut x = vec![0.0; n];
    for (i, map) in maps.iter().enumerate() {
        x[i] = match *map {
            VarMap::Shifted { col, lower } => lower + xs[col],
            VarMap::Reflected { col, upper } => upper - xs[col],
            VarMap::Split { pos, neg } => xs[pos] - xs[neg],
        };
    }
    let value = problem.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    let binding = problem
        .constraints
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            let lhs: f64 = c.coeffs.iter().zip(&x).map(|(a, b)| a * b).sum();
            (lhs - c.rhs).abs() <= 1e-9 * (1.0 + c.rhs.abs())
        })
        .map(|(i, _)| i)
        .collect();
    Ok(LpSolution {
        status: LpStatus::Optimal,
        value,
        max_violation: problem.max_violation(&x),
        x,
        binding,
        pivots: tab.pivots,
    })
}

// Recomputes the basic solution from the original standard-form data.
fn refactorize(
    tab: &Tableau,
    std_rows: &[(Vec<f64>, Relation, f64)],
    row_aux: &[(Option<(usize, f64)>, Option<usize>)],
    structural: usize,
    cols: usize,
) -> Result<Vec<f64>> {
    let r = tab.rows;
    let entry = |i: usize, j: usize| -> f64 {
        if j < structural {
            return std_rows[i].0[j];
        }
        match row_aux[i] {
            (Some((s, sign)), _) if s == j => sign,
            (_, Some(a)) if a == j => 1.0,
            _ => 0.0,
        }
    };
    // augmented [B | b]
    let mut aug = vec![0.0; r * (r + 1)];
    for i in 0..r {
        for (k, &col) in tab.basis.iter().enumerate() {
            aug[i * (r + 1) + k] = entry(i, col);
        }
        aug[i * (r + 1) + r] = std_rows[i].2;
    }
    let scale = aug.iter().fold(0.0f64, |a, b| a.max(b.abs())).max(1.0);
    for k in 0..r {
        let (p, pv) = (k..r)
            .map(|i| (i, aug[i * (r + 1) + k].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty");
        if pv <= 1e-12 * scale {
            return Err(Error::SingularBasis);
        }
        if p != k {
            for j in 0..=r {
                aug.swap(k * (r + 1) + j, p * (r + 1) + j);
            }
        }
        let d = aug[k * (r + 1) + k];
        for i in k + 1..r {
            let f = aug[i * (r + 1) + k] / d;
            if f != 0.0 {
                for j in k..=r {
                    aug[i * (r + 1) + j] -= f * aug[k * (r + 1) + j];
                }
            }
        }
    }
    let mut xb = vec![0.0; r];
    for k in (0..r).rev() {
        let mut acc = aug[k * (r + 1) + r];
        for j in k + 1..r {
            acc -= aug[k * (r + 1) + j] * xb[j];
        }
        xb[k] = acc / aug[k * (r + 1) + k];
    }
    let mut xs = vec![0.0; cols];
    for (k, &col) in tab.basis.iter().enumerate() {
        // basic values are nonnegative up to rounding
        xs[col] = if xb[k] < 0.0 && xb[k] > -1e-9 {
            0.0
        } else {
            xb[k]
        };
    }
    Ok(xs)
}
