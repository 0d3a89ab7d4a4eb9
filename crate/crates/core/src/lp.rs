//! Dense two-phase primal simplex.
//!
//! Problems are taken in the form
//!
//! ```text
//! minimize    c · v
//! subject to  A v ≤ u
//!             E v = d
//!             v ≥ 0
//! ```
//!
//! Pivoting follows Bland's rule (lowest-index entering column, ties in the
//! ratio test broken by lowest basic index), so degenerate problems cannot
//! cycle in exact arithmetic. Sizes are expected to stay in the low
//! hundreds of columns.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest pivot magnitude accepted.
pub const PIVOT_TOL: f64 = 1e-9;
/// Reduced costs above `-OPT_TOL` count as nonnegative.
const OPT_TOL: f64 = 1e-10;
/// Phase-one objective above this means infeasible.
const FEAS_TOL: f64 = 1e-8;
const MAX_ITERATIONS: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpStandardForm {
    pub cost: Vec<f64>,
    pub ineq_matrix: Vec<Vec<f64>>,
    pub ineq_rhs: Vec<f64>,
    pub eq_matrix: Vec<Vec<f64>>,
    pub eq_rhs: Vec<f64>,
}

impl LpStandardForm {
    pub fn new(num_vars: usize) -> Self {
        LpStandardForm {
            cost: vec![0.0; num_vars],
            ineq_matrix: Vec::new(),
            ineq_rhs: Vec::new(),
            eq_matrix: Vec::new(),
            eq_rhs: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.cost.len()
    }

    pub fn num_ineq(&self) -> usize {
        self.ineq_rhs.len()
    }

    pub fn num_eq(&self) -> usize {
        self.eq_rhs.len()
    }

    pub fn push_ineq(&mut self, row: Vec<f64>, rhs: f64) {
        self.ineq_matrix.push(row);
        self.ineq_rhs.push(rhs);
    }

    pub fn push_eq(&mut self, row: Vec<f64>, rhs: f64) {
        self.eq_matrix.push(row);
        self.eq_rhs.push(rhs);
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.ineq_matrix.len() != self.ineq_rhs.len() || self.eq_matrix.len() != self.eq_rhs.len() {
            return Err(Error::MalformedLp("row count and right-hand side length differ".into()));
        }
        let rows = self.ineq_matrix.iter().chain(&self.eq_matrix);
        if let Some(r) = rows.clone().find(|r| r.len() != n) {
            return Err(Error::MalformedLp(format!("row of length {} for {n} variables", r.len())));
        }
        let all = rows
            .flatten()
            .chain(&self.cost)
            .chain(&self.ineq_rhs)
            .chain(&self.eq_rhs);
        if all.into_iter().any(|x| !x.is_finite()) {
            return Err(Error::MalformedLp("non-finite coefficient".into()));
        }
        Ok(())
    }

    /// Largest violation of `A v ≤ u`, `E v = d`, `v ≥ 0` at `v`.
    pub fn max_violation(&self, v: &[f64]) -> f64 {
        let dot = |row: &[f64]| row.iter().zip(v).map(|(a, x)| a * x).sum::<f64>();
        let ineq = self
            .ineq_matrix
            .iter()
            .zip(&self.ineq_rhs)
            .map(|(r, u)| (dot(r) - u).max(0.0));
        let eq = self.eq_matrix.iter().zip(&self.eq_rhs).map(|(r, d)| (dot(r) - d).abs());
        let bounds = v.iter().map(|x| (-x).max(0.0));
        ineq.chain(eq).chain(bounds).fold(0.0, f64::max)
    }

    pub fn objective(&self, v: &[f64]) -> f64 {
        self.cost.iter().zip(v).map(|(c, x)| c * x).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    NumericalFailure,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub values: Vec<f64>,
    pub cost: f64,
    pub status: LpStatus,
    pub iterations: usize,
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    /// Reduced costs, with `-z` in the last slot.
    obj: Vec<f64>,
    basis: Vec<usize>,
    num_cols: usize,
    iterations: usize,
}

enum Step {
    Optimal,
    Unbounded,
    Stalled,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.rows[i][self.num_cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let width = self.num_cols + 1;
        let p = self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            *x /= p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for j in 0..width {
                    row[j] -= f * pivot_row[j];
                }
                row[c] = 0.0;
            }
        }
        let f = self.obj[c];
        if f != 0.0 {
            for (o, &v) in self.obj.iter_mut().zip(&pivot_row[..width]) {
                *o -= f * v;
            }
            self.obj[c] = 0.0;
        }
        for row in self.rows.iter_mut() {
            let rhs = &mut row[self.num_cols];
            if *rhs < 0.0 && *rhs > -1e-12 {
                *rhs = 0.0;
            }
        }
        self.basis[r] = c;
        self.iterations += 1;
    }

    fn set_objective(&mut self, cost: &[f64]) {
        let width = self.num_cols + 1;
        let mut obj = vec![0.0; width];
        obj[..cost.len()].copy_from_slice(cost);
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = cost.get(b).copied().unwrap_or(0.0);
            if cb != 0.0 {
                for (o, &v) in obj.iter_mut().zip(&self.rows[i][..width]) {
                    *o -= cb * v;
                }
            }
        }
        for &b in &self.basis {
            obj[b] = 0.0;
        }
        self.obj = obj;
    }

    fn run(&mut self, allowed: usize) -> Step {
        loop {
            if self.iterations >= MAX_ITERATIONS {
                return Step::Stalled;
            }
            let Some(enter) = (0..allowed).find(|&j| self.obj[j] < -OPT_TOL) else {
                return Step::Optimal;
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows.len() {
                let a = self.rows[i][enter];
                if a <= PIVOT_TOL {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((best, best_ratio)) => {
                        let tie = (ratio - best_ratio).abs() <= 1e-12 * best_ratio.abs().max(1.0);
                        if ratio < best_ratio && !tie || tie && self.basis[i] < self.basis[best] {
                            Some((i, ratio))
                        } else {
                            Some((best, best_ratio))
                        }
                    }
                };
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return Step::Unbounded,
            }
        }
    }
}

/// Solve `lp`. Errors only on malformed input; infeasibility and
/// unboundedness are reported through [`LpStatus`].
pub fn lp_solve(lp: &LpStandardForm) -> Result<LpSolution> {
    lp.validate()?;
    let nv = lp.num_vars();
    let ns = lp.num_ineq();
    let m = ns + lp.num_eq();

    // one artificial per row whose slack cannot start basic
    let needs_artificial: Vec<bool> = lp
        .ineq_rhs
        .iter()
        .map(|&u| u < 0.0)
        .chain(std::iter::repeat_n(true, lp.num_eq()))
        .collect();
    let na = needs_artificial.iter().filter(|&&b| b).count();
    let num_cols = nv + ns + na;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_art = nv + ns;
    let row_sources = lp
        .ineq_matrix
        .iter()
        .zip(&lp.ineq_rhs)
        .chain(lp.eq_matrix.iter().zip(&lp.eq_rhs));
    for (i, (coeffs, &rhs)) in row_sources.enumerate() {
        let mut row = vec![0.0; num_cols + 1];
        row[..nv].copy_from_slice(coeffs);
        if i < ns {
            row[nv + i] = 1.0;
        }
        row[num_cols] = rhs;
        if rhs < 0.0 {
            for x in row.iter_mut() {
                *x = -*x;
            }
        }
        if needs_artificial[i] {
            row[next_art] = 1.0;
            basis.push(next_art);
            next_art += 1;
        } else {
            basis.push(nv + i);
        }
        rows.push(row);
    }

    let mut tab = Tableau {
        rows,
        obj: Vec::new(),
        basis,
        num_cols,
        iterations: 0,
    };

    if na > 0 {
        let mut phase1 = vec![0.0; num_cols];
        for c in phase1.iter_mut().skip(nv + ns) {
            *c = 1.0;
        }
        tab.set_objective(&phase1);
        match tab.run(num_cols) {
            Step::Optimal => {}
            Step::Unbounded | Step::Stalled => return Ok(failure(nv, LpStatus::NumericalFailure, tab.iterations)),
        }
        let infeasibility = -tab.obj[num_cols];
        if infeasibility > FEAS_TOL {
            return Ok(failure(nv, LpStatus::Infeasible, tab.iterations));
        }
        drive_out_artificials(&mut tab, nv + ns);
    }

    tab.set_objective(&lp.cost);
    let status = match tab.run(nv + ns) {
        Step::Optimal => LpStatus::Optimal,
        Step::Unbounded => LpStatus::Unbounded,
        Step::Stalled => LpStatus::NumericalFailure,
    };
    if status != LpStatus::Optimal {
        return Ok(failure(nv, status, tab.iterations));
    }
    let mut values = vec![0.0; nv];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < nv {
            values[b] = tab.rhs(i).max(0.0);
        }
    }
    Ok(LpSolution {
        cost: lp.objective(&values),
        values,
        status,
        iterations: tab.iterations,
    })
}

fn failure(nv: usize, status: LpStatus, iterations: usize) -> LpSolution {
    LpSolution {
        values: vec![0.0; nv],
        cost: f64::NAN,
        status,
        iterations,
    }
}

/// After phase one, pivot zero-level artificials out of the basis; rows
/// where that is impossible are redundant and get dropped.
fn drive_out_artificials(tab: &mut Tableau, first_artificial: usize) {
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] < first_artificial {
            i += 1;
            continue;
        }
        let col = (0..first_artificial).find(|&j| tab.rows[i][j].abs() > PIVOT_TOL);
        match col {
            Some(j) => {
                tab.pivot(i, j);
                i += 1;
            }
            None => {
                tab.rows.remove(i);
                tab.basis.remove(i);
            }
        }
    }
    // artificial columns must never re-enter
    for row in tab.rows.iter_mut() {
        for x in row[first_artificial..tab.num_cols].iter_mut() {
            *x = 0.0;
        }
    }
}
