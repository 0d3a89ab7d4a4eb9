//! Sound design by constrained ℓ1 minimization.
//!
//! Given a target timbre `p` and a bound `b`, find a timbre `x` no brighter
//! than `b` that is as close as possible to `p`:
//!
//! ```text
//! minimize    ‖x − p‖₁            (ClosestToTarget)
//!          or ‖x − p‖₁ + ‖x − b‖₁  (BiObjective)
//! subject to  Hx ≤ Hb,  Σx = 1,  x ≥ 0
//! ```
//!
//! Absolute values are linearized with auxiliary variables `u ≥ ±(x − p)`
//! (and `w ≥ ±(x − b)`), and the result is handed to [`crate::lp`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{lp_solve, LpStandardForm, LpStatus};
use crate::order::Verdict;
use crate::timbre::{brightness_compare, infimum, l1_distance, suffix_profile, TimbralVector};

/// Slack added to the first-stage optimum when it becomes a budget
/// constraint in [`solve_closest_to_bound`].
pub const STAGE_TWO_SLACK: f64 = 1e-9;

/// Tolerance for the `x ⪯ p` claim check.
pub const CLAIM_TOL: f64 = 1e-6;

/// Gap above which a search instance counts as a counterexample.
pub const COUNTEREXAMPLE_GAP: f64 = 1e-4;

/// Largest harmonic count accepted by [`oracle_solve`].
pub const ORACLE_MAX_N: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Minimize `‖x − p‖₁`.
    ClosestToTarget,
    /// Minimize `‖x − p‖₁ + ‖x − b‖₁`.
    BiObjective,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignProblem {
    target: TimbralVector,
    bound: TimbralVector,
    variant: Variant,
}

impl DesignProblem {
    pub fn new(target: TimbralVector, bound: TimbralVector, variant: Variant) -> Result<Self> {
        if target.n() != bound.n() {
            return Err(Error::SizeMismatch {
                expected: target.n(),
                found: bound.n(),
            });
        }
        Ok(DesignProblem {
            target,
            bound,
            variant,
        })
    }

    pub fn target(&self) -> &TimbralVector {
        &self.target
    }

    pub fn bound(&self) -> &TimbralVector {
        &self.bound
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn n(&self) -> usize {
        self.target.n()
    }

    /// Design objective at an arbitrary point, in raw ℓ1 units.
    pub fn objective_at(&self, x: &[f64]) -> f64 {
        let to_target = l1_distance(x, self.target.power());
        match self.variant {
            Variant::ClosestToTarget => to_target,
            Variant::BiObjective => to_target + l1_distance(x, self.bound.power()),
        }
    }

    /// Largest violation of the brightness and simplex constraints at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let hb = suffix_profile(&self.bound);
        let mut worst = (x.iter().sum::<f64>() - 1.0).abs();
        let mut acc = 0.0;
        for (xi, bound) in x.iter().rev().zip(&hb.0) {
            acc += xi;
            worst = worst.max(acc - bound).max(-xi);
        }
        worst
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverStatus {
    Optimal,
    Infeasible,
    NumericalFailure,
}

impl From<LpStatus> for SolverStatus {
    fn from(s: LpStatus) -> Self {
        match s {
            LpStatus::Optimal => SolverStatus::Optimal,
            LpStatus::Infeasible => SolverStatus::Infeasible,
            // design LPs have a nonnegative objective, so unbounded means trouble
            LpStatus::Unbounded | LpStatus::NumericalFailure => SolverStatus::NumericalFailure,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignSolution {
    /// Designed timbre. All zeros unless `status` is `Optimal`.
    pub x: Vec<f64>,
    /// Design objective at `x`, raw ℓ1 units.
    pub objective: f64,
    pub status: SolverStatus,
}

impl DesignSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == SolverStatus::Optimal
    }

    /// Total variational distance implied by the objective.
    pub fn tv_distance(&self) -> f64 {
        self.objective / 2.0
    }

    pub fn timbre(&self) -> Result<TimbralVector> {
        if !self.is_optimal() {
            return Err(Error::InvalidArgument(format!("solution status is {:?}", self.status)));
        }
        TimbralVector::new(self.x.clone())
    }

    fn failed(n: usize, status: SolverStatus) -> Self {
        DesignSolution {
            x: vec![0.0; n],
            objective: f64::NAN,
            status,
        }
    }
}

/// Rows `Σ_{j ≥ n−i} x_j ≤ (Hb)_i`, each padded to `width` columns.
fn push_brightness_rows(lp: &mut LpStandardForm, bound: &TimbralVector, width: usize) {
    let n = bound.n();
    for (i, &cap) in suffix_profile(bound).0.iter().enumerate() {
        let mut row = vec![0.0; width];
        for c in row[n - 1 - i..n].iter_mut() {
            *c = 1.0;
        }
        lp.push_ineq(row, cap);
    }
}

/// `aux_k ≥ |x_k − centre_k|` as two rows per harmonic.
fn push_abs_rows(lp: &mut LpStandardForm, centre: &[f64], aux_offset: usize, width: usize) {
    let n = centre.len();
    for (k, &c) in centre.iter().enumerate() {
        let mut up = vec![0.0; width];
        up[k] = 1.0;
        up[aux_offset + k] = -1.0;
        lp.push_ineq(up, c);
        let mut down = vec![0.0; width];
        down[k] = -1.0;
        down[aux_offset + k] = -1.0;
        lp.push_ineq(down, -c);
    }
    debug_assert!(aux_offset + n <= width);
}

fn push_simplex_row(lp: &mut LpStandardForm, n: usize, width: usize) {
    let mut row = vec![0.0; width];
    for c in row[..n].iter_mut() {
        *c = 1.0;
    }
    lp.push_eq(row, 1.0);
}

/// LP reformulation. Variables are `(x, u)` for `ClosestToTarget` and
/// `(x, u, w)` for `BiObjective`, all nonnegative.
pub fn to_lp(problem: &DesignProblem) -> LpStandardForm {
    let n = problem.n();
    let blocks = match problem.variant {
        Variant::ClosestToTarget => 2,
        Variant::BiObjective => 3,
    };
    let width = blocks * n;
    let mut lp = LpStandardForm::new(width);
    for c in lp.cost[n..].iter_mut() {
        *c = 1.0;
    }
    push_abs_rows(&mut lp, problem.target.power(), n, width);
    if problem.variant == Variant::BiObjective {
        push_abs_rows(&mut lp, problem.bound.power(), 2 * n, width);
    }
    push_brightness_rows(&mut lp, &problem.bound, width);
    push_simplex_row(&mut lp, n, width);
    lp
}

fn finish(problem: &DesignProblem, lp: &LpStandardForm) -> Result<DesignSolution> {
    let n = problem.n();
    let sol = lp_solve(lp)?;
    if sol.status != LpStatus::Optimal {
        return Ok(DesignSolution::failed(n, sol.status.into()));
    }
    let x = clean_simplex_point(&sol.values[..n]);
    Ok(DesignSolution {
        objective: problem.objective_at(&x),
        x,
        status: SolverStatus::Optimal,
    })
}

/// Zero out round-off negatives and renormalize.
fn clean_simplex_point(x: &[f64]) -> Vec<f64> {
    let clipped: Vec<f64> = x.iter().map(|v| v.max(0.0)).collect();
    let total: f64 = clipped.iter().sum();
    clipped.iter().map(|v| v / total).collect()
}

/// Solve the design problem as posed. With several optima, returns the
/// vertex the simplex reaches first.
pub fn solve_design(problem: &DesignProblem) -> Result<DesignSolution> {
    finish(problem, &to_lp(problem))
}

/// Among the optima of the `ClosestToTarget` problem, the one closest to
/// the bound. Solved in two stages: first the optimum `v*`, then
/// `minimize ‖x − b‖₁` subject to the original constraints and
/// `‖x − p‖₁ ≤ v* + STAGE_TWO_SLACK`.
pub fn solve_closest_to_bound(problem: &DesignProblem) -> Result<DesignSolution> {
    if problem.variant != Variant::ClosestToTarget {
        return Err(Error::InvalidArgument(
            "closest-to-bound refinement applies to the closest-to-target variant".into(),
        ));
    }
    let n = problem.n();
    let lp1 = to_lp(problem);
    let stage1 = lp_solve(&lp1)?;
    if stage1.status != LpStatus::Optimal {
        return Ok(DesignSolution::failed(n, stage1.status.into()));
    }

    // variables (x, u, w): u bounds |x − p|, w bounds |x − b|
    let width = 3 * n;
    let mut lp2 = LpStandardForm::new(width);
    for c in lp2.cost[2 * n..].iter_mut() {
        *c = 1.0;
    }
    push_abs_rows(&mut lp2, problem.target.power(), n, width);
    push_abs_rows(&mut lp2, problem.bound.power(), 2 * n, width);
    push_brightness_rows(&mut lp2, &problem.bound, width);
    let mut budget = vec![0.0; width];
    for c in budget[n..2 * n].iter_mut() {
        *c = 1.0;
    }
    lp2.push_ineq(budget, stage1.cost + STAGE_TWO_SLACK);
    push_simplex_row(&mut lp2, n, width);
    finish(problem, &lp2)
}

/// The optimum of the `ClosestToTarget` problem that keeps every overtone at
/// its target level unless the brightness bound is tight there; the
/// fundamental absorbs whatever power is left over.
///
/// Computed as the brightest point (largest `Σ_k (Hx)_k`) among timbres with
/// `Hx ≤ Hb` and `x_j ≤ p_j` for every overtone `j ≥ 2`. That set has a
/// greatest element in the brightness order, and it attains the same ℓ1
/// distance as [`solve_design`].
pub fn solve_tracking_target(problem: &DesignProblem) -> Result<DesignSolution> {
    if problem.variant != Variant::ClosestToTarget {
        return Err(Error::InvalidArgument(
            "target tracking applies to the closest-to-target variant".into(),
        ));
    }
    let n = problem.n();
    let mut lp = LpStandardForm::new(n);
    // Σ_k (Hx)_k = Σ_j j·x_j with 0-based j (the fundamental counts once in every row)
    for (j, c) in lp.cost.iter_mut().enumerate() {
        *c = -(j as f64);
    }
    push_brightness_rows(&mut lp, &problem.bound, n);
    for (j, &pj) in problem.target.power().iter().enumerate().skip(1) {
        let mut row = vec![0.0; n];
        row[j] = 1.0;
        lp.push_ineq(row, pj);
    }
    push_simplex_row(&mut lp, n, n);
    finish(problem, &lp)
}

/// Per-harmonic agreement with the "tight follows the bound, slack follows
/// the target" pattern.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrackingReport {
    /// `tight[j]`: the brightness row for harmonics `j+1..=n` is within
    /// `slack_tol` of the bound.
    pub tight: Vec<bool>,
    /// Harmonics (1-based) that are slack but where `x` differs from the target.
    pub slack_mismatches: Vec<usize>,
    /// Harmonics (1-based) that are tight but whose suffix power differs from the bound's.
    pub tight_mismatches: Vec<usize>,
}

impl TrackingReport {
    pub fn holds(&self) -> bool {
        self.slack_mismatches.is_empty() && self.tight_mismatches.is_empty()
    }
}

/// Check a design point against the tracking pattern: where the suffix
/// constraint starting at harmonic `j` is slack by more than `slack_tol`,
/// `x_j` must equal `p_j` within `slack_tol`.
pub fn tracking_report(problem: &DesignProblem, x: &[f64], slack_tol: f64) -> TrackingReport {
    let n = problem.n();
    let hb = suffix_profile(&problem.bound).0;
    let mut suffix = vec![0.0; n];
    let mut acc = 0.0;
    for j in (0..n).rev() {
        acc += x[j];
        suffix[j] = acc;
    }
    let mut tight = Vec::with_capacity(n);
    let mut slack_mismatches = Vec::new();
    let mut tight_mismatches = Vec::new();
    for j in 0..n {
        // suffix from harmonic j+1 covers the top n-j harmonics
        let cap = hb[n - 1 - j];
        let slack = cap - suffix[j];
        let is_tight = slack <= slack_tol;
        tight.push(is_tight);
        if is_tight {
            if slack.abs() > slack_tol {
                tight_mismatches.push(j + 1);
            }
        } else if (x[j] - problem.target.power()[j]).abs() > slack_tol {
            slack_mismatches.push(j + 1);
        }
    }
    TrackingReport {
        tight,
        slack_mismatches,
        tight_mismatches,
    }
}

/// Exhaustive search over the grid `{k · resolution}` on the simplex.
/// Independent of the LP path; meant for cross-checking small instances.
pub fn oracle_solve(problem: &DesignProblem, resolution: f64) -> Result<DesignSolution> {
    let n = problem.n();
    if n > ORACLE_MAX_N {
        return Err(Error::InvalidArgument(format!(
            "grid oracle supports n ≤ {ORACLE_MAX_N}, got {n}"
        )));
    }
    let steps_f = 1.0 / resolution;
    let steps = steps_f.round();
    if resolution.is_nan() || resolution <= 0.0 || (steps_f - steps).abs() > 1e-9 || steps > 1000.0 {
        return Err(Error::InvalidArgument(format!(
            "resolution {resolution} must be 1/m for an integer m ≤ 1000"
        )));
    }
    let steps = steps as usize;
    let cap: Vec<f64> = suffix_profile(&problem.bound).0;

    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut counts = vec![0usize; n];
    visit_compositions(steps, &mut counts, 0, &mut |counts| {
        let x: Vec<f64> = counts.iter().map(|&c| c as f64 / steps as f64).collect();
        let mut acc = 0.0;
        for (xi, c) in x.iter().rev().zip(&cap) {
            acc += xi;
            if acc > c + 1e-12 {
                return;
            }
        }
        let value = problem.objective_at(&x);
        if best.as_ref().is_none_or(|(v, _)| value < *v) {
            best = Some((value, x));
        }
    });
    Ok(match best {
        Some((objective, x)) => DesignSolution {
            x,
            objective,
            status: SolverStatus::Optimal,
        },
        None => DesignSolution::failed(n, SolverStatus::Infeasible),
    })
}

fn visit_compositions(remaining: usize, counts: &mut [usize], pos: usize, f: &mut impl FnMut(&[usize])) {
    if pos + 1 == counts.len() {
        counts[pos] = remaining;
        f(counts);
        return;
    }
    for c in 0..=remaining {
        counts[pos] = c;
        visit_compositions(remaining - c, counts, pos + 1, f);
    }
}

/// `x ⪯ p` (Less or Equal) for an optimal solution, at [`CLAIM_TOL`].
pub fn claim_check_x_leq_p(problem: &DesignProblem, solution: &DesignSolution) -> bool {
    let Ok(x) = solution.timbre() else {
        return false;
    };
    matches!(
        brightness_compare(&x, &problem.target, CLAIM_TOL),
        Ok(Verdict::Less | Verdict::Equal)
    )
}

/// Uniform sample from the probability simplex (normalized exponentials).
pub fn random_timbre<R: Rng + ?Sized>(rng: &mut R, n: usize) -> TimbralVector {
    let e: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let total: f64 = e.iter().sum();
    let mut p: Vec<f64> = e.iter().map(|v| v / total).collect();
    // push the rounding residue onto the largest entry
    let residue = 1.0 - p.iter().sum::<f64>();
    let imax = (0..n).max_by(|&a, &b| p[a].total_cmp(&p[b])).unwrap_or(0);
    p[imax] += residue;
    TimbralVector::new(p).expect("normalized exponentials lie on the simplex")
}

/// An instance where the infimum `b ∧ p` is not an optimum of the
/// closest-to-target problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Zero-based index of the trial that produced it.
    pub trial: usize,
    pub target: Vec<f64>,
    pub bound: Vec<f64>,
    pub infimum: Vec<f64>,
    /// `‖(b ∧ p) − p‖₁`.
    pub infimum_objective: f64,
    /// LP optimum of `‖x − p‖₁`.
    pub lp_objective: f64,
    pub lp_solution: Vec<f64>,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub trials_run: usize,
    /// Largest `‖(b ∧ p) − p‖₁ − v*` over the trials that ran.
    pub max_gap: f64,
    pub found: Option<Counterexample>,
}

/// Sample `(p, b)` pairs until `b ∧ p` misses the LP optimum by more than
/// [`COUNTEREXAMPLE_GAP`], or the trial budget runs out.
pub fn counterexample_search(n: usize, trials: usize, seed: u64) -> Result<SearchReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if n < 2 {
        return Err(Error::InvalidArgument("need at least two harmonics".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_gap = f64::NEG_INFINITY;
    for trial in 0..trials {
        let p = random_timbre(&mut rng, n);
        let b = random_timbre(&mut rng, n);
        let problem = DesignProblem::new(p.clone(), b.clone(), Variant::ClosestToTarget)?;
        let sol = solve_design(&problem)?;
        if !sol.is_optimal() {
            return Err(Error::InvalidArgument(format!(
                "trial {trial}: solver returned {:?}",
                sol.status
            )));
        }
        let z = infimum(&b, &p)?;
        let z_obj = problem.objective_at(z.power());
        let gap = z_obj - sol.objective;
        max_gap = max_gap.max(gap);
        if gap > COUNTEREXAMPLE_GAP {
            return Ok(SearchReport {
                n,
                trials,
                seed,
                trials_run: trial + 1,
                max_gap,
                found: Some(Counterexample {
                    trial,
                    target: p.power().to_vec(),
                    bound: b.power().to_vec(),
                    infimum: z.power().to_vec(),
                    infimum_objective: z_obj,
                    lp_objective: sol.objective,
                    lp_solution: sol.x,
                    gap,
                }),
            });
        }
    }
    Ok(SearchReport {
        n,
        trials,
        seed,
        trials_run: trials,
        max_gap,
        found: None,
    })
}
