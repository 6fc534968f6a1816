//! Lorenz-curve analytics: generalized Lorenz curves, dominance verdicts,
//! inequality indices, leximin comparison, quantile metrics, and the
//! empirical regret-bound checker.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Matrix, ProblemInstance, UtilityProfile};
use crate::objectives::{psi_prime, Welfare, WelfareParams};
use crate::solver::{solve, SolverConfig};
use crate::utility::utility_profile;

/// Default absolute tolerance on cumulative curve values. Frank-Wolfe
/// solutions carry O(gap) noise; exact float comparison would misclassify.
pub const DOMINANCE_TOL: f64 = 1e-9;

/// Generalized Lorenz curve: utilities sorted ascending, then cumulative sums.
pub fn lorenz_curve(u: &[f64]) -> Result<Vec<f64>> {
    if let Some(idx) = u.iter().position(|x| x.is_nan() || *x < 0.0) {
        return Err(Error::NegativeUtility {
            index: idx,
            value: u[idx],
        });
    }
    let mut sorted = u.to_vec();
    sorted.sort_unstable_by(|a, b| a.total_cmp(b));
    let mut acc = 0.0;
    for x in sorted.iter_mut() {
        acc += *x;
        *x = acc;
    }
    Ok(sorted)
}

/// Outcome of comparing `u` against `u_prime`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    /// `u` dominates pointwise within tolerance, with a clear margin somewhere.
    StrictLorenz,
    /// `u` is never clearly worse and somewhere ahead, but only within the
    /// tolerance band; too close to call strict.
    WeakLorenz,
    Equal,
    Incomparable,
}

impl Dominance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Dominance::StrictLorenz => "strict-lorenz",
            Dominance::WeakLorenz => "weak-lorenz",
            Dominance::Equal => "equal",
            Dominance::Incomparable => "incomparable",
        }
    }

    /// Non-strict dominance of `u` over `u_prime`.
    pub fn at_least_weak(&self) -> bool {
        matches!(
            self,
            Dominance::StrictLorenz | Dominance::WeakLorenz | Dominance::Equal
        )
    }
}

fn compare_pointwise(curve: &[f64], other: &[f64], tol: f64) -> Dominance {
    let mut any_below = false;
    let mut any_clearly_above = false;
    let mut any_above = false;
    for (a, b) in curve.iter().zip(other) {
        let d = a - b;
        if d < -tol {
            any_below = true;
        }
        if d > tol {
            any_clearly_above = true;
        }
        if d > 0.0 {
            any_above = true;
        }
    }
    if any_below {
        // u does not dominate; query the reversed direction to distinguish
        // crossing curves from being dominated
        Dominance::Incomparable
    } else if any_clearly_above {
        Dominance::StrictLorenz
    } else if any_above {
        Dominance::WeakLorenz
    } else {
        Dominance::Equal
    }
}

/// Lorenz dominance of `u` over `u_prime`: pointwise comparison of the
/// generalized Lorenz curves with absolute tolerance `tol`.
pub fn dominance(u: &[f64], u_prime: &[f64], tol: f64) -> Result<Dominance> {
    if u.len() != u_prime.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: u_prime.len(),
        });
    }
    let cu = lorenz_curve(u)?;
    let cv = lorenz_curve(u_prime)?;
    Ok(compare_pointwise(&cu, &cv, tol))
}

/// Pareto variant: compares raw components without sorting.
pub fn pareto_dominance(u: &[f64], u_prime: &[f64], tol: f64) -> Result<Dominance> {
    if u.len() != u_prime.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: u_prime.len(),
        });
    }
    Ok(compare_pointwise(u, u_prime, tol))
}

/// Pointwise verdict on two already-computed generalized Lorenz curves.
pub fn curve_dominance(curve: &[f64], other: &[f64], tol: f64) -> Result<Dominance> {
    if curve.len() != other.len() {
        return Err(Error::LengthMismatch {
            left: curve.len(),
            right: other.len(),
        });
    }
    Ok(compare_pointwise(curve, other, tol))
}

/// Gini index `sum_{j,j'} |u_j - u_{j'}| / (2 n sum(u))`, in [0, 1).
pub fn gini(u: &[f64]) -> Result<f64> {
    let n = u.len();
    if let Some(idx) = u.iter().position(|x| x.is_nan() || *x < 0.0) {
        return Err(Error::NegativeUtility {
            index: idx,
            value: u[idx],
        });
    }
    let total: f64 = u.iter().sum();
    if total <= 0.0 {
        return Err(Error::ZeroTotal);
    }
    let mut sorted = u.to_vec();
    sorted.sort_unstable_by(|a, b| a.total_cmp(b));
    // sum over ordered pairs of |u_j - u_j'| equals 2 * sum_i (2i - n - 1) u_(i)
    let mut weighted = 0.0;
    for (i, x) in sorted.iter().enumerate() {
        weighted += (2.0 * (i + 1) as f64 - n as f64 - 1.0) * x;
    }
    Ok(weighted / (n as f64 * total))
}

/// Population standard deviation.
pub fn std_dev(u: &[f64]) -> f64 {
    if u.is_empty() {
        return 0.0;
    }
    let n = u.len() as f64;
    let mean = u.iter().sum::<f64>() / n;
    (u.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n).sqrt()
}

/// Cumulative utility of the `ceil(f * n)` worst-off components.
pub fn quantile_cumulative(u: &[f64], fraction: f64) -> Result<f64> {
    let curve = lorenz_curve(u)?;
    if curve.is_empty() {
        return Ok(0.0);
    }
    let count = ((fraction * curve.len() as f64).ceil() as usize).clamp(1, curve.len());
    Ok(curve[count - 1])
}

/// Quantile fractions reported everywhere: the worst-off 10%, 25%, 50%, and
/// the whole population.
pub const REPORT_FRACTIONS: [f64; 4] = [0.1, 0.25, 0.5, 1.0];

/// Lorenz curve plus the summary statistics reported by the CLI.
#[derive(Debug, Clone, Serialize)]
pub struct LorenzReport {
    pub curve: Vec<f64>,
    pub gini: f64,
    pub std_dev: f64,
    /// Keys are percentages ("10", "25", "50", "100").
    pub quantile_cums: BTreeMap<String, f64>,
    pub total: f64,
}

impl LorenzReport {
    pub fn from_values(u: &[f64]) -> Result<LorenzReport> {
        let curve = lorenz_curve(u)?;
        let total = curve.last().copied().unwrap_or(0.0);
        let mut quantile_cums = BTreeMap::new();
        for f in REPORT_FRACTIONS {
            let key = format!("{}", (f * 100.0).round() as u32);
            quantile_cums.insert(key, quantile_cumulative(u, f)?);
        }
        Ok(LorenzReport {
            curve,
            gini: gini(u).unwrap_or(0.0),
            std_dev: std_dev(u),
            quantile_cums,
            total,
        })
    }

    /// CSV with columns `index,cumulative_utility` (1-based index).
    pub fn write_curve_csv<W: std::io::Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "index,cumulative_utility")?;
        for (i, c) in self.curve.iter().enumerate() {
            writeln!(w, "{},{}", i + 1, c)?;
        }
        Ok(())
    }

    /// JSON summary {gini, std_dev, total, quantiles}.
    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::json!({
            "gini": self.gini,
            "std_dev": self.std_dev,
            "total": self.total,
            "quantiles": self.quantile_cums,
        })
    }
}

/// Leximin order: lexicographic comparison of ascending-sorted vectors, with
/// per-position tolerance. `Greater` means `u` is leximin-better.
pub fn leximin_compare(u: &[f64], u_prime: &[f64], tol: f64) -> Result<Ordering> {
    if u.len() != u_prime.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: u_prime.len(),
        });
    }
    let mut a = u.to_vec();
    let mut b = u_prime.to_vec();
    a.sort_unstable_by(|x, y| x.total_cmp(y));
    b.sort_unstable_by(|x, y| x.total_cmp(y));
    for (x, y) in a.iter().zip(&b) {
        if (x - y).abs() > tol {
            return Ok(x.total_cmp(y));
        }
    }
    Ok(Ordering::Equal)
}

/// Outcome of one regret-bound trial.
#[derive(Debug, Clone, Serialize)]
pub struct RegretReport {
    /// True-welfare regret `W(u(P*)) - W(u(P_hat))`.
    pub lhs: f64,
    /// `4 B(mu_hat) sqrt(n ||v||_2^2) ||mu_hat - mu||_F`.
    pub rhs: f64,
    /// Duality gaps of the two solver runs, added to the right-hand side
    /// because the bound assumes exact maximizers.
    pub gap_slack: f64,
    pub holds: bool,
}

/// Checks the excess-risk bound for theta = (1/2, alpha, alpha): solves on the
/// estimated preferences and on the true ones, evaluates both rankings under
/// the true preferences, and compares the welfare regret against the bound.
pub fn regret_bound_check(
    inst: &ProblemInstance,
    mu_hat: &Matrix,
    alpha: f64,
    eta: f64,
    config: &SolverConfig,
) -> Result<RegretReport> {
    if alpha > 1.0 {
        return Err(Error::UnsupportedTheta(format!(
            "regret bound requires alpha <= 1 (got {alpha})"
        )));
    }
    let params = WelfareParams::new(0.5, alpha, alpha).with_eta(eta);
    let objective = Welfare::new(params)?;

    let mut inst_hat = inst.clone();
    inst_hat.mu_user = mu_hat.clone();
    inst_hat.validate()?;

    let sol_hat = solve(&inst_hat, &objective, config)?;
    let sol_star = solve(inst, &objective, config)?;

    // both rankings evaluated under the true preferences
    let u_hat_true = utility_profile(&sol_hat.ranking, inst)?;
    let u_star_true = utility_profile(&sol_star.ranking, inst)?;
    let w_hat = crate::objectives::welfare(&u_hat_true, &params)?.value;
    let w_star = crate::objectives::welfare(&u_star_true, &params)?.value;
    let lhs = w_star - w_hat;

    // B(mu_hat): max derivative over the true utilities of P_hat and the
    // estimated utilities of P*, evaluated at u + eta
    let u_star_est = utility_profile(&sol_star.ranking, &inst_hat)?;
    let mut b: f64 = 0.0;
    for &x in u_hat_true.values().iter().chain(u_star_est.values()) {
        b = b.max(psi_prime(x + eta, alpha)?);
    }
    let n = inst.profile_len() as f64;
    let v_sq: f64 = inst.exposure_weights.iter().map(|v| v * v).sum();
    let est_err = inst.mu_user.frobenius_distance(mu_hat)?;
    let rhs = 4.0 * b * (n * v_sq).sqrt() * est_err;
    let gap_slack = sol_hat.trace.final_gap.max(0.0) + sol_star.trace.final_gap.max(0.0);
    Ok(RegretReport {
        lhs,
        rhs,
        gap_slack,
        holds: lhs <= rhs + gap_slack,
    })
}

/// Convenience: report on the standard profile of a solved ranking.
pub fn report_for_profile(u: &UtilityProfile) -> Result<(LorenzReport, Option<LorenzReport>)> {
    let users = LorenzReport::from_values(u.users())?;
    let items = if u.items().is_empty() {
        None
    } else {
        Some(LorenzReport::from_values(u.items())?)
    };
    Ok((users, items))
}
