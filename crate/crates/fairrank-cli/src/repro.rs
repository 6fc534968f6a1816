//! End-to-end reproduction of the reference results, printed as an
//! expected-vs-observed table.

use fairrank::instances::{
    REGIME_EXPO_LIMIT, REGIME_GLOBAL, REGIME_PER_RANKING_EXPO, REGIME_PER_RANKING_QUA,
    REGIME_QUA_LIMIT, REGIME_WELFARE,
};
use fairrank::*;

pub struct Row {
    pub check: String,
    pub expected: f64,
    pub observed: f64,
    pub tolerance: f64,
}

impl Row {
    pub fn pass(&self) -> bool {
        (self.observed - self.expected).abs() <= self.tolerance
    }
}

pub fn print_table(title: &str, rows: &[Row]) -> bool {
    println!("== {title}");
    println!(
        "{:<44} {:>14} {:>14} {:>10}  verdict",
        "check", "expected", "observed", "tol"
    );
    let mut all = true;
    for r in rows {
        let verdict = if r.pass() { "PASS" } else { "FAIL" };
        all &= r.pass();
        println!(
            "{:<44} {:>14.6} {:>14.6} {:>10.0e}  {verdict}",
            r.check, r.expected, r.observed, r.tolerance
        );
    }
    all
}

/// Quality-weighted counterexample: solve at large beta and compare pattern
/// utilities against the closed-form limit; confirm the welfare solution
/// Lorenz-dominates on both sides.
pub fn prop2(d: usize, beta: f64, iterations: usize) -> Result<bool> {
    let (inst, _) = gen_qw_counterexample(d, 1)?;
    let p = qw_limit_probability(d);
    let config = SolverConfig {
        iterations,
        ..Default::default()
    };
    let params = PenaltyParams::new(PenaltyKind::QualityWeighted, beta)
        .with_normalize_by_n(true)
        .with_sqrt_eps(8.0);
    let qua = solve(&inst, &PenalizedObjective::new(&inst, params)?, &config)?;
    let qua_u = utility_profile(&qua.ranking, &inst)?;
    let pattern_mean = qua_u.users()[..d].iter().sum::<f64>() / d as f64;

    let welf = Welfare::new(WelfareParams::new(0.5, 0.0, 0.0))?;
    let wsol = solve(&inst, &welf, &config)?;
    let w_u = utility_profile(&wsol.ranking, &inst)?;
    let users = dominance(w_u.users(), qua_u.users(), DOMINANCE_TOL)?;
    let items = dominance(w_u.items(), qua_u.items(), DOMINANCE_TOL)?;

    let rows = vec![
        Row {
            check: format!("pattern user utility at beta={beta}"),
            expected: 1.0 - 0.5 * p,
            observed: pattern_mean,
            tolerance: 1e-2,
        },
        Row {
            check: "welfare strictly dominates users (1=yes)".into(),
            expected: 1.0,
            observed: f64::from(users == Dominance::StrictLorenz),
            tolerance: 0.0,
        },
        Row {
            check: "welfare strictly dominates items (1=yes)".into(),
            expected: 1.0,
            observed: f64::from(items == Dominance::StrictLorenz),
            tolerance: 0.0,
        },
    ];
    Ok(print_table(
        &format!("prop2: qw-counterexample d={d}"),
        &rows,
    ))
}

/// Pair-triangle: equal utility collapses the total monotonically toward 0
/// while any strict welfare keeps everyone at 1.5 or better.
pub fn prop3(n: usize, iterations: usize) -> Result<bool> {
    let (inst, reference) = gen_pair_triangle(n)?;
    let config = SolverConfig {
        iterations,
        ..Default::default()
    };
    let optimum = reference
        .fact(REGIME_WELFARE)
        .unwrap()
        .total_user_utility
        .unwrap();
    let mut rows = Vec::new();
    let mut last = f64::INFINITY;
    let mut monotone = true;
    let mut final_total = 0.0;
    for beta in [1.0, 10.0, 100.0] {
        let params = PenaltyParams::new(PenaltyKind::EqualUtility, beta).with_normalize_by_n(false);
        let sol = solve(&inst, &PenalizedObjective::new(&inst, params)?, &config)?;
        let total: f64 = utility_profile(&sol.ranking, &inst)?.values().iter().sum();
        monotone &= total <= last + 1e-3;
        last = total;
        final_total = total;
    }
    rows.push(Row {
        check: "eq-util collapse monotone in beta (1=yes)".into(),
        expected: 1.0,
        observed: f64::from(monotone),
        tolerance: 0.0,
    });
    rows.push(Row {
        check: "eq-util total at beta=100 (vs 10% cap)".into(),
        expected: 0.0,
        observed: final_total,
        tolerance: 0.1 * optimum,
    });
    for alpha in [0.0, -1.0] {
        let sol = solve(
            &inst,
            &Welfare::new(WelfareParams::new(0.5, alpha, alpha))?,
            &config,
        )?;
        let u = utility_profile(&sol.ranking, &inst)?;
        let min = u.values().iter().cloned().fold(f64::INFINITY, f64::min);
        rows.push(Row {
            check: format!("welfare alpha={alpha} min utility"),
            expected: 1.5,
            observed: min,
            tolerance: 0.02,
        });
    }
    Ok(print_table(&format!("prop3: pair-triangle n={n}"), &rows))
}

/// Leader-star: both baseline limits and the welfare total.
pub fn leader(n: usize, beta: f64, iterations: usize) -> Result<bool> {
    let (inst, reference) = gen_leader_star(n)?;
    let config = SolverConfig {
        iterations,
        ..Default::default()
    };
    let mut rows = Vec::new();
    for (kind, regime) in [
        (PenaltyKind::EqualExposure, REGIME_EXPO_LIMIT),
        (PenaltyKind::QualityWeighted, REGIME_QUA_LIMIT),
    ] {
        let params = PenaltyParams::new(kind, beta).with_normalize_by_n(false);
        let sol = solve(&inst, &PenalizedObjective::new(&inst, params)?, &config)?;
        let total: f64 = utility_profile(&sol.ranking, &inst)?.values().iter().sum();
        let expected = reference.fact(regime).unwrap().total_user_utility.unwrap();
        rows.push(Row {
            check: format!("{} total utility", kind.as_str()),
            expected,
            observed: total,
            tolerance: 0.02 * expected,
        });
    }
    let sol = solve(
        &inst,
        &Welfare::new(WelfareParams::new(0.5, 0.0, 0.0))?,
        &config,
    )?;
    let total: f64 = utility_profile(&sol.ranking, &inst)?.values().iter().sum();
    let expected = reference
        .fact(REGIME_WELFARE)
        .unwrap()
        .total_user_utility
        .unwrap();
    rows.push(Row {
        check: "welfare total utility".into(),
        expected,
        observed: total,
        tolerance: 0.02 * expected,
    });
    Ok(print_table(&format!("leader-star n={n}"), &rows))
}

/// Per-ranking constraint pathology: exact utility totals of the closed-form
/// constrained rankings.
pub fn micro(d: usize, n_rep: usize) -> Result<bool> {
    let (inst, reference) = gen_micro_example(d, n_rep)?;
    let mut rows = Vec::new();
    for regime in [
        REGIME_GLOBAL,
        REGIME_PER_RANKING_EXPO,
        REGIME_PER_RANKING_QUA,
    ] {
        let fact = reference.fact(regime).unwrap();
        let u = utility_profile(fact.ranking.as_ref().unwrap(), &inst)?;
        rows.push(Row {
            check: format!("{regime} user total"),
            expected: fact.total_user_utility.unwrap(),
            observed: u.total_user_utility(),
            tolerance: 1e-12,
        });
    }
    Ok(print_table(
        &format!("micro: per-ranking constraints d={d}, N={n_rep}"),
        &rows,
    ))
}
