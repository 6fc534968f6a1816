//! Solution directory layout: ranking.json, utilities.csv, lorenz_users.csv,
//! lorenz_items.csv, trace.csv, summary.json. Item indices are 1-based in
//! every file.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use fairrank::{
    exposure_profile, utility_profile, LorenzReport, Mode, ProblemInstance, Solution,
    StochasticRanking, UtilityProfile,
};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
pub struct RankingAtomFile {
    pub weight: f64,
    /// Per user, the ranked item indices (1-based, rank 1 first).
    pub lists: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
pub struct RankingFile {
    pub n_users: usize,
    pub slots: usize,
    pub atoms: Vec<RankingAtomFile>,
}

pub fn ranking_to_file(ranking: &StochasticRanking, slots: usize) -> RankingFile {
    RankingFile {
        n_users: ranking.n_users(),
        slots,
        atoms: ranking
            .atoms()
            .iter()
            .map(|a| RankingAtomFile {
                weight: a.weight,
                lists: a
                    .ranking
                    .lists()
                    .iter()
                    .map(|l| l.iter().map(|j| j + 1).collect())
                    .collect(),
            })
            .collect(),
    }
}

fn write_utilities_csv(path: &Path, u: &UtilityProfile) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "index,side,utility")?;
    for (i, x) in u.users().iter().enumerate() {
        writeln!(w, "{},user,{}", i + 1, x)?;
    }
    for (j, x) in u.items().iter().enumerate() {
        writeln!(w, "{},item,{}", j + 1, x)?;
    }
    Ok(())
}

/// Everything `solve` leaves on disk for one run.
pub struct SolutionReport {
    pub total_user_utility: f64,
    pub gini_users: f64,
    pub gini_items: f64,
    pub std_items: f64,
}

pub fn write_solution_dir(
    dir: &Path,
    inst: &ProblemInstance,
    solution: &Solution,
    slots: usize,
    objective_name: &str,
    params_json: serde_json::Value,
) -> fairrank::Result<SolutionReport> {
    fs::create_dir_all(dir)?;
    let u = utility_profile(&solution.ranking, inst)?;

    // item-side vector: standard item utilities, or raw exposures in
    // reciprocal mode where the profile has no item block
    let item_values: Vec<f64> = if inst.mode == Mode::Reciprocal {
        exposure_profile(&solution.ranking, inst)?.items().to_vec()
    } else {
        u.items().to_vec()
    };

    let ranking_file = ranking_to_file(&solution.ranking, slots);
    let ranking_json = serde_json::to_string_pretty(&ranking_file)
        .map_err(|e| fairrank::Error::Io(std::io::Error::other(e)))?;
    fs::write(dir.join("ranking.json"), ranking_json + "\n")?;

    write_utilities_csv(&dir.join("utilities.csv"), &u)?;

    let users_report = LorenzReport::from_values(u.users())?;
    let items_report = LorenzReport::from_values(&item_values)?;
    {
        let mut w = BufWriter::new(File::create(dir.join("lorenz_users.csv"))?);
        users_report.write_curve_csv(&mut w)?;
        let mut w = BufWriter::new(File::create(dir.join("lorenz_items.csv"))?);
        items_report.write_curve_csv(&mut w)?;
    }
    {
        let mut w = BufWriter::new(File::create(dir.join("trace.csv"))?);
        solution.trace.write_csv(&mut w)?;
    }

    let report = SolutionReport {
        total_user_utility: u.total_user_utility(),
        gini_users: users_report.gini,
        gini_items: items_report.gini,
        std_items: items_report.std_dev,
    };
    let summary = serde_json::json!({
        "objective": objective_name,
        "params": params_json,
        "total_user_utility": report.total_user_utility,
        "gini_users": report.gini_users,
        "gini_items": report.gini_items,
        "std_items": report.std_items,
        "quantile_cums": users_report.quantile_cums,
        "final_gap": solution.trace.final_gap,
        "iterations": solution.trace.iterations_run,
        "wall_ms": solution.trace.wall_ms,
    });
    let summary_text = serde_json::to_string_pretty(&summary)
        .map_err(|e| fairrank::Error::Io(std::io::Error::other(e)))?;
    fs::write(dir.join("summary.json"), summary_text + "\n")?;
    Ok(report)
}

/// Reads a `index,cumulative_utility` curve file back.
pub fn read_curve_csv(path: &Path) -> fairrank::Result<Vec<f64>> {
    let text = fs::read_to_string(path)?;
    let mut curve = Vec::new();
    for (no, line) in text.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let value = line
            .split(',')
            .nth(1)
            .ok_or_else(|| fairrank::Error::Parse {
                line: no + 1,
                col: None,
                msg: format!("expected 2 fields in {}", path.display()),
            })?;
        curve.push(value.parse().map_err(|_| fairrank::Error::Parse {
            line: no + 1,
            col: Some(2),
            msg: format!("not a number: {value}"),
        })?);
    }
    Ok(curve)
}
