//! fairrank: generate fair-ranking instances, solve them, sweep parameter
//! grids, compare solutions by Lorenz dominance, and reproduce the reference
//! results end to end.

mod output;
mod repro;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fairrank::*;

#[derive(Parser)]
#[command(
    name = "fairrank",
    version,
    about = "Two-sided fair ranking via welfare maximization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a reference or random instance to a .fri file
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Solve one objective on an instance and write a solution directory
    Solve(SolveArgs),
    /// Solve a parameter grid and print one CSV row per grid point
    Sweep(SweepArgs),
    /// Compare two solution directories by Lorenz dominance
    Compare {
        /// First solution directory
        #[arg(long)]
        a: PathBuf,
        /// Second solution directory
        #[arg(long)]
        b: PathBuf,
    },
    /// Reproduce the reference results and print expected-vs-observed tables
    Repro {
        #[command(subcommand)]
        what: ReproTarget,
    },
}

#[derive(Subcommand)]
enum Family {
    /// One-sided pattern where quality-weighted exposure hurts both sides
    QwCounterexample {
        #[arg(long)]
        d: usize,
        #[arg(long = "N", default_value_t = 1)]
        n_rep: usize,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Reciprocal instance with a single universally liked leader
    LeaderStar {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Reciprocal instance where equal utility collapses everyone to zero
    PairTriangle {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// One-sided pattern showing the cost of per-ranking constraints
    Micro {
        #[arg(long)]
        d: usize,
        #[arg(long = "N", default_value_t = 1)]
        n_rep: usize,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Random dense instance with DCG exposure weights
    Random {
        #[arg(long)]
        users: usize,
        #[arg(long)]
        items: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::OneSided)]
        mode: ModeArg,
        #[arg(long)]
        slots: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    OneSided,
    TwoSidedPrefs,
    Reciprocal,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::OneSided => Mode::OneSided,
            ModeArg::TwoSidedPrefs => Mode::TwoSidedPrefs,
            ModeArg::Reciprocal => Mode::Reciprocal,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum ObjectiveArg {
    /// Concave welfare W_theta
    Welfare,
    /// Quality-weighted exposure penalty
    Qua,
    /// Equal-exposure penalty
    Expo,
    /// Equal-utility penalty (reciprocal instances only)
    EqUtil,
}

impl ObjectiveArg {
    fn name(&self) -> &'static str {
        match self {
            ObjectiveArg::Welfare => "welfare",
            ObjectiveArg::Qua => "qua",
            ObjectiveArg::Expo => "expo",
            ObjectiveArg::EqUtil => "eq-util",
        }
    }
}

#[derive(Args)]
struct ObjectiveFlags {
    #[arg(long, value_enum)]
    objective: ObjectiveArg,
    /// Relative item-side weight of the welfare function
    #[arg(long, default_value_t = 0.5)]
    lambda: f64,
    /// User-side curvature of the welfare function
    #[arg(long, default_value_t = 0.0)]
    alpha1: f64,
    /// Item-side curvature of the welfare function
    #[arg(long, default_value_t = 0.0)]
    alpha2: f64,
    /// Smoothing offset inside psi
    #[arg(long, default_value_t = objectives::DEFAULT_ETA)]
    eta: f64,
    /// Penalty weight of the baseline objectives
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    /// Constant offset inside sqrt(D + sqrt_eps)
    #[arg(long, default_value_t = objectives::DEFAULT_SQRT_EPS)]
    sqrt_eps: f64,
    /// Divide the squared deviation by the population size
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    normalize_by_n: bool,
}

impl ObjectiveFlags {
    fn build(&self, inst: &ProblemInstance) -> Result<(Box<dyn Objective>, serde_json::Value)> {
        match self.objective {
            ObjectiveArg::Welfare => {
                let params =
                    WelfareParams::new(self.lambda, self.alpha1, self.alpha2).with_eta(self.eta);
                let json = serde_json::json!({
                    "lambda": params.lambda,
                    "alpha1": params.alpha_user,
                    "alpha2": params.alpha_item,
                    "eta": params.eta,
                });
                Ok((Box::new(Welfare::new(params)?), json))
            }
            kind_arg => {
                let kind = match kind_arg {
                    ObjectiveArg::Qua => PenaltyKind::QualityWeighted,
                    ObjectiveArg::Expo => PenaltyKind::EqualExposure,
                    _ => PenaltyKind::EqualUtility,
                };
                let params = PenaltyParams::new(kind, self.beta)
                    .with_sqrt_eps(self.sqrt_eps)
                    .with_normalize_by_n(self.normalize_by_n);
                let json = serde_json::json!({
                    "beta": params.beta,
                    "sqrt_eps": params.sqrt_eps,
                    "normalize_by_n": params.normalize_by_n,
                });
                Ok((Box::new(PenalizedObjective::new(inst, params)?), json))
            }
        }
    }
}

#[derive(Args)]
struct SolverFlags {
    #[arg(long, default_value_t = 5000)]
    iterations: usize,
    /// Recommendation slots K (default: the instance's weight count)
    #[arg(long)]
    slots: Option<usize>,
    #[arg(long, default_value_t = 100)]
    trace_every: usize,
    /// Stop early once the duality gap falls below this value
    #[arg(long)]
    gap_tolerance: Option<f64>,
}

impl SolverFlags {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            iterations: self.iterations,
            slots: self.slots,
            gap_tolerance: self.gap_tolerance,
            trace_every: self.trace_every,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    objective: ObjectiveFlags,
    #[command(flatten)]
    solver: SolverFlags,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    objective: ObjectiveArg,
    /// Welfare lambda grid (comma separated)
    #[arg(long, value_delimiter = ',', default_value = "0.5")]
    lambda_grid: Vec<f64>,
    /// Welfare alpha1 grid
    #[arg(long, value_delimiter = ',', default_value = "0")]
    alpha1_grid: Vec<f64>,
    /// Welfare alpha2 grid
    #[arg(long, value_delimiter = ',', default_value = "0")]
    alpha2_grid: Vec<f64>,
    /// Penalty beta grid
    #[arg(long, value_delimiter = ',', default_value = "1")]
    beta_grid: Vec<f64>,
    #[arg(long, default_value_t = objectives::DEFAULT_ETA)]
    eta: f64,
    #[arg(long, default_value_t = objectives::DEFAULT_SQRT_EPS)]
    sqrt_eps: f64,
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    normalize_by_n: bool,
    #[command(flatten)]
    solver: SolverFlags,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ReproTarget {
    /// Quality-weighted counterexample limit
    Prop2 {
        #[arg(long, default_value_t = 10)]
        d: usize,
        #[arg(long, default_value_t = 1e4)]
        beta: f64,
        #[arg(long, default_value_t = 5000)]
        iterations: usize,
    },
    /// Equal-utility collapse on the pair-triangle instance
    Prop3 {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 5000)]
        iterations: usize,
    },
    /// Leader-star penalty limits
    Leader {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 1e3)]
        beta: f64,
        #[arg(long, default_value_t = 5000)]
        iterations: usize,
    },
    /// Per-ranking constraint ratios (exact)
    Micro {
        #[arg(long, default_value_t = 4)]
        d: usize,
        #[arg(long = "N", default_value_t = 1)]
        n_rep: usize,
    },
    /// Everything above with default parameters
    All,
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Io(_) => 3,
        Error::Parse { .. } => 4,
        Error::InvalidDimensions(_)
        | Error::NegativePreference { .. }
        | Error::NonMonotoneWeights { .. }
        | Error::AsymmetricReciprocal { .. }
        | Error::InvalidGroups(_)
        | Error::IndexOutOfRange { .. }
        | Error::DimensionMismatch(_)
        | Error::LengthMismatch { .. }
        | Error::NegativeUtility { .. } => 5,
        _ => 6,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Generate { family } => {
            let (inst, path) = match family {
                Family::QwCounterexample { d, n_rep, out } => {
                    (gen_qw_counterexample(d, n_rep)?.0, out)
                }
                Family::LeaderStar { n, out } => (gen_leader_star(n)?.0, out),
                Family::PairTriangle { n, out } => (gen_pair_triangle(n)?.0, out),
                Family::Micro { d, n_rep, out } => (gen_micro_example(d, n_rep)?.0, out),
                Family::Random {
                    users,
                    items,
                    mode,
                    slots,
                    seed,
                    out,
                } => (gen_random(users, items, mode.into(), slots, seed)?, out),
            };
            save_instance(&inst, &path)?;
            println!(
                "wrote {} ({} users, {} items, {}, {} slots)",
                path.display(),
                inst.n_users,
                inst.n_items,
                inst.mode.as_str(),
                inst.slots()
            );
            Ok(0)
        }
        Command::Solve(args) => {
            let inst = load_instance(&args.input)?;
            let (objective, params_json) = args.objective.build(&inst)?;
            let config = args.solver.config();
            let solution = solve(&inst, objective.as_ref(), &config)?;
            let slots = config.slots.unwrap_or_else(|| inst.slots());
            let report = output::write_solution_dir(
                &args.out,
                &inst,
                &solution,
                slots,
                args.objective.objective.name(),
                params_json,
            )?;
            println!(
                "solved {}: total user utility {}, gini users {:.4}, gini items {:.4}, final gap {:.3e} -> {}",
                args.objective.objective.name(),
                report.total_user_utility,
                report.gini_users,
                report.gini_items,
                solution.trace.final_gap,
                args.out.display()
            );
            Ok(0)
        }
        Command::Sweep(args) => run_sweep(args),
        Command::Compare { a, b } => run_compare(&a, &b),
        Command::Repro { what } => {
            let ok = match what {
                ReproTarget::Prop2 {
                    d,
                    beta,
                    iterations,
                } => repro::prop2(d, beta, iterations)?,
                ReproTarget::Prop3 { n, iterations } => repro::prop3(n, iterations)?,
                ReproTarget::Leader {
                    n,
                    beta,
                    iterations,
                } => repro::leader(n, beta, iterations)?,
                ReproTarget::Micro { d, n_rep } => repro::micro(d, n_rep)?,
                ReproTarget::All => {
                    let mut all = repro::prop2(10, 1e4, 5000)?;
                    all &= repro::prop3(5, 5000)?;
                    all &= repro::leader(10, 1e3, 5000)?;
                    all &= repro::micro(4, 1)?;
                    all
                }
            };
            if ok {
                println!("repro: all checks passed");
                Ok(0)
            } else {
                println!("repro: some checks FAILED");
                Ok(1)
            }
        }
    }
}

struct SweepPoint {
    lambda: Option<f64>,
    alpha1: Option<f64>,
    alpha2: Option<f64>,
    beta: Option<f64>,
}

fn run_sweep(args: SweepArgs) -> Result<u8> {
    let inst = load_instance(&args.input)?;
    let grid: Vec<SweepPoint> = if args.objective == ObjectiveArg::Welfare {
        let mut g = Vec::new();
        for &lambda in &args.lambda_grid {
            for &alpha1 in &args.alpha1_grid {
                for &alpha2 in &args.alpha2_grid {
                    g.push(SweepPoint {
                        lambda: Some(lambda),
                        alpha1: Some(alpha1),
                        alpha2: Some(alpha2),
                        beta: None,
                    });
                }
            }
        }
        g
    } else {
        args.beta_grid
            .iter()
            .map(|&beta| SweepPoint {
                lambda: None,
                alpha1: None,
                alpha2: None,
                beta: Some(beta),
            })
            .collect()
    };
    if grid.is_empty() {
        return Err(Error::InvalidDimensions("sweep grid is empty".into()));
    }

    let mut out: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(std::io::stdout().lock()),
    };
    writeln!(
        out,
        "objective,lambda,alpha1,alpha2,beta,total_user_utility,gini_users,gini_items,std_items,\
         cum10_users,cum25_users,cum50_users,cum10_items,cum25_items,cum50_items,final_gap"
    )?;

    let config = args.solver.config();
    for point in &grid {
        let flags = ObjectiveFlags {
            objective: args.objective,
            lambda: point.lambda.unwrap_or(0.5),
            alpha1: point.alpha1.unwrap_or(0.0),
            alpha2: point.alpha2.unwrap_or(0.0),
            eta: args.eta,
            beta: point.beta.unwrap_or(0.0),
            sqrt_eps: args.sqrt_eps,
            normalize_by_n: args.normalize_by_n,
        };
        let (objective, _) = flags.build(&inst)?;
        let solution = solve(&inst, objective.as_ref(), &config)?;
        let u = utility_profile(&solution.ranking, &inst)?;
        let item_values: Vec<f64> = if inst.mode == Mode::Reciprocal {
            exposure_profile(&solution.ranking, &inst)?.items().to_vec()
        } else {
            u.items().to_vec()
        };
        let opt = |v: Option<f64>| v.map_or(String::new(), |x| format!("{x}"));
        let cum = |values: &[f64], f: f64| quantile_cumulative(values, f).unwrap_or(0.0);
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            args.objective.name(),
            opt(point.lambda),
            opt(point.alpha1),
            opt(point.alpha2),
            opt(point.beta),
            u.total_user_utility(),
            gini(u.users()).unwrap_or(0.0),
            gini(&item_values).unwrap_or(0.0),
            std_dev(&item_values),
            cum(u.users(), 0.1),
            cum(u.users(), 0.25),
            cum(u.users(), 0.5),
            cum(&item_values, 0.1),
            cum(&item_values, 0.25),
            cum(&item_values, 0.5),
            solution.trace.final_gap,
        )?;
    }
    Ok(0)
}

fn run_compare(a: &std::path::Path, b: &std::path::Path) -> Result<u8> {
    // the curve files carry both sides in every mode (in reciprocal
    // solutions the item-side curve is the exposure curve)
    let ua = output::read_curve_csv(&a.join("lorenz_users.csv"))?;
    let ub = output::read_curve_csv(&b.join("lorenz_users.csv"))?;
    let ia = output::read_curve_csv(&a.join("lorenz_items.csv"))?;
    let ib = output::read_curve_csv(&b.join("lorenz_items.csv"))?;
    if ua.len() != ub.len() || ia.len() != ib.len() {
        return Err(Error::LengthMismatch {
            left: ua.len() + ia.len(),
            right: ub.len() + ib.len(),
        });
    }
    let users_ab = curve_dominance(&ua, &ub, DOMINANCE_TOL)?;
    let users_ba = curve_dominance(&ub, &ua, DOMINANCE_TOL)?;
    let items_ab = curve_dominance(&ia, &ib, DOMINANCE_TOL)?;
    let items_ba = curve_dominance(&ib, &ia, DOMINANCE_TOL)?;
    println!("user-side: A vs B: {}", users_ab.as_str());
    println!("item-side: A vs B: {}", items_ab.as_str());

    let a_dominates = (users_ab == Dominance::StrictLorenz && items_ab.at_least_weak())
        || (items_ab == Dominance::StrictLorenz && users_ab.at_least_weak());
    let b_dominates = (users_ba == Dominance::StrictLorenz && items_ba.at_least_weak())
        || (items_ba == Dominance::StrictLorenz && users_ba.at_least_weak());
    let joint = if users_ab == Dominance::Equal && items_ab == Dominance::Equal {
        "joint: profiles are Lorenz-equivalent".to_string()
    } else if a_dominates {
        "joint: A Lorenz-dominates B (B is not Lorenz-efficient)".to_string()
    } else if b_dominates {
        "joint: B Lorenz-dominates A (A is not Lorenz-efficient)".to_string()
    } else {
        "joint: incomparable; neither solution dominates the other".to_string()
    };
    println!("{joint}");
    Ok(0)
}
