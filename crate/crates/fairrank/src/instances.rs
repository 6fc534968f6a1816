//! Instance generators for the reference problems, random synthetic
//! instances, and `.fri` file ingestion/serialization.
//!
//! Each reference generator returns the instance together with the
//! closed-form solutions its construction admits (optimal rankings, limit
//! utilities as the penalty weight grows without bound), keyed by regime.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    Atom, DeterministicRanking, Groups, Matrix, Mode, ProblemInstance, StochasticRanking,
};

/// Regime key for the welfare optimum (any strictly concave theta).
pub const REGIME_WELFARE: &str = "welfare-optimum";
/// Regime key for the quality-weighted penalty limit (beta -> infinity).
pub const REGIME_QUA_LIMIT: &str = "qua-limit";
/// Regime key for the equal-exposure penalty limit (beta -> infinity).
pub const REGIME_EXPO_LIMIT: &str = "expo-limit";
/// Regime key for the equal-utility penalty limit (beta -> infinity).
pub const REGIME_EQ_UTIL_LIMIT: &str = "eq-util-limit";
/// Regime key for the unconstrained utilitarian optimum.
pub const REGIME_GLOBAL: &str = "global-optimum";
/// Regime key for equal exposure enforced inside every single ranking.
pub const REGIME_PER_RANKING_EXPO: &str = "per-ranking-expo";
/// Regime key for quality-weighted exposure enforced inside every ranking.
pub const REGIME_PER_RANKING_QUA: &str = "per-ranking-qua";

/// One closed-form reference result and the parameter regime it applies to.
#[derive(Debug, Clone)]
pub struct ReferenceFact {
    pub regime: String,
    /// Closed-form ranking, when the proof gives one.
    pub ranking: Option<StochasticRanking>,
    /// Closed-form standard utility profile (users then items; users only in
    /// reciprocal mode).
    pub profile: Option<Vec<f64>>,
    /// Closed-form total user-side utility (or its limit).
    pub total_user_utility: Option<f64>,
    pub min_utility: Option<f64>,
}

/// Closed-form reference solutions attached to a generated instance.
#[derive(Debug, Clone)]
pub struct ReferenceSolution {
    pub description: String,
    pub facts: Vec<ReferenceFact>,
}

impl ReferenceSolution {
    pub fn fact(&self, regime: &str) -> Option<&ReferenceFact> {
        self.facts.iter().find(|f| f.regime == regime)
    }
}

/// The beta -> infinity probability mass moved off the matched item in the
/// quality-weighted counterexample: `p = (d+1)(d+2)/(d(3d+2)) - 1/d`.
pub fn qw_limit_probability(d: usize) -> f64 {
    let df = d as f64;
    (df + 1.0) * (df + 2.0) / (df * (3.0 * df + 2.0)) - 1.0 / df
}

/// One-sided counterexample where the quality-weighted penalty hurts both
/// sides: `N` repetitions of a pattern with `d+1` users and `d+1` items,
/// single slot. Pattern user k values its own item at 1 and the last item at
/// 1/2; the welfare optimum is the identity assignment with every user at
/// utility 1 and equal item exposure, while the quality-weighted limit drags
/// pattern users down to `1 - p/2`.
pub fn gen_qw_counterexample(
    d: usize,
    n_rep: usize,
) -> Result<(ProblemInstance, ReferenceSolution)> {
    if d == 0 || n_rep == 0 {
        return Err(Error::InvalidDimensions(
            "qw-counterexample needs d >= 1 and N >= 1".into(),
        ));
    }
    let n_items = d + 1;
    let n_users = n_rep * n_items;
    let mut mu = Matrix::zeros(n_users, n_items);
    for u in 0..n_users {
        let k = u % n_items;
        mu.set(u, k, 1.0);
        if k < d {
            mu.set(u, d, 0.5);
        }
    }
    let inst = ProblemInstance::new(Mode::OneSided, mu, None, vec![1.0])?;

    let identity =
        DeterministicRanking::new((0..n_users).map(|u| vec![(u % n_items) as u32]).collect());
    let mut welfare_profile = vec![1.0; n_users];
    welfare_profile.extend(vec![n_rep as f64; n_items]);

    let p = qw_limit_probability(d);
    let pattern_utility = 1.0 - 0.5 * p;
    let mut qua_profile = Vec::with_capacity(n_users + n_items);
    for u in 0..n_users {
        qua_profile.push(if u % n_items < d {
            pattern_utility
        } else {
            1.0
        });
    }
    for j in 0..n_items {
        qua_profile.push(if j < d {
            n_rep as f64 * (1.0 - p)
        } else {
            n_rep as f64 * (1.0 + d as f64 * p)
        });
    }

    let reference = ReferenceSolution {
        description: format!(
            "quality-weighted counterexample, d={d}, N={n_rep}: welfare optima give every \
             user utility 1 and equal exposure; the beta->inf quality-weighted limit moves \
             mass p={p} to the last item"
        ),
        facts: vec![
            ReferenceFact {
                regime: REGIME_WELFARE.into(),
                ranking: Some(StochasticRanking::deterministic(identity)),
                profile: Some(welfare_profile),
                total_user_utility: Some(n_users as f64),
                min_utility: Some(1.0),
            },
            ReferenceFact {
                regime: REGIME_QUA_LIMIT.into(),
                ranking: None,
                profile: Some(qua_profile),
                total_user_utility: Some(n_rep as f64 * (d as f64 * pattern_utility + 1.0)),
                min_utility: Some(pattern_utility),
            },
        ],
    };
    Ok((inst, reference))
}

/// Reciprocal "leader" instance: user 1 is the only possible match of every
/// other user, single slot. The welfare optimum spreads the leader's single
/// slot uniformly (total utility 2n); the equal-exposure limit collapses the
/// total to 4 and the quality-weighted limit to 2 + n.
pub fn gen_leader_star(n: usize) -> Result<(ProblemInstance, ReferenceSolution)> {
    if n < 3 {
        return Err(Error::InvalidDimensions("leader-star needs n >= 3".into()));
    }
    let mut mu = Matrix::zeros(n, n);
    for j in 1..n {
        mu.set(0, j, 1.0);
        mu.set(j, 0, 1.0);
    }
    let inst = ProblemInstance::new(Mode::Reciprocal, mu, None, vec![1.0])?;

    let m = (n - 1) as f64;
    let atoms: Vec<Atom> = (1..n)
        .map(|s| {
            let lists = (0..n)
                .map(|i| if i == 0 { vec![s as u32] } else { vec![0u32] })
                .collect();
            Atom {
                weight: 1.0 / m,
                ranking: DeterministicRanking::new(lists),
            }
        })
        .collect();
    let mut welfare_profile = vec![n as f64];
    welfare_profile.extend(vec![1.0 + 1.0 / m; n - 1]);

    let mut expo_profile = vec![2.0];
    expo_profile.extend(vec![2.0 / m; n - 1]);
    let mut qua_profile = vec![1.0 + n as f64 / 2.0];
    qua_profile.extend(vec![(n as f64 + 2.0) / (2.0 * m); n - 1]);

    let reference = ReferenceSolution {
        description: format!(
            "leader-star, n={n}: only user 1 matches anyone; welfare optima reach total \
             utility 2n, the equal-exposure limit totals 4, the quality-weighted limit 2+n"
        ),
        facts: vec![
            ReferenceFact {
                regime: REGIME_WELFARE.into(),
                ranking: Some(StochasticRanking::from_atoms(atoms)),
                profile: Some(welfare_profile),
                total_user_utility: Some(2.0 * n as f64),
                min_utility: Some(1.0 + 1.0 / m),
            },
            ReferenceFact {
                regime: REGIME_EXPO_LIMIT.into(),
                ranking: None,
                profile: Some(expo_profile),
                total_user_utility: Some(4.0),
                min_utility: Some(2.0 / m),
            },
            ReferenceFact {
                regime: REGIME_QUA_LIMIT.into(),
                ranking: None,
                profile: Some(qua_profile),
                total_user_utility: Some(2.0 + n as f64),
                min_utility: Some((n as f64 + 2.0) / (2.0 * m)),
            },
        ],
    };
    Ok((inst, reference))
}

/// Reciprocal instance where equal utility collapses everyone to zero: user 1
/// matches users 2 and 3; users 4..n form a complete clique. At any strictly
/// concave welfare optimum every user keeps a two-sided utility of at least
/// 1.5, but the equal-utility profile satisfies `u_1 = 2 u_2` for every beta,
/// so its total utility tends to 0.
pub fn gen_pair_triangle(n: usize) -> Result<(ProblemInstance, ReferenceSolution)> {
    if n < 5 {
        return Err(Error::InvalidDimensions(
            "pair-triangle needs n >= 5".into(),
        ));
    }
    let mut mu = Matrix::zeros(n, n);
    mu.set(0, 1, 1.0);
    mu.set(1, 0, 1.0);
    mu.set(0, 2, 1.0);
    mu.set(2, 0, 1.0);
    for a in 3..n {
        for b in 3..n {
            if a != b {
                mu.set(a, b, 1.0);
            }
        }
    }
    let inst = ProblemInstance::new(Mode::Reciprocal, mu, None, vec![1.0])?;

    // utilitarian = welfare optimum: user 1 splits between 2 and 3; users 2, 3
    // point at 1; the clique cycles so each member is recommended exactly once
    let clique_next = |i: usize| -> u32 {
        let c = if i + 1 < n { i + 1 } else { 3 };
        c as u32
    };
    let atom_lists = |first: u32| -> Vec<Vec<u32>> {
        (0..n)
            .map(|i| match i {
                0 => vec![first],
                1 | 2 => vec![0u32],
                _ => vec![clique_next(i)],
            })
            .collect()
    };
    let atoms = vec![
        Atom {
            weight: 0.5,
            ranking: DeterministicRanking::new(atom_lists(1)),
        },
        Atom {
            weight: 0.5,
            ranking: DeterministicRanking::new(atom_lists(2)),
        },
    ];
    let mut profile = vec![3.0, 1.5, 1.5];
    profile.extend(vec![2.0; n - 3]);
    let total: f64 = profile.iter().sum();

    let reference = ReferenceSolution {
        description: format!(
            "pair-triangle, n={n}: welfare optima give everyone utility >= 1.5; the \
             equal-utility limit is 0 for everyone"
        ),
        facts: vec![
            ReferenceFact {
                regime: REGIME_WELFARE.into(),
                ranking: Some(StochasticRanking::from_atoms(atoms)),
                profile: Some(profile),
                total_user_utility: Some(total),
                min_utility: Some(1.5),
            },
            ReferenceFact {
                regime: REGIME_EQ_UTIL_LIMIT.into(),
                ranking: None,
                profile: None,
                total_user_utility: Some(0.0),
                min_utility: Some(0.0),
            },
        ],
    };
    Ok((inst, reference))
}

/// One-sided instance showing the cost of per-ranking exposure constraints:
/// user k values its own item at 1 and every other item at 1/d, single slot.
/// The global optimum gives every user utility 1. Forcing equal exposure
/// inside every single ranking caps user utility at 2/(d+1); forcing
/// quality-weighted exposure per ranking caps it at 1/2 + 1/d. Both
/// constrained rankings are returned in closed form.
pub fn gen_micro_example(d: usize, n_rep: usize) -> Result<(ProblemInstance, ReferenceSolution)> {
    if d == 0 || n_rep == 0 {
        return Err(Error::InvalidDimensions(
            "micro needs d >= 1 and N >= 1".into(),
        ));
    }
    let n_items = d + 1;
    let n_users = n_rep * n_items;
    let mut mu = Matrix::zeros(n_users, n_items);
    for u in 0..n_users {
        let k = u % n_items;
        for j in 0..n_items {
            mu.set(u, j, if j == k { 1.0 } else { 1.0 / d as f64 });
        }
    }
    let inst = ProblemInstance::new(Mode::OneSided, mu, None, vec![1.0])?;

    let identity =
        DeterministicRanking::new((0..n_users).map(|u| vec![(u % n_items) as u32]).collect());
    let mut global_profile = vec![1.0; n_users];
    global_profile.extend(vec![n_rep as f64; n_items]);

    // cyclic decomposition of the uniform marginal: shift s sends user k to
    // item (k + s) mod (d + 1)
    let shift_atom = |s: usize, weight: f64| -> Atom {
        let lists = (0..n_users)
            .map(|u| vec![((u + s) % n_items) as u32])
            .collect();
        Atom {
            weight,
            ranking: DeterministicRanking::new(lists),
        }
    };
    let uniform = StochasticRanking::from_atoms(
        (0..n_items)
            .map(|s| shift_atom(s, 1.0 / n_items as f64))
            .collect(),
    );
    let expo_utility = 2.0 / (d as f64 + 1.0);
    let mut expo_profile = vec![expo_utility; n_users];
    expo_profile.extend(vec![n_rep as f64; n_items]);

    // Quality-weighted per-ranking marginals attaining utility 1/2 + 1/d:
    // probability a = d / (2(d-1)) on the matched item, the rest spread
    // uniformly. Degenerate at d = 1 where the constraint coincides with
    // equal exposure (utility 1).
    let (qua_ranking, qua_utility) = if d == 1 {
        (uniform.clone(), expo_utility)
    } else {
        let a = d as f64 / (2.0 * (d as f64 - 1.0));
        let b = (d as f64 - 2.0) / (2.0 * d as f64 * (d as f64 - 1.0));
        let mut atoms = vec![shift_atom(0, a)];
        if b > 0.0 {
            atoms.extend((1..n_items).map(|s| shift_atom(s, b)));
        }
        (StochasticRanking::from_atoms(atoms), 0.5 + 1.0 / d as f64)
    };
    let mut qua_profile = vec![qua_utility; n_users];
    qua_profile.extend(vec![n_rep as f64; n_items]);

    let reference = ReferenceSolution {
        description: format!(
            "per-ranking constraint pathology, d={d}, N={n_rep}: global optimum gives every \
             user utility 1; per-ranking equal exposure caps it at 2/(d+1), per-ranking \
             quality-weighted exposure at 1/2 + 1/d"
        ),
        facts: vec![
            ReferenceFact {
                regime: REGIME_GLOBAL.into(),
                ranking: Some(StochasticRanking::deterministic(identity)),
                profile: Some(global_profile),
                total_user_utility: Some(n_users as f64),
                min_utility: Some(1.0),
            },
            ReferenceFact {
                regime: REGIME_PER_RANKING_EXPO.into(),
                ranking: Some(uniform),
                profile: Some(expo_profile),
                total_user_utility: Some(n_users as f64 * expo_utility),
                min_utility: Some(expo_utility),
            },
            ReferenceFact {
                regime: REGIME_PER_RANKING_QUA.into(),
                ranking: Some(qua_ranking),
                profile: Some(qua_profile),
                total_user_utility: Some(n_users as f64 * qua_utility),
                min_utility: Some(qua_utility),
            },
        ],
    };
    Ok((inst, reference))
}

/// Standard discounted-cumulative-gain weights `v_k = 1 / log2(1 + k)`.
pub fn dcg_weights(k: usize) -> Vec<f64> {
    (1..=k)
        .map(|rank| 1.0 / ((1 + rank) as f64).log2())
        .collect()
}

/// Random dense instance: mu entries i.i.d. uniform on [0, 1] (symmetrized
/// with a zero diagonal in reciprocal mode), DCG exposure weights, fully
/// deterministic under `seed`.
pub fn gen_random(
    n_users: usize,
    n_items: usize,
    mode: Mode,
    k: usize,
    seed: u64,
) -> Result<ProblemInstance> {
    if n_users == 0 || n_items == 0 || k == 0 {
        return Err(Error::InvalidDimensions(
            "sizes and slot count must be >= 1".into(),
        ));
    }
    if mode == Mode::Reciprocal && n_users != n_items {
        return Err(Error::InvalidDimensions(
            "reciprocal random instance needs n_users == n_items".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mu = Matrix::zeros(n_users, n_items);
    match mode {
        Mode::Reciprocal => {
            for i in 0..n_users {
                for j in (i + 1)..n_items {
                    let x: f64 = rng.gen();
                    mu.set(i, j, x);
                    mu.set(j, i, x);
                }
            }
        }
        _ => {
            for i in 0..n_users {
                for j in 0..n_items {
                    mu.set(i, j, rng.gen());
                }
            }
        }
    }
    let mu_item = match mode {
        Mode::TwoSidedPrefs => {
            let mut m = Matrix::zeros(n_items, n_users);
            for j in 0..n_items {
                for i in 0..n_users {
                    m.set(j, i, rng.gen());
                }
            }
            Some(m)
        }
        _ => None,
    };
    ProblemInstance::new(mode, mu, mu_item, dcg_weights(k))
}

// ---------------------------------------------------------------------------
// .fri files: one JSON header line, then the dense mu matrix as CSV rows
// (users as rows). Two-sided-preference instances append a blank line and the
// mu_item block (items as rows). Indices inside the header are 1-based.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct FileGroups {
    user_groups: Vec<Vec<usize>>,
    item_groups: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct FileHeader {
    mode: String,
    n_users: usize,
    n_items: usize,
    v: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    groups: Option<FileGroups>,
}

pub fn save_instance(inst: &ProblemInstance, path: &Path) -> Result<()> {
    let file = File::create(path)?;
    let mut w = BufWriter::new(file);
    write_instance(inst, &mut w)
}

pub fn write_instance<W: Write>(inst: &ProblemInstance, w: &mut W) -> Result<()> {
    inst.validate()?;
    let groups = inst.groups.as_ref().map(|g| FileGroups {
        user_groups: g
            .user_groups
            .iter()
            .map(|m| m.iter().map(|i| i + 1).collect())
            .collect(),
        item_groups: g
            .item_groups
            .iter()
            .map(|m| m.iter().map(|i| i + 1).collect())
            .collect(),
    });
    let header = FileHeader {
        mode: inst.mode.as_str().to_string(),
        n_users: inst.n_users,
        n_items: inst.n_items,
        v: inst.exposure_weights.clone(),
        groups,
    };
    let header_json =
        serde_json::to_string(&header).map_err(|e| Error::Io(std::io::Error::other(e)))?;
    writeln!(w, "{header_json}")?;
    write_matrix(w, &inst.mu_user)?;
    if let Some(mu_item) = &inst.mu_item {
        writeln!(w)?;
        write_matrix(w, mu_item)?;
    }
    Ok(())
}

fn write_matrix<W: Write>(w: &mut W, m: &Matrix) -> Result<()> {
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| format!("{x}")).collect();
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

pub fn load_instance(path: &Path) -> Result<ProblemInstance> {
    let file = File::open(path)?;
    read_instance(&mut BufReader::new(file))
}

pub fn read_instance<R: BufRead>(r: &mut R) -> Result<ProblemInstance> {
    let lines: Vec<String> = r.lines().collect::<std::io::Result<_>>()?;
    if lines.is_empty() {
        return Err(Error::Parse {
            line: 1,
            col: None,
            msg: "empty file".into(),
        });
    }
    let header: FileHeader = serde_json::from_str(&lines[0]).map_err(|e| Error::Parse {
        line: 1,
        col: None,
        msg: format!("bad header: {e}"),
    })?;
    let mode = Mode::parse(&header.mode).ok_or_else(|| Error::Parse {
        line: 1,
        col: None,
        msg: format!("unknown mode \"{}\"", header.mode),
    })?;

    let parse_row = |line_no: usize, expect_cols: usize| -> Result<Vec<f64>> {
        let line = lines.get(line_no - 1).ok_or_else(|| Error::Parse {
            line: line_no,
            col: None,
            msg: "unexpected end of file inside matrix block".into(),
        })?;
        let mut row = Vec::with_capacity(expect_cols);
        for (c, cell) in line.split(',').enumerate() {
            let value: f64 = cell.trim().parse().map_err(|_| Error::Parse {
                line: line_no,
                col: Some(c + 1),
                msg: format!("not a number: \"{}\"", cell.trim()),
            })?;
            row.push(value);
        }
        if row.len() != expect_cols {
            return Err(Error::Parse {
                line: line_no,
                col: None,
                msg: format!("row has {} values, expected {expect_cols}", row.len()),
            });
        }
        Ok(row)
    };

    let mut line_no = 1usize;
    let mut mu_rows = Vec::with_capacity(header.n_users);
    for _ in 0..header.n_users {
        line_no += 1;
        mu_rows.push(parse_row(line_no, header.n_items)?);
    }
    let mu_user = Matrix::from_rows(mu_rows)?;

    let mu_item = if mode == Mode::TwoSidedPrefs {
        line_no += 1;
        match lines.get(line_no - 1) {
            Some(blank) if blank.trim().is_empty() => {}
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    col: None,
                    msg: "expected blank line before mu_item block".into(),
                })
            }
        }
        let mut rows = Vec::with_capacity(header.n_items);
        for _ in 0..header.n_items {
            line_no += 1;
            rows.push(parse_row(line_no, header.n_users)?);
        }
        Some(Matrix::from_rows(rows)?)
    } else {
        None
    };

    for (extra, line) in lines.iter().enumerate().skip(line_no) {
        if !line.trim().is_empty() {
            return Err(Error::Parse {
                line: extra + 1,
                col: None,
                msg: "unexpected trailing content".into(),
            });
        }
    }

    let mut inst = ProblemInstance::new(mode, mu_user, mu_item, header.v)?;
    if let Some(g) = header.groups {
        let shift = |groups: Vec<Vec<usize>>, side: &str| -> Result<Vec<Vec<usize>>> {
            groups
                .into_iter()
                .map(|members| {
                    members
                        .into_iter()
                        .map(|m| {
                            m.checked_sub(1).ok_or_else(|| Error::Parse {
                                line: 1,
                                col: None,
                                msg: format!("{side} group indices are 1-based; got 0"),
                            })
                        })
                        .collect()
                })
                .collect()
        };
        inst = inst.with_groups(Groups {
            user_groups: shift(g.user_groups, "user")?,
            item_groups: shift(g.item_groups, "item")?,
        })?;
    }
    Ok(inst)
}
