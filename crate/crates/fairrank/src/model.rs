//! Core domain types: problem instances, deterministic and stochastic
//! rankings, utility profiles, and their validation.
//!
//! Ranking tensors are never materialized as dense `n x n x K` arrays. A
//! stochastic ranking is stored as a convex combination of deterministic
//! per-user top-K rankings, which is exactly the representation the solver
//! produces. Item and user indices are 0-based everywhere in memory; file
//! formats and CLI output are 1-based.

use crate::error::{Error, Result};

/// Tolerance for the "atom weights sum to one" invariant.
pub const WEIGHT_SUM_TOL: f64 = 1e-9;

/// Recommendation mode of a problem instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Items are passive; item-side utility is exposure.
    OneSided,
    /// Items have their own preferences over users (`mu_item`).
    TwoSidedPrefs,
    /// Users are the items (dating, friend suggestion); utilities are two-sided.
    Reciprocal,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::OneSided => "one-sided",
            Mode::TwoSidedPrefs => "two-sided-prefs",
            Mode::Reciprocal => "reciprocal",
        }
    }

    pub fn parse(s: &str) -> Option<Mode> {
        match s {
            "one-sided" => Some(Mode::OneSided),
            "two-sided-prefs" => Some(Mode::TwoSidedPrefs),
            "reciprocal" => Some(Mode::Reciprocal),
            _ => None,
        }
    }
}

/// Dense row-major matrix of non-negative preference values.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Matrix> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n_cols {
                return Err(Error::InvalidDimensions(format!(
                    "row {i} has {} columns, expected {n_cols}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix {
            rows: n_rows,
            cols: n_cols,
            data,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.cols + j] = value;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Frobenius norm of the entrywise difference.
    pub fn frobenius_distance(&self, other: &Matrix) -> Result<f64> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let sum: f64 = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        Ok(sum.sqrt())
    }
}

/// Possibly overlapping index sets over users and items.
///
/// An empty list on one side means "no grouping" (each individual is its own
/// group); a non-empty list must cover its full index range.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Groups {
    pub user_groups: Vec<Vec<usize>>,
    pub item_groups: Vec<Vec<usize>>,
}

/// A two-sided fair-ranking problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    pub n_users: usize,
    pub n_items: usize,
    pub mode: Mode,
    /// `mu_user.get(i, j)` is the value of item `j` to user `i`.
    pub mu_user: Matrix,
    /// Value of user `i` to item `j`, stored as `mu_item.get(j, i)`.
    /// Present only for `TwoSidedPrefs`; in `OneSided` it is implicitly 1 and
    /// in `Reciprocal` it equals `mu_user` by symmetry.
    pub mu_item: Option<Matrix>,
    /// Non-increasing positional weights; its length is the slot count K.
    /// A single vector is shared by all users; per-user weights would slot in
    /// here without touching the solver, which only reads them per rank.
    pub exposure_weights: Vec<f64>,
    pub groups: Option<Groups>,
}

impl ProblemInstance {
    pub fn new(
        mode: Mode,
        mu_user: Matrix,
        mu_item: Option<Matrix>,
        exposure_weights: Vec<f64>,
    ) -> Result<ProblemInstance> {
        let inst = ProblemInstance {
            n_users: mu_user.rows(),
            n_items: mu_user.cols(),
            mode,
            mu_user,
            mu_item,
            exposure_weights,
            groups: None,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn with_groups(mut self, groups: Groups) -> Result<ProblemInstance> {
        self.groups = Some(groups);
        self.validate()?;
        Ok(self)
    }

    /// Number of recommendation slots K (the length of `v`).
    pub fn slots(&self) -> usize {
        self.exposure_weights.len()
    }

    /// Value of item `j` to user `i`.
    #[inline]
    pub fn mu(&self, i: usize, j: usize) -> f64 {
        self.mu_user.get(i, j)
    }

    /// Value of user `i` to item `j` (`mu_ji`): 1 in one-sided mode,
    /// `mu_item[j][i]` with two-sided preferences, `mu[j][i]` in reciprocal mode.
    #[inline]
    pub fn mu_rev(&self, j: usize, i: usize) -> f64 {
        match self.mode {
            Mode::OneSided => 1.0,
            Mode::TwoSidedPrefs => self
                .mu_item
                .as_ref()
                .expect("validated TwoSidedPrefs instance has mu_item")
                .get(j, i),
            Mode::Reciprocal => self.mu_user.get(j, i),
        }
    }

    /// Length of the utility profile: users + items, or users only in
    /// reciprocal mode.
    pub fn profile_len(&self) -> usize {
        match self.mode {
            Mode::Reciprocal => self.n_users,
            _ => self.n_users + self.n_items,
        }
    }

    /// Total exposure `E = |N| * ||v||_1`.
    pub fn total_exposure(&self) -> f64 {
        self.n_users as f64 * self.exposure_weights.iter().sum::<f64>()
    }

    /// Largest number of slots a ranking may use: `n_items`, minus one in
    /// reciprocal mode where self-recommendation is excluded.
    pub fn max_slots(&self) -> usize {
        match self.mode {
            Mode::Reciprocal => self.n_items.saturating_sub(1),
            _ => self.n_items,
        }
    }

    pub fn validate(&self) -> Result<()> {
        validate_instance(self)
    }
}

/// Checks every `ProblemInstance` invariant, reporting the first violation.
pub fn validate_instance(inst: &ProblemInstance) -> Result<()> {
    if inst.n_users == 0 || inst.n_items == 0 {
        return Err(Error::InvalidDimensions(
            "instance needs at least one user and one item".into(),
        ));
    }
    if inst.mu_user.rows() != inst.n_users || inst.mu_user.cols() != inst.n_items {
        return Err(Error::InvalidDimensions(format!(
            "mu is {}x{}, expected {}x{}",
            inst.mu_user.rows(),
            inst.mu_user.cols(),
            inst.n_users,
            inst.n_items
        )));
    }
    if inst.exposure_weights.is_empty() {
        return Err(Error::InvalidDimensions(
            "exposure weights are empty".into(),
        ));
    }
    if inst.slots() > inst.max_slots() {
        return Err(Error::InvalidDimensions(format!(
            "{} slots but only {} rankable items",
            inst.slots(),
            inst.max_slots()
        )));
    }
    for i in 0..inst.n_users {
        for j in 0..inst.n_items {
            let v = inst.mu_user.get(i, j);
            if v.is_nan() || v < 0.0 {
                return Err(Error::NegativePreference {
                    row: i,
                    col: j,
                    value: v,
                });
            }
        }
    }
    let v = &inst.exposure_weights;
    if v[0] < 0.0 {
        return Err(Error::NonMonotoneWeights { index: 0 });
    }
    for k in 1..v.len() {
        if v[k] < 0.0 || v[k] > v[k - 1] {
            return Err(Error::NonMonotoneWeights { index: k });
        }
    }
    match inst.mode {
        Mode::OneSided => {
            if inst.mu_item.is_some() {
                return Err(Error::InvalidDimensions(
                    "one-sided instance must not carry mu_item".into(),
                ));
            }
        }
        Mode::TwoSidedPrefs => {
            let mu_item = inst.mu_item.as_ref().ok_or_else(|| {
                Error::InvalidDimensions("two-sided-prefs instance requires mu_item".into())
            })?;
            if mu_item.rows() != inst.n_items || mu_item.cols() != inst.n_users {
                return Err(Error::InvalidDimensions(format!(
                    "mu_item is {}x{}, expected {}x{}",
                    mu_item.rows(),
                    mu_item.cols(),
                    inst.n_items,
                    inst.n_users
                )));
            }
            for j in 0..inst.n_items {
                for i in 0..inst.n_users {
                    let v = mu_item.get(j, i);
                    if v.is_nan() || v < 0.0 {
                        return Err(Error::NegativePreference {
                            row: j,
                            col: i,
                            value: v,
                        });
                    }
                }
            }
        }
        Mode::Reciprocal => {
            if inst.n_users != inst.n_items {
                return Err(Error::InvalidDimensions(format!(
                    "reciprocal instance requires n_users == n_items (got {} and {})",
                    inst.n_users, inst.n_items
                )));
            }
            if inst.mu_item.is_some() {
                return Err(Error::InvalidDimensions(
                    "reciprocal instance must not carry mu_item".into(),
                ));
            }
            for i in 0..inst.n_users {
                for j in (i + 1)..inst.n_items {
                    if inst.mu_user.get(i, j) != inst.mu_user.get(j, i) {
                        return Err(Error::AsymmetricReciprocal { row: i, col: j });
                    }
                }
            }
        }
    }
    if let Some(groups) = &inst.groups {
        validate_groups(&groups.user_groups, inst.n_users, "user")?;
        let item_range = match inst.mode {
            Mode::Reciprocal => inst.n_users,
            _ => inst.n_items,
        };
        validate_groups(&groups.item_groups, item_range, "item")?;
    }
    Ok(())
}

fn validate_groups(groups: &[Vec<usize>], range: usize, side: &str) -> Result<()> {
    if groups.is_empty() {
        return Ok(());
    }
    let mut covered = vec![false; range];
    for (g, members) in groups.iter().enumerate() {
        if members.is_empty() {
            return Err(Error::InvalidGroups(format!("{side} group {g} is empty")));
        }
        for &m in members {
            if m >= range {
                return Err(Error::InvalidGroups(format!(
                    "{side} group {g} contains index {m} (range {range})"
                )));
            }
            covered[m] = true;
        }
    }
    if let Some(missing) = covered.iter().position(|c| !c) {
        return Err(Error::InvalidGroups(format!(
            "{side} groups do not cover index {missing}"
        )));
    }
    Ok(())
}

/// One top-K ranking per user; `lists[i]` holds the item shown to user `i`
/// at rank 1 first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeterministicRanking {
    lists: Vec<Vec<u32>>,
}

impl DeterministicRanking {
    pub fn new(lists: Vec<Vec<u32>>) -> DeterministicRanking {
        DeterministicRanking { lists }
    }

    pub fn n_users(&self) -> usize {
        self.lists.len()
    }

    pub fn list(&self, user: usize) -> &[u32] {
        &self.lists[user]
    }

    pub fn lists(&self) -> &[Vec<u32>] {
        &self.lists
    }

    /// Rank (0-based) of `item` in user `user`'s list, if present.
    pub fn rank_of(&self, user: usize, item: u32) -> Option<usize> {
        self.lists[user].iter().position(|&j| j == item)
    }

    /// Checks shape against an instance: every list has exactly `k` distinct
    /// in-range entries, and no self-recommendation in reciprocal mode.
    pub fn validate(&self, inst: &ProblemInstance, k: usize) -> Result<()> {
        if self.lists.len() != inst.n_users {
            return Err(Error::DimensionMismatch(format!(
                "ranking has {} users, instance has {}",
                self.lists.len(),
                inst.n_users
            )));
        }
        for (i, list) in self.lists.iter().enumerate() {
            if list.len() != k {
                return Err(Error::DimensionMismatch(format!(
                    "user {i} has {} ranked items, expected {k}",
                    list.len()
                )));
            }
            let mut seen = vec![false; inst.n_items];
            for &j in list {
                let j = j as usize;
                if j >= inst.n_items {
                    return Err(Error::IndexOutOfRange {
                        what: "item",
                        index: j,
                        len: inst.n_items,
                    });
                }
                if seen[j] {
                    return Err(Error::DimensionMismatch(format!(
                        "user {i} ranks item {j} twice"
                    )));
                }
                seen[j] = true;
                if inst.mode == Mode::Reciprocal && j == i {
                    return Err(Error::DimensionMismatch(format!(
                        "user {i} recommends itself in reciprocal mode"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A weighted deterministic ranking inside a stochastic ranking.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub weight: f64,
    pub ranking: DeterministicRanking,
}

/// Convex combination of deterministic rankings (the Frank-Wolfe iterate).
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticRanking {
    atoms: Vec<Atom>,
}

impl StochasticRanking {
    /// Single deterministic ranking with weight one.
    pub fn deterministic(ranking: DeterministicRanking) -> StochasticRanking {
        StochasticRanking {
            atoms: vec![Atom {
                weight: 1.0,
                ranking,
            }],
        }
    }

    pub fn from_atoms(atoms: Vec<Atom>) -> StochasticRanking {
        StochasticRanking { atoms }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn n_users(&self) -> usize {
        self.atoms.first().map_or(0, |a| a.ranking.n_users())
    }

    /// Convex blend `(1 - gamma) * self + gamma * other` (concatenating atoms;
    /// duplicates are not merged here).
    pub fn blend(&self, other: &StochasticRanking, gamma: f64) -> StochasticRanking {
        let mut atoms: Vec<Atom> = self
            .atoms
            .iter()
            .map(|a| Atom {
                weight: a.weight * (1.0 - gamma),
                ranking: a.ranking.clone(),
            })
            .collect();
        atoms.extend(other.atoms.iter().map(|a| Atom {
            weight: a.weight * gamma,
            ranking: a.ranking.clone(),
        }));
        StochasticRanking { atoms }
    }

    /// Coalesces atoms with identical rankings (first-occurrence order) and
    /// drops zero-weight atoms.
    pub fn merged(&self) -> StochasticRanking {
        let mut out: Vec<Atom> = Vec::new();
        for atom in &self.atoms {
            if atom.weight == 0.0 {
                continue;
            }
            match out.iter_mut().find(|a| a.ranking == atom.ranking) {
                Some(existing) => existing.weight += atom.weight,
                None => out.push(atom.clone()),
            }
        }
        StochasticRanking { atoms: out }
    }

    /// Validates atom weights and every atom's shape.
    pub fn validate(&self, inst: &ProblemInstance, k: usize) -> Result<()> {
        if self.atoms.is_empty() {
            return Err(Error::InvalidDimensions(
                "stochastic ranking has no atoms".into(),
            ));
        }
        let mut sum = 0.0;
        for atom in &self.atoms {
            if !(atom.weight > 0.0 && atom.weight <= 1.0 + WEIGHT_SUM_TOL) {
                return Err(Error::InvalidDimensions(format!(
                    "atom weight {} outside (0, 1]",
                    atom.weight
                )));
            }
            sum += atom.weight;
            atom.ranking.validate(inst, k)?;
        }
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidDimensions(format!(
                "atom weights sum to {sum}, expected 1"
            )));
        }
        Ok(())
    }
}

/// Expected exposure `P_ij . v` of item `j` to user `i` under a stochastic
/// ranking: the weight-averaged exposure weight of the rank `j` occupies,
/// zero when `j` is outside the top-K.
pub fn marginal_exposure(
    ranking: &StochasticRanking,
    inst: &ProblemInstance,
    user: usize,
    item: usize,
) -> Result<f64> {
    if user >= inst.n_users {
        return Err(Error::IndexOutOfRange {
            what: "user",
            index: user,
            len: inst.n_users,
        });
    }
    if item >= inst.n_items {
        return Err(Error::IndexOutOfRange {
            what: "item",
            index: item,
            len: inst.n_items,
        });
    }
    let v = &inst.exposure_weights;
    let mut total = 0.0;
    for atom in ranking.atoms() {
        if let Some(rank) = atom.ranking.rank_of(user, item as u32) {
            if rank < v.len() {
                total += atom.weight * v[rank];
            }
        }
    }
    Ok(total)
}

/// Vector of utilities, users first, then items (`side_split` marks the
/// boundary). Reciprocal profiles have users only (`side_split == len`).
#[derive(Debug, Clone, PartialEq)]
pub struct UtilityProfile {
    values: Vec<f64>,
    side_split: usize,
}

impl UtilityProfile {
    pub fn new(values: Vec<f64>, side_split: usize) -> Result<UtilityProfile> {
        if side_split > values.len() {
            return Err(Error::InvalidDimensions(format!(
                "side split {side_split} beyond profile length {}",
                values.len()
            )));
        }
        if let Some(idx) = values.iter().position(|v| v.is_nan() || *v < 0.0) {
            return Err(Error::NegativeUtility {
                index: idx,
                value: values[idx],
            });
        }
        Ok(UtilityProfile { values, side_split })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn side_split(&self) -> usize {
        self.side_split
    }

    /// User block (in reciprocal mode: the whole profile).
    pub fn users(&self) -> &[f64] {
        &self.values[..self.side_split]
    }

    /// Item block (empty in reciprocal mode).
    pub fn items(&self) -> &[f64] {
        &self.values[self.side_split..]
    }

    pub fn total_user_utility(&self) -> f64 {
        self.users().iter().sum()
    }
}
