//! Utility profiles of stochastic rankings, item qualities, and exposure
//! targets.
//!
//! Two profile views exist. The *standard* view is mode-aware: user-side
//! utilities plus item-side utilities (exposure in one-sided mode, preference
//! weighted with two-sided preferences, merged into a single two-sided value
//! per individual in reciprocal mode). The *exposure* view ignores the
//! reciprocal structure and reports user-side utilities alongside raw item
//! exposures; the exposure-based penalties optimize this view in every mode.

use crate::error::{Error, Result};
use crate::model::{
    DeterministicRanking, Mode, ProblemInstance, StochasticRanking, UtilityProfile,
};

/// Which utility vector an objective consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    /// Mode-aware utilities (two-sided in reciprocal mode).
    Standard,
    /// User-side utilities and raw item exposures, in every mode.
    Exposure,
}

fn check_ranking(p: &StochasticRanking, inst: &ProblemInstance) -> Result<()> {
    if p.n_users() != inst.n_users {
        return Err(Error::DimensionMismatch(format!(
            "ranking has {} users, instance has {}",
            p.n_users(),
            inst.n_users
        )));
    }
    Ok(())
}

/// Utility profile of a single deterministic ranking (weight one).
///
/// This is the solver's fast path: one evaluation per Frank-Wolfe vertex,
/// O(n_users * K).
pub fn vertex_profile(
    ranking: &DeterministicRanking,
    inst: &ProblemInstance,
    kind: ProfileKind,
) -> Result<UtilityProfile> {
    if ranking.n_users() != inst.n_users {
        return Err(Error::DimensionMismatch(format!(
            "ranking has {} users, instance has {}",
            ranking.n_users(),
            inst.n_users
        )));
    }
    let v = &inst.exposure_weights;
    let reciprocal_standard = inst.mode == Mode::Reciprocal && kind == ProfileKind::Standard;
    let (len, split) = if reciprocal_standard {
        (inst.n_users, inst.n_users)
    } else {
        (inst.n_users + inst.n_items, inst.n_users)
    };
    let mut values = vec![0.0; len];
    for i in 0..inst.n_users {
        let list = ranking.list(i);
        if list.len() > v.len() {
            return Err(Error::DimensionMismatch(format!(
                "user {i} ranks {} items but only {} exposure weights are defined",
                list.len(),
                v.len()
            )));
        }
        for (rank, &item) in list.iter().enumerate() {
            let j = item as usize;
            if j >= inst.n_items {
                return Err(Error::IndexOutOfRange {
                    what: "item",
                    index: j,
                    len: inst.n_items,
                });
            }
            let w = v[rank];
            values[i] += inst.mu(i, j) * w;
            if reciprocal_standard {
                // item-side part of j's two-sided utility (i recommends j)
                values[j] += inst.mu(j, i) * w;
            } else {
                let item_gain = match kind {
                    ProfileKind::Exposure => w,
                    ProfileKind::Standard => inst.mu_rev(j, i) * w,
                };
                values[split + j] += item_gain;
            }
        }
    }
    UtilityProfile::new(values, split)
}

/// Utility profile for a chosen view; linear in the atom weights.
pub fn profile_for(
    p: &StochasticRanking,
    inst: &ProblemInstance,
    kind: ProfileKind,
) -> Result<UtilityProfile> {
    check_ranking(p, inst)?;
    let mut acc: Option<Vec<f64>> = None;
    let mut split = 0;
    for atom in p.atoms() {
        let up = vertex_profile(&atom.ranking, inst, kind)?;
        split = up.side_split();
        match &mut acc {
            None => {
                acc = Some(up.values().iter().map(|x| x * atom.weight).collect());
            }
            Some(values) => {
                if values.len() != up.len() {
                    return Err(Error::DimensionMismatch(
                        "atoms produce profiles of different lengths".into(),
                    ));
                }
                for (a, x) in values.iter_mut().zip(up.values()) {
                    *a += atom.weight * x;
                }
            }
        }
    }
    let values =
        acc.ok_or_else(|| Error::InvalidDimensions("stochastic ranking has no atoms".into()))?;
    UtilityProfile::new(values, split)
}

/// Standard (mode-aware) utility profile: `u_i = sum_j mu_ij P_ij.v` for
/// users; `u_j = sum_i mu_ji P_ij.v` for items; in reciprocal mode each
/// individual gets the sum of both parts.
pub fn utility_profile(p: &StochasticRanking, inst: &ProblemInstance) -> Result<UtilityProfile> {
    profile_for(p, inst, ProfileKind::Standard)
}

/// User-side utilities plus raw item exposures `e_j = sum_i P_ij.v`.
pub fn exposure_profile(p: &StochasticRanking, inst: &ProblemInstance) -> Result<UtilityProfile> {
    profile_for(p, inst, ProfileKind::Exposure)
}

/// Item qualities `q_j = sum_i mu_ij`.
pub fn item_qualities(inst: &ProblemInstance) -> Vec<f64> {
    let mut q = vec![0.0; inst.n_items];
    for i in 0..inst.n_users {
        for (j, qj) in q.iter_mut().enumerate() {
            *qj += inst.mu(i, j);
        }
    }
    q
}

/// How target exposures are distributed over items.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetKind {
    /// `t_j = E / |I|` for every item.
    Equal,
    /// `t_j = q_j * E / Q`, exposure proportional to quality.
    QualityWeighted,
}

/// Per-item exposure targets together with the totals they are derived from.
#[derive(Debug, Clone, PartialEq)]
pub struct ExposureTargets {
    pub targets: Vec<f64>,
    pub total_exposure: f64,
    pub total_quality: f64,
    pub qualities: Vec<f64>,
}

/// Computes per-item exposure targets summing to the total exposure
/// `E = |N| * ||v||_1`.
pub fn exposure_targets(inst: &ProblemInstance, kind: TargetKind) -> Result<ExposureTargets> {
    let qualities = item_qualities(inst);
    let total_exposure = inst.total_exposure();
    let total_quality: f64 = qualities.iter().sum();
    let targets = match kind {
        TargetKind::Equal => vec![total_exposure / inst.n_items as f64; inst.n_items],
        TargetKind::QualityWeighted => {
            if total_quality <= 0.0 {
                return Err(Error::ZeroTotalQuality);
            }
            qualities
                .iter()
                .map(|q| q * total_exposure / total_quality)
                .collect()
        }
    };
    Ok(ExposureTargets {
        targets,
        total_exposure,
        total_quality,
        qualities,
    })
}
