//! Shared helpers for the integration suites: finite-difference gradient
//! checks, exhaustive ranking enumeration, and seeded random profiles.
//! Everything here is deliberately independent of the library's solver path.

#![allow(dead_code)]

use fairrank::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Central finite differences of `value` against `grad`, step 1e-6 per
/// component. Returns the worst relative error.
pub fn fd_gradient_error<F>(value: F, point: &[f64], grad: &[f64]) -> f64
where
    F: Fn(&[f64]) -> f64,
{
    let h = 1e-6;
    let mut worst: f64 = 0.0;
    let mut x = point.to_vec();
    for i in 0..point.len() {
        let orig = x[i];
        x[i] = orig + h;
        let up = value(&x);
        x[i] = orig - h;
        let down = value(&x);
        x[i] = orig;
        let fd = (up - down) / (2.0 * h);
        let denom = grad[i].abs().max(1e-8);
        worst = worst.max((fd - grad[i]).abs() / denom);
    }
    worst
}

/// Random utility profile with entries in [0.1, 10].
pub fn random_profile(rng: &mut ChaCha8Rng, n_users: usize, n_items: usize) -> UtilityProfile {
    let len = n_users + n_items;
    let values: Vec<f64> = (0..len).map(|_| rng.gen_range(0.1..10.0)).collect();
    UtilityProfile::new(values, n_users).unwrap()
}

/// Random reciprocal profile (users only) with entries in [0.1, 10].
pub fn random_reciprocal_profile(rng: &mut ChaCha8Rng, n: usize) -> UtilityProfile {
    let values: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..10.0)).collect();
    UtilityProfile::new(values, n).unwrap()
}

/// All ordered k-tuples of distinct items from 0..n (the deterministic
/// top-k rankings of one user).
pub fn k_permutations(n: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    let mut used = vec![false; n];
    fn recurse(
        n: usize,
        k: usize,
        current: &mut Vec<u32>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for j in 0..n {
            if !used[j] {
                used[j] = true;
                current.push(j as u32);
                recurse(n, k, current, used, out);
                current.pop();
                used[j] = false;
            }
        }
    }
    recurse(n, k, &mut current, &mut used, &mut out);
    out
}

/// Per-user candidate lists for a deterministic ranking, excluding
/// self-recommendation in reciprocal mode.
pub fn per_user_rankings(inst: &ProblemInstance, k: usize) -> Vec<Vec<Vec<u32>>> {
    (0..inst.n_users)
        .map(|i| {
            k_permutations(inst.n_items, k)
                .into_iter()
                .filter(|list| inst.mode != Mode::Reciprocal || !list.contains(&(i as u32)))
                .collect()
        })
        .collect()
}

/// `<P, X>` for a deterministic ranking, where `X_ijk = scores[i][j] * v_k`.
pub fn tensor_dot(lists: &[Vec<u32>], scores: &[Vec<f64>], v: &[f64]) -> f64 {
    let mut total = 0.0;
    for (i, list) in lists.iter().enumerate() {
        for (rank, &j) in list.iter().enumerate() {
            total += scores[i][j as usize] * v[rank];
        }
    }
    total
}

/// Oracle scores `a_ij = grad_i mu_ij + grad_j mu_ji` computed independently
/// of the library (standard profile view).
pub fn reference_scores(inst: &ProblemInstance, grad: &[f64]) -> Vec<Vec<f64>> {
    (0..inst.n_users)
        .map(|i| {
            (0..inst.n_items)
                .map(|j| {
                    if inst.mode == Mode::Reciprocal {
                        if i == j {
                            return f64::NEG_INFINITY;
                        }
                        (grad[i] + grad[j]) * inst.mu(i, j)
                    } else {
                        grad[i] * inst.mu(i, j) + grad[inst.n_users + j] * inst.mu_rev(j, i)
                    }
                })
                .collect()
        })
        .collect()
}

/// Exhaustive maximum of `<P, X>` over all deterministic rankings (cartesian
/// product of per-user candidate lists), evaluated user by user so the float
/// arithmetic matches the oracle's.
pub fn brute_force_vertex_value(inst: &ProblemInstance, scores: &[Vec<f64>], k: usize) -> f64 {
    let v = &inst.exposure_weights[..k];
    let mut total = 0.0;
    for (i, candidates) in per_user_rankings(inst, k).iter().enumerate() {
        let mut best = f64::NEG_INFINITY;
        for list in candidates {
            let mut value = 0.0;
            for (rank, &j) in list.iter().enumerate() {
                value += scores[i][j as usize] * v[rank];
            }
            if value > best {
                best = value;
            }
        }
        total += best;
    }
    total
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Best total profile value over the cartesian product of per-user
/// candidate rankings, with the winning lists.
pub fn brute_force_best_total(inst: &ProblemInstance, k: usize) -> (f64, Vec<Vec<u32>>) {
    let candidates = per_user_rankings(inst, k);
    let mut current: Vec<Vec<u32>> = vec![Vec::new(); inst.n_users];
    let mut best = f64::NEG_INFINITY;
    let mut best_lists: Vec<Vec<u32>> = Vec::new();
    fn recurse(
        inst: &ProblemInstance,
        candidates: &[Vec<Vec<u32>>],
        user: usize,
        current: &mut Vec<Vec<u32>>,
        best: &mut f64,
        best_lists: &mut Vec<Vec<u32>>,
    ) {
        if user == inst.n_users {
            let p = StochasticRanking::deterministic(DeterministicRanking::new(current.clone()));
            let total: f64 = utility_profile(&p, inst).unwrap().values().iter().sum();
            if total > *best {
                *best = total;
                *best_lists = current.clone();
            }
            return;
        }
        for list in &candidates[user] {
            current[user] = list.clone();
            recurse(inst, candidates, user + 1, current, best, best_lists);
        }
    }
    recurse(
        inst,
        &candidates,
        0,
        &mut current,
        &mut best,
        &mut best_lists,
    );
    (best, best_lists)
}
