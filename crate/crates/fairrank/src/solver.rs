//! Frank-Wolfe maximization of a concave objective over the ranking polytope.
//!
//! The linear maximization oracle is one top-K sort per user: with the chain
//! rule, the gradient of `F(u(P))` with respect to `P_ijk` factors as
//! `(dF/du_i * mu_ij + dF/du_j * mu_ji) * v_k`, so the best vertex ranks items
//! by descending score `a_ij = dF/du_i * mu_ij + dF/du_j * mu_ji` (the
//! rearrangement inequality). Iterates are stored as convex combinations of
//! these vertices; utilities are updated by linearity instead of re-evaluating
//! the whole combination, so one iteration costs one fresh vertex evaluation.
//!
//! Determinism: ties in scores break on ascending item index, so identical
//! inputs produce identical iterates, vertex sequences, and traces.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::model::{
    Atom, DeterministicRanking, Mode, ProblemInstance, StochasticRanking, UtilityProfile,
};
use crate::objectives::Objective;
use crate::utility::{vertex_profile, ProfileKind};

/// Solver configuration. Tie-breaking is not configurable: scores always
/// break ties on ascending item index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Frank-Wolfe iterations.
    pub iterations: usize,
    /// Recommendation slots K; defaults to the length of the instance's `v`.
    pub slots: Option<usize>,
    /// Stop once the duality gap falls below this value. Off by default so
    /// traces are comparable across objectives.
    pub gap_tolerance: Option<f64>,
    /// Record a trace row every this many iterations (the first and last
    /// iterations are always recorded).
    pub trace_every: usize,
}

impl Default for SolverConfig {
    fn default() -> SolverConfig {
        SolverConfig {
            iterations: 5000,
            slots: None,
            gap_tolerance: None,
            trace_every: 100,
        }
    }
}

impl SolverConfig {
    pub fn with_iterations(mut self, iterations: usize) -> SolverConfig {
        self.iterations = iterations;
        self
    }

    pub fn with_slots(mut self, slots: usize) -> SolverConfig {
        self.slots = Some(slots);
        self
    }
}

/// One recorded iteration: the objective value at the iterate the gap
/// certifies, the gap itself, and the step that was then taken.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub iter: usize,
    pub objective: f64,
    pub gap: f64,
    pub gamma: f64,
    pub elapsed_ms: f64,
}

/// Convergence trace plus final certificates.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverTrace {
    pub records: Vec<TraceRecord>,
    pub iterations_run: usize,
    pub final_objective: f64,
    pub final_gap: f64,
    /// (B, U) of the O(BU/t) bound when the objective exposes them; B is
    /// computed at utilities offset by eta.
    pub curvature_bound: Option<(f64, f64)>,
    pub wall_ms: f64,
}

impl SolverTrace {
    /// CSV with columns `iter,objective,gap,gamma,elapsed_ms`.
    pub fn write_csv<W: std::io::Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "iter,objective,gap,gamma,elapsed_ms")?;
        for r in &self.records {
            writeln!(
                w,
                "{},{},{},{},{}",
                r.iter, r.objective, r.gap, r.gamma, r.elapsed_ms
            )?;
        }
        Ok(())
    }
}

/// Result of a solver run.
#[derive(Debug, Clone)]
pub struct Solution {
    /// Final iterate with duplicate atoms merged.
    pub ranking: StochasticRanking,
    /// Utility profile of the final iterate, in the objective's view.
    pub profile: UtilityProfile,
    pub trace: SolverTrace,
}

fn expected_grad_len(inst: &ProblemInstance, kind: ProfileKind) -> usize {
    match (kind, inst.mode) {
        (ProfileKind::Standard, Mode::Reciprocal) => inst.n_users,
        _ => inst.n_users + inst.n_items,
    }
}

fn resolve_slots(inst: &ProblemInstance, config: &SolverConfig) -> Result<usize> {
    let k = config.slots.unwrap_or_else(|| inst.slots());
    if k == 0 {
        return Err(Error::InvalidDimensions(
            "slot count must be at least 1".into(),
        ));
    }
    if k > inst.slots() {
        return Err(Error::InvalidDimensions(format!(
            "{k} slots requested but the instance defines {} exposure weights",
            inst.slots()
        )));
    }
    if k > inst.max_slots() {
        return Err(Error::InvalidDimensions(format!(
            "{k} slots requested but only {} items are rankable",
            inst.max_slots()
        )));
    }
    Ok(k)
}

/// Fills `scores` with `a_ij = grad_i * mu_ij + grad_j * mu_ji` for one user.
/// In reciprocal mode the user itself is excluded from the candidates.
fn score_user(
    inst: &ProblemInstance,
    grad: &[f64],
    kind: ProfileKind,
    user: usize,
    scores: &mut Vec<(f64, u32)>,
) {
    scores.clear();
    let g_user = grad[user];
    let row = inst.mu_user.row(user);
    let split = match (kind, inst.mode) {
        (ProfileKind::Standard, Mode::Reciprocal) => 0,
        _ => inst.n_users,
    };
    for (j, &mu_ij) in row.iter().enumerate() {
        if inst.mode == Mode::Reciprocal && j == user {
            continue;
        }
        let s = match (kind, inst.mode) {
            (ProfileKind::Standard, Mode::Reciprocal) => (g_user + grad[j]) * mu_ij,
            (ProfileKind::Standard, Mode::OneSided) => g_user * mu_ij + grad[split + j],
            (ProfileKind::Standard, Mode::TwoSidedPrefs) => {
                g_user * mu_ij + grad[split + j] * inst.mu_rev(j, user)
            }
            (ProfileKind::Exposure, _) => g_user * mu_ij + grad[split + j],
        };
        scores.push((s, j as u32));
    }
}

/// Descending score, ties on ascending item index.
#[inline]
fn score_order(a: &(f64, u32), b: &(f64, u32)) -> std::cmp::Ordering {
    b.0.total_cmp(&a.0).then_with(|| a.1.cmp(&b.1))
}

/// Selects the top `k` candidates and sorts them; deterministic for any input.
fn top_k(scores: &mut Vec<(f64, u32)>, k: usize) -> Vec<u32> {
    debug_assert!(k <= scores.len());
    if k < scores.len() {
        scores.select_nth_unstable_by(k - 1, score_order);
        scores.truncate(k);
    }
    scores.sort_unstable_by(score_order);
    scores.iter().map(|&(_, j)| j).collect()
}

/// The Frank-Wolfe linear oracle: per user, the top-K items by descending
/// score `a_ij = grad_i * mu_ij + grad_j * mu_ji`. The returned vertex
/// maximizes `<P, grad of F composed with u>` over the ranking polytope.
pub fn linear_oracle(
    inst: &ProblemInstance,
    grad: &[f64],
    k: usize,
    kind: ProfileKind,
) -> Result<DeterministicRanking> {
    let expected = expected_grad_len(inst, kind);
    if grad.len() != expected {
        return Err(Error::DimensionMismatch(format!(
            "gradient has {} entries, expected {expected}",
            grad.len()
        )));
    }
    if let Some(idx) = grad.iter().position(|g| !g.is_finite()) {
        return Err(Error::NonFiniteGradient { index: idx });
    }
    if k > inst.max_slots() {
        return Err(Error::InvalidDimensions(format!(
            "{k} slots requested but only {} items are rankable",
            inst.max_slots()
        )));
    }
    let mut lists = Vec::with_capacity(inst.n_users);
    let mut scores = Vec::with_capacity(inst.n_items);
    for i in 0..inst.n_users {
        score_user(inst, grad, kind, i, &mut scores);
        lists.push(top_k(&mut scores, k));
    }
    Ok(DeterministicRanking::new(lists))
}

/// The utilitarian vertex: per user, items sorted by descending
/// `mu_ij + mu_ji` (ties ascending), truncated to `k` slots. With one-sided
/// preferences or symmetric mutual preferences this is the plain sort by
/// descending `mu_ij`.
pub fn utilitarian_vertex(inst: &ProblemInstance, k: usize) -> Result<DeterministicRanking> {
    let ones = vec![1.0; expected_grad_len(inst, ProfileKind::Standard)];
    linear_oracle(inst, &ones, k, ProfileKind::Standard)
}

/// [`utilitarian_vertex`] packaged as a single-atom stochastic ranking over
/// the instance's full slot count.
pub fn utilitarian_ranking(inst: &ProblemInstance) -> Result<StochasticRanking> {
    inst.validate()?;
    Ok(StochasticRanking::deterministic(utilitarian_vertex(
        inst,
        inst.slots(),
    )?))
}

/// Runs Frank-Wolfe from the utilitarian ranking.
///
/// Per iteration t: evaluate the objective at the current utilities, ask the
/// oracle for the best vertex, compute the duality gap
/// `g_t = <grad, u(vertex) - u(P)>`, then blend with step `gamma = 2/(t+2)`.
/// The gap upper-bounds the suboptimality of the current iterate for concave
/// objectives.
pub fn solve(
    inst: &ProblemInstance,
    objective: &dyn Objective,
    config: &SolverConfig,
) -> Result<Solution> {
    inst.validate()?;
    let k = resolve_slots(inst, config)?;
    if config.iterations == 0 {
        return Err(Error::InvalidDimensions(
            "iterations must be at least 1".into(),
        ));
    }
    if config.trace_every == 0 {
        return Err(Error::InvalidDimensions(
            "trace_every must be at least 1".into(),
        ));
    }
    let kind = objective.profile_kind();
    let start = Instant::now();

    let v0 = utilitarian_vertex(inst, k)?;
    let mut atoms = vec![Atom {
        weight: 1.0,
        ranking: v0.clone(),
    }];
    let mut u = vertex_profile(&v0, inst, kind)?;

    let mut records: Vec<TraceRecord> = Vec::new();
    let mut final_gap = f64::NAN;
    let mut iterations_run = 0;
    for t in 1..=config.iterations {
        let ev = objective
            .evaluate(&u)
            .map_err(|e| Error::ObjectiveEvaluationFailure(e.to_string()))?;
        let vertex = linear_oracle(inst, &ev.grad, k, kind)?;
        let u_vertex = vertex_profile(&vertex, inst, kind)?;
        let gap: f64 = ev
            .grad
            .iter()
            .zip(u_vertex.values().iter().zip(u.values()))
            .map(|(g, (uv, uc))| g * (uv - uc))
            .sum();
        let gamma = 2.0 / (t as f64 + 2.0);
        final_gap = gap;
        iterations_run = t;

        let stop = config.gap_tolerance.is_some_and(|tol| gap <= tol);
        if t == 1 || t == config.iterations || t % config.trace_every == 0 || stop {
            records.push(TraceRecord {
                iter: t,
                objective: ev.value,
                gap,
                gamma,
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            });
        }
        if stop {
            break;
        }

        for atom in atoms.iter_mut() {
            atom.weight *= 1.0 - gamma;
        }
        match atoms.last_mut() {
            Some(last) if last.ranking == vertex => last.weight += gamma,
            _ => atoms.push(Atom {
                weight: gamma,
                ranking: vertex,
            }),
        }
        let blended: Vec<f64> = u
            .values()
            .iter()
            .zip(u_vertex.values())
            .map(|(a, b)| (1.0 - gamma) * a + gamma * b)
            .collect();
        u = UtilityProfile::new(blended, u.side_split())?;
    }

    let final_objective = objective
        .evaluate(&u)
        .map_err(|e| Error::ObjectiveEvaluationFailure(e.to_string()))?
        .value;
    let ranking = StochasticRanking::from_atoms(atoms).merged();
    let trace = SolverTrace {
        records,
        iterations_run,
        final_objective,
        final_gap,
        curvature_bound: objective.curvature_bound(inst),
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok(Solution {
        ranking,
        profile: u,
        trace,
    })
}
