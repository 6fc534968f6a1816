//! Concave objectives over utility profiles: the welfare function, the three
//! penalized baselines, the pairwise penalty, and group welfare.
//!
//! Every objective exposes its value together with the per-component
//! derivative dF/du_i. The solver turns that derivative into ranking scores
//! via the chain rule, so nothing here needs to know about ranking tensors.

use crate::error::{Error, Result};
use crate::model::{Mode, ProblemInstance, UtilityProfile};
use crate::utility::{exposure_targets, ProfileKind, TargetKind};

/// Value and gradient of an objective at a utility profile.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub grad: Vec<f64>,
}

/// A concave objective of a utility profile.
pub trait Objective {
    fn evaluate(&self, u: &UtilityProfile) -> Result<Evaluation>;

    /// Which utility view the objective is defined on.
    fn profile_kind(&self) -> ProfileKind;

    /// Human-readable name with parameters, for traces and summaries.
    fn descriptor(&self) -> String;

    /// Constants (B, U) of the O(BU/t) convergence bound, when the objective
    /// has a bounded second derivative over the feasible set. B is evaluated
    /// at utilities offset by eta, which is what makes it finite for
    /// alpha <= 0.
    fn curvature_bound(&self, inst: &ProblemInstance) -> Option<(f64, f64)> {
        let _ = inst;
        None
    }
}

/// The concave transform: x^alpha for alpha > 0, log(x) for alpha = 0,
/// -x^alpha for alpha < 0. Strictly increasing; concave for alpha <= 1.
pub fn psi(x: f64, alpha: f64) -> Result<f64> {
    if alpha > 0.0 {
        if x < 0.0 {
            return Err(Error::NonPositiveArgument { x, alpha });
        }
        Ok(x.powf(alpha))
    } else {
        if x <= 0.0 {
            return Err(Error::NonPositiveArgument { x, alpha });
        }
        if alpha == 0.0 {
            Ok(x.ln())
        } else {
            Ok(-x.powf(alpha))
        }
    }
}

/// Derivative of [`psi`] in x; strictly positive for x > 0.
pub fn psi_prime(x: f64, alpha: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::NonPositiveArgument { x, alpha });
    }
    if alpha == 0.0 {
        Ok(1.0 / x)
    } else {
        Ok(alpha.abs() * x.powf(alpha - 1.0))
    }
}

/// Second derivative magnitude of psi, used for the convergence constant B.
fn psi_second_abs(x: f64, alpha: f64) -> f64 {
    if alpha == 1.0 {
        0.0
    } else if alpha == 0.0 {
        1.0 / (x * x)
    } else {
        (alpha * (alpha - 1.0)).abs() * x.powf(alpha - 2.0)
    }
}

/// Parameters theta = (lambda, alpha1, alpha2) of the welfare function, plus
/// the smoothing offset eta applied inside psi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WelfareParams {
    /// Relative weight of the item side, in [0, 1].
    pub lambda: f64,
    /// Curvature on the user side (<= 1).
    pub alpha_user: f64,
    /// Curvature on the item side (<= 1); unused in reciprocal mode.
    pub alpha_item: f64,
    /// Smoothing offset: psi is evaluated at u + eta so that utilities of
    /// zero stay finite for alpha <= 0.
    pub eta: f64,
}

pub const DEFAULT_ETA: f64 = 1e-4;

impl WelfareParams {
    pub fn new(lambda: f64, alpha_user: f64, alpha_item: f64) -> WelfareParams {
        WelfareParams {
            lambda,
            alpha_user,
            alpha_item,
            eta: DEFAULT_ETA,
        }
    }

    pub fn with_eta(mut self, eta: f64) -> WelfareParams {
        self.eta = eta;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.lambda) {
            return Err(Error::UnsupportedTheta(format!(
                "lambda {} outside [0, 1]",
                self.lambda
            )));
        }
        if self.alpha_user > 1.0 || self.alpha_item > 1.0 {
            return Err(Error::UnsupportedTheta(format!(
                "alpha1 {} / alpha2 {} must be <= 1",
                self.alpha_user, self.alpha_item
            )));
        }
        if self.eta.is_nan() || self.eta <= 0.0 {
            return Err(Error::UnsupportedTheta(format!(
                "eta {} must be > 0",
                self.eta
            )));
        }
        Ok(())
    }

    /// Whether theta lies in the strictly concave region
    /// (0 < lambda < 1, alpha1 < 1, alpha2 < 1).
    pub fn is_strictly_concave(&self) -> bool {
        self.lambda > 0.0 && self.lambda < 1.0 && self.alpha_user < 1.0 && self.alpha_item < 1.0
    }
}

/// Welfare `W_theta(u) = (1 - lambda) sum_users psi(u_i + eta, alpha1) +
/// lambda sum_items psi(u_j + eta, alpha2)`; a reciprocal profile collapses
/// to a single sum with alpha1.
pub fn welfare(u: &UtilityProfile, params: &WelfareParams) -> Result<Evaluation> {
    params.validate()?;
    let eta = params.eta;
    let mut value = 0.0;
    let mut grad = vec![0.0; u.len()];
    if u.side_split() == u.len() {
        // reciprocal: users are the items
        for (i, &x) in u.values().iter().enumerate() {
            value += psi(x + eta, params.alpha_user)?;
            grad[i] = psi_prime(x + eta, params.alpha_user)?;
        }
    } else {
        let user_w = 1.0 - params.lambda;
        let item_w = params.lambda;
        for (i, &x) in u.users().iter().enumerate() {
            value += user_w * psi(x + eta, params.alpha_user)?;
            grad[i] = user_w * psi_prime(x + eta, params.alpha_user)?;
        }
        for (j, &x) in u.items().iter().enumerate() {
            value += item_w * psi(x + eta, params.alpha_item)?;
            grad[u.side_split() + j] = item_w * psi_prime(x + eta, params.alpha_item)?;
        }
    }
    Ok(Evaluation { value, grad })
}

/// [`welfare`] packaged as a solver objective.
#[derive(Debug, Clone)]
pub struct Welfare {
    pub params: WelfareParams,
}

impl Welfare {
    pub fn new(params: WelfareParams) -> Result<Welfare> {
        params.validate()?;
        Ok(Welfare { params })
    }
}

impl Objective for Welfare {
    fn evaluate(&self, u: &UtilityProfile) -> Result<Evaluation> {
        welfare(u, &self.params)
    }

    fn profile_kind(&self) -> ProfileKind {
        ProfileKind::Standard
    }

    fn descriptor(&self) -> String {
        format!(
            "welfare(lambda={}, alpha1={}, alpha2={}, eta={})",
            self.params.lambda, self.params.alpha_user, self.params.alpha_item, self.params.eta
        )
    }

    fn curvature_bound(&self, inst: &ProblemInstance) -> Option<(f64, f64)> {
        let eta = self.params.eta;
        let reciprocal = inst.mode == Mode::Reciprocal;
        let b = if reciprocal {
            psi_second_abs(eta, self.params.alpha_user)
        } else {
            let bu = (1.0 - self.params.lambda) * psi_second_abs(eta, self.params.alpha_user);
            let bi = self.params.lambda * psi_second_abs(eta, self.params.alpha_item);
            bu.max(bi)
        };
        let v = &inst.exposure_weights;
        let v1 = v[0];
        let v_l1: f64 = v.iter().sum();
        let mut sq_sum = 0.0;
        for i in 0..inst.n_users {
            let max_mu = inst.mu_user.row(i).iter().cloned().fold(0.0, f64::max);
            let mut cap = v_l1 * max_mu;
            if reciprocal {
                let received: f64 = (0..inst.n_items).map(|j| inst.mu(j, i)).sum();
                cap += v1 * received;
            }
            sq_sum += cap * cap;
        }
        if !reciprocal {
            for j in 0..inst.n_items {
                let received: f64 = (0..inst.n_users).map(|i| inst.mu_rev(j, i)).sum();
                let cap = v1 * received;
                sq_sum += cap * cap;
            }
        }
        Some((b, sq_sum))
    }
}

/// Which deviation the penalized baselines punish.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PenaltyKind {
    /// Item exposure should be proportional to quality.
    QualityWeighted,
    /// Item exposure should be equal across items.
    EqualExposure,
    /// Two-sided utilities should be equal (reciprocal mode only).
    EqualUtility,
}

impl PenaltyKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            PenaltyKind::QualityWeighted => "qua",
            PenaltyKind::EqualExposure => "expo",
            PenaltyKind::EqualUtility => "eq-util",
        }
    }
}

/// Parameters of the penalized objectives `sum_users u_i - beta sqrt(D + eps)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PenaltyParams {
    pub beta: f64,
    pub kind: PenaltyKind,
    /// Constant offset inside the square root; keeps the gradient defined at
    /// D = 0 where sqrt is otherwise non-differentiable.
    pub sqrt_eps: f64,
    /// Divide D by the number of individuals, as in the main-text form of the
    /// penalties. The unnormalized form omits the factor; the beta -> infinity
    /// limits are the same either way.
    pub normalize_by_n: bool,
}

pub const DEFAULT_SQRT_EPS: f64 = 1e-12;

impl PenaltyParams {
    pub fn new(kind: PenaltyKind, beta: f64) -> PenaltyParams {
        PenaltyParams {
            beta,
            kind,
            sqrt_eps: DEFAULT_SQRT_EPS,
            normalize_by_n: true,
        }
    }

    pub fn with_sqrt_eps(mut self, sqrt_eps: f64) -> PenaltyParams {
        self.sqrt_eps = sqrt_eps;
        self
    }

    pub fn with_normalize_by_n(mut self, normalize: bool) -> PenaltyParams {
        self.normalize_by_n = normalize;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.beta < 0.0 {
            return Err(Error::UnsupportedTheta(format!(
                "beta {} must be >= 0",
                self.beta
            )));
        }
        if self.sqrt_eps.is_nan() || self.sqrt_eps <= 0.0 {
            return Err(Error::UnsupportedTheta(format!(
                "sqrt_eps {} must be > 0",
                self.sqrt_eps
            )));
        }
        Ok(())
    }
}

/// A penalized baseline objective bound to one instance's targets.
///
/// Quality-weighted and equal-exposure penalties act on the exposure view of
/// the profile (user-side utilities + raw item exposures), which is also how
/// they extend to reciprocal tasks. Equal-utility acts on the two-sided
/// profile and only exists in reciprocal mode.
#[derive(Debug, Clone)]
pub struct PenalizedObjective {
    params: PenaltyParams,
    /// Per-item exposure targets (None for EqualUtility, which centers on the
    /// profile mean).
    targets: Option<Vec<f64>>,
    /// Number of individuals, for the 1/n normalization.
    population: usize,
}

impl PenalizedObjective {
    pub fn new(inst: &ProblemInstance, params: PenaltyParams) -> Result<PenalizedObjective> {
        params.validate()?;
        let targets = match params.kind {
            PenaltyKind::EqualUtility => {
                if inst.mode != Mode::Reciprocal {
                    return Err(Error::WrongModeForKind(
                        "equal-utility penalty requires a reciprocal instance".into(),
                    ));
                }
                None
            }
            PenaltyKind::EqualExposure => Some(exposure_targets(inst, TargetKind::Equal)?.targets),
            PenaltyKind::QualityWeighted => {
                Some(exposure_targets(inst, TargetKind::QualityWeighted)?.targets)
            }
        };
        Ok(PenalizedObjective {
            params,
            targets,
            population: inst.profile_len(),
        })
    }

    pub fn params(&self) -> &PenaltyParams {
        &self.params
    }

    pub fn targets(&self) -> Option<&[f64]> {
        self.targets.as_deref()
    }
}

impl Objective for PenalizedObjective {
    fn evaluate(&self, u: &UtilityProfile) -> Result<Evaluation> {
        penalized_objective(u, self.targets.as_deref(), &self.params, self.population)
    }

    fn profile_kind(&self) -> ProfileKind {
        match self.params.kind {
            PenaltyKind::EqualUtility => ProfileKind::Standard,
            _ => ProfileKind::Exposure,
        }
    }

    fn descriptor(&self) -> String {
        format!(
            "{}(beta={}, sqrt_eps={}, normalize_by_n={})",
            self.params.kind.as_str(),
            self.params.beta,
            self.params.sqrt_eps,
            self.params.normalize_by_n
        )
    }
}

/// `F(u) = sum_users u_i - beta sqrt(D(u) + sqrt_eps)` with D the squared
/// deviation of the item block from `targets` (or of all components from
/// their mean when `targets` is None).
pub fn penalized_objective(
    u: &UtilityProfile,
    targets: Option<&[f64]>,
    params: &PenaltyParams,
    population: usize,
) -> Result<Evaluation> {
    params.validate()?;
    let split = u.side_split();
    let n_dev = match targets {
        Some(t) => {
            if t.len() != u.items().len() {
                return Err(Error::DimensionMismatch(format!(
                    "{} targets for {} items",
                    t.len(),
                    u.items().len()
                )));
            }
            t.len()
        }
        None => {
            if split != u.len() {
                return Err(Error::WrongModeForKind(
                    "mean-centered penalty expects a reciprocal profile".into(),
                ));
            }
            u.len()
        }
    };
    let base: f64 = u.users().iter().sum();
    let mut grad = vec![0.0; u.len()];
    for g in grad.iter_mut().take(split) {
        *g = 1.0;
    }
    if params.beta == 0.0 {
        return Ok(Evaluation { value: base, grad });
    }

    let mut dev = vec![0.0; n_dev];
    match targets {
        Some(t) => {
            for (j, d) in dev.iter_mut().enumerate() {
                *d = u.items()[j] - t[j];
            }
        }
        None => {
            let mean: f64 = u.values().iter().sum::<f64>() / n_dev as f64;
            for (j, d) in dev.iter_mut().enumerate() {
                *d = u.values()[j] - mean;
            }
        }
    }
    let d_sq: f64 = dev.iter().map(|d| d * d).sum();
    let norm = if params.normalize_by_n {
        population as f64
    } else {
        1.0
    };
    let root = (d_sq / norm + params.sqrt_eps).sqrt();
    let value = base - params.beta * root;
    // d/du sqrt(D/norm + eps) = dev / (norm * root); for the mean-centered
    // penalty the centering terms cancel because the deviations sum to zero.
    let offset = match targets {
        Some(_) => split,
        None => 0,
    };
    for (j, d) in dev.iter().enumerate() {
        grad[offset + j] -= params.beta * d / (norm * root);
    }
    Ok(Evaluation { value, grad })
}

/// Pairwise exposure-quality penalty
/// `D'(u) = sum_{j,j'} |u_j / q_j - u_{j'} / q_{j'}|` over ordered pairs.
/// Analysis only; the solver optimizes the sqrt penalty instead.
pub fn pairwise_penalty(item_utilities: &[f64], qualities: &[f64]) -> Result<f64> {
    if item_utilities.len() != qualities.len() {
        return Err(Error::LengthMismatch {
            left: item_utilities.len(),
            right: qualities.len(),
        });
    }
    for (j, &q) in qualities.iter().enumerate() {
        if q <= 0.0 {
            return Err(Error::ZeroQuality { item: j });
        }
    }
    let ratios: Vec<f64> = item_utilities
        .iter()
        .zip(qualities)
        .map(|(u, q)| u / q)
        .collect();
    let mut total = 0.0;
    for a in &ratios {
        for b in &ratios {
            total += (a - b).abs();
        }
    }
    Ok(total)
}

/// Group welfare: member utilities are aggregated per (possibly overlapping)
/// group, psi is applied per group, and the gradient is chain-ruled back to
/// individuals.
#[derive(Debug, Clone)]
pub struct GroupWelfare {
    params: WelfareParams,
    user_groups: Vec<Vec<usize>>,
    item_groups: Vec<Vec<usize>>,
    reciprocal: bool,
}

impl GroupWelfare {
    pub fn new(inst: &ProblemInstance, params: WelfareParams) -> Result<GroupWelfare> {
        params.validate()?;
        let groups = inst.groups.as_ref().ok_or(Error::MissingGroups)?;
        let reciprocal = inst.mode == Mode::Reciprocal;
        let singleton = |n: usize| (0..n).map(|i| vec![i]).collect::<Vec<_>>();
        let user_groups = if groups.user_groups.is_empty() {
            singleton(inst.n_users)
        } else {
            groups.user_groups.clone()
        };
        let item_groups = if reciprocal {
            Vec::new()
        } else if groups.item_groups.is_empty() {
            singleton(inst.n_items)
        } else {
            groups.item_groups.clone()
        };
        Ok(GroupWelfare {
            params,
            user_groups,
            item_groups,
            reciprocal,
        })
    }
}

impl Objective for GroupWelfare {
    fn evaluate(&self, u: &UtilityProfile) -> Result<Evaluation> {
        group_welfare(
            u,
            &self.user_groups,
            &self.item_groups,
            &self.params,
            self.reciprocal,
        )
    }

    fn profile_kind(&self) -> ProfileKind {
        ProfileKind::Standard
    }

    fn descriptor(&self) -> String {
        format!(
            "group-welfare(lambda={}, alpha1={}, alpha2={}, eta={}, groups={}u/{}i)",
            self.params.lambda,
            self.params.alpha_user,
            self.params.alpha_item,
            self.params.eta,
            self.user_groups.len(),
            self.item_groups.len()
        )
    }
}

/// See [`GroupWelfare`]. `item_groups` is ignored for reciprocal profiles.
pub fn group_welfare(
    u: &UtilityProfile,
    user_groups: &[Vec<usize>],
    item_groups: &[Vec<usize>],
    params: &WelfareParams,
    reciprocal: bool,
) -> Result<Evaluation> {
    params.validate()?;
    let eta = params.eta;
    let mut value = 0.0;
    let mut grad = vec![0.0; u.len()];
    let (user_w, item_w) = if reciprocal {
        (1.0, 0.0)
    } else {
        (1.0 - params.lambda, params.lambda)
    };
    for members in user_groups {
        let mut total = 0.0;
        for &i in members {
            if i >= u.side_split() {
                return Err(Error::IndexOutOfRange {
                    what: "user",
                    index: i,
                    len: u.side_split(),
                });
            }
            total += u.users()[i];
        }
        value += user_w * psi(total + eta, params.alpha_user)?;
        let g = user_w * psi_prime(total + eta, params.alpha_user)?;
        for &i in members {
            grad[i] += g;
        }
    }
    if !reciprocal {
        let n_items = u.len() - u.side_split();
        for members in item_groups {
            let mut total = 0.0;
            for &j in members {
                if j >= n_items {
                    return Err(Error::IndexOutOfRange {
                        what: "item",
                        index: j,
                        len: n_items,
                    });
                }
                total += u.items()[j];
            }
            value += item_w * psi(total + eta, params.alpha_item)?;
            let g = item_w * psi_prime(total + eta, params.alpha_item)?;
            for &j in members {
                grad[u.side_split() + j] += g;
            }
        }
    }
    Ok(Evaluation { value, grad })
}
