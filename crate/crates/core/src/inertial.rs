//! Inertia allocation: distribute a resultant inertia budget `i_y` over the
//! components of a chain under four composition hypotheses about how
//! component off-centerings combine.
//!
//! The worst-case and random-means hypotheses are defined for arbitrary
//! incidence and feasibility coefficients. The shift hypotheses (every
//! component off-center by `k` standard deviations, or only `m` of `n`)
//! are defined for uniform chains only, where the closed forms below invert
//! their forward compositions exactly.

use crate::error::{Error, Result};
use crate::stack::AssemblyModel;

pub use crate::classical::AllocationEntry;

/// Composition hypothesis for inertia allocation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InertialHypothesis {
    /// Component inertia entirely due to off-centering, all offsets on the
    /// worst side: inertias add linearly.
    WorstCase,
    /// Off-centerings distributed at random so their cross terms cancel:
    /// inertias add in quadrature.
    RandomMeans,
    /// Every component systematically off-center by `delta = k * sigma`.
    SystematicShift { k: f64 },
    /// `m` of the `n` components off-center by `delta = k * sigma`, the rest
    /// centered.
    PartialShift { m: usize, k: f64 },
}

impl InertialHypothesis {
    pub fn label(&self) -> String {
        match self {
            InertialHypothesis::WorstCase => "inertial-h1".to_string(),
            InertialHypothesis::RandomMeans => "inertial-h2".to_string(),
            InertialHypothesis::SystematicShift { k } => format!("inertial-h3(k={k})"),
            InertialHypothesis::PartialShift { m, k } => format!("inertial-h4(m={m},k={k})"),
        }
    }
}

/// Result of an inertia allocation.
#[derive(Debug, Clone, PartialEq)]
pub struct InertiaAllocation {
    pub hypothesis: InertialHypothesis,
    pub per_component: Vec<AllocationEntry>,
    /// The resultant inertia the allocation guarantees.
    pub resultant_inertia: f64,
}

impl InertiaAllocation {
    /// Component inertia budgets in model order.
    pub fn inertias(&self) -> Vec<f64> {
        self.per_component.iter().map(|e| e.budget).collect()
    }

    /// Recompose the resultant inertia from the allocated budgets under this
    /// allocation's own hypothesis.
    pub fn recompose(&self, model: &AssemblyModel) -> Result<f64> {
        let inertias = self.inertias();
        match self.hypothesis {
            InertialHypothesis::WorstCase => worst_case_inertia(model, &inertias),
            InertialHypothesis::RandomMeans => random_means_inertia(model, &inertias),
            InertialHypothesis::SystematicShift { k } => {
                require_uniform(model, "systematic shift recomposition")?;
                Ok(systematic_shift_inertia(model.len(), k, inertias[0]))
            }
            InertialHypothesis::PartialShift { m, k } => {
                require_uniform(model, "partial shift recomposition")?;
                Ok(partial_shift_inertia(model.len(), m, k, inertias[0]))
            }
        }
    }
}

fn check_budget(i_y: f64) -> Result<()> {
    if !(i_y.is_finite() && i_y > 0.0) {
        return Err(Error::InvalidInput(format!(
            "resultant inertia budget must be finite and > 0, got {i_y}"
        )));
    }
    Ok(())
}

fn check_shift(k: f64) -> Result<()> {
    if !(k.is_finite() && k >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "shift ratio k must be finite and >= 0, got {k}"
        )));
    }
    Ok(())
}

fn check_influential(model: &AssemblyModel) -> Result<()> {
    if model.all_alpha_zero() {
        return Err(Error::DegenerateModel(
            "every incidence coefficient is zero; no component influences the resultant".into(),
        ));
    }
    Ok(())
}

fn require_uniform(model: &AssemblyModel, what: &str) -> Result<usize> {
    if !model.is_uniform() {
        return Err(Error::UnsupportedHypothesis(format!(
            "{what} is defined only for uniform chains (all alpha = 1, beta = 1)"
        )));
    }
    Ok(model.len())
}

fn build_entries(model: &AssemblyModel, scale: f64) -> Vec<AllocationEntry> {
    model
        .components
        .iter()
        .map(|c| AllocationEntry {
            name: c.name.clone(),
            alpha: c.alpha,
            beta: c.beta,
            budget: c.beta * scale,
            influential: c.alpha != 0.0,
        })
        .collect()
}

fn uniform_entries(model: &AssemblyModel, budget: f64) -> Vec<AllocationEntry> {
    model
        .components
        .iter()
        .map(|c| AllocationEntry {
            name: c.name.clone(),
            alpha: c.alpha,
            beta: c.beta,
            budget,
            influential: true,
        })
        .collect()
}

/// Worst-case inertia allocation:
/// `I_xi = beta_i * i_y / sum(|alpha_j| beta_j)`; uniform chains get `i_y / n`.
/// Only |alpha| enters the denominator: the sign of an incidence coefficient
/// orients the worst offset, never the budget.
pub fn worst_case(model: &AssemblyModel, i_y: f64) -> Result<InertiaAllocation> {
    check_budget(i_y)?;
    check_influential(model)?;
    let denom: f64 = model
        .components
        .iter()
        .map(|c| c.alpha.abs() * c.beta)
        .sum();
    Ok(InertiaAllocation {
        hypothesis: InertialHypothesis::WorstCase,
        per_component: build_entries(model, i_y / denom),
        resultant_inertia: i_y,
    })
}

/// Random-means inertia allocation:
/// `I_xi = beta_i * i_y / sqrt(sum(alpha_j^2 beta_j^2))`; uniform chains get
/// `i_y / sqrt(n)`.
pub fn random_means(model: &AssemblyModel, i_y: f64) -> Result<InertiaAllocation> {
    check_budget(i_y)?;
    check_influential(model)?;
    let denom = model
        .components
        .iter()
        .map(|c| c.alpha * c.alpha * c.beta * c.beta)
        .sum::<f64>()
        .sqrt();
    Ok(InertiaAllocation {
        hypothesis: InertialHypothesis::RandomMeans,
        per_component: build_entries(model, i_y / denom),
        resultant_inertia: i_y,
    })
}

/// Uniform-chain allocation when every component is off-center by
/// `delta = k * sigma`:
/// `I_x = i_y / sqrt(n (n k^2 + 1) / (1 + k^2))`.
///
/// `k = 0` recovers the random-means share `i_y / sqrt(n)` and `k -> inf`
/// approaches the worst-case share `i_y / n`.
pub fn systematic_shift(n: usize, k: f64, i_y: f64) -> Result<f64> {
    check_budget(i_y)?;
    check_shift(k)?;
    if n == 0 {
        return Err(Error::InvalidInput(
            "chain needs at least one component".into(),
        ));
    }
    let nf = n as f64;
    Ok(i_y / (nf * (nf * k * k + 1.0) / (1.0 + k * k)).sqrt())
}

/// Uniform-chain allocation when `m` of the `n` components are off-center by
/// `delta = k * sigma` and the rest are centered:
/// `I_x = i_y * sqrt((1 + k^2) / (n (1 + k^2) + m (m - 1) k^2))`.
///
/// `m <= 1` leaves no cross term and reduces to `i_y / sqrt(n)`; `m = n`
/// matches [`systematic_shift`].
pub fn partial_shift(n: usize, m: usize, k: f64, i_y: f64) -> Result<f64> {
    check_budget(i_y)?;
    check_shift(k)?;
    if n == 0 {
        return Err(Error::InvalidInput(
            "chain needs at least one component".into(),
        ));
    }
    if m > n {
        return Err(Error::InvalidInput(format!(
            "shifted component count m = {m} exceeds chain length n = {n}"
        )));
    }
    let (nf, mf) = (n as f64, m as f64);
    let k2 = k * k;
    Ok(i_y * ((1.0 + k2) / (nf * (1.0 + k2) + mf * (mf - 1.0) * k2)).sqrt())
}

/// Dispatch over [`InertialHypothesis`]; shift hypotheses require a uniform
/// model.
pub fn allocate(
    model: &AssemblyModel,
    hypothesis: InertialHypothesis,
    i_y: f64,
) -> Result<InertiaAllocation> {
    match hypothesis {
        InertialHypothesis::WorstCase => worst_case(model, i_y),
        InertialHypothesis::RandomMeans => random_means(model, i_y),
        InertialHypothesis::SystematicShift { k } => {
            let n = require_uniform(model, "systematic shift allocation")?;
            let budget = systematic_shift(n, k, i_y)?;
            Ok(InertiaAllocation {
                hypothesis,
                per_component: uniform_entries(model, budget),
                resultant_inertia: i_y,
            })
        }
        InertialHypothesis::PartialShift { m, k } => {
            let n = require_uniform(model, "partial shift allocation")?;
            let budget = partial_shift(n, m, k, i_y)?;
            Ok(InertiaAllocation {
                hypothesis,
                per_component: uniform_entries(model, budget),
                resultant_inertia: i_y,
            })
        }
    }
}

/// Resultant inertia budget corresponding to a centered unit capability on
/// an interval of full width `r_y`: `i_y = r_y / 6`.
pub fn budget_from_interval(r_y: f64) -> Result<f64> {
    if !(r_y.is_finite() && r_y > 0.0) {
        return Err(Error::InvalidInput(format!(
            "interval width must be finite and > 0, got {r_y}"
        )));
    }
    Ok(r_y / 6.0)
}

/// Forward composition under the worst-case hypothesis: `sum(|alpha_i| I_xi)`.
pub fn worst_case_inertia(model: &AssemblyModel, inertias: &[f64]) -> Result<f64> {
    check_lengths(model, inertias)?;
    Ok(model
        .components
        .iter()
        .zip(inertias)
        .map(|(c, i)| c.alpha.abs() * i)
        .sum())
}

/// Forward composition under the random-means hypothesis:
/// `sqrt(sum(alpha_i^2 I_xi^2))`.
pub fn random_means_inertia(model: &AssemblyModel, inertias: &[f64]) -> Result<f64> {
    check_lengths(model, inertias)?;
    Ok(model
        .components
        .iter()
        .zip(inertias)
        .map(|(c, i)| c.alpha * c.alpha * i * i)
        .sum::<f64>()
        .sqrt())
}

/// Forward composition of a uniform chain with every component at inertia
/// `i_x`, off-center by `k` standard deviations:
/// `sqrt(n i_x^2 + n (n - 1) (1 - 1/(1 + k^2)) i_x^2)`.
pub fn systematic_shift_inertia(n: usize, k: f64, i_x: f64) -> f64 {
    let nf = n as f64;
    let cross = 1.0 - 1.0 / (1.0 + k * k);
    (nf * i_x * i_x + nf * (nf - 1.0) * cross * i_x * i_x).sqrt()
}

/// Forward composition of a uniform chain with `m` of `n` components shifted:
/// `sqrt(n i_x^2 + m (m - 1) (1 - 1/(1 + k^2)) i_x^2)`.
pub fn partial_shift_inertia(n: usize, m: usize, k: f64, i_x: f64) -> f64 {
    let (nf, mf) = (n as f64, m as f64);
    let cross = 1.0 - 1.0 / (1.0 + k * k);
    (nf * i_x * i_x + mf * (mf - 1.0) * cross * i_x * i_x).sqrt()
}

fn check_lengths(model: &AssemblyModel, inertias: &[f64]) -> Result<()> {
    if inertias.len() != model.len() {
        return Err(Error::InvalidInput(format!(
            "model has {} components but {} inertias were given",
            model.len(),
            inertias.len()
        )));
    }
    Ok(())
}
