//! Interval tolerance allocation for assembly chains: worst-case,
//! statistical (RSS), and inflated statistical, each in uniform and
//! feasibility-weighted form.
//!
//! Every method distributes a resultant interval width `r_y` over the
//! components so that recomposing the component widths under the method's
//! own hypothesis returns `r_y` (the closure property).

use crate::error::{Error, Result};
use crate::stack::AssemblyModel;

/// Interval allocation method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IntervalMethod {
    /// Conformity for every combination of in-tolerance components; widths
    /// add linearly.
    WorstCase,
    /// Independent centered components; widths add in quadrature.
    Statistical,
    /// Statistical allocation shrunk by a safety factor `f >= 1` to hedge
    /// against mean shifts.
    Inflated { f: f64 },
}

impl IntervalMethod {
    pub fn label(&self) -> String {
        match self {
            IntervalMethod::WorstCase => "worst-case".to_string(),
            IntervalMethod::Statistical => "statistical".to_string(),
            IntervalMethod::Inflated { f } => format!("inflated(f={f})"),
        }
    }
}

/// Per-component share of an allocation, with the model coefficients echoed
/// for reporting.
#[derive(Debug, Clone, PartialEq)]
pub struct AllocationEntry {
    pub name: String,
    pub alpha: f64,
    pub beta: f64,
    /// Allocated budget: interval full width for interval methods, maximum
    /// inertia for inertial methods.
    pub budget: f64,
    /// True when the component does not influence the resultant (alpha = 0);
    /// it still receives its weighted share.
    pub influential: bool,
}

/// Result of an interval allocation.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalAllocation {
    pub method: IntervalMethod,
    pub per_component: Vec<AllocationEntry>,
    /// The resultant width the allocation guarantees.
    pub resultant_width: f64,
}

impl IntervalAllocation {
    /// Component widths in model order.
    pub fn widths(&self) -> Vec<f64> {
        self.per_component.iter().map(|e| e.budget).collect()
    }

    /// Recompose the resultant width from the allocated component widths
    /// under this allocation's own hypothesis. Returns `resultant_width`
    /// up to rounding when the allocation is consistent.
    pub fn recompose(&self, model: &AssemblyModel) -> Result<f64> {
        let widths = self.widths();
        match self.method {
            IntervalMethod::WorstCase => worst_case_width(model, &widths),
            IntervalMethod::Statistical => statistical_width(model, &widths),
            IntervalMethod::Inflated { f } => inflated_width(model, &widths, f),
        }
    }
}

fn check_budget(r_y: f64) -> Result<()> {
    if !(r_y.is_finite() && r_y > 0.0) {
        return Err(Error::InvalidInput(format!(
            "resultant width must be finite and > 0, got {r_y}"
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

/// Worst-case allocation: `R_xi = beta_i * r_y / sum(|alpha_j| beta_j)`.
/// Uniform chains reduce to `r_y / n`.
pub fn worst_case(model: &AssemblyModel, r_y: f64) -> Result<IntervalAllocation> {
    check_budget(r_y)?;
    check_influential(model)?;
    let denom: f64 = model
        .components
        .iter()
        .map(|c| c.alpha.abs() * c.beta)
        .sum();
    Ok(IntervalAllocation {
        method: IntervalMethod::WorstCase,
        per_component: build_entries(model, r_y / denom),
        resultant_width: r_y,
    })
}

/// Statistical (RSS) allocation:
/// `R_xi = beta_i * r_y / sqrt(sum(alpha_j^2 beta_j^2))`.
/// Uniform chains reduce to `r_y / sqrt(n)`.
pub fn statistical(model: &AssemblyModel, r_y: f64) -> Result<IntervalAllocation> {
    check_budget(r_y)?;
    check_influential(model)?;
    let denom = rss_norm(model);
    Ok(IntervalAllocation {
        method: IntervalMethod::Statistical,
        per_component: build_entries(model, r_y / denom),
        resultant_width: r_y,
    })
}

/// Inflated statistical allocation:
/// `R_xi = beta_i * r_y / (f * sqrt(sum(alpha_j^2 beta_j^2)))`.
/// `f = 1` recovers [`statistical`]; `f = sqrt(n)` recovers [`worst_case`]
/// on uniform chains.
pub fn inflated(model: &AssemblyModel, r_y: f64, f: f64) -> Result<IntervalAllocation> {
    check_budget(r_y)?;
    check_influential(model)?;
    if !(f.is_finite() && f >= 1.0) {
        return Err(Error::InvalidInput(format!(
            "inflation factor must be finite and >= 1, got {f}"
        )));
    }
    let denom = f * rss_norm(model);
    Ok(IntervalAllocation {
        method: IntervalMethod::Inflated { f },
        per_component: build_entries(model, r_y / denom),
        resultant_width: r_y,
    })
}

/// Dispatch over [`IntervalMethod`].
pub fn allocate(
    model: &AssemblyModel,
    method: IntervalMethod,
    r_y: f64,
) -> Result<IntervalAllocation> {
    match method {
        IntervalMethod::WorstCase => worst_case(model, r_y),
        IntervalMethod::Statistical => statistical(model, r_y),
        IntervalMethod::Inflated { f } => inflated(model, r_y, f),
    }
}

/// Advisory note when the inflation factor lies outside `[1, sqrt(n)]`:
/// beyond `sqrt(n)` the allocation is tighter than worst case.
pub fn inflated_factor_warning(n: usize, f: f64) -> Option<String> {
    let sqrt_n = (n as f64).sqrt();
    (f > sqrt_n).then(|| {
        format!(
            "inflation factor {f} exceeds sqrt(n) = {sqrt_n:.4}; allocation is tighter than worst case"
        )
    })
}

fn rss_norm(model: &AssemblyModel) -> f64 {
    model
        .components
        .iter()
        .map(|c| c.alpha * c.alpha * c.beta * c.beta)
        .sum::<f64>()
        .sqrt()
}

/// Forward composition of component widths under the worst-case hypothesis:
/// `sum(|alpha_i| R_xi)`.
pub fn worst_case_width(model: &AssemblyModel, widths: &[f64]) -> Result<f64> {
    check_widths(model, widths)?;
    Ok(model
        .components
        .iter()
        .zip(widths)
        .map(|(c, w)| c.alpha.abs() * w)
        .sum())
}

/// Forward composition under the independence hypothesis:
/// `sqrt(sum(alpha_i^2 R_xi^2))`.
pub fn statistical_width(model: &AssemblyModel, widths: &[f64]) -> Result<f64> {
    check_widths(model, widths)?;
    Ok(model
        .components
        .iter()
        .zip(widths)
        .map(|(c, w)| c.alpha * c.alpha * w * w)
        .sum::<f64>()
        .sqrt())
}

/// Forward composition with the inflation factor applied:
/// `f * sqrt(sum(alpha_i^2 R_xi^2))`.
pub fn inflated_width(model: &AssemblyModel, widths: &[f64], f: f64) -> Result<f64> {
    Ok(f * statistical_width(model, widths)?)
}

fn check_widths(model: &AssemblyModel, widths: &[f64]) -> Result<()> {
    if widths.len() != model.len() {
        return Err(Error::InvalidInput(format!(
            "model has {} components but {} widths were given",
            model.len(),
            widths.len()
        )));
    }
    Ok(())
}
