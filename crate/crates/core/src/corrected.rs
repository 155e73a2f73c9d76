//! Corrected inertial tolerancing: size component inertias from an interval
//! requirement through a correction coefficient (ICC) chosen so that the
//! resultant capability index never falls below a target, even when every
//! component drifts to the worst off-centering its inertia allows.
//!
//! For a uniform chain of `n` components allocated with coefficient `icc`,
//! the resultant index as a function of the common component offset `delta`
//! is
//!
//! ```text
//! Cpk(delta) = (r_y/2 - n |delta|) / (3 sqrt(r_y^2/(36 icc^2) - n delta^2))
//! ```
//!
//! It equals `icc` at `delta = 0`, dips to `sqrt(icc^2 - n/9)` at
//! `delta* = r_y / (18 icc^2)`, and diverges at the domain edge
//! `I_x = r_y / (6 icc sqrt(n))`. When `n > 9 icc^2` the dip has no floor
//! and the index can fall without bound.

use std::fmt;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::stack::AssemblyModel;

pub use crate::classical::AllocationEntry;

/// Floor of the resultant capability index under a given allocation, or the
/// statement that no floor exists. The unbounded case is a legitimate result
/// (too many components for the coefficient), not an error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CpkMin {
    Value(f64),
    UnboundedBelow,
}

impl CpkMin {
    pub fn value(&self) -> Option<f64> {
        match self {
            CpkMin::Value(v) => Some(*v),
            CpkMin::UnboundedBelow => None,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, CpkMin::UnboundedBelow)
    }
}

impl fmt::Display for CpkMin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CpkMin::Value(v) => write!(f, "{v}"),
            CpkMin::UnboundedBelow => write!(f, "-infinity"),
        }
    }
}

/// Result of a corrected inertial allocation.
#[derive(Debug, Clone, PartialEq)]
pub struct IccAllocation {
    pub icc: f64,
    pub per_component: Vec<AllocationEntry>,
    /// Interval full width the allocation protects.
    pub resultant_width: f64,
    /// Floor of the resultant index when every component sits at its
    /// allocated inertia with the worst common offset.
    pub guaranteed_cpk_min: CpkMin,
}

impl IccAllocation {
    pub fn inertias(&self) -> Vec<f64> {
        self.per_component.iter().map(|e| e.budget).collect()
    }

    /// Centered capability recomposed from the allocated inertias:
    /// `r_y / (6 sqrt(sum(alpha_i^2 I_xi^2)))`, which returns `icc` when the
    /// allocation is consistent.
    pub fn recompose_centered_cp(&self, model: &AssemblyModel) -> Result<f64> {
        let sigma_y = crate::inertial::random_means_inertia(model, &self.inertias())?;
        Ok(self.resultant_width / (6.0 * sigma_y))
    }
}

/// One point of the capability abacus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbacusRow {
    pub n: usize,
    pub cpk_target: f64,
    pub icc: f64,
}

/// Coefficient lookup grid: the coefficient required to guarantee each
/// target index for each chain length.
#[derive(Debug, Clone, PartialEq)]
pub struct AbacusTable {
    pub rows: Vec<AbacusRow>,
}

/// Sampled profile of the resultant index against the common component
/// offset, with the analytic minimum attached.
#[derive(Debug, Clone, PartialEq)]
pub struct CpkCurve {
    pub r_y: f64,
    pub icc: f64,
    pub n: usize,
    /// `(delta, cpk)` pairs, uniformly spaced over `[0, I_x (1 - 1e-9)]`.
    pub samples: Vec<(f64, f64)>,
    /// Offset at which the profile dips: `r_y / (18 icc^2)`. Lies inside the
    /// sampled domain only when the floor exists.
    pub delta_star: f64,
    pub cpk_min: CpkMin,
}

/// Component budget capacity for a coefficient and a target index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComponentCapacity {
    /// Real-valued budget `9 (icc^2 - cpk_target^2)`, clamped at zero.
    pub budget: f64,
    /// Largest integer chain length that still meets the target.
    pub capacity: u64,
    /// Set when the target exceeds the coefficient, so no chain qualifies.
    pub target_exceeds_icc: bool,
}

fn check_positive(value: f64, what: &str) -> Result<()> {
    if !(value.is_finite() && value > 0.0) {
        return Err(Error::InvalidInput(format!(
            "{what} must be finite and > 0, got {value}"
        )));
    }
    Ok(())
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "chain needs at least one component".into(),
        ));
    }
    Ok(())
}

/// Corrected inertial allocation:
/// `I_xi = beta_i * r_y / (6 icc sqrt(sum(alpha_j^2 beta_j^2)))`; uniform
/// chains get `r_y / (6 icc sqrt(n))`.
pub fn icc_allocate(model: &AssemblyModel, r_y: f64, icc: f64) -> Result<IccAllocation> {
    check_positive(r_y, "resultant width")?;
    check_positive(icc, "correction coefficient")?;
    if model.all_alpha_zero() {
        return Err(Error::DegenerateModel(
            "every incidence coefficient is zero; no component influences the resultant".into(),
        ));
    }
    let norm = model
        .components
        .iter()
        .map(|c| c.alpha * c.alpha * c.beta * c.beta)
        .sum::<f64>()
        .sqrt();
    let scale = r_y / (6.0 * icc * norm);
    let per_component = model
        .components
        .iter()
        .map(|c| AllocationEntry {
            name: c.name.clone(),
            alpha: c.alpha,
            beta: c.beta,
            budget: c.beta * scale,
            influential: c.alpha != 0.0,
        })
        .collect();
    Ok(IccAllocation {
        icc,
        per_component,
        resultant_width: r_y,
        guaranteed_cpk_min: cpk_min(icc, model.len())?,
    })
}

/// Largest common offset a uniform allocation admits:
/// `I_x = r_y / (6 icc sqrt(n))`.
pub fn component_inertia(r_y: f64, icc: f64, n: usize) -> Result<f64> {
    check_positive(r_y, "resultant width")?;
    check_positive(icc, "correction coefficient")?;
    check_n(n)?;
    Ok(r_y / (6.0 * icc * (n as f64).sqrt()))
}

/// Resultant index when all `n` components sit at their allocated inertia
/// with a common offset `delta`:
/// `(r_y/2 - n |delta|) / (3 sqrt(r_y^2/(36 icc^2) - n delta^2))`.
///
/// At `|delta| = I_x` the dispersion vanishes and the index is reported as a
/// signed infinity following the numerator (zero numerator yields the limit
/// value 0).
pub fn cpk_at_offset(r_y: f64, icc: f64, n: usize, delta: f64) -> Result<f64> {
    let i_x = component_inertia(r_y, icc, n)?;
    if !delta.is_finite() {
        return Err(Error::InvalidInput("offset must be finite".into()));
    }
    let d = delta.abs();
    if d > i_x {
        return Err(Error::OutOfDomain(format!(
            "offset {delta} exceeds the allocated component inertia {i_x}"
        )));
    }
    let nf = n as f64;
    let numerator = r_y / 2.0 - nf * d;
    let disc = r_y * r_y / (36.0 * icc * icc) - nf * d * d;
    if disc <= 0.0 {
        return Ok(if numerator > 0.0 {
            f64::INFINITY
        } else if numerator < 0.0 {
            f64::NEG_INFINITY
        } else {
            0.0
        });
    }
    Ok(numerator / (3.0 * disc.sqrt()))
}

/// Derivative of [`cpk_at_offset`] with respect to the offset on the
/// non-negative branch `0 <= delta < I_x`:
///
/// ```text
/// (r_y/2 - n delta) n delta / (3 disc^(3/2)) - n / (3 sqrt(disc))
/// ```
///
/// with `disc = r_y^2/(36 icc^2) - n delta^2`. Negative at zero offset, zero
/// at `delta*`, positive beyond.
pub fn cpk_derivative(r_y: f64, icc: f64, n: usize, delta: f64) -> Result<f64> {
    let i_x = component_inertia(r_y, icc, n)?;
    if !delta.is_finite() || delta < 0.0 || delta >= i_x {
        return Err(Error::OutOfDomain(format!(
            "offset {delta} outside the derivative domain [0, {i_x})"
        )));
    }
    let nf = n as f64;
    let disc = r_y * r_y / (36.0 * icc * icc) - nf * delta * delta;
    let term_from_dispersion = (r_y / 2.0 - nf * delta) * nf * delta / (3.0 * disc.powf(1.5));
    let term_from_offset = nf / (3.0 * disc.sqrt());
    Ok(term_from_dispersion - term_from_offset)
}

/// Common offset minimizing the resultant index: `delta* = r_y / (18 icc^2)`.
pub fn worst_offset(r_y: f64, icc: f64) -> Result<f64> {
    check_positive(r_y, "resultant width")?;
    check_positive(icc, "correction coefficient")?;
    Ok(r_y / (18.0 * icc * icc))
}

/// Floor of the resultant index over all admissible common offsets:
/// `sqrt(icc^2 - n/9)` while `n <= 9 icc^2`, unbounded below otherwise.
pub fn cpk_min(icc: f64, n: usize) -> Result<CpkMin> {
    check_positive(icc, "correction coefficient")?;
    check_n(n)?;
    let disc = icc * icc - n as f64 / 9.0;
    if disc < 0.0 {
        Ok(CpkMin::UnboundedBelow)
    } else {
        Ok(CpkMin::Value(disc.sqrt()))
    }
}

/// Coefficient required to guarantee `cpk_target` on a chain of `n`
/// components: `sqrt(cpk_target^2 + n/9)`. Inverse of [`cpk_min`] at fixed
/// `n`.
pub fn icc_for_cpk(cpk_target: f64, n: usize) -> Result<f64> {
    if !(cpk_target.is_finite() && cpk_target >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "target index must be finite and >= 0, got {cpk_target}"
        )));
    }
    check_n(n)?;
    Ok((cpk_target * cpk_target + n as f64 / 9.0).sqrt())
}

/// How many components a coefficient supports at a target index:
/// real budget `9 (icc^2 - cpk_target^2)`, integer capacity its floor.
pub fn max_components(icc: f64, cpk_target: f64) -> Result<ComponentCapacity> {
    check_positive(icc, "correction coefficient")?;
    if !(cpk_target.is_finite() && cpk_target >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "target index must be finite and >= 0, got {cpk_target}"
        )));
    }
    let raw = 9.0 * (icc * icc - cpk_target * cpk_target);
    let budget = raw.max(0.0);
    Ok(ComponentCapacity {
        budget,
        capacity: budget.floor() as u64,
        target_exceeds_icc: icc < cpk_target,
    })
}

/// Resultant index for per-component offsets on a general chain allocated by
/// [`icc_allocate`]:
///
/// ```text
/// (r_y/2 - sum |alpha_i delta_i|) / (3 sqrt(r_y^2/(36 icc^2) - sum alpha_i^2 delta_i^2))
/// ```
///
/// Each offset term enters with its worst sign. Every `|delta_i|` must stay
/// within the component's allocated inertia.
pub fn cpk_general(model: &AssemblyModel, r_y: f64, icc: f64, offsets: &[f64]) -> Result<f64> {
    let allocation = icc_allocate(model, r_y, icc)?;
    if offsets.len() != model.len() {
        return Err(Error::InvalidInput(format!(
            "model has {} components but {} offsets were given",
            model.len(),
            offsets.len()
        )));
    }
    for ((c, entry), &d) in model
        .components
        .iter()
        .zip(&allocation.per_component)
        .zip(offsets)
    {
        if !d.is_finite() {
            return Err(Error::InvalidInput(format!(
                "offset for component {} must be finite",
                c.name
            )));
        }
        if d.abs() > entry.budget {
            return Err(Error::OutOfDomain(format!(
                "offset {d} for component {} exceeds its allocated inertia {}",
                c.name, entry.budget
            )));
        }
    }
    let numerator = r_y / 2.0
        - model
            .components
            .iter()
            .zip(offsets)
            .map(|(c, d)| (c.alpha * d).abs())
            .sum::<f64>();
    let disc = r_y * r_y / (36.0 * icc * icc)
        - model
            .components
            .iter()
            .zip(offsets)
            .map(|(c, d)| c.alpha * c.alpha * d * d)
            .sum::<f64>();
    if disc <= 0.0 {
        return Ok(if numerator > 0.0 {
            f64::INFINITY
        } else if numerator < 0.0 {
            f64::NEG_INFINITY
        } else {
            0.0
        });
    }
    Ok(numerator / (3.0 * disc.sqrt()))
}

/// Coefficient grid over chain lengths and target indices, row-major by
/// target then length, ready for serialization or plotting.
pub fn build_abacus(n_range: RangeInclusive<usize>, cpk_targets: &[f64]) -> Result<AbacusTable> {
    if n_range.is_empty() || *n_range.start() == 0 {
        return Err(Error::InvalidInput(
            "chain length range must be non-empty and start at 1 or above".into(),
        ));
    }
    if cpk_targets.is_empty() {
        return Err(Error::InvalidInput("no target indices given".into()));
    }
    let mut rows = Vec::with_capacity(cpk_targets.len() * (n_range.end() - n_range.start() + 1));
    for &cpk_target in cpk_targets {
        for n in n_range.clone() {
            rows.push(AbacusRow {
                n,
                cpk_target,
                icc: icc_for_cpk(cpk_target, n)?,
            });
        }
    }
    Ok(AbacusTable { rows })
}

/// Sample the index profile over `[0, I_x (1 - 1e-9)]`; the last 1e-9 sliver
/// is excluded so every sample stays finite on chains with a floor.
pub fn sample_cpk_curve(r_y: f64, icc: f64, n: usize, num_points: usize) -> Result<CpkCurve> {
    if num_points < 2 {
        return Err(Error::InvalidInput(format!(
            "need at least 2 sample points, got {num_points}"
        )));
    }
    let i_x = component_inertia(r_y, icc, n)?;
    let top = i_x * (1.0 - 1e-9);
    let samples = (0..num_points)
        .map(|j| {
            let delta = top * j as f64 / (num_points - 1) as f64;
            let value = cpk_at_offset(r_y, icc, n, delta)?;
            Ok((delta, value))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CpkCurve {
        r_y,
        icc,
        n,
        samples,
        delta_star: worst_offset(r_y, icc)?,
        cpk_min: cpk_min(icc, n)?,
    })
}
