//! Assembly spec files: a flat TOML document describing the chain, its
//! resultant requirement, and optional per-component targets.
//!
//! ```toml
//! name = "five-part-gap"
//! unit = "mm"           # optional display label, never converted
//! # alpha0 = 1.0        # optional; defaults to resultant.target
//!
//! [resultant]
//! target = 1.0
//! width = 1.0           # full interval width; or `inertia = 0.1667`
//!
//! [[components]]
//! name = "x1"
//! alpha = 1.0
//! beta = 1.0            # optional, default 1
//! target = 0.0          # optional, default 0: data are deviations
//! ```
//!
//! Parsing and serialization round-trip to a semantically identical model.

use serde::{Deserialize, Serialize};

use crate::stack::{AssemblyModel, ComponentSpec, ResultantSpec};

use super::CliError;

/// A parsed spec file: the validated model plus the file-level extras the
/// model itself does not carry.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecFile {
    pub model: AssemblyModel,
    /// Opaque unit label echoed in reports.
    pub unit: Option<String>,
    /// Per-component target values, in model order. Components without an
    /// explicit target default to 0, meaning measurements are deviations.
    pub component_targets: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecDoc {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    unit: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha0: Option<f64>,
    resultant: ResultantDoc,
    #[serde(default)]
    components: Vec<ComponentDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ResultantDoc {
    target: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    width: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    inertia: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentDoc {
    name: String,
    alpha: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target: Option<f64>,
}

fn parse_error(path: &str, message: impl Into<String>) -> CliError {
    CliError::Parse {
        path: path.to_string(),
        message: message.into(),
    }
}

fn check_identifier(name: &str, context: &str, path: &str) -> Result<(), CliError> {
    let ok = !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'));
    if !ok {
        return Err(parse_error(
            path,
            format!("{context}: name {name:?} must be a non-empty identifier (alphanumeric, '_', '-', '.')"),
        ));
    }
    Ok(())
}

/// Parse a spec document from TOML text; `path` labels error messages.
pub fn parse_spec(text: &str, path: &str) -> Result<SpecFile, CliError> {
    let doc: SpecDoc = toml::from_str(text).map_err(|e| parse_error(path, e.to_string()))?;
    check_identifier(&doc.name, "spec", path)?;

    let resultant = match (doc.resultant.width, doc.resultant.inertia) {
        (Some(width), None) => ResultantSpec::interval(doc.resultant.target, width)
            .map_err(|e| parse_error(path, format!("resultant.width: {e}")))?,
        (None, Some(inertia)) => ResultantSpec::inertia(doc.resultant.target, inertia)
            .map_err(|e| parse_error(path, format!("resultant.inertia: {e}")))?,
        (Some(_), Some(_)) => {
            return Err(parse_error(
                path,
                "resultant: give either width or inertia, not both",
            ))
        }
        (None, None) => {
            return Err(parse_error(
                path,
                "resultant: one of width or inertia is required",
            ))
        }
    };

    if doc.components.is_empty() {
        return Err(parse_error(path, "components: at least one is required"));
    }
    let mut components = Vec::with_capacity(doc.components.len());
    let mut targets = Vec::with_capacity(doc.components.len());
    for (i, c) in doc.components.iter().enumerate() {
        check_identifier(&c.name, &format!("components[{i}]"), path)?;
        let spec = ComponentSpec::new(&c.name, c.alpha, c.beta.unwrap_or(1.0))
            .map_err(|e| parse_error(path, format!("components[{i}] ({}): {e}", c.name)))?;
        components.push(spec);
        let target = c.target.unwrap_or(0.0);
        if !target.is_finite() {
            return Err(parse_error(
                path,
                format!("components[{i}] ({}): target must be finite", c.name),
            ));
        }
        targets.push(target);
    }

    let alpha0 = doc.alpha0.unwrap_or(resultant.target);
    let model = AssemblyModel::new(doc.name, alpha0, components, resultant)
        .map_err(|e| parse_error(path, e.to_string()))?;
    Ok(SpecFile {
        model,
        unit: doc.unit,
        component_targets: targets,
    })
}

/// Load and parse a spec file from disk.
pub fn load_spec(path: &std::path::Path) -> Result<SpecFile, CliError> {
    let text = std::fs::read_to_string(path)?;
    parse_spec(&text, &path.display().to_string())
}

/// Serialize a spec back to TOML. Parsing the output reproduces the input
/// spec exactly.
pub fn write_spec(spec: &SpecFile) -> String {
    let doc = SpecDoc {
        name: spec.model.name.clone(),
        unit: spec.unit.clone(),
        alpha0: Some(spec.model.alpha0),
        resultant: ResultantDoc {
            target: spec.model.resultant.target,
            width: spec.model.resultant.full_width(),
            inertia: spec.model.resultant.max_inertia(),
        },
        components: spec
            .model
            .components
            .iter()
            .zip(&spec.component_targets)
            .map(|(c, &target)| ComponentDoc {
                name: c.name.clone(),
                alpha: c.alpha,
                beta: Some(c.beta),
                target: Some(target),
            })
            .collect(),
    };
    toml::to_string(&doc).expect("spec documents always serialize")
}
