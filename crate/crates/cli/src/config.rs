//! JSON configuration files.

use std::collections::BTreeMap;
use std::path::Path;

use hklab_core::coeff::FieldDescriptor;
use hklab_core::family::{FamilyBase, FiberSpec};
use hklab_core::polyring::{OrderKind, TermOrder};
use serde::Deserialize;

use crate::CliError;

fn read<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let at = e.path().to_string();
        CliError::Validation(format!("config {}: field `{at}`: {}", path.display(), e.inner()))
    })
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderConfig {
    pub kind: Option<OrderKind>,
    /// Variable names, most significant first.
    pub priority: Option<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum OrderSpec {
    Kind(OrderKind),
    Full(OrderConfig),
}

pub fn term_order(vars: &[String], spec: Option<&OrderSpec>) -> Result<TermOrder, CliError> {
    let (kind, priority) = match spec {
        None => (OrderKind::DegRevLex, None),
        Some(OrderSpec::Kind(k)) => (*k, None),
        Some(OrderSpec::Full(c)) => (c.kind.unwrap_or(OrderKind::DegRevLex), c.priority.as_ref()),
    };
    let priority = match priority {
        None => (0..vars.len()).collect(),
        Some(names) => names
            .iter()
            .map(|n| {
                vars.iter().position(|v| v == n).ok_or_else(|| {
                    CliError::Validation(format!("field `order.priority`: unknown variable {n:?}"))
                })
            })
            .collect::<Result<Vec<_>, _>>()?,
    };
    TermOrder::new(kind, priority).map_err(|e| CliError::Validation(format!("field `order`: {e}")))
}

/// Configuration of the single-ring subcommands.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingConfig {
    pub field: FieldDescriptor,
    pub vars: Vec<String>,
    #[serde(default)]
    pub order: Option<OrderSpec>,
    #[serde(default)]
    pub defining: Vec<String>,
    #[serde(default)]
    pub ideal: Vec<String>,
    #[serde(default)]
    pub e_max: Option<u32>,
    #[serde(default)]
    pub n_max: Option<u32>,
    /// Number of agreeing differences for the Hilbert–Samuel multiplicity.
    #[serde(default)]
    pub stable_run: Option<usize>,
    #[serde(default)]
    pub sop: Vec<String>,
    #[serde(default)]
    pub grid: Option<Vec<String>>,
    #[serde(default)]
    pub candidates: Vec<Vec<String>>,
}

impl RingConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        read(path)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BaseConfig {
    Param { p: u32, params: Vec<String> },
    Integers,
}

impl From<BaseConfig> for FamilyBase {
    fn from(b: BaseConfig) -> Self {
        match b {
            BaseConfig::Param { p, params } => FamilyBase::Param { p, params },
            BaseConfig::Integers => FamilyBase::Integers,
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ValueText {
    Text(String),
    Int(i64),
}

impl ValueText {
    fn text(&self) -> String {
        match self {
            ValueText::Text(s) => s.clone(),
            ValueText::Int(n) => n.to_string(),
        }
    }
}

/// `{"t": "0"}`, `{"t": "s", "m": 2}` or `{"generic": true}`.
#[derive(Clone, Debug, Deserialize)]
pub struct FiberEntry {
    #[serde(default)]
    pub generic: bool,
    #[serde(default)]
    pub m: Option<u32>,
    #[serde(flatten)]
    pub values: BTreeMap<String, ValueText>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum FibersConfig {
    List(Vec<FiberEntry>),
    Primes { primes: Vec<u32> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyConfig {
    pub base: BaseConfig,
    pub vars: Vec<String>,
    #[serde(default)]
    pub order: Option<OrderSpec>,
    #[serde(default)]
    pub defining: Vec<String>,
    pub ideal: Vec<String>,
    pub fibers: FibersConfig,
    #[serde(default)]
    pub e_max: Option<u32>,
    #[serde(default)]
    pub n_max: Option<u32>,
}

impl FamilyConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        read(path)
    }

    pub fn fiber_specs(&self) -> Result<Vec<FiberSpec>, CliError> {
        match &self.fibers {
            FibersConfig::Primes { primes } => Ok(primes.iter().map(|&p| FiberSpec::Prime(p)).collect()),
            FibersConfig::List(entries) => entries
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    if f.generic {
                        if !f.values.is_empty() || f.m.is_some() {
                            return Err(CliError::Validation(format!(
                                "field `fibers[{i}]`: a generic fiber takes no values"
                            )));
                        }
                        return Ok(FiberSpec::Generic);
                    }
                    if f.values.is_empty() {
                        return Err(CliError::Validation(format!(
                            "field `fibers[{i}]`: give parameter values or \"generic\": true"
                        )));
                    }
                    Ok(FiberSpec::Special {
                        values: f.values.iter().map(|(k, v)| (k.clone(), v.text())).collect(),
                        m: f.m.unwrap_or(1),
                    })
                })
                .collect(),
        }
    }

    pub fn primes(&self) -> Option<&[u32]> {
        match &self.fibers {
            FibersConfig::Primes { primes } => Some(primes),
            FibersConfig::List(_) => None,
        }
    }
}
