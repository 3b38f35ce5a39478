use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use elie_core::electrical::Backend;

/// Which algebra a command acts on.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSelector {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gcm_file: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum ParamMode {
    Symbolic,
    /// Exact values `"p/q"` by parameter name.
    Assignment { values: BTreeMap<String, String> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtration: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closure: Option<usize>,
}

/// Everything that determines a run; echoed into the report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<String>,
    #[serde(default)]
    pub algebra: AlgebraSelector,
    pub backend: Backend,
    pub params: ParamMode,
    #[serde(default)]
    pub budgets: BudgetConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(command: impl Into<String>) -> RunConfig {
        RunConfig {
            command: command.into(),
            suites: Vec::new(),
            algebra: AlgebraSelector::default(),
            backend: Backend::Auto,
            params: ParamMode::Symbolic,
            budgets: BudgetConfig::default(),
            out: None,
            seed: 0,
        }
    }
}
