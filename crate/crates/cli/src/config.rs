use std::path::Path;

use anyhow::{Context, Result};
use serde::Deserialize;

use wlcoref_core::{ColumnConfig, HeadFinder, Rule};

use crate::UsageError;

/// Settings shared by every subcommand. Flags override the config file,
/// which overrides the defaults.
#[derive(Clone, Debug, PartialEq)]
pub struct PipelineConfig {
    pub rule: Rule,
    pub cc_tags: Vec<String>,
    pub dummy: f64,
    pub top_k: Option<usize>,
    pub columns: ColumnConfig,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            rule: Rule::Caw,
            cc_tags: vec!["CC".into()],
            dummy: 0.0,
            top_k: None,
            columns: ColumnConfig::default(),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct FileConfig {
    rule: Option<Rule>,
    cc_tags: Option<Vec<String>>,
    dummy: Option<f64>,
    top_k: Option<usize>,
    columns: Option<ColumnConfig>,
}

#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub rule: Option<Rule>,
    pub cc_tags: Option<Vec<String>>,
    pub dummy: Option<f64>,
    pub top_k: Option<usize>,
}

impl PipelineConfig {
    pub fn load(path: Option<&Path>, flags: Overrides) -> Result<Self> {
        let file = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                toml::from_str::<FileConfig>(&text)
                    .map_err(|e| UsageError(format!("{}: {}", p.display(), e.message())))?
            }
            None => FileConfig::default(),
        };
        let defaults = PipelineConfig::default();
        let config = PipelineConfig {
            rule: flags.rule.or(file.rule).unwrap_or(defaults.rule),
            cc_tags: flags.cc_tags.or(file.cc_tags).unwrap_or(defaults.cc_tags),
            dummy: flags.dummy.or(file.dummy).unwrap_or(defaults.dummy),
            top_k: flags.top_k.or(file.top_k),
            columns: file.columns.unwrap_or_default(),
        };
        if config.top_k == Some(0) {
            return Err(UsageError("top-k must be at least 1".into()).into());
        }
        if !config.dummy.is_finite() {
            return Err(UsageError("dummy score must be finite".into()).into());
        }
        if config.cc_tags.is_empty() {
            return Err(UsageError("at least one conjunction tag is required".into()).into());
        }
        config.columns.validate()?;
        Ok(config)
    }

    pub fn finder(&self) -> HeadFinder {
        HeadFinder::new(self.cc_tags.iter().cloned())
    }
}
