//! `play` settings: an optional TOML file overlaid by command-line flags.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use screengame::engine::GameConfig;
use screengame::one::OneId;
use screengame::ordinal::{ExtensionPolicy, InningSchedule, OrdinalCNF};
use screengame::sets::{Interval, RSet};
use screengame::strategy::Ruleset;
use screengame::targets::TargetSpec;
use screengame::two::TwoId;

/// Every key is optional; flags win over the file.
///
/// ```toml
/// ruleset = "discrete"
/// length = "w+1"
/// one = "grid"
/// two = "halving-omega-plus-1"
/// target = "full"
/// innings = 12
/// ambient = "[0,1]"
/// max_extensions = 64
/// out = "run.jsonl"
/// ```
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaySettings {
    pub ruleset: Option<String>,
    pub length: Option<String>,
    pub one: Option<String>,
    pub two: Option<String>,
    pub target: Option<String>,
    pub innings: Option<u32>,
    pub ambient: Option<String>,
    pub subspace: Option<String>,
    pub max_extensions: Option<u32>,
    pub out: Option<PathBuf>,
}

impl PlaySettings {
    pub fn from_file(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    /// `self` with every field set in `flags` replaced.
    pub fn overlay(self, flags: PlaySettings) -> PlaySettings {
        PlaySettings {
            ruleset: flags.ruleset.or(self.ruleset),
            length: flags.length.or(self.length),
            one: flags.one.or(self.one),
            two: flags.two.or(self.two),
            target: flags.target.or(self.target),
            innings: flags.innings.or(self.innings),
            ambient: flags.ambient.or(self.ambient),
            subspace: flags.subspace.or(self.subspace),
            max_extensions: flags.max_extensions.or(self.max_extensions),
            out: flags.out.or(self.out),
        }
    }

    pub fn ruleset_name(&self) -> &str {
        self.ruleset.as_deref().unwrap_or("discrete")
    }

    pub fn is_bm(&self) -> bool {
        matches!(self.ruleset_name().trim(), "bm" | "banach-mazur")
    }

    pub fn innings(&self) -> u32 {
        self.innings.unwrap_or(12)
    }

    pub fn ambient(&self) -> Result<Interval, String> {
        match &self.ambient {
            Some(s) => s.parse().map_err(|e| format!("--ambient: {e}")),
            None => Ok(screengame::engine::unit_interval()),
        }
    }

    pub fn one_id(&self) -> Result<OneId, String> {
        let s = self.one.as_deref().ok_or("--one is required")?;
        s.parse().map_err(|e| format!("--one: {e}"))
    }

    pub fn two_id(&self) -> Result<TwoId, String> {
        let s = self.two.as_deref().ok_or("--two is required")?;
        s.parse().map_err(|e| format!("--two: {e}"))
    }

    /// The game configuration, validated before any move is made.
    pub fn game_config(&self) -> Result<GameConfig, String> {
        let ruleset: Ruleset = self.ruleset_name().parse().map_err(|e| format!("--ruleset: {e}"))?;
        let length: OrdinalCNF = self
            .length
            .as_deref()
            .ok_or("--length is required")?
            .parse()
            .map_err(|e| format!("--length: {e}"))?;
        let mut config = GameConfig::new(ruleset, length, self.one_id()?, self.two_id()?, self.innings()).map_err(|e| e.to_string())?;
        config.ambient = self.ambient()?;
        if let Some(t) = &self.target {
            config.target = t.parse::<TargetSpec>().map_err(|e| format!("--target: {e}"))?;
        }
        if let Some(s) = &self.subspace {
            config.subspace = Some(s.parse::<RSet>().map_err(|e| format!("--subspace: {e}"))?);
        }
        if let Some(max) = self.max_extensions {
            let policy = if max == 0 {
                ExtensionPolicy::Disabled
            } else {
                ExtensionPolicy::Lazy { max }
            };
            config.schedule = InningSchedule::new(self.innings(), policy).map_err(|e| e.to_string())?;
        }
        config.arena().map_err(|e| e.to_string())?;
        Ok(config)
    }
}
