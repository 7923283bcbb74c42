//! ONE's strategies.

mod avoid;
mod bm;
mod bots;
mod main;

use std::fmt;
use std::str::FromStr;

pub use avoid::avoid_cover;
pub use bm::{bm_one_compact, bm_one_dense_gdelta, bm_one_opening, BMState};
pub use bots::{AvoidFixedOne, GridOne, GRID_MAX_INDEX};
pub use main::{one_main_step, BmRule, MainStep, OneMain};

use crate::strategy::{Arena, OneStrategy, Ruleset, StrategyError};
use crate::targets::{Enumeration, GDeltaSpec};
use crate::two::UnknownStrategy;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OneId {
    MainCompact,
    MainGdelta(Enumeration),
    Grid,
    AvoidFixed,
}

impl OneId {
    pub fn catalog() -> Vec<OneId> {
        vec![OneId::Grid, OneId::AvoidFixed, OneId::MainCompact]
    }

    pub fn build(self, arena: &Arena, ruleset: Ruleset) -> Result<Box<dyn OneStrategy>, StrategyError> {
        Ok(match self {
            OneId::MainCompact => Box::new(OneMain::new(BmRule::Compact, arena, ruleset)?),
            OneId::MainGdelta(e) => Box::new(OneMain::new(
                BmRule::DenseGDelta(GDeltaSpec { deleted: e }),
                arena,
                ruleset,
            )?),
            OneId::Grid => Box::new(GridOne::new(arena)),
            OneId::AvoidFixed => Box::new(AvoidFixedOne::new(arena)?),
        })
    }
}

impl fmt::Display for OneId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OneId::MainCompact => f.write_str("one:main-compact"),
            OneId::MainGdelta(e) => write!(f, "one:main-gdelta:{e}"),
            OneId::Grid => f.write_str("one:grid"),
            OneId::AvoidFixed => f.write_str("one:avoid-fixed"),
        }
    }
}

impl FromStr for OneId {
    type Err = UnknownStrategy;
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let s = input.trim();
        let s = s.strip_prefix("one:").unwrap_or(s);
        let unknown = || UnknownStrategy(input.to_string());
        Ok(match s.split_once(':') {
            Some(("main-gdelta", e)) => OneId::MainGdelta(e.parse().map_err(|_| unknown())?),
            None => match s {
                "main-compact" => OneId::MainCompact,
                "main-gdelta" => OneId::MainGdelta(Enumeration::Farey),
                "grid" => OneId::Grid,
                "avoid-fixed" => OneId::AvoidFixed,
                _ => return Err(unknown()),
            },
            _ => return Err(unknown()),
        })
    }
}
