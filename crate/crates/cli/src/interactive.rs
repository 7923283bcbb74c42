//! A terminal REPL in which a person plays one side against a bot.
//!
//! Moves are families of sets: members are separated by `;`, and a member
//! with several pieces joins them with `|`, e.g. `(0,1/4)|(3/4,1); (1/3,2/3)`.
//! Each move is refereed before it is handed to the engine, so an illegal
//! entry is explained and asked for again rather than forfeiting.

use std::io::{BufRead, Write};

use screengame::covers::Cover;
use screengame::engine::{play_with, referee_step, validate_cover, EngineError, GameConfig, Transcript};
use screengame::sets::{fmt_rational, RSet};
use screengame::strategy::{Arena, InningInfo, LimitDigest, OneStrategy, Ruleset, StrategyError, TwoStrategy};

pub const GRAMMAR: &str = "grammar: members separated by ';', pieces of one member joined by '|'; \
intervals as (lo,hi) [lo,hi] [lo,hi) (lo,hi] with rationals p/q; \
'none' for the empty family, 'quit' to stop";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    One,
    Two,
}

/// Parses a family in the REPL grammar.
pub fn parse_family(line: &str) -> Result<Vec<RSet>, String> {
    let line = line.trim();
    if line.eq_ignore_ascii_case("none") {
        return Ok(Vec::new());
    }
    line.split(';')
        .map(str::trim)
        .filter(|m| !m.is_empty())
        .map(|m| m.replace('|', ";").parse::<RSet>().map_err(|e| format!("{m}: {e}")))
        .collect()
}

fn show(family: &[RSet]) -> String {
    if family.is_empty() {
        return "none".into();
    }
    family
        .iter()
        .map(|m| m.to_string().replace(';', "|"))
        .collect::<Vec<_>>()
        .join("; ")
}

struct Console<'a> {
    input: &'a mut dyn BufRead,
    out: &'a mut dyn Write,
}

impl Console<'_> {
    fn say(&mut self, text: &str) -> Result<(), StrategyError> {
        writeln!(self.out, "{text}").map_err(|_| StrategyError::Aborted)
    }

    /// Reads lines until `accept` takes one; `quit` or end of input aborts.
    fn ask<T>(&mut self, prompt: &str, mut accept: impl FnMut(&str) -> Result<T, String>) -> Result<T, StrategyError> {
        loop {
            write!(self.out, "{prompt}> ").map_err(|_| StrategyError::Aborted)?;
            self.out.flush().map_err(|_| StrategyError::Aborted)?;
            let mut line = String::new();
            if self.input.read_line(&mut line).map_err(|_| StrategyError::Aborted)? == 0 {
                return Err(StrategyError::Aborted);
            }
            let line = line.trim();
            match line {
                "quit" | "exit" => return Err(StrategyError::Aborted),
                "" => continue,
                "help" | "?" => self.say(GRAMMAR)?,
                _ => match accept(line) {
                    Ok(v) => return Ok(v),
                    Err(why) => {
                        self.say(&format!("rejected: {why}"))?;
                        self.say(GRAMMAR)?;
                    }
                },
            }
        }
    }
}

struct HumanTwo<'a> {
    io: Console<'a>,
    ruleset: Ruleset,
    space: RSet,
    /// A limit-inning family typed when asked about extensions.
    pending: Option<Vec<RSet>>,
}

fn legal(ruleset: Ruleset, space: &RSet, cover: &Cover, line: &str) -> Result<Vec<RSet>, String> {
    let family = parse_family(line)?;
    referee_step(ruleset, space, cover, &family).map_err(|r| r.to_string())?;
    Ok(family)
}

impl HumanTwo<'_> {
    fn family_for(&mut self, prompt: &str, cover: &Cover) -> Result<Vec<RSet>, StrategyError> {
        self.io.say(&format!("ONE covers with: {}", show(cover.members())))?;
        let (ruleset, space) = (self.ruleset, self.space.clone());
        let family = self.io.ask(prompt, |line| legal(ruleset, &space, cover, line))?;
        self.io.say("accepted")?;
        Ok(family)
    }
}

impl TwoStrategy for HumanTwo<'_> {
    fn respond(&mut self, info: &InningInfo, cover: &Cover) -> Result<Vec<RSet>, StrategyError> {
        self.family_for(&format!("inning {} (your {} family)", info.label, self.ruleset), cover)
    }

    fn wants_extension(&mut self, limit_cover: &Cover) -> Result<bool, StrategyError> {
        self.io.say(&format!("limit cover revealed: {}", show(limit_cover.members())))?;
        self.io.say("type 'extend' for one more inning before the limit, or your family for the limit inning")?;
        let (ruleset, space) = (self.ruleset, self.space.clone());
        let choice = self.io.ask("limit", |line| {
            if line == "extend" {
                return Ok(None);
            }
            legal(ruleset, &space, limit_cover, line).map(Some)
        })?;
        Ok(match choice {
            None => true,
            Some(family) => {
                self.io.say("accepted")?;
                self.pending = Some(family);
                false
            }
        })
    }

    fn respond_limit(&mut self, info: &InningInfo, cover: &Cover) -> Result<Vec<RSet>, StrategyError> {
        match self.pending.take() {
            Some(family) => Ok(family),
            None => self.family_for(&format!("limit inning {}", info.label), cover),
        }
    }
}

struct HumanOne<'a> {
    io: Console<'a>,
    arena: Arena,
}

impl HumanOne<'_> {
    fn read_cover(&mut self, prompt: &str) -> Result<Vec<RSet>, StrategyError> {
        let arena = self.arena.clone();
        let members = self.io.ask(prompt, |line| {
            let members = parse_family(line)?;
            validate_cover(&arena, &members).map_err(|r| r.to_string())?;
            Ok(members)
        })?;
        self.io.say("accepted")?;
        Ok(members)
    }
}

impl OneStrategy for HumanOne<'_> {
    fn cover(&mut self, info: &InningInfo) -> Result<Vec<RSet>, StrategyError> {
        self.read_cover(&format!("inning {} (your open cover)", info.label))
    }

    fn observe(&mut self, _info: &InningInfo, family: &[RSet]) -> Result<(), StrategyError> {
        self.io.say(&format!("TWO answers: {}", show(family)))
    }

    fn limit_cover(&mut self, digest: &LimitDigest) -> Result<Vec<RSet>, StrategyError> {
        self.io.say(&format!(
            "limit {} after {} innings; TWO has covered measure {}",
            digest.limit,
            digest.innings_played,
            fmt_rational(&digest.covered_measure)
        ))?;
        self.read_cover(&format!("limit {} (your open cover)", digest.limit))
    }
}

/// Plays `config` with a person on `side`; the bot on the other side is
/// the one named in `config`. Returns the transcript once the play ends.
pub fn run_interactive(
    config: &GameConfig,
    side: Side,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<Transcript, EngineError> {
    let arena = config.arena()?;
    let io_err = |e: std::io::Error| EngineError::Config(e.to_string());
    writeln!(
        out,
        "{} game of length {} on {}; you are {}",
        config.ruleset,
        config.length,
        arena.space,
        match side {
            Side::One => "ONE",
            Side::Two => "TWO",
        }
    )
    .map_err(io_err)?;
    writeln!(out, "{GRAMMAR}").map_err(io_err)?;
    let transcript = match side {
        Side::Two => {
            let one = config.one.build(&arena, config.ruleset).map_err(EngineError::Strategy)?;
            let human = HumanTwo {
                io: Console { input, out: &mut *out },
                ruleset: config.ruleset,
                space: arena.space.clone(),
                pending: None,
            };
            play_with(config, one, Box::new(human))?
        }
        Side::One => {
            let two = config.two.build(&arena).map_err(EngineError::Strategy)?;
            let human = HumanOne {
                io: Console { input, out: &mut *out },
                arena,
            };
            play_with(config, Box::new(human), two)?
        }
    };
    writeln!(out, "verdict: {}", transcript.verdict.outcome).map_err(io_err)?;
    Ok(transcript)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_grammar() {
        let f = parse_family("(1/10,2/10); (3/10,4/10)").unwrap();
        assert_eq!(show(&f), "(1/10,1/5); (3/10,2/5)");
        let f = parse_family("(0,1/4)|(3/4,1);(1/3,2/3)").unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].components().len(), 2);
        assert!(parse_family("none").unwrap().is_empty());
        assert!(parse_family("(0,1").is_err());
    }
}
