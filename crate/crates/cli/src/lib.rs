//! The `screengame` command line: matches, demos, analyses, seeded
//! invariant suites and an interactive REPL.

pub mod config;
pub mod interactive;

use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use screengame::analyzer::{dense_discrete_witness, find_escape, strategy_core};
use screengame::checks::all_suites;
use screengame::demo::{run_demo, DEMOS};
use screengame::engine::{
    length_bracket_report, play, play_bm, BmOne, Certificate, EngineError, LengthSpec, Transcript, EXIT_INVARIANT,
    EXIT_OK, EXIT_USAGE,
};
use screengame::one::OneId;
use screengame::ordinal::OrdinalCNF;
use screengame::sets::{fmt_rational, is_discrete, parse_rational, Interval};
use screengame::strategy::{Arena, Ruleset};
use screengame::targets::TargetSpec;
use screengame::two::TwoId;

use config::PlaySettings;
use interactive::{parse_family, run_interactive, Side};

/// Directory for transcripts when `--out` is not given.
pub const OUT_DIR_ENV: &str = "SCREENGAME_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "screengame", version, about = "Exact cover-refinement games on the real line")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Play one match between two bots and write its JSONL transcript.
    Play(PlayArgs),
    /// Run a scripted scenario and print its checked claims (`all` runs every one).
    Demo {
        name: String,
        #[arg(long)]
        json: bool,
    },
    /// Replay-based analyses of TWO strategies and families.
    Analyze {
        #[command(subcommand)]
        what: Analyze,
    },
    /// Run the seeded invariant suites.
    Check {
        #[arg(long, default_value_t = 2026)]
        seed: u64,
        /// Multiplies the default case counts.
        #[arg(long, default_value_t = 1)]
        scale: usize,
        #[arg(long)]
        json: bool,
    },
    /// Play one side yourself against a bot.
    Interactive {
        #[arg(long = "as", value_enum)]
        side: HumanSide,
        #[command(flatten)]
        game: GameFlags,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum HumanSide {
    One,
    Two,
}

#[derive(Debug, Default, Args)]
pub struct GameFlags {
    /// discrete (d), disjoint (c), or bm for a Banach–Mazur play.
    #[arg(long)]
    pub ruleset: Option<String>,
    /// Game length in Cantor normal form, e.g. 2, w, w+1, w*2, w^2.
    #[arg(long)]
    pub length: Option<String>,
    /// ONE bot: main-compact, main-gdelta[:enum], grid, avoid-fixed.
    #[arg(long)]
    pub one: Option<String>,
    /// TWO bot: halving, halving-omega-plus-1, cantor-oneshot, countable[:enum],
    /// chain-puncture, bm-first-category[:enum], empty, first-member, greedy.
    #[arg(long)]
    pub two: Option<String>,
    /// full, cantor, countable[:enum], gdelta[:enum] or rset:<closed set>.
    #[arg(long)]
    pub target: Option<String>,
    /// Innings played per limit stage before truncation.
    #[arg(long)]
    pub innings: Option<u32>,
    /// Closed ambient interval (default [0,1]).
    #[arg(long, allow_hyphen_values = true)]
    pub ambient: Option<String>,
    /// Closed subset of the ambient to play on.
    #[arg(long, allow_hyphen_values = true)]
    pub subspace: Option<String>,
    /// Extension innings TWO may request at each limit (0 disables).
    #[arg(long)]
    pub max_extensions: Option<u32>,
    /// TOML file with the same keys; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl GameFlags {
    fn settings(&self, out: Option<PathBuf>) -> Result<PlaySettings, String> {
        let file = match &self.config {
            Some(p) => PlaySettings::from_file(p)?,
            None => PlaySettings::default(),
        };
        Ok(file.overlay(PlaySettings {
            ruleset: self.ruleset.clone(),
            length: self.length.clone(),
            one: self.one.clone(),
            two: self.two.clone(),
            target: self.target.clone(),
            innings: self.innings,
            ambient: self.ambient.clone(),
            subspace: self.subspace.clone(),
            max_extensions: self.max_extensions,
            out,
        }))
    }
}

#[derive(Debug, Args)]
pub struct PlayArgs {
    #[command(flatten)]
    pub game: GameFlags,
    /// Transcript path; defaults to a name derived from the flags inside
    /// $SCREENGAME_OUT_DIR, or the working directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the verdict as one JSON object instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Analyze {
    /// Upper approximation of the closed core C_tau of a TWO bot.
    Core {
        #[arg(long)]
        two: String,
        /// Comma-separated ball-cover indices, e.g. 1,2 (empty for the root).
        #[arg(long, default_value = "")]
        tau: String,
        #[arg(long, default_value_t = 10)]
        depth: u32,
        #[arg(long, allow_hyphen_values = true)]
        ambient: Option<String>,
    },
    /// Greedy search for ball covers that keep a point outside TWO's closures.
    Escape {
        #[arg(long)]
        two: String,
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        witness: String,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[arg(long, default_value_t = 12)]
        search: u32,
        #[arg(long, allow_hyphen_values = true)]
        ambient: Option<String>,
    },
    /// A point of an interval missed by a finite discrete family.
    Dense {
        /// Family in the interactive grammar: members split by ';', pieces by '|'.
        #[arg(long, allow_hyphen_values = true)]
        family: String,
        #[arg(long, default_value = "[0,1]", allow_hyphen_values = true)]
        space: String,
    },
    /// Round-robin of the bot catalogs over several lengths.
    Bracket {
        /// Comma-separated lengths.
        #[arg(long, default_value = "1,2,w,w+1")]
        lengths: String,
        #[arg(long, default_value_t = 12)]
        innings: u32,
        #[arg(long, default_value = "full")]
        target: String,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn engine_failure(e: EngineError) -> Failure {
    match e {
        EngineError::Config(_) | EngineError::Ordinal(_) | EngineError::Target(_) => usage(e.to_string()),
        other => Failure {
            code: EXIT_INVARIANT,
            message: other.to_string(),
        },
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_INVARIANT,
        message: format!("i/o error: {e}"),
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, input, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Play(args) => cmd_play(&args, out),
        Command::Demo { name, json } => cmd_demo(&name, json, out),
        Command::Analyze { what } => cmd_analyze(what, out),
        Command::Check { seed, scale, json } => cmd_check(seed, scale, json, out),
        Command::Interactive { side, game } => {
            let mut settings = game.settings(None).map_err(usage)?;
            if settings.is_bm() {
                return Err(usage("interactive play supports the discrete and disjoint rulesets"));
            }
            // the human's seat is never consulted; any valid id will do
            match side {
                HumanSide::One => settings.one = Some("grid".into()),
                HumanSide::Two => settings.two = Some("halving".into()),
            }
            let config = settings.game_config().map_err(usage)?;
            let side = match side {
                HumanSide::One => Side::One,
                HumanSide::Two => Side::Two,
            };
            match run_interactive(&config, side, input, out) {
                Ok(t) => Ok(t.exit_code()),
                Err(EngineError::Aborted) => {
                    writeln!(out, "\nplay abandoned").map_err(io_failure)?;
                    Ok(EXIT_OK)
                }
                Err(e) => Err(engine_failure(e)),
            }
        }
    }
}

fn sanitize(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() || "-_.".contains(c) { c } else { '_' })
        .collect()
}

fn transcript_path(settings: &PlaySettings, stem: String) -> PathBuf {
    if let Some(p) = &settings.out {
        return p.clone();
    }
    let dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."));
    dir.join(sanitize(&stem))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(io_failure)?;
    }
    std::fs::write(path, text).map_err(io_failure)
}

fn cmd_play(args: &PlayArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let settings = args.game.settings(args.out.clone()).map_err(usage)?;
    if settings.is_bm() {
        return cmd_play_bm(&settings, args.json, out);
    }
    let config = settings.game_config().map_err(usage)?;
    let transcript = play(&config).map_err(engine_failure)?;
    let stem = format!(
        "{}-{}-{}-{}-{}.jsonl",
        config.ruleset,
        config.length,
        config.one,
        config.two,
        config.target
    );
    let path = transcript_path(&settings, stem);
    write_file(&path, &transcript.to_jsonl())?;
    if args.json {
        let v = json!({
            "verdict": transcript.verdict.outcome,
            "certificate": transcript.verdict.certificate,
            "innings": transcript.records.len(),
            "extension_innings": transcript.extension_innings,
            "transcript": path.display().to_string(),
        });
        writeln!(out, "{v}").map_err(io_failure)?;
    } else {
        summarize(&transcript, &path, out).map_err(io_failure)?;
    }
    Ok(transcript.exit_code())
}

fn summarize(t: &Transcript, path: &Path, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "verdict: {}", t.verdict.outcome)?;
    writeln!(out, "innings: {} ({} extension)", t.records.len(), t.extension_innings)?;
    match &t.verdict.certificate {
        Certificate::Coverage { union, partial } => {
            writeln!(out, "union of TWO's families: {union}")?;
            if let Some(p) = partial {
                writeln!(out, "enumerated points covered: {}/{}", p.covered, p.checked)?;
            }
        }
        Certificate::Nested { chain, uncovered } => {
            writeln!(out, "nested chain of {} open sets checked", chain.opens.len())?;
            writeln!(out, "open set missed by TWO: {uncovered}")?;
            if !chain.avoided.is_empty() {
                writeln!(out, "points avoided: {}", chain.avoided.len())?;
            }
        }
        Certificate::Uncovered { uncovered, witness } => {
            writeln!(out, "uncovered: {uncovered}")?;
            if let Some(w) = witness {
                writeln!(out, "witness point: {}", fmt_rational(w))?;
            }
        }
        Certificate::Statistics {
            covered_measure,
            uncovered_measure,
            partial,
            note,
        } => {
            writeln!(
                out,
                "covered measure {}, uncovered measure {}",
                fmt_rational(covered_measure),
                fmt_rational(uncovered_measure)
            )?;
            if let Some(p) = partial {
                writeln!(out, "enumerated points covered: {}/{}", p.covered, p.checked)?;
            }
            writeln!(out, "note: {note}")?;
        }
        Certificate::Rejection {
            offender,
            inning,
            rejection,
            ..
        } => writeln!(out, "{offender} moved illegally at inning {inning}: {rejection}")?,
        Certificate::Violation { side, message } => writeln!(out, "invariant violated by {side}: {message}")?,
    }
    writeln!(out, "transcript: {}", path.display())
}

fn cmd_play_bm(settings: &PlaySettings, json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let one = match settings.one_id().map_err(usage)? {
        OneId::MainCompact => BmOne::Compact,
        OneId::MainGdelta(e) => BmOne::DenseGDelta(e),
        other => return Err(usage(format!("{other} has no Banach–Mazur play; use main-compact or main-gdelta"))),
    };
    let two = settings.two_id().map_err(usage)?;
    let ambient = settings.ambient().map_err(usage)?;
    let rounds = settings.innings() as usize;
    let report = play_bm(&ambient, one, two, rounds).map_err(engine_failure)?;
    let body = serde_json::to_string(&report).map_err(|e| usage(e.to_string()))?;
    let stem = format!("bm-{}-{}-{rounds}.json", settings.one.as_deref().unwrap_or(""), two);
    let path = transcript_path(settings, stem);
    write_file(&path, &format!("{body}\n"))?;
    let ok = report.nested && report.closures_nested && report.avoidance_holds;
    if json {
        writeln!(out, "{}", json!({ "ok": ok, "report": report, "transcript": path.display().to_string() })).map_err(io_failure)?;
    } else {
        writeln!(out, "Banach–Mazur play, {rounds} rounds").map_err(io_failure)?;
        writeln!(out, "nested: {}, closures nested: {}", report.nested, report.closures_nested).map_err(io_failure)?;
        writeln!(out, "avoidance holds: {}", report.avoidance_holds).map_err(io_failure)?;
        writeln!(out, "last closure: {}", report.last_closure).map_err(io_failure)?;
        writeln!(out, "transcript: {}", path.display()).map_err(io_failure)?;
    }
    Ok(if ok { EXIT_OK } else { EXIT_INVARIANT })
}

fn cmd_demo(name: &str, json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let names: Vec<&str> = if name == "all" {
        DEMOS.to_vec()
    } else if DEMOS.contains(&name) {
        vec![name]
    } else {
        return Err(usage(format!("unknown demo {name:?}; known: {}, all", DEMOS.join(", "))));
    };
    let mut all_ok = true;
    for n in names {
        let report = run_demo(n).map_err(engine_failure)?;
        all_ok &= report.passed();
        if json {
            writeln!(out, "{}", serde_json::to_string(&report).expect("plain data")).map_err(io_failure)?;
        } else {
            write!(out, "{report}").map_err(io_failure)?;
        }
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_INVARIANT })
}

fn arena_on(ambient: &Option<String>) -> Result<Arena, Failure> {
    let space = match ambient {
        Some(s) => s.parse::<Interval>().map_err(|e| usage(format!("--ambient: {e}")))?,
        None => screengame::engine::unit_interval(),
    };
    if !space.is_closed() || space.is_point() {
        return Err(usage("--ambient must be a closed interval of positive length"));
    }
    Ok(Arena::interval(space, TargetSpec::Full))
}

fn cmd_analyze(what: Analyze, out: &mut dyn Write) -> Result<i32, Failure> {
    let value = match what {
        Analyze::Core { two, tau, depth, ambient } => {
            let two: TwoId = two.parse().map_err(|e| usage(format!("--two: {e}")))?;
            let tau = tau
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<u32>().map_err(|e| usage(format!("--tau: {s}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let core = strategy_core(two, &arena_on(&ambient)?, &tau, depth).map_err(|e| usage(e.to_string()))?;
            json!({
                "two": two.to_string(),
                "tau": core.tau,
                "depth": core.depth_m,
                "core": core.set.to_string(),
                "by_depth": core.by_depth.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })
        }
        Analyze::Escape {
            two,
            witness,
            depth,
            search,
            ambient,
        } => {
            let two: TwoId = two.parse().map_err(|e| usage(format!("--two: {e}")))?;
            let w = parse_rational(&witness).map_err(|e| usage(format!("--witness: {e}")))?;
            let arena = arena_on(&ambient)?;
            let found = find_escape(two, &arena, &w, depth, search).map_err(|e| usage(e.to_string()))?;
            let revalidated = match &found {
                screengame::analyzer::EscapeSearch::Found(c) => Some(c.revalidate(&arena).map_err(|e| usage(e.to_string()))?),
                _ => None,
            };
            json!({ "search": found, "revalidated": revalidated })
        }
        Analyze::Dense { family, space } => {
            let members = parse_family(&family).map_err(|e| usage(format!("--family: {e}")))?;
            let family = is_discrete(&members).map_err(|e| usage(format!("--family is not discrete: closures of {e}")))?;
            let space: Interval = space.parse().map_err(|e| usage(format!("--space: {e}")))?;
            let w = dense_discrete_witness(&family, &space).map_err(|e| usage(e.to_string()))?;
            json!({ "witness": w, "point": fmt_rational(&w.point()) })
        }
        Analyze::Bracket { lengths, innings, target } => {
            let lengths = lengths
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<OrdinalCNF>()
                        .map(|l| LengthSpec::new(l, innings))
                        .map_err(|e| usage(format!("--lengths: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let target: TargetSpec = target.parse().map_err(|e| usage(format!("--target: {e}")))?;
            let base = screengame::engine::GameConfig::new(
                Ruleset::Discrete,
                OrdinalCNF::omega(),
                OneId::Grid,
                TwoId::Halving,
                innings.max(1),
            )
            .map_err(engine_failure)?
            .with_target(target);
            let mut twos = TwoId::catalog();
            twos.extend([TwoId::HalvingOmegaPlus1, TwoId::CantorOneshot]);
            let report = length_bracket_report(&base, &OneId::catalog(), &twos, &lengths).map_err(engine_failure)?;
            serde_json::to_value(&report).expect("plain data")
        }
    };
    writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("plain data")).map_err(io_failure)?;
    Ok(EXIT_OK)
}

fn cmd_check(seed: u64, scale: usize, json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let suites = all_suites(seed, scale);
    let mut ok = true;
    for s in &suites {
        ok &= s.passed();
        if json {
            writeln!(out, "{}", serde_json::to_string(s).expect("plain data")).map_err(io_failure)?;
        } else {
            let status = if s.passed() { "ok" } else { "FAILED" };
            writeln!(out, "{status:>6}  {:<14} {} cases (seed {})", s.name, s.cases, s.seed).map_err(io_failure)?;
            for f in &s.failures {
                writeln!(out, "        {f}").map_err(io_failure)?;
            }
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_INVARIANT })
}

/// `screengame` with real stdio.
pub fn main_with_stdio() -> i32 {
    let stdin = std::io::stdin();
    let mut input = stdin.lock();
    let mut stdout = std::io::stdout();
    let mut stderr = std::io::stderr();
    let code = run(std::env::args_os(), &mut input, &mut stdout, &mut stderr);
    let _ = stdout.flush();
    code
}
