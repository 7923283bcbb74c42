//! Python bindings: thin wrappers that take and return strings in the CLI's notation.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use screengame::covers::{lebesgue_number as lebesgue, Cover};
use screengame::demo::{run_demo, DEMOS};
use screengame::engine::{play as play_game, GameConfig};
use screengame::ordinal::OrdinalCNF;
use screengame::sets::RSet;
use screengame::strategy::Ruleset;
use screengame::targets::TargetSpec;

fn bad<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse<T: std::str::FromStr>(what: &str, s: &str) -> PyResult<T>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e| PyValueError::new_err(format!("{what}: {e}")))
}

/// Plays one match and returns `(outcome, transcript_jsonl)`.
#[pyfunction]
#[pyo3(signature = (length, one, two, ruleset = "discrete", target = "full", innings = 12))]
fn play(length: &str, one: &str, two: &str, ruleset: &str, target: &str, innings: u32) -> PyResult<(String, String)> {
    let config = GameConfig::new(
        parse::<Ruleset>("ruleset", ruleset)?,
        parse::<OrdinalCNF>("length", length)?,
        parse("one", one)?,
        parse("two", two)?,
        innings,
    )
    .map_err(bad)?
    .with_target(parse::<TargetSpec>("target", target)?);
    let t = play_game(&config).map_err(bad)?;
    Ok((t.verdict.outcome.to_string(), t.to_jsonl()))
}

/// Runs a named demo; returns `(passed, report_text)`.
#[pyfunction]
fn demo(name: &str) -> PyResult<(bool, String)> {
    let r = run_demo(name).map_err(bad)?;
    Ok((r.passed(), r.to_string()))
}

#[pyfunction]
fn demos() -> Vec<&'static str> {
    DEMOS.to_vec()
}

#[pyfunction]
fn alpha_minus(ordinal: &str) -> PyResult<String> {
    let a: OrdinalCNF = parse("ordinal", ordinal)?;
    Ok(a.alpha_minus().map_err(bad)?.to_string())
}

/// Lebesgue number of an open cover of `target`, as an exact fraction string.
#[pyfunction]
fn lebesgue_number(target: &str, members: Vec<String>) -> PyResult<String> {
    let members = members.iter().map(|m| parse::<RSet>("member", m)).collect::<PyResult<Vec<_>>>()?;
    let cover = Cover::new(parse("target", target)?, members).map_err(bad)?;
    Ok(lebesgue(&cover).map_err(bad)?.to_string())
}

#[pymodule]
fn screengame_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(play, m)?)?;
    m.add_function(wrap_pyfunction!(demo, m)?)?;
    m.add_function(wrap_pyfunction!(demos, m)?)?;
    m.add_function(wrap_pyfunction!(alpha_minus, m)?)?;
    m.add_function(wrap_pyfunction!(lebesgue_number, m)?)?;
    Ok(())
}
