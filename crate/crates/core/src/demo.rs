//! Scripted scenarios, one per result, each reduced to predicates that are
//! checked when the demo runs.

use std::fmt;

use serde::Serialize;

use crate::checks::{suite_cantor, suite_dense_witness};
use crate::engine::{play, play_bm, BmOne, Certificate, EngineError, GameConfig, Outcome, Rejection, Transcript};
use crate::one::OneId;
use crate::ordinal::OrdinalCNF;
use crate::sets::{fmt_rational, pow2_neg, RSet, Rational};
use crate::strategy::Ruleset;
use crate::targets::{CountableTargetSpec, Enumeration, GDeltaSpec, TargetSpec};
use crate::two::TwoId;

pub const DEMOS: [&str; 7] = [
    "one-main",
    "omega-plus-one",
    "cantor",
    "rationals",
    "gdelta",
    "alpha-minus",
    "inequivalence",
];

const SEED: u64 = 2026;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub text: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DemoReport {
    pub name: &'static str,
    pub statement: &'static str,
    pub claims: Vec<Claim>,
    /// Free-form lines shown above the claims.
    pub table: Vec<String>,
}

impl DemoReport {
    fn new(name: &'static str, statement: &'static str) -> Self {
        DemoReport {
            name,
            statement,
            claims: Vec::new(),
            table: Vec::new(),
        }
    }

    fn claim(&mut self, holds: bool, text: impl Into<String>) {
        self.claims.push(Claim { text: text.into(), holds });
    }

    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }
}

impl fmt::Display for DemoReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "demo {}: {}", self.name, self.statement)?;
        for line in &self.table {
            writeln!(f, "  {line}")?;
        }
        for c in &self.claims {
            writeln!(f, "  [{}] {}", if c.holds { "ok" } else { "FAILED" }, c.text)?;
        }
        Ok(())
    }
}

pub fn run_demo(name: &str) -> Result<DemoReport, EngineError> {
    match name {
        "one-main" => one_main(),
        "omega-plus-one" => omega_plus_one(),
        "cantor" => cantor(),
        "rationals" => rationals(),
        "gdelta" => gdelta(),
        "alpha-minus" => Ok(alpha_minus()),
        "inequivalence" => inequivalence(),
        other => Err(EngineError::Config(format!("unknown demo {other:?}; known: {}", DEMOS.join(", ")))),
    }
}

fn o(s: &str) -> OrdinalCNF {
    s.parse().expect("literal ordinal")
}

fn families(t: &Transcript) -> Vec<Vec<RSet>> {
    t.records.iter().map(|r| r.two.clone()).collect()
}

/// Re-checks a certified ONE win from the transcript alone.
fn certified(t: &Transcript) -> bool {
    let Certificate::Nested { chain, uncovered } = &t.verdict.certificate else {
        return false;
    };
    t.verdict.outcome == Outcome::OneWinsCertified
        && chain.check(&families(t)).is_ok()
        && !uncovered.is_empty()
        && uncovered.intersect(&t.union()).is_empty()
}

fn one_main_claims(report: &mut DemoReport) -> Result<(), EngineError> {
    for two in TwoId::catalog() {
        let cfg = GameConfig::new(Ruleset::Discrete, o("w"), OneId::MainCompact, two, 25)?;
        let t = play(&cfg)?;
        let last = match &t.verdict.certificate {
            Certificate::Nested { uncovered, .. } => uncovered.to_string(),
            _ => "-".into(),
        };
        report.claim(
            certified(&t) && t.records.len() == 25,
            format!("one:main-compact vs {two}, 25 innings: cl(O_n+1) ⊆ T_n ⊆ O_n every inning; {last} is open and missed by TWO"),
        );
    }
    Ok(())
}

fn one_main() -> Result<DemoReport, EngineError> {
    let mut r = DemoReport::new(
        "one-main",
        "on [0,1] ONE defeats every TWO bot in the ω-length discrete game by steering a Banach–Mazur play",
    );
    one_main_claims(&mut r)?;
    let bm = play_bm(&crate::engine::unit_interval(), BmOne::Compact, TwoId::Empty, 10)?;
    r.claim(bm.nested && bm.closures_nested, "the underlying Banach–Mazur moves are nested with nested closures");
    Ok(r)
}

fn omega_plus_one() -> Result<DemoReport, EngineError> {
    let mut r = DemoReport::new(
        "omega-plus-one",
        "on [0,1] TWO wins the discrete game of length ω+1: halve the rest every inning, finish at the limit",
    );
    let unit = RSet::from(crate::engine::unit_interval());
    for one in [OneId::Grid, OneId::AvoidFixed, OneId::MainCompact] {
        let cfg = GameConfig::new(Ruleset::Discrete, o("w+1"), one, TwoId::HalvingOmegaPlus1, 12)?;
        let t = play(&cfg)?;
        r.claim(
            t.verdict.outcome == Outcome::TwoWinsCovered && t.union() == unit,
            format!("{one}: two-wins-covered and the union is exactly [0,1]"),
        );
        let mut covered = RSet::empty();
        let mut halves = true;
        let mut after_two = None;
        for (n, rec) in t.records.iter().enumerate().filter(|(_, rec)| rec.inning.is_finite()) {
            covered = covered.union(&RSet::union_all(&rec.two));
            let left = unit.subtract(&covered).measure();
            halves &= left == pow2_neg(n as u32 + 1);
            if n == 1 {
                after_two = Some(left);
            }
        }
        r.claim(halves, format!("{one}: after inning n the uncovered measure is exactly 2^-n"));
        let quarter = Rational::new(1.into(), 4.into());
        r.claim(
            after_two.as_ref().is_some_and(|m| m <= &quarter),
            format!(
                "{one}: after two innings at most 1/4 is left ({})",
                after_two.map(|m| fmt_rational(&m)).unwrap_or_default()
            ),
        );
        r.table.push(format!("{one}: {} innings, {} extension innings", t.records.len(), t.extension_innings));
    }
    Ok(r)
}

fn cantor() -> Result<DemoReport, EngineError> {
    let mut r = DemoReport::new(
        "cantor",
        "the Cantor set is zero-dimensional: TWO covers it with one discrete family",
    );
    for one in [OneId::Grid, OneId::AvoidFixed, OneId::MainCompact] {
        let cfg = GameConfig::new(Ruleset::Discrete, o("1"), one, TwoId::CantorOneshot, 1)?.with_target(TargetSpec::Cantor);
        let t = play(&cfg)?;
        r.claim(
            t.verdict.outcome == Outcome::TwoWinsCovered && t.records.len() == 1,
            format!("{one}: one inning, two-wins-covered on the Cantor target"),
        );
    }
    let s = suite_cantor(SEED, 100);
    r.claim(
        s.passed(),
        format!("{} seeded covers: every level-n piece covered, refinement witnessed, gaps ≥ 3^-(n+1)", s.cases),
    );
    Ok(r)
}

fn rationals() -> Result<DemoReport, EngineError> {
    let mut r = DemoReport::new(
        "rationals",
        "for the rationals TWO covers one point per inning, yet no single discrete family covers them",
    );
    let q = TargetSpec::Countable(CountableTargetSpec {
        enumeration: Enumeration::Farey,
    });
    for one in [OneId::Grid, OneId::AvoidFixed, OneId::MainCompact] {
        let cfg = GameConfig::new(Ruleset::Discrete, o("w"), one, TwoId::Countable(Enumeration::Farey), 25)?.with_target(q.clone());
        let t = play(&cfg)?;
        let partial = match &t.verdict.certificate {
            Certificate::Statistics { partial: Some(p), .. } | Certificate::Coverage { partial: Some(p), .. } => Some(p.clone()),
            _ => None,
        };
        r.claim(
            partial.is_some_and(|p| p.checked == 25 && p.covered == 25),
            format!("{one}: after 25 innings q_0..q_24 are all covered"),
        );
        r.claim(
            t.verdict.outcome != Outcome::OneWinsCertified,
            format!("{one}: no ONE win is claimed from non-coverage at truncation"),
        );
    }
    let s = suite_dense_witness(SEED, 200);
    r.claim(
        s.passed(),
        format!("{} one-shot families against one:avoid-fixed each miss a rational", s.cases),
    );
    Ok(r)
}

fn gdelta() -> Result<DemoReport, EngineError> {
    let mut r = DemoReport::new(
        "gdelta",
        "relative to the dense G_δ [0,1] ∖ {q_n}, ONE still wins the ω-length discrete game",
    );
    let g = GDeltaSpec {
        deleted: Enumeration::Farey,
    };
    let unit = crate::engine::unit_interval();
    for two in TwoId::catalog() {
        let cfg = GameConfig::new(Ruleset::Discrete, o("w"), OneId::MainGdelta(Enumeration::Farey), two, 25)?.with_target(TargetSpec::GDelta(g));
        let t = play(&cfg)?;
        let avoided = match &t.verdict.certificate {
            Certificate::Nested { chain, .. } => chain.avoided == g.deleted.first(25, &unit),
            _ => false,
        };
        r.claim(
            certified(&t) && avoided,
            format!("{two}: certified, and the nested closures avoid q_0..q_24"),
        );
    }
    let bm = play_bm(&unit, BmOne::DenseGDelta(Enumeration::Farey), TwoId::BmFirstCategory(Enumeration::Dyadic), 25)?;
    r.claim(
        bm.nested && bm.closures_nested && bm.avoidance_holds,
        "Banach–Mazur: ONE's closures avoid the deleted points while TWO avoids the dyadic ones",
    );
    Ok(r)
}

fn alpha_minus() -> DemoReport {
    let mut r = DemoReport::new(
        "alpha-minus",
        "a TWO win at an infinite length α transfers down to α⁻",
    );
    let rows = [
        ("w*2", "w+1"),
        ("w^2", "w^2*1"),
        ("w+5", "w+1"),
        ("w", "1"),
        ("w^2+w*3", "w^2*1+w*2+1"),
        ("w^3*2+4", "w^3*2+1"),
    ];
    for (a, expect) in rows {
        let alpha = o(a);
        let m = alpha.alpha_minus().expect("infinite");
        r.table.push(format!("{alpha:>12}  ->  {m}"));
        r.claim(m == o(expect) && m <= alpha, format!("({alpha})⁻ = {expect} ≤ {alpha}"));
        if let Ok(mm) = m.alpha_minus() {
            r.claim(mm == m, format!("(({alpha})⁻)⁻ = ({alpha})⁻"));
        }
    }
    r
}

fn inequivalence() -> Result<DemoReport, EngineError> {
    let mut r = DemoReport::new(
        "inequivalence",
        "on [0,1] the disjoint and discrete games differ: TWO wins the first in two innings, ONE the second",
    );
    let cfg = GameConfig::new(Ruleset::Disjoint, o("2"), OneId::Grid, TwoId::ChainPuncture, 2)?;
    let disjoint = play(&cfg)?;
    let unit = RSet::from(crate::engine::unit_interval());
    r.claim(
        disjoint.verdict.outcome == Outcome::TwoWinsCovered && disjoint.records.len() == 2 && disjoint.union() == unit,
        "disjoint ruleset: chain puncture then cleanup covers [0,1] exactly in 2 innings",
    );
    if let Some(first) = disjoint.records.first() {
        r.table.push(format!("inning 0 family: {}", show(&first.two)));
    }
    if let Some(second) = disjoint.records.get(1) {
        r.table.push(format!("inning 1 family: {}", show(&second.two)));
    }
    let discrete = play(&GameConfig {
        ruleset: Ruleset::Discrete,
        ..cfg
    })?;
    let same = match &discrete.verdict.certificate {
        Certificate::Rejection {
            rejection: Rejection::NotDiscrete { point, .. },
            moved,
            ..
        } => {
            r.table.push(format!("discrete ruleset rejects it: closures share {}", fmt_rational(point)));
            disjoint.records.first().is_some_and(|rec| &rec.two == moved)
        }
        _ => false,
    };
    r.claim(
        same && discrete.verdict.outcome == Outcome::OneWinsForfeit,
        "discrete ruleset: the same first family is rejected as not discrete",
    );
    one_main_claims(&mut r)?;
    Ok(r)
}

fn show(family: &[RSet]) -> String {
    family.iter().map(ToString::to_string).collect::<Vec<_>>().join("  ")
}
