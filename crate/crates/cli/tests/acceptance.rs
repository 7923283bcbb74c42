//! One PASS/FAIL line per acceptance criterion. Every check below uses its
//! own oracle (pairwise loops, hand-rolled enumerations, critical-point
//! sweeps) rather than the library's own checkers where that is practical.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use screengame::analyzer::{dense_discrete_witness, find_escape, strategy_core, EscapeSearch};
use screengame::checks::{dense_witness_families, CoverGen};
use screengame::covers::{ball_cover_on, lebesgue_number, verify_lebesgue, BallCoverIndex, Cover};
use screengame::engine::{play, Certificate, GameConfig, Outcome, Rejection, Transcript};
use screengame::one::OneId;
use screengame::ordinal::OrdinalCNF;
use screengame::sets::{int, rat, witness_radius, Interval, RSet, Radius, Rational};
use screengame::strategy::{Arena, InningInfo, Ruleset};
use screengame::targets::{CantorSpec, CountableTargetSpec, Enumeration, GDeltaSpec, TargetSpec};
use screengame::two::{cantor_one_shot, halving_refinement, TwoId};

const SEED: u64 = 2026;

struct Check {
    ok: bool,
    detail: String,
}

fn check(ok: bool, detail: impl Into<String>) -> Check {
    Check { ok, detail: detail.into() }
}

fn unit() -> Interval {
    Interval::closed(int(0), int(1)).unwrap()
}

fn o(s: &str) -> OrdinalCNF {
    s.parse().unwrap()
}

fn pow(base: i64, n: u32) -> Rational {
    Rational::from_integer(base.pow(n).into())
}

fn closures_pairwise_disjoint(family: &[RSet]) -> bool {
    (0..family.len()).all(|i| (i + 1..family.len()).all(|j| family[i].closure().intersect(&family[j].closure()).is_empty()))
}

fn each_inside_some(family: &[RSet], cover: &[RSet]) -> bool {
    family.iter().all(|f| cover.iter().any(|u| f.is_subset(u)))
}

fn union(family: &[RSet]) -> RSet {
    family.iter().fold(RSet::empty(), |acc, m| acc.union(m))
}

fn closure_of_union(family: &[RSet]) -> RSet {
    family.iter().fold(RSet::empty(), |acc, m| acc.union(&m.closure()))
}

fn families(t: &Transcript) -> Vec<Vec<RSet>> {
    t.records.iter().map(|r| r.two.clone()).collect()
}

/// `0, 1, 1/2, 1/3, 2/3, 1/4, 3/4, ...`
fn farey_oracle(n: usize) -> Vec<Rational> {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let mut out = vec![int(0), int(1)];
    let mut q = 2;
    while out.len() < n {
        for p in 1..q {
            if gcd(p, q) == 1 {
                out.push(rat(p, q));
            }
        }
        q += 1;
    }
    out.truncate(n);
    out
}

// 1: the halving refinement on 500 seeded covers
fn halving() -> Check {
    let mut g = CoverGen::new(SEED);
    let mut bad = Vec::new();
    for i in 0..500 {
        let piece = g.subinterval();
        let cover = g.open_cover(&piece);
        let ok = halving_refinement(&cover, &piece).is_ok_and(|h| {
            let fam = h.family.members();
            let covered = union(fam);
            let whole = RSet::from(piece.clone());
            let residual = whole.subtract(&covered);
            closures_pairwise_disjoint(fam)
                && each_inside_some(fam, cover.members())
                && covered.is_subset(&whole)
                && residual.measure() * int(2) == piece.length()
        });
        if !ok {
            bad.push(i);
        }
    }
    check(bad.is_empty(), format!("500 covers, failures {bad:?}"))
}

fn residual_halves(t: &Transcript) -> bool {
    let whole = RSet::from(unit());
    let mut covered = RSet::empty();
    t.records
        .iter()
        .filter(|r| r.inning.is_finite())
        .enumerate()
        .all(|(k, r)| {
            covered = covered.union(&union(&r.two));
            whole.subtract(&covered).measure() == Rational::new(1.into(), pow(2, k as u32 + 1).to_integer())
        })
}

// 2: TWO wins in one more inning
fn omega_plus_one() -> Check {
    let mut notes = Vec::new();
    let mut ok = true;
    for one in [OneId::Grid, OneId::AvoidFixed] {
        let start = Instant::now();
        let cfg = GameConfig::new(Ruleset::Discrete, o("w+1"), one, TwoId::HalvingOmegaPlus1, 12).unwrap();
        let t = play(&cfg).unwrap();
        let took = start.elapsed();
        let limit_played = t.records.iter().any(|r| !r.inning.is_finite());
        let this = t.verdict.outcome == Outcome::TwoWinsCovered
            && t.union() == RSet::from(unit())
            && limit_played
            && residual_halves(&t)
            && took < Duration::from_secs(5);
        ok &= this;
        notes.push(format!("{one}: {} innings {:.2?}", t.records.len(), took));
    }
    check(ok, notes.join(", "))
}

/// `cl(O_{n+1}) ⊆ T_n ⊆ O_n`, `T_n` misses TWO's closures, and the last
/// open set is nonempty and uncovered.
fn nested_chain_holds(t: &Transcript) -> bool {
    let Certificate::Nested { chain, uncovered } = &t.verdict.certificate else {
        return false;
    };
    let fams = families(t);
    let n = chain.cores.len();
    n == fams.len()
        && chain.opens.len() == n + 1
        && (0..n).all(|i| {
            chain.opens[i + 1].closure().is_subset(&chain.cores[i])
                && chain.cores[i].is_subset(&chain.opens[i])
                && chain.cores[i].intersect(&closure_of_union(&fams[i])).is_empty()
        })
        && Some(uncovered) == chain.opens.last()
        && !uncovered.is_empty()
        && uncovered.intersect(&t.union()).is_empty()
}

fn one_main_sweep() -> (bool, String) {
    let mut ok = true;
    let mut slowest = Duration::ZERO;
    for two in TwoId::catalog() {
        let start = Instant::now();
        let cfg = GameConfig::new(Ruleset::Discrete, o("w"), OneId::MainCompact, two, 25).unwrap();
        let t = play(&cfg).unwrap();
        slowest = slowest.max(start.elapsed());
        ok &= t.verdict.outcome == Outcome::OneWinsCertified && t.records.len() == 25 && nested_chain_holds(&t);
    }
    ok &= slowest < Duration::from_secs(5);
    (ok, format!("{} TWO bots, slowest {:.2?}", TwoId::catalog().len(), slowest))
}

// 3: ONE's certified wins in the ω-game
fn one_main() -> Check {
    let (ok, detail) = one_main_sweep();
    check(ok, detail)
}

// 4: the disjoint and discrete games differ on [0,1]
fn inequivalence() -> Check {
    let out = Command::new(env!("CARGO_BIN_EXE_screengame"))
        .args(["demo", "inequivalence"])
        .output()
        .expect("run the binary");
    let text = String::from_utf8_lossy(&out.stdout);
    let demo_ok = out.status.code() == Some(0) && !text.contains("FAILED") && text.contains("[ok] disjoint ruleset");

    let cfg = GameConfig::new(Ruleset::Disjoint, o("2"), OneId::Grid, TwoId::ChainPuncture, 2).unwrap();
    let disjoint = play(&cfg).unwrap();
    let two_innings = disjoint.verdict.outcome == Outcome::TwoWinsCovered
        && disjoint.records.len() == 2
        && disjoint.union() == RSet::from(unit());
    let discrete = play(&GameConfig {
        ruleset: Ruleset::Discrete,
        ..cfg
    })
    .unwrap();
    let rejected = match &discrete.verdict.certificate {
        Certificate::Rejection {
            rejection: Rejection::NotDiscrete { .. },
            moved,
            ..
        } => discrete.verdict.outcome == Outcome::OneWinsForfeit && Some(moved) == disjoint.records.first().map(|r| &r.two),
        _ => false,
    };
    let (main_ok, _) = one_main_sweep();
    check(
        demo_ok && two_innings && rejected && main_ok,
        format!("demo exit {:?}, disjoint win {two_innings}, discrete rejects {rejected}, ω-game {main_ok}", out.status.code()),
    )
}

/// Level-`n` pieces of the middle-thirds construction on `[a,b]`.
fn cantor_pieces(ambient: &Interval, n: u32) -> Vec<Interval> {
    let mut pieces = vec![ambient.clone()];
    for _ in 0..n {
        pieces = pieces
            .iter()
            .flat_map(|p| {
                let third = p.length() / int(3);
                [
                    Interval::closed(p.lo().clone(), p.lo() + &third).unwrap(),
                    Interval::closed(p.hi() - &third, p.hi().clone()).unwrap(),
                ]
            })
            .collect();
    }
    pieces
}

// 5: one discrete family covers the Cantor set
fn cantor() -> Check {
    let mut g = CoverGen::new(SEED);
    let mut bad = Vec::new();
    for i in 0..100 {
        let ambient = if g.coin(0.5) { unit() } else { g.subinterval() };
        let cover = g.open_cover(&ambient);
        let spec = CantorSpec::new(ambient.clone()).unwrap();
        let ok = cantor_one_shot(&cover, &spec, &RSet::from(ambient.clone())).is_ok_and(|shot| {
            let fam = shot.family.members();
            let covered = union(fam);
            let bound = ambient.length() / pow(3, shot.level + 1);
            cantor_pieces(&ambient, shot.level)
                .into_iter()
                .all(|p| RSet::from(p).is_subset(&covered))
                && each_inside_some(fam, cover.members())
                && (0..fam.len()).all(|a| {
                    (a + 1..fam.len()).all(|b| fam[a].closure_distance(&fam[b]).is_some_and(|d| d >= bound))
                })
        });
        if !ok {
            bad.push(i);
        }
    }
    let mut sweep = true;
    for one in OneId::catalog() {
        let cfg = GameConfig::new(Ruleset::Discrete, o("1"), one, TwoId::CantorOneshot, 1)
            .unwrap()
            .with_target(TargetSpec::Cantor);
        sweep &= play(&cfg).unwrap().verdict.outcome == Outcome::TwoWinsCovered;
    }
    check(bad.is_empty() && sweep, format!("100 covers, failures {bad:?}; length-1 sweep {sweep}"))
}

// 6: the rationals, one point per inning but never in one shot
fn rationals() -> Check {
    let q = farey_oracle(25);
    let target = TargetSpec::Countable(CountableTargetSpec {
        enumeration: Enumeration::Farey,
    });
    let mut prefix_ok = true;
    for one in OneId::catalog() {
        let cfg = GameConfig::new(Ruleset::Discrete, o("w"), one, TwoId::Countable(Enumeration::Farey), 25)
            .unwrap()
            .with_target(target.clone());
        let t = play(&cfg).unwrap();
        let mut covered = RSet::empty();
        for (n, r) in t.records.iter().enumerate() {
            covered = covered.union(&union(&r.two));
            prefix_ok &= q[..=n].iter().all(|x| covered.contains_point(x));
        }
        prefix_ok &= t.records.len() == 25 && t.verdict.outcome != Outcome::OneWinsCertified;
    }
    let fams = dense_witness_families(SEED, 200);
    let mut missed = 0;
    for (space, family) in &fams {
        if let Ok(w) = dense_discrete_witness(family, space) {
            let p = w.point();
            if space.contains(&p) && family.members().iter().all(|m| !m.contains_point(&p)) {
                missed += 1;
            }
        }
    }
    check(
        prefix_ok && missed == 200,
        format!("q_0..q_(n-1) covered after n innings: {prefix_ok}; {missed}/200 families miss a rational"),
    )
}

/// `(ω²·c2 + ω·c1 + c0)⁻` by cases, as coefficient triples.
fn alpha_minus_oracle(c2: u64, c1: u64, c0: u64) -> (u64, u64, u64) {
    if c0 > 0 {
        (c2, c1, 1)
    } else if c1 > 0 {
        (c2, c1 - 1, 1)
    } else {
        (c2, 0, 0)
    }
}

fn triple(a: &OrdinalCNF) -> (u64, u64, u64) {
    let mut t = (0, 0, 0);
    for &(e, c) in a.terms() {
        match e {
            2 => t.0 = c,
            1 => t.1 = c,
            0 => t.2 = c,
            _ => panic!("exponent {e} out of range"),
        }
    }
    t
}

fn from_triple((c2, c1, c0): (u64, u64, u64)) -> OrdinalCNF {
    OrdinalCNF::from_terms([(2, c2), (1, c1), (0, c0)].into_iter().filter(|&(_, c)| c > 0))
}

// 7: α⁻ below ω³
fn alpha_minus() -> Check {
    let mut cases = 0;
    let mut bad = Vec::new();
    for c2 in 0..=3 {
        for c1 in 0..=3 {
            for c0 in 0..=3 {
                if c2 == 0 && c1 == 0 {
                    continue;
                }
                cases += 1;
                let alpha = from_triple((c2, c1, c0));
                let expect = alpha_minus_oracle(c2, c1, c0);
                let got = alpha.alpha_minus().unwrap();
                let infinite = expect.0 > 0 || expect.1 > 0;
                let ok = triple(&got) == expect
                    && expect <= (c2, c1, c0)
                    && got <= alpha
                    && (!infinite || got.alpha_minus().unwrap() == got)
                    && (infinite || (expect == (0, 0, 1) && got.alpha_minus().is_err()));
                if !ok {
                    bad.push(alpha.to_string());
                }
            }
        }
    }
    check(bad.is_empty(), format!("{cases} ordinals, mismatches {bad:?}"))
}

// 8: the witness radius at 0 of {[1/(2n+1), 1/(2n)] : n ≤ N}
fn witness_decay() -> Check {
    let zero = int(0);
    let mut prev: Option<Rational> = None;
    let mut ok = true;
    for n in 2..=50i64 {
        let family: Vec<RSet> = (1..=n)
            .map(|k| RSet::from(Interval::closed(rat(1, 2 * k + 1), rat(1, 2 * k)).unwrap()))
            .collect();
        let r = match witness_radius(&family, &zero) {
            Radius::Finite(r) => r,
            Radius::Infinite => {
                ok = false;
                continue;
            }
        };
        ok &= r == rat(1, 2 * n - 1);
        ok &= prev.as_ref().is_none_or(|p| &r < p);
        prev = Some(r);
    }
    check(ok, "N = 2..50")
}

/// Whether every window `[x, x+δ] ⊆ [a,b]` lies in one member, decided on
/// the critical starts and the midpoints between them.
fn lebesgue_oracle(cover: &Cover, target: &Interval, delta: &Rational) -> bool {
    let (a, last) = (target.lo().clone(), target.hi() - delta);
    if last < a {
        return true;
    }
    let comps: Vec<Interval> = cover.members().iter().flat_map(|m| m.components().to_vec()).collect();
    let mut xs = vec![a.clone(), last.clone()];
    for c in &comps {
        xs.push(c.lo().clone());
        xs.push(c.hi() - delta);
    }
    xs.retain(|x| x >= &a && x <= &last);
    xs.sort();
    xs.dedup();
    let mids: Vec<Rational> = xs.windows(2).map(|w| (&w[0] + &w[1]) / int(2)).collect();
    let fits = |x: &Rational| {
        let end = x + delta;
        comps.iter().any(|c| {
            (c.lo() < x || (c.lo() == x && !c.lo_open())) && (&end < c.hi() || (&end == c.hi() && !c.hi_open()))
        })
    };
    xs.iter().chain(&mids).all(fits)
}

// 9: Lebesgue numbers
fn lebesgue() -> Check {
    let mut g = CoverGen::new(SEED);
    let mut bad = Vec::new();
    for i in 0..500 {
        let piece = g.subinterval();
        let cover = g.open_cover(&piece);
        let ok = lebesgue_number(&cover).is_ok_and(|d| {
            d > int(0) && verify_lebesgue(&cover, &d).unwrap() == Ok(()) && lebesgue_oracle(&cover, &piece, &d)
        });
        if !ok {
            bad.push(i);
        }
    }
    let pair = Cover::over_interval(
        unit(),
        vec!["(-1/8,1/2)".parse().unwrap(), "(1/4,9/8)".parse().unwrap()],
    )
    .unwrap();
    let window = verify_lebesgue(&pair, &rat(1, 4)).unwrap();
    let fixed = window.as_ref().is_err_and(|w| w.to_string() == "[1/4,1/2]")
        && !lebesgue_oracle(&pair, &unit(), &rat(1, 4))
        && verify_lebesgue(&pair, &rat(1, 8)).unwrap() == Ok(())
        && lebesgue_oracle(&pair, &unit(), &rat(1, 8));
    check(bad.is_empty() && fixed, format!("500 covers, failures {bad:?}; fixed pair {fixed}"))
}

// 10: ONE wins relative to the irrationals
fn gdelta() -> Check {
    let q = farey_oracle(25);
    let target = TargetSpec::GDelta(GDeltaSpec {
        deleted: Enumeration::Farey,
    });
    let mut ok = true;
    let mut slowest = Duration::ZERO;
    for two in TwoId::catalog() {
        let start = Instant::now();
        let cfg = GameConfig::new(Ruleset::Discrete, o("w"), OneId::MainGdelta(Enumeration::Farey), two, 25)
            .unwrap()
            .with_target(target.clone());
        let t = play(&cfg).unwrap();
        slowest = slowest.max(start.elapsed());
        ok &= t.verdict.outcome == Outcome::OneWinsCertified && nested_chain_holds(&t);
        if let Certificate::Nested { chain, .. } = &t.verdict.certificate {
            ok &= chain.avoided == q;
            ok &= (1..chain.opens.len()).all(|n| {
                let cl = chain.opens[n].closure();
                q[..n].iter().all(|x| !cl.contains_point(x))
            });
        }
    }
    check(ok, format!("{} TWO bots, 25 innings, slowest {:.2?}", TwoId::catalog().len(), slowest))
}

// 11: the analyzer on two simple bots
fn analyzer() -> Check {
    let arena = Arena::interval(unit(), TargetSpec::Full);
    let core = strategy_core(TwoId::FirstMember, &arena, &[], 10).unwrap();
    let bound = RSet::from(Interval::closed(int(0), Rational::new(1.into(), pow(2, 10).to_integer())).unwrap());
    let nests = core.by_depth.windows(2).all(|w| w[1].is_subset(&w[0]));
    let inside = core.set.is_subset(&bound);

    let two = TwoId::Countable(Enumeration::Triadic);
    let half = rat(1, 2);
    let escape = match find_escape(two, &arena, &half, 5, 12).unwrap() {
        EscapeSearch::Found(c) => {
            let revalidates = c.revalidate(&arena).unwrap();
            // replay by hand
            let mut bot = two.build(&arena).unwrap();
            let by_hand = c.indices.iter().enumerate().all(|(step, &m)| {
                let cover = ball_cover_on(BallCoverIndex::new(m).unwrap(), &unit());
                let fam = bot.respond(&InningInfo::new(OrdinalCNF::nat(step as u64), step), &cover).unwrap();
                !closure_of_union(&fam).contains_point(&half)
            });
            c.indices.len() == 5 && revalidates && by_hand
        }
        EscapeSearch::Exhausted { .. } => false,
    };
    check(
        nests && inside && escape,
        format!("C_∅ at depth 10 = {}, nests {nests}; escape from {two} at 1/2: {escape}", core.set),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("halving refinement", halving),
        ("ω+1 win on [0,1]", omega_plus_one),
        ("ONE's ω-game certificates", one_main),
        ("disjoint vs discrete", inequivalence),
        ("Cantor one-shot", cantor),
        ("rationals", rationals),
        ("α⁻", alpha_minus),
        ("witness-radius decay", witness_decay),
        ("Lebesgue numbers", lebesgue),
        ("dense G_δ relative game", gdelta),
        ("analyzer", analyzer),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            check(false, format!("panicked: {msg}"))
        });
        if !result.ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {title}: {} [{:.2?}]",
            i + 1,
            if result.ok { "PASS" } else { "FAIL" },
            result.detail,
            start.elapsed()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
