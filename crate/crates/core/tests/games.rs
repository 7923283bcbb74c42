use screengame::demo::{run_demo, DEMOS};
use screengame::engine::{
    length_bracket_report, lift_to_closed_subspace, play, play_bm, play_lifted_one, BmOne, Certificate, GameConfig,
    LengthSpec, Outcome,
};
use screengame::one::OneId;
use screengame::ordinal::OrdinalCNF;
use screengame::sets::{int, Interval, RSet};
use screengame::strategy::Ruleset;
use screengame::targets::{Enumeration, TargetSpec};
use screengame::two::TwoId;

fn o(s: &str) -> OrdinalCNF {
    s.parse().unwrap()
}

fn cfg(ruleset: Ruleset, length: &str, one: OneId, two: TwoId, budget: u32) -> GameConfig {
    GameConfig::new(ruleset, o(length), one, two, budget).unwrap()
}

fn unit() -> RSet {
    "[0,1]".parse().unwrap()
}

#[test]
fn engine_examples() {
    let t = play(&cfg(Ruleset::Discrete, "w+1", OneId::Grid, TwoId::HalvingOmegaPlus1, 8)).unwrap();
    assert_eq!(t.verdict.outcome, Outcome::TwoWinsCovered);
    assert_eq!(t.union(), unit());

    let t = play(&cfg(Ruleset::Discrete, "w", OneId::MainCompact, TwoId::Halving, 25)).unwrap();
    assert_eq!(t.verdict.outcome, Outcome::OneWinsCertified);
    let Certificate::Nested { uncovered, .. } = &t.verdict.certificate else {
        panic!("expected a nested certificate, got {:?}", t.verdict.certificate);
    };
    assert!(uncovered.is_open_in(&unit()) && !uncovered.is_empty());

    let t = play(&cfg(Ruleset::Disjoint, "2", OneId::Grid, TwoId::ChainPuncture, 2)).unwrap();
    assert_eq!(t.verdict.outcome, Outcome::TwoWinsCovered);
    assert_eq!(t.union(), unit());
}

#[test]
fn transcripts_are_byte_identical() {
    for c in [
        cfg(Ruleset::Discrete, "w+1", OneId::AvoidFixed, TwoId::HalvingOmegaPlus1, 6),
        cfg(Ruleset::Discrete, "w", OneId::MainCompact, TwoId::Greedy, 8),
        cfg(Ruleset::Disjoint, "2", OneId::Grid, TwoId::ChainPuncture, 2),
    ] {
        assert_eq!(play(&c).unwrap().to_jsonl(), play(&c).unwrap().to_jsonl());
    }
}

#[test]
fn discrete_wins_survive_the_disjoint_ruleset() {
    let mut wins = 0;
    for length in ["1", "w", "w+1"] {
        for one in OneId::catalog() {
            for two in [TwoId::Halving, TwoId::HalvingOmegaPlus1, TwoId::Greedy, TwoId::FirstMember] {
                let d = cfg(Ruleset::Discrete, length, one, two, 8);
                let discrete = play(&d).unwrap();
                if !discrete.verdict.outcome.two_won() {
                    continue;
                }
                wins += 1;
                let c = play(&GameConfig {
                    ruleset: Ruleset::Disjoint,
                    ..d
                })
                .unwrap();
                assert!(c.verdict.outcome.two_won(), "{length} {one} {two}");
                let fams = |t: &screengame::engine::Transcript| t.records.iter().map(|r| r.two.clone()).collect::<Vec<_>>();
                assert_eq!(fams(&discrete), fams(&c));
            }
        }
    }
    assert!(wins >= OneId::catalog().len(), "only {wins} TWO wins recorded");
}

#[test]
fn bracket_over_lengths() {
    let base = cfg(Ruleset::Discrete, "w", OneId::Grid, TwoId::Halving, 12);
    let mut twos = TwoId::catalog();
    twos.push(TwoId::HalvingOmegaPlus1);
    let lengths: Vec<LengthSpec> = ["w", "w+1", "w*2"].iter().map(|l| LengthSpec::new(o(l), 10)).collect();
    let r = length_bracket_report(&base, &OneId::catalog(), &twos, &lengths).unwrap();
    assert_eq!(r.label, "experimental bracket, not tp_d");
    let sweep = |list: &[(OrdinalCNF, Vec<String>)], l: &str| list.iter().find(|(x, _)| x == &o(l)).unwrap().1.clone();
    assert!(sweep(&r.one_sweeps, "w").contains(&"one:main-compact".to_string()));
    assert!(sweep(&r.two_sweeps, "w+1").contains(&"two:halving-omega-plus-1".to_string()));
    assert_eq!(r.two_sweep_from, Some(o("w+1")));
    assert!(r.monotonicity_failures.is_empty(), "{:?}", r.monotonicity_failures);

    let cantor = base.clone().with_target(TargetSpec::Cantor);
    let r = length_bracket_report(&cantor, &OneId::catalog(), &[TwoId::CantorOneshot], &[LengthSpec::new(o("1"), 1)]).unwrap();
    assert_eq!(r.two_sweep_from, Some(o("1")));
}

#[test]
fn games_restrict_to_closed_subspaces() {
    let x = cfg(Ruleset::Discrete, "w+1", OneId::Grid, TwoId::HalvingOmegaPlus1, 8);
    let y: RSet = "[1/4,1/2];[3/4,1]".parse().unwrap();
    let lifted = lift_to_closed_subspace(&x, &y).unwrap();
    assert_eq!(lifted.target, TargetSpec::ClosedSet(y.clone()));
    let t = play(&lifted).unwrap();
    assert_eq!(t.verdict.outcome, Outcome::TwoWinsCovered);
    assert!(y.is_subset(&t.union()) && t.union().is_subset(&y));

    let mut two_pieces = cfg(Ruleset::Discrete, "w", OneId::MainCompact, TwoId::Greedy, 10)
        .with_ambient(Interval::closed(int(0), int(3)).unwrap());
    two_pieces.subspace = Some("[0,1];[2,3]".parse().unwrap());
    let t = play_lifted_one(&two_pieces, &"[2,3]".parse().unwrap()).unwrap();
    assert_eq!(t.verdict.outcome, Outcome::OneWinsCertified);
}

#[test]
fn banach_mazur_plays() {
    let r = play_bm(
        &Interval::closed(int(0), int(1)).unwrap(),
        BmOne::DenseGDelta(Enumeration::Farey),
        TwoId::BmFirstCategory(Enumeration::Dyadic),
        12,
    )
    .unwrap();
    assert!(r.nested && r.closures_nested && r.avoidance_holds);
    assert_eq!(r.one_avoided.len(), 12);
    assert!(r.last_closure.is_closed() && !r.last_closure.is_empty());
    let bad = play_bm(&Interval::closed(int(0), int(1)).unwrap(), BmOne::Compact, TwoId::Halving, 3);
    assert!(bad.is_err());
}

#[test]
fn every_demo_passes() {
    for name in DEMOS {
        let r = run_demo(name).unwrap();
        assert!(r.passed(), "{r}");
        assert!(!r.claims.is_empty());
    }
}
