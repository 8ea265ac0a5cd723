//! Acceptance gate: nine executable criteria covering the outcome codec,
//! each game's payoff rules, emergent coordination among table learners,
//! cross-game tournaments, dataset determinism, and configuration
//! rejection. Each test asserts its criterion at the stated tolerance and
//! prints one `acceptance N (...): PASS` line (shown under
//! `cargo test -- --nocapture`).

use std::time::Instant;

use multigame::codec::{decode_index, encode_history, table_length, HistoryWindow};
use multigame::engine::{GamePlan, OrderMode, OutputOptions, PlayerSelection, PopulationGroup};
use multigame::games::{GameSpec, PayoffMatrix};
use multigame::stats::{finalize_dataset, mg_volatility_from};
use multigame::strategies::StrategyState;
use multigame::{
    parse_tournament_spec, run_tournament, AdaptationPolicy, AgentId, ConfigError, StrategySpec,
    TournamentPlan, Violation,
};

const SCENARIO: &str = include_str!("../../../configs/two_game_scenario.json");

fn plan(population: Vec<PopulationGroup>, games: Vec<GamePlan>, seed: u64) -> TournamentPlan {
    TournamentPlan {
        seed,
        order_mode: OrderMode::OrderedUnknown,
        population,
        games,
        adaptation: AdaptationPolicy::default(),
        output: OutputOptions::default(),
    }
}

fn group(count: usize, strategy: StrategySpec) -> PopulationGroup {
    PopulationGroup { count, strategy }
}

fn cumulative_of(records: &[multigame::StatsRecord], agent: &str) -> f64 {
    records
        .iter()
        .rfind(|r| r.agent_id == AgentId::new(agent))
        .expect("agent played")
        .cumulative_payoff
}

#[test]
fn acceptance_1_history_encoding() {
    let start = Instant::now();
    let binary = encode_history(&HistoryWindow::new(vec![0, 1, 0], 2).unwrap()).unwrap();
    let ternary = encode_history(&HistoryWindow::new(vec![2, 2, 2], 3).unwrap()).unwrap();
    let elapsed = start.elapsed();

    assert_eq!(binary, 2, "[0,1,0] in base 2 must encode to 2");
    assert_eq!(ternary, 26, "[2,2,2] in base 3 must encode to 26");
    assert_eq!(table_length(2, 3).unwrap(), 8);
    assert_eq!(table_length(3, 3).unwrap(), 27);
    assert!(elapsed.as_micros() < 1000, "took {elapsed:?}, budget 1ms");
    println!("acceptance 1 (history encoding, worked values): PASS");
}

#[test]
fn acceptance_2_exhaustive_roundtrip() {
    let start = Instant::now();
    let mut checked = 0u64;
    for q in 2..=5u32 {
        for m in 1..=4usize {
            let len = table_length(q, m).unwrap();
            assert!(len <= 4096, "q={q} m={m} exceeds the sweep bound");
            // Index -> window -> index is the identity...
            for index in 0..len {
                let window = decode_index(index, q, m).unwrap();
                assert_eq!(window.digits().len(), m);
                assert_eq!(encode_history(&window).unwrap(), index, "q={q} m={m}");
            }
            // ...and encoding follows lexicographic window order.
            let mut digits = vec![0u32; m];
            for index in 0..len {
                let window = HistoryWindow::new(digits.clone(), q).unwrap();
                assert_eq!(encode_history(&window).unwrap(), index, "q={q} m={m}");
                for slot in (0..m).rev() {
                    digits[slot] += 1;
                    if digits[slot] < q {
                        break;
                    }
                    digits[slot] = 0;
                }
            }
            checked += 2 * len;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1s");
    println!("acceptance 2 (exhaustive index roundtrip, {checked} checks): PASS");
}

#[test]
fn acceptance_3_ipd_exact_payoffs() {
    let mutual = run_tournament(&plan(
        vec![group(2, StrategySpec::TitForTat)],
        vec![GamePlan {
            spec: GameSpec::ipd(PayoffMatrix::standard(), 100),
            selection: PlayerSelection::All,
        }],
        1,
    ))
    .unwrap();
    assert_eq!(cumulative_of(&mutual.records, "a1"), 300.0);
    assert_eq!(cumulative_of(&mutual.records, "a2"), 300.0);

    let exploited = run_tournament(&plan(
        vec![
            group(1, StrategySpec::Fixed { choice: 1 }),
            group(1, StrategySpec::TitForTat),
        ],
        vec![GamePlan {
            spec: GameSpec::ipd(PayoffMatrix::standard(), 100),
            selection: PlayerSelection::All,
        }],
        1,
    ))
    .unwrap();
    assert_eq!(
        cumulative_of(&exploited.records, "a1"),
        104.0,
        "defector: 5 + 99"
    );
    assert_eq!(
        cumulative_of(&exploited.records, "a2"),
        99.0,
        "tit-for-tat: 0 + 99"
    );
    println!("acceptance 3 (IPD exact scores 300/300 and 104/99): PASS");
}

#[test]
fn acceptance_4_minority_winners() {
    let start = Instant::now();
    let rounds = 1000u32;
    let run = run_tournament(&plan(
        vec![group(101, StrategySpec::Random)],
        vec![GamePlan {
            spec: GameSpec::mg(101, rounds),
            selection: PlayerSelection::All,
        }],
        2,
    ))
    .unwrap();

    let mut winners = vec![0u32; rounds as usize];
    for record in &run.records {
        assert!(
            record.payoff == 0.0 || record.payoff == 1.0,
            "a minority game payoff is 0 or 1, got {}",
            record.payoff
        );
        if record.payoff == 1.0 {
            winners[record.round as usize] += 1;
        }
    }
    let mut sum = 0u32;
    for (round, &w) in winners.iter().enumerate() {
        assert!(
            w * 2 < 101,
            "round {round}: {w} winners is not a strict minority"
        );
        sum += w;
    }
    let mean = f64::from(sum) / f64::from(rounds);
    assert!(
        (45.0..=48.0).contains(&mean),
        "mean winners {mean} outside [45, 48] for 101 coin-flippers"
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}, budget 5s");
    println!("acceptance 4 (minority winners strict, mean {mean:.2} in [45,48]): PASS");
}

#[test]
fn acceptance_5_learner_volatility() {
    let start = Instant::now();
    let mut below = 0;
    let mut measured = Vec::new();
    for seed in 0..10u64 {
        let run = run_tournament(&plan(
            vec![group(101, StrategySpec::BestPlay { memory: 5, pool: 2 })],
            vec![GamePlan {
                spec: GameSpec::mg(101, 2200),
                selection: PlayerSelection::All,
            }],
            seed,
        ))
        .unwrap();
        let volatility = mg_volatility_from(&run.records, 0, 200).unwrap();
        measured.push(volatility);
        if volatility < 0.25 {
            below += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(
        below >= 8,
        "only {below}/10 seeds beat the 0.25 coin-flip baseline: {measured:?}"
    );
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}, budget 60s");
    println!("acceptance 5 (learner volatility < 0.25 in {below}/10 seeds): PASS");
}

#[test]
fn acceptance_6_public_goods_exact_payoffs() {
    let cooperative = run_tournament(&plan(
        vec![group(4, StrategySpec::Fixed { choice: 10 })],
        vec![GamePlan {
            spec: GameSpec::lpgg(4, 10, 0.5, 1),
            selection: PlayerSelection::All,
        }],
        3,
    ))
    .unwrap();
    for record in &cooperative.records {
        assert_eq!(
            record.payoff, 20.0,
            "{} under full contribution",
            record.agent_id
        );
    }

    let free_riding = run_tournament(&plan(
        vec![
            group(1, StrategySpec::Fixed { choice: 0 }),
            group(3, StrategySpec::Fixed { choice: 10 }),
        ],
        vec![GamePlan {
            spec: GameSpec::lpgg(4, 10, 0.5, 1),
            selection: PlayerSelection::All,
        }],
        3,
    ))
    .unwrap();
    let payoff_of = |agent: &str| {
        free_riding
            .records
            .iter()
            .find(|r| r.agent_id == AgentId::new(agent))
            .unwrap()
            .payoff
    };
    assert_eq!(payoff_of("a1"), 25.0, "free-rider keeps 10 and collects 15");
    for agent in ["a2", "a3", "a4"] {
        assert_eq!(
            payoff_of(agent),
            15.0,
            "{agent} contributes 10, collects 15"
        );
    }
    println!("acceptance 6 (public goods 20 each; 25 vs 15/15/15): PASS");
}

#[test]
fn acceptance_7_cross_game_tournament() {
    // (a) The shipped two-game scenario runs end to end in lifecycle order.
    let scenario = parse_tournament_spec(SCENARIO).unwrap();
    let run = run_tournament(&scenario).unwrap();
    assert_eq!(
        run.records.len(),
        9 * 100 + 2 * 100,
        "9 minority players and 2 dilemma players, 100 rounds each"
    );
    run.trace.check_stage_order().unwrap();
    let mut per_game = [0usize; 2];
    for record in &run.records {
        per_game[record.game_index as usize] += 1;
    }
    assert_eq!(per_game, [900, 200]);

    // (b) A learner carries its binary tables from MG into IPD unchanged:
    // both games offer two choices, so nothing is redrawn.
    let tables_after = |with_ipd: bool| {
        let mut games = vec![GamePlan {
            spec: GameSpec::mg(5, 50),
            selection: PlayerSelection::All,
        }];
        if with_ipd {
            games.push(GamePlan {
                spec: GameSpec::ipd(PayoffMatrix::standard(), 20),
                selection: PlayerSelection::Fixed(vec![AgentId::new("a1"), AgentId::new("a2")]),
            });
        }
        let run = run_tournament(&plan(
            vec![
                group(1, StrategySpec::BestPlay { memory: 3, pool: 2 }),
                group(4, StrategySpec::Random),
            ],
            games,
            7,
        ))
        .unwrap();
        match &run.population.strategy(&AgentId::new("a1")).unwrap().state {
            StrategyState::BestPlay(bp) => {
                assert_eq!(bp.q(), Some(2));
                bp.tables().unwrap().to_vec()
            }
            other => panic!("a1 should be BestPlay, found {other:?}"),
        }
    };
    assert_eq!(
        tables_after(false),
        tables_after(true),
        "moving from MG to IPD must not redraw the binary tables"
    );

    // (c) Moving from MG (q=2) into a public goods game with endowment 10
    // (q=11) resizes the tables to 11^m entries.
    let resized = run_tournament(&plan(
        vec![
            group(1, StrategySpec::BestPlay { memory: 2, pool: 2 }),
            group(4, StrategySpec::Random),
        ],
        vec![
            GamePlan {
                spec: GameSpec::mg(5, 50),
                selection: PlayerSelection::All,
            },
            GamePlan {
                spec: GameSpec::lpgg(5, 10, 0.5, 10),
                selection: PlayerSelection::All,
            },
        ],
        7,
    ))
    .unwrap();
    match &resized
        .population
        .strategy(&AgentId::new("a1"))
        .unwrap()
        .state
    {
        StrategyState::BestPlay(bp) => {
            assert_eq!(bp.q(), Some(11), "endowment 10 means 11 choices");
            let tables = bp.tables().unwrap();
            assert_eq!(tables.len(), 2);
            for table in tables {
                assert_eq!(table.len(), 121, "11^2 entries after the resize");
                assert!(table.iter().all(|&entry| entry < 11));
            }
        }
        other => panic!("a1 should be BestPlay, found {other:?}"),
    }
    println!("acceptance 7 (cross-game run, table persistence and resize): PASS");
}

#[test]
fn acceptance_8_dataset_determinism() {
    let start = Instant::now();
    let scenario = parse_tournament_spec(SCENARIO).unwrap();

    let dataset = |plan: &TournamentPlan| {
        let run = run_tournament(plan).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let paths = finalize_dataset(&run.records, &run.trace, dir.path(), false).unwrap();
        std::fs::read(paths.records).unwrap()
    };

    let first = dataset(&scenario);
    let second = dataset(&scenario);
    assert_eq!(
        first, second,
        "same plan and seed must give byte-identical records.csv"
    );

    let mut reseeded = scenario.clone();
    reseeded.seed = 43;
    let third = dataset(&reseeded);
    assert_ne!(first, third, "a different seed must change the dataset");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}, budget 10s");
    println!("acceptance 8 (byte-identical datasets per seed): PASS");
}

#[test]
fn acceptance_9_malformed_configs_rejected() {
    let invalid = |text: &str| -> Vec<Violation> {
        match parse_tournament_spec(text) {
            Err(ConfigError::Invalid(violations)) => violations,
            other => panic!("wanted a collected rejection, got {other:?}"),
        }
    };

    // An even number of minority game players.
    let violations = invalid(
        r#"{ "specVersion": 1, "seed": 1, "order": "random",
             "agents": [ { "count": 10, "strategy": "Random" } ],
             "games": [ { "type": "MG", "rounds": 10, "players": { "select": "all" } } ] }"#,
    );
    assert!(
        violations
            .iter()
            .any(|v| v.path == "games[0]" && v.message.contains("odd")),
        "{violations:?}"
    );

    // A payoff matrix that is no dilemma: R > T breaks T > R > P > S.
    let violations = invalid(
        r#"{ "specVersion": 1, "seed": 1, "order": "random",
             "agents": [ { "count": 2, "strategy": "TitForTat" } ],
             "games": [ { "type": "IPD", "rounds": 10,
                          "players": { "select": "all" },
                          "params": { "payoffMatrix": [3, 5, 1, 0] } } ] }"#,
    );
    assert!(
        violations
            .iter()
            .any(|v| v.path == "games[0]" && v.message.contains("T > R > P > S")),
        "{violations:?}"
    );

    // An mpcr at the lower boundary 1/N, which must be strictly exceeded.
    let violations = invalid(
        r#"{ "specVersion": 1, "seed": 1, "order": "random",
             "agents": [ { "count": 4, "strategy": "Random" } ],
             "games": [ { "type": "LPGG", "rounds": 10,
                          "players": { "select": "all" },
                          "params": { "endowment": 10, "mpcr": 0.25 } } ] }"#,
    );
    assert!(
        violations
            .iter()
            .any(|v| v.path == "games[0]" && v.message.contains("strictly between")),
        "{violations:?}"
    );
    println!("acceptance 9 (malformed configurations rejected with paths): PASS");
}
