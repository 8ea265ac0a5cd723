//! One population, two different games in sequence: a 9-player Minority
//! Game followed by a 2-player Iterated Prisoner's Dilemma, drawn from
//! the same ten agents. Payoffs accumulate across both games and the
//! event trace is machine-checked against the tournament lifecycle.
//!
//! The second half shows what "game-agnostic" means for learners: a
//! BestPlay agent keeps its binary lookup tables when moving from MG to
//! IPD (both offer 2 choices), and a Bag agent routes each game type to a
//! different sub-strategy.
//!
//! Run with: cargo run --example cross_game_tournament

use multigame::engine::{GamePlan, OrderMode, OutputOptions, PlayerSelection, PopulationGroup};
use multigame::games::{GameSpec, PayoffMatrix};
use multigame::stats::summarize;
use multigame::strategies::{BagModeSpec, StrategyState};
use multigame::{
    parse_tournament_spec, run_tournament, AdaptationPolicy, AgentId, GameType, StrategySpec,
    TournamentPlan,
};

const SCENARIO: &str = include_str!("../../../configs/two_game_scenario.json");

fn main() {
    let plan = parse_tournament_spec(SCENARIO).expect("the shipped scenario is valid");
    let run = run_tournament(&plan).expect("the scenario runs");

    println!(
        "tournament {}: {} records across {} games",
        run.tournament_id,
        run.records.len(),
        plan.games.len()
    );
    run.trace
        .check_stage_order()
        .expect("the trace respects the lifecycle");
    println!(
        "trace: {} events, lifecycle order verified",
        run.trace.events().len()
    );

    let summary = summarize(&run.records);
    println!("\ncumulative payoffs (MG rounds + IPD rounds where selected):");
    for (id, total) in &summary.agent_totals {
        println!("  {id}  {:<10} {}", total.strategy, total.total);
    }

    println!("\n-- table persistence across games with equal choice counts --");
    let persistent = bestplay_tables(&table_demo_plan(true));
    let solo = bestplay_tables(&table_demo_plan(false));
    println!(
        "BestPlay tables after MG-only vs after MG-then-IPD: {}",
        if persistent == solo {
            "identical (IPD reuses the binary tables)"
        } else {
            "DIFFER"
        }
    );

    println!("\n-- a Bag agent routing game types to different sub-strategies --");
    let bag = StrategySpec::Bag {
        mode: BagModeSpec::Fixed {
            map: [(GameType::Mg, 0), (GameType::Ipd, 1)]
                .into_iter()
                .collect(),
        },
        subs: vec![
            StrategySpec::BestPlay { memory: 2, pool: 2 },
            StrategySpec::TitForTat,
        ],
    };
    let mut plan = table_demo_plan(true);
    plan.population[0] = PopulationGroup {
        count: 1,
        strategy: bag,
    };
    let run = run_tournament(&plan).expect("the bag scenario runs");
    let a1: Vec<&str> = run
        .records
        .iter()
        .filter(|r| r.agent_id == AgentId::new("a1"))
        .map(|r| r.strategy.as_str())
        .collect();
    println!(
        "agent a1 is recorded as {} in both games; the bag decides inside",
        a1[0]
    );
}

/// Three agents; a BestPlay learner plus two coin-flippers playing MG,
/// then (optionally) two of them playing IPD.
fn table_demo_plan(with_ipd: bool) -> TournamentPlan {
    let mut games = vec![GamePlan {
        spec: GameSpec::mg(3, 50),
        selection: PlayerSelection::All,
    }];
    if with_ipd {
        games.push(GamePlan {
            spec: GameSpec::ipd(PayoffMatrix::standard(), 20),
            selection: PlayerSelection::Fixed(vec![AgentId::new("a1"), AgentId::new("a2")]),
        });
    }
    TournamentPlan {
        seed: 99,
        order_mode: OrderMode::OrderedUnknown,
        population: vec![
            PopulationGroup {
                count: 1,
                strategy: StrategySpec::BestPlay { memory: 3, pool: 2 },
            },
            PopulationGroup {
                count: 2,
                strategy: StrategySpec::Random,
            },
        ],
        games,
        adaptation: AdaptationPolicy::default(),
        output: OutputOptions::default(),
    }
}

fn bestplay_tables(plan: &TournamentPlan) -> Vec<Vec<u32>> {
    let run = run_tournament(plan).expect("the demo plan runs");
    match &run.population.strategy(&AgentId::new("a1")).unwrap().state {
        StrategyState::BestPlay(bp) => bp.tables().unwrap().to_vec(),
        other => panic!("a1 should be a BestPlay agent, found {other:?}"),
    }
}
