//! Head-to-head Iterated Prisoner's Dilemma matchups under the standard
//! payoff matrix (T, R, P, S) = (5, 3, 1, 0).
//!
//! Two tit-for-tat players settle into mutual cooperation worth 3 per
//! round; an unconditional defector beats tit-for-tat by exactly 5 points
//! over 100 rounds (104 to 99) but earns far less than cooperation would.
//!
//! Run with: cargo run --example ipd_matchups

use multigame::engine::{GamePlan, OrderMode, OutputOptions, PlayerSelection, PopulationGroup};
use multigame::games::{GameSpec, PayoffMatrix};
use multigame::{run_tournament, AdaptationPolicy, StrategySpec, TournamentPlan};

fn duel(label: &str, a: StrategySpec, b: StrategySpec, rounds: u32) {
    let plan = TournamentPlan {
        seed: 2024,
        order_mode: OrderMode::OrderedUnknown,
        population: vec![
            PopulationGroup {
                count: 1,
                strategy: a,
            },
            PopulationGroup {
                count: 1,
                strategy: b,
            },
        ],
        games: vec![GamePlan {
            spec: GameSpec::ipd(PayoffMatrix::standard(), rounds),
            selection: PlayerSelection::All,
        }],
        adaptation: AdaptationPolicy::default(),
        output: OutputOptions::default(),
    };
    let run = run_tournament(&plan).expect("a two-player duel always runs");

    let last_round: Vec<_> = run.records.iter().rev().take(2).collect();
    let (second, first) = (last_round[0], last_round[1]);
    println!(
        "  {label:<28} {:>5} vs {:<5}  ({} and {})",
        first.cumulative_payoff, second.cumulative_payoff, first.agent_id, second.agent_id,
    );
}

fn main() {
    println!("cumulative payoffs after 100 rounds:");
    duel(
        "TitForTat vs TitForTat",
        StrategySpec::TitForTat,
        StrategySpec::TitForTat,
        100,
    );
    duel(
        "AlwaysDefect vs TitForTat",
        StrategySpec::Fixed { choice: 1 },
        StrategySpec::TitForTat,
        100,
    );
    duel(
        "AlwaysDefect vs AlwaysCooperate",
        StrategySpec::Fixed { choice: 1 },
        StrategySpec::Fixed { choice: 0 },
        100,
    );
    duel(
        "Random vs TitForTat",
        StrategySpec::Random,
        StrategySpec::TitForTat,
        100,
    );

    println!("\nmutual cooperation pays 300; one-sided defection pays 500 to the");
    println!("defector and 0 to the victim; tit-for-tat concedes only round one.");
}
