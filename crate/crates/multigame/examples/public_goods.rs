//! The Linear Public Goods Game: four players, endowment 10, mpcr 0.5.
//!
//! Each round every player keeps what it does not contribute and receives
//! mpcr times the total contribution. Full cooperation pays everyone 20;
//! a lone free-rider pockets 25 while the three contributors drop to 15 —
//! individually rational, collectively worse.
//!
//! Contributions are made under pseudonyms: players see per-pseudonym
//! amounts but cannot tell which neighbour is which across games.
//!
//! Run with: cargo run --example public_goods

use multigame::engine::{GamePlan, OrderMode, OutputOptions, PlayerSelection, PopulationGroup};
use multigame::games::GameSpec;
use multigame::{run_tournament, AdaptationPolicy, StrategySpec, TournamentPlan};

fn society(label: &str, groups: Vec<PopulationGroup>) {
    let n = groups.iter().map(|g| g.count).sum::<usize>();
    let plan = TournamentPlan {
        seed: 8,
        order_mode: OrderMode::OrderedUnknown,
        population: groups,
        games: vec![GamePlan {
            spec: GameSpec::lpgg(n, 10, 0.5, 1),
            selection: PlayerSelection::All,
        }],
        adaptation: AdaptationPolicy::default(),
        output: OutputOptions::default(),
    };
    let run = run_tournament(&plan).expect("a valid public goods game runs");

    println!("{label}:");
    for record in &run.records {
        println!(
            "  {}  contributes {:>2}  ->  payoff {}",
            record.agent_id, record.choice, record.payoff
        );
    }
}

fn main() {
    society(
        "everyone contributes the full endowment",
        vec![PopulationGroup {
            count: 4,
            strategy: StrategySpec::Fixed { choice: 10 },
        }],
    );
    println!();
    society(
        "one free-rider among three full contributors",
        vec![
            PopulationGroup {
                count: 1,
                strategy: StrategySpec::Fixed { choice: 0 },
            },
            PopulationGroup {
                count: 3,
                strategy: StrategySpec::Fixed { choice: 10 },
            },
        ],
    );
    println!();
    println!("free-riding gains 5 for the defector and costs each other player 5.");
}
