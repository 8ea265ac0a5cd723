//! Lookup-table learners in the Minority Game: 101 agents, each holding
//! two random prediction tables over the last 5 outcomes, play 2200
//! rounds.
//!
//! Each agent scores its tables by how often they would have predicted
//! the realized minority side and plays the current best one. The crowd
//! coordinates: after a warm-up, the attendance variance over N drops
//! below the 0.25 that independent coin-flipping would produce.
//!
//! Run with: cargo run --release --example best_play_minority

use multigame::engine::{GamePlan, OrderMode, OutputOptions, PlayerSelection, PopulationGroup};
use multigame::games::GameSpec;
use multigame::stats::mg_volatility_from;
use multigame::{run_tournament, AdaptationPolicy, StrategySpec, TournamentPlan};

fn main() {
    let rounds = 2200;
    let discard = 200;
    println!("minority game, N=101, BestPlay(m=5, s=2), {rounds} rounds");
    println!(
        "volatility = attendance variance / N over the last {} rounds\n",
        rounds - discard
    );

    let mut below = 0;
    for seed in 0..5u64 {
        let plan = TournamentPlan {
            seed,
            order_mode: OrderMode::OrderedUnknown,
            population: vec![PopulationGroup {
                count: 101,
                strategy: StrategySpec::BestPlay { memory: 5, pool: 2 },
            }],
            games: vec![GamePlan {
                spec: GameSpec::mg(101, rounds),
                selection: PlayerSelection::All,
            }],
            adaptation: AdaptationPolicy::default(),
            output: OutputOptions::default(),
        };
        let run = run_tournament(&plan).expect("an odd population always plays");
        let volatility = mg_volatility_from(&run.records, 0, discard).unwrap();
        let verdict = if volatility < 0.25 {
            "below baseline"
        } else {
            "above baseline"
        };
        if volatility < 0.25 {
            below += 1;
        }
        println!("  seed {seed}: {volatility:.4}  ({verdict})");
    }
    println!("\n{below}/5 seeds beat the coin-flip baseline of 0.25");
}
