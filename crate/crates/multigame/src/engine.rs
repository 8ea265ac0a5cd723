//! The tournament engine: one population, many games, one event stream.
//!
//! A [`TournamentPlan`] names a population of agents (each owning a
//! strategy), an ordered list of games with per-game player selection, and
//! an adaptation policy for the gaps between games. [`run_tournament`]
//! executes the plan: agents keep their identity and their strategies'
//! learned state from game to game, every move and payoff lands in the
//! statistics records, and the whole run is narrated as a trace the
//! lifecycle checker can audit.
//!
//! Determinism: everything is derived from the plan's seed via the stream
//! splitting in [`crate::rng`] — per-game seeds, per-agent streams, player
//! selection, game ordering, pseudonyms, and adaptation draws. Running the
//! same plan twice yields identical records and identical trace shapes.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::adaptation::{adapt_population, AdaptError, AdaptationKind, AdaptationPolicy};
use crate::games::{
    GameError, GameSpec, GameType, IdentityVisibility, PseudonymTable, ViewerOutcome,
};
use crate::rng::{agent_rng, game_seed, labeled_rng};
use crate::stats::{StatsError, StatsRecord, StatsSink};
use crate::strategies::{StrategyError, StrategyInstance, StrategyResources, StrategySpec};
use crate::trace::{EventKind, EventTrace};
use crate::{AgentId, Choice};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("population declares no agents")]
    EmptyPopulation,
    #[error("population group {group_index} is malformed: {source}")]
    BadStrategy {
        group_index: usize,
        source: StrategyError,
    },
    #[error("duplicate agent id {0}")]
    DuplicateAgentId(AgentId),
    #[error("invalid adaptation policy: {0}")]
    BadPolicy(AdaptError),
    #[error("game {game_index} names unknown agent {agent}")]
    UnknownAgentId { game_index: usize, agent: AgentId },
    #[error("game {game_index} selects agent {agent} twice")]
    DuplicateSelection { game_index: usize, agent: AgentId },
    #[error("game {game_index} requires agent {agent}, who is not available")]
    AgentUnavailable { game_index: usize, agent: AgentId },
    #[error("game {game_index} needs {needed} players, but only {available} are available")]
    InsufficientPlayers {
        game_index: usize,
        needed: usize,
        available: usize,
    },
    #[error("game {game_index} cannot start: {source}")]
    GameSetup {
        game_index: usize,
        source: GameError,
    },
    #[error("game {game_index} requires {expected} players, {selected} were selected")]
    PlayerCountMismatch {
        game_index: usize,
        expected: usize,
        selected: usize,
    },
    #[error("agent {agent} cannot start game {game_index}: {source}")]
    AgentSetup {
        game_index: usize,
        agent: AgentId,
        source: StrategyError,
    },
    #[error("game {game_index} round {round}: {source}")]
    Game {
        game_index: usize,
        round: u32,
        source: GameError,
    },
    #[error("game {game_index} round {round}, agent {agent}: {source}")]
    RoundAborted {
        game_index: usize,
        round: u32,
        agent: AgentId,
        source: StrategyError,
    },
    #[error("adaptation after game {game_index} failed: {source}")]
    Adapt {
        game_index: usize,
        source: AdaptError,
    },
    #[error(transparent)]
    Stats(#[from] StatsError),
}

/// The fixed population: every agent, its strategy, and whether it is
/// currently free to be selected into a game.
#[derive(Debug, Clone, PartialEq)]
pub struct Registry {
    agents: BTreeMap<AgentId, AgentEntry>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AgentEntry {
    pub strategy: StrategyInstance,
    pub available: bool,
}

/// `count` agents all starting from the same strategy description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PopulationGroup {
    pub count: usize,
    pub strategy: StrategySpec,
}

impl Registry {
    /// Instantiate the population. Agents are named `a1..aN`, zero-padded
    /// to the width of `N` so ids sort in numeric order.
    pub fn from_groups(groups: &[PopulationGroup]) -> Result<Registry, EngineError> {
        let total: usize = groups.iter().map(|g| g.count).sum();
        if total == 0 {
            return Err(EngineError::EmptyPopulation);
        }
        let width = total.to_string().len();
        let mut agents = BTreeMap::new();
        let mut serial = 0usize;
        for (group_index, group) in groups.iter().enumerate() {
            for _ in 0..group.count {
                serial += 1;
                let strategy =
                    group
                        .strategy
                        .build()
                        .map_err(|source| EngineError::BadStrategy {
                            group_index,
                            source,
                        })?;
                let id = AgentId::new(format!("a{serial:0width$}"));
                agents.insert(
                    id,
                    AgentEntry {
                        strategy,
                        available: true,
                    },
                );
            }
        }
        Ok(Registry { agents })
    }

    /// Assemble a registry from explicit (id, strategy) pairs.
    pub fn from_agents(
        pairs: impl IntoIterator<Item = (AgentId, StrategyInstance)>,
    ) -> Result<Registry, EngineError> {
        let mut agents = BTreeMap::new();
        for (id, strategy) in pairs {
            if agents
                .insert(
                    id.clone(),
                    AgentEntry {
                        strategy,
                        available: true,
                    },
                )
                .is_some()
            {
                return Err(EngineError::DuplicateAgentId(id));
            }
        }
        if agents.is_empty() {
            return Err(EngineError::EmptyPopulation);
        }
        Ok(Registry { agents })
    }

    pub fn len(&self) -> usize {
        self.agents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.agents.is_empty()
    }

    pub fn ids(&self) -> Vec<&AgentId> {
        self.agents.keys().collect()
    }

    pub fn contains(&self, id: &AgentId) -> bool {
        self.agents.contains_key(id)
    }

    pub fn strategy(&self, id: &AgentId) -> Option<&StrategyInstance> {
        self.agents.get(id).map(|entry| &entry.strategy)
    }

    pub fn strategy_mut(&mut self, id: &AgentId) -> Option<&mut StrategyInstance> {
        self.agents.get_mut(id).map(|entry| &mut entry.strategy)
    }

    /// All agents in id order, mutably — adaptation walks the population
    /// through this.
    pub fn strategies_mut(&mut self) -> impl Iterator<Item = (&AgentId, &mut StrategyInstance)> {
        self.agents
            .iter_mut()
            .map(|(id, entry)| (id, &mut entry.strategy))
    }

    /// Ids currently free to join a game, in id order.
    pub fn available_ids(&self) -> Vec<AgentId> {
        self.agents
            .iter()
            .filter(|(_, entry)| entry.available)
            .map(|(id, _)| id.clone())
            .collect()
    }

    /// Mark `ids` as participating; fails on the first id already taken.
    fn acquire(&mut self, ids: &[AgentId]) -> Result<(), AgentId> {
        for id in ids {
            match self.agents.get_mut(id) {
                Some(entry) if entry.available => entry.available = false,
                _ => return Err(id.clone()),
            }
        }
        Ok(())
    }

    fn release(&mut self, ids: &[AgentId]) {
        for id in ids {
            if let Some(entry) = self.agents.get_mut(id) {
                entry.available = true;
            }
        }
    }
}

/// Whether agents know the game schedule, and whether it is shuffled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderMode {
    /// Games run as listed and agents can see what comes next.
    OrderedKnown,
    /// Games run as listed but the schedule is hidden from agents.
    OrderedUnknown,
    /// The schedule is shuffled (seeded) and hidden from agents.
    Random,
}

/// Which agents play a given game.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum PlayerSelection {
    /// Everyone in the population.
    All,
    /// Exactly these agents.
    Fixed(Vec<AgentId>),
    /// A seeded random draw of this many available agents.
    RandomSubset { count: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GamePlan {
    pub spec: GameSpec,
    pub selection: PlayerSelection,
}

/// Where run artifacts should be written, for callers that persist them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputOptions {
    pub dir: PathBuf,
    pub summary: bool,
}

impl Default for OutputOptions {
    fn default() -> Self {
        OutputOptions {
            dir: PathBuf::from("out"),
            summary: false,
        }
    }
}

/// A complete, executable description of one tournament.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TournamentPlan {
    pub seed: u64,
    pub order_mode: OrderMode,
    pub population: Vec<PopulationGroup>,
    pub games: Vec<GamePlan>,
    pub adaptation: AdaptationPolicy,
    pub output: OutputOptions,
}

/// Everything a run produces, in memory.
#[derive(Debug, Clone, PartialEq)]
pub struct RunArtifacts {
    pub tournament_id: String,
    pub records: Vec<StatsRecord>,
    pub trace: EventTrace,
    /// The population as it stands after the last game (and adaptation).
    pub population: Registry,
}

/// Execute a plan from start to finish.
pub fn run_tournament(plan: &TournamentPlan) -> Result<RunArtifacts, EngineError> {
    plan.adaptation.validate().map_err(EngineError::BadPolicy)?;
    let mut registry = Registry::from_groups(&plan.population)?;
    let tournament_id = format!("t{}", plan.seed);
    let mut trace = EventTrace::new();
    let mut sink = StatsSink::new(tournament_id.clone());

    trace.push(EventKind::StartTournament { seed: plan.seed });

    let mut order: Vec<usize> = (0..plan.games.len()).collect();
    if plan.order_mode == OrderMode::Random {
        order.shuffle(&mut labeled_rng(plan.seed, "order"));
    }
    let schedule: Vec<GameType> = order
        .iter()
        .map(|&plan_index| plan.games[plan_index].spec.game_type)
        .collect();

    let mut cumulative: BTreeMap<AgentId, f64> = registry
        .ids()
        .into_iter()
        .map(|id| (id.clone(), 0.0))
        .collect();

    for (game_index, &plan_index) in order.iter().enumerate() {
        let game = &plan.games[plan_index];
        let seed = game_seed(plan.seed, game_index as u32);
        let players = select_players(&mut registry, &game.selection, game_index, seed)?;
        let upcoming = upcoming_view(plan.order_mode, &schedule, game_index);

        let played = play_game(PlayGame {
            registry: &mut registry,
            spec: &game.spec,
            players: &players,
            game_index,
            seed,
            upcoming,
            trace: &mut trace,
            sink: &mut sink,
            cumulative: &mut cumulative,
        });
        registry.release(&players);
        played?;

        let more_games_follow = game_index + 1 < order.len();
        if plan.adaptation.kind != AdaptationKind::None && more_games_follow {
            adapt_population(
                &mut registry,
                &plan.adaptation,
                &cumulative,
                &mut labeled_rng(seed, "adapt"),
            )
            .map_err(|source| EngineError::Adapt { game_index, source })?;
            trace.push(EventKind::AdaptStrategy {
                after_game: game_index as u32,
            });
        }
    }

    trace.push(EventKind::EndTournament);
    #[cfg(debug_assertions)]
    trace
        .check_stage_order()
        .expect("engine emitted an out-of-order trace");

    Ok(RunArtifacts {
        tournament_id,
        records: sink.into_records(),
        trace,
        population: registry,
    })
}

/// What the schedule looks like from inside game `position`: the remaining
/// game types when the order is public, nothing otherwise.
fn upcoming_view(mode: OrderMode, schedule: &[GameType], position: usize) -> Option<&[GameType]> {
    match mode {
        OrderMode::OrderedKnown => Some(&schedule[position + 1..]),
        OrderMode::OrderedUnknown | OrderMode::Random => None,
    }
}

fn select_players(
    registry: &mut Registry,
    selection: &PlayerSelection,
    game_index: usize,
    seed: u64,
) -> Result<Vec<AgentId>, EngineError> {
    let available = registry.available_ids();
    let mut chosen = match selection {
        PlayerSelection::All => available,
        PlayerSelection::Fixed(ids) => {
            let mut seen = BTreeSet::new();
            for id in ids {
                if !registry.contains(id) {
                    return Err(EngineError::UnknownAgentId {
                        game_index,
                        agent: id.clone(),
                    });
                }
                if !seen.insert(id) {
                    return Err(EngineError::DuplicateSelection {
                        game_index,
                        agent: id.clone(),
                    });
                }
            }
            ids.clone()
        }
        PlayerSelection::RandomSubset { count } => {
            if *count > available.len() {
                return Err(EngineError::InsufficientPlayers {
                    game_index,
                    needed: *count,
                    available: available.len(),
                });
            }
            let mut pool = available;
            pool.shuffle(&mut labeled_rng(seed, "select"));
            pool.truncate(*count);
            pool
        }
    };
    chosen.sort();
    registry
        .acquire(&chosen)
        .map_err(|agent| EngineError::AgentUnavailable { game_index, agent })?;
    Ok(chosen)
}

/// Borrowed context for playing one game to completion.
struct PlayGame<'a> {
    registry: &'a mut Registry,
    spec: &'a GameSpec,
    players: &'a [AgentId],
    game_index: usize,
    seed: u64,
    upcoming: Option<&'a [GameType]>,
    trace: &'a mut EventTrace,
    sink: &'a mut StatsSink,
    cumulative: &'a mut BTreeMap<AgentId, f64>,
}

fn play_game(ctx: PlayGame<'_>) -> Result<(), EngineError> {
    let PlayGame {
        registry,
        spec,
        players,
        game_index,
        seed,
        upcoming,
        trace,
        sink,
        cumulative,
    } = ctx;
    let game = game_index as u32;

    spec.validate()
        .map_err(|source| EngineError::GameSetup { game_index, source })?;
    if spec.player_count != players.len() {
        return Err(EngineError::PlayerCountMismatch {
            game_index,
            expected: spec.player_count,
            selected: players.len(),
        });
    }

    trace.push(EventKind::CreateGame {
        game,
        game_type: spec.game_type,
        players: players.to_vec(),
    });

    let pseudonyms = (spec.axes.identity == IdentityVisibility::Unknown)
        .then(|| PseudonymTable::assign(players, &mut labeled_rng(seed, "pseudonyms")));

    let q = spec.num_choices();
    let cooperative = spec.cooperative_choice();
    let mut rngs: BTreeMap<AgentId, ChaCha8Rng> = players
        .iter()
        .map(|id| (id.clone(), agent_rng(seed, id.as_str())))
        .collect();

    for id in players {
        let strategy = registry
            .strategy_mut(id)
            .ok_or_else(|| EngineError::UnknownAgentId {
                game_index,
                agent: id.clone(),
            })?;
        strategy
            .begin_game(spec.game_type, q, rngs.get_mut(id).expect("rng per player"))
            .map_err(|source| EngineError::AgentSetup {
                game_index,
                agent: id.clone(),
                source,
            })?;
    }

    let mut outcomes: BTreeMap<AgentId, Vec<ViewerOutcome>> =
        players.iter().map(|id| (id.clone(), Vec::new())).collect();
    let mut own_moves: BTreeMap<AgentId, Vec<Choice>> =
        players.iter().map(|id| (id.clone(), Vec::new())).collect();
    let mut own_payoffs: BTreeMap<AgentId, Vec<f64>> =
        players.iter().map(|id| (id.clone(), Vec::new())).collect();

    for round in 0..spec.rounds {
        trace.push(EventKind::StartRound { game, round });

        let mut moves: BTreeMap<AgentId, Choice> = BTreeMap::new();
        for id in players {
            let resources = StrategyResources {
                game_type: spec.game_type,
                num_choices: q,
                round_index: round,
                cooperative_choice: cooperative,
                prior_outcomes: &outcomes[id],
                own_moves: &own_moves[id],
                own_payoffs: &own_payoffs[id],
                upcoming_games: upcoming,
            };
            let choice = registry
                .strategy_mut(id)
                .expect("selection verified membership")
                .generate_choice(&resources, rngs.get_mut(id).expect("rng per player"))
                .map_err(|source| EngineError::RoundAborted {
                    game_index,
                    round,
                    agent: id.clone(),
                    source,
                })?;
            trace.push(EventKind::MakeMove {
                game,
                round,
                agent: id.clone(),
            });
            moves.insert(id.clone(), choice);
        }

        let result = spec
            .resolve_round(&moves, round)
            .map_err(|source| EngineError::Game {
                game_index,
                round,
                source,
            })?;
        trace.push(EventKind::GenerateOutcome {
            game,
            round,
            outcome: result.outcome_symbol,
        });

        for id in players {
            let payoff = result.payoffs[id];
            let total = cumulative
                .get_mut(id)
                .expect("cumulative covers the population");
            *total += payoff;
            sink.record(StatsRecord {
                tournament_id: String::new(), // sink stamps the real id
                game_index: game,
                game_type: spec.game_type,
                round,
                agent_id: id.clone(),
                strategy: registry.strategy(id).expect("member").name().to_owned(),
                choice: moves[id],
                payoff,
                cumulative_payoff: *total,
            })?;
        }

        for id in players {
            let view = spec
                .revealed_view(&result, id, pseudonyms.as_ref())
                .map_err(|source| EngineError::Game {
                    game_index,
                    round,
                    source,
                })?;
            registry
                .strategy_mut(id)
                .expect("selection verified membership")
                .observe(&view)
                .map_err(|source| EngineError::RoundAborted {
                    game_index,
                    round,
                    agent: id.clone(),
                    source,
                })?;
            trace.push(EventKind::UpdateStrategy {
                game,
                round,
                agent: id.clone(),
            });
            own_moves.get_mut(id).expect("player").push(view.own_move);
            own_payoffs.get_mut(id).expect("player").push(view.payoff);
            outcomes.get_mut(id).expect("player").push(view);
        }
    }

    trace.push(EventKind::CollectStatistics { game });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::PayoffMatrix;
    use crate::trace::EventKind;

    fn group(count: usize, strategy: StrategySpec) -> PopulationGroup {
        PopulationGroup { count, strategy }
    }

    fn plan(population: Vec<PopulationGroup>, games: Vec<GamePlan>) -> TournamentPlan {
        TournamentPlan {
            seed: 42,
            order_mode: OrderMode::OrderedUnknown,
            population,
            games,
            adaptation: AdaptationPolicy::default(),
            output: OutputOptions::default(),
        }
    }

    fn ipd_for_two(rounds: u32) -> GamePlan {
        GamePlan {
            spec: GameSpec::ipd(PayoffMatrix::standard(), rounds),
            selection: PlayerSelection::All,
        }
    }

    #[test]
    fn agent_ids_zero_pad_to_the_population_width() {
        let registry = Registry::from_groups(&[group(9, StrategySpec::Random)]).unwrap();
        assert_eq!(registry.ids()[0].as_str(), "a1");
        assert_eq!(registry.ids()[8].as_str(), "a9");

        let registry = Registry::from_groups(&[
            group(3, StrategySpec::Random),
            group(7, StrategySpec::TitForTat),
        ])
        .unwrap();
        let ids: Vec<&str> = registry.ids().iter().map(|id| id.as_str()).collect();
        assert_eq!(ids[0], "a01");
        assert_eq!(ids[2], "a03");
        assert_eq!(ids[9], "a10");
        // Group order fixes which agents run which strategy.
        assert_eq!(
            registry.strategy(&AgentId::new("a03")).unwrap().name(),
            "Random"
        );
        assert_eq!(
            registry.strategy(&AgentId::new("a04")).unwrap().name(),
            "TitForTat"
        );

        let registry = Registry::from_groups(&[group(101, StrategySpec::Random)]).unwrap();
        assert_eq!(registry.ids()[0].as_str(), "a001");
        assert_eq!(registry.ids()[100].as_str(), "a101");
    }

    #[test]
    fn mutual_tit_for_tat_cooperates_throughout() {
        let plan = plan(
            vec![group(2, StrategySpec::TitForTat)],
            vec![ipd_for_two(10)],
        );
        let run = run_tournament(&plan).unwrap();
        assert_eq!(run.records.len(), 20);
        // Both cooperate every round: 3 points each, 30 total.
        for record in &run.records {
            assert_eq!(record.choice, 0);
            assert_eq!(record.payoff, 3.0);
        }
        let last = &run.records[run.records.len() - 1];
        assert_eq!(last.cumulative_payoff, 30.0);
    }

    #[test]
    fn defector_against_tit_for_tat_wins_by_five() {
        let plan = plan(
            vec![
                group(1, StrategySpec::Fixed { choice: 1 }),
                group(1, StrategySpec::TitForTat),
            ],
            vec![ipd_for_two(100)],
        );
        let run = run_tournament(&plan).unwrap();
        let total = |id: &str| {
            run.records
                .iter()
                .filter(|r| r.agent_id.as_str() == id)
                .map(|r| r.payoff)
                .sum::<f64>()
        };
        // Round 0: 5 vs 0; thereafter mutual defection, 1 each.
        assert_eq!(total("a1"), 104.0);
        assert_eq!(total("a2"), 99.0);
    }

    #[test]
    fn records_cover_every_player_every_round_in_order() {
        let plan = plan(
            vec![group(5, StrategySpec::Random)],
            vec![GamePlan {
                spec: GameSpec::mg(5, 7),
                selection: PlayerSelection::All,
            }],
        );
        let run = run_tournament(&plan).unwrap();
        assert_eq!(run.records.len(), 5 * 7);
        let mut expected = 0;
        for round in 0..7u32 {
            for agent in 1..=5u32 {
                let record = &run.records[expected];
                assert_eq!(record.round, round);
                assert_eq!(record.agent_id.as_str(), format!("a{agent}"));
                assert_eq!(record.tournament_id, "t42");
                expected += 1;
            }
        }
    }

    #[test]
    fn same_seed_reproduces_and_different_seed_diverges() {
        let base = plan(
            vec![group(5, StrategySpec::Random)],
            vec![GamePlan {
                spec: GameSpec::mg(5, 50),
                selection: PlayerSelection::All,
            }],
        );
        let first = run_tournament(&base).unwrap();
        let second = run_tournament(&base).unwrap();
        assert_eq!(first.records, second.records);
        assert_eq!(first.trace.kinds(), second.trace.kinds());

        let mut reseeded = base.clone();
        reseeded.seed = 43;
        let third = run_tournament(&reseeded).unwrap();
        let moves =
            |run: &RunArtifacts| -> Vec<Choice> { run.records.iter().map(|r| r.choice).collect() };
        assert_ne!(moves(&first), moves(&third));
    }

    #[test]
    fn random_order_shuffles_the_schedule_deterministically() {
        let mut p = plan(
            vec![group(3, StrategySpec::Random)],
            vec![
                GamePlan {
                    spec: GameSpec::mg(3, 2),
                    selection: PlayerSelection::All,
                },
                GamePlan {
                    spec: GameSpec::lpgg(3, 5, 0.5, 2),
                    selection: PlayerSelection::All,
                },
                GamePlan {
                    spec: GameSpec::ipd(PayoffMatrix::standard(), 2),
                    selection: PlayerSelection::Fixed(vec![AgentId::new("a1"), AgentId::new("a2")]),
                },
            ],
        );
        p.order_mode = OrderMode::Random;

        let schedule = |run: &RunArtifacts| -> Vec<GameType> {
            run.trace
                .kinds()
                .into_iter()
                .filter_map(|kind| match kind {
                    EventKind::CreateGame { game_type, .. } => Some(*game_type),
                    _ => None,
                })
                .collect()
        };
        let first = schedule(&run_tournament(&p).unwrap());
        let second = schedule(&run_tournament(&p).unwrap());
        assert_eq!(first, second, "one seed, one order");
        let mut sorted = first.clone();
        sorted.sort_by_key(|g| g.to_string());
        assert_eq!(sorted, [GameType::Ipd, GameType::Lpgg, GameType::Mg]);

        // Some nearby seed must produce a different permutation.
        let mut other = p.clone();
        let reordered = (0..20u64).any(|offset| {
            other.seed = 100 + offset;
            schedule(&run_tournament(&other).unwrap()) != first
        });
        assert!(reordered);
    }

    #[test]
    fn random_subset_selection_is_a_sorted_draw_without_replacement() {
        let plan = plan(
            vec![group(10, StrategySpec::Random)],
            vec![GamePlan {
                spec: GameSpec::mg(7, 3),
                selection: PlayerSelection::RandomSubset { count: 7 },
            }],
        );
        let run = run_tournament(&plan).unwrap();
        let EventKind::CreateGame { players, .. } = &run.trace.kinds()[1] else {
            panic!("second event must create the game");
        };
        assert_eq!(players.len(), 7);
        let mut sorted = players.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(&sorted, players, "players are sorted and unique");
    }

    #[test]
    fn selection_errors_name_the_game() {
        let base = plan(
            vec![group(3, StrategySpec::Random)],
            vec![GamePlan {
                spec: GameSpec::mg(5, 3),
                selection: PlayerSelection::RandomSubset { count: 5 },
            }],
        );
        assert_eq!(
            run_tournament(&base).unwrap_err(),
            EngineError::InsufficientPlayers {
                game_index: 0,
                needed: 5,
                available: 3
            }
        );

        let unknown = plan(
            vec![group(2, StrategySpec::TitForTat)],
            vec![GamePlan {
                spec: GameSpec::ipd(PayoffMatrix::standard(), 1),
                selection: PlayerSelection::Fixed(vec![AgentId::new("a1"), AgentId::new("a7")]),
            }],
        );
        assert_eq!(
            run_tournament(&unknown).unwrap_err(),
            EngineError::UnknownAgentId {
                game_index: 0,
                agent: AgentId::new("a7")
            }
        );
    }

    #[test]
    fn player_count_must_match_the_game() {
        let bad = plan(
            vec![group(3, StrategySpec::TitForTat)],
            vec![ipd_for_two(1)],
        );
        assert_eq!(
            run_tournament(&bad).unwrap_err(),
            EngineError::PlayerCountMismatch {
                game_index: 0,
                expected: 2,
                selected: 3
            }
        );
    }

    #[test]
    fn adaptation_events_only_sit_between_games() {
        let mut p = plan(
            vec![group(3, StrategySpec::Random)],
            vec![
                GamePlan {
                    spec: GameSpec::mg(3, 2),
                    selection: PlayerSelection::All,
                },
                GamePlan {
                    spec: GameSpec::mg(3, 2),
                    selection: PlayerSelection::All,
                },
            ],
        );
        p.adaptation = AdaptationPolicy {
            kind: AdaptationKind::RandomReset,
            p: 1.0,
            ..AdaptationPolicy::default()
        };
        let run = run_tournament(&p).unwrap();
        run.trace.check_stage_order().unwrap();
        let adapts: Vec<u32> = run
            .trace
            .kinds()
            .into_iter()
            .filter_map(|kind| match kind {
                EventKind::AdaptStrategy { after_game } => Some(*after_game),
                _ => None,
            })
            .collect();
        assert_eq!(
            adapts,
            [0],
            "one gap, one adaptation, none after the last game"
        );
    }

    #[test]
    fn upcoming_games_depend_on_the_order_mode() {
        let schedule = [GameType::Mg, GameType::Ipd, GameType::Lpgg];
        assert_eq!(
            upcoming_view(OrderMode::OrderedKnown, &schedule, 0),
            Some(&schedule[1..])
        );
        assert_eq!(
            upcoming_view(OrderMode::OrderedKnown, &schedule, 2),
            Some(&schedule[3..])
        );
        assert_eq!(upcoming_view(OrderMode::OrderedUnknown, &schedule, 0), None);
        assert_eq!(upcoming_view(OrderMode::Random, &schedule, 0), None);
    }

    #[test]
    fn minority_rounds_always_pay_the_strict_minority() {
        let plan = plan(
            vec![group(5, StrategySpec::Random)],
            vec![GamePlan {
                spec: GameSpec::mg(5, 40),
                selection: PlayerSelection::All,
            }],
        );
        let run = run_tournament(&plan).unwrap();
        for round in 0..40u32 {
            let winners = run
                .records
                .iter()
                .filter(|r| r.round == round && r.payoff == 1.0)
                .count();
            assert!(winners < 3, "round {round} paid {winners} agents");
        }
    }

    #[test]
    fn cumulative_payoffs_run_across_games() {
        let p = plan(
            vec![group(2, StrategySpec::TitForTat)],
            vec![ipd_for_two(2), ipd_for_two(3)],
        );
        let run = run_tournament(&p).unwrap();
        let a1: Vec<f64> = run
            .records
            .iter()
            .filter(|r| r.agent_id.as_str() == "a1")
            .map(|r| r.cumulative_payoff)
            .collect();
        assert_eq!(a1, [3.0, 6.0, 9.0, 12.0, 15.0]);
    }
}
