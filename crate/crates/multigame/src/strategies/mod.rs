//! Game-agnostic decision rules.
//!
//! A strategy never sees a game's rules, only the per-round resources the
//! engine hands it: how many choices exist, which one counts as cooperative,
//! what happened in earlier rounds, and (when the schedule is public) which
//! games come later. The same strategy instance therefore moves between
//! games of different sizes without being rewritten, which is the point.
//!
//! Five rules are built in:
//!
//! * `Random` — uniform over the available choices.
//! * `FixedChoice` — one configured choice, clamped into range.
//! * `TitForTat` — cooperate first, then echo what the others did last
//!   round (the opponent's move, the mean of the others' moves, or the
//!   aggregate outcome, depending on what the game reveals).
//! * `BestPlay` — a pool of random lookup tables over recent outcomes,
//!   scored against reality and played greedily; see [`best_play`].
//! * `Bag` — a container of sub-strategies, picking one per game either by
//!   a fixed game-type map or at random.

mod best_play;

pub use best_play::BestPlay;

use std::collections::BTreeMap;

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codec::CodecError;
use crate::games::{GameAxes, GameType, RevealedMoves, ViewerOutcome};
use crate::Choice;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StrategyError {
    #[error("strategy has not begun a game yet")]
    NotInitialized,
    #[error("strategy bag has no entry for game type {0}")]
    NoMapping(GameType),
    #[error("strategy bag must contain at least one strategy")]
    EmptyBag,
    #[error("bag maps {game} to strategy #{index}, but the bag holds {count} strategies")]
    SubIndexOutOfRange {
        game: GameType,
        index: usize,
        count: usize,
    },
    #[error("table pool must hold at least one table")]
    EmptyPool,
    #[error("table {index} has {got} entries, expected {expected}")]
    WrongTableLength {
        index: usize,
        got: usize,
        expected: u64,
    },
    #[error(transparent)]
    Codec(#[from] CodecError),
}

/// Everything a strategy may consult when choosing a move.
///
/// All slices cover the current game only and are ordered by round.
#[derive(Debug, Clone, Copy)]
pub struct StrategyResources<'a> {
    pub game_type: GameType,
    /// Choices are `0..num_choices`.
    pub num_choices: u32,
    pub round_index: u32,
    /// The choice conventionally read as cooperation in this game.
    pub cooperative_choice: Choice,
    /// What this agent was shown after each earlier round.
    pub prior_outcomes: &'a [ViewerOutcome],
    pub own_moves: &'a [Choice],
    pub own_payoffs: &'a [f64],
    /// Game types still to come, oldest first; `None` when the schedule
    /// is not public.
    pub upcoming_games: Option<&'a [GameType]>,
}

/// Declarative description of a strategy, as it appears in configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum StrategySpec {
    Random,
    Fixed {
        choice: Choice,
    },
    TitForTat,
    BestPlay {
        memory: usize,
        pool: usize,
    },
    Bag {
        mode: BagModeSpec,
        subs: Vec<StrategySpec>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum BagModeSpec {
    /// Each game type is mapped to the index of one sub-strategy.
    Fixed { map: BTreeMap<GameType, usize> },
    /// A sub-strategy is drawn uniformly at the start of every game.
    Random,
}

impl StrategySpec {
    /// Instantiate the runtime strategy, checking structural soundness.
    pub fn build(&self) -> Result<StrategyInstance, StrategyError> {
        Ok(StrategyInstance {
            state: self.build_state()?,
            resources: BTreeMap::new(),
        })
    }

    fn build_state(&self) -> Result<StrategyState, StrategyError> {
        Ok(match self {
            StrategySpec::Random => StrategyState::Random,
            StrategySpec::Fixed { choice } => StrategyState::Fixed { choice: *choice },
            StrategySpec::TitForTat => StrategyState::TitForTat,
            StrategySpec::BestPlay { memory, pool } => {
                if *memory == 0 {
                    return Err(CodecError::ZeroMemory.into());
                }
                if *pool == 0 {
                    return Err(StrategyError::EmptyPool);
                }
                StrategyState::BestPlay(BestPlay::new(*memory, *pool))
            }
            StrategySpec::Bag { mode, subs } => {
                if subs.is_empty() {
                    return Err(StrategyError::EmptyBag);
                }
                if let BagModeSpec::Fixed { map } = mode {
                    for (game, &index) in map {
                        if index >= subs.len() {
                            return Err(StrategyError::SubIndexOutOfRange {
                                game: *game,
                                index,
                                count: subs.len(),
                            });
                        }
                    }
                }
                let built: Result<Vec<_>, _> = subs.iter().map(StrategySpec::build).collect();
                StrategyState::Bag(StrategyBag {
                    subs: built?,
                    mode: mode.clone(),
                    active: None,
                })
            }
        })
    }

    /// The name recorded in statistics for agents running this strategy.
    pub fn name(&self) -> &'static str {
        match self {
            StrategySpec::Random => "Random",
            StrategySpec::Fixed { .. } => "FixedChoice",
            StrategySpec::TitForTat => "TitForTat",
            StrategySpec::BestPlay { .. } => "BestPlay",
            StrategySpec::Bag { .. } => "Bag",
        }
    }
}

/// A live strategy: decision state plus a free-form key-value store the
/// owner may use between games. The store survives adaptation untouched.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyInstance {
    pub state: StrategyState,
    resources: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StrategyState {
    Random,
    Fixed { choice: Choice },
    TitForTat,
    BestPlay(BestPlay),
    Bag(StrategyBag),
}

impl StrategyInstance {
    /// Prepare for a game with `num_choices` choices. `BestPlay` sizes (or
    /// resizes) its tables here; a `Bag` picks which sub-strategy plays.
    pub fn begin_game(
        &mut self,
        game_type: GameType,
        num_choices: u32,
        rng: &mut dyn RngCore,
    ) -> Result<(), StrategyError> {
        self.state.begin_game(game_type, num_choices, rng)
    }

    /// Pick a move in `0..num_choices`.
    pub fn generate_choice(
        &mut self,
        resources: &StrategyResources<'_>,
        rng: &mut dyn RngCore,
    ) -> Result<Choice, StrategyError> {
        self.state.generate_choice(resources, rng)
    }

    /// Digest the outcome of a round this agent played.
    pub fn observe(&mut self, outcome: &ViewerOutcome) -> Result<(), StrategyError> {
        self.state.observe(outcome)
    }

    /// Forget everything learned; table-based state is redrawn.
    pub fn reset_state(&mut self, rng: &mut dyn RngCore) {
        self.state.reset(rng);
    }

    /// Randomly re-draw a fraction `epsilon` of any lookup-table entries.
    pub fn perturb(&mut self, epsilon: f64, rng: &mut dyn RngCore) {
        self.state.perturb(epsilon, rng);
    }

    /// Store an arbitrary note under `key`, replacing any previous value.
    pub fn update_strategy(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.resources.insert(key.into(), value.into());
    }

    /// Read back a note stored with [`update_strategy`](Self::update_strategy).
    pub fn resource(&self, key: &str) -> Option<&str> {
        self.resources.get(key).map(String::as_str)
    }

    /// Copy another instance's decision state, keeping the key-value store.
    pub fn copy_state_from(&mut self, other: &StrategyInstance) {
        self.state = other.state.clone();
    }

    pub fn name(&self) -> &'static str {
        self.state.name()
    }
}

impl StrategyState {
    fn begin_game(
        &mut self,
        game_type: GameType,
        num_choices: u32,
        rng: &mut dyn RngCore,
    ) -> Result<(), StrategyError> {
        match self {
            StrategyState::Random | StrategyState::Fixed { .. } | StrategyState::TitForTat => {
                Ok(())
            }
            StrategyState::BestPlay(bp) => bp.begin_game(num_choices, rng),
            StrategyState::Bag(bag) => bag.begin_game(game_type, num_choices, rng),
        }
    }

    fn generate_choice(
        &mut self,
        resources: &StrategyResources<'_>,
        rng: &mut dyn RngCore,
    ) -> Result<Choice, StrategyError> {
        match self {
            StrategyState::Random => Ok(rng.gen_range(0..resources.num_choices)),
            StrategyState::Fixed { choice } => {
                Ok((*choice).min(resources.num_choices.saturating_sub(1)))
            }
            StrategyState::TitForTat => Ok(tit_for_tat(resources)),
            StrategyState::BestPlay(bp) => bp.choose(rng),
            StrategyState::Bag(bag) => {
                let active = bag.active_mut()?;
                active.generate_choice(resources, rng)
            }
        }
    }

    fn observe(&mut self, outcome: &ViewerOutcome) -> Result<(), StrategyError> {
        match self {
            StrategyState::Random | StrategyState::Fixed { .. } | StrategyState::TitForTat => {
                Ok(())
            }
            StrategyState::BestPlay(bp) => bp.observe(outcome.outcome_symbol),
            StrategyState::Bag(bag) => bag.active_mut()?.observe(outcome),
        }
    }

    fn reset(&mut self, rng: &mut dyn RngCore) {
        match self {
            StrategyState::Random | StrategyState::Fixed { .. } | StrategyState::TitForTat => {}
            StrategyState::BestPlay(bp) => bp.reset(rng),
            StrategyState::Bag(bag) => {
                for sub in &mut bag.subs {
                    sub.reset_state(rng);
                }
                bag.active = None;
            }
        }
    }

    fn perturb(&mut self, epsilon: f64, rng: &mut dyn RngCore) {
        match self {
            StrategyState::Random | StrategyState::Fixed { .. } | StrategyState::TitForTat => {}
            StrategyState::BestPlay(bp) => bp.perturb(epsilon, rng),
            StrategyState::Bag(bag) => {
                for sub in &mut bag.subs {
                    sub.perturb(epsilon, rng);
                }
            }
        }
    }

    fn name(&self) -> &'static str {
        match self {
            StrategyState::Random => "Random",
            StrategyState::Fixed { .. } => "FixedChoice",
            StrategyState::TitForTat => "TitForTat",
            StrategyState::BestPlay(_) => "BestPlay",
            StrategyState::Bag(_) => "Bag",
        }
    }
}

/// Cooperate on the first round, then echo the last round: the opponent's
/// move when individual moves are visible (the mean of the others' moves,
/// rounded, in larger games), otherwise the aggregate outcome symbol.
fn tit_for_tat(resources: &StrategyResources<'_>) -> Choice {
    let Some(prev) = resources.prior_outcomes.last() else {
        return resources.cooperative_choice;
    };
    let max = resources.num_choices.saturating_sub(1);
    let echo = match &prev.revealed {
        RevealedMoves::Identified(all) => mean_of_others(all.values(), prev.own_move),
        RevealedMoves::Pseudonymous(all) => mean_of_others(all.values(), prev.own_move),
        RevealedMoves::Aggregate(_) => Some(prev.outcome_symbol),
    };
    echo.unwrap_or(resources.cooperative_choice).min(max)
}

fn mean_of_others<'a>(all: impl Iterator<Item = &'a Choice>, own: Choice) -> Option<Choice> {
    let (sum, count) = all.fold((0u64, 0u64), |(s, c), &mv| (s + mv as u64, c + 1));
    if count < 2 {
        return None;
    }
    let others = (sum - own as u64) as f64 / (count - 1) as f64;
    Some(others.round() as Choice)
}

/// A container of strategies: one is selected per game and plays it alone.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyBag {
    subs: Vec<StrategyInstance>,
    mode: BagModeSpec,
    active: Option<usize>,
}

impl StrategyBag {
    fn begin_game(
        &mut self,
        game_type: GameType,
        num_choices: u32,
        rng: &mut dyn RngCore,
    ) -> Result<(), StrategyError> {
        if self.subs.is_empty() {
            return Err(StrategyError::EmptyBag);
        }
        let index = match &self.mode {
            BagModeSpec::Fixed { map } => *map
                .get(&game_type)
                .ok_or(StrategyError::NoMapping(game_type))?,
            BagModeSpec::Random => rng.gen_range(0..self.subs.len()),
        };
        if index >= self.subs.len() {
            return Err(StrategyError::SubIndexOutOfRange {
                game: game_type,
                index,
                count: self.subs.len(),
            });
        }
        self.active = Some(index);
        self.subs[index].begin_game(game_type, num_choices, rng)
    }

    fn active_mut(&mut self) -> Result<&mut StrategyInstance, StrategyError> {
        let index = self.active.ok_or(StrategyError::NotInitialized)?;
        Ok(&mut self.subs[index])
    }

    /// Which sub-strategy is playing the current game, if any.
    pub fn active_index(&self) -> Option<usize> {
        self.active
    }

    pub fn subs(&self) -> &[StrategyInstance] {
        &self.subs
    }
}

/// Static description of one built-in strategy, for discovery listings.
#[derive(Debug, Clone, Copy)]
pub struct StrategyDescriptor {
    pub name: &'static str,
    pub params: &'static [ParamSpec],
    /// Human-readable note on where the strategy is usable.
    pub applicability: &'static str,
    /// Whether the strategy can play a game with these axes.
    pub applies: fn(&GameAxes) -> bool,
}

#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub name: &'static str,
    pub bounds: &'static str,
}

/// All built-in strategies, in listing order.
pub fn descriptors() -> &'static [StrategyDescriptor] {
    &[
        StrategyDescriptor {
            name: "Random",
            params: &[],
            applicability: "any game; draws uniformly from the available choices",
            applies: |_| true,
        },
        StrategyDescriptor {
            name: "FixedChoice",
            params: &[ParamSpec {
                name: "choice",
                bounds: "clamped into 0..numChoices",
            }],
            applicability: "any game; always plays the configured choice",
            applies: |_| true,
        },
        StrategyDescriptor {
            name: "TitForTat",
            params: &[],
            applicability: "any game with per-round feedback; echoes the last round",
            applies: |_| true,
        },
        StrategyDescriptor {
            name: "BestPlay",
            params: &[
                ParamSpec {
                    name: "m",
                    bounds: "memory, 1 or more",
                },
                ParamSpec {
                    name: "s",
                    bounds: "table pool size, 1 or more",
                },
            ],
            applicability: "any game whose table q^m fits in memory",
            applies: |_| true,
        },
        StrategyDescriptor {
            name: "Bag",
            params: &[
                ParamSpec {
                    name: "mode",
                    bounds: "\"fixed\" (with map) or \"random\"",
                },
                ParamSpec {
                    name: "strategies",
                    bounds: "1 or more sub-strategies",
                },
            ],
            applicability: "any game one of its sub-strategies can play",
            applies: |_| true,
        },
    ]
}
