//! Tournament lifecycle events and a checker for their legal order.
//!
//! The engine narrates every run as a flat event stream: the tournament
//! starts, each game is created and played round by round (everyone moves,
//! the outcome is generated, everyone updates), statistics are collected
//! per game, strategies may adapt between games, and the tournament ends.
//! [`EventTrace::check_stage_order`] verifies that a stream really follows
//! that shape, which turns the engine's control flow into something tests
//! can assert on instead of trust.

use std::collections::BTreeSet;
use std::io::{self, Write};

use chrono::{SecondsFormat, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::games::GameType;
use crate::{AgentId, Choice};

/// One lifecycle event with its wall-clock timestamp.
///
/// Timestamps are for humans reading the log; equality of two runs is
/// judged on the event kinds alone (see [`EventTrace::kinds`]).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub ts: String,
    #[serde(flatten)]
    pub kind: EventKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    tag = "event",
    rename_all = "camelCase",
    rename_all_fields = "camelCase"
)]
pub enum EventKind {
    StartTournament {
        seed: u64,
    },
    CreateGame {
        game: u32,
        game_type: GameType,
        players: Vec<AgentId>,
    },
    StartRound {
        game: u32,
        round: u32,
    },
    MakeMove {
        game: u32,
        round: u32,
        agent: AgentId,
    },
    GenerateOutcome {
        game: u32,
        round: u32,
        outcome: Choice,
    },
    UpdateStrategy {
        game: u32,
        round: u32,
        agent: AgentId,
    },
    CollectStatistics {
        game: u32,
    },
    AdaptStrategy {
        after_game: u32,
    },
    EndTournament,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TraceError {
    #[error("event {index} out of order: {message}")]
    OutOfOrder { index: usize, message: String },
    #[error("trace ended early: {0}")]
    Truncated(String),
    #[error("trace is empty")]
    Empty,
}

/// An append-only event log.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct EventTrace {
    events: Vec<TraceEvent>,
}

impl EventTrace {
    pub fn new() -> Self {
        EventTrace::default()
    }

    pub fn push(&mut self, kind: EventKind) {
        self.events.push(TraceEvent {
            ts: Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true),
            kind,
        });
    }

    pub fn events(&self) -> &[TraceEvent] {
        &self.events
    }

    /// The event kinds without timestamps — the run's logical shape.
    pub fn kinds(&self) -> Vec<&EventKind> {
        self.events.iter().map(|e| &e.kind).collect()
    }

    /// One JSON object per line.
    pub fn write_jsonl(&self, mut writer: impl Write) -> io::Result<()> {
        for event in &self.events {
            serde_json::to_writer(&mut writer, event)?;
            writer.write_all(b"\n")?;
        }
        Ok(())
    }

    /// Check the stream against the tournament lifecycle:
    ///
    /// ```text
    /// StartTournament
    ///   per game g = 0, 1, ...:
    ///     CreateGame(g)
    ///       per round r = 0, 1, ...:
    ///         StartRound(g, r)
    ///         MakeMove(g, r, agent)      once per player
    ///         GenerateOutcome(g, r)
    ///         UpdateStrategy(g, r, agent) once per player
    ///     CollectStatistics(g)
    ///     AdaptStrategy(g)               optional, only between games
    /// EndTournament
    /// ```
    pub fn check_stage_order(&self) -> Result<(), TraceError> {
        let mut checker = Checker::BeforeStart;
        for (index, event) in self.events.iter().enumerate() {
            checker = checker
                .step(&event.kind)
                .map_err(|message| TraceError::OutOfOrder { index, message })?;
        }
        match checker {
            Checker::BeforeStart => Err(TraceError::Empty),
            Checker::Finished => Ok(()),
            other => Err(TraceError::Truncated(other.describe())),
        }
    }
}

/// Where in the lifecycle a prefix of events has landed.
enum Checker {
    BeforeStart,
    /// Ready for `CreateGame(next_game)` or `EndTournament`; `adapted`
    /// means an `AdaptStrategy` already filled this between-games gap.
    BetweenGames {
        next_game: u32,
        adapted: bool,
    },
    /// Ready for `StartRound(game, round)` or `CollectStatistics(game)`;
    /// `rounds_done` guards against collecting statistics on no play.
    BetweenRounds {
        game: u32,
        players: BTreeSet<AgentId>,
        round: u32,
        rounds_done: bool,
    },
    /// Collecting one `MakeMove` per pending player, then `GenerateOutcome`.
    Moves {
        game: u32,
        players: BTreeSet<AgentId>,
        round: u32,
        pending: BTreeSet<AgentId>,
    },
    /// Collecting one `UpdateStrategy` per pending player.
    Updates {
        game: u32,
        players: BTreeSet<AgentId>,
        round: u32,
        pending: BTreeSet<AgentId>,
    },
    Finished,
}

impl Checker {
    fn step(self, event: &EventKind) -> Result<Checker, String> {
        use Checker::*;
        use EventKind::*;
        match (self, event) {
            (BeforeStart, StartTournament { .. }) => Ok(BetweenGames {
                next_game: 0,
                adapted: false,
            }),
            (BeforeStart, other) => Err(format!("expected startTournament, got {other:?}")),

            (BetweenGames { next_game, .. }, CreateGame { game, players, .. }) => {
                if *game != next_game {
                    return Err(format!("expected game {next_game}, got createGame({game})"));
                }
                let unique: BTreeSet<AgentId> = players.iter().cloned().collect();
                if unique.len() != players.len() {
                    return Err(format!("game {game} lists a player twice"));
                }
                if unique.is_empty() {
                    return Err(format!("game {game} has no players"));
                }
                Ok(BetweenRounds {
                    game: *game,
                    players: unique,
                    round: 0,
                    rounds_done: false,
                })
            }
            (BetweenGames { next_game, adapted }, AdaptStrategy { after_game }) => {
                if adapted {
                    return Err("strategies adapted twice between games".into());
                }
                if next_game == 0 {
                    return Err("adaptStrategy before any game was played".into());
                }
                if *after_game != next_game - 1 {
                    return Err(format!(
                        "adaptStrategy names game {after_game}, last finished was {}",
                        next_game - 1
                    ));
                }
                Ok(BetweenGames {
                    next_game,
                    adapted: true,
                })
            }
            (BetweenGames { adapted, .. }, EndTournament) => {
                if adapted {
                    return Err("adaptStrategy with no game following it".into());
                }
                Ok(Finished)
            }

            (
                BetweenRounds {
                    game,
                    players,
                    round,
                    ..
                },
                StartRound { game: g, round: r },
            ) => {
                if *g != game || *r != round {
                    return Err(format!(
                        "expected startRound({game}, {round}), got startRound({g}, {r})"
                    ));
                }
                let pending = players.clone();
                Ok(Moves {
                    game,
                    players,
                    round,
                    pending,
                })
            }
            (
                BetweenRounds {
                    game, rounds_done, ..
                },
                CollectStatistics { game: g },
            ) => {
                if *g != game {
                    return Err(format!("collectStatistics({g}) inside game {game}"));
                }
                if !rounds_done {
                    return Err(format!("game {game} collected statistics before any round"));
                }
                Ok(BetweenGames {
                    next_game: game + 1,
                    adapted: false,
                })
            }

            (
                Moves {
                    game,
                    players,
                    round,
                    mut pending,
                },
                MakeMove {
                    game: g,
                    round: r,
                    agent,
                },
            ) => {
                if *g != game || *r != round {
                    return Err(format!(
                        "makeMove tagged ({g}, {r}) during round ({game}, {round})"
                    ));
                }
                if !pending.remove(agent) {
                    return Err(format!(
                        "agent {agent} moved twice (or is not a player) in game {game} round {round}"
                    ));
                }
                Ok(Moves {
                    game,
                    players,
                    round,
                    pending,
                })
            }
            (
                Moves {
                    game,
                    players,
                    round,
                    pending,
                },
                GenerateOutcome {
                    game: g, round: r, ..
                },
            ) => {
                if *g != game || *r != round {
                    return Err(format!(
                        "generateOutcome tagged ({g}, {r}) during round ({game}, {round})"
                    ));
                }
                if let Some(missing) = pending.iter().next() {
                    return Err(format!(
                        "outcome generated before agent {missing} moved in game {game} round {round}"
                    ));
                }
                let pending = players.clone();
                Ok(Updates {
                    game,
                    players,
                    round,
                    pending,
                })
            }

            (
                Updates {
                    game,
                    players,
                    round,
                    mut pending,
                },
                UpdateStrategy {
                    game: g,
                    round: r,
                    agent,
                },
            ) => {
                if *g != game || *r != round {
                    return Err(format!(
                        "updateStrategy tagged ({g}, {r}) during round ({game}, {round})"
                    ));
                }
                if !pending.remove(agent) {
                    return Err(format!(
                        "agent {agent} updated twice (or is not a player) in game {game} round {round}"
                    ));
                }
                if pending.is_empty() {
                    Ok(BetweenRounds {
                        game,
                        players,
                        round: round + 1,
                        rounds_done: true,
                    })
                } else {
                    Ok(Updates {
                        game,
                        players,
                        round,
                        pending,
                    })
                }
            }

            (Finished, other) => Err(format!("event after endTournament: {other:?}")),
            (state, other) => Err(format!(
                "{} cannot be followed by {other:?}",
                state.describe()
            )),
        }
    }

    fn describe(&self) -> String {
        match self {
            Checker::BeforeStart => "before the tournament started".into(),
            Checker::BetweenGames { next_game, .. } => {
                format!("waiting for game {next_game} or the end of the tournament")
            }
            Checker::BetweenRounds { game, round, .. } => {
                format!("waiting for round {round} of game {game} or its statistics")
            }
            Checker::Moves {
                game,
                round,
                pending,
                ..
            } => {
                format!(
                    "waiting for {} move(s) in game {game} round {round}",
                    pending.len()
                )
            }
            Checker::Updates {
                game,
                round,
                pending,
                ..
            } => {
                format!(
                    "waiting for {} update(s) in game {game} round {round}",
                    pending.len()
                )
            }
            Checker::Finished => "after the tournament ended".into(),
        }
    }
}
