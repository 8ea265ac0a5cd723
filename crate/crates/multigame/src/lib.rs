//! # multigame
//!
//! A deterministic tournament simulator in which one fixed population of
//! agents plays a sequence of heterogeneous games — the Iterated Prisoner's
//! Dilemma, the Minority Game, and the Linear Public Goods Game — using
//! game-agnostic strategies.
//!
//! The crate provides:
//! - Game definitions built from shared axes (player count, move mode,
//!   payoff mode, identity visibility, ...) in [`games`]
//! - Generalized strategies behind one uniform contract in [`strategies`],
//!   including the q-ary lookup-table learner [`strategies::BestPlay`]
//! - Base-q encoding of recent outcomes into table indices in [`codec`]
//! - Between-game population adaptation policies in [`adaptation`]
//! - A single-threaded, seed-reproducible tournament engine in [`engine`]
//! - A strict JSON tournament description format in [`config`]
//! - Per-round statistics, CSV/JSONL datasets, and summaries in [`stats`]
//!
//! The primary interface is the library plus the runnable programs under
//! `examples/`; a thin `multigame` binary exposes the same functionality as
//! `run`, `validate`, `list`, and `summary` subcommands (see [`cli`]).
//!
//! Two runs with the same tournament plan and seed produce byte-identical
//! `records.csv` and `summary.csv` files, and event traces that differ only
//! in wall-clock timestamps: every random draw derives from the master seed
//! through a documented stream-splitting scheme (see [`rng`]).

pub mod adaptation;
pub mod cli;
pub mod codec;
pub mod config;
pub mod engine;
pub mod games;
pub mod rng;
pub mod stats;
pub mod strategies;
pub mod trace;

use std::fmt;

use serde::{Deserialize, Serialize};

/// One of a game's `q` options, represented as an integer in `[0, q)`.
pub type Choice = u32;

/// Stable identifier of an agent in the population.
///
/// Ordering is lexicographic on the underlying string; the engine iterates
/// agents in ascending id order wherever iteration order is observable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AgentId(String);

impl AgentId {
    pub fn new(id: impl Into<String>) -> Self {
        AgentId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for AgentId {
    fn from(id: &str) -> Self {
        AgentId(id.to_owned())
    }
}

pub use adaptation::{AdaptationKind, AdaptationPolicy};
pub use config::{parse_tournament_spec, validate_plan_against_registry, ConfigError, Violation};
pub use engine::{
    run_tournament, OrderMode, PlayerSelection, Registry, RunArtifacts, TournamentPlan,
};
pub use games::{GameSpec, GameType, RoundResult, ViewerOutcome};
pub use stats::{summarize, StatsRecord, Summary};
pub use strategies::{StrategyInstance, StrategySpec};
