//! Between-game population change.
//!
//! After a game ends (and before the next begins) the population may adapt:
//!
//! * `random-reset` — each agent independently forgets its learned state
//!   with probability `p`, redrawing any lookup tables.
//! * `imitate-best` — the agent with the highest cumulative payoff is the
//!   donor; every other agent copies the donor's decision state with
//!   probability `p`, then re-draws each copied table entry with
//!   probability `epsilon`, so imitation injects variation rather than
//!   collapsing the population onto one strategy. The donor itself is never
//!   modified, and by default state only transfers between agents running
//!   the same kind of strategy (`copy_kind` lifts that restriction).
//!
//! An agent's private key-value store is never copied or cleared here; only
//! decision state adapts.

use std::collections::BTreeMap;
use std::mem::discriminant;

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::Registry;
use crate::AgentId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdaptationKind {
    None,
    RandomReset,
    ImitateBest,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdaptationPolicy {
    pub kind: AdaptationKind,
    /// Per-agent probability of adapting at all.
    pub p: f64,
    /// Per-entry probability that a copied table entry is re-drawn.
    pub epsilon: f64,
    /// Allow copying state across different strategy kinds.
    pub copy_kind: bool,
}

impl Default for AdaptationPolicy {
    fn default() -> Self {
        AdaptationPolicy {
            kind: AdaptationKind::None,
            p: 0.0,
            epsilon: 0.0,
            copy_kind: false,
        }
    }
}

impl AdaptationPolicy {
    pub fn validate(&self) -> Result<(), AdaptError> {
        for (name, value) in [("p", self.p), ("epsilon", self.epsilon)] {
            if !(0.0..=1.0).contains(&value) || value.is_nan() {
                return Err(AdaptError::InvalidProbability { name, value });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AdaptError {
    #[error("adaptation probability {name} must lie in [0, 1], got {value}")]
    InvalidProbability { name: &'static str, value: f64 },
    #[error("cumulative payoffs cover {got} agents, the population has {expected}")]
    PopulationMismatch { expected: usize, got: usize },
    #[error("cannot adapt an empty population")]
    EmptyPopulation,
}

/// Apply `policy` to every agent, returning the ids whose state changed.
///
/// Agents are visited in id order and one probability draw is consumed per
/// eligible agent whether or not it ends up changing, so the random stream
/// does not depend on which agents happen to match kinds.
pub fn adapt_population(
    registry: &mut Registry,
    policy: &AdaptationPolicy,
    cumulative: &BTreeMap<AgentId, f64>,
    rng: &mut dyn RngCore,
) -> Result<Vec<AgentId>, AdaptError> {
    policy.validate()?;
    if policy.kind == AdaptationKind::None {
        return Ok(Vec::new());
    }
    if registry.is_empty() {
        return Err(AdaptError::EmptyPopulation);
    }
    if cumulative.len() != registry.len()
        || !registry.ids().iter().all(|id| cumulative.contains_key(id))
    {
        return Err(AdaptError::PopulationMismatch {
            expected: registry.len(),
            got: cumulative.len(),
        });
    }

    let mut changed = Vec::new();
    match policy.kind {
        AdaptationKind::None => unreachable!("handled above"),
        AdaptationKind::RandomReset => {
            for (id, strategy) in registry.strategies_mut() {
                if rng.gen_bool(policy.p) {
                    strategy.reset_state(rng);
                    changed.push(id.clone());
                }
            }
        }
        AdaptationKind::ImitateBest => {
            // Ties fall to the lexicographically smallest id: cumulative is
            // sorted by id and only a strictly higher payoff displaces.
            let (best, _) = cumulative
                .iter()
                .fold(None::<(&AgentId, f64)>, |acc, (id, &payoff)| match acc {
                    Some((_, top)) if payoff <= top => acc,
                    _ => Some((id, payoff)),
                })
                .expect("population is non-empty");
            let best = best.clone();
            let donor = registry
                .strategy(&best)
                .expect("best id comes from the registry")
                .clone();

            for (id, strategy) in registry.strategies_mut() {
                if *id == best {
                    continue;
                }
                if !rng.gen_bool(policy.p) {
                    continue;
                }
                let same_kind = discriminant(&strategy.state) == discriminant(&donor.state);
                if same_kind || policy.copy_kind {
                    strategy.copy_state_from(&donor);
                    strategy.perturb(policy.epsilon, rng);
                    changed.push(id.clone());
                }
            }
        }
    }
    Ok(changed)
}
