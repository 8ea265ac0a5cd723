//! Game definitions, round resolution, and per-player views of outcomes.
//!
//! Three games are playable, chosen to span the classification axes the
//! engine cares about:
//!
//! * **IPD** — iterated prisoner's dilemma. Two players, two choices
//!   (0 = cooperate, 1 = defect), opponents identified.
//! * **MG** — minority game. Odd player count, two sides (0 and 1), the
//!   strict minority side scores +1; identity is irrelevant because only
//!   aggregate counts are revealed.
//! * **LPGG** — linear public goods game. Each player contributes
//!   `0..=endowment` into a pot multiplied by the per-capita return;
//!   contributions are revealed pseudonymously, so behaviour can be tracked
//!   within a game but not attributed across games.
//!
//! Every game is simultaneous-choice and non-spatial; the axis enums still
//! carry the other variants so a specification that requests them is
//! rejected with a precise reason instead of misbehaving.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::{AgentId, Choice};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GameType {
    #[serde(rename = "IPD")]
    Ipd,
    #[serde(rename = "MG")]
    Mg,
    #[serde(rename = "LPGG")]
    Lpgg,
}

impl fmt::Display for GameType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GameType::Ipd => "IPD",
            GameType::Mg => "MG",
            GameType::Lpgg => "LPGG",
        })
    }
}

/// Whether players act at the same time or in turn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveTiming {
    Simultaneous,
    Sequential,
}

/// What a player can learn about who they are playing against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityVisibility {
    /// Opponents are named; moves are attributable across games.
    Known,
    /// Moves are attributable within a game via stable pseudonyms only.
    Unknown,
    /// Only aggregate counts are revealed; identity carries no information.
    Irrelevant,
}

/// Whether players may exchange information outside their moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommunicationMode {
    None,
    Possible,
}

/// Whether interaction is constrained by a neighbourhood structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InteractionTopology {
    Global,
    Spatial,
}

/// The classification of a game along the axes strategies can key on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameAxes {
    pub timing: MoveTiming,
    pub identity: IdentityVisibility,
    pub communication: CommunicationMode,
    pub topology: InteractionTopology,
}

/// Prisoner's dilemma payoffs: temptation, reward, punishment, sucker.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PayoffMatrix {
    pub t: f64,
    pub r: f64,
    pub p: f64,
    pub s: f64,
}

impl PayoffMatrix {
    /// `(T, R, P, S) = (5, 3, 1, 0)`, the standard values.
    pub fn standard() -> Self {
        PayoffMatrix {
            t: 5.0,
            r: 3.0,
            p: 1.0,
            s: 0.0,
        }
    }

    /// A dilemma needs `T > R > P > S` and `2R > T + S` (so mutual
    /// cooperation beats alternating exploitation).
    pub fn validate(&self) -> Result<(), GameError> {
        let ordered = self.t > self.r && self.r > self.p && self.p > self.s;
        let coop_best = 2.0 * self.r > self.t + self.s;
        if !(ordered && coop_best) {
            return Err(GameError::InvalidPayoffMatrix {
                t: self.t,
                r: self.r,
                p: self.p,
                s: self.s,
            });
        }
        Ok(())
    }
}

/// Per-game-type parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum GameParams {
    Ipd { matrix: PayoffMatrix },
    Mg,
    Lpgg { endowment: u32, mpcr: f64 },
}

/// A fully specified game: type, parameters, participants, length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameSpec {
    pub game_type: GameType,
    pub params: GameParams,
    pub axes: GameAxes,
    pub player_count: usize,
    pub rounds: u32,
}

impl GameSpec {
    pub fn ipd(matrix: PayoffMatrix, rounds: u32) -> Self {
        GameSpec {
            game_type: GameType::Ipd,
            params: GameParams::Ipd { matrix },
            axes: GameAxes {
                timing: MoveTiming::Simultaneous,
                identity: IdentityVisibility::Known,
                communication: CommunicationMode::None,
                topology: InteractionTopology::Global,
            },
            player_count: 2,
            rounds,
        }
    }

    pub fn mg(player_count: usize, rounds: u32) -> Self {
        GameSpec {
            game_type: GameType::Mg,
            params: GameParams::Mg,
            axes: GameAxes {
                timing: MoveTiming::Simultaneous,
                identity: IdentityVisibility::Irrelevant,
                communication: CommunicationMode::None,
                topology: InteractionTopology::Global,
            },
            player_count,
            rounds,
        }
    }

    pub fn lpgg(player_count: usize, endowment: u32, mpcr: f64, rounds: u32) -> Self {
        GameSpec {
            game_type: GameType::Lpgg,
            params: GameParams::Lpgg { endowment, mpcr },
            axes: GameAxes {
                timing: MoveTiming::Simultaneous,
                identity: IdentityVisibility::Unknown,
                communication: CommunicationMode::None,
                topology: InteractionTopology::Global,
            },
            player_count,
            rounds,
        }
    }

    /// Check every structural constraint of the game type.
    pub fn validate(&self) -> Result<(), GameError> {
        if self.rounds == 0 {
            return Err(GameError::ZeroRounds);
        }
        if self.axes.timing == MoveTiming::Sequential {
            return Err(GameError::UnsupportedAxis("sequential move timing"));
        }
        if self.axes.communication == CommunicationMode::Possible {
            return Err(GameError::UnsupportedAxis("communication between players"));
        }
        if self.axes.topology == InteractionTopology::Spatial {
            return Err(GameError::UnsupportedAxis("spatial interaction topology"));
        }
        match (&self.game_type, &self.params) {
            (GameType::Ipd, GameParams::Ipd { matrix }) => {
                matrix.validate()?;
                if self.player_count != 2 {
                    return Err(GameError::WrongPlayerCount {
                        game: GameType::Ipd,
                        requirement: "exactly 2 players",
                        got: self.player_count,
                    });
                }
                if self.axes.identity != IdentityVisibility::Known {
                    return Err(GameError::WrongAxes(
                        GameType::Ipd,
                        "identity must be known",
                    ));
                }
            }
            (GameType::Mg, GameParams::Mg) => {
                if self.player_count < 3 || self.player_count.is_multiple_of(2) {
                    return Err(GameError::EvenMinorityGame {
                        got: self.player_count,
                    });
                }
                if self.axes.identity != IdentityVisibility::Irrelevant {
                    return Err(GameError::WrongAxes(
                        GameType::Mg,
                        "identity must be irrelevant",
                    ));
                }
            }
            (GameType::Lpgg, GameParams::Lpgg { endowment, mpcr }) => {
                if self.player_count < 2 {
                    return Err(GameError::WrongPlayerCount {
                        game: GameType::Lpgg,
                        requirement: "at least 2 players",
                        got: self.player_count,
                    });
                }
                if *endowment == 0 {
                    return Err(GameError::ZeroEndowment);
                }
                // 1/N < mpcr < 1: contributing must hurt the contributor
                // individually yet help the group in total.
                let lower = 1.0 / self.player_count as f64;
                if !(*mpcr > lower && *mpcr < 1.0) {
                    return Err(GameError::MpcrOutOfRange { mpcr: *mpcr, lower });
                }
                if self.axes.identity != IdentityVisibility::Unknown {
                    return Err(GameError::WrongAxes(
                        GameType::Lpgg,
                        "identity must be unknown",
                    ));
                }
            }
            (game_type, _) => {
                return Err(GameError::ParamsMismatch(*game_type));
            }
        }
        Ok(())
    }

    /// How many choices a player picks from each round.
    pub fn num_choices(&self) -> u32 {
        match &self.params {
            GameParams::Ipd { .. } => 2,
            GameParams::Mg => 2,
            GameParams::Lpgg { endowment, .. } => endowment + 1,
        }
    }

    /// The choice conventionally read as "cooperate" in this game.
    pub fn cooperative_choice(&self) -> Choice {
        match &self.params {
            GameParams::Ipd { .. } => 0,
            GameParams::Mg => 0,
            GameParams::Lpgg { endowment, .. } => *endowment,
        }
    }

    /// Score one round of simultaneous moves.
    ///
    /// The outcome symbol is the single digit recorded into history windows:
    /// the first player's move for IPD (per-viewer views override this with
    /// the opponent's move), the minority side for MG, and the contribution
    /// mean rounded to the nearest whole unit for LPGG.
    pub fn resolve_round(
        &self,
        moves: &BTreeMap<AgentId, Choice>,
        round_index: u32,
    ) -> Result<RoundResult, GameError> {
        if moves.len() != self.player_count {
            return Err(GameError::ParticipantMismatch {
                expected: self.player_count,
                got: moves.len(),
            });
        }
        let q = self.num_choices();
        for (agent, &mv) in moves {
            if mv >= q {
                return Err(GameError::InvalidMove {
                    agent: agent.clone(),
                    mv,
                    num_choices: q,
                });
            }
        }

        let mut payoffs = BTreeMap::new();
        let outcome_symbol = match &self.params {
            GameParams::Ipd { matrix } => {
                let mut pair = moves.iter();
                let (first, &a) = pair.next().expect("two players");
                let (second, &b) = pair.next().expect("two players");
                let score = |own, other| match (own, other) {
                    (0, 0) => matrix.r,
                    (0, 1) => matrix.s,
                    (1, 0) => matrix.t,
                    _ => matrix.p,
                };
                payoffs.insert(first.clone(), score(a, b));
                payoffs.insert(second.clone(), score(b, a));
                a
            }
            GameParams::Mg => {
                let ones = moves.values().filter(|&&m| m == 1).count();
                let zeros = moves.len() - ones;
                // Odd player count, so the two sides are never equal.
                let minority: Choice = if ones < zeros { 1 } else { 0 };
                for (agent, &mv) in moves {
                    payoffs.insert(agent.clone(), if mv == minority { 1.0 } else { 0.0 });
                }
                minority
            }
            GameParams::Lpgg { endowment, mpcr } => {
                let total: f64 = moves.values().map(|&c| c as f64).sum();
                let shared = mpcr * total;
                for (agent, &contribution) in moves {
                    payoffs.insert(
                        agent.clone(),
                        *endowment as f64 - contribution as f64 + shared,
                    );
                }
                let mean = total / moves.len() as f64;
                (mean.round() as u32).min(*endowment)
            }
        };

        Ok(RoundResult {
            round_index,
            moves: moves.clone(),
            payoffs,
            outcome_symbol,
        })
    }

    /// Project a resolved round into what one participant gets to see,
    /// applying the game's identity visibility.
    pub fn revealed_view(
        &self,
        result: &RoundResult,
        viewer: &AgentId,
        pseudonyms: Option<&PseudonymTable>,
    ) -> Result<ViewerOutcome, GameError> {
        let own_move = *result
            .moves
            .get(viewer)
            .ok_or_else(|| GameError::NotAParticipant(viewer.clone()))?;
        let payoff = result.payoffs[viewer];

        let revealed = match self.axes.identity {
            IdentityVisibility::Known => RevealedMoves::Identified(result.moves.clone()),
            IdentityVisibility::Unknown => {
                let table = pseudonyms.ok_or(GameError::MissingPseudonyms)?;
                let mut masked = BTreeMap::new();
                for (agent, &mv) in &result.moves {
                    masked.insert(table.alias(agent)?.to_owned(), mv);
                }
                RevealedMoves::Pseudonymous(masked)
            }
            IdentityVisibility::Irrelevant => {
                let mut counts: BTreeMap<Choice, u32> = BTreeMap::new();
                for &mv in result.moves.values() {
                    *counts.entry(mv).or_insert(0) += 1;
                }
                RevealedMoves::Aggregate(counts)
            }
        };

        // IPD history is conventionally the opponent's play, so each viewer
        // records a different symbol; MG and LPGG symbols are shared.
        let outcome_symbol = match &self.params {
            GameParams::Ipd { .. } => {
                let (_, &opp) = result
                    .moves
                    .iter()
                    .find(|(agent, _)| *agent != viewer)
                    .expect("two players");
                opp
            }
            _ => result.outcome_symbol,
        };

        Ok(ViewerOutcome {
            viewer: viewer.clone(),
            round_index: result.round_index,
            own_move,
            payoff,
            outcome_symbol,
            revealed,
        })
    }
}

/// One scored round, before any identity masking.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundResult {
    pub round_index: u32,
    pub moves: BTreeMap<AgentId, Choice>,
    pub payoffs: BTreeMap<AgentId, f64>,
    /// Single digit summarising the round for history windows.
    pub outcome_symbol: Choice,
}

impl RoundResult {
    /// Agents whose payoff this round was strictly positive.
    pub fn winners(&self) -> Vec<&AgentId> {
        self.payoffs
            .iter()
            .filter(|(_, &p)| p > 0.0)
            .map(|(agent, _)| agent)
            .collect()
    }
}

/// What other players' moves look like after identity masking.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RevealedMoves {
    /// Real ids, attributable across games.
    Identified(BTreeMap<AgentId, Choice>),
    /// Stable within-game aliases, fresh each game.
    Pseudonymous(BTreeMap<String, Choice>),
    /// Only how many players picked each choice.
    Aggregate(BTreeMap<Choice, u32>),
}

/// One round as seen by one participant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViewerOutcome {
    pub viewer: AgentId,
    pub round_index: u32,
    pub own_move: Choice,
    pub payoff: f64,
    /// The digit this viewer appends to its history window.
    pub outcome_symbol: Choice,
    pub revealed: RevealedMoves,
}

/// Within-game aliases for games where identity is hidden but persistent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudonymTable {
    aliases: BTreeMap<AgentId, String>,
}

impl PseudonymTable {
    /// Assign shuffled aliases `p1..pN` so alias order leaks nothing about
    /// id order.
    pub fn assign(players: &[AgentId], rng: &mut impl Rng) -> Self {
        let mut names: Vec<String> = (1..=players.len()).map(|n| format!("p{n}")).collect();
        names.shuffle(rng);
        let aliases = players.iter().cloned().zip(names).collect();
        PseudonymTable { aliases }
    }

    pub fn alias(&self, agent: &AgentId) -> Result<&str, GameError> {
        self.aliases
            .get(agent)
            .map(String::as_str)
            .ok_or_else(|| GameError::MissingPseudonym(agent.clone()))
    }
}

/// Catalog entry describing one supported game type.
#[derive(Debug, Clone, Copy)]
pub struct GameDescriptor {
    pub game_type: GameType,
    pub players: &'static str,
    pub choices: &'static str,
    pub identity: &'static str,
    pub notes: &'static str,
}

/// The supported game types, as shown by `multigame list`.
pub fn descriptors() -> &'static [GameDescriptor] {
    &[
        GameDescriptor {
            game_type: GameType::Ipd,
            players: "exactly 2",
            choices: "2 (0 = cooperate, 1 = defect)",
            identity: "known",
            notes: "payoff matrix [T, R, P, S] with T > R > P > S and 2R > T + S",
        },
        GameDescriptor {
            game_type: GameType::Mg,
            players: "odd, at least 3",
            choices: "2 (sides 0 and 1)",
            identity: "irrelevant",
            notes: "each member of the strict minority side earns 1",
        },
        GameDescriptor {
            game_type: GameType::Lpgg,
            players: "at least 2",
            choices: "endowment + 1 (contribution 0..=endowment)",
            identity: "unknown (stable pseudonyms)",
            notes: "payoff = endowment - contribution + mpcr * total, 1/N < mpcr < 1",
        },
    ]
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GameError {
    #[error("MG requires an odd playerCount of at least 3, got {got}")]
    EvenMinorityGame { got: usize },
    #[error(
        "IPD payoff matrix must satisfy T > R > P > S and 2R > T + S, \
         got T={t}, R={r}, P={p}, S={s}"
    )]
    InvalidPayoffMatrix { t: f64, r: f64, p: f64, s: f64 },
    #[error("LPGG mpcr must lie strictly between 1/N = {lower} and 1, got {mpcr}")]
    MpcrOutOfRange { mpcr: f64, lower: f64 },
    #[error("LPGG endowment must be at least 1")]
    ZeroEndowment,
    #[error("{game} requires {requirement}, got {got} players")]
    WrongPlayerCount {
        game: GameType,
        requirement: &'static str,
        got: usize,
    },
    #[error("a game must run for at least 1 round")]
    ZeroRounds,
    #[error("{0} is not playable with these axes: {1}")]
    WrongAxes(GameType, &'static str),
    #[error("games with {0} are not supported")]
    UnsupportedAxis(&'static str),
    #[error("parameters do not match game type {0}")]
    ParamsMismatch(GameType),
    #[error("agent {agent} played {mv}, outside the {num_choices} available choices")]
    InvalidMove {
        agent: AgentId,
        mv: Choice,
        num_choices: u32,
    },
    #[error("expected moves from {expected} players, got {got}")]
    ParticipantMismatch { expected: usize, got: usize },
    #[error("agent {0} did not take part in this round")]
    NotAParticipant(AgentId),
    #[error("pseudonym table required for a game with hidden identity")]
    MissingPseudonyms,
    #[error("no pseudonym assigned to agent {0}")]
    MissingPseudonym(AgentId),
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ids(names: &[&str]) -> Vec<AgentId> {
        names.iter().map(|n| AgentId::new(*n)).collect()
    }

    fn moves(pairs: &[(&str, Choice)]) -> BTreeMap<AgentId, Choice> {
        pairs.iter().map(|(n, c)| (AgentId::new(*n), *c)).collect()
    }

    // Hand oracle for (T,R,P,S) = (5,3,1,0): CC -> 3/3, CD -> 0/5,
    // DC -> 5/0, DD -> 1/1.
    #[test]
    fn ipd_payoffs_match_matrix() {
        let game = GameSpec::ipd(PayoffMatrix::standard(), 1);
        let cases = [
            ((0, 0), (3.0, 3.0)),
            ((0, 1), (0.0, 5.0)),
            ((1, 0), (5.0, 0.0)),
            ((1, 1), (1.0, 1.0)),
        ];
        for ((a, b), (pa, pb)) in cases {
            let result = game
                .resolve_round(&moves(&[("a1", a), ("a2", b)]), 0)
                .unwrap();
            assert_eq!(result.payoffs[&AgentId::new("a1")], pa, "a1 in ({a},{b})");
            assert_eq!(result.payoffs[&AgentId::new("a2")], pb, "a2 in ({a},{b})");
        }
    }

    #[test]
    fn ipd_views_show_opponent_symbol_and_full_moves() {
        let game = GameSpec::ipd(PayoffMatrix::standard(), 1);
        let result = game
            .resolve_round(&moves(&[("a1", 0), ("a2", 1)]), 4)
            .unwrap();
        let view_a1 = game
            .revealed_view(&result, &AgentId::new("a1"), None)
            .unwrap();
        let view_a2 = game
            .revealed_view(&result, &AgentId::new("a2"), None)
            .unwrap();
        assert_eq!(view_a1.outcome_symbol, 1, "a1 records a2's defection");
        assert_eq!(view_a2.outcome_symbol, 0, "a2 records a1's cooperation");
        assert_eq!(view_a1.own_move, 0);
        assert_eq!(view_a1.payoff, 0.0);
        match view_a1.revealed {
            RevealedMoves::Identified(all) => {
                assert_eq!(all[&AgentId::new("a2")], 1);
            }
            other => panic!("IPD must reveal identified moves, got {other:?}"),
        }
    }

    // 2 of 5 choose 1, so side 1 is the minority: exactly those 2 score +1.
    #[test]
    fn mg_minority_side_scores() {
        let game = GameSpec::mg(5, 1);
        let result = game
            .resolve_round(
                &moves(&[("a1", 0), ("a2", 1), ("a3", 0), ("a4", 1), ("a5", 0)]),
                0,
            )
            .unwrap();
        assert_eq!(result.outcome_symbol, 1);
        let winners = result.winners();
        assert_eq!(winners.len(), 2);
        assert!(winners.len() < 5 / 2 + 1, "strict minority");
        for w in &winners {
            assert_eq!(result.payoffs[*w], 1.0, "winner payoff is exactly +1");
        }
        assert_eq!(result.payoffs[&AgentId::new("a1")], 0.0);
    }

    // Unanimity: zero players on side 1 makes side 1 the (empty) minority.
    #[test]
    fn mg_unanimous_round_has_no_winners() {
        let game = GameSpec::mg(3, 1);
        let result = game
            .resolve_round(&moves(&[("a1", 0), ("a2", 0), ("a3", 0)]), 0)
            .unwrap();
        assert_eq!(result.outcome_symbol, 1);
        assert!(result.winners().is_empty());
    }

    #[test]
    fn mg_views_are_aggregate_counts() {
        let game = GameSpec::mg(3, 1);
        let result = game
            .resolve_round(&moves(&[("a1", 0), ("a2", 1), ("a3", 0)]), 0)
            .unwrap();
        let view = game
            .revealed_view(&result, &AgentId::new("a2"), None)
            .unwrap();
        match view.revealed {
            RevealedMoves::Aggregate(counts) => {
                assert_eq!(counts[&0], 2);
                assert_eq!(counts[&1], 1);
            }
            other => panic!("MG must reveal aggregates only, got {other:?}"),
        }
        assert_eq!(view.outcome_symbol, 1);
        assert_eq!(view.payoff, 1.0);
    }

    // Hand oracle, N=4, E=10, mpcr=0.5:
    // all contribute 10 -> each keeps 0 and receives 0.5*40 = 20;
    // one free-rider -> rider 10 + 0.5*30 = 25, contributors 0.5*30 = 15.
    #[test]
    fn lpgg_payoffs_match_formula() {
        let game = GameSpec::lpgg(4, 10, 0.5, 1);
        let all = game
            .resolve_round(&moves(&[("a1", 10), ("a2", 10), ("a3", 10), ("a4", 10)]), 0)
            .unwrap();
        for payoff in all.payoffs.values() {
            assert_eq!(*payoff, 20.0);
        }
        assert_eq!(all.outcome_symbol, 10);

        let rider = game
            .resolve_round(&moves(&[("a1", 0), ("a2", 10), ("a3", 10), ("a4", 10)]), 0)
            .unwrap();
        assert_eq!(rider.payoffs[&AgentId::new("a1")], 25.0);
        for contributor in ["a2", "a3", "a4"] {
            assert_eq!(rider.payoffs[&AgentId::new(contributor)], 15.0);
        }
        // mean contribution 30/4 = 7.5 rounds to 8
        assert_eq!(rider.outcome_symbol, 8);
    }

    #[test]
    fn lpgg_views_are_pseudonymous_and_stable_within_game() {
        let game = GameSpec::lpgg(3, 5, 0.6, 2);
        let players = ids(&["a1", "a2", "a3"]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let table = PseudonymTable::assign(&players, &mut rng);

        let r0 = game
            .resolve_round(&moves(&[("a1", 5), ("a2", 0), ("a3", 3)]), 0)
            .unwrap();
        let view = game
            .revealed_view(&r0, &AgentId::new("a1"), Some(&table))
            .unwrap();
        let aliases = match view.revealed {
            RevealedMoves::Pseudonymous(masked) => {
                assert_eq!(masked.len(), 3);
                assert!(masked.keys().all(|k| k.starts_with('p')));
                // The free-rider is visible as an alias, not as a2.
                assert_eq!(masked[table.alias(&AgentId::new("a2")).unwrap()], 0);
                masked
            }
            other => panic!("LPGG must reveal pseudonymous moves, got {other:?}"),
        };

        // Same table next round: the alias keeps pointing at the same agent.
        let r1 = game
            .resolve_round(&moves(&[("a1", 5), ("a2", 1), ("a3", 3)]), 1)
            .unwrap();
        let view1 = game
            .revealed_view(&r1, &AgentId::new("a3"), Some(&table))
            .unwrap();
        match view1.revealed {
            RevealedMoves::Pseudonymous(masked) => {
                let a2_alias = table.alias(&AgentId::new("a2")).unwrap();
                assert_eq!(masked[a2_alias], 1);
                assert_eq!(aliases.len(), masked.len());
            }
            other => panic!("LPGG must reveal pseudonymous moves, got {other:?}"),
        }
    }

    #[test]
    fn lpgg_view_without_table_is_an_error() {
        let game = GameSpec::lpgg(3, 5, 0.6, 1);
        let result = game
            .resolve_round(&moves(&[("a1", 5), ("a2", 0), ("a3", 3)]), 0)
            .unwrap();
        assert_eq!(
            game.revealed_view(&result, &AgentId::new("a1"), None),
            Err(GameError::MissingPseudonyms)
        );
    }

    #[test]
    fn pseudonyms_cover_every_player_once() {
        let players = ids(&["a1", "a2", "a3", "a4", "a5"]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let table = PseudonymTable::assign(&players, &mut rng);
        let mut seen: Vec<&str> = players.iter().map(|p| table.alias(p).unwrap()).collect();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), players.len());
    }

    #[test]
    fn validation_rejects_even_minority_game() {
        let err = GameSpec::mg(4, 10).validate().unwrap_err();
        assert_eq!(err, GameError::EvenMinorityGame { got: 4 });
        assert!(err.to_string().contains("odd playerCount"));
        assert!(GameSpec::mg(1, 10).validate().is_err());
        assert!(GameSpec::mg(3, 10).validate().is_ok());
    }

    #[test]
    fn validation_rejects_broken_payoff_matrix() {
        // R >= T breaks the ordering.
        let bad = PayoffMatrix {
            t: 3.0,
            r: 3.0,
            p: 1.0,
            s: 0.0,
        };
        let err = GameSpec::ipd(bad, 10).validate().unwrap_err();
        assert!(err.to_string().contains("T > R > P > S"));
        // Ordering holds but 2R <= T+S rewards alternation.
        let alternating = PayoffMatrix {
            t: 10.0,
            r: 4.0,
            p: 1.0,
            s: 0.0,
        };
        assert!(GameSpec::ipd(alternating, 10).validate().is_err());
        assert!(GameSpec::ipd(PayoffMatrix::standard(), 10)
            .validate()
            .is_ok());
    }

    #[test]
    fn validation_rejects_out_of_range_mpcr() {
        // N=4: mpcr must exceed 1/4 and stay below 1.
        assert!(matches!(
            GameSpec::lpgg(4, 10, 0.25, 10).validate(),
            Err(GameError::MpcrOutOfRange { .. })
        ));
        assert!(matches!(
            GameSpec::lpgg(4, 10, 1.0, 10).validate(),
            Err(GameError::MpcrOutOfRange { .. })
        ));
        assert!(GameSpec::lpgg(4, 10, 0.26, 10).validate().is_ok());
    }

    #[test]
    fn validation_rejects_unsupported_axes() {
        let mut game = GameSpec::ipd(PayoffMatrix::standard(), 10);
        game.axes.timing = MoveTiming::Sequential;
        assert!(matches!(
            game.validate(),
            Err(GameError::UnsupportedAxis(_))
        ));

        let mut game = GameSpec::mg(5, 10);
        game.axes.topology = InteractionTopology::Spatial;
        assert!(matches!(
            game.validate(),
            Err(GameError::UnsupportedAxis(_))
        ));

        let mut game = GameSpec::lpgg(4, 10, 0.5, 10);
        game.axes.communication = CommunicationMode::Possible;
        assert!(matches!(
            game.validate(),
            Err(GameError::UnsupportedAxis(_))
        ));
    }

    #[test]
    fn resolve_rejects_invalid_moves_and_wrong_rosters() {
        let game = GameSpec::lpgg(3, 5, 0.6, 1);
        let err = game
            .resolve_round(&moves(&[("a1", 6), ("a2", 0), ("a3", 3)]), 0)
            .unwrap_err();
        assert_eq!(
            err,
            GameError::InvalidMove {
                agent: AgentId::new("a1"),
                mv: 6,
                num_choices: 6
            }
        );

        let err = game
            .resolve_round(&moves(&[("a1", 1), ("a2", 0)]), 0)
            .unwrap_err();
        assert_eq!(
            err,
            GameError::ParticipantMismatch {
                expected: 3,
                got: 2
            }
        );
    }

    #[test]
    fn choice_ranges_per_game() {
        assert_eq!(GameSpec::ipd(PayoffMatrix::standard(), 1).num_choices(), 2);
        assert_eq!(GameSpec::mg(5, 1).num_choices(), 2);
        let lpgg = GameSpec::lpgg(4, 10, 0.5, 1);
        assert_eq!(lpgg.num_choices(), 11);
        assert_eq!(lpgg.cooperative_choice(), 10);
        assert_eq!(
            GameSpec::ipd(PayoffMatrix::standard(), 1).cooperative_choice(),
            0
        );
    }
}
