//! The JSON tournament description format.
//!
//! A document is read in two phases. The first phase is structural: strict
//! JSON parsing into a fixed shape, where syntax errors and wrong field
//! types fail immediately with a line and column. The second phase is
//! semantic: every domain rule is checked and the violations are *collected*
//! rather than reported one at a time, each tagged with the JSON path it
//! concerns (`games[1].players.count`, ...).
//!
//! The document looks like this:
//!
//! ```json
//! {
//!   "specVersion": 1,
//!   "seed": 42,
//!   "order": "ordered-known",
//!   "agents": [
//!     { "count": 4, "strategy": "TitForTat" },
//!     { "count": 3, "strategy": "BestPlay", "params": { "m": 5, "s": 2 } }
//!   ],
//!   "games": [
//!     { "type": "MG", "rounds": 100, "players": { "select": "random", "count": 7 } },
//!     { "type": "IPD", "rounds": 100, "players": { "select": "fixed", "ids": ["a1", "a2"] } }
//!   ],
//!   "adaptation": { "kind": "imitate-best", "p": 0.1, "epsilon": 0.02 },
//!   "output": { "dir": "out", "summary": true }
//! }
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use serde::Deserialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::adaptation::{AdaptationKind, AdaptationPolicy};
use crate::codec::{table_length, MAX_TABLE_LEN};
use crate::engine::{
    GamePlan, OutputOptions, PlayerSelection, PopulationGroup, Registry, TournamentPlan,
};
use crate::games::{GameParams, GameSpec, GameType, PayoffMatrix};
use crate::strategies::{BagModeSpec, StrategySpec};
use crate::AgentId;

/// The one document version this build reads.
pub const SPEC_VERSION: u64 = 1;

/// One semantic problem, located by the JSON path it concerns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub path: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    /// The text is not JSON at all.
    #[error("JSON syntax error at line {line} column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    /// The JSON does not have the document's shape (wrong type, unknown
    /// or missing field).
    #[error("configuration shape error at line {line} column {column}: {message}")]
    Schema {
        line: usize,
        column: usize,
        message: String,
    },
    /// The document is well-shaped but breaks domain rules.
    #[error("{}", render_violations(.0))]
    Invalid(Vec<Violation>),
}

fn render_violations(violations: &[Violation]) -> String {
    let mut text = String::from("configuration invalid:");
    for v in violations {
        text.push_str("\n  ");
        text.push_str(&v.to_string());
    }
    text
}

fn classify(err: serde_json::Error) -> ConfigError {
    let (line, column) = (err.line(), err.column());
    let message = err.to_string();
    match err.classify() {
        serde_json::error::Category::Syntax | serde_json::error::Category::Eof => {
            ConfigError::Syntax {
                line,
                column,
                message,
            }
        }
        _ => ConfigError::Schema {
            line,
            column,
            message,
        },
    }
}

// ---------------------------------------------------------------- raw shape

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct RawDocument {
    spec_version: u64,
    seed: u64,
    order: crate::engine::OrderMode,
    agents: Vec<RawGroup>,
    games: Vec<RawGame>,
    #[serde(default)]
    adaptation: Option<RawAdaptation>,
    #[serde(default)]
    output: Option<RawOutput>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    count: usize,
    strategy: String,
    #[serde(default)]
    params: Value,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGame {
    #[serde(rename = "type")]
    game_type: GameType,
    rounds: u32,
    #[serde(default)]
    players: Value,
    #[serde(default)]
    params: Value,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct RawAdaptation {
    kind: AdaptationKind,
    #[serde(default)]
    p: Option<f64>,
    #[serde(default)]
    epsilon: Option<f64>,
    #[serde(default)]
    copy_kind: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    dir: String,
    #[serde(default)]
    summary: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FixedParams {
    choice: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BestPlayParams {
    /// Memory: how many recent outcome symbols index the tables.
    m: usize,
    /// Pool size: how many candidate tables compete.
    #[serde(default = "one")]
    s: usize,
}

fn one() -> usize {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct IpdParams {
    /// `[T, R, P, S]`; defaults to `[5, 3, 1, 0]`.
    #[serde(default)]
    payoff_matrix: Option<[f64; 4]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LpggParams {
    endowment: u32,
    mpcr: f64,
}

// ------------------------------------------------------------ small helpers

fn push(violations: &mut Vec<Violation>, path: impl Into<String>, message: impl Into<String>) {
    violations.push(Violation {
        path: path.into(),
        message: message.into(),
    });
}

fn params_or_empty(params: &Value) -> Value {
    if params.is_null() {
        json!({})
    } else {
        params.clone()
    }
}

fn is_empty_params(params: &Value) -> bool {
    match params {
        Value::Null => true,
        Value::Object(map) => map.is_empty(),
        _ => false,
    }
}

fn expect_keys(
    map: &Map<String, Value>,
    allowed: &[&str],
    path: &str,
    violations: &mut Vec<Violation>,
) {
    for key in map.keys() {
        if !allowed.contains(&key.as_str()) {
            push(
                violations,
                format!("{path}.{key}"),
                format!("unknown field (known fields: {})", allowed.join(", ")),
            );
        }
    }
}

fn typed_params<T: serde::de::DeserializeOwned>(
    params: &Value,
    path: &str,
    violations: &mut Vec<Violation>,
) -> Option<T> {
    match serde_json::from_value(params_or_empty(params)) {
        Ok(parsed) => Some(parsed),
        Err(err) => {
            push(violations, format!("{path}.params"), err.to_string());
            None
        }
    }
}

// --------------------------------------------------------------- strategies

const KNOWN_STRATEGIES: &str = "Random, FixedChoice, TitForTat, BestPlay, Bag";

fn parse_strategy(
    name: &str,
    params: &Value,
    path: &str,
    violations: &mut Vec<Violation>,
) -> Option<StrategySpec> {
    match name {
        "Random" | "TitForTat" => {
            if !is_empty_params(params) {
                push(
                    violations,
                    format!("{path}.params"),
                    format!("{name} takes no parameters"),
                );
                return None;
            }
            Some(if name == "Random" {
                StrategySpec::Random
            } else {
                StrategySpec::TitForTat
            })
        }
        "FixedChoice" => {
            let parsed: FixedParams = typed_params(params, path, violations)?;
            Some(StrategySpec::Fixed {
                choice: parsed.choice,
            })
        }
        "BestPlay" => {
            let parsed: BestPlayParams = typed_params(params, path, violations)?;
            Some(StrategySpec::BestPlay {
                memory: parsed.m,
                pool: parsed.s,
            })
        }
        "Bag" => parse_bag(params, path, violations),
        other => {
            push(
                violations,
                format!("{path}.strategy"),
                format!("unknown strategy {other:?} (known: {KNOWN_STRATEGIES})"),
            );
            None
        }
    }
}

fn parse_bag(params: &Value, path: &str, violations: &mut Vec<Violation>) -> Option<StrategySpec> {
    let owned = params_or_empty(params);
    let Value::Object(map) = &owned else {
        push(
            violations,
            format!("{path}.params"),
            "Bag parameters must be an object",
        );
        return None;
    };
    let base = format!("{path}.params");
    expect_keys(map, &["mode", "strategies", "map"], &base, violations);

    let mode = match map.get("mode").and_then(Value::as_str) {
        Some("fixed") => Some(true),
        Some("random") => Some(false),
        _ => {
            push(
                violations,
                format!("{base}.mode"),
                "must be \"fixed\" or \"random\"",
            );
            None
        }
    };

    let mut subs = Vec::new();
    let mut subs_ok = true;
    match map.get("strategies").and_then(Value::as_array) {
        Some(items) => {
            for (i, item) in items.iter().enumerate() {
                let sub_path = format!("{base}.strategies[{i}]");
                let Value::Object(sub) = item else {
                    push(
                        violations,
                        &sub_path,
                        "must be an object with a strategy field",
                    );
                    subs_ok = false;
                    continue;
                };
                expect_keys(sub, &["strategy", "params"], &sub_path, violations);
                let Some(sub_name) = sub.get("strategy").and_then(Value::as_str) else {
                    push(
                        violations,
                        format!("{sub_path}.strategy"),
                        "must name a strategy",
                    );
                    subs_ok = false;
                    continue;
                };
                let sub_params = sub.get("params").cloned().unwrap_or(Value::Null);
                match parse_strategy(sub_name, &sub_params, &sub_path, violations) {
                    Some(spec) => subs.push(spec),
                    None => subs_ok = false,
                }
            }
        }
        None => {
            push(
                violations,
                format!("{base}.strategies"),
                "must be a non-empty array",
            );
            subs_ok = false;
        }
    }

    let bag_mode = match mode? {
        true => {
            let Some(Value::Object(raw_map)) = map.get("map") else {
                push(
                    violations,
                    format!("{base}.map"),
                    "a fixed bag needs a map from game type to strategy index",
                );
                return None;
            };
            let mut game_map: BTreeMap<GameType, usize> = BTreeMap::new();
            let mut map_ok = true;
            for (key, value) in raw_map {
                let entry_path = format!("{base}.map.{key}");
                let game_type: GameType = match serde_json::from_value(Value::String(key.clone())) {
                    Ok(game_type) => game_type,
                    Err(_) => {
                        push(violations, &entry_path, "not a game type (IPD, MG, LPGG)");
                        map_ok = false;
                        continue;
                    }
                };
                match value.as_u64() {
                    Some(index) => {
                        game_map.insert(game_type, index as usize);
                    }
                    None => {
                        push(violations, &entry_path, "must be an index into strategies");
                        map_ok = false;
                    }
                }
            }
            if !map_ok {
                return None;
            }
            BagModeSpec::Fixed { map: game_map }
        }
        false => {
            if map.contains_key("map") {
                push(
                    violations,
                    format!("{base}.map"),
                    "only a fixed bag takes a map",
                );
                return None;
            }
            BagModeSpec::Random
        }
    };

    if !subs_ok {
        return None;
    }
    Some(StrategySpec::Bag {
        mode: bag_mode,
        subs,
    })
}

// -------------------------------------------------------------------- games

fn parse_selection(
    value: &Value,
    path: &str,
    violations: &mut Vec<Violation>,
) -> Option<PlayerSelection> {
    if value.is_null() {
        // An omitted selection means everyone plays.
        return Some(PlayerSelection::All);
    }
    let Value::Object(map) = value else {
        push(
            violations,
            path,
            "must be an object with \"select\" set to all, fixed, or random",
        );
        return None;
    };
    match map.get("select").and_then(Value::as_str) {
        Some("all") => {
            expect_keys(map, &["select"], path, violations);
            Some(PlayerSelection::All)
        }
        Some("fixed") => {
            expect_keys(map, &["select", "ids"], path, violations);
            let Some(items) = map.get("ids").and_then(Value::as_array) else {
                push(
                    violations,
                    format!("{path}.ids"),
                    "must be an array of agent ids",
                );
                return None;
            };
            let mut ids = Vec::new();
            for (i, item) in items.iter().enumerate() {
                match item.as_str() {
                    Some(id) => ids.push(AgentId::new(id)),
                    None => {
                        push(violations, format!("{path}.ids[{i}]"), "must be a string");
                        return None;
                    }
                }
            }
            Some(PlayerSelection::Fixed(ids))
        }
        Some("random") => {
            expect_keys(map, &["select", "count"], path, violations);
            let Some(count) = map.get("count").and_then(Value::as_u64) else {
                push(
                    violations,
                    format!("{path}.count"),
                    "must be a whole number of agents",
                );
                return None;
            };
            Some(PlayerSelection::RandomSubset {
                count: count as usize,
            })
        }
        _ => {
            push(
                violations,
                format!("{path}.select"),
                "must be \"all\", \"fixed\", or \"random\"",
            );
            None
        }
    }
}

fn parse_game(
    raw: &RawGame,
    index: usize,
    population_total: usize,
    violations: &mut Vec<Violation>,
) -> Option<GamePlan> {
    let base = format!("games[{index}]");
    let selection = parse_selection(&raw.players, &format!("{base}.players"), violations);

    let resolved_count = selection.as_ref().map(|selection| match selection {
        PlayerSelection::All => population_total,
        PlayerSelection::Fixed(ids) => ids.len(),
        PlayerSelection::RandomSubset { count } => *count,
    });

    let spec = match raw.game_type {
        GameType::Ipd => {
            let parsed: IpdParams = typed_params(&raw.params, &base, violations)?;
            let matrix = parsed
                .payoff_matrix
                .map(|[t, r, p, s]| PayoffMatrix { t, r, p, s })
                .unwrap_or_else(PayoffMatrix::standard);
            Some(GameSpec::ipd(matrix, raw.rounds))
        }
        GameType::Mg => {
            if !is_empty_params(&raw.params) {
                push(
                    violations,
                    format!("{base}.params"),
                    "MG takes no parameters",
                );
                return None;
            }
            Some(GameSpec::mg(resolved_count.unwrap_or(0), raw.rounds))
        }
        GameType::Lpgg => {
            if raw.params.is_null() {
                push(
                    violations,
                    format!("{base}.params"),
                    "required for LPGG: {\"endowment\": ..., \"mpcr\": ...}",
                );
                return None;
            }
            let parsed: LpggParams = typed_params(&raw.params, &base, violations)?;
            Some(GameSpec::lpgg(
                resolved_count.unwrap_or(0),
                parsed.endowment,
                parsed.mpcr,
                raw.rounds,
            ))
        }
    };

    let (mut spec, selection) = (spec?, selection?);
    spec.player_count = resolved_count?;
    if let Err(err) = spec.validate() {
        push(violations, &base, err.to_string());
        return None;
    }
    Some(GamePlan { spec, selection })
}

// ------------------------------------------------- strategy/game cross-check

/// Can this strategy actually sit down at this game? Checks lookup-table
/// sizes against the game's choice count and, for bags, that some
/// sub-strategy is reachable for the game type.
fn check_strategy_against_game(
    spec: &StrategySpec,
    game: &GameSpec,
    agent_path: &str,
    game_label: &str,
    violations: &mut Vec<Violation>,
) {
    match spec {
        StrategySpec::Random | StrategySpec::Fixed { .. } | StrategySpec::TitForTat => {}
        StrategySpec::BestPlay { memory, .. } => {
            let q = game.num_choices();
            match table_length(q, *memory) {
                Ok(len) if len <= MAX_TABLE_LEN => {}
                Ok(len) => push(
                    violations,
                    agent_path,
                    format!(
                        "BestPlay with m={memory} needs a {q}^{memory} = {len}-entry table \
                         for {game_label}; the limit is {MAX_TABLE_LEN}"
                    ),
                ),
                Err(err) => push(
                    violations,
                    agent_path,
                    format!("BestPlay cannot index {game_label}: {err}"),
                ),
            }
        }
        StrategySpec::Bag { mode, subs } => match mode {
            BagModeSpec::Fixed { map } => match map.get(&game.game_type) {
                Some(&index) => {
                    if let Some(sub) = subs.get(index) {
                        check_strategy_against_game(sub, game, agent_path, game_label, violations);
                    }
                }
                None => push(
                    violations,
                    agent_path,
                    format!("Bag has no sub-strategy mapped for {game_label}"),
                ),
            },
            BagModeSpec::Random => {
                for sub in subs {
                    check_strategy_against_game(sub, game, agent_path, game_label, violations);
                }
            }
        },
    }
}

// ----------------------------------------------------------------- top level

/// Parse and fully validate one tournament document.
pub fn parse_tournament_spec(text: &str) -> Result<TournamentPlan, ConfigError> {
    let raw: RawDocument = serde_json::from_str(text).map_err(classify)?;
    if raw.spec_version != SPEC_VERSION {
        return Err(ConfigError::Invalid(vec![Violation {
            path: "specVersion".into(),
            message: format!(
                "this build reads version {SPEC_VERSION}, got {}",
                raw.spec_version
            ),
        }]));
    }

    let mut violations = Vec::new();

    if raw.agents.is_empty() {
        push(
            &mut violations,
            "agents",
            "at least one agent group is required",
        );
    }
    let mut population = Vec::new();
    for (i, group) in raw.agents.iter().enumerate() {
        let path = format!("agents[{i}]");
        if group.count == 0 {
            push(
                &mut violations,
                format!("{path}.count"),
                "must be at least 1",
            );
            continue;
        }
        let Some(spec) = parse_strategy(&group.strategy, &group.params, &path, &mut violations)
        else {
            continue;
        };
        // One dry build catches what the shape alone cannot (zero memory,
        // empty bags, bag map indices out of range, ...).
        match spec.build() {
            Ok(_) => population.push(PopulationGroup {
                count: group.count,
                strategy: spec,
            }),
            Err(err) => push(&mut violations, &path, err.to_string()),
        }
    }
    let population_total: usize = raw.agents.iter().map(|g| g.count).sum();

    if raw.games.is_empty() {
        push(&mut violations, "games", "at least one game is required");
    }
    let mut games = Vec::new();
    for (i, raw_game) in raw.games.iter().enumerate() {
        if let Some(plan) = parse_game(raw_game, i, population_total, &mut violations) {
            games.push(plan);
        }
    }

    let adaptation = match &raw.adaptation {
        None => AdaptationPolicy::default(),
        Some(a) => {
            let policy = AdaptationPolicy {
                kind: a.kind,
                p: a.p.unwrap_or(0.0),
                epsilon: a.epsilon.unwrap_or(0.0),
                copy_kind: a.copy_kind.unwrap_or(false),
            };
            if let Err(err) = policy.validate() {
                push(&mut violations, "adaptation", err.to_string());
            }
            policy
        }
    };

    let output = match &raw.output {
        None => OutputOptions::default(),
        Some(o) => {
            if o.dir.is_empty() {
                push(&mut violations, "output.dir", "must not be empty");
            }
            OutputOptions {
                dir: PathBuf::from(&o.dir),
                summary: o.summary,
            }
        }
    };

    if !violations.is_empty() {
        return Err(ConfigError::Invalid(violations));
    }

    let plan = TournamentPlan {
        seed: raw.seed,
        order_mode: raw.order,
        population,
        games,
        adaptation,
        output,
    };

    // Cross-checks need the whole plan: generated ids, population size,
    // strategy tables vs. each game's choice count.
    let registry =
        Registry::from_groups(&plan.population).expect("population groups were checked above");
    let cross = validate_plan_against_registry(&plan, &registry);
    if !cross.is_empty() {
        return Err(ConfigError::Invalid(cross));
    }
    Ok(plan)
}

/// Check a plan against the population that will actually play it.
///
/// Covers what per-field parsing cannot: fixed ids must exist in the
/// registry, selections must match each game's player count, random draws
/// must fit the population, and every group's strategy must be able to play
/// every game (reachable bag mapping, lookup tables that fit).
pub fn validate_plan_against_registry(
    plan: &TournamentPlan,
    registry: &Registry,
) -> Vec<Violation> {
    let mut violations = Vec::new();
    if registry.is_empty() {
        push(&mut violations, "agents", "the population is empty");
    }
    if plan.games.is_empty() {
        push(&mut violations, "games", "at least one game is required");
    }
    if let Err(err) = plan.adaptation.validate() {
        push(&mut violations, "adaptation", err.to_string());
    }

    for (i, game) in plan.games.iter().enumerate() {
        let base = format!("games[{i}]");
        if let Err(err) = game.spec.validate() {
            push(&mut violations, &base, err.to_string());
        }
        match &game.selection {
            PlayerSelection::All => {
                if game.spec.player_count != registry.len() {
                    push(
                        &mut violations,
                        format!("{base}.players"),
                        format!(
                            "selects the whole population of {}, but the game is set up \
                             for {} players",
                            registry.len(),
                            game.spec.player_count
                        ),
                    );
                }
            }
            PlayerSelection::Fixed(ids) => {
                if ids.len() != game.spec.player_count {
                    push(
                        &mut violations,
                        format!("{base}.players.ids"),
                        format!(
                            "{} ids for a game set up for {} players",
                            ids.len(),
                            game.spec.player_count
                        ),
                    );
                }
                let mut seen = BTreeMap::new();
                for (j, id) in ids.iter().enumerate() {
                    if !registry.contains(id) {
                        push(
                            &mut violations,
                            format!("{base}.players.ids[{j}]"),
                            format!("unknown agent {id:?}"),
                        );
                    }
                    if seen.insert(id.clone(), ()).is_some() {
                        push(
                            &mut violations,
                            format!("{base}.players.ids[{j}]"),
                            format!("agent {id} listed twice"),
                        );
                    }
                }
            }
            PlayerSelection::RandomSubset { count } => {
                if *count != game.spec.player_count {
                    push(
                        &mut violations,
                        format!("{base}.players.count"),
                        format!(
                            "draws {count} agents for a game set up for {} players",
                            game.spec.player_count
                        ),
                    );
                }
                if *count > registry.len() {
                    push(
                        &mut violations,
                        format!("{base}.players.count"),
                        format!(
                            "wants {count} agents but the population has only {}",
                            registry.len()
                        ),
                    );
                }
            }
        }

        let game_label = format!("games[{i}] ({})", game.spec.game_type);
        for (gi, group) in plan.population.iter().enumerate() {
            check_strategy_against_game(
                &group.strategy,
                &game.spec,
                &format!("agents[{gi}].strategy"),
                &game_label,
                &mut violations,
            );
        }
    }
    violations
}

// ------------------------------------------------------------- serialization

fn strategy_to_json(spec: &StrategySpec) -> (&'static str, Value) {
    match spec {
        StrategySpec::Random => ("Random", json!({})),
        StrategySpec::TitForTat => ("TitForTat", json!({})),
        StrategySpec::Fixed { choice } => ("FixedChoice", json!({ "choice": choice })),
        StrategySpec::BestPlay { memory, pool } => ("BestPlay", json!({ "m": memory, "s": pool })),
        StrategySpec::Bag { mode, subs } => {
            let strategies: Vec<Value> = subs
                .iter()
                .map(|sub| {
                    let (name, params) = strategy_to_json(sub);
                    json!({ "strategy": name, "params": params })
                })
                .collect();
            let params = match mode {
                BagModeSpec::Random => json!({ "mode": "random", "strategies": strategies }),
                BagModeSpec::Fixed { map } => {
                    let map: Map<String, Value> = map
                        .iter()
                        .map(|(game_type, index)| (game_type.to_string(), json!(index)))
                        .collect();
                    json!({ "mode": "fixed", "strategies": strategies, "map": map })
                }
            };
            ("Bag", params)
        }
    }
}

fn selection_to_json(selection: &PlayerSelection) -> Value {
    match selection {
        PlayerSelection::All => json!({ "select": "all" }),
        PlayerSelection::Fixed(ids) => json!({ "select": "fixed", "ids": ids }),
        PlayerSelection::RandomSubset { count } => json!({ "select": "random", "count": count }),
    }
}

/// Render a plan back into document form, such that parsing the result
/// yields an equal plan.
pub fn plan_to_document(plan: &TournamentPlan) -> Value {
    let agents: Vec<Value> = plan
        .population
        .iter()
        .map(|group| {
            let (name, params) = strategy_to_json(&group.strategy);
            json!({ "count": group.count, "strategy": name, "params": params })
        })
        .collect();

    let games: Vec<Value> = plan
        .games
        .iter()
        .map(|game| {
            let params = match &game.spec.params {
                GameParams::Ipd { matrix } => {
                    json!({ "payoffMatrix": [matrix.t, matrix.r, matrix.p, matrix.s] })
                }
                GameParams::Mg => json!({}),
                GameParams::Lpgg { endowment, mpcr } => {
                    json!({ "endowment": endowment, "mpcr": mpcr })
                }
            };
            json!({
                "type": game.spec.game_type.to_string(),
                "rounds": game.spec.rounds,
                "players": selection_to_json(&game.selection),
                "params": params,
            })
        })
        .collect();

    json!({
        "specVersion": SPEC_VERSION,
        "seed": plan.seed,
        "order": serde_json::to_value(plan.order_mode).expect("order mode serializes"),
        "agents": agents,
        "games": games,
        "adaptation": {
            "kind": serde_json::to_value(plan.adaptation.kind).expect("kind serializes"),
            "p": plan.adaptation.p,
            "epsilon": plan.adaptation.epsilon,
            "copyKind": plan.adaptation.copy_kind,
        },
        "output": {
            "dir": plan.output.dir.to_string_lossy(),
            "summary": plan.output.summary,
        },
    })
}
