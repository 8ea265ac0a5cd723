//! Per-round statistics records, their CSV form, and summaries.
//!
//! Every (game, round, agent) triple produces exactly one record. Records
//! are kept in strictly increasing (game, round, agent) order — the sink
//! refuses anything else — so two runs can be compared byte for byte.
//!
//! Reals are written with at most six fractional digits and no exponent
//! (`20`, `0.5`, `0.333333`); reading a dataset back therefore recovers
//! values only to that precision.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::games::GameType;
use crate::trace::EventTrace;
use crate::{AgentId, Choice};

/// The exact column header of `records.csv`. The choice column is named
/// `move` in the file.
pub const RECORDS_HEADER: &str =
    "tournament_id,game_index,game_type,round,agent_id,strategy,move,payoff,cumulative_payoff";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StatsError {
    #[error("records out of order: ({previous}) then ({next})")]
    OrderViolation { previous: String, next: String },
    #[error("unexpected header, wanted \"{RECORDS_HEADER}\", got \"{found}\"")]
    BadHeader { found: String },
    #[error("row {row}: {message} (last good row: {last_good})")]
    MalformedRow {
        row: usize,
        message: String,
        last_good: usize,
    },
    #[error("{field} value {value:?} cannot be written to CSV")]
    UnescapableField { field: &'static str, value: String },
    #[error("io: {0}")]
    Io(String),
}

impl From<io::Error> for StatsError {
    fn from(err: io::Error) -> Self {
        StatsError::Io(err.to_string())
    }
}

/// One agent's move and earnings in one round of one game.
#[derive(Debug, Clone, PartialEq)]
pub struct StatsRecord {
    pub tournament_id: String,
    pub game_index: u32,
    pub game_type: GameType,
    pub round: u32,
    pub agent_id: AgentId,
    pub strategy: String,
    pub choice: Choice,
    pub payoff: f64,
    /// Running total across the whole tournament, after this round.
    pub cumulative_payoff: f64,
}

impl StatsRecord {
    fn key(&self) -> (u32, u32, &AgentId) {
        (self.game_index, self.round, &self.agent_id)
    }

    fn key_string(&self) -> String {
        format!(
            "game {}, round {}, agent {}",
            self.game_index, self.round, self.agent_id
        )
    }
}

/// Collects records, enforcing strictly increasing (game, round, agent).
#[derive(Debug, Clone, PartialEq)]
pub struct StatsSink {
    tournament_id: String,
    records: Vec<StatsRecord>,
}

impl StatsSink {
    pub fn new(tournament_id: String) -> Self {
        StatsSink {
            tournament_id,
            records: Vec::new(),
        }
    }

    /// Append one record; its `tournament_id` is stamped by the sink.
    pub fn record(&mut self, mut record: StatsRecord) -> Result<(), StatsError> {
        record.tournament_id = self.tournament_id.clone();
        if let Some(last) = self.records.last() {
            if last.key() >= record.key() {
                return Err(StatsError::OrderViolation {
                    previous: last.key_string(),
                    next: record.key_string(),
                });
            }
        }
        self.records.push(record);
        Ok(())
    }

    pub fn into_records(self) -> Vec<StatsRecord> {
        self.records
    }
}

/// Format a real with up to six fractional digits and no exponent:
/// whole values lose the point entirely (`20`, not `20.0`).
pub fn format_real(value: f64) -> String {
    let mut text = format!("{value:.6}");
    if text.contains('.') {
        while text.ends_with('0') {
            text.pop();
        }
        if text.ends_with('.') {
            text.pop();
        }
    }
    if text == "-0" {
        text.clear();
        text.push('0');
    }
    text
}

fn checked_field(field: &'static str, value: &str) -> Result<(), StatsError> {
    if value.contains(',') || value.contains('\n') || value.contains('"') {
        return Err(StatsError::UnescapableField {
            field,
            value: value.to_owned(),
        });
    }
    Ok(())
}

/// Write `records.csv`: the exact header, then one row per record.
pub fn write_records_csv(
    records: &[StatsRecord],
    mut writer: impl Write,
) -> Result<(), StatsError> {
    writeln!(writer, "{RECORDS_HEADER}")?;
    for record in records {
        checked_field("tournament_id", &record.tournament_id)?;
        checked_field("agent_id", record.agent_id.as_str())?;
        checked_field("strategy", &record.strategy)?;
        writeln!(
            writer,
            "{},{},{},{},{},{},{},{},{}",
            record.tournament_id,
            record.game_index,
            record.game_type,
            record.round,
            record.agent_id,
            record.strategy,
            record.choice,
            format_real(record.payoff),
            format_real(record.cumulative_payoff),
        )?;
    }
    Ok(())
}

/// Read a `records.csv` back. Row numbers in errors count data rows from 1.
pub fn read_records_csv(text: &str) -> Result<Vec<StatsRecord>, StatsError> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("");
    if header != RECORDS_HEADER {
        return Err(StatsError::BadHeader {
            found: header.to_owned(),
        });
    }
    let mut records = Vec::new();
    for (row, line) in lines.enumerate().map(|(i, l)| (i + 1, l)) {
        if line.is_empty() {
            continue;
        }
        let malformed = |message: String| StatsError::MalformedRow {
            row,
            message,
            last_good: row - 1,
        };
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 9 {
            return Err(malformed(format!(
                "expected 9 fields, got {}",
                fields.len()
            )));
        }
        let uint = |name: &str, raw: &str| {
            raw.parse::<u32>()
                .map_err(|_| malformed(format!("{name} is not a whole number: {raw:?}")))
        };
        let real = |name: &str, raw: &str| {
            raw.parse::<f64>()
                .map_err(|_| malformed(format!("{name} is not a number: {raw:?}")))
        };
        let game_type = match fields[2] {
            "IPD" => GameType::Ipd,
            "MG" => GameType::Mg,
            "LPGG" => GameType::Lpgg,
            other => return Err(malformed(format!("unknown game type {other:?}"))),
        };
        records.push(StatsRecord {
            tournament_id: fields[0].to_owned(),
            game_index: uint("game_index", fields[1])?,
            game_type,
            round: uint("round", fields[3])?,
            agent_id: AgentId::new(fields[4]),
            strategy: fields[5].to_owned(),
            choice: uint("move", fields[6])?,
            payoff: real("payoff", fields[7])?,
            cumulative_payoff: real("cumulative_payoff", fields[8])?,
        });
    }
    Ok(records)
}

/// An agent's standing over the whole dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct AgentTotal {
    pub strategy: String,
    pub total: f64,
    pub rounds: u64,
}

/// Aggregates computed from a record set.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Summary {
    pub agent_totals: BTreeMap<AgentId, AgentTotal>,
    /// Mean payoff per agent-round, keyed by (strategy, game type).
    pub strategy_game_means: BTreeMap<(String, GameType), f64>,
    /// Volatility per minority game, keyed by game index: the population
    /// variance of per-round attendance (players choosing 1), divided by
    /// the player count. Independent coin-flippers score 0.25.
    pub mg_volatility: BTreeMap<u32, f64>,
}

/// Attendance variance over N for one minority game in the records,
/// ignoring the first `discard` rounds. `None` when no rounds remain.
pub fn mg_volatility_from(records: &[StatsRecord], game_index: u32, discard: u32) -> Option<f64> {
    let mut attendance: BTreeMap<u32, u32> = BTreeMap::new();
    let mut players: BTreeMap<&AgentId, ()> = BTreeMap::new();
    for record in records {
        if record.game_index != game_index || record.game_type != GameType::Mg {
            continue;
        }
        players.insert(&record.agent_id, ());
        if record.round < discard {
            continue;
        }
        *attendance.entry(record.round).or_insert(0) += u32::from(record.choice == 1);
    }
    if attendance.is_empty() || players.is_empty() {
        return None;
    }
    let n = attendance.len() as f64;
    let mean = attendance.values().map(|&a| a as f64).sum::<f64>() / n;
    let variance = attendance
        .values()
        .map(|&a| (a as f64 - mean).powi(2))
        .sum::<f64>()
        / n;
    Some(variance / players.len() as f64)
}

pub fn summarize(records: &[StatsRecord]) -> Summary {
    let mut summary = Summary::default();
    let mut by_pair: BTreeMap<(String, GameType), (f64, u64)> = BTreeMap::new();
    let mut mg_games: BTreeMap<u32, ()> = BTreeMap::new();

    for record in records {
        let entry = summary
            .agent_totals
            .entry(record.agent_id.clone())
            .or_insert_with(|| AgentTotal {
                strategy: record.strategy.clone(),
                total: 0.0,
                rounds: 0,
            });
        entry.total += record.payoff;
        entry.rounds += 1;
        // Adaptation can change an agent's strategy mid-tournament; report
        // the one it ended with.
        entry.strategy = record.strategy.clone();

        let pair = by_pair
            .entry((record.strategy.clone(), record.game_type))
            .or_insert((0.0, 0));
        pair.0 += record.payoff;
        pair.1 += 1;

        if record.game_type == GameType::Mg {
            mg_games.insert(record.game_index, ());
        }
    }

    for ((strategy, game_type), (sum, count)) in by_pair {
        summary
            .strategy_game_means
            .insert((strategy, game_type), sum / count as f64);
    }
    for (&game_index, ()) in &mg_games {
        if let Some(v) = mg_volatility_from(records, game_index, 0) {
            summary.mg_volatility.insert(game_index, v);
        }
    }
    summary
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "agent totals:")?;
        for (id, t) in &self.agent_totals {
            writeln!(
                f,
                "  {id}  {}  {} over {} rounds",
                t.strategy,
                format_real(t.total),
                t.rounds
            )?;
        }
        writeln!(f, "mean payoff per agent-round:")?;
        for ((strategy, game_type), mean) in &self.strategy_game_means {
            writeln!(f, "  {strategy}  {game_type}  {}", format_real(*mean))?;
        }
        if !self.mg_volatility.is_empty() {
            writeln!(f, "minority game volatility (attendance variance / N):")?;
            for (game_index, v) in &self.mg_volatility {
                writeln!(f, "  game {game_index}  {}", format_real(*v))?;
            }
        }
        Ok(())
    }
}

/// `metric,game_index,game_type,agent_id,strategy,value` rows; fields that
/// do not apply to a metric stay empty.
pub fn write_summary_csv(summary: &Summary, mut writer: impl Write) -> Result<(), StatsError> {
    writeln!(
        writer,
        "metric,game_index,game_type,agent_id,strategy,value"
    )?;
    for (id, t) in &summary.agent_totals {
        writeln!(
            writer,
            "agent_total,,,{},{},{}",
            id,
            t.strategy,
            format_real(t.total)
        )?;
    }
    for ((strategy, game_type), mean) in &summary.strategy_game_means {
        writeln!(
            writer,
            "strategy_game_mean,,{game_type},,{strategy},{}",
            format_real(*mean)
        )?;
    }
    for (game_index, v) in &summary.mg_volatility {
        writeln!(
            writer,
            "mg_volatility,{game_index},MG,,,{}",
            format_real(*v)
        )?;
    }
    Ok(())
}

/// Paths of the files one run leaves on disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetPaths {
    pub records: PathBuf,
    pub trace: PathBuf,
    pub summary: Option<PathBuf>,
}

/// Write `records.csv`, `trace.jsonl`, and (optionally) `summary.csv`
/// into `dir`, creating it if needed.
pub fn finalize_dataset(
    records: &[StatsRecord],
    trace: &EventTrace,
    dir: &Path,
    with_summary: bool,
) -> Result<DatasetPaths, StatsError> {
    fs::create_dir_all(dir)?;

    let records_path = dir.join("records.csv");
    let mut records_out = Vec::new();
    write_records_csv(records, &mut records_out)?;
    fs::write(&records_path, records_out)?;

    let trace_path = dir.join("trace.jsonl");
    let mut trace_out = Vec::new();
    trace.write_jsonl(&mut trace_out)?;
    fs::write(&trace_path, trace_out)?;

    let summary_path = if with_summary {
        let path = dir.join("summary.csv");
        let mut summary_out = Vec::new();
        write_summary_csv(&summarize(records), &mut summary_out)?;
        fs::write(&path, summary_out)?;
        Some(path)
    } else {
        None
    };

    Ok(DatasetPaths {
        records: records_path,
        trace: trace_path,
        summary: summary_path,
    })
}
