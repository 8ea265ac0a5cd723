//! The table-pool strategy: random lookup tables raced against reality.
//!
//! `BestPlay` keeps `s` tables, each mapping every possible window of the
//! last `m` outcome symbols (an index in `0..q^m`, see [`crate::codec`]) to
//! a choice. After every round each table earns a virtual point if the entry
//! it would have consulted predicted the symbol that actually occurred; the
//! strategy always plays the entry of the highest-scoring table, breaking
//! ties toward the lowest table index. Until `m` symbols have been seen it
//! plays uniformly at random.
//!
//! Tables are drawn when the strategy first enters a game and are sized to
//! that game's choice count `q`. Entering a later game with the same `q`
//! keeps tables, scores, and history — learning carries across games.
//! Entering a game with a different `q` redraws the tables at the new size
//! and starts scores and history from scratch.

use rand::{Rng, RngCore};

use crate::codec::{encode_history, table_length, CodecError, HistoryWindow};
use crate::strategies::StrategyError;
use crate::Choice;

#[derive(Debug, Clone, PartialEq)]
pub struct BestPlay {
    memory: usize,
    pool: usize,
    state: Option<TablePool>,
}

#[derive(Debug, Clone, PartialEq)]
struct TablePool {
    q: u32,
    tables: Vec<Vec<Choice>>,
    scores: Vec<u64>,
    /// Last `memory` outcome symbols, oldest first.
    history: Vec<Choice>,
}

impl BestPlay {
    /// A strategy with `pool` tables over windows of `memory` symbols.
    /// Tables are not drawn until the first game begins.
    pub(crate) fn new(memory: usize, pool: usize) -> Self {
        BestPlay {
            memory,
            pool,
            state: None,
        }
    }

    /// Build directly from known tables; scores start at zero and the
    /// history empty. Each table must hold exactly `q^memory` entries.
    pub fn from_tables(
        memory: usize,
        q: u32,
        tables: Vec<Vec<Choice>>,
    ) -> Result<BestPlay, StrategyError> {
        if tables.is_empty() {
            return Err(StrategyError::EmptyPool);
        }
        let expected = table_length(q, memory)?;
        for (index, table) in tables.iter().enumerate() {
            if table.len() as u64 != expected {
                return Err(StrategyError::WrongTableLength {
                    index,
                    got: table.len(),
                    expected,
                });
            }
            if let Some(&digit) = table.iter().find(|&&entry| entry >= q) {
                return Err(CodecError::DigitOutOfRange { digit, base: q }.into());
            }
        }
        let pool = tables.len();
        let scores = vec![0; pool];
        Ok(BestPlay {
            memory,
            pool,
            state: Some(TablePool {
                q,
                tables,
                scores,
                history: Vec::new(),
            }),
        })
    }

    pub(crate) fn begin_game(
        &mut self,
        q: u32,
        rng: &mut dyn RngCore,
    ) -> Result<(), StrategyError> {
        match &self.state {
            // Same choice count: keep tables, scores, and history.
            Some(pool) if pool.q == q => Ok(()),
            _ => {
                self.state = Some(TablePool::draw(self.memory, self.pool, q, rng)?);
                Ok(())
            }
        }
    }

    pub(crate) fn choose(&self, rng: &mut dyn RngCore) -> Result<Choice, StrategyError> {
        let pool = self.state.as_ref().ok_or(StrategyError::NotInitialized)?;
        if pool.history.len() < self.memory {
            return Ok(rng.gen_range(0..pool.q));
        }
        let index = pool.window_index()? as usize;
        let best = pool
            .scores
            .iter()
            .enumerate()
            .max_by(|(ia, sa), (ib, sb)| sa.cmp(sb).then(ib.cmp(ia)))
            .map(|(i, _)| i)
            .expect("pool is never empty");
        Ok(pool.tables[best][index])
    }

    /// Record a round's outcome symbol: credit every table whose entry at
    /// the pre-round window predicted it, then slide the window.
    pub(crate) fn observe(&mut self, symbol: Choice) -> Result<(), StrategyError> {
        let pool = self.state.as_mut().ok_or(StrategyError::NotInitialized)?;
        if symbol >= pool.q {
            return Err(CodecError::DigitOutOfRange {
                digit: symbol,
                base: pool.q,
            }
            .into());
        }
        if pool.history.len() == self.memory {
            let index = pool.window_index()? as usize;
            for (table, score) in pool.tables.iter().zip(pool.scores.iter_mut()) {
                if table[index] == symbol {
                    *score += 1;
                }
            }
            pool.history.remove(0);
        }
        pool.history.push(symbol);
        Ok(())
    }

    /// Redraw tables at the current size, zeroing scores and history.
    pub(crate) fn reset(&mut self, rng: &mut dyn RngCore) {
        if let Some(pool) = &self.state {
            let q = pool.q;
            self.state = Some(
                TablePool::draw(self.memory, self.pool, q, rng)
                    .expect("existing pool proves the size is valid"),
            );
        }
    }

    /// Re-draw each table entry independently with probability `epsilon`.
    pub(crate) fn perturb(&mut self, epsilon: f64, rng: &mut dyn RngCore) {
        if let Some(pool) = &mut self.state {
            for table in &mut pool.tables {
                for entry in table.iter_mut() {
                    if rng.gen_bool(epsilon) {
                        *entry = rng.gen_range(0..pool.q);
                    }
                }
            }
        }
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn pool_size(&self) -> usize {
        self.pool
    }

    /// The choice count the tables are currently sized for.
    pub fn q(&self) -> Option<u32> {
        self.state.as_ref().map(|pool| pool.q)
    }

    pub fn tables(&self) -> Option<&[Vec<Choice>]> {
        self.state.as_ref().map(|pool| pool.tables.as_slice())
    }

    pub fn virtual_scores(&self) -> Option<&[u64]> {
        self.state.as_ref().map(|pool| pool.scores.as_slice())
    }

    /// The current window of observed symbols, oldest first.
    pub fn history(&self) -> Option<&[Choice]> {
        self.state.as_ref().map(|pool| pool.history.as_slice())
    }
}

impl TablePool {
    fn draw(
        memory: usize,
        pool: usize,
        q: u32,
        rng: &mut dyn RngCore,
    ) -> Result<Self, StrategyError> {
        if pool == 0 {
            return Err(StrategyError::EmptyPool);
        }
        let len = table_length(q, memory)?;
        if len > crate::codec::MAX_TABLE_LEN {
            return Err(CodecError::TableTooLarge { base: q, memory }.into());
        }
        let len =
            usize::try_from(len).map_err(|_| CodecError::TableTooLarge { base: q, memory })?;
        let tables = (0..pool)
            .map(|_| (0..len).map(|_| rng.gen_range(0..q)).collect())
            .collect();
        Ok(TablePool {
            q,
            tables,
            scores: vec![0; pool],
            history: Vec::new(),
        })
    }

    fn window_index(&self) -> Result<u64, StrategyError> {
        let window = HistoryWindow::new(self.history.clone(), self.q)?;
        Ok(encode_history(&window)?)
    }
}
