//! Deterministic stream splitting.
//!
//! One master seed fans out into an independent random stream per game,
//! per agent, and per engine-internal decision (player selection, game
//! ordering, pseudonyms, adaptation). Streams are derived by hashing the
//! parent seed together with a domain tag and the child's identity, so
//! adding an agent or a game never shifts anyone else's stream, and the
//! same seed always reproduces the same tournament byte for byte.
//!
//! Derivation is SHA-256 over length-prefixed parts (no concatenation
//! ambiguity), and the generator is ChaCha8, which is specified
//! independently of this crate's dependencies — a seed written down today
//! keeps meaning the same stream.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

fn derive(parts: &[&[u8]]) -> [u8; 32] {
    let mut hasher = Sha256::new();
    for part in parts {
        hasher.update((part.len() as u64).to_le_bytes());
        hasher.update(part);
    }
    hasher.finalize().into()
}

/// The seed governing game number `game_index` of a tournament.
pub fn game_seed(master: u64, game_index: u32) -> u64 {
    let digest = derive(&[b"game", &master.to_le_bytes(), &game_index.to_le_bytes()]);
    u64::from_le_bytes(digest[..8].try_into().expect("digest is 32 bytes"))
}

/// The private stream one agent uses for all its draws within one game.
pub fn agent_rng(game_seed: u64, agent: &str) -> ChaCha8Rng {
    ChaCha8Rng::from_seed(derive(&[
        b"agent",
        &game_seed.to_le_bytes(),
        agent.as_bytes(),
    ]))
}

/// A stream for one named engine decision (e.g. `"order"`, `"select"`,
/// `"pseudonyms"`, `"adapt"`), derived from the given seed.
pub fn labeled_rng(seed: u64, label: &str) -> ChaCha8Rng {
    ChaCha8Rng::from_seed(derive(&[b"label", &seed.to_le_bytes(), label.as_bytes()]))
}
