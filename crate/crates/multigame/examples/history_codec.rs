//! Base-q history encoding: how recent outcome symbols become an index
//! into a lookup table of length q^m.
//!
//! Run with: cargo run --example history_codec

use multigame::codec::{decode_index, encode_history, table_length, HistoryWindow};

fn main() {
    println!("table lengths (q = choices per round, m = symbols remembered):");
    for (q, m) in [(2u32, 3usize), (3, 3), (2, 5), (11, 3)] {
        println!(
            "  q={q:<2} m={m}  ->  {} entries",
            table_length(q, m).unwrap()
        );
    }

    println!("\nencoding treats the oldest symbol as the most significant digit:");
    for (window, q) in [
        (vec![0, 1, 0], 2u32),
        (vec![2, 2, 2], 3),
        (vec![1, 0, 1, 1], 2),
    ] {
        let history = HistoryWindow::new(window.clone(), q).unwrap();
        let index = encode_history(&history).unwrap();
        println!("  {window:?} in base {q}  ->  index {index}");
    }

    println!("\ndecoding inverts it exactly:");
    let q = 3;
    let m = 3;
    for index in [0u64, 13, 26] {
        let window = decode_index(index, q, m).unwrap();
        let back = encode_history(&window).unwrap();
        println!(
            "  index {index:>2}  ->  {:?}  ->  index {back}",
            window.digits()
        );
    }

    println!("\nevery index below q^m round-trips; q=4, m=3 as a spot check:");
    let total = table_length(4, 3).unwrap();
    let ok = (0..total).all(|index| {
        let window = decode_index(index, 4, 3).unwrap();
        encode_history(&window).unwrap() == index
    });
    println!(
        "  {total} indices checked: {}",
        if ok { "all round-trip" } else { "MISMATCH" }
    );
}
