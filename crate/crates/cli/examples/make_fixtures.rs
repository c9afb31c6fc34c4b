//! Rebuilds the bundled b-files in fixtures/oeis without network access.
//!
//! Values come from library closed forms where one exists and from brute force
//! otherwise. Each file says which, so nobody mistakes them for downloads.
//!
//!     cargo run --release -p riderlab --example make_fixtures

use num::bigint::BigInt;
use riderlab::counting::count_placements;
use riderlab::model::{Board, PieceSpec};
use riderlab::quasipoly::formula_eval;
use riderlab_cli::app::library_formula;
use riderlab_cli::oeis::{all_mappings, bundled_fixtures, OeisEntry};
use std::fmt::Write;

/// Terms from closed forms.
const FORMULA_TERMS: i64 = 24;

/// Largest board for brute-force terms, by (piece, q).
fn brute_limit(name: &str, q: usize) -> u32 {
    match (name, q) {
        ("nightrider", 3) => 14,
        ("queen", 5) => 11,
        ("queen", 6) => 10,
        ("queen", _) => 9,
        _ => 10,
    }
}

fn main() {
    let dir = bundled_fixtures();
    std::fs::create_dir_all(&dir).unwrap();
    let mut done = std::collections::BTreeSet::new();
    for (name, q, map) in all_mappings() {
        if !done.insert(map.id) {
            continue;
        }
        let p = PieceSpec::preset(name).unwrap();
        let (how, values): (String, Vec<(i64, BigInt)>) = match library_formula(&p, q) {
            Some(id) => (
                format!("closed form {id}"),
                (1..=FORMULA_TERMS)
                    .map(|n| (n, formula_eval(id, q, n).unwrap().to_integer()))
                    .collect(),
            ),
            None => (
                "brute-force enumeration".to_string(),
                (1..=brute_limit(name, q))
                    .map(|n| (n as i64, count_placements(&p, &Board::Square, q, n).unwrap()))
                    .collect(),
            ),
        };
        let shifted: Vec<(i64, BigInt)> = values.into_iter().map(|(n, v)| (n - map.shift, v)).collect();
        let entry = OeisEntry::new(map.id, shifted).unwrap();
        let mut text = String::new();
        writeln!(text, "# {}: {q} unlabeled {name} pieces on the n x n board", map.id).unwrap();
        writeln!(text, "# offline reconstruction by riderlab ({how}), not downloaded from oeis.org").unwrap();
        writeln!(text, "# index = n - {}", map.shift).unwrap();
        text.push_str(&entry.to_bfile());
        std::fs::write(dir.join(entry.file_name()), text).unwrap();
        println!("{} {name} q={q}: {} terms via {how}", map.id, entry.values.len());
    }
}
