//! Normal forms, membership and equivalence of words.
//!
//! cargo run --example reduce_words -- "a1 a2 b2 b1 a3"

use dyck_shift::{are_equivalent, is_balanced, match_annotate, parse_word, reduce, AlphabetParams};

fn main() -> dyck_shift::Result<()> {
    let p = AlphabetParams::new(3)?;
    let input = std::env::args().nth(1);
    let words = match &input {
        Some(w) => vec![w.as_str()],
        None => vec!["a1 a2 b2 b1 a3", "b1 a2 b2 a1", "a1 b2", "a3 a1 b1 b3", ""],
    };
    for text in words {
        let w = parse_word(text, &p)?;
        let nf = reduce(&w);
        print!(
            "{:<20} -> {:<8} balanced={}",
            format!("[{w}]"),
            nf.to_string(),
            is_balanced(&w)
        );
        if let Ok(ann) = match_annotate(&w) {
            print!(" pairs={:?} n1={} n2={}", ann.matched_pairs, ann.n1, ann.n2);
        }
        println!();
    }
    let x = parse_word("a1 b1 a2", &p)?;
    let y = parse_word("a2 a3 b3", &p)?;
    println!("[{x}] ≡ [{y}]: {}", are_equivalent(&x, &y)?);
    Ok(())
}
