//! Sizes of the language and of the balanced words, with the growth rate
//! against `m + 1`.

use dyck_shift::{count_balanced, count_language, AlphabetParams};

fn main() -> dyck_shift::Result<()> {
    for m in [2u32, 3] {
        let p = AlphabetParams::new(m)?;
        println!("m = {m}");
        println!("  N  |balanced(2N)|");
        for n in 0..=8u64 {
            println!("{n:>3}  {}", count_balanced(n, &p));
        }
        println!("  n  |L(n)|       ratio |L(n)|/|L(n-1)|");
        let mut prev = 1u64;
        for n in 0..=if m == 2 { 12 } else { 9 } {
            let c = count_language(n, &p);
            println!("{n:>3}  {c:<12} {:.4}", c as f64 / prev as f64);
            prev = c;
        }
        println!("  limit ratio m + 1 = {}", m + 1);
    }
    Ok(())
}
