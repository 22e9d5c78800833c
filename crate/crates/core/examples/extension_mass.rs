//! Mass of the minimal balanced extensions of a word, converging to its
//! cylinder value.
//!
//! cargo run --release --example extension_mass -- "a1 a2" 1024

use dyck_shift::{minimal_balanced_extensions, minimal_extension_mass, parse_word, AlphabetParams};

fn main() -> dyck_shift::Result<()> {
    let p = AlphabetParams::new(2)?;
    let mut args = std::env::args().skip(1);
    let a = parse_word(&args.next().unwrap_or_else(|| "a1".into()), &p)?;
    let max_len: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(512);
    println!("shortest extensions of [{a}]:");
    for e in minimal_balanced_extensions(&a, a.len() + 6, &p)? {
        println!("  [{}] [{a}] [{}]", e.left, e.right);
    }
    let rows = minimal_extension_mass(&a, max_len, &p)?;
    let target = rows[0].partial_sum.to_f64() + rows[0].residual.to_f64();
    println!("target {target}");
    println!("length  extensions          relative gap");
    for row in rows
        .iter()
        .filter(|r| r.length.is_power_of_two() || r.length == rows[0].length)
    {
        let digits = row.extensions.to_string();
        let shown = if digits.len() > 18 {
            format!("~1e{}", digits.len() - 1)
        } else {
            digits
        };
        println!(
            "{:>6}  {shown:<18}  {:.4}%",
            row.length,
            100.0 * row.residual.to_f64() / target
        );
    }
    Ok(())
}
