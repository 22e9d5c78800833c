//! Block entropies `H_n`, conditional entropies `h_n` and their decomposition,
//! exact and by the walk recursion, against `log 2 + ½ log m`.
//!
//! cargo run --release --example entropy_table -- 10

use dyck_shift::entropy::conditional_entropy_by_walk;
use dyck_shift::measure::fraction_string;
use dyck_shift::{entropy_table, AlphabetParams, LogCombination};

fn main() -> dyck_shift::Result<()> {
    let n_max: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(8);
    let m = 2;
    let p = AlphabetParams::new(m)?;
    let limit = LogCombination::mu_tilde_limit().to_f64(m);
    println!("limit {limit:.6} nats, log 3 = {:.6}", 3f64.ln());
    println!(" n  h_n = a log 2 + b log m         nats      p_nonneg  identity");
    for r in entropy_table(n_max, &p)? {
        println!(
            "{:>2}  {:<30} {:.6}  {:<8}  {}",
            r.n,
            format!(
                "{} log2 + {} logm",
                fraction_string(&r.conditional.log2),
                fraction_string(&r.conditional.logm)
            ),
            r.conditional.to_f64(m),
            fraction_string(&r.p_nonneg),
            r.decomposition_holds()
        );
    }
    println!("walk recursion, no enumeration:");
    let walk = conditional_entropy_by_walk(200);
    for n in [10, 20, 50, 100, 200] {
        let h = walk[n].to_f64(m);
        println!("{n:>4}  {h:.6}  gap {:.6}", h - limit);
    }
    Ok(())
}
