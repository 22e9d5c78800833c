//! Seeded samples of the three measures, with empirical cylinder
//! frequencies next to the exact values.
//!
//! cargo run --release --example sample_measures -- 20000

use dyck_shift::{
    empirical_cylinder, mu_tilde_cylinder, parse_word, sample_mu_minus, sample_mu_plus,
    sample_mu_tilde, AlphabetParams, PointWindow, SamplerConfig,
};

fn main() -> dyck_shift::Result<()> {
    let count: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(20_000);
    let p = AlphabetParams::new(2)?;
    let cfg = SamplerConfig::new(-4, 4, p)?.seed(7).count(count);
    let tilde: Vec<PointWindow> = sample_mu_tilde(&cfg)?.collect();
    let plus: Vec<PointWindow> = sample_mu_plus(&cfg)?.collect();
    let minus: Vec<PointWindow> = sample_mu_minus(&cfg)?.collect();
    for (name, xs) in [("tilde", &tilde), ("plus", &plus), ("minus", &minus)] {
        println!("{name}: first samples");
        for x in xs.iter().take(3) {
            println!("  {}", x.dump_line());
        }
    }
    println!("word       exact     tilde            plus      minus");
    for text in ["a1", "b1", "a1 b1", "b1 a1", "a1 a1"] {
        let w = parse_word(text, &p)?;
        let est = |xs: &[PointWindow]| empirical_cylinder(xs, &w, 0).map(|e| e.estimate);
        let t = empirical_cylinder(&tilde, &w, 0)?;
        println!(
            "{:<10} {:.5}  {:.5} ({:.1}σ)  {:.5}   {:.5}",
            format!("[{w}]"),
            mu_tilde_cylinder(&w, 0, &p).to_f64(),
            t.estimate,
            t.sigma_distance(mu_tilde_cylinder(&w, 0, &p).to_f64()),
            est(&plus)?,
            est(&minus)?
        );
    }
    let truncated = tilde.iter().filter(|x| x.is_truncated()).count();
    println!("truncated tilde samples: {truncated}/{count}");
    Ok(())
}
