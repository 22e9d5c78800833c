//! Matching times around the origin of sampled windows and the frequencies
//! of type coincidences between them.

use dyck_shift::{a_c_n_frequency, matching_times, sample_mu_tilde, AlphabetParams, SamplerConfig};

fn main() -> dyck_shift::Result<()> {
    let cfg = SamplerConfig::new(-128, 0, AlphabetParams::new(2)?)?
        .seed(7)
        .count(20_000)
        .max_extension(4096);
    let samples: Vec<_> = sample_mu_tilde(&cfg)?.collect();
    for x in samples.iter().take(3) {
        let t = matching_times(x, 4)?;
        let show = |v: &[dyck_shift::MatchingTime]| {
            v.iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        println!("b_1..b_4 = {}", show(&t.b));
    }
    for c in [1, 2] {
        for js in [vec![1], vec![1, 2], vec![1, 2, 3]] {
            let e = a_c_n_frequency(&samples, c, &js)?;
            let expect = 0.5f64.powi(js.len() as i32);
            println!(
                "{e}  vs {expect} ({:.2}σ, resolved {:.1}%)",
                e.sigma_distance(expect),
                100.0 * e.resolution_rate()
            );
        }
    }
    Ok(())
}
