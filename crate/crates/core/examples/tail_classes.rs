//! Heuristic tail labels for long windows of each measure.

use dyck_shift::{
    classify_window, sample_with, AlphabetParams, SamplerConfig, SamplerId, TailLabel,
};

fn main() -> dyck_shift::Result<()> {
    let cfg = SamplerConfig::new(-400, 400, AlphabetParams::new(2)?)?.count(200);
    for id in [SamplerId::Tilde, SamplerId::Plus, SamplerId::Minus] {
        let mut counts = std::collections::BTreeMap::<(String, String), usize>::new();
        for x in sample_with(&cfg, id)? {
            let c = classify_window(&x)?;
            let name = |l: TailLabel| l.to_string();
            *counts
                .entry((name(c.backward.label), name(c.forward.label)))
                .or_default() += 1;
        }
        println!("{id}: (backward, forward) -> share");
        for ((b, f), n) in counts {
            println!("  ({b}, {f})  {:.1}%", 100.0 * n as f64 / 200.0);
        }
    }
    Ok(())
}
