//! Exact cylinder values of the coin-flip measure and the balanced law.

use dyck_shift::{
    balanced_cylinder_value, extension_additivity_check, mu_tilde_cylinder, parse_word,
    AlphabetParams,
};

fn main() -> dyck_shift::Result<()> {
    let p = AlphabetParams::new(2)?;
    for text in [
        "a1",
        "b2",
        "a1 b1",
        "a1 b2",
        "b1 a2 a2",
        "a1 a2 b2 b1",
        "b2 b1 a1 a1 b1",
    ] {
        let w = parse_word(text, &p)?;
        let v = mu_tilde_cylinder(&w, 0, &p);
        let mono = v
            .monomial()
            .map(|m| format!("2^-{} m^-{}", m.pow2, m.powm))
            .unwrap_or_else(|| "-".into());
        println!(
            "mu([{w}]) = {:<8} {mono:<12} {:.6}",
            v.fraction_string(),
            v.to_f64()
        );
        if let Ok(b) = balanced_cylinder_value(&w, &p) {
            println!("    balanced law gives {}", b.fraction_string());
        }
    }
    let w = parse_word("b1 a2", &p)?;
    let (lhs, rhs) = extension_additivity_check(&w, &p)?;
    println!(
        "mu([{w}]) = {} and the sum over one more letter is {}",
        lhs.fraction_string(),
        rhs.fraction_string()
    );
    Ok(())
}
