//! Holonomies: swapping equivalent blocks, and the exact invariance of the
//! cylinder values under them.

use dyck_shift::{
    equivalent_pairs, holonomy_apply, holonomy_invariance_exact, mu_tilde_cylinder, parse_word,
    AlphabetParams, Holonomy, PointWindow,
};

fn main() -> dyck_shift::Result<()> {
    let p = AlphabetParams::new(2)?;
    let w = |s: &str| parse_word(s, &p);
    let h = Holonomy::new(w("a1 b1 a2")?, w("a2 a1 b1")?, 0)?;
    let x = PointWindow::from_word(-1, &w("b2 a1 b1 a2 b2 a1")?)?;
    let y = holonomy_apply(&h, &x)?;
    println!("x      = {}", x.word());
    println!("g(x)   = {}", y.word());
    println!("g⁻¹gx  = {}", holonomy_apply(&h.inverse(), &y)?.word());
    println!(
        "mu: {} vs {}",
        mu_tilde_cylinder(&x.word(), -1, &p).fraction_string(),
        mu_tilde_cylinder(&y.word(), -1, &p).fraction_string()
    );
    println!(
        "equivalent pairs of length <= 4: {}",
        equivalent_pairs(4, &p).len()
    );
    for (max_word, max_context) in [(4, 2), (6, 3)] {
        let r = holonomy_invariance_exact(max_word, max_context, &p);
        println!(
            "|w| <= {max_word}, |s|,|t| <= {max_context}: {} classes, {} pairs, {} comparisons, holds = {}",
            r.classes,
            r.pairs,
            r.comparisons,
            r.holds()
        );
    }
    Ok(())
}
