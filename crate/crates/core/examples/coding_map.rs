//! The coding map on a hand-made coin-flip window: heights, γ, ε and the
//! letters it produces.

use dyck_shift::coding::index_window;
use dyck_shift::{
    apply_f, epsilon, gamma, match_zeros, project_z, tilde_height, AlphabetParams, BinaryWindow,
    Provenance,
};

fn main() -> dyck_shift::Result<()> {
    let p = AlphabetParams::new(3)?;
    // z on [-3, 7]
    let z = BinaryWindow::new(-3, vec![1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 0])?;
    let a = index_window(-3, vec![2, 3, 1, 1, 2, 3, 3, 1], &p)?;
    println!("  n  z  H~_n  gamma_n  eps_n  partner");
    let partners = match_zeros(&z);
    for n in z.lo()..=z.hi() {
        let h = tilde_height(&z, n)
            .map(|h| h.to_string())
            .unwrap_or_default();
        let eps = if z.at(n) == Some(0) {
            format!("{:?}", epsilon(&z, n)?)
        } else {
            String::new()
        };
        let partner = partners[(n - z.lo()) as usize]
            .map(|k| k.to_string())
            .unwrap_or_default();
        println!(
            "{n:>3}  {}  {h:>4}  {:>7}  {eps:<10} {partner}",
            z.at(n).unwrap(),
            gamma(&z, n)?
        );
    }
    let x = apply_f(&z, &a, -2, 6, Provenance::manual())?;
    println!("F(z, a) on [-2, 6]: {}", x.word());
    println!("projected back:     {:?}", project_z(&x).bits());
    // the zero at 7 closes a one left of the window
    if let Err(e) = apply_f(&z, &a, 0, 7, Provenance::manual()) {
        println!("F(z, a) on [0, 7]:  {e}");
    }
    Ok(())
}
