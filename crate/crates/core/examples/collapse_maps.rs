//! Collapsing a window onto `Ω` and `Θ`, inverting, and mirroring.

use dyck_shift::collapse::reflect_point;
use dyck_shift::{
    collapse_minus, collapse_plus, collapsed_cocycle, height_cocycle, invert_collapse_minus,
    invert_collapse_plus, invert_collapse_plus_range, parse_word, AlphabetParams, PointWindow,
};

fn main() -> dyck_shift::Result<()> {
    let p = AlphabetParams::new(3)?;
    let x = PointWindow::from_word(-2, &parse_word("b2 a1 a3 b3 a2 b2 b1", &p)?)?;
    println!("x        on [{}, {}]: {}", x.lo(), x.hi(), x.word());
    let plus = collapse_plus(&x);
    let minus = collapse_minus(&x);
    println!("g+(x)    {plus}");
    println!("g-(x)    {minus}");
    println!("heights  {:?}", height_cocycle(&x)?);
    println!(
        "g+ cocycle agrees: {}",
        collapsed_cocycle(&plus)? == height_cocycle(&x)?
    );
    match invert_collapse_plus(&plus) {
        Ok(y) => println!("g+^-1    {}", y.word()),
        Err(e) => println!("g+^-1    {e}"),
    }
    println!(
        "g+^-1 on [-1, 4]: {}",
        invert_collapse_plus_range(&plus, -1, 4)?.word()
    );
    match invert_collapse_minus(&minus) {
        Ok(y) => println!("g-^-1    {}", y.word()),
        Err(e) => println!("g-^-1    {e}"),
    }
    let r = reflect_point(&x);
    println!("mirror   on [{}, {}]: {}", r.lo(), r.hi(), r.word());
    Ok(())
}
