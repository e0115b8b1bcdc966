//! Tight submodules against generated subsheaves, and the conditions
//! report over a small corpus on P^1.

use kronsheaf::bridge::{check_conditions, tight_correspondence, BridgeContext};
use kronsheaf::exactla::PrimeField;
use kronsheaf::polygraded::{Form, Presentation};

fn main() -> kronsheaf::Result<()> {
    let f = PrimeField::new(3)?;
    let ctx = BridgeContext::new(&f, 1, 0, 1)?;
    let x = Form::var(&f, 2, 0);
    let y = Form::var(&f, 2, 1);
    let corpus = vec![
        Presentation::free(&f, 2, vec![0, 0]),
        Presentation::free(&f, 2, vec![0, -1]),
        Presentation::quotient(&f, 2, vec![x.mul(&f, &y)])?,
    ];
    let corr = tight_correspondence(&corpus[1], &ctx)?;
    println!(
        "O ⊕ O(1): {} subspaces (exhaustive {}), {} dimension mismatches",
        corr.pairs.len(),
        corr.exhaustive,
        corr.mismatches
    );
    let rep = check_conditions(&corpus, &ctx)?;
    for (name, c) in [("C1", &rep.c1), ("C2", &rep.c2), ("C3", &rep.c3), ("C4", &rep.c4), ("C5", &rep.c5)] {
        println!("{name}: passed {} over {} checks", c.passed, c.checked);
    }
    Ok(())
}
