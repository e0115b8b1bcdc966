//! θ_δ(E) ≠ 0 against Hom(F, E) = Ext^1(F, E) = 0, F = coker δ, on P^1.

use kronsheaf::bridge::{faltings_check, theta_delta, BridgeContext, DeltaMap};
use kronsheaf::exactla::PrimeField;
use kronsheaf::polygraded::{Form, Presentation};

fn main() -> kronsheaf::Result<()> {
    let f = PrimeField::new(5)?;
    let ctx = BridgeContext::new(&f, 1, 0, 1)?;
    let x = Form::var(&f, 2, 0);
    let y = Form::var(&f, 2, 1);
    let delta = DeltaMap::new(&ctx, 1, 1, vec![vec![y.clone()]])?;
    for (name, e) in [
        ("point x = 0", Presentation::quotient(&f, 2, vec![x.clone()])?),
        ("point y = 0", Presentation::quotient(&f, 2, vec![y.clone()])?),
        ("O", Presentation::free(&f, 2, vec![0])),
    ] {
        let theta = theta_delta(&delta, &e, &ctx).ok();
        println!("{name}: θ_δ = {theta:?}, {:?}", faltings_check(&delta, &e, &ctx)?);
    }
    // O against coker(O(-1) -> O^2) given by (x, y)
    let d2 = DeltaMap::new(&ctx, 2, 1, vec![vec![x], vec![y]])?;
    println!("O vs coker (x y)^T: {:?}", faltings_check(&d2, &Presentation::free(&f, 2, vec![0]), &ctx)?);
    Ok(())
}
