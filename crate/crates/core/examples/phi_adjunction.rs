//! Φ(E) = H^0(E(n)) ⊕ H^0(E(m)), its adjoint, unit and counit on P^1.

use kronsheaf::bridge::{counit_is_iso, phi, phi_dual, unit_is_iso, BridgeContext};
use kronsheaf::exactla::PrimeField;
use kronsheaf::polygraded::cohomology::resolve;
use kronsheaf::polygraded::Presentation;

fn main() -> kronsheaf::Result<()> {
    let f = PrimeField::new(5)?;
    let e = Presentation::free(&f, 2, vec![0, -1]);
    let ctx = BridgeContext::new(&f, 1, 0, 1)?;
    let m = phi(&e, &ctx)?;
    println!("Φ(O ⊕ O(1)) has dims {:?}", m.dims());
    for (k, a) in m.action().iter().enumerate() {
        println!("  α_{k} = {:?}", a.to_strings());
    }
    let back = phi_dual(&m, &ctx)?;
    println!(
        "Φ^∨Φ(E): P = {:?}",
        resolve(&back, None)?.hilbert_polynomial().to_strings()
    );
    println!("counit iso: {}", counit_is_iso(&e, &ctx)?.iso);
    println!("unit iso:   {}", unit_is_iso(&m, &ctx)?);

    let too_low = Presentation::line_bundle(&f, 2, -2);
    println!("Φ(O(-2)) at n = 0: {:?}", phi(&too_low, &ctx).err());
    Ok(())
}
