//! Hilbert polynomial, cohomology table and regularity of the three
//! coordinate points and of O ⊕ O(-2) on P^2.

use kronsheaf::exactla::PrimeField;
use kronsheaf::polygraded::cohomology::resolve;
use kronsheaf::polygraded::{Form, Presentation};

fn main() -> kronsheaf::Result<()> {
    let f = PrimeField::new(101)?;
    let x = Form::var(&f, 3, 0);
    let y = Form::var(&f, 3, 1);
    let z = Form::var(&f, 3, 2);
    // three points: V(xy, yz, zx)
    let pts = Presentation::quotient(
        &f,
        3,
        vec![x.mul(&f, &y), y.mul(&f, &z), z.mul(&f, &x)],
    )?;
    let sum = Presentation::free(&f, 3, vec![0, 2]);
    for (name, e) in [("3 points", pts), ("O + O(-2)", sum)] {
        let res = resolve(&e, None)?;
        println!("{name}: P = {:?}", res.hilbert_polynomial().to_strings());
        for t in -4..=2 {
            let h: Vec<usize> = (0..=2).map(|i| res.cohomology(i, t)).collect();
            println!("  h^*(E({t:>2})) = {h:?}");
        }
        let n = (-6..=res.reg_bound()).find(|&n| res.is_n_regular(n)).unwrap();
        println!("  {n}-regular; resolution length {}", res.length());
    }
    Ok(())
}
