//! Points of P^1 as (1,1)-modules are told apart by ratios of thetas;
//! S-equivalent modules are not.

use kronsheaf::bridge::separation_experiment;
use kronsheaf::exactla::PrimeField;
use kronsheaf::kron::hom::random_conjugate;
use kronsheaf::kron::{KroneckerModule, StabilityOptions};

fn main() -> kronsheaf::Result<()> {
    let f = PrimeField::new(5)?;
    let opts = StabilityOptions {
        theta_budget: 16,
        seed: 3,
        ..Default::default()
    };
    let pts = [(1, 0), (0, 1), (1, 1), (1, 2), (1, 3)]
        .iter()
        .map(|&(a, b)| KroneckerModule::from_i64(&f, 1, 1, &[&[&[a]], &[&[b]]]))
        .collect::<kronsheaf::Result<Vec<_>>>()?;
    let rep = separation_experiment(&pts, &opts)?;
    println!("sampled {} shapes over a field of order {}", rep.samples, rep.field_order);
    for p in &rep.pairs {
        println!("  points {} and {}: {:?}", p.i, p.j, p.outcome);
    }
    let m0 = KroneckerModule::from_i64(&f, 1, 2, &[&[&[1], &[0]], &[&[0], &[1]]])?;
    let mm = m0.direct_sum(&m0)?;
    let rep = separation_experiment(&[mm.clone(), random_conjugate(&mm, 9)?], &opts)?;
    println!("M0 ⊕ M0 against a conjugate: {:?}", rep.pairs[0].outcome);
    Ok(())
}
