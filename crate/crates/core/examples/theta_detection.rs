//! Theta functions θ_γ and randomized semistability detection.

use kronsheaf::exactla::{Field, FiniteField, Mat, PrimeField};
use kronsheaf::kron::{detect_ss_theta, theta_gamma, Detection, KroneckerModule, ThetaShape};

fn main() -> kronsheaf::Result<()> {
    let f = PrimeField::new(5)?;
    let sky = KroneckerModule::from_i64(&f, 1, 1, &[&[&[0]], &[&[1]]])?;
    let y = ThetaShape::new(1, 1, vec![Mat::from_i64(&f, &[&[0]]), Mat::from_i64(&f, &[&[1]])])?;
    let x = ThetaShape::new(1, 1, vec![Mat::from_i64(&f, &[&[1]]), Mat::from_i64(&f, &[&[0]])])?;
    println!("θ_y(p) = {}, θ_x(p) = {}", theta_gamma(&y, &sky)?, theta_gamma(&x, &sky)?);

    let m = KroneckerModule::from_i64(
        &f,
        2,
        4,
        &[&[&[1, 0], &[0, 0], &[0, 1], &[0, 0]], &[&[0, 0], &[1, 0], &[0, 0], &[0, 1]]],
    )?;
    let zero = KroneckerModule::zero_action(&f, 1, 1, 2);
    for (name, m) in [("M0 ⊕ M0", &m), ("zero action", &zero)] {
        let (d, big) = detect_ss_theta(m, 32, 2, 7)?;
        match d {
            Detection::Semistable { k, value, .. } => println!(
                "{name}: semistable, θ = {} at power {k} over F_{}",
                big.format(&value),
                big.size()
            ),
            Detection::Inconclusive => println!("{name}: inconclusive"),
        }
    }
    Ok(())
}
