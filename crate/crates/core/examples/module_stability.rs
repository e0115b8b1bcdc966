//! Semistability, S-filtration and gr of Kronecker modules over F_3.

use kronsheaf::exactla::PrimeField;
use kronsheaf::kron::{gr, is_semistable, is_stable, s_filtration, KroneckerModule, StabilityOptions, Verdict};

fn main() -> kronsheaf::Result<()> {
    let f = PrimeField::new(3)?;
    let opts = StabilityOptions::default();
    let m0 = KroneckerModule::from_i64(&f, 1, 2, &[&[&[1], &[0]], &[&[0], &[1]]])?;
    let sky = KroneckerModule::from_i64(&f, 1, 1, &[&[&[1]], &[&[2]]])?;
    let unst = KroneckerModule::from_i64(&f, 2, 2, &[&[&[1, 0], &[0, 0]], &[&[0, 0], &[1, 0]]])?;

    for (name, m) in [("M0", &m0), ("point", &sky), ("(2,2) with dead vector", &unst)] {
        let out = is_semistable(m, &opts)?;
        match out.verdict {
            Verdict::Semistable => println!("{name}: semistable, stable = {}", is_stable(m, &opts)?),
            Verdict::Unstable(s) => println!("{name}: unstable, destabilizing dims {:?}", s.dims()),
        }
    }

    let pp = sky.direct_sum(&sky)?;
    let filt = s_filtration(&pp, &opts)?;
    println!("p ⊕ p: filtration of length {}", filt.chain.len());
    for q in gr(&pp, &opts)? {
        println!("  factor of dims {:?}", q.dims());
    }
    Ok(())
}
