//! Rank, kernel and determinant over F_7, F_{2^4} and Q.

use kronsheaf::exactla::{ExtField, Field, FiniteField, Mat, PrimeField, Rationals};

fn main() -> kronsheaf::Result<()> {
    let f7 = PrimeField::new(7)?;
    let a = Mat::from_i64(&f7, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
    println!("F_7: rank {} det {}", a.rank(), f7.format(&a.det()?));
    let k = a.kernel_basis();
    println!("kernel vector {:?}", k.to_strings());

    let q = Rationals;
    let b = Mat::from_i64(&q, &[&[2, 1], &[1, 3]]);
    let inv = b.inverse().expect("invertible");
    println!("Q: inverse {:?}", inv.to_strings());

    let f16 = ExtField::new(2, 4)?;
    let g = f16.element(2);
    let mut x = f16.one();
    for i in 1..=15 {
        x = f16.mul(&x, &g);
        if f16.is_one(&x) {
            println!("F_16: multiplicative order of {} is {i}", f16.format(&g));
            break;
        }
    }
    Ok(())
}
