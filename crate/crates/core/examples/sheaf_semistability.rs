//! Sheaf semistability through Φ, compared with the splitting type on P^1.

use kronsheaf::bridge::{p1_semistable_oracle, sheaf_semistable, BridgeContext, SheafVerdict};
use kronsheaf::exactla::PrimeField;
use kronsheaf::polygraded::{Form, Presentation};

fn main() -> kronsheaf::Result<()> {
    let f = PrimeField::new(5)?;
    let x = Form::var(&f, 2, 0);
    let cases = vec![
        ("O(1)^2", Presentation::free(&f, 2, vec![-1, -1])),
        ("O ⊕ O(2)", Presentation::free(&f, 2, vec![0, -2])),
        ("S/(x^2)", Presentation::quotient(&f, 2, vec![x.mul(&f, &x)])?),
        (
            "O ⊕ S/(x)",
            Presentation::free(&f, 2, vec![0]).direct_sum(&Presentation::quotient(&f, 2, vec![x])?)?,
        ),
    ];
    let ctx = BridgeContext::new(&f, 1, 1, 2)?;
    for (name, e) in cases {
        let rep = sheaf_semistable(&e, &ctx)?;
        let oracle = p1_semistable_oracle(&e, None)?;
        let extra = match &rep.verdict {
            SheafVerdict::Unstable(w) => format!(" via a subsheaf with P = {:?}", w.hilbert_polynomial.to_strings()),
            SheafVerdict::NotApplicable(why) => format!(" ({why})"),
            SheafVerdict::Semistable => String::new(),
        };
        println!(
            "{name:>10}: {}{extra}; splitting {:?} torsion {} -> {}",
            rep.verdict.label(),
            oracle.splitting,
            oracle.torsion,
            oracle.semistable
        );
    }
    Ok(())
}
