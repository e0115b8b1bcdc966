//! θ_δ(E) ≠ 0 against Hom(F, E) = Ext^1(F, E) = 0 for F = coker δ on P^1.

use num_rational::BigRational;
use num_traits::Zero;

use crate::exactla::{Field, Mat};
use crate::error::{Error, Result};
use crate::polygraded::cohomology::resolve;
use crate::polygraded::{Presentation, SectionSpace};

use super::context::BridgeContext;
use super::delta::{theta_delta_matrix, DeltaMap};
use super::functor::phi_data;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FaltingsOutcome {
    Checked {
        agree: bool,
        theta_nonzero: bool,
        hom_dim: usize,
        ext1_dim: usize,
    },
    HypothesisFailed(String),
}

/// dim Hom(F, E) from a line-bundle resolution L_1 → L_0 → F → 0:
/// the kernel of ⊕ H^0(E(a_i)) → ⊕ H^0(E(b_j)).
fn hom_dim<F: Field>(f_res: &crate::polygraded::Resolution<F>, e_res: &crate::polygraded::Resolution<F>) -> Result<usize> {
    let frees = f_res.free_modules();
    let l0 = &frees[0];
    let Some(d) = f_res.maps().first() else {
        return Err(Error::ResolutionIncomplete("no presentation map".into()));
    };
    let l1 = d.source();
    let mut degrees: Vec<i64> = l0.degrees.iter().chain(&l1.degrees).copied().collect();
    degrees.sort_unstable();
    degrees.dedup();
    let sp = SectionSpace::new(e_res, &degrees, None)?;
    let field = e_res.field();
    let src: usize = l0.degrees.iter().map(|&a| sp.dim(a)).sum();
    let tgt: usize = l1.degrees.iter().map(|&b| sp.dim(b)).sum();
    let mut mat = Mat::zeros(field, tgt, src);
    let mut col = 0;
    for (i, &a) in l0.degrees.iter().enumerate() {
        for k in 0..sp.dim(a) {
            let s = sp.basis_psi(a, k);
            let mut row = 0;
            for (j, &b) in l1.degrees.iter().enumerate() {
                let img = sp.coords(b, &sp.mul_form(a, &s, d.entry(i, j)));
                for (t, x) in img.into_iter().enumerate() {
                    mat[(row + t, col)] = x;
                }
                row += sp.dim(b);
            }
            col += 1;
        }
    }
    Ok(src - mat.rank())
}

pub fn faltings_check<F: Field>(
    delta: &DeltaMap<F>,
    e: &Presentation<F>,
    ctx: &BridgeContext<F>,
) -> Result<FaltingsOutcome> {
    if ctx.r != 1 {
        return Err(Error::WrongDimension(format!("comparison is on P^1, got P^{}", ctx.r)));
    }
    let data = phi_data(e, ctx)?;
    let f = delta.cokernel(ctx)?;
    let f_res = resolve(&f, ctx.degree_cap)?;
    let p = data.resolution.hilbert_polynomial();
    // χ(F, E) = Σ_i (-1)^i Σ_{S(-a) ⊆ L_i} P_E(a)
    let mut chi = BigRational::zero();
    for (i, l) in f_res.free_modules().iter().enumerate() {
        for &a in &l.degrees {
            let v = p.eval(a);
            chi = if i % 2 == 0 { chi + v } else { chi - v };
        }
    }
    if !chi.is_zero() {
        return Ok(FaltingsOutcome::HypothesisFailed(format!("chi(F, E) = {chi}")));
    }
    let (a, b) = data.module.dims();
    if a * delta.u0 != b * delta.u1 {
        return Ok(FaltingsOutcome::HypothesisFailed(format!(
            "weights differ: P(n)·u0 = {} but P(m)·u1 = {}",
            a * delta.u0,
            b * delta.u1
        )));
    }
    let theta_nonzero = !ctx.field.is_zero(&theta_delta_matrix(delta, &data, ctx)?.det()?);
    let hom = hom_dim(&f_res, &data.resolution)?;
    // Ext^2 vanishes on a curve, so dim Ext^1 = dim Hom - χ = dim Hom.
    let ext1 = hom;
    Ok(FaltingsOutcome::Checked {
        agree: theta_nonzero == (hom == 0 && ext1 == 0),
        theta_nonzero,
        hom_dim: hom,
        ext1_dim: ext1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;
    use crate::polygraded::Form;

    #[test]
    fn faltings_examples() {
        let f = PrimeField::new(5).unwrap();
        let ctx = BridgeContext::new(&f, 1, 0, 1).unwrap();
        let dy = DeltaMap::new(&ctx, 1, 1, vec![vec![Form::var(&f, 2, 1)]]).unwrap();
        let at_x = Presentation::quotient(&f, 2, vec![Form::var(&f, 2, 0)]).unwrap();
        let at_y = Presentation::quotient(&f, 2, vec![Form::var(&f, 2, 1)]).unwrap();
        assert_eq!(
            faltings_check(&dy, &at_x, &ctx).unwrap(),
            FaltingsOutcome::Checked {
                agree: true,
                theta_nonzero: true,
                hom_dim: 0,
                ext1_dim: 0
            }
        );
        match faltings_check(&dy, &at_y, &ctx).unwrap() {
            FaltingsOutcome::Checked {
                agree,
                theta_nonzero,
                hom_dim,
                ..
            } => {
                assert!(agree && !theta_nonzero);
                assert_eq!(hom_dim, 1);
            }
            o => panic!("{o:?}"),
        }
        let o = Presentation::free(&f, 2, vec![0]);
        assert!(matches!(
            faltings_check(&dy, &o, &ctx).unwrap(),
            FaltingsOutcome::HypothesisFailed(_)
        ));
    }
}
