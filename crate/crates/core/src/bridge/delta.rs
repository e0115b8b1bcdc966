//! Maps δ: U_1 ⊗ O(-m) → U_0 ⊗ O(-n) and their theta functions.

use crate::exactla::{Field, Mat};
use crate::error::{Error, Result};
use crate::kron::ThetaShape;
use crate::polygraded::{Form, Presentation};

use super::context::BridgeContext;
use super::functor::{phi_data, PhiData};

/// A u0 × u1 matrix of forms of degree m - n.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaMap<F: Field> {
    pub u0: usize,
    pub u1: usize,
    pub entries: Vec<Vec<Form<F>>>,
}

impl<F: Field> DeltaMap<F> {
    pub fn new(ctx: &BridgeContext<F>, u0: usize, u1: usize, entries: Vec<Vec<Form<F>>>) -> Result<Self> {
        if entries.len() != u0 || entries.iter().any(|r| r.len() != u1) {
            return Err(Error::DimensionMismatch(format!("delta must be {u0}x{u1}")));
        }
        let e = ctx.m - ctx.n;
        for (i, row) in entries.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if x.degree() != e || x.num_vars() != ctx.nv() {
                    return Err(Error::DimensionMismatch(format!(
                        "degree mismatch at ({i},{j}): expected a form of degree {e} in {} variables",
                        ctx.nv()
                    )));
                }
            }
        }
        Ok(DeltaMap { u0, u1, entries })
    }

    /// coker δ, with U_0 generators in degree n and U_1 relations in degree m.
    pub fn cokernel(&self, ctx: &BridgeContext<F>) -> Result<Presentation<F>> {
        use crate::polygraded::{FreeModule, GradedMap};
        let gens = FreeModule::new(ctx.nv(), vec![ctx.n; self.u0]);
        let rels = FreeModule::new(ctx.nv(), vec![ctx.m; self.u1]);
        Ok(Presentation::new(GradedMap::new(&ctx.field, rels, gens, self.entries.clone())?))
    }
}

/// δ_ij = Σ_k (G_k)_ij h_k.
pub fn delta_from_gamma<F: Field>(gamma: &ThetaShape<F>, ctx: &BridgeContext<F>) -> Result<DeltaMap<F>> {
    if gamma.dim_h() != ctx.dim_h() {
        return Err(Error::DimHMismatch {
            expected: ctx.dim_h(),
            got: gamma.dim_h(),
        });
    }
    let f = &ctx.field;
    let hs = ctx.h_forms();
    let entries = (0..gamma.u0)
        .map(|i| {
            (0..gamma.u1)
                .map(|j| {
                    gamma
                        .g
                        .iter()
                        .zip(&hs)
                        .fold(Form::zero(ctx.nv(), ctx.m - ctx.n), |acc, (g, h)| {
                            acc.add(f, &h.scale(f, &g[(i, j)]))
                        })
                })
                .collect()
        })
        .collect();
    DeltaMap::new(ctx, gamma.u0, gamma.u1, entries)
}

pub fn gamma_from_delta<F: Field>(delta: &DeltaMap<F>, ctx: &BridgeContext<F>) -> Result<ThetaShape<F>> {
    let f = &ctx.field;
    let g = ctx
        .h_basis()
        .iter()
        .map(|mu| Mat::from_fn(f, delta.u0, delta.u1, |i, j| delta.entries[i][j].coeff(f, mu)))
        .collect();
    ThetaShape::new(delta.u0, delta.u1, g)
}

/// The matrix of Hom(U_0, H^0(E(n))) → Hom(U_1, H^0(E(m))), φ ↦ φ ∘ δ,
/// with column-major φ, computed by multiplying sections by the entries of δ.
pub fn theta_delta_matrix<F: Field>(delta: &DeltaMap<F>, data: &PhiData<F>, ctx: &BridgeContext<F>) -> Result<Mat<F>> {
    let sp = &data.sections;
    let (a, b) = data.module.dims();
    if a * delta.u0 != b * delta.u1 {
        return Err(Error::WeightMismatch(format!(
            "P(n)·u0 = {a}·{} differs from P(m)·u1 = {b}·{}",
            delta.u0, delta.u1
        )));
    }
    let mut out = Mat::zeros(&ctx.field, b * delta.u1, a * delta.u0);
    for c in 0..delta.u0 {
        for i in 0..a {
            let s = sp.basis_psi(ctx.n, i);
            for u in 0..delta.u1 {
                let img = sp.coords(ctx.m, &sp.mul_form(ctx.n, &s, &delta.entries[c][u]));
                for (k, x) in img.into_iter().enumerate() {
                    out[(u * b + k, c * a + i)] = x;
                }
            }
        }
    }
    Ok(out)
}

/// θ_δ(E) = det Hom(δ, E); E must be n-regular.
pub fn theta_delta<F: Field>(delta: &DeltaMap<F>, e: &Presentation<F>, ctx: &BridgeContext<F>) -> Result<F::Elem> {
    let data = phi_data(e, ctx)?;
    theta_delta_matrix(delta, &data, ctx)?.det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;
    use crate::kron::theta_matrix;

    #[test]
    fn delta_gamma_examples() {
        let f = PrimeField::new(5).unwrap();
        let ctx = BridgeContext::new(&f, 1, 0, 1).unwrap();
        let y = ThetaShape::new(1, 1, vec![Mat::from_i64(&f, &[&[0]]), Mat::from_i64(&f, &[&[1]])]).unwrap();
        let d = delta_from_gamma(&y, &ctx).unwrap();
        assert_eq!(d.entries[0][0], Form::var(&f, 2, 1));
        assert_eq!(gamma_from_delta(&d, &ctx).unwrap(), y);
        let x = ThetaShape::new(1, 1, vec![Mat::from_i64(&f, &[&[1]]), Mat::from_i64(&f, &[&[0]])]).unwrap();
        let s = y.direct_sum(&x).unwrap();
        let ds = delta_from_gamma(&s, &ctx).unwrap();
        assert_eq!(ds.entries[0][0], Form::var(&f, 2, 1));
        assert_eq!(ds.entries[1][1], Form::var(&f, 2, 0));
        assert!(ds.entries[0][1].is_zero());
    }

    #[test]
    fn theta_delta_examples() {
        let f = PrimeField::new(5).unwrap();
        let ctx = BridgeContext::new(&f, 1, 0, 1).unwrap();
        let sky = Presentation::quotient(&f, 2, vec![Form::var(&f, 2, 0)]).unwrap();
        let dy = DeltaMap::new(&ctx, 1, 1, vec![vec![Form::var(&f, 2, 1)]]).unwrap();
        let dx = DeltaMap::new(&ctx, 1, 1, vec![vec![Form::var(&f, 2, 0)]]).unwrap();
        assert_ne!(theta_delta(&dy, &sky, &ctx).unwrap(), 0);
        assert_eq!(theta_delta(&dx, &sky, &ctx).unwrap(), 0);
        let o = Presentation::free(&f, 2, vec![0]);
        assert!(matches!(theta_delta(&dy, &o, &ctx), Err(Error::WeightMismatch(_))));
    }

    #[test]
    fn adjunction_matrices_agree() {
        let f = PrimeField::new(7).unwrap();
        let ctx = BridgeContext::new(&f, 1, 0, 1).unwrap();
        let o = Presentation::free(&f, 2, vec![0]);
        let data = phi_data(&o, &ctx).unwrap();
        let mut rng = <rand_chacha::ChaCha8Rng as rand_chacha::rand_core::SeedableRng>::seed_from_u64(5);
        for _ in 0..5 {
            let g = ThetaShape::random(&f, 2, 1, 2, &mut rng);
            let d = delta_from_gamma(&g, &ctx).unwrap();
            assert_eq!(
                theta_delta_matrix(&d, &data, &ctx).unwrap(),
                theta_matrix(&g, &data.module).unwrap()
            );
        }
    }
}
