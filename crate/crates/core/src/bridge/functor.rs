//! Φ(E) = H^0(E(n)) ⊕ H^0(E(m)) with its multiplication map, the adjoint
//! Φ^∨, and the unit and counit of the adjunction.

use crate::exactla::{EchelonBasis, Field, Mat};
use crate::error::{Error, Result};
use crate::kron::KroneckerModule;
use crate::polygraded::cohomology::resolve;
use crate::polygraded::monomial;
use crate::polygraded::resolution::{cap_for, kernel_generators};
use crate::polygraded::{FreeModule, GradedMap, HilbPoly, Piece, Presentation, Resolution, SectionSpace};

use super::context::BridgeContext;

/// Φ(E) together with the data used to build it.
#[derive(Clone, Debug)]
pub struct PhiData<F: Field> {
    pub module: KroneckerModule<F>,
    pub sections: SectionSpace<F>,
    pub resolution: Resolution<F>,
}

fn module_from_sections<F: Field>(sp: &SectionSpace<F>, ctx: &BridgeContext<F>) -> Result<KroneckerModule<F>> {
    let (a, b) = (sp.dim(ctx.n), sp.dim(ctx.m));
    let action = ctx
        .h_forms()
        .iter()
        .map(|h| {
            let cols: Vec<Vec<F::Elem>> = (0..a)
                .map(|j| sp.coords(ctx.m, &sp.mul_form(ctx.n, &sp.basis_psi(ctx.n, j), h)))
                .collect();
            Mat::from_cols(&ctx.field, b, &cols)
        })
        .collect();
    KroneckerModule::new(&ctx.field, a, b, action)
}

/// Φ(E) without the regularity gate; dimensions are h^0(E(n)), h^0(E(m)).
pub(crate) fn phi_unchecked<F: Field>(e: &Presentation<F>, ctx: &BridgeContext<F>) -> Result<PhiData<F>> {
    ctx.check(e)?;
    let res = resolve(e, ctx.degree_cap)?;
    let sp = SectionSpace::new(&res, &[ctx.n, ctx.m], None)?;
    Ok(PhiData {
        module: module_from_sections(&sp, ctx)?,
        sections: sp,
        resolution: res,
    })
}

pub fn phi_data<F: Field>(e: &Presentation<F>, ctx: &BridgeContext<F>) -> Result<PhiData<F>> {
    ctx.check(e)?;
    let res = resolve(e, ctx.degree_cap)?;
    phi_from_resolution(res, ctx)
}

pub(crate) fn phi_from_resolution<F: Field>(res: Resolution<F>, ctx: &BridgeContext<F>) -> Result<PhiData<F>> {
    if !res.is_n_regular(ctx.n) {
        return Err(Error::NotRegular(ctx.n));
    }
    let sp = SectionSpace::new(&res, &[ctx.n, ctx.m], None)?;
    let hp = res.hilbert_polynomial();
    let (a, b) = (sp.dim(ctx.n), sp.dim(ctx.m));
    if a as i64 != hp.eval_int(ctx.n) || b as i64 != hp.eval_int(ctx.m) {
        return Err(Error::Certificate(format!(
            "dimension vector ({a}, {b}) differs from (P(n), P(m)) = ({}, {})",
            hp.eval_int(ctx.n),
            hp.eval_int(ctx.m)
        )));
    }
    Ok(PhiData {
        module: module_from_sections(&sp, ctx)?,
        sections: sp,
        resolution: res,
    })
}

/// The Kronecker module Φ_{n,m}(E); E must be n-regular.
pub fn phi<F: Field>(e: &Presentation<F>, ctx: &BridgeContext<F>) -> Result<KroneckerModule<F>> {
    Ok(phi_data(e, ctx)?.module)
}

/// Φ^∨(M): a generators in degree n, b in degree m, and for each (v_j, h_k)
/// the relation h_k g_{v_j} - Σ_i (α_k)_{ij} g_{w_i} in degree m.
pub fn phi_dual<F: Field>(m: &KroneckerModule<F>, ctx: &BridgeContext<F>) -> Result<Presentation<F>> {
    if m.dim_h() != ctx.dim_h() {
        return Err(Error::DimHMismatch {
            expected: ctx.dim_h(),
            got: m.dim_h(),
        });
    }
    let f = &ctx.field;
    let nv = ctx.nv();
    let (a, b) = m.dims();
    let mut degrees = vec![ctx.n; a];
    degrees.extend(vec![ctx.m; b]);
    let gens = FreeModule::new(nv, degrees);
    let hs = ctx.h_forms();
    let rels = FreeModule::new(nv, vec![ctx.m; a * hs.len()]);
    let zero_h = crate::polygraded::Form::zero(nv, ctx.m - ctx.n);
    let zero_c = crate::polygraded::Form::zero(nv, 0);
    let mut entries = Vec::with_capacity(a + b);
    for i in 0..a {
        let mut row = Vec::with_capacity(a * hs.len());
        for j in 0..a {
            for h in &hs {
                row.push(if i == j { h.clone() } else { zero_h.clone() });
            }
        }
        entries.push(row);
    }
    for i in 0..b {
        let mut row = Vec::with_capacity(a * hs.len());
        for j in 0..a {
            for al in m.action() {
                let c = f.neg(&al[(i, j)]);
                row.push(if f.is_zero(&c) {
                    zero_c.clone()
                } else {
                    crate::polygraded::Form::constant(f, nv, c)
                });
            }
        }
        entries.push(row);
    }
    Ok(Presentation::new(GradedMap::new(f, rels, gens, entries)?))
}

pub(crate) fn hp_of<F: Field>(p: &Presentation<F>, slack: Option<i64>) -> Result<HilbPoly> {
    if p.gens().rank() == 0 {
        return Ok(HilbPoly::zero());
    }
    Ok(resolve(p, slack)?.hilbert_polynomial())
}

#[derive(Clone, Debug, PartialEq)]
pub struct CounitReport {
    pub iso: bool,
    /// Degree in which surjectivity of ε was checked.
    pub check_degree: i64,
    pub surjective: bool,
    pub hp_source: HilbPoly,
    pub hp_target: HilbPoly,
}

/// ε_E: Φ^∨(Φ(E)) → E is a sheaf isomorphism iff it is surjective in a
/// degree past the generators of E and both sides share a Hilbert polynomial.
pub fn counit_is_iso<F: Field>(e: &Presentation<F>, ctx: &BridgeContext<F>) -> Result<CounitReport> {
    let data = phi_unchecked(e, ctx)?;
    let sp = &data.sections;
    let source = phi_dual(&data.module, ctx)?;
    let hp_source = hp_of(&source, ctx.degree_cap)?;
    let hp_target = data.resolution.hilbert_polynomial();
    let d = sp.t().max(e.gens().max_degree().unwrap_or(sp.t()));
    let piece = Piece::new(e, d);
    let mut span = EchelonBasis::new(&ctx.field, piece.dim());
    for (deg, count) in [(ctx.n, data.module.a()), (ctx.m, data.module.b())] {
        for j in 0..count {
            let psi = sp.basis_psi(deg, j);
            for mu in monomial::monomial_basis(ctx.nv(), d - deg) {
                span.insert(&piece.coords(&sp.value_at(deg, &psi, &mu)));
            }
        }
    }
    let surjective = span.len() == piece.dim();
    Ok(CounitReport {
        iso: surjective && hp_source == hp_target,
        check_degree: d,
        surjective,
        hp_source,
        hp_target,
    })
}

/// η_M: M → Φ(Φ^∨(M)) is bijective; false when Φ^∨(M) is not n-regular.
pub fn unit_is_iso<F: Field>(m: &KroneckerModule<F>, ctx: &BridgeContext<F>) -> Result<bool> {
    let e = phi_dual(m, ctx)?;
    let res = resolve(&e, ctx.degree_cap)?;
    if !res.is_n_regular(ctx.n) {
        return Ok(false);
    }
    let sp = SectionSpace::new(&res, &[ctx.n, ctx.m], None)?;
    let (a, b) = m.dims();
    if (sp.dim(ctx.n), sp.dim(ctx.m)) != (a, b) {
        return Ok(false);
    }
    let gens = e.gens();
    let zero = vec![0u32; ctx.nv()];
    let f = &ctx.field;
    let eta = |deg: i64, first: usize, count: usize| {
        let cols: Vec<Vec<F::Elem>> = (0..count)
            .map(|j| {
                let mut u = vec![f.zero(); gens.dim(deg)];
                u[gens.index(first + j, &zero)] = f.one();
                sp.coords(deg, &sp.psi_of_element(deg, &u))
            })
            .collect();
        Mat::from_cols(f, count, &cols)
    };
    Ok(eta(ctx.n, 0, a).rank() == a && eta(ctx.m, a, b).rank() == b)
}

/// M lies in the image of the n-regular sheaves with Hilbert polynomial P.
pub fn in_regular_image<F: Field>(m: &KroneckerModule<F>, ctx: &BridgeContext<F>, p: &HilbPoly) -> Result<bool> {
    let want = (p.eval_int(ctx.n), p.eval_int(ctx.m));
    if (m.a() as i64, m.b() as i64) != want {
        return Err(Error::DimensionMismatch(format!(
            "module has dimension vector ({}, {}), P gives ({}, {})",
            m.a(),
            m.b(),
            want.0,
            want.1
        )));
    }
    let e = phi_dual(m, ctx)?;
    let res = resolve(&e, ctx.degree_cap)?;
    Ok(&res.hilbert_polynomial() == p && res.is_n_regular(ctx.n) && unit_is_iso(m, ctx)?)
}

/// The syzygy F = ker(H^0(E(n)) ⊗ O(-n) → E). Needs the sections of E(n)
/// to be the classes of M_n.
pub fn syzygy<F: Field>(e: &Presentation<F>, ctx: &BridgeContext<F>) -> Result<Presentation<F>> {
    let data = phi_data(e, ctx)?;
    if !data.sections.is_module_degree(ctx.n) {
        return Err(Error::InvalidContext(format!(
            "H^0(E({})) is not the degree {} piece of the presentation",
            ctx.n, ctx.n
        )));
    }
    let f = e.field();
    let piece = Piece::new(e, ctx.n);
    let elems: Vec<_> = (0..piece.dim())
        .map(|j| {
            let mut c = vec![f.zero(); piece.dim()];
            c[j] = f.one();
            piece.lift(&c)
        })
        .collect();
    Ok(generated(e, ctx.n, &elems, ctx.degree_cap)?.kernel)
}

/// The subsheaf generated by elements of F_0 in degree t, its kernel
/// sheaf and the quotient.
#[derive(Clone, Debug)]
pub(crate) struct Generated<F: Field> {
    /// S(-t)^L / relations: the image subsheaf.
    pub image: Presentation<F>,
    /// Kernel of S(-t)^L → E.
    pub kernel: Presentation<F>,
    pub quotient: Presentation<F>,
}

pub(crate) fn generated<F: Field>(
    e: &Presentation<F>,
    t: i64,
    elems: &[Vec<F::Elem>],
    slack: Option<i64>,
) -> Result<Generated<F>> {
    let f = e.field();
    let nv = e.num_vars();
    let gens = e.gens();
    let src = FreeModule::new(nv, vec![t; elems.len()]);
    let mut entries = vec![Vec::with_capacity(elems.len()); gens.rank()];
    for u in elems {
        for (i, form) in gens.to_forms(f, t, u).into_iter().enumerate() {
            entries[i].push(form);
        }
    }
    let u_map = GradedMap::new(f, src.clone(), gens.clone(), entries)?;
    let quotient = Presentation::new(e.map().hstack(&u_map)?);
    if elems.is_empty() {
        let empty = Presentation::free(f, nv, vec![]);
        return Ok(Generated {
            image: empty.clone(),
            kernel: empty,
            quotient,
        });
    }
    let joint = u_map.hstack(e.map())?;
    let cap = cap_for(&Presentation::new(joint.clone()), slack);
    let k = kernel_generators(&joint, cap)?;
    let proj = GradedMap::new(f, k.source().clone(), src, k.entries()[..elems.len()].to_vec())?;
    let proj_kernel = kernel_generators(&proj, cap)?;
    Ok(Generated {
        image: Presentation::new(proj),
        kernel: Presentation::new(proj_kernel),
        quotient,
    })
}

/// Degree-T representatives of the sections spanned by `rows` (coordinates
/// in the degree-d section basis), reduced to a basis modulo relations.
pub(crate) fn section_generators<F: Field>(sp: &SectionSpace<F>, d: i64, rows: &Mat<F>) -> Vec<Vec<F::Elem>> {
    let t = sp.t();
    let piece = sp.piece_t();
    let mut span = EchelonBasis::new(sp.field(), piece.dim());
    let mut out = Vec::new();
    for i in 0..rows.rows() {
        let psi = sp.combine(d, rows.row(i));
        for mu in monomial::monomial_basis(sp.module().num_vars(), t - d) {
            let v = sp.value_at(d, &psi, &mu);
            if span.insert(&piece.coords(&v)) {
                out.push(piece.lift(&piece.coords(&v)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;
    use crate::polygraded::Form;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    fn m0(f: &PrimeField) -> KroneckerModule<PrimeField> {
        KroneckerModule::from_i64(f, 1, 2, &[&[&[1], &[0]], &[&[0], &[1]]]).unwrap()
    }

    #[test]
    fn phi_examples() {
        let f = f5();
        let ctx = BridgeContext::new(&f, 1, 0, 1).unwrap();
        let o = Presentation::free(&f, 2, vec![0]);
        assert_eq!(phi(&o, &ctx).unwrap(), m0(&f));
        let sky = Presentation::quotient(&f, 2, vec![Form::var(&f, 2, 0)]).unwrap();
        let want = KroneckerModule::from_i64(&f, 1, 1, &[&[&[0]], &[&[1]]]).unwrap();
        assert_eq!(phi(&sky, &ctx).unwrap(), want);
        let oo = o.direct_sum(&o).unwrap();
        assert_eq!(phi(&oo, &ctx).unwrap(), m0(&f).direct_sum(&m0(&f)).unwrap());
        let om2 = Presentation::line_bundle(&f, 2, -2);
        assert_eq!(phi(&om2, &ctx), Err(Error::NotRegular(0)));
    }

    #[test]
    fn phi_dual_examples() {
        let f = f5();
        let ctx = BridgeContext::new(&f, 1, 0, 1).unwrap();
        let p = phi_dual(&m0(&f), &ctx).unwrap();
        assert_eq!(hp_of(&p, None).unwrap(), HilbPoly::from_ints(&[1, 1]));
        let zero = KroneckerModule::zero_action(&f, 1, 1, 2);
        let pz = phi_dual(&zero, &ctx).unwrap();
        assert_eq!(hp_of(&pz, None).unwrap(), HilbPoly::from_ints(&[0, 1]));
        let bad = KroneckerModule::zero_action(&f, 1, 1, 3);
        assert!(matches!(phi_dual(&bad, &ctx), Err(Error::DimHMismatch { .. })));
    }

    #[test]
    fn syzygy_examples() {
        let f = f5();
        let ctx = BridgeContext::new(&f, 1, 0, 1).unwrap();
        let o = Presentation::free(&f, 2, vec![0]);
        assert_eq!(hp_of(&syzygy(&o, &ctx).unwrap(), None).unwrap(), HilbPoly::zero());
        let e = o.direct_sum(&Presentation::line_bundle(&f, 2, 1)).unwrap();
        let k = syzygy(&e, &ctx).unwrap();
        assert_eq!(hp_of(&k, None).unwrap(), HilbPoly::from_ints(&[0, 1]));
        let res = resolve(&k, None).unwrap();
        assert!(!res.is_n_regular(0));
        assert!(res.is_n_regular(1));
    }

    #[test]
    fn counit_and_unit_examples() {
        let f = f5();
        let ctx = BridgeContext::new(&f, 1, 0, 1).unwrap();
        let o = Presentation::free(&f, 2, vec![0]);
        assert!(counit_is_iso(&o, &ctx).unwrap().iso);
        assert!(!counit_is_iso(&Presentation::line_bundle(&f, 2, -2), &ctx).unwrap().iso);
        let sky = Presentation::quotient(&f, 2, vec![Form::var(&f, 2, 0)]).unwrap();
        assert!(counit_is_iso(&sky, &ctx).unwrap().iso);
        assert!(unit_is_iso(&m0(&f), &ctx).unwrap());
        assert!(!unit_is_iso(&KroneckerModule::zero_action(&f, 1, 1, 2), &ctx).unwrap());
        assert!(unit_is_iso(&phi(&sky, &ctx).unwrap(), &ctx).unwrap());
    }

    #[test]
    fn regular_image_examples() {
        let f = f5();
        let ctx = BridgeContext::new(&f, 1, 0, 1).unwrap();
        assert!(in_regular_image(&m0(&f), &ctx, &HilbPoly::from_ints(&[1, 1])).unwrap());
        let block = m0(&f).direct_sum(&m0(&f)).unwrap();
        assert!(in_regular_image(&block, &ctx, &HilbPoly::from_ints(&[2, 2])).unwrap());
        let flat = KroneckerModule::from_i64(&f, 1, 2, &[&[&[1], &[0]], &[&[2], &[0]]]).unwrap();
        assert!(!in_regular_image(&flat, &ctx, &HilbPoly::from_ints(&[1, 1])).unwrap());
    }

    #[test]
    fn counit_on_twisted_plane_sheaves() {
        let f = f5();
        let ctx = BridgeContext::new(&f, 2, 1, 3).unwrap();
        let x = Form::var(&f, 3, 0);
        let y = Form::var(&f, 3, 1);
        let line = Presentation::quotient(&f, 3, vec![x]).unwrap();
        assert!(counit_is_iso(&line, &ctx).unwrap().iso);
        let pt = Presentation::quotient(&f, 3, vec![Form::var(&f, 3, 0), y]).unwrap();
        assert!(counit_is_iso(&pt, &ctx).unwrap().iso);
    }
}
