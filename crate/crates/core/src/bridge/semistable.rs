//! Semistability of sheaves through Φ, and an independent oracle on P^1.

use num_traits::ToPrimitive;

use crate::exactla::{FiniteField, Mat};
use crate::error::{Error, Result};
use crate::kron::{gr, is_isomorphic, is_semistable, Route, Submodule, Verdict};
use crate::polygraded::cohomology::{is_pure, resolve};
use crate::polygraded::{HilbPoly, Presentation};

use super::context::BridgeContext;
use super::functor::{generated, hp_of, phi, phi_dual, phi_from_resolution, section_generators, unit_is_iso, PhiData};

#[derive(Clone, Debug)]
pub struct SheafWitness<F: FiniteField> {
    /// The destabilizing saturated submodule of Φ(E).
    pub submodule: Submodule<F>,
    /// The subsheaf generated by its V-part.
    pub subsheaf: Presentation<F>,
    pub hilbert_polynomial: HilbPoly,
}

#[derive(Clone, Debug)]
pub enum SheafVerdict<F: FiniteField> {
    Semistable,
    Unstable(Box<SheafWitness<F>>),
    NotApplicable(String),
}

impl<F: FiniteField> SheafVerdict<F> {
    pub fn is_semistable(&self) -> bool {
        matches!(self, SheafVerdict::Semistable)
    }
    pub fn label(&self) -> &'static str {
        match self {
            SheafVerdict::Semistable => "semistable",
            SheafVerdict::Unstable(_) => "unstable",
            SheafVerdict::NotApplicable(_) => "not_applicable",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SheafReport<F: FiniteField> {
    pub verdict: SheafVerdict<F>,
    pub route: Option<Route>,
    pub dims: Option<(usize, usize)>,
}

/// The subsheaf of E generated by the sections in `v` (rows in the
/// degree-n section basis).
pub fn generated_subsheaf<F: FiniteField>(
    e: &Presentation<F>,
    data: &PhiData<F>,
    ctx: &BridgeContext<F>,
    v: &Mat<F>,
) -> Result<Presentation<F>> {
    let elems = section_generators(&data.sections, ctx.n, v);
    Ok(generated(e, data.sections.t(), &elems, ctx.degree_cap)?.image)
}

/// Semistable iff n-regular, pure and Φ(E) semistable; witnesses are
/// pulled back to the subsheaf generated by V'.
pub fn sheaf_semistable<F: FiniteField>(e: &Presentation<F>, ctx: &BridgeContext<F>) -> Result<SheafReport<F>> {
    ctx.check(e)?;
    let res = resolve(e, ctx.degree_cap)?;
    if !res.is_n_regular(ctx.n) {
        return Ok(SheafReport {
            verdict: SheafVerdict::NotApplicable(format!("not {}-regular", ctx.n)),
            route: None,
            dims: None,
        });
    }
    if !is_pure(&res, ctx.degree_cap)? {
        return Ok(SheafReport {
            verdict: SheafVerdict::NotApplicable("not pure".into()),
            route: None,
            dims: None,
        });
    }
    let data = phi_from_resolution(res, ctx)?;
    let out = is_semistable(&data.module, &ctx.stability_options())?;
    let verdict = match out.verdict {
        Verdict::Semistable => SheafVerdict::Semistable,
        Verdict::Unstable(sub) => {
            let subsheaf = generated_subsheaf(e, &data, ctx, &sub.v)?;
            let hp = hp_of(&subsheaf, ctx.degree_cap)?;
            SheafVerdict::Unstable(Box::new(SheafWitness {
                submodule: sub,
                subsheaf,
                hilbert_polynomial: hp,
            }))
        }
    };
    Ok(SheafReport {
        verdict,
        route: Some(out.route),
        dims: Some(data.module.dims()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P1Verdict {
    pub semistable: bool,
    /// a_i with E ≅ T ⊕ ⊕ O(a_i), descending.
    pub splitting: Vec<i64>,
    pub torsion: usize,
}

/// Ground truth on P^1 from the profile d ↦ h^0(E(d)): its second
/// differences count the summands O(-d), its low plateau is the torsion.
pub fn p1_semistable_oracle<F: FiniteField>(e: &Presentation<F>, slack: Option<i64>) -> Result<P1Verdict> {
    if e.num_vars() != 2 {
        return Err(Error::WrongDimension(format!(
            "oracle works on P^1, got P^{}",
            e.num_vars() as i64 - 1
        )));
    }
    let res = resolve(e, slack)?;
    let hp = res.hilbert_polynomial();
    match hp.degree() {
        None => {
            return Ok(P1Verdict {
                semistable: true,
                splitting: vec![],
                torsion: 0,
            })
        }
        Some(0) => {
            return Ok(P1Verdict {
                semistable: true,
                splitting: vec![],
                torsion: hp.eval_int(0) as usize,
            })
        }
        _ => {}
    }
    let rank = hp.leading().and_then(|c| c.to_integer().to_usize()).expect("integral rank");
    let h = |d: i64| res.cohomology(0, d) as i64;
    let mut splitting = Vec::new();
    let mut d = res.reg_bound() + 2;
    let floor = d - 10_000;
    while splitting.len() < rank {
        if d < floor {
            return Err(Error::Certificate("splitting type not recovered".into()));
        }
        let dd = h(d) - 2 * h(d - 1) + h(d - 2);
        for _ in 0..dd.max(0) {
            splitting.push(-d);
        }
        d -= 1;
    }
    splitting.reverse();
    let low = -splitting[0] - 1;
    let torsion = h(low) as usize;
    let semistable = torsion == 0 && splitting.iter().all(|&a| a == splitting[0]);
    Ok(P1Verdict {
        semistable,
        splitting,
        torsion,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportReport {
    pub passed: bool,
    pub module_factors: usize,
    pub sheaf_factors: usize,
}

/// For E = ⊕ E_i with stable E_i: gr Φ(E) ≅ ⊕ Φ(E_i) as multisets.
pub fn transport_gr<F: FiniteField>(summands: &[Presentation<F>], ctx: &BridgeContext<F>) -> Result<TransportReport> {
    let Some(first) = summands.first() else {
        return Err(Error::DimensionMismatch("no summands".into()));
    };
    let mut e = first.clone();
    for s in &summands[1..] {
        e = e.direct_sum(s)?;
    }
    if !sheaf_semistable(&e, ctx)?.verdict.is_semistable() {
        return Err(Error::NotSemistable);
    }
    let opts = ctx.stability_options();
    let factors = gr(&phi(&e, ctx)?, &opts)?;
    let images = summands.iter().map(|s| phi(s, ctx)).collect::<Result<Vec<_>>>()?;
    let mut used = vec![false; images.len()];
    let mut passed = factors.len() == images.len();
    if passed {
        for x in &factors {
            let mut hit = false;
            for (j, y) in images.iter().enumerate() {
                if !used[j] && is_isomorphic(x, y, &opts)? {
                    used[j] = true;
                    hit = true;
                    break;
                }
            }
            if !hit {
                passed = false;
                break;
            }
        }
    }
    Ok(TransportReport {
        passed,
        module_factors: factors.len(),
        sheaf_factors: images.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MssReport {
    pub module_semistable: bool,
    pub pure: bool,
    pub hp_matches: bool,
    /// All hypotheses hold: M semistable, Φ^∨(M) pure with polynomial P.
    pub in_hypothesis: bool,
    /// Verdict through Φ, when Φ^∨(M) is n-regular.
    pub sheaf_semistable: Option<bool>,
    /// Independent verdict on P^1.
    pub oracle_semistable: Option<bool>,
    pub unit_iso: bool,
}

pub fn mss_to_ess<F: FiniteField>(
    m: &crate::kron::KroneckerModule<F>,
    ctx: &BridgeContext<F>,
    p: &HilbPoly,
) -> Result<MssReport> {
    if (m.a() as i64, m.b() as i64) != (p.eval_int(ctx.n), p.eval_int(ctx.m)) {
        return Err(Error::DimensionMismatch("dimension vector differs from (P(n), P(m))".into()));
    }
    let opts = ctx.stability_options();
    let module_semistable = is_semistable(m, &opts)?.verdict.is_semistable();
    let e = phi_dual(m, ctx)?;
    let res = resolve(&e, ctx.degree_cap)?;
    let pure = is_pure(&res, ctx.degree_cap)?;
    let hp_matches = &res.hilbert_polynomial() == p;
    let in_hypothesis = module_semistable && pure && hp_matches;
    let sheaf = if res.is_n_regular(ctx.n) {
        match sheaf_semistable(&e, ctx)?.verdict {
            SheafVerdict::NotApplicable(_) => None,
            v => Some(v.is_semistable()),
        }
    } else {
        None
    };
    let oracle = if ctx.r == 1 {
        Some(p1_semistable_oracle(&e, ctx.degree_cap)?.semistable)
    } else {
        None
    };
    Ok(MssReport {
        module_semistable,
        pure,
        hp_matches,
        in_hypothesis,
        sheaf_semistable: sheaf,
        oracle_semistable: oracle,
        unit_iso: unit_is_iso(m, ctx)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;
    use crate::kron::KroneckerModule;
    use crate::polygraded::Form;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    fn lines(f: &PrimeField, a: &[i64]) -> Presentation<PrimeField> {
        Presentation::free(f, 2, a.iter().map(|x| -x).collect())
    }

    #[test]
    fn sheaf_semistability_examples() {
        let f = f5();
        let ctx = BridgeContext::new(&f, 1, 1, 2).unwrap();
        match sheaf_semistable(&lines(&f, &[-1, 1]), &ctx).unwrap().verdict {
            SheafVerdict::Unstable(w) => {
                assert_eq!(w.hilbert_polynomial, HilbPoly::from_ints(&[2, 1]));
                assert_eq!(w.submodule.dims(), (3, 4));
            }
            v => panic!("{v:?}"),
        }
        let ctx0 = BridgeContext::new(&f, 1, 0, 1).unwrap();
        assert!(sheaf_semistable(&lines(&f, &[0, 0]), &ctx0).unwrap().verdict.is_semistable());
        let sx = Presentation::quotient(&f, 2, vec![Form::var(&f, 2, 0)]).unwrap();
        let mixed = lines(&f, &[0]).direct_sum(&sx).unwrap();
        assert!(matches!(
            sheaf_semistable(&mixed, &ctx0).unwrap().verdict,
            SheafVerdict::NotApplicable(_)
        ));
    }

    #[test]
    fn oracle_examples() {
        let f = f5();
        let v = p1_semistable_oracle(&lines(&f, &[2, 2]), None).unwrap();
        assert!(v.semistable);
        assert_eq!(v.splitting, vec![2, 2]);
        let v = p1_semistable_oracle(&lines(&f, &[0, 1]), None).unwrap();
        assert!(!v.semistable);
        assert_eq!(v.splitting, vec![1, 0]);
        let x = Form::var(&f, 2, 0);
        let t2 = Presentation::quotient(&f, 2, vec![x.mul(&f, &x)]).unwrap();
        let v = p1_semistable_oracle(&t2, None).unwrap();
        assert!(v.semistable);
        assert_eq!(v.torsion, 2);
        let sx = Presentation::quotient(&f, 2, vec![x]).unwrap();
        let v = p1_semistable_oracle(&lines(&f, &[-3]).direct_sum(&sx).unwrap(), None).unwrap();
        assert_eq!((v.semistable, v.torsion, v.splitting), (false, 1, vec![-3]));
        let p2 = Presentation::free(&f, 3, vec![0]);
        assert!(matches!(p1_semistable_oracle(&p2, None), Err(Error::WrongDimension(_))));
    }

    #[test]
    fn transport_examples() {
        let f = f5();
        let ctx = BridgeContext::new(&f, 1, 0, 1).unwrap();
        let o = lines(&f, &[0]);
        assert!(transport_gr(&[o.clone(), o.clone()], &ctx).unwrap().passed);
        assert!(transport_gr(std::slice::from_ref(&o), &ctx).unwrap().passed);
        let p = Presentation::quotient(&f, 2, vec![Form::var(&f, 2, 0)]).unwrap();
        let q = Presentation::quotient(&f, 2, vec![Form::var(&f, 2, 1)]).unwrap();
        let r = transport_gr(&[p, q], &ctx).unwrap();
        assert!(r.passed);
        assert_eq!(r.module_factors, 2);
        assert_eq!(
            transport_gr(&[o, lines(&f, &[1])], &ctx).unwrap_err(),
            Error::NotSemistable
        );
    }

    #[test]
    fn mss_examples() {
        let f = f5();
        let ctx = BridgeContext::new(&f, 1, 0, 1).unwrap();
        let m0 = KroneckerModule::from_i64(&f, 1, 2, &[&[&[1], &[0]], &[&[0], &[1]]]).unwrap();
        let r = mss_to_ess(&m0, &ctx, &HilbPoly::from_ints(&[1, 1])).unwrap();
        assert!(r.in_hypothesis && r.unit_iso);
        assert_eq!(r.sheaf_semistable, Some(true));
        assert_eq!(r.oracle_semistable, Some(true));
        let block = m0.direct_sum(&m0).unwrap();
        let r = mss_to_ess(&block, &ctx, &HilbPoly::from_ints(&[2, 2])).unwrap();
        assert!(r.in_hypothesis && r.sheaf_semistable == Some(true));
    }
}
