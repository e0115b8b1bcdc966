//! Sheaf cohomology, regularity and purity on P^r, computed from a
//! caller-owned [`Resolution`].

use super::form::{FreeModule, Presentation};
use super::hilbert::HilbPoly;
use super::resolution::{cap_for, free_resolution, Resolution};
use crate::exactla::Field;
use crate::error::Result;

/// Resolves `m` with the cap `top_degree + slack` (default slack if `None`).
pub fn resolve<F: Field>(m: &Presentation<F>, slack: Option<i64>) -> Result<Resolution<F>> {
    free_resolution(m, cap_for(m, slack))
}

pub fn hilbert_polynomial<F: Field>(m: &Presentation<F>, slack: Option<i64>) -> Result<HilbPoly> {
    Ok(resolve(m, slack)?.hilbert_polynomial())
}

pub fn sheaf_cohomology<F: Field>(m: &Presentation<F>, i: usize, n: i64, slack: Option<i64>) -> Result<usize> {
    Ok(resolve(m, slack)?.cohomology(i, n))
}

pub fn is_n_regular<F: Field>(m: &Presentation<F>, n: i64, slack: Option<i64>) -> Result<bool> {
    Ok(resolve(m, slack)?.is_n_regular(n))
}

fn free_hp(f: &FreeModule) -> HilbPoly {
    let r = f.nv - 1;
    f.degrees
        .iter()
        .fold(HilbPoly::zero(), |acc, &a| acc.add(&HilbPoly::free_rank_one(r, a)))
}

/// Hilbert polynomial of the module Ext^q_S(M, S(-r-1)), as
/// HP(coker ψ_{q+1}) - HP(D_{q+1}) + HP(coker ψ_q).
pub fn ext_hilbert_polynomial<F: Field>(res: &Resolution<F>, q: usize, slack: Option<i64>) -> Result<HilbPoly> {
    let out = res.dual_cokernel(q + 1);
    let inn = res.dual_cokernel(q);
    let hp_out = if out.gens().rank() == 0 {
        HilbPoly::zero()
    } else {
        hilbert_polynomial(&out, slack)?
    };
    let hp_in = if inn.gens().rank() == 0 {
        HilbPoly::zero()
    } else {
        hilbert_polynomial(&inn, slack)?
    };
    Ok(hp_out.sub(&free_hp(&res.dual_module(q + 1))).add(&hp_in))
}

/// Purity via Ext dimensions: with c = r - deg HP(M), every Ext^q for
/// q > c must have Hilbert polynomial of degree at most r - q - 1.
pub fn is_pure<F: Field>(res: &Resolution<F>, slack: Option<i64>) -> Result<bool> {
    let r = res.r();
    let Some(d) = res.hilbert_polynomial().degree() else {
        return Ok(true);
    };
    let c = r - d;
    for q in c + 1..=res.length().min(r + 1) {
        let hp = ext_hilbert_polynomial(res, q, slack)?;
        if let Some(e) = hp.degree() {
            if e as i64 > r as i64 - q as i64 - 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;
    use crate::polygraded::form::Form;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn hilbert_polynomial_examples() {
        let f = f5();
        let s1 = Presentation::free(&f, 2, vec![0]);
        assert_eq!(hilbert_polynomial(&s1, None).unwrap(), HilbPoly::from_ints(&[1, 1]));
        let s2 = Presentation::free(&f, 3, vec![0]);
        assert_eq!(hilbert_polynomial(&s2, None).unwrap(), HilbPoly::free_rank_one(2, 0));
        let sx = Presentation::quotient(&f, 2, vec![Form::var(&f, 2, 0)]).unwrap();
        assert_eq!(hilbert_polynomial(&sx, None).unwrap(), HilbPoly::constant(1));
        assert_eq!(hilbert_polynomial(&s1.twist(1), None).unwrap(), HilbPoly::from_ints(&[2, 1]));
        let sum = s1.direct_sum(&sx).unwrap();
        assert_eq!(hilbert_polynomial(&sum, None).unwrap(), HilbPoly::from_ints(&[2, 1]));
    }

    #[test]
    fn purity_examples() {
        let f = f5();
        let sx = Presentation::quotient(&f, 2, vec![Form::var(&f, 2, 0)]).unwrap();
        assert!(is_pure(&resolve(&sx, None).unwrap(), None).unwrap());
        let s1 = Presentation::free(&f, 2, vec![0]);
        let mixed = s1.direct_sum(&sx).unwrap();
        assert!(!is_pure(&resolve(&mixed, None).unwrap(), None).unwrap());
        let s2 = Presentation::free(&f, 3, vec![0]);
        assert!(is_pure(&resolve(&s2, None).unwrap(), None).unwrap());
    }

    #[test]
    fn skyscraper_is_zero_regular() {
        let f = f5();
        let sx = Presentation::quotient(&f, 2, vec![Form::var(&f, 2, 0)]).unwrap();
        assert!(is_n_regular(&sx, 0, None).unwrap());
    }

    #[test]
    fn embedded_point_does_not_break_purity() {
        // S/(x^2, xy) agrees with S/(x) from degree 2 on: same sheaf.
        let f = f5();
        let x2 = Form::monomial(&f, vec![2, 0], 1);
        let xy = Form::monomial(&f, vec![1, 1], 1);
        let m = Presentation::quotient(&f, 2, vec![x2, xy]).unwrap();
        let res = resolve(&m, None).unwrap();
        assert_eq!(res.hilbert_polynomial(), HilbPoly::constant(1));
        assert!(is_pure(&res, None).unwrap());
        assert_eq!(res.cohomology(0, 0), 1);
    }
}
