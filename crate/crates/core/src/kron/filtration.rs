//! S-filtrations and the associated graded module.

use super::module::{KroneckerModule, Submodule};
use super::stability::{is_semistable, StabilityOptions};
use crate::exactla::{enumerate_subspaces, FiniteField, Mat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SFiltration<F: FiniteField> {
    /// Strictly increasing submodules of the parent, ending at the parent.
    pub chain: Vec<Submodule<F>>,
    /// The stable factors M_i / M_{i-1}.
    pub factors: Vec<KroneckerModule<F>>,
}

/// Equal-slope saturated submodule with the smallest dim V'.
fn minimal_equal_slope<F: FiniteField>(m: &KroneckerModule<F>) -> Submodule<F> {
    let f = m.field();
    let (a, b) = m.dims();
    if a == 0 {
        let mut w = Mat::zeros(f, 1, b);
        w[(0, 0)] = f.one();
        return Submodule {
            v: Mat::zeros(f, 0, 0),
            w,
        };
    }
    for k in 1..=a {
        for v in enumerate_subspaces(f, a, k) {
            let s = m.saturation_dim(&v);
            if b * k == a * s {
                return m.saturated_submodule(&v).expect("shapes");
            }
        }
    }
    unreachable!("V itself has equal slope in a semistable module")
}

/// {x : p x ∈ rowspace(y)} as a reduced row basis.
fn preimage<F: FiniteField>(p: &Mat<F>, y: &Mat<F>) -> Result<Mat<F>> {
    let ann = y.kernel_basis().transpose();
    Ok(ann.mul(p)?.kernel_basis().transpose().row_space())
}

pub fn s_filtration<F: FiniteField>(m: &KroneckerModule<F>, opts: &StabilityOptions) -> Result<SFiltration<F>> {
    if !is_semistable(m, opts)?.verdict.is_semistable() {
        return Err(Error::NotSemistable);
    }
    let f = m.field();
    let (a, b) = m.dims();
    let mut q = m.clone();
    let mut pv = Mat::identity(f, a);
    let mut pw = Mat::identity(f, b);
    let mut chain = Vec::new();
    let mut factors = Vec::new();
    while q.a() + q.b() > 0 {
        let sub = minimal_equal_slope(&q);
        factors.push(q.restrict(&sub)?);
        let v = if sub.v.cols() == 0 { Mat::zeros(f, 0, q.a()) } else { sub.v.clone() };
        let sub = Submodule { v, w: sub.w };
        chain.push(Submodule {
            v: preimage(&pv, &sub.v)?,
            w: preimage(&pw, &sub.w)?,
        });
        let (nq, qv, qw) = q.quotient(&sub)?;
        pv = qv.mul(&pv)?;
        pw = qw.mul(&pw)?;
        q = nq;
    }
    Ok(SFiltration { chain, factors })
}

pub fn gr<F: FiniteField>(m: &KroneckerModule<F>, opts: &StabilityOptions) -> Result<Vec<KroneckerModule<F>>> {
    Ok(s_filtration(m, opts)?.factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;
    use crate::kron::hom::{match_factors, random_conjugate};
    use crate::kron::stability::is_stable;

    fn m0(f: &PrimeField) -> KroneckerModule<PrimeField> {
        KroneckerModule::from_i64(f, 1, 2, &[&[&[1], &[0]], &[&[0], &[1]]]).unwrap()
    }

    fn point(f: &PrimeField, x: i64, y: i64) -> KroneckerModule<PrimeField> {
        KroneckerModule::from_i64(f, 1, 1, &[&[&[x]], &[&[y]]]).unwrap()
    }

    #[test]
    fn gr_examples() {
        let f = PrimeField::new(3).unwrap();
        let o = StabilityOptions::default();
        let mm = m0(&f).direct_sum(&m0(&f)).unwrap();
        let fil = s_filtration(&mm, &o).unwrap();
        assert_eq!(fil.factors, vec![m0(&f), m0(&f)]);
        assert_eq!(fil.chain.last().unwrap().dims(), (2, 4));
        assert_eq!(gr(&m0(&f), &o).unwrap(), vec![m0(&f)]);
        let pq = point(&f, 0, 1).direct_sum(&point(&f, 1, 0)).unwrap();
        let g = gr(&pq, &o).unwrap();
        assert!(match_factors(&g, &[point(&f, 1, 0), point(&f, 0, 1)]).unwrap());
        for x in &g {
            assert!(is_stable(x, &o).unwrap());
        }
        let unstable = KroneckerModule::zero_action(&f, 1, 1, 2);
        assert_eq!(s_filtration(&unstable, &o), Err(Error::NotSemistable));
    }

    #[test]
    fn gr_is_independent_of_basis() {
        let f = PrimeField::new(3).unwrap();
        let o = StabilityOptions::default();
        let m = point(&f, 1, 1)
            .direct_sum(&point(&f, 1, 2))
            .unwrap()
            .direct_sum(&point(&f, 1, 1))
            .unwrap();
        let base = gr(&m, &o).unwrap();
        for seed in 0..5 {
            let c = random_conjugate(&m, seed).unwrap();
            assert!(match_factors(&base, &gr(&c, &o).unwrap()).unwrap());
        }
    }

    #[test]
    fn zero_v_part_splits_into_lines() {
        let f = PrimeField::new(2).unwrap();
        let m = KroneckerModule::zero_action(&f, 0, 3, 2);
        let g = gr(&m, &StabilityOptions::default()).unwrap();
        assert_eq!(g.len(), 3);
        assert!(g.iter().all(|x| x.dims() == (0, 1)));
    }
}
