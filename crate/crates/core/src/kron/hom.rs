//! Module homomorphisms, isomorphism testing and S-equivalence.

use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::filtration::gr;
use super::module::KroneckerModule;
use super::stability::StabilityOptions;
use crate::exactla::{Embedding, Field, FiniteField, Mat};
use crate::error::{Error, Result};

/// A morphism (f: V_M → V_N, g: W_M → W_N) with g α^M_k = α^N_k f.
#[derive(Clone, Debug, PartialEq)]
pub struct Morphism<F: Field> {
    pub f: Mat<F>,
    pub g: Mat<F>,
}

impl<F: Field> Morphism<F> {
    pub fn is_invertible(&self) -> bool {
        self.f.rows() == self.f.cols()
            && self.g.rows() == self.g.cols()
            && self.f.rank() == self.f.rows()
            && self.g.rank() == self.g.rows()
    }
}

/// Basis of Hom_A(M, N).
pub fn hom_space<F: Field>(m: &KroneckerModule<F>, n: &KroneckerModule<F>) -> Result<Vec<Morphism<F>>> {
    if m.dim_h() != n.dim_h() {
        return Err(Error::DimHMismatch {
            expected: m.dim_h(),
            got: n.dim_h(),
        });
    }
    let fld = m.field();
    let (am, bm) = m.dims();
    let (an, bn) = n.dims();
    let nf = an * am;
    let cols = nf + bn * bm;
    let fi = |i: usize, j: usize| i * am + j;
    let gi = |i: usize, j: usize| nf + i * bm + j;
    let mut sys = Mat::zeros(fld, 0, cols);
    for (alm, aln) in m.action().iter().zip(n.action()) {
        for i in 0..bn {
            for j in 0..am {
                let mut eq = vec![fld.zero(); cols];
                for l in 0..bm {
                    eq[gi(i, l)] = fld.add(&eq[gi(i, l)], &alm[(l, j)]);
                }
                for l in 0..an {
                    eq[fi(l, j)] = fld.sub(&eq[fi(l, j)], &aln[(i, l)]);
                }
                sys.push_row(eq);
            }
        }
    }
    let ker = sys.kernel_basis();
    Ok((0..ker.cols())
        .map(|t| Morphism {
            f: Mat::from_fn(fld, an, am, |i, j| ker[(fi(i, j), t)].clone()),
            g: Mat::from_fn(fld, bn, bm, |i, j| ker[(gi(i, j), t)].clone()),
        })
        .collect())
}

fn combine<F: Field>(field: &F, basis: &[Morphism<F>], c: &[F::Elem]) -> Morphism<F> {
    let mut out = Morphism {
        f: Mat::zeros(field, basis[0].f.rows(), basis[0].f.cols()),
        g: Mat::zeros(field, basis[0].g.rows(), basis[0].g.cols()),
    };
    for (b, x) in basis.iter().zip(c) {
        out.f = out.f.add(&b.f.scale(x)).expect("shapes");
        out.g = out.g.add(&b.g.scale(x)).expect("shapes");
    }
    out
}

/// Whether M ≅ N. Searches the Hom space: basis elements first, then every
/// element when the space has at most `enum_budget` elements, then random
/// elements over an extension field (an isomorphism there descends).
/// Reports [`Error::BudgetExhausted`] when no search is exhaustive and
/// none succeeds.
pub fn is_isomorphic<F: FiniteField>(
    m: &KroneckerModule<F>,
    n: &KroneckerModule<F>,
    opts: &StabilityOptions,
) -> Result<bool> {
    if m.dims() != n.dims() {
        return Ok(false);
    }
    if m.dim_h() != n.dim_h() {
        return Err(Error::DimHMismatch {
            expected: m.dim_h(),
            got: n.dim_h(),
        });
    }
    let (a, b) = m.dims();
    if a + b == 0 {
        return Ok(true);
    }
    let basis = hom_space(m, n)?;
    if basis.is_empty() {
        return Ok(false);
    }
    if basis.iter().any(Morphism::is_invertible) {
        return Ok(true);
    }
    let f = m.field();
    let q = f.size() as u128;
    let t = basis.len() as u32;
    if q.checked_pow(t).is_some_and(|total| total <= opts.enum_budget) {
        let mut digits = vec![0u64; basis.len()];
        loop {
            let c: Vec<F::Elem> = digits.iter().map(|&d| f.element(d)).collect();
            if combine(f, &basis, &c).is_invertible() {
                return Ok(true);
            }
            let mut i = digits.len();
            loop {
                if i == 0 {
                    return Ok(false);
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < f.size() {
                    break;
                }
                digits[i] = 0;
            }
        }
    }
    // det f · det g has degree a + b in the coefficients
    let emb = Embedding::new(f, 4 * (a + b) as u64 * 1024)?;
    let big = emb.big();
    let lifted: Vec<Morphism<_>> = basis
        .iter()
        .map(|x| Morphism {
            f: Mat::from_fn(big, x.f.rows(), x.f.cols(), |i, j| emb.lift(&x.f[(i, j)])),
            g: Mat::from_fn(big, x.g.rows(), x.g.cols(), |i, j| emb.lift(&x.g[(i, j)])),
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.theta_budget.max(1) {
        let c: Vec<u32> = (0..lifted.len()).map(|_| big.random(&mut rng)).collect();
        if combine(big, &lifted, &c).is_invertible() {
            return Ok(true);
        }
    }
    Err(Error::BudgetExhausted(format!(
        "no invertible element among {} samples of a {t}-dimensional Hom space",
        opts.theta_budget
    )))
}

/// Isomorphism of stable modules of equal slope: any nonzero map is one.
pub(crate) fn stable_isomorphic<F: Field>(m: &KroneckerModule<F>, n: &KroneckerModule<F>) -> Result<bool> {
    Ok(m.dims() == n.dims() && !hom_space(m, n)?.is_empty())
}

/// Matches two lists of stable factors up to isomorphism.
pub fn match_factors<F: Field>(x: &[KroneckerModule<F>], y: &[KroneckerModule<F>]) -> Result<bool> {
    if x.len() != y.len() {
        return Ok(false);
    }
    let mut used = vec![false; y.len()];
    for a in x {
        let mut hit = false;
        for (j, b) in y.iter().enumerate() {
            if !used[j] && stable_isomorphic(a, b)? {
                used[j] = true;
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// gr M ≅ gr N.
pub fn s_equivalent<F: FiniteField>(
    m: &KroneckerModule<F>,
    n: &KroneckerModule<F>,
    opts: &StabilityOptions,
) -> Result<bool> {
    if m.dims() != n.dims() {
        return Ok(false);
    }
    let gm = gr(m, opts)?;
    let gn = gr(n, opts)?;
    match_factors(&gm, &gn)
}

/// A random invertible change of basis; used to re-order enumeration.
pub fn random_conjugate<F: FiniteField>(m: &KroneckerModule<F>, seed: u64) -> Result<KroneckerModule<F>> {
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut invertible = |n: usize| loop {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let x = Mat::from_fn(f, n, n, |i, j| {
            if j > i {
                f.random(&mut rng)
            } else if j == i {
                f.one()
            } else {
                f.zero()
            }
        });
        let x = x.select_rows(&perm);
        if x.rank() == n {
            break x;
        }
    };
    let p = invertible(m.a());
    let q = invertible(m.b());
    m.change_basis(&p, &q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;

    fn m0(f: &PrimeField) -> KroneckerModule<PrimeField> {
        KroneckerModule::from_i64(f, 1, 2, &[&[&[1], &[0]], &[&[0], &[1]]]).unwrap()
    }

    fn point(f: &PrimeField, x: i64, y: i64) -> KroneckerModule<PrimeField> {
        KroneckerModule::from_i64(f, 1, 1, &[&[&[x]], &[&[y]]]).unwrap()
    }

    #[test]
    fn hom_examples() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(hom_space(&m0(&f), &m0(&f)).unwrap().len(), 1);
        assert_eq!(hom_space(&point(&f, 0, 1), &point(&f, 1, 0)).unwrap().len(), 0);
        let mm = m0(&f).direct_sum(&m0(&f)).unwrap();
        assert_eq!(hom_space(&m0(&f), &mm).unwrap().len(), 2);
        for h in hom_space(&mm, &mm).unwrap() {
            for (k, al) in mm.action().iter().enumerate() {
                assert_eq!(h.g.mul(al).unwrap(), mm.action()[k].mul(&h.f).unwrap());
            }
        }
    }

    #[test]
    fn isomorphism_examples() {
        let f = PrimeField::new(5).unwrap();
        let o = StabilityOptions::default();
        assert!(is_isomorphic(&m0(&f), &m0(&f), &o).unwrap());
        assert!(!is_isomorphic(&point(&f, 0, 1), &point(&f, 1, 0), &o).unwrap());
        let mm = m0(&f).direct_sum(&m0(&f)).unwrap();
        let conj = random_conjugate(&mm, 4).unwrap();
        assert!(is_isomorphic(&mm, &conj, &o).unwrap());
        assert!(s_equivalent(&mm, &conj, &o).unwrap());
    }

    #[test]
    fn isomorphism_by_sampling() {
        let f = PrimeField::new(3).unwrap();
        let mm = m0(&f).direct_sum(&m0(&f)).unwrap();
        let conj = random_conjugate(&mm, 9).unwrap();
        let tiny = StabilityOptions {
            enum_budget: 0,
            ..StabilityOptions::default()
        };
        assert!(is_isomorphic(&mm, &conj, &tiny).unwrap());
    }
}
