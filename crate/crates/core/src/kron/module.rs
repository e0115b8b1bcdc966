use std::cmp::Ordering;

use crate::exactla::{Field, Mat};
use crate::error::{Error, Result};

/// A Kronecker module α: V ⊗ H → W with dim V = a, dim W = b, given by
/// the b × a matrices α_k = α(- ⊗ h_k).
#[derive(Clone, Debug, PartialEq)]
pub struct KroneckerModule<F: Field> {
    field: F,
    a: usize,
    b: usize,
    action: Vec<Mat<F>>,
}

/// Subspaces V' ⊆ V, W' ⊆ W given by row bases in reduced echelon form.
#[derive(Clone, Debug, PartialEq)]
pub struct Submodule<F: Field> {
    pub v: Mat<F>,
    pub w: Mat<F>,
}

impl<F: Field> Submodule<F> {
    pub fn dims(&self) -> (usize, usize) {
        (self.v.rows(), self.w.rows())
    }
}

impl<F: Field> KroneckerModule<F> {
    pub fn new(field: &F, a: usize, b: usize, action: Vec<Mat<F>>) -> Result<Self> {
        if action.is_empty() {
            return Err(Error::DimensionMismatch("dim H must be at least 1".into()));
        }
        for (k, m) in action.iter().enumerate() {
            if m.shape() != (b, a) {
                return Err(Error::DimensionMismatch(format!(
                    "action[{k}] is {}x{}, expected {b}x{a}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch(format!("action[{k}]")));
            }
        }
        Ok(KroneckerModule {
            field: field.clone(),
            a,
            b,
            action,
        })
    }

    pub fn from_i64(field: &F, a: usize, b: usize, action: &[&[&[i64]]]) -> Result<Self> {
        let mats = action
            .iter()
            .map(|m| {
                if m.is_empty() {
                    Mat::zeros(field, b, a)
                } else {
                    Mat::from_i64(field, m)
                }
            })
            .collect();
        Self::new(field, a, b, mats)
    }

    pub fn zero_action(field: &F, a: usize, b: usize, dim_h: usize) -> Self {
        KroneckerModule {
            field: field.clone(),
            a,
            b,
            action: vec![Mat::zeros(field, b, a); dim_h],
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn a(&self) -> usize {
        self.a
    }
    pub fn b(&self) -> usize {
        self.b
    }
    pub fn dims(&self) -> (usize, usize) {
        (self.a, self.b)
    }
    pub fn dim_h(&self) -> usize {
        self.action.len()
    }
    pub fn action(&self) -> &[Mat<F>] {
        &self.action
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.dim_h() != other.dim_h() {
            return Err(Error::DimHMismatch {
                expected: self.dim_h(),
                got: other.dim_h(),
            });
        }
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(x, y)| x.block_diag(y))
            .collect();
        Ok(KroneckerModule {
            field: self.field.clone(),
            a: self.a + other.a,
            b: self.b + other.b,
            action,
        })
    }

    /// Conjugation by invertible P on V and Q on W: α_k ↦ Q α_k P^{-1}.
    pub fn change_basis(&self, p: &Mat<F>, q: &Mat<F>) -> Result<Self> {
        let pinv = p
            .inverse()
            .ok_or_else(|| Error::DimensionMismatch("basis change on V is singular".into()))?;
        let action = self
            .action
            .iter()
            .map(|m| q.mul(m)?.mul(&pinv))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&self.field, self.a, self.b, action)
    }

    /// Same module over another field through an entrywise embedding.
    pub fn map_field<G: Field>(&self, g: &G, f: impl Fn(&F::Elem) -> G::Elem) -> KroneckerModule<G> {
        KroneckerModule {
            field: g.clone(),
            a: self.a,
            b: self.b,
            action: self
                .action
                .iter()
                .map(|m| Mat::from_fn(g, m.rows(), m.cols(), |i, j| f(&m[(i, j)])))
                .collect(),
        }
    }

    /// W' = α(V' ⊗ H), as a reduced row basis.
    pub fn saturate(&self, v: &Mat<F>) -> Result<Mat<F>> {
        if v.cols() != self.a {
            return Err(Error::DimensionMismatch(format!(
                "subspace of dimension-{} space given in V of dimension {}",
                v.cols(),
                self.a
            )));
        }
        let mut stacked = Mat::zeros(&self.field, 0, self.b);
        for m in &self.action {
            stacked = stacked.vstack(&v.mul(&m.transpose())?)?;
        }
        Ok(stacked.row_space())
    }

    /// dim α(V' ⊗ H).
    pub fn saturation_dim(&self, v: &Mat<F>) -> usize {
        let mut stacked = Mat::zeros(&self.field, 0, self.b);
        for m in &self.action {
            stacked = stacked
                .vstack(&v.mul(&m.transpose()).expect("shapes"))
                .expect("shapes");
        }
        stacked.rank()
    }

    pub fn saturated_submodule(&self, v: &Mat<F>) -> Result<Submodule<F>> {
        Ok(Submodule {
            v: v.row_space(),
            w: self.saturate(v)?,
        })
    }

    /// Whether α_k(V') ⊆ W' for all k.
    pub fn is_submodule(&self, s: &Submodule<F>) -> bool {
        let sat = self.saturate(&s.v).expect("shapes");
        let joint = s.w.vstack(&sat).expect("shapes");
        joint.rank() == s.w.rank()
    }

    /// Restriction to a submodule, in the given row bases of V' and W'.
    pub fn restrict(&self, s: &Submodule<F>) -> Result<Self> {
        let w = s.w.row_space();
        let (_, piv) = w.rref();
        let action = self
            .action
            .iter()
            .map(|m| {
                let imgs = s.v.mul(&m.transpose())?; // rows α_k v_j
                // coordinates in an RREF basis are the entries at pivots
                Ok(imgs.select_cols(&piv).transpose())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&self.field, s.v.rows(), w.rows(), action)
    }

    /// The quotient module M / M', with bases of V/V' and W/W' given by
    /// the standard vectors at the non-pivot positions of V', W'.
    pub fn quotient(&self, s: &Submodule<F>) -> Result<(Self, Mat<F>, Mat<F>)> {
        let (pv, fv) = projection(&self.field, &s.v, self.a);
        let (pw, _) = projection(&self.field, &s.w, self.b);
        let action = self
            .action
            .iter()
            .map(|m| pw.mul(&m.select_cols(&fv)))
            .collect::<Result<Vec<_>>>()?;
        Ok((Self::new(&self.field, fv.len(), pw.rows(), action)?, pv, pw))
    }
}

/// Projection onto F^n / X in the basis of non-pivot standard vectors:
/// returns the (n - k) × n matrix and the non-pivot positions.
pub(crate) fn projection<F: Field>(field: &F, x: &Mat<F>, n: usize) -> (Mat<F>, Vec<usize>) {
    let (r, piv) = x.rref();
    let mut is_piv = vec![false; n];
    for &p in &piv {
        is_piv[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&i| !is_piv[i]).collect();
    // v ↦ v - Σ v_p r_p, read at free positions
    let p = Mat::from_fn(field, free.len(), n, |i, j| {
        let fc = free[i];
        if j == fc {
            field.one()
        } else if let Some(k) = piv.iter().position(|&p| p == j) {
            field.neg(&r[(k, fc)])
        } else {
            field.zero()
        }
    });
    (p, free)
}

/// Compares dim V'/dim W' with dim V''/dim W'' in [0, +∞].
pub fn slope_cmp(v1: usize, w1: usize, v2: usize, w2: usize) -> Result<Ordering> {
    if (v1, w1) == (0, 0) || (v2, w2) == (0, 0) {
        return Err(Error::EmptySubmodule);
    }
    Ok(match (w1 == 0, w2 == 0) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        _ => (v1 * w2).cmp(&(v2 * w1)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;

    pub(crate) fn m0(f: &PrimeField) -> KroneckerModule<PrimeField> {
        KroneckerModule::from_i64(f, 1, 2, &[&[&[1], &[0]], &[&[0], &[1]]]).unwrap()
    }

    #[test]
    fn saturate_examples() {
        let f = PrimeField::new(2).unwrap();
        let m = m0(&f);
        assert_eq!(m.saturate(&Mat::identity(&f, 1)).unwrap().rows(), 2);
        assert_eq!(m.saturate(&Mat::zeros(&f, 0, 1)).unwrap().rows(), 0);
        let sky = KroneckerModule::from_i64(&f, 1, 1, &[&[&[0]], &[&[1]]]).unwrap();
        assert_eq!(sky.saturate(&Mat::identity(&f, 1)).unwrap().rows(), 1);
    }

    #[test]
    fn slope_examples() {
        assert_eq!(slope_cmp(1, 2, 2, 4).unwrap(), Ordering::Equal);
        assert_eq!(slope_cmp(0, 1, 1, 1).unwrap(), Ordering::Less);
        assert_eq!(slope_cmp(1, 0, 5, 1).unwrap(), Ordering::Greater);
        assert_eq!(slope_cmp(0, 0, 1, 1), Err(Error::EmptySubmodule));
    }

    #[test]
    fn quotient_and_restriction() {
        let f = PrimeField::new(3).unwrap();
        let m = m0(&f).direct_sum(&m0(&f)).unwrap();
        let v1 = Mat::from_i64(&f, &[&[1, 0]]);
        let s = m.saturated_submodule(&v1).unwrap();
        assert_eq!(s.dims(), (1, 2));
        assert!(m.is_submodule(&s));
        let sub = m.restrict(&s).unwrap();
        assert_eq!(sub, m0(&f));
        let (q, _, _) = m.quotient(&s).unwrap();
        assert_eq!(q, m0(&f));
    }
}
