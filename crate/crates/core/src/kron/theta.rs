//! Determinantal theta functions θ_γ(M) = det Hom_A(γ, M).

use num_bigint::BigUint;
use num_integer::Integer;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::module::KroneckerModule;
use crate::exactla::field::MAX_EXTENSION_ORDER;
use crate::exactla::{Embedding, ExtField, Field, FiniteField, Mat};
use crate::error::{Error, Result};

/// γ̂ = Σ_k G_k ⊗ h_k : U_1 → U_0 ⊗ H with each G_k of size u0 × u1.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaShape<F: Field> {
    pub u0: usize,
    pub u1: usize,
    pub g: Vec<Mat<F>>,
}

impl<F: Field> ThetaShape<F> {
    pub fn new(u0: usize, u1: usize, g: Vec<Mat<F>>) -> Result<Self> {
        if g.is_empty() {
            return Err(Error::DimensionMismatch("theta shape needs dim H >= 1".into()));
        }
        for (k, m) in g.iter().enumerate() {
            if m.shape() != (u0, u1) {
                return Err(Error::DimensionMismatch(format!(
                    "G[{k}] is {}x{}, expected {u0}x{u1}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(ThetaShape { u0, u1, g })
    }

    pub fn dim_h(&self) -> usize {
        self.g.len()
    }

    /// Block-diagonal sum γ ⊕ γ'.
    pub fn direct_sum(&self, o: &Self) -> Result<Self> {
        if self.dim_h() != o.dim_h() {
            return Err(Error::DimHMismatch {
                expected: self.dim_h(),
                got: o.dim_h(),
            });
        }
        let g = self.g.iter().zip(&o.g).map(|(x, y)| x.block_diag(y)).collect();
        Ok(ThetaShape {
            u0: self.u0 + o.u0,
            u1: self.u1 + o.u1,
            g,
        })
    }

    pub fn random<R: Rng + ?Sized>(field: &F, u0: usize, u1: usize, dim_h: usize, rng: &mut R) -> Self
    where
        F: FiniteField,
    {
        let g = (0..dim_h)
            .map(|_| Mat::from_fn(field, u0, u1, |_, _| field.random(rng)))
            .collect();
        ThetaShape { u0, u1, g }
    }
}

/// (u0, u1) = k · (b, a) / gcd(a, b), the k-th weight multiple.
pub fn weight_shape(a: usize, b: usize, k: usize) -> (usize, usize) {
    let g = a.gcd(&b).max(1);
    (k * b / g, k * a / g)
}

/// The (b·u1) × (a·u0) matrix Σ_k G_kᵀ ⊗ α_k of φ ↦ Σ_k α_k φ G_k on
/// column-major vectorized φ ∈ Hom(U_0, V).
pub fn theta_matrix<F: Field>(gamma: &ThetaShape<F>, m: &KroneckerModule<F>) -> Result<Mat<F>> {
    if gamma.dim_h() != m.dim_h() {
        return Err(Error::DimHMismatch {
            expected: m.dim_h(),
            got: gamma.dim_h(),
        });
    }
    let (a, b) = m.dims();
    if a * gamma.u0 != b * gamma.u1 {
        return Err(Error::WeightMismatch(format!(
            "a·u0 = {}·{} differs from b·u1 = {}·{}",
            a, gamma.u0, b, gamma.u1
        )));
    }
    let f = m.field();
    let mut out = Mat::zeros(f, b * gamma.u1, a * gamma.u0);
    for (g, al) in gamma.g.iter().zip(m.action()) {
        out = out.add(&g.transpose().kron(al))?;
    }
    Ok(out)
}

pub fn theta_gamma<F: Field>(gamma: &ThetaShape<F>, m: &KroneckerModule<F>) -> Result<F::Elem> {
    theta_matrix(gamma, m)?.det()
}

/// Smallest extension degree k with Q = q^k ≥ 4D and (D/Q)^budget ≤ 2^-20,
/// or the largest tabulated extension when none qualifies.
pub fn sampling_degree(q: u64, d: usize, budget: usize) -> u32 {
    let ok = |big_q: u64| {
        if d == 0 {
            return true;
        }
        if big_q < 4 * d as u64 {
            return false;
        }
        let lhs = BigUint::from(big_q).pow(budget.max(1) as u32);
        let rhs = BigUint::from(d as u64).pow(budget.max(1) as u32) << 20usize;
        lhs >= rhs
    };
    let mut k = 1u32;
    loop {
        let cur = q.saturating_pow(k);
        if ok(cur) {
            return k;
        }
        if q.saturating_pow(k + 1) > MAX_EXTENSION_ORDER {
            return k;
        }
        k += 1;
    }
}

/// Outcome of randomized theta detection.
#[derive(Clone, Debug)]
pub enum Detection {
    /// θ_γ(M) ≠ 0 for the witness γ (over the sampling field), at power k.
    Semistable {
        k: usize,
        witness: ThetaShape<ExtField>,
        value: u32,
    },
    Inconclusive,
}

pub enum PowerOutcome {
    Found(ThetaShape<ExtField>, u32),
    /// Every sample vanished; carries the last theta matrix drawn.
    Vanished(Option<Mat<ExtField>>),
}

/// Lifted module plus sampling state shared by detection and the
/// certified semistability route.
pub struct Sampler<F: FiniteField> {
    pub emb: Embedding<F>,
    pub module: KroneckerModule<ExtField>,
    pub rng: ChaCha8Rng,
}

impl<F: FiniteField> Sampler<F> {
    pub fn new(m: &KroneckerModule<F>, budget: usize, max_power: usize, seed: u64) -> Result<Self> {
        let (a, b) = m.dims();
        let (u0, _) = weight_shape(a, b, max_power.max(1));
        let k = sampling_degree(m.field().size(), a * u0, budget);
        let emb = Embedding::with_degree(m.field(), k)?;
        let big = emb.big().clone();
        let module = m.map_field(&big, |x| emb.lift(x));
        Ok(Sampler {
            emb,
            module,
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    pub fn field(&self) -> &ExtField {
        self.emb.big()
    }

    /// Draws `budget` shapes at power k; returns the first nonzero θ, or
    /// the last theta matrix when all vanish.
    pub fn try_power(&mut self, k: usize, budget: usize) -> Result<PowerOutcome> {
        let (a, b) = self.module.dims();
        let (u0, u1) = weight_shape(a, b, k);
        let mut last = None;
        for _ in 0..budget {
            let g = ThetaShape::random(self.emb.big(), u0, u1, self.module.dim_h(), &mut self.rng);
            let mat = theta_matrix(&g, &self.module)?;
            let v = mat.det()?;
            if v != 0 {
                return Ok(PowerOutcome::Found(g, v));
            }
            last = Some(mat);
        }
        Ok(PowerOutcome::Vanished(last))
    }
}

/// Semi-decision for semistability: a nonzero θ certifies it, exhaustion
/// is reported as inconclusive.
pub fn detect_ss_theta<F: FiniteField>(
    m: &KroneckerModule<F>,
    budget: usize,
    max_power: usize,
    seed: u64,
) -> Result<(Detection, ExtField)> {
    let mut s = Sampler::new(m, budget, max_power, seed)?;
    for k in 1..=max_power {
        if let PowerOutcome::Found(witness, value) = s.try_power(k, budget)? {
            return Ok((Detection::Semistable { k, witness, value }, s.field().clone()));
        }
    }
    Ok((Detection::Inconclusive, s.field().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;

    fn sky(f: &PrimeField) -> KroneckerModule<PrimeField> {
        KroneckerModule::from_i64(f, 1, 1, &[&[&[0]], &[&[1]]]).unwrap()
    }

    #[test]
    fn theta_examples() {
        let f = PrimeField::new(5).unwrap();
        let m = sky(&f);
        let y = ThetaShape::new(1, 1, vec![Mat::from_i64(&f, &[&[0]]), Mat::from_i64(&f, &[&[1]])]).unwrap();
        let x = ThetaShape::new(1, 1, vec![Mat::from_i64(&f, &[&[1]]), Mat::from_i64(&f, &[&[0]])]).unwrap();
        assert_eq!(theta_gamma(&y, &m).unwrap(), 1);
        assert_eq!(theta_gamma(&x, &m).unwrap(), 0);
        let z = ThetaShape::new(1, 1, vec![Mat::zeros(&f, 1, 1); 2]).unwrap();
        assert_eq!(theta_gamma(&z, &m).unwrap(), 0);
        let bad = ThetaShape::new(2, 1, vec![Mat::zeros(&f, 2, 1); 2]).unwrap();
        assert!(matches!(theta_gamma(&bad, &m), Err(Error::WeightMismatch(_))));
    }

    #[test]
    fn theta_is_multiplicative_on_sums() {
        let f = PrimeField::new(7).unwrap();
        let m0 = KroneckerModule::from_i64(&f, 1, 2, &[&[&[1], &[0]], &[&[0], &[1]]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let g1 = ThetaShape::random(&f, 2, 1, 2, &mut rng);
            let g2 = ThetaShape::random(&f, 2, 1, 2, &mut rng);
            let s = g1.direct_sum(&g2).unwrap();
            let lhs = theta_gamma(&s, &m0).unwrap();
            let rhs = f.mul(&theta_gamma(&g1, &m0).unwrap(), &theta_gamma(&g2, &m0).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn detection_examples() {
        let f = PrimeField::new(2).unwrap();
        let m0 = KroneckerModule::from_i64(&f, 1, 2, &[&[&[1], &[0]], &[&[0], &[1]]]).unwrap();
        assert!(matches!(detect_ss_theta(&m0, 8, 2, 1).unwrap().0, Detection::Semistable { .. }));
        let zero = KroneckerModule::zero_action(&f, 1, 1, 2);
        assert!(matches!(detect_ss_theta(&zero, 8, 2, 1).unwrap().0, Detection::Inconclusive));
        let f5 = PrimeField::new(5).unwrap();
        assert!(matches!(detect_ss_theta(&sky(&f5), 1, 1, 7).unwrap().0, Detection::Semistable { .. }));
    }

    #[test]
    fn sampling_degree_meets_margin() {
        assert_eq!(sampling_degree(5, 0, 8), 1);
        // 4·8 = 32 ≤ 125 and (8/125)^32 is tiny
        assert_eq!(sampling_degree(5, 8, 32), 3);
        // budget 1 cannot reach 2^-20 within 2^20 elements: largest field
        assert_eq!(sampling_degree(5, 8, 1), 8);
    }
}
