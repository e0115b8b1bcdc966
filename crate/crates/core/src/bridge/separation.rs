//! Separating points of the module moduli by ratios of theta functions.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactla::{Embedding, ExtField, Field, FiniteField};
use crate::error::{Error, Result};
use crate::kron::theta::sampling_degree;
use crate::kron::{s_equivalent, theta_matrix, weight_shape, KroneckerModule, StabilityOptions, ThetaShape};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairOutcome {
    /// θ_s(M)θ_t(N) - θ_t(M)θ_s(N) ≠ 0 for the sampled shapes s, t.
    Separated(usize, usize),
    /// S-equivalent, and every sampled 2×2 minor vanishes.
    NotSeparated,
    /// S-equivalent, yet some minor is nonzero.
    Violation(usize, usize),
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReport {
    pub i: usize,
    pub j: usize,
    pub s_equivalent: bool,
    pub outcome: PairOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationReport {
    pub samples: usize,
    pub field_order: u64,
    pub pairs: Vec<PairReport>,
}

impl SeparationReport {
    pub fn violations(&self) -> usize {
        self.pairs
            .iter()
            .filter(|p| matches!(p.outcome, PairOutcome::Violation(..)))
            .count()
    }
}

/// For every pair, searches `theta_budget` seeded shapes for a separating
/// 2×2 minor; S-equivalent pairs are checked never to separate.
pub fn separation_experiment<F: FiniteField>(
    modules: &[KroneckerModule<F>],
    opts: &StabilityOptions,
) -> Result<SeparationReport> {
    let Some(first) = modules.first() else {
        return Ok(SeparationReport {
            samples: 0,
            field_order: 0,
            pairs: vec![],
        });
    };
    let dims = first.dims();
    if modules.iter().any(|m| m.dims() != dims || m.dim_h() != first.dim_h()) {
        return Err(Error::DimensionMismatch("modules need a common dimension vector".into()));
    }
    let (a, b) = dims;
    let (u0, u1) = weight_shape(a, b, 1);
    let k = sampling_degree(first.field().size(), a * u0, opts.theta_budget);
    let emb = Embedding::with_degree(first.field(), k)?;
    let big: ExtField = emb.big().clone();
    let lifted: Vec<_> = modules.iter().map(|m| m.map_field(&big, |x| emb.lift(x))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let samples = opts.theta_budget.max(2);
    let shapes: Vec<ThetaShape<ExtField>> = (0..samples)
        .map(|_| ThetaShape::random(&big, u0, u1, first.dim_h(), &mut rng))
        .collect();
    let values = lifted
        .iter()
        .map(|m| shapes.iter().map(|g| theta_matrix(g, m)?.det()).collect::<Result<Vec<u32>>>())
        .collect::<Result<Vec<_>>>()?;
    let minor = |i: usize, j: usize, s: usize, t: usize| {
        big.sub(
            &big.mul(&values[i][s], &values[j][t]),
            &big.mul(&values[i][t], &values[j][s]),
        )
    };
    let mut pairs = Vec::new();
    for i in 0..modules.len() {
        for j in i + 1..modules.len() {
            let equiv = s_equivalent(&modules[i], &modules[j], opts)?;
            let mut hit = None;
            'search: for s in 0..samples {
                for t in s + 1..samples {
                    if minor(i, j, s, t) != 0 {
                        hit = Some((s, t));
                        break 'search;
                    }
                }
            }
            let outcome = match (equiv, hit) {
                (true, None) => PairOutcome::NotSeparated,
                (true, Some((s, t))) => PairOutcome::Violation(s, t),
                (false, Some((s, t))) => PairOutcome::Separated(s, t),
                (false, None) => PairOutcome::BudgetExhausted,
            };
            pairs.push(PairReport {
                i,
                j,
                s_equivalent: equiv,
                outcome,
            });
        }
    }
    Ok(SeparationReport {
        samples,
        field_order: big.size(),
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;
    use crate::kron::hom::random_conjugate;

    fn point(f: &PrimeField, x: i64, y: i64) -> KroneckerModule<PrimeField> {
        KroneckerModule::from_i64(f, 1, 1, &[&[&[x]], &[&[y]]]).unwrap()
    }

    #[test]
    fn separation_examples() {
        let f = PrimeField::new(5).unwrap();
        let opts = StabilityOptions {
            theta_budget: 16,
            ..StabilityOptions::default()
        };
        let rep = separation_experiment(&[point(&f, 1, 0), point(&f, 0, 1), point(&f, 1, 0)], &opts).unwrap();
        assert!(matches!(rep.pairs[0].outcome, PairOutcome::Separated(..)));
        assert_eq!(rep.pairs[1].outcome, PairOutcome::NotSeparated);
        let m0 = KroneckerModule::from_i64(&f, 1, 2, &[&[&[1], &[0]], &[&[0], &[1]]]).unwrap();
        let mm = m0.direct_sum(&m0).unwrap();
        let rep = separation_experiment(&[mm.clone(), random_conjugate(&mm, 2).unwrap()], &opts).unwrap();
        assert_eq!(rep.pairs[0].outcome, PairOutcome::NotSeparated);
        // a non-split self-extension of a point is S-equivalent to p ⊕ p
        let ext = KroneckerModule::from_i64(&f, 2, 2, &[&[&[1, 1], &[0, 1]], &[&[2, 0], &[0, 2]]]).unwrap();
        let split = point(&f, 1, 2).direct_sum(&point(&f, 1, 2)).unwrap();
        let rep = separation_experiment(&[ext, split], &opts).unwrap();
        assert!(rep.pairs[0].s_equivalent);
        assert_eq!(rep.violations(), 0);
    }
}
