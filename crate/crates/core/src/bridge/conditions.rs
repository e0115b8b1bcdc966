//! Corpus checks of the conditions (C:1)–(C:5) and the correspondence
//! between generated subsheaves and tight submodules.

use std::cmp::Ordering;

use num_rational::BigRational;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactla::subspace::subspace_total;
use crate::exactla::{enumerate_subspaces, FiniteField, Mat};
use crate::error::Result;
use crate::kron::{is_isomorphic, KroneckerModule};
use crate::polygraded::cohomology::resolve;
use crate::polygraded::{polcmp_lex, HilbPoly, Presentation};

use super::context::BridgeContext;
use super::functor::{generated, phi_data, section_generators, PhiData};
use super::semistable::sheaf_semistable;

/// Subspaces of F^dim: all of them within `enum_budget`, else a seeded
/// sample of `theta_budget` subspaces per dimension. Zero is omitted.
pub fn subspace_source<F: FiniteField>(field: &F, dim: usize, ctx: &BridgeContext<F>) -> (Vec<Mat<F>>, bool) {
    if subspace_total(field.size(), dim) <= ctx.enum_budget {
        let all = (1..=dim).flat_map(|k| enumerate_subspaces(field, dim, k)).collect();
        return (all, true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut out = Vec::new();
    for k in 1..=dim {
        let mut got = 0;
        while got < ctx.theta_budget.max(1) {
            let m = Mat::from_fn(field, k, dim, |_, _| field.random(&mut rng));
            if m.rank() == k {
                out.push(m.row_space());
                got += 1;
            }
        }
    }
    (out, false)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TightPair {
    pub v_dim: usize,
    /// dim V'' of the tight closure (V'', W').
    pub v_tight_dim: usize,
    pub w_dim: usize,
    /// h^0(E'(n)), h^0(E'(m)) for the generated subsheaf E'.
    pub h0_n: usize,
    pub h0_m: usize,
    pub hp: HilbPoly,
    pub dims_match: bool,
    pub equal_slope: bool,
    /// For equal-slope pairs: M/M' ≅ Φ(E/E').
    pub factor_ok: Option<bool>,
}

/// V'' = {x : α_k x ∈ W' for all k}.
pub fn tight_closure<F: FiniteField>(m: &KroneckerModule<F>, w: &Mat<F>) -> Result<Mat<F>> {
    let ann = w.kernel_basis().transpose();
    let mut sys = Mat::zeros(m.field(), 0, m.a());
    for al in m.action() {
        sys = sys.vstack(&ann.mul(al)?)?;
    }
    Ok(sys.kernel_basis().transpose().row_space())
}

pub fn tight_pair<F: FiniteField>(
    e: &Presentation<F>,
    data: &PhiData<F>,
    ctx: &BridgeContext<F>,
    v: &Mat<F>,
    semistable: bool,
) -> Result<TightPair> {
    let m = &data.module;
    let (a, b) = m.dims();
    let w = m.saturate(v)?;
    let vt = tight_closure(m, &w)?;
    let elems = section_generators(&data.sections, ctx.n, v);
    let g = generated(e, data.sections.t(), &elems, ctx.degree_cap)?;
    let (h0_n, h0_m, hp) = if g.image.gens().rank() == 0 {
        (0, 0, HilbPoly::zero())
    } else {
        let res = resolve(&g.image, ctx.degree_cap)?;
        (res.cohomology(0, ctx.n), res.cohomology(0, ctx.m), res.hilbert_polynomial())
    };
    let dims_match = vt.rows() == h0_n && w.rows() == h0_m;
    let equal_slope = vt.rows() > 0 && b * vt.rows() == a * w.rows();
    let factor_ok = if semistable && equal_slope {
        let sub = crate::kron::Submodule { v: vt.clone(), w: w.clone() };
        let (q, _, _) = m.quotient(&sub)?;
        match phi_data(&g.quotient, ctx) {
            Ok(d) => Some(is_isomorphic(&q, &d.module, &ctx.stability_options())?),
            Err(crate::Error::NotRegular(_)) => Some(false),
            Err(err) => return Err(err),
        }
    } else {
        None
    };
    Ok(TightPair {
        v_dim: v.rows(),
        v_tight_dim: vt.rows(),
        w_dim: w.rows(),
        h0_n,
        h0_m,
        hp,
        dims_match,
        equal_slope,
        factor_ok,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorrespondenceReport {
    pub semistable: bool,
    pub exhaustive: bool,
    pub pairs: Vec<TightPair>,
    pub mismatches: usize,
    pub factor_failures: usize,
}

/// Runs [`tight_pair`] over every (or a sample of) V' ⊆ H^0(E(n)).
pub fn tight_correspondence<F: FiniteField>(e: &Presentation<F>, ctx: &BridgeContext<F>) -> Result<CorrespondenceReport> {
    let data = phi_data(e, ctx)?;
    let semistable = sheaf_semistable(e, ctx)?.verdict.is_semistable();
    let (subs, exhaustive) = subspace_source(&ctx.field, data.module.a(), ctx);
    let pairs = subs
        .iter()
        .map(|v| tight_pair(e, &data, ctx, v, semistable))
        .collect::<Result<Vec<_>>>()?;
    Ok(CorrespondenceReport {
        semistable,
        exhaustive,
        mismatches: pairs.iter().filter(|p| !p.dims_match).count(),
        factor_failures: pairs.iter().filter(|p| p.factor_ok == Some(false)).count(),
        pairs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub passed: bool,
    pub checked: usize,
    /// Whether the check only covers the given corpus.
    pub corpus_relative: bool,
    pub counterexamples: Vec<String>,
}

impl Condition {
    fn new(corpus_relative: bool) -> Self {
        Condition {
            passed: true,
            checked: 0,
            corpus_relative,
            counterexamples: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.passed = false;
            self.counterexamples.push(what());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionsReport {
    pub c1: Condition,
    pub c2: Condition,
    pub c3: Condition,
    pub c4: Condition,
    pub c5: Condition,
    pub exhaustive: bool,
}

fn sign_of(o: Ordering) -> i8 {
    match o {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Checks (C:1)–(C:5) on the corpus, over the generated subsheaves
/// E' ⊆ E coming from subspaces V' ⊆ H^0(E(n)).
pub fn check_conditions<F: FiniteField>(corpus: &[Presentation<F>], ctx: &BridgeContext<F>) -> Result<ConditionsReport> {
    let mut c1 = Condition::new(true);
    let mut c2 = Condition::new(true);
    let mut c3 = Condition::new(false);
    let mut c4 = Condition::new(true);
    let mut c5 = Condition::new(true);
    let mut exhaustive = true;
    c3.record(ctx.m >= ctx.n, || format!("m = {} < n = {}", ctx.m, ctx.n));
    for (idx, e) in corpus.iter().enumerate() {
        ctx.check(e)?;
        let res = resolve(e, ctx.degree_cap)?;
        let regular = res.is_n_regular(ctx.n);
        c1.record(regular, || format!("sheaf {idx} is not {}-regular", ctx.n));
        if !regular {
            continue;
        }
        let data = phi_data(e, ctx)?;
        let p = res.hilbert_polynomial();
        let (pn, pm) = (p.eval_int(ctx.n), p.eval_int(ctx.m));
        let semistable = sheaf_semistable(e, ctx)?.verdict.is_semistable();
        let sp = &data.sections;
        let module_degree = sp.is_module_degree(ctx.n);
        let (subs, full) = subspace_source(&ctx.field, data.module.a(), ctx);
        exhaustive &= full;
        for v in &subs {
            let elems = section_generators(sp, ctx.n, v);
            let g = generated(e, sp.t(), &elems, ctx.degree_cap)?;
            let sres = resolve(&g.image, ctx.degree_cap)?;
            let (h0n, h0m) = (sres.cohomology(0, ctx.n) as i64, sres.cohomology(0, ctx.m) as i64);
            let pe = sres.hilbert_polynomial();
            let lhs = p.scale(&BigRational::from_integer(h0n.into()));
            let rhs = pe.scale(&BigRational::from_integer(pn.into()));
            let poly = polcmp_lex(&lhs, &rhs);
            if semistable {
                c2.record(poly != Ordering::Greater, || {
                    format!("sheaf {idx}, dim V' = {}: h^0(E'(n))·P > P(n)·P(E')", v.rows())
                });
            }
            let numeric = (h0n * pm).cmp(&(pn * h0m));
            c5.record(sign_of(poly) == sign_of(numeric), || {
                format!("sheaf {idx}, dim V' = {}: polynomial and numerical relations differ", v.rows())
            });
            let e_reg = sres.is_n_regular(ctx.m);
            let f_reg = if module_degree {
                let piece = crate::polygraded::Piece::new(e, ctx.n);
                let reps: Vec<_> = (0..v.rows()).map(|i| piece.lift(v.row(i))).collect();
                let k = generated(e, ctx.n, &reps, ctx.degree_cap)?.kernel;
                k.gens().rank() == 0 || resolve(&k, ctx.degree_cap)?.is_n_regular(ctx.m)
            } else {
                true
            };
            c4.record(e_reg && f_reg, || {
                format!(
                    "sheaf {idx}, dim V' = {}: {} not {}-regular",
                    v.rows(),
                    if e_reg { "F'" } else { "E'" },
                    ctx.m
                )
            });
        }
    }
    Ok(ConditionsReport {
        c1,
        c2,
        c3,
        c4,
        c5,
        exhaustive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;
    use crate::polygraded::Form;

    #[test]
    fn conditions_examples() {
        let f = PrimeField::new(3).unwrap();
        let ctx = BridgeContext::new(&f, 1, 0, 1).unwrap();
        let corpus = vec![
            Presentation::free(&f, 2, vec![0]),
            Presentation::free(&f, 2, vec![-1]),
            Presentation::quotient(&f, 2, vec![Form::var(&f, 2, 0)]).unwrap(),
        ];
        let rep = check_conditions(&corpus, &ctx).unwrap();
        assert!(rep.c1.passed && rep.c3.passed && rep.c4.passed);
        assert!(rep.exhaustive);
        let bad = vec![Presentation::free(&f, 2, vec![3])];
        assert!(!check_conditions(&bad, &ctx).unwrap().c1.passed);
        assert!(BridgeContext::new(&f, 1, 0, 0).is_err());
    }

    #[test]
    fn tight_examples() {
        let f = PrimeField::new(3).unwrap();
        let ctx = BridgeContext::new(&f, 1, 0, 1).unwrap();
        let oo = Presentation::free(&f, 2, vec![0, 0]);
        let data = phi_data(&oo, &ctx).unwrap();
        let v = Mat::from_i64(&f, &[&[1, 0]]);
        let p = tight_pair(&oo, &data, &ctx, &v, true).unwrap();
        assert_eq!((p.v_tight_dim, p.w_dim, p.h0_n, p.h0_m), (1, 2, 1, 2));
        assert!(p.dims_match && p.equal_slope);
        assert_eq!(p.factor_ok, Some(true));
        let zero = tight_pair(&oo, &data, &ctx, &Mat::zeros(&f, 0, 2), true).unwrap();
        assert_eq!((zero.v_tight_dim, zero.w_dim), (0, 0));

        let ctx12 = BridgeContext::new(&f, 1, 1, 2).unwrap();
        let split = Presentation::free(&f, 2, vec![1, -1]);
        let data = phi_data(&split, &ctx12).unwrap();
        // H^0(E(1)) = S_0 ⊕ S_2; V' = the S_2 part
        let v = Mat::from_i64(&f, &[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let p = tight_pair(&split, &data, &ctx12, &v, false).unwrap();
        assert_eq!((p.v_tight_dim, p.w_dim, p.h0_n, p.h0_m), (3, 4, 3, 4));
        let rep = tight_correspondence(&oo, &ctx).unwrap();
        assert_eq!(rep.mismatches, 0);
        assert_eq!(rep.factor_failures, 0);
    }
}
