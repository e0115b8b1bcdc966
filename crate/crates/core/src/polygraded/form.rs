use std::collections::BTreeMap;

use super::monomial::{self, Exp};
use crate::exactla::{Field, Mat, SparseRow};
use crate::error::{Error, Result};

/// Homogeneous polynomial with no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form<F: Field> {
    nv: usize,
    degree: i64,
    terms: BTreeMap<Exp, F::Elem>,
}

impl<F: Field> Form<F> {
    pub fn zero(nv: usize, degree: i64) -> Self {
        Form {
            nv,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &F, nv: usize, c: F::Elem) -> Self {
        Self::monomial(field, vec![0; nv], c)
    }

    pub fn monomial(field: &F, exp: Exp, c: F::Elem) -> Self {
        let mut f = Form::zero(exp.len(), monomial::degree(&exp));
        if !field.is_zero(&c) {
            f.terms.insert(exp, c);
        }
        f
    }

    pub fn var(field: &F, nv: usize, i: usize) -> Self {
        Self::monomial(field, monomial::var(nv, i), field.one())
    }

    /// Builds a form, summing repeated monomials; every exponent must have
    /// `nv` entries summing to `degree`.
    pub fn from_terms(
        field: &F,
        nv: usize,
        degree: i64,
        terms: impl IntoIterator<Item = (Exp, F::Elem)>,
    ) -> Result<Self> {
        let mut f = Form::zero(nv, degree);
        for (e, c) in terms {
            if e.len() != nv || monomial::degree(&e) != degree {
                return Err(Error::DimensionMismatch(format!(
                    "exponent {e:?} is not of degree {degree} in {nv} variables"
                )));
            }
            f.add_term(field, e, c);
        }
        Ok(f)
    }

    fn add_term(&mut self, field: &F, e: Exp, c: F::Elem) {
        let next = match self.terms.get(&e) {
            Some(old) => field.add(old, &c),
            None => c,
        };
        if field.is_zero(&next) {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, next);
        }
    }

    pub fn num_vars(&self) -> usize {
        self.nv
    }
    pub fn degree(&self) -> i64 {
        self.degree
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &F::Elem)> {
        self.terms.iter()
    }
    pub fn coeff(&self, field: &F, e: &[u32]) -> F::Elem {
        self.terms.get(e).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn add(&self, field: &F, other: &Self) -> Self {
        debug_assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(field, e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self, field: &F) -> Self {
        self.scale(field, &field.neg(&field.one()))
    }

    pub fn scale(&self, field: &F, c: &F::Elem) -> Self {
        let mut out = Form::zero(self.nv, self.degree);
        if field.is_zero(c) {
            return out;
        }
        for (e, x) in &self.terms {
            out.terms.insert(e.clone(), field.mul(x, c));
        }
        out
    }

    pub fn mul(&self, field: &F, other: &Self) -> Self {
        let mut out = Form::zero(self.nv, self.degree + other.degree);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(field, monomial::mul(e1, e2), field.mul(c1, c2));
            }
        }
        out
    }

    /// Coefficient vector in the pinned monomial basis of its degree.
    pub fn to_vec(&self, field: &F) -> Vec<F::Elem> {
        let mut v = vec![field.zero(); monomial::num_monomials(self.nv, self.degree)];
        for (e, c) in &self.terms {
            v[monomial::monomial_index(e)] = c.clone();
        }
        v
    }

    pub fn from_vec(field: &F, nv: usize, degree: i64, v: &[F::Elem]) -> Self {
        let mut f = Form::zero(nv, degree);
        for (e, c) in monomial::monomial_basis(nv, degree).into_iter().zip(v) {
            if !field.is_zero(c) {
                f.terms.insert(e, c.clone());
            }
        }
        f
    }
}

/// The free module ⊕_j S(-a_j); generator j lives in degree a_j.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeModule {
    pub nv: usize,
    pub degrees: Vec<i64>,
}

impl FreeModule {
    pub fn new(nv: usize, degrees: Vec<i64>) -> Self {
        FreeModule { nv, degrees }
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn dim(&self, d: i64) -> usize {
        self.degrees
            .iter()
            .map(|&a| monomial::num_monomials(self.nv, d - a))
            .sum()
    }

    /// Start of each generator block in the degree-`d` basis.
    pub fn offsets(&self, d: i64) -> Vec<usize> {
        let mut acc = 0;
        self.degrees
            .iter()
            .map(|&a| {
                let o = acc;
                acc += monomial::num_monomials(self.nv, d - a);
                o
            })
            .collect()
    }

    /// Basis index of `exp · e_gen` in degree `a_gen + |exp|`.
    pub fn index(&self, gen: usize, exp: &[u32]) -> usize {
        let d = self.degrees[gen] + monomial::degree(exp);
        self.offsets(d)[gen] + monomial::monomial_index(exp)
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.degrees.iter().copied().min()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.degrees.iter().copied().max()
    }

    pub fn twist(&self, t: i64) -> Self {
        FreeModule::new(self.nv, self.degrees.iter().map(|a| a - t).collect())
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut d = self.degrees.clone();
        d.extend(&other.degrees);
        FreeModule::new(self.nv, d)
    }

    /// Multiplies a degree-`d` element by the monomial `exp`.
    pub fn mul_monomial<F: Field>(&self, field: &F, d: i64, v: &[F::Elem], exp: &[u32]) -> Vec<F::Elem> {
        let e = monomial::degree(exp);
        let mut out = vec![field.zero(); self.dim(d + e)];
        let src = self.offsets(d);
        let dst = self.offsets(d + e);
        for (g, &a) in self.degrees.iter().enumerate() {
            let basis = monomial::monomial_basis(self.nv, d - a);
            for (k, m) in basis.iter().enumerate() {
                let c = &v[src[g] + k];
                if !field.is_zero(c) {
                    out[dst[g] + monomial::monomial_index(&monomial::mul(m, exp))] = c.clone();
                }
            }
        }
        out
    }

    /// Splits a degree-`d` element into one form per generator.
    pub fn to_forms<F: Field>(&self, field: &F, d: i64, v: &[F::Elem]) -> Vec<Form<F>> {
        let offs = self.offsets(d);
        self.degrees
            .iter()
            .zip(offs)
            .map(|(&a, o)| {
                let n = monomial::num_monomials(self.nv, d - a);
                Form::from_vec(field, self.nv, d - a, &v[o..o + n])
            })
            .collect()
    }
}

/// Homogeneous map of free modules. Entry (i, j) sends generator j of the
/// source to generator i of the target and has degree `a_j - b_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap<F: Field> {
    field: F,
    source: FreeModule,
    target: FreeModule,
    entries: Vec<Vec<Form<F>>>,
}

impl<F: Field> GradedMap<F> {
    pub fn new(field: &F, source: FreeModule, target: FreeModule, entries: Vec<Vec<Form<F>>>) -> Result<Self> {
        if source.nv != target.nv {
            return Err(Error::VarMismatch(source.nv, target.nv));
        }
        if entries.len() != target.rank() {
            return Err(Error::DimensionMismatch(format!(
                "map has {} rows, target rank is {}",
                entries.len(),
                target.rank()
            )));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != source.rank() {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, source rank is {}",
                    row.len(),
                    source.rank()
                )));
            }
            for (j, f) in row.iter().enumerate() {
                let want = source.degrees[j] - target.degrees[i];
                if f.num_vars() != source.nv {
                    return Err(Error::VarMismatch(f.num_vars(), source.nv));
                }
                if !f.is_zero() && f.degree() != want {
                    return Err(Error::DimensionMismatch(format!(
                        "degree mismatch at ({i},{j}): entry has degree {}, expected {want}",
                        f.degree()
                    )));
                }
            }
        }
        let entries = entries
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(j, f)| {
                        if f.is_zero() {
                            Form::zero(source.nv, source.degrees[j] - target.degrees[i])
                        } else {
                            f
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(GradedMap {
            field: field.clone(),
            source,
            target,
            entries,
        })
    }

    pub fn zero(field: &F, source: FreeModule, target: FreeModule) -> Self {
        let entries = target
            .degrees
            .iter()
            .map(|b| source.degrees.iter().map(|a| Form::zero(source.nv, a - b)).collect())
            .collect();
        GradedMap {
            field: field.clone(),
            source,
            target,
            entries,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn source(&self) -> &FreeModule {
        &self.source
    }
    pub fn target(&self) -> &FreeModule {
        &self.target
    }
    pub fn entry(&self, i: usize, j: usize) -> &Form<F> {
        &self.entries[i][j]
    }
    pub fn entries(&self) -> &[Vec<Form<F>>] {
        &self.entries
    }
    pub fn num_vars(&self) -> usize {
        self.source.nv
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|f| f.is_zero())
    }

    /// Matrix of the degree-`d` piece: rows index the target basis, columns
    /// the source basis, both generator-major then by monomial.
    pub fn matrix(&self, d: i64) -> Mat<F> {
        let f = &self.field;
        let nv = self.source.nv;
        let mut m = Mat::zeros(f, self.target.dim(d), self.source.dim(d));
        let src_off = self.source.offsets(d);
        let tgt_off = self.target.offsets(d);
        for (j, &a) in self.source.degrees.iter().enumerate() {
            let basis = monomial::monomial_basis(nv, d - a);
            for (i, &b) in self.target.degrees.iter().enumerate() {
                let entry = &self.entries[i][j];
                if entry.is_zero() || d < b {
                    continue;
                }
                for (k, mu) in basis.iter().enumerate() {
                    for (e, c) in entry.terms() {
                        let row = tgt_off[i] + monomial::monomial_index(&monomial::mul(e, mu));
                        m[(row, src_off[j] + k)] = f.add(&m[(row, src_off[j] + k)], c);
                    }
                }
            }
        }
        m
    }

    /// Rows of [`Self::matrix`] in sparse form.
    pub fn sparse_rows(&self, d: i64) -> Vec<SparseRow<F::Elem>> {
        let f = &self.field;
        let nv = self.source.nv;
        let mut rows: Vec<SparseRow<F::Elem>> = vec![Vec::new(); self.target.dim(d)];
        let src_off = self.source.offsets(d);
        let tgt_off = self.target.offsets(d);
        for (j, &a) in self.source.degrees.iter().enumerate() {
            let basis = monomial::monomial_basis(nv, d - a);
            for (i, &b) in self.target.degrees.iter().enumerate() {
                let entry = &self.entries[i][j];
                if entry.is_zero() || d < b {
                    continue;
                }
                for (k, mu) in basis.iter().enumerate() {
                    for (e, c) in entry.terms() {
                        let row = tgt_off[i] + monomial::monomial_index(&monomial::mul(e, mu));
                        rows[row].push((src_off[j] + k, c.clone()));
                    }
                }
            }
        }
        for row in &mut rows {
            row.sort_by_key(|(c, _)| *c);
            let mut merged: SparseRow<F::Elem> = Vec::with_capacity(row.len());
            for (c, x) in row.drain(..) {
                match merged.last_mut() {
                    Some((lc, lx)) if *lc == c => *lx = f.add(lx, &x),
                    _ => merged.push((c, x)),
                }
            }
            merged.retain(|(_, x)| !f.is_zero(x));
            *row = merged;
        }
        rows
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.target != self.source {
            return Err(Error::DimensionMismatch("composition of incompatible maps".into()));
        }
        let f = &self.field;
        let entries = (0..self.target.rank())
            .map(|i| {
                (0..other.source.rank())
                    .map(|j| {
                        let deg = other.source.degrees[j] - self.target.degrees[i];
                        (0..self.source.rank()).fold(Form::zero(self.num_vars(), deg), |acc, k| {
                            let t = self.entries[i][k].mul(f, &other.entries[k][j]);
                            if t.is_zero() {
                                acc
                            } else {
                                acc.add(f, &t)
                            }
                        })
                    })
                    .collect()
            })
            .collect();
        GradedMap::new(f, other.source.clone(), self.target.clone(), entries)
    }

    /// The map Hom(target, S(-w)) → Hom(source, S(-w)): transposed entries
    /// between free modules with generator degrees `w - b_i` and `w - a_j`.
    pub fn dual(&self, w: i64) -> Self {
        let src = FreeModule::new(self.source.nv, self.target.degrees.iter().map(|b| w - b).collect());
        let tgt = FreeModule::new(self.source.nv, self.source.degrees.iter().map(|a| w - a).collect());
        let entries = (0..self.source.rank())
            .map(|j| (0..self.target.rank()).map(|i| self.entries[i][j].clone()).collect())
            .collect();
        GradedMap {
            field: self.field.clone(),
            source: src,
            target: tgt,
            entries,
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.num_vars() != other.num_vars() {
            return Err(Error::VarMismatch(self.num_vars(), other.num_vars()));
        }
        let source = self.source.sum(&other.source);
        let target = self.target.sum(&other.target);
        let mut out = GradedMap::zero(&self.field, source, target);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                out.entries[i][j] = e.clone();
            }
        }
        let (r0, c0) = (self.target.rank(), self.source.rank());
        for (i, row) in other.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                out.entries[r0 + i][c0 + j] = e.clone();
            }
        }
        Ok(out)
    }

    /// Same target, sources concatenated.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.target != other.target {
            return Err(Error::DimensionMismatch("hstack of maps with different targets".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        GradedMap::new(&self.field, self.source.sum(&other.source), self.target.clone(), entries)
    }

    pub fn twist(&self, t: i64) -> Self {
        GradedMap {
            field: self.field.clone(),
            source: self.source.twist(t),
            target: self.target.twist(t),
            entries: self.entries.clone(),
        }
    }

    /// Restriction to the listed source generators.
    pub fn select_source(&self, idx: &[usize]) -> Self {
        GradedMap {
            field: self.field.clone(),
            source: FreeModule::new(self.num_vars(), idx.iter().map(|&j| self.source.degrees[j]).collect()),
            target: self.target.clone(),
            entries: self
                .entries
                .iter()
                .map(|row| idx.iter().map(|&j| row[j].clone()).collect())
                .collect(),
        }
    }
}

/// A finitely presented graded module M = coker(F_1 → F_0).
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation<F: Field> {
    map: GradedMap<F>,
}

impl<F: Field> Presentation<F> {
    pub fn new(map: GradedMap<F>) -> Self {
        Presentation { map }
    }

    /// The free module ⊕ S(-a_j).
    pub fn free(field: &F, nv: usize, degrees: Vec<i64>) -> Self {
        let target = FreeModule::new(nv, degrees);
        Presentation {
            map: GradedMap::zero(field, FreeModule::new(nv, Vec::new()), target),
        }
    }

    /// Line bundle O(d) on P^{nv-1}, presented as S(d).
    pub fn line_bundle(field: &F, nv: usize, d: i64) -> Self {
        Self::free(field, nv, vec![-d])
    }

    /// S / (f_1, ..., f_k).
    pub fn quotient(field: &F, nv: usize, forms: Vec<Form<F>>) -> Result<Self> {
        let source = FreeModule::new(nv, forms.iter().map(|f| f.degree()).collect());
        let target = FreeModule::new(nv, vec![0]);
        Ok(Presentation {
            map: GradedMap::new(field, source, target, vec![forms])?,
        })
    }

    pub fn map(&self) -> &GradedMap<F> {
        &self.map
    }
    pub fn field(&self) -> &F {
        self.map.field()
    }
    pub fn num_vars(&self) -> usize {
        self.map.num_vars()
    }
    pub fn gens(&self) -> &FreeModule {
        self.map.target()
    }
    pub fn rels(&self) -> &FreeModule {
        self.map.source()
    }

    /// Largest generator or relation degree (0 for the zero module).
    pub fn top_degree(&self) -> i64 {
        self.gens()
            .degrees
            .iter()
            .chain(&self.rels().degrees)
            .copied()
            .max()
            .unwrap_or(0)
    }

    /// dim M_d.
    pub fn hf(&self, d: i64) -> usize {
        self.gens().dim(d) - self.map.matrix(d).rank()
    }

    /// M(t), with M(t)_d = M_{d+t}.
    pub fn twist(&self, t: i64) -> Self {
        Presentation {
            map: self.map.twist(t),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        Ok(Presentation {
            map: self.map.direct_sum(&other.map)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{PrimeField, Rationals};

    #[test]
    fn degree_matrix_examples() {
        let q = Rationals;
        let x = Form::var(&q, 2, 0);
        let f = GradedMap::new(
            &q,
            FreeModule::new(2, vec![1]),
            FreeModule::new(2, vec![0]),
            vec![vec![x]],
        )
        .unwrap();
        assert_eq!(f.matrix(1), Mat::from_i64(&q, &[&[1], &[0]]));
        let z = GradedMap::zero(&q, FreeModule::new(2, vec![1]), FreeModule::new(2, vec![0]));
        assert!(z.matrix(3).is_zero());
        let id = GradedMap::new(
            &q,
            FreeModule::new(2, vec![0]),
            FreeModule::new(2, vec![0]),
            vec![vec![Form::constant(&q, 2, q.one())]],
        )
        .unwrap();
        assert_eq!(id.matrix(4), Mat::identity(&q, 5));
    }

    #[test]
    fn inhomogeneous_entry_rejected() {
        let f = PrimeField::new(5).unwrap();
        let x = Form::var(&f, 2, 0);
        let err = GradedMap::new(
            &f,
            FreeModule::new(2, vec![2]),
            FreeModule::new(2, vec![0]),
            vec![vec![x]],
        )
        .unwrap_err();
        assert!(err.to_string().contains("degree mismatch at (0,0)"));
    }

    #[test]
    fn pieces_and_twists() {
        let f = PrimeField::new(5).unwrap();
        let s = Presentation::free(&f, 2, vec![0]);
        assert_eq!(s.hf(3), 4);
        let sx = Presentation::quotient(&f, 2, vec![Form::var(&f, 2, 0)]).unwrap();
        assert_eq!(sx.hf(5), 1);
        assert_eq!(sx.hf(-1), 0);
        let t = s.twist(1);
        assert_eq!(t.hf(2), s.hf(3));
    }

    #[test]
    fn compose_and_mul_monomial() {
        let f = PrimeField::new(7).unwrap();
        let x = Form::var(&f, 2, 0);
        let y = Form::var(&f, 2, 1);
        let a = GradedMap::new(&f, FreeModule::new(2, vec![1]), FreeModule::new(2, vec![0]), vec![vec![x]]).unwrap();
        let b = GradedMap::new(&f, FreeModule::new(2, vec![2]), FreeModule::new(2, vec![1]), vec![vec![y]]).unwrap();
        let c = a.compose(&b).unwrap();
        assert_eq!(c.entry(0, 0).coeff(&f, &[1, 1]), 1);
        let m = FreeModule::new(2, vec![0]);
        let v = m.mul_monomial(&f, 1, &[1, 2], &[0, 1]);
        assert_eq!(v, vec![0, 1, 2]);
    }
}
