//! Global sections H^0(E(d)) for sheaves given by possibly unsaturated
//! presentations.
//!
//! A section s of E(d) is stored through the linear map
//! ψ_s: S_{T-d} → M_T, f ↦ f·s, for a degree T where M_T = H^0(E(T)).
//! The vector of ψ_s lists, for each monomial of S_{T-d} in pinned order,
//! the coordinates of its image in the coset basis of M_T.

use std::collections::BTreeMap;

use super::form::{Form, Presentation};
use super::monomial::{self, Exp};
use super::piece::Piece;
use super::resolution::Resolution;
use crate::exactla::{Field, Mat};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
struct Basis<F: Field> {
    /// Rows are ψ-vectors of the basis sections.
    rows: Mat<F>,
    pivots: Vec<usize>,
    inv: Mat<F>,
    /// Whether the basis is the coset basis of M_d (M_d = H^0(E(d))).
    from_module: bool,
}

#[derive(Clone, Debug)]
pub struct SectionSpace<F: Field> {
    module: Presentation<F>,
    t: i64,
    piece_t: Piece<F>,
    bases: BTreeMap<i64, Basis<F>>,
}

impl<F: Field> SectionSpace<F> {
    /// Builds bases of H^0(E(d)) for every requested degree, using
    /// T = max(reg_bound + 1, max d, t_min).
    pub fn new(res: &Resolution<F>, degrees: &[i64], t_min: Option<i64>) -> Result<Self> {
        let module = res.module().clone();
        let top = degrees.iter().copied().max().unwrap_or(0);
        let t = (res.reg_bound() + 1).max(top).max(t_min.unwrap_or(i64::MIN));
        let piece_t = Piece::new(&module, t);
        let mut sp = SectionSpace {
            module,
            t,
            piece_t,
            bases: BTreeMap::new(),
        };
        let r = res.r();
        let mut piece_t1: Option<Piece<F>> = None;
        for &d in degrees {
            if sp.bases.contains_key(&d) {
                continue;
            }
            let good = res.ext_dim(r + 1, -d) == 0 && res.ext_dim(r, -d) == 0;
            let rows = if good {
                let pd = Piece::new(&sp.module, d);
                let vecs: Vec<Vec<F::Elem>> = (0..pd.dim())
                    .map(|k| {
                        let mut c = vec![sp.field().zero(); pd.dim()];
                        c[k] = sp.field().one();
                        sp.psi_of_element(d, &pd.lift(&c))
                    })
                    .collect();
                Mat::from_rows(sp.field(), sp.psi_len(d), vecs)?
            } else {
                let p1 = piece_t1.get_or_insert_with(|| Piece::new(&sp.module, t + 1));
                sp.compatible_family_basis(d, p1)
            };
            let expected = res.cohomology(0, d);
            if rows.rows() != expected {
                return Err(Error::Certificate(format!(
                    "section space in degree {d} has dimension {} but h^0 = {expected}",
                    rows.rows()
                )));
            }
            let (_, pivots) = rows.rref();
            let inv = rows
                .select_cols(&pivots)
                .inverse()
                .ok_or_else(|| Error::Certificate("section basis is dependent".into()))?;
            sp.bases.insert(
                d,
                Basis {
                    rows,
                    pivots,
                    inv,
                    from_module: good,
                },
            );
        }
        Ok(sp)
    }

    pub fn field(&self) -> &F {
        self.module.field()
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn module(&self) -> &Presentation<F> {
        &self.module
    }

    pub fn piece_t(&self) -> &Piece<F> {
        &self.piece_t
    }

    fn nv(&self) -> usize {
        self.module.num_vars()
    }

    pub fn psi_len(&self, d: i64) -> usize {
        monomial::num_monomials(self.nv(), self.t - d) * self.piece_t.dim()
    }

    pub fn dim(&self, d: i64) -> usize {
        self.bases.get(&d).map_or(0, |b| b.rows.rows())
    }

    /// Whether degree `d` sections are the classes of M_d.
    pub fn is_module_degree(&self, d: i64) -> bool {
        self.bases.get(&d).is_some_and(|b| b.from_module)
    }

    /// ψ-vector of the `j`-th basis section in degree `d`.
    pub fn basis_psi(&self, d: i64, j: usize) -> Vec<F::Elem> {
        self.bases[&d].rows.row(j).to_vec()
    }

    /// ψ-vector of the class of `u` ∈ F_0,d.
    pub fn psi_of_element(&self, d: i64, u: &[F::Elem]) -> Vec<F::Elem> {
        let gens = self.module.gens();
        let mut out = Vec::with_capacity(self.psi_len(d));
        for mu in monomial::monomial_basis(self.nv(), self.t - d) {
            let v = gens.mul_monomial(self.field(), d, u, &mu);
            out.extend(self.piece_t.coords(&v));
        }
        out
    }

    /// Coordinates of a section (given by its ψ-vector) in the degree-`d` basis.
    pub fn coords(&self, d: i64, psi: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let b = &self.bases[&d];
        let h = b.rows.rows();
        (0..h)
            .map(|j| {
                b.pivots.iter().enumerate().fold(f.zero(), |acc, (i, &p)| {
                    f.add(&acc, &f.mul(&psi[p], &b.inv[(i, j)]))
                })
            })
            .collect()
    }

    /// Checks that `psi` lies in the section space of degree `d`.
    pub fn contains(&self, d: i64, psi: &[F::Elem]) -> bool {
        let c = self.coords(d, psi);
        self.combine(d, &c) == psi
    }

    /// ψ-vector of Σ c_j s_j.
    pub fn combine(&self, d: i64, c: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let b = &self.bases[&d];
        let mut out = vec![f.zero(); self.psi_len(d)];
        for (j, cj) in c.iter().enumerate() {
            if f.is_zero(cj) {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b.rows.row(j)) {
                *o = f.add(o, &f.mul(cj, x));
            }
        }
        out
    }

    /// ψ of h·s for a form h of degree e, a section of degree d + e.
    pub fn mul_form(&self, d: i64, psi: &[F::Elem], h: &Form<F>) -> Vec<F::Elem> {
        let f = self.field();
        let e = h.degree();
        let w = self.piece_t.dim();
        let mut out = vec![f.zero(); self.psi_len(d + e)];
        for (k, g) in monomial::monomial_basis(self.nv(), self.t - d - e).iter().enumerate() {
            for (mu, c) in h.terms() {
                let src = monomial::monomial_index(&monomial::mul(g, mu)) * w;
                for i in 0..w {
                    let x = &psi[src + i];
                    if !f.is_zero(x) {
                        out[k * w + i] = f.add(&out[k * w + i], &f.mul(c, x));
                    }
                }
            }
        }
        out
    }

    /// Value f·s ∈ F_0 (a representative, degree d + |f|) of a section s of
    /// degree d at a monomial f with d + |f| ≥ T.
    pub fn value_at(&self, d: i64, psi: &[F::Elem], f_exp: &[u32]) -> Vec<F::Elem> {
        let need = (self.t - d) as u32;
        let mut first: Exp = vec![0; f_exp.len()];
        let mut left = need;
        for (i, &e) in f_exp.iter().enumerate() {
            let take = e.min(left);
            first[i] = take;
            left -= take;
        }
        let rest = monomial::div(f_exp, &first).expect("divides");
        let w = self.piece_t.dim();
        let idx = monomial::monomial_index(&first) * w;
        let at_t = self.piece_t.lift(&psi[idx..idx + w]);
        self.module.gens().mul_monomial(self.field(), self.t, &at_t, &rest)
    }

    /// Families ψ: S_{T-d} → M_T with x_j ψ(x_i h) = x_i ψ(x_j h) in M_{T+1}.
    fn compatible_family_basis(&self, d: i64, p1: &Piece<F>) -> Mat<F> {
        let f = self.field();
        let nv = self.nv();
        let gens = self.module.gens();
        let w = self.piece_t.dim();
        let w1 = p1.dim();
        // multiplication by x_j as a w1 × w matrix
        let mulx: Vec<Mat<F>> = (0..nv)
            .map(|j| {
                let cols: Vec<Vec<F::Elem>> = (0..w)
                    .map(|k| {
                        let mut c = vec![f.zero(); w];
                        c[k] = f.one();
                        let v = gens.mul_monomial(f, self.t, &self.piece_t.lift(&c), &monomial::var(nv, j));
                        p1.coords(&v)
                    })
                    .collect();
                Mat::from_cols(f, w1, &cols)
            })
            .collect();
        let len = self.psi_len(d);
        let mut sys = Mat::zeros(f, 0, len);
        for h in monomial::monomial_basis(nv, self.t - d - 1) {
            for i in 0..nv {
                for j in i + 1..nv {
                    let a = monomial::monomial_index(&monomial::mul(&h, &monomial::var(nv, i))) * w;
                    let b = monomial::monomial_index(&monomial::mul(&h, &monomial::var(nv, j))) * w;
                    for row in 0..w1 {
                        let mut eq = vec![f.zero(); len];
                        for k in 0..w {
                            eq[a + k] = f.add(&eq[a + k], &mulx[j][(row, k)]);
                            eq[b + k] = f.sub(&eq[b + k], &mulx[i][(row, k)]);
                        }
                        sys.push_row(eq);
                    }
                }
            }
        }
        sys.kernel_basis().transpose()
    }
}
