//! Degreewise kernels and free resolutions, certified up to a degree cap.

use super::form::{FreeModule, GradedMap, Presentation};
use super::hilbert::HilbPoly;
use super::monomial;
use crate::exactla::{sparse_pivot_columns, EchelonBasis, Field, Mat};
use crate::error::{Error, Result};

/// Default slack above the top presentation degree used when no cap is given.
pub fn default_slack(r: usize) -> i64 {
    3 * r as i64 + 5
}

/// Absolute cap for a presentation given a slack above its top degree.
pub fn cap_for<F: Field>(m: &Presentation<F>, slack: Option<i64>) -> i64 {
    let r = m.num_vars().saturating_sub(1);
    m.top_degree() + slack.unwrap_or_else(|| default_slack(r))
}

/// Non-pivot columns. They are the largest support indices of the RREF
/// kernel basis, which is echelon for that order: the leading positions of
/// ker f_d.
fn free_columns(cols: usize, pivots: &[usize]) -> Vec<usize> {
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..cols).filter(|&c| !is_pivot[c]).collect()
}

/// Positions x_i·p in degree d for the degree d-1 positions `prev`. Index
/// order is generator-major, then descending lex, so it respects products.
fn covered_positions(src: &FreeModule, d: i64, prev: &[usize]) -> Vec<usize> {
    if prev.is_empty() {
        return Vec::new();
    }
    let nv = src.nv;
    let from = src.offsets(d - 1);
    let to = src.offsets(d);
    let mut out = Vec::with_capacity(prev.len() * nv);
    let mut pi = 0;
    for (g, &a) in src.degrees.iter().enumerate() {
        let basis = monomial::monomial_basis(nv, d - 1 - a);
        while pi < prev.len() && prev[pi] < from[g] + basis.len() {
            let mut e = basis[prev[pi] - from[g]].clone();
            for i in 0..nv {
                e[i] += 1;
                out.push(to[g] + monomial::monomial_index(&e));
                e[i] -= 1;
            }
            pi += 1;
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

struct KernelScan<F: Field> {
    gens: GradedMap<F>,
    /// dim ker f_d for d in lo..=cap.
    dims: Vec<usize>,
    lo: i64,
}

fn scan_kernel<F: Field>(f: &GradedMap<F>, cap: i64) -> Result<KernelScan<F>> {
    let field = f.field();
    let src = f.source();
    let nv = src.nv;
    let r = nv as i64 - 1;
    let mut gens: Vec<(i64, Vec<F::Elem>)> = Vec::new();
    let Some(lo) = src.min_degree() else {
        return Ok(KernelScan {
            gens: GradedMap::zero(field, FreeModule::new(nv, vec![]), src.clone()),
            dims: Vec::new(),
            lo: 0,
        });
    };
    if let Some(top) = src.max_degree() {
        if cap < top {
            return Err(Error::DegreeCapExceeded { cap, degree: top });
        }
    }
    let window = cap - (r + 2);
    let mut dims = Vec::new();
    // kernel basis of the previous degree, kept only when it was computed
    let mut prev: Option<(i64, Mat<F>)> = None;
    let mut prev_lead: Vec<usize> = Vec::new();
    for d in lo..=cap {
        let cols = src.dim(d);
        let lead = free_columns(cols, &sparse_pivot_columns(field, cols, f.sparse_rows(d)));
        dims.push(lead.len());
        // x_i·LT(v) = LT(x_i·v), so when the shifted leading positions of
        // degree d-1 already fill those of degree d nothing new is needed
        let generated = lead.is_empty() || covered_positions(src, d, &prev_lead) == lead;
        prev_lead = lead;
        if generated {
            continue;
        }
        let k = f.matrix(d).kernel_basis();
        let mut span = EchelonBasis::new(field, src.dim(d));
        if d > lo {
            let p = match prev.take() {
                Some((e, p)) if e == d - 1 => p,
                _ => f.matrix(d - 1).kernel_basis(),
            };
            'outer: for v in p.col_vecs() {
                for i in 0..nv {
                    span.insert(&src.mul_monomial(field, d - 1, &v, &monomial::var(nv, i)));
                    if span.len() == k.cols() {
                        break 'outer;
                    }
                }
            }
        }
        if span.len() < k.cols() {
            for w in k.col_vecs() {
                if span.insert(&w) {
                    if d > window {
                        return Err(Error::DegreeCapExceeded { cap, degree: d });
                    }
                    gens.push((d, w));
                }
            }
        }
        prev = Some((d, k));
    }
    let source = FreeModule::new(nv, gens.iter().map(|(d, _)| *d).collect());
    let mut entries = vec![Vec::with_capacity(gens.len()); src.rank()];
    for (d, w) in &gens {
        for (i, form) in src.to_forms(field, *d, w).into_iter().enumerate() {
            entries[i].push(form);
        }
    }
    Ok(KernelScan {
        gens: GradedMap::new(field, source, src.clone(), entries)?,
        dims,
        lo,
    })
}

/// A map K → source(f) whose image is ker f, with minimal generators found
/// degree by degree up to `cap`.
pub fn kernel_generators<F: Field>(f: &GradedMap<F>, cap: i64) -> Result<GradedMap<F>> {
    Ok(scan_kernel(f, cap)?.gens)
}

/// Presentation of ker f: its generators and their relations.
pub fn kernel_presentation<F: Field>(f: &GradedMap<F>, cap: i64) -> Result<Presentation<F>> {
    let g = kernel_generators(f, cap)?;
    let rel = kernel_generators(&g, cap)?;
    Ok(Presentation::new(rel))
}

/// A free resolution 0 → F_s → … → F_1 → F_0 → M with `maps[i]` the map
/// F_{i+1} → F_i. Owned by the caller and reused for every cohomological
/// query about M.
#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    module: Presentation<F>,
    maps: Vec<GradedMap<F>>,
    cap: i64,
    /// dim M_d for d in hf_lo..=cap.
    hf: Vec<usize>,
    hf_lo: i64,
}

pub fn free_resolution<F: Field>(m: &Presentation<F>, cap: i64) -> Result<Resolution<F>> {
    let r = m.num_vars() - 1;
    let mut maps = vec![m.map().clone()];
    let mut scans = Vec::new();
    loop {
        let last = maps.last().expect("nonempty");
        if last.source().rank() == 0 {
            break;
        }
        let scan = scan_kernel(last, cap)?;
        let done = scan.gens.source().rank() == 0;
        let next = scan.gens.clone();
        scans.push(scan);
        if done {
            break;
        }
        if maps.len() == r + 1 {
            return Err(Error::ResolutionIncomplete(format!(
                "kernel of the map out of F_{} is not zero below degree {cap}",
                r + 1
            )));
        }
        maps.push(next);
    }
    let free_mods: Vec<FreeModule> = std::iter::once(m.gens().clone())
        .chain(maps.iter().map(|f| f.source().clone()))
        .collect();
    let lo = free_mods.iter().filter_map(|f| f.min_degree()).min().unwrap_or(0);
    let ker_dim = |i: usize, d: i64| -> usize {
        // dimension of ker(maps[i]) in degree d
        match scans.get(i) {
            Some(s) if d >= s.lo && ((d - s.lo) as usize) < s.dims.len() => s.dims[(d - s.lo) as usize],
            _ => 0,
        }
    };
    let mut hf = Vec::new();
    for d in lo..=cap {
        let f0 = m.gens().dim(d);
        let f1 = m.rels().dim(d);
        let rank1 = f1 - ker_dim(0, d);
        let hfd = f0 - rank1;
        let alt: i64 = free_mods
            .iter()
            .enumerate()
            .map(|(i, f)| if i % 2 == 0 { f.dim(d) as i64 } else { -(f.dim(d) as i64) })
            .sum();
        if alt != hfd as i64 {
            return Err(Error::ResolutionIncomplete(format!(
                "alternating sum {alt} differs from dim M_{d} = {hfd}; raise the degree cap"
            )));
        }
        hf.push(hfd);
    }
    Ok(Resolution {
        module: m.clone(),
        maps,
        cap,
        hf,
        hf_lo: lo,
    })
}

impl<F: Field> Resolution<F> {
    pub fn module(&self) -> &Presentation<F> {
        &self.module
    }

    pub fn field(&self) -> &F {
        self.module.field()
    }

    pub fn num_vars(&self) -> usize {
        self.module.num_vars()
    }

    pub fn r(&self) -> usize {
        self.num_vars() - 1
    }

    pub fn cap(&self) -> i64 {
        self.cap
    }

    /// `maps[i]`: F_{i+1} → F_i. The list may end with a map from zero.
    pub fn maps(&self) -> &[GradedMap<F>] {
        &self.maps
    }

    /// Nonzero free modules F_0, F_1, … of the resolution.
    pub fn free_modules(&self) -> Vec<FreeModule> {
        let mut out = vec![self.module.gens().clone()];
        for f in &self.maps {
            if f.source().rank() > 0 {
                out.push(f.source().clone());
            }
        }
        out
    }

    /// Length s of the resolution.
    pub fn length(&self) -> usize {
        self.free_modules().len() - 1
    }

    pub fn hf(&self, d: i64) -> usize {
        if d >= self.hf_lo && d <= self.cap {
            self.hf[(d - self.hf_lo) as usize]
        } else if d < self.hf_lo {
            0
        } else {
            self.module.hf(d)
        }
    }

    /// Σ_i (-1)^i Σ_j C(ℓ - a_ij + r, r).
    pub fn hilbert_polynomial(&self) -> HilbPoly {
        let r = self.r();
        let mut p = HilbPoly::zero();
        for (i, f) in self.free_modules().iter().enumerate() {
            for &a in &f.degrees {
                let t = HilbPoly::free_rank_one(r, a);
                p = if i % 2 == 0 { p.add(&t) } else { p.sub(&t) };
            }
        }
        p
    }

    /// max_ij (a_ij - i), an upper bound for the regularity of M.
    pub fn reg_bound(&self) -> i64 {
        self.free_modules()
            .iter()
            .enumerate()
            .flat_map(|(i, f)| f.degrees.iter().map(move |a| a - i as i64))
            .max()
            .unwrap_or(i64::MIN / 4)
    }

    /// D_q = Hom(F_q, S(-r-1)), zero for q beyond the length.
    pub fn dual_module(&self, q: usize) -> FreeModule {
        let w = self.r() as i64 + 1;
        match self.free_modules().get(q) {
            Some(f) => FreeModule::new(f.nv, f.degrees.iter().map(|a| w - a).collect()),
            None => FreeModule::new(self.num_vars(), vec![]),
        }
    }

    /// The dualized differential D_{q-1} → D_q for q ≥ 1 (zero outside).
    pub fn dual_map(&self, q: usize) -> GradedMap<F> {
        let w = self.r() as i64 + 1;
        if q >= 1 && q <= self.length() {
            self.maps[q - 1].dual(w)
        } else {
            let src = if q == 0 {
                FreeModule::new(self.num_vars(), vec![])
            } else {
                self.dual_module(q - 1)
            };
            GradedMap::zero(self.field(), src, self.dual_module(q))
        }
    }

    /// dim Ext^q_S(M, S(-r-1))_t.
    pub fn ext_dim(&self, q: usize, t: i64) -> usize {
        let d = self.dual_module(q).dim(t);
        if d == 0 {
            return 0;
        }
        let out_rank = if q < self.length() {
            self.dual_map(q + 1).matrix(t).rank()
        } else {
            0
        };
        let in_rank = if q >= 1 { self.dual_map(q).matrix(t).rank() } else { 0 };
        d - out_rank - in_rank
    }

    /// h^i of the sheaf associated to M, twisted by n, via local duality.
    pub fn cohomology(&self, i: usize, n: i64) -> usize {
        let r = self.r();
        assert!(i <= r, "cohomological degree {i} exceeds {r}");
        if i >= 1 {
            return self.ext_dim(r - i, -n);
        }
        let v = self.hf(n) as i64 - self.ext_dim(r + 1, -n) as i64 + self.ext_dim(r, -n) as i64;
        v as usize
    }

    /// H^i(E(n - i)) = 0 for i = 1..r.
    pub fn is_n_regular(&self, n: i64) -> bool {
        (1..=self.r()).all(|i| self.cohomology(i, n - i as i64) == 0)
    }

    /// Smallest n in [lo, reg_bound] with E n-regular.
    pub fn regularity_from(&self, lo: i64) -> i64 {
        let hi = self.reg_bound().max(lo);
        (lo..=hi).find(|&n| self.is_n_regular(n)).unwrap_or(hi)
    }

    /// Presentation of coker(D_{q-1} → D_q), the module whose Hilbert
    /// polynomial feeds the Ext computations.
    pub fn dual_cokernel(&self, q: usize) -> Presentation<F> {
        Presentation::new(self.dual_map(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{PrimeField, Rationals};
    use crate::polygraded::form::Form;

    #[test]
    fn koszul_kernel() {
        let q = Rationals;
        let x = Form::var(&q, 2, 0);
        let y = Form::var(&q, 2, 1);
        let f = GradedMap::new(
            &q,
            FreeModule::new(2, vec![1, 1]),
            FreeModule::new(2, vec![0]),
            vec![vec![x.clone(), y.clone()]],
        )
        .unwrap();
        let k = kernel_generators(&f, 10).unwrap();
        assert_eq!(k.source().degrees, vec![2]);
        assert!(f.compose(&k).unwrap().is_zero());
        let p = kernel_presentation(&f, 10).unwrap();
        assert_eq!(p.gens().degrees, vec![2]);
        assert_eq!(p.rels().rank(), 0);
    }

    #[test]
    fn injective_and_zero_maps() {
        let f5 = PrimeField::new(5).unwrap();
        let x = Form::var(&f5, 2, 0);
        let mx = GradedMap::new(&f5, FreeModule::new(2, vec![1]), FreeModule::new(2, vec![0]), vec![vec![x]]).unwrap();
        assert_eq!(kernel_generators(&mx, 8).unwrap().source().rank(), 0);
        let z = GradedMap::zero(&f5, FreeModule::new(2, vec![1]), FreeModule::new(2, vec![0]));
        assert_eq!(kernel_generators(&z, 8).unwrap().source().degrees, vec![1]);
    }

    #[test]
    fn resolutions_of_small_modules() {
        let f = PrimeField::new(7).unwrap();
        let x = Form::var(&f, 2, 0);
        let y = Form::var(&f, 2, 1);
        let sx = Presentation::quotient(&f, 2, vec![x.clone()]).unwrap();
        let res = free_resolution(&sx, 10).unwrap();
        assert_eq!(res.length(), 1);
        assert_eq!(res.hilbert_polynomial(), HilbPoly::constant(1));

        let s = Presentation::free(&f, 2, vec![0]);
        assert_eq!(free_resolution(&s, 10).unwrap().length(), 0);

        let sxy = Presentation::quotient(&f, 2, vec![x, y]).unwrap();
        let res = free_resolution(&sxy, 10).unwrap();
        let fm = res.free_modules();
        assert_eq!(fm.len(), 3);
        assert_eq!(fm[1].degrees, vec![1, 1]);
        assert_eq!(fm[2].degrees, vec![2]);
        assert!(res.hilbert_polynomial().is_zero());
    }

    #[test]
    fn line_bundle_cohomology() {
        let f = PrimeField::new(5).unwrap();
        let res = |nv, d| free_resolution(&Presentation::line_bundle(&f, nv, d), 20).unwrap();
        assert_eq!(res(2, -2).cohomology(1, 0), 1);
        assert_eq!(res(3, 0).cohomology(0, 2), 6);
        assert_eq!(res(2, 0).cohomology(1, 0), 0);
        let o_minus1 = res(2, -1);
        assert!(o_minus1.is_n_regular(1));
        assert!(!o_minus1.is_n_regular(0));
    }

    #[test]
    fn cap_too_small_is_reported() {
        let f = PrimeField::new(5).unwrap();
        let x = Form::var(&f, 2, 0);
        let y = Form::var(&f, 2, 1);
        let sxy = Presentation::quotient(&f, 2, vec![x, y]).unwrap();
        assert!(matches!(free_resolution(&sxy, 4), Err(Error::DegreeCapExceeded { .. })));
    }
}
