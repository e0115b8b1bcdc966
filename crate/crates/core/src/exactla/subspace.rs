//! Enumeration of all `k`-dimensional subspaces of F_q^n as RREF row bases.

use super::field::FiniteField;
use super::mat::Mat;

/// Gaussian binomial `[n choose k]_q`, saturating at `u128::MAX`.
pub fn gaussian_binomial(q: u64, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        let a = q.checked_pow((n - i) as u32).map(|x| x - 1);
        let b = q.checked_pow((i + 1) as u32).map(|x| x - 1);
        match (a.and_then(|a| num.checked_mul(a)), b) {
            (Some(nn), Some(b)) => {
                num = nn;
                den *= b;
                let g = gcd(num, den);
                num /= g;
                den /= g;
            }
            _ => return u128::MAX,
        }
    }
    num / den
}

/// Total number of subspaces of all dimensions in F_q^n, saturating.
pub fn subspace_total(q: u64, n: usize) -> u128 {
    (0..=n).fold(0u128, |acc, k| acc.saturating_add(gaussian_binomial(q, n, k)))
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Iterator over RREF bases: pivot sets in lexicographic order, then the
/// free entries as an odometer (last entry fastest) in field-index order.
pub struct Subspaces<F: FiniteField> {
    field: F,
    n: usize,
    k: usize,
    q: u64,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    digits: Vec<u64>,
    done: bool,
}

pub fn enumerate_subspaces<F: FiniteField>(field: &F, ambient: usize, dim: usize) -> Subspaces<F> {
    let mut it = Subspaces {
        field: field.clone(),
        n: ambient,
        k: dim,
        q: field.size(),
        pivots: (0..dim).collect(),
        free: Vec::new(),
        digits: Vec::new(),
        done: dim > ambient,
    };
    if !it.done {
        it.reset_free();
    }
    it
}

impl<F: FiniteField> Subspaces<F> {
    fn reset_free(&mut self) {
        self.free.clear();
        for (i, &p) in self.pivots.iter().enumerate() {
            for j in p + 1..self.n {
                if !self.pivots.contains(&j) {
                    self.free.push((i, j));
                }
            }
        }
        self.digits = vec![0; self.free.len()];
    }

    fn next_pivots(&mut self) -> bool {
        let (n, k) = (self.n, self.k);
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.pivots[i] < n - k + i {
                self.pivots[i] += 1;
                for j in i + 1..k {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    fn current(&self) -> Mat<F> {
        let f = &self.field;
        let mut m = Mat::zeros(f, self.k, self.n);
        for (i, &p) in self.pivots.iter().enumerate() {
            m[(i, p)] = f.one();
        }
        for (&(i, j), &d) in self.free.iter().zip(&self.digits) {
            m[(i, j)] = f.element(d);
        }
        m
    }

    fn advance(&mut self) {
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.q {
                return;
            }
            *d = 0;
        }
        if self.next_pivots() {
            self.reset_free();
        } else {
            self.done = true;
        }
    }
}

impl<F: FiniteField> Iterator for Subspaces<F> {
    type Item = Mat<F>;

    fn next(&mut self) -> Option<Mat<F>> {
        if self.done {
            return None;
        }
        let out = self.current();
        if self.k == 0 {
            self.done = true;
        } else {
            self.advance();
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::{ExtField, PrimeField};
    use std::collections::HashSet;

    #[test]
    fn counts_match_gaussian_binomial() {
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(enumerate_subspaces(&f2, 2, 1).count(), 3);
        assert_eq!(enumerate_subspaces(&f2, 5, 0).count(), 1);
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(enumerate_subspaces(&f3, 2, 1).count(), 4);
        for n in 0..5 {
            for k in 0..=n {
                let c = enumerate_subspaces(&f3, n, k).count() as u128;
                assert_eq!(c, gaussian_binomial(3, n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn subspaces_are_distinct() {
        let f4 = ExtField::new(2, 2).unwrap();
        let seen: HashSet<Vec<Vec<u32>>> = enumerate_subspaces(&f4, 4, 2)
            .map(|m| m.row_space().row_vecs())
            .collect();
        assert_eq!(seen.len() as u128, gaussian_binomial(4, 4, 2));
    }

    #[test]
    fn too_large_dim_is_empty() {
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(enumerate_subspaces(&f2, 1, 2).count(), 0);
    }
}
