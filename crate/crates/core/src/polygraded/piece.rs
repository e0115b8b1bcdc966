use super::form::Presentation;
use crate::exactla::{Field, Mat};

/// The degree-`d` piece M_d = F_0,d / im(F_1,d), with the pinned coset
/// basis given by the non-pivot positions of the reduced image.
#[derive(Clone, Debug)]
pub struct Piece<F: Field> {
    pub degree: i64,
    field: F,
    ambient: usize,
    image: Mat<F>,
    pivots: Vec<usize>,
    free: Vec<usize>,
}

impl<F: Field> Piece<F> {
    pub fn new(m: &Presentation<F>, d: i64) -> Self {
        let a = m.map().matrix(d);
        let ambient = a.rows();
        let (r, pivots) = a.transpose().rref();
        let image = r.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
        let mut is_piv = vec![false; ambient];
        for &p in &pivots {
            is_piv[p] = true;
        }
        Piece {
            degree: d,
            field: m.field().clone(),
            ambient,
            image,
            free: (0..ambient).filter(|&i| !is_piv[i]).collect(),
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// dim F_0,d.
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Positions in F_0,d of the coset representatives.
    pub fn basis_positions(&self) -> &[usize] {
        &self.free
    }

    /// Normal form: the unique representative supported on basis positions.
    pub fn normal_form(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (k, &p) in self.pivots.iter().enumerate() {
            let c = v[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, y) in v.iter_mut().zip(self.image.row(k)).skip(p) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        v
    }

    /// Coordinates of the class of `v` in the coset basis.
    pub fn coords(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let nf = self.normal_form(v);
        self.free.iter().map(|&i| nf[i].clone()).collect()
    }

    /// Representative in F_0,d of the element with the given coordinates.
    pub fn lift(&self, c: &[F::Elem]) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.ambient];
        for (&i, x) in self.free.iter().zip(c) {
            v[i] = x.clone();
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;
    use crate::polygraded::form::Form;

    #[test]
    fn quotient_by_x_keeps_pure_y_power() {
        let f = PrimeField::new(3).unwrap();
        let m = Presentation::quotient(&f, 2, vec![Form::var(&f, 2, 0)]).unwrap();
        let p = Piece::new(&m, 5);
        assert_eq!(p.dim(), 1);
        // basis monomial is y^5, the last one
        assert_eq!(p.basis_positions(), &[5]);
        assert_eq!(p.coords(&[1, 1, 0, 0, 0, 2]), vec![2]);
    }
}
