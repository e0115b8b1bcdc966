//! Row echelon structure of sparse matrices.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::field::Field;

/// A sparse row: `(column, value)` pairs sorted by column, no zeros.
pub type SparseRow<E> = Vec<(usize, E)>;

/// Pivot columns of a row echelon form of the matrix whose rows are
/// `rows`, that is, the leading positions of its row space in increasing
/// order. Rows are reduced one at a time against the pivots found so far.
pub fn sparse_pivot_columns<F: Field>(field: &F, cols: usize, rows: Vec<SparseRow<F::Elem>>) -> Vec<usize> {
    let mut pivots: Vec<Option<SparseRow<F::Elem>>> = vec![None; cols];
    let mut acc = vec![field.zero(); cols];
    let mut queued = vec![false; cols];
    let mut heap = BinaryHeap::new();
    for row in rows {
        for (j, x) in row {
            acc[j] = x;
            queued[j] = true;
            heap.push(Reverse(j));
        }
        while let Some(Reverse(c)) = heap.pop() {
            queued[c] = false;
            if field.is_zero(&acc[c]) {
                continue;
            }
            let Some(p) = &pivots[c] else {
                // new leading position: collect the rest of the row
                let inv = field.inv(&acc[c]).expect("nonzero");
                let mut out = vec![(c, field.one())];
                acc[c] = field.zero();
                let mut rest: Vec<usize> = heap.drain().map(|Reverse(j)| j).collect();
                rest.sort_unstable();
                rest.dedup();
                for j in rest {
                    queued[j] = false;
                    if !field.is_zero(&acc[j]) {
                        out.push((j, field.mul(&acc[j], &inv)));
                        acc[j] = field.zero();
                    }
                }
                pivots[c] = Some(out);
                break;
            };
            let factor = acc[c].clone();
            for (j, y) in p {
                acc[*j] = field.sub(&acc[*j], &field.mul(&factor, y));
                if *j != c && !queued[*j] {
                    queued[*j] = true;
                    heap.push(Reverse(*j));
                }
            }
        }
    }
    (0..cols).filter(|&c| pivots[c].is_some()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{Mat, PrimeField};

    #[test]
    fn agrees_with_dense_elimination() {
        let f = PrimeField::new(3).unwrap();
        let rows: &[&[i64]] = &[&[0, 1, 1, 0, 2], &[0, 2, 2, 0, 1], &[1, 0, 0, 1, 0], &[0, 0, 0, 0, 1], &[1, 1, 1, 1, 1]];
        let dense = Mat::from_i64(&f, rows);
        let sparse = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(j, &x)| (j, f.from_i64(x)))
                    .collect()
            })
            .collect();
        assert_eq!(sparse_pivot_columns(&f, 5, sparse), dense.pivot_columns());
        assert_eq!(dense.pivot_columns(), vec![0, 1, 4]);
    }
}
