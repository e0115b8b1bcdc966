//! Monomials of S = k[x_0..x_r] in graded-lex order: within a degree,
//! exponent vectors are sorted lexicographically descending, so on two
//! variables degree 2 reads x^2, xy, y^2.

pub type Exp = Vec<u32>;

/// Binomial coefficient for small nonnegative arguments; zero when `k > n`.
pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Number of monomials of degree `d` in `nv` variables (zero for `d < 0`).
pub fn num_monomials(nv: usize, d: i64) -> usize {
    if d < 0 || nv == 0 {
        return usize::from(d == 0 && nv == 0);
    }
    binom(d as u64 + nv as u64 - 1, nv as u64 - 1) as usize
}

pub fn monomial_basis(nv: usize, d: i64) -> Vec<Exp> {
    let mut out = Vec::with_capacity(num_monomials(nv, d));
    if d < 0 || nv == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0u32; nv];
    fill(&mut cur, 0, d as u32, &mut out);
    out
}

fn fill(cur: &mut Exp, pos: usize, left: u32, out: &mut Vec<Exp>) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(cur.clone());
        return;
    }
    for e in (0..=left).rev() {
        cur[pos] = e;
        fill(cur, pos + 1, left - e, out);
    }
}

/// Position of `exp` in `monomial_basis(exp.len(), |exp|)`.
pub fn monomial_index(exp: &[u32]) -> usize {
    let mut d: u64 = exp.iter().map(|&e| e as u64).sum();
    let mut idx = 0u64;
    for (pos, &e) in exp.iter().enumerate() {
        let rest = (exp.len() - pos - 1) as u64;
        if rest == 0 {
            break;
        }
        // monomials whose exponent here exceeds e
        for k in (e as u64 + 1)..=d {
            idx += binom(d - k + rest - 1, rest - 1);
        }
        d -= e as u64;
    }
    idx as usize
}

pub fn degree(exp: &[u32]) -> i64 {
    exp.iter().map(|&e| e as i64).sum()
}

pub fn mul(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `a / b` when `b` divides `a`.
pub fn div(a: &[u32], b: &[u32]) -> Option<Exp> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_sub(*y))
        .collect()
}

/// The variable `x_i` as an exponent vector.
pub fn var(nv: usize, i: usize) -> Exp {
    let mut e = vec![0; nv];
    e[i] = 1;
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_examples() {
        assert_eq!(monomial_basis(2, 1), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(monomial_basis(3, 2).len(), 6);
        assert!(monomial_basis(2, -1).is_empty());
        assert_eq!(monomial_basis(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn index_matches_position() {
        for nv in 1..5 {
            for d in 0..6 {
                for (i, m) in monomial_basis(nv, d).iter().enumerate() {
                    assert_eq!(monomial_index(m), i);
                }
                assert_eq!(monomial_basis(nv, d).len(), num_monomials(nv, d));
            }
        }
    }
}
