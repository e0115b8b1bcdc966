//! Hilbert polynomials with exact rational coefficients and the two
//! polynomial orderings used for stability.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Polynomial in ℓ, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct HilbPoly {
    coeffs: Vec<BigRational>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl HilbPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        HilbPoly { coeffs }
    }

    pub fn zero() -> Self {
        HilbPoly::default()
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| q(x)).collect())
    }

    pub fn constant(c: i64) -> Self {
        Self::from_ints(&[c])
    }

    /// C(ℓ - a + r, r): the Hilbert polynomial of S(-a) in r+1 variables.
    pub fn free_rank_one(r: usize, a: i64) -> Self {
        let mut p = HilbPoly::constant(1);
        let mut fact = BigInt::one();
        for t in 1..=r as i64 {
            p = p.mul(&HilbPoly::from_ints(&[t - a, 1]));
            fact *= BigInt::from(t);
        }
        p.scale(&BigRational::new(BigInt::one(), fact))
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
                    let b = o.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn eval(&self, l: i64) -> BigRational {
        let x = q(l);
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    /// Value at an integer, which is an integer for Hilbert polynomials.
    pub fn eval_int(&self, l: i64) -> i64 {
        let v = self.eval(l);
        assert!(v.is_integer(), "Hilbert polynomial not integer valued at {l}");
        v.to_integer().to_i64().expect("value fits in i64")
    }

    /// True when the polynomial takes integer values on all integers,
    /// checked in the binomial basis via finite differences.
    pub fn is_integer_valued(&self) -> bool {
        let d = self.coeffs.len();
        let mut vals: Vec<BigRational> = (0..=d as i64).map(|l| self.eval(l)).collect();
        for _ in 0..=d {
            if !vals[0].is_integer() {
                return false;
            }
            vals = vals.windows(2).map(|w| &w[1] - &w[0]).collect();
            if vals.is_empty() {
                break;
            }
        }
        true
    }

    /// Integer polynomial with the given values at ℓ = 0..=k (Newton form).
    pub fn interpolate(values: &[i64]) -> Self {
        let mut diffs: Vec<BigRational> = values.iter().map(|&v| q(v)).collect();
        let mut out = HilbPoly::zero();
        let mut basis = HilbPoly::constant(1);
        for k in 0..values.len() {
            out = out.add(&basis.scale(&diffs[0]));
            basis = basis
                .mul(&HilbPoly::from_ints(&[-(k as i64), 1]))
                .scale(&BigRational::new(BigInt::one(), BigInt::from(k as i64 + 1)));
            diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        out
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(fmt_rat).collect()
    }

    pub fn from_strings(s: &[String]) -> Result<Self> {
        let mut c = Vec::with_capacity(s.len());
        for (i, x) in s.iter().enumerate() {
            let x = x.trim();
            let bad = || Error::parse(format!("coeffs[{i}]"), format!("not a rational: {x:?}"));
            let v = match x.split_once('/') {
                Some((n, d)) => {
                    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                    if d.is_zero() {
                        return Err(bad());
                    }
                    BigRational::new(n.trim().parse().map_err(|_| bad())?, d)
                }
                None => BigRational::from_integer(x.parse().map_err(|_| bad())?),
            };
            c.push(v);
        }
        Ok(Self::new(c))
    }
}

fn fmt_rat(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for HilbPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = fmt_rat(c);
            parts.push(match i {
                0 => cs,
                1 if c.is_one() => "l".into(),
                1 => format!("({cs})l"),
                _ if c.is_one() => format!("l^{i}"),
                _ => format!("({cs})l^{i}"),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct HilbPolyDoc {
    coeffs: Vec<String>,
}

impl Serialize for HilbPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HilbPolyDoc {
            coeffs: self.to_strings(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HilbPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = HilbPolyDoc::deserialize(d)?;
        HilbPoly::from_strings(&doc.coeffs).map_err(serde::de::Error::custom)
    }
}

/// (dimension, multiplicity) = (deg p, deg(p)! · leading coefficient).
pub fn dim_and_multiplicity(p: &HilbPoly) -> Result<(usize, BigInt)> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    let mut fact = BigInt::one();
    for i in 2..=d as i64 {
        fact *= BigInt::from(i);
    }
    let r = p.leading().expect("nonzero") * BigRational::from_integer(fact);
    if !r.is_integer() || !r.is_positive() {
        return Err(Error::InvalidLeadingSign);
    }
    Ok((d, r.to_integer()))
}

/// Compares p and p' as stability slopes: `Less` means p ≺ p', i.e.
/// p'(n)p(m) - p(n)p'(m) > 0 for m ≫ n ≫ 0. Lower degree is bigger.
pub fn polcmp_rudakov(p: &HilbPoly, pp: &HilbPoly) -> Result<Ordering> {
    for x in [p, pp] {
        if !x.leading().is_some_and(|c| c.is_positive()) {
            return Err(Error::InvalidLeadingSign);
        }
    }
    // Q(n, m) = p'(n) p(m) - p(n) p'(m) as a polynomial in m with
    // coefficients polynomial in n.
    let deg_m = p.coeffs.len().max(pp.coeffs.len());
    let coef = |k: usize| {
        let a = pp.scale(p.coeffs.get(k).unwrap_or(&BigRational::zero()));
        let b = p.scale(pp.coeffs.get(k).unwrap_or(&BigRational::zero()));
        a.sub(&b)
    };
    for k in (0..deg_m).rev() {
        let c = coef(k);
        if let Some(lead) = c.leading() {
            return Ok(if lead.is_positive() {
                Ordering::Less
            } else {
                Ordering::Greater
            });
        }
    }
    Ok(Ordering::Equal)
}

/// Lexicographic comparison starting from the highest-degree coefficient.
pub fn polcmp_lex(p: &HilbPoly, o: &HilbPoly) -> Ordering {
    let n = p.coeffs.len().max(o.coeffs.len());
    let zero = BigRational::zero();
    for i in (0..n).rev() {
        let a = p.coeffs.get(i).unwrap_or(&zero);
        let b = o.coeffs.get(i).unwrap_or(&zero);
        match a.cmp(b) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// p / multiplicity, the reduced Hilbert polynomial.
pub fn reduced(p: &HilbPoly) -> Result<HilbPoly> {
    let (_, r) = dim_and_multiplicity(p)?;
    Ok(p.scale(&BigRational::new(BigInt::one(), r)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hp(c: &[i64]) -> HilbPoly {
        HilbPoly::from_ints(c)
    }

    #[test]
    fn free_module_polynomials() {
        assert_eq!(HilbPoly::free_rank_one(1, 0), hp(&[1, 1]));
        let p2 = HilbPoly::free_rank_one(2, 0);
        for l in -3..6 {
            assert_eq!(p2.eval_int(l), (l + 1) * (l + 2) / 2);
        }
        assert_eq!(HilbPoly::free_rank_one(0, 3), hp(&[1]));
    }

    #[test]
    fn dim_mult_examples() {
        assert_eq!(dim_and_multiplicity(&hp(&[1, 1])).unwrap(), (1, BigInt::from(1)));
        assert_eq!(dim_and_multiplicity(&hp(&[2, 2])).unwrap(), (1, BigInt::from(2)));
        assert_eq!(
            dim_and_multiplicity(&HilbPoly::free_rank_one(2, 0)).unwrap(),
            (2, BigInt::from(1))
        );
        assert_eq!(dim_and_multiplicity(&HilbPoly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn rudakov_examples() {
        assert_eq!(polcmp_rudakov(&hp(&[1, 1]), &hp(&[1])).unwrap(), Ordering::Less);
        assert_eq!(polcmp_rudakov(&hp(&[0, 1]), &hp(&[1, 1])).unwrap(), Ordering::Less);
        assert_eq!(polcmp_rudakov(&hp(&[1, 1]), &hp(&[1, 1])).unwrap(), Ordering::Equal);
        assert_eq!(polcmp_rudakov(&hp(&[2, 2]), &hp(&[1, 1])).unwrap(), Ordering::Equal);
        assert_eq!(polcmp_rudakov(&hp(&[1]), &hp(&[1, 1])).unwrap(), Ordering::Greater);
        assert!(polcmp_rudakov(&hp(&[1, -1]), &hp(&[1])).is_err());
    }

    #[test]
    fn lex_examples() {
        assert_eq!(polcmp_lex(&hp(&[0, 1]), &hp(&[1, 1])), Ordering::Less);
        assert_eq!(polcmp_lex(&hp(&[0, 0, 1]), &hp(&[0, 100])), Ordering::Greater);
        assert_eq!(polcmp_lex(&hp(&[3, 2]), &hp(&[3, 2])), Ordering::Equal);
    }

    #[test]
    fn interpolation_and_integrality() {
        let p = HilbPoly::free_rank_one(2, 1);
        let vals: Vec<i64> = (0..4).map(|l| p.eval_int(l)).collect();
        assert_eq!(HilbPoly::interpolate(&vals), p);
        assert!(p.is_integer_valued());
        assert!(!HilbPoly::new(vec![BigRational::new(1.into(), 2.into())]).is_integer_valued());
    }

    #[test]
    fn serde_round_trip() {
        let p = HilbPoly::free_rank_one(2, 0);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"coeffs":["1","3/2","1/2"]}"#);
        let back: HilbPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
