//! Exact fields: the rationals, prime fields F_p and small extensions F_{p^e}.
//!
//! Elements are plain values; all arithmetic goes through the field object,
//! so one element type can serve fields of different characteristic.

use std::fmt::Debug;
use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::polyfp;
use crate::error::{Error, Result};

/// Largest extension field order for which log tables are built.
pub const MAX_EXTENSION_ORDER: u64 = 1 << 20;

/// Serializable description of a field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Rationals,
    Prime {
        p: u64,
    },
    Extension {
        p: u64,
        e: u32,
        /// Coefficients of the defining polynomial, lowest degree first.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        min_poly: Option<Vec<u64>>,
    },
}

impl FieldSpec {
    /// Parses the command-line notation `Q`, `Fp:<p>` or `Fq:<p>:<e>`.
    pub fn from_flag(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| {
            t.parse::<u64>()
                .map_err(|_| Error::InvalidField(format!("bad number {t:?} in {s:?}")))
        };
        match parts.as_slice() {
            ["Q"] => Ok(FieldSpec::Rationals),
            ["Fp", p] => Ok(FieldSpec::Prime { p: num(p)? }),
            [f] if f.starts_with('F') && f.len() > 1 => Ok(FieldSpec::Prime { p: num(&f[1..])? }),
            ["Fq", p, e] => Ok(FieldSpec::Extension {
                p: num(p)?,
                e: num(e)? as u32,
                min_poly: None,
            }),
            _ => Err(Error::InvalidField(format!("unrecognised field flag {s:?}"))),
        }
    }
}

/// A commutative field with exact arithmetic.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// `row[j] -= factor·y` for every `(j, y)` in `support`.
    fn sub_scaled(&self, row: &mut [Self::Elem], factor: &Self::Elem, support: &[(usize, Self::Elem)]) {
        for (j, y) in support {
            row[*j] = self.sub(&row[*j], &self.mul(factor, y));
        }
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Number of elements, `None` for an infinite field.
    fn order(&self) -> Option<u64>;

    fn spec(&self) -> FieldSpec;

    /// Canonical string form of an element.
    fn format(&self, a: &Self::Elem) -> String;

    fn parse(&self, s: &str) -> Result<Self::Elem>;

    /// Reduction of an exact rational, `None` when the denominator vanishes.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem>;
}

/// Finite fields: enumerable, samplable, with a coefficient view over F_p.
pub trait FiniteField: Field {
    fn characteristic(&self) -> u64;
    /// Degree over the prime field.
    fn degree(&self) -> u32;
    /// The `i`-th element in the pinned enumeration order, `0 <= i < order`.
    fn element(&self, i: u64) -> Self::Elem;
    fn index_of(&self, a: &Self::Elem) -> u64;
    /// Coordinates over F_p in the power basis of the defining polynomial.
    fn to_coeffs(&self, a: &Self::Elem) -> Vec<u64>;
    /// Defining polynomial over F_p (monic, lowest degree first).
    fn modulus(&self) -> Vec<u64>;

    fn size(&self) -> u64 {
        self.order().expect("finite field")
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        self.element(rng.gen_range(0..self.size()))
    }
}

/// The rational numbers, with always-reduced big fractions.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let bad = || Error::parse("scalar", format!("not a rational: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        }
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }
}

/// The prime field F_p for a prime `p < 2^32`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 {
            return Err(Error::InvalidField(format!("prime {p} too large")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn reduce_big(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = ((v % &m) + &m) % &m;
        r.try_into().expect("residue fits")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn sub_scaled(&self, row: &mut [u64], factor: &u64, support: &[(usize, u64)]) {
        let nf = self.neg(factor);
        for &(j, y) in support {
            row[j] = (row[j] + nf * y) % self.p;
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(polyfp::pow_mod(*a, self.p - 2, self.p))
        }
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime { p: self.p }
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n = self.parse(n)?;
            let d = self.parse(d)?;
            let di = self
                .inv(&d)
                .ok_or_else(|| Error::parse("scalar", format!("zero denominator in {s:?}")))?;
            return Ok(self.mul(&n, &di));
        }
        let v: BigInt = s
            .parse()
            .map_err(|_| Error::parse("scalar", format!("not an integer residue: {s:?}")))?;
        Ok(self.reduce_big(&v))
    }
    fn from_rational(&self, q: &BigRational) -> Option<u64> {
        let d = self.reduce_big(q.denom());
        let n = self.reduce_big(q.numer());
        self.inv(&d).map(|di| self.mul(&n, &di))
    }
}

impl FiniteField for PrimeField {
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn degree(&self) -> u32 {
        1
    }
    fn element(&self, i: u64) -> u64 {
        i
    }
    fn index_of(&self, a: &u64) -> u64 {
        *a
    }
    fn to_coeffs(&self, a: &u64) -> Vec<u64> {
        vec![*a]
    }
    fn modulus(&self) -> Vec<u64> {
        vec![0, 1]
    }
}

#[derive(Debug)]
struct ExtTables {
    p: u64,
    e: u32,
    q: u64,
    modulus: Vec<u64>,
    /// exp[i] = encoding of g^i, for 0 <= i < q-1.
    exp: Vec<u32>,
    /// log[enc] = i with g^i = enc; log[0] unused.
    log: Vec<u32>,
    /// zech[k] = log(1 + g^k), or NONE when 1 + g^k = 0.
    zech: Vec<u32>,
}

const NONE: u32 = u32::MAX;

/// The field F_p[t]/(g) with elements encoded as base-p digit strings
/// `c_0 + c_1 p + ... + c_{e-1} p^{e-1}` of their coefficient vectors.
#[derive(Clone, Debug)]
pub struct ExtField {
    t: Arc<ExtTables>,
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.t.p == other.t.p && self.t.modulus == other.t.modulus
    }
}

/// Conway polynomials for small characteristics, lowest degree first.
const CONWAY: &[(u64, u32, &[u64])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (7, 1, &[4, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
    (7, 4, &[3, 4, 5, 0, 1]),
];

impl ExtField {
    /// F_{p^e} with the built-in default polynomial: the Conway polynomial
    /// when tabulated, otherwise the least primitive polynomial found by search.
    pub fn new(p: u64, e: u32) -> Result<Self> {
        Self::with_modulus(p, e, None)
    }

    pub fn with_modulus(p: u64, e: u32, min_poly: Option<Vec<u64>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= MAX_EXTENSION_ORDER)
            .ok_or_else(|| {
                Error::InvalidField(format!(
                    "F_{p}^{e} exceeds the supported order {MAX_EXTENSION_ORDER}"
                ))
            })?;
        let modulus = match min_poly {
            Some(mut g) => {
                if g.len() == e as usize {
                    g.push(1);
                }
                if g.len() != e as usize + 1 || g[e as usize] != 1 || g.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidField(format!(
                        "min_poly must be monic of degree {e} with coefficients < {p}"
                    )));
                }
                if !polyfp::is_irreducible(&g, p) {
                    return Err(Error::InvalidField(format!("min_poly {g:?} is reducible over F_{p}")));
                }
                g
            }
            None => CONWAY
                .iter()
                .find(|(cp, ce, _)| *cp == p && *ce == e)
                .map(|(_, _, g)| g.to_vec())
                .unwrap_or_else(|| polyfp::least_primitive(p, e)),
        };
        let t = build_tables(p, e, q, modulus);
        Ok(ExtField { t: Arc::new(t) })
    }

    pub fn p(&self) -> u64 {
        self.t.p
    }

    /// Image of a prime-field residue.
    pub fn from_prime(&self, c: u64) -> u32 {
        (c % self.t.p) as u32
    }

    /// `a^(p^k)`, the k-th power of Frobenius.
    pub fn frobenius(&self, a: u32, k: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let q1 = self.t.q - 1;
        let mut l = self.t.log[a as usize] as u64;
        for _ in 0..k {
            l = l * self.t.p % q1;
        }
        self.t.exp[l as usize]
    }

    /// Evaluates a polynomial with coefficients in this field.
    pub fn eval_poly(&self, coeffs: &[u32], x: u32) -> u32 {
        coeffs
            .iter()
            .rev()
            .fold(0, |acc, c| self.add(&self.mul(&acc, &x), c))
    }

    fn encode(&self, coeffs: &[u64]) -> u32 {
        let mut enc = 0u64;
        for &c in coeffs.iter().rev() {
            enc = enc * self.t.p + c % self.t.p;
        }
        enc as u32
    }
}

fn build_tables(p: u64, e: u32, q: u64, modulus: Vec<u64>) -> ExtTables {
    let q1 = q - 1;
    let decode = |mut enc: u64| -> Vec<u64> {
        let mut v = vec![0; e as usize];
        for c in v.iter_mut() {
            *c = enc % p;
            enc /= p;
        }
        v
    };
    let encode = |v: &[u64]| -> u64 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };
    let factors = polyfp::prime_factors(q1);
    let is_generator = |g: &[u64]| -> bool {
        if polyfp::powmod_poly(g, q1, &modulus, p) != [1] {
            return false;
        }
        factors
            .iter()
            .all(|&l| polyfp::powmod_poly(g, q1 / l, &modulus, p) != [1])
    };
    let gen = (1..q)
        .map(decode)
        .map(|mut v| {
            polyfp::trim(&mut v);
            v
        })
        .find(|g| q1 == 1 || is_generator(g))
        .expect("finite field has a primitive element");
    let mut exp = vec![0u32; q1 as usize];
    let mut log = vec![NONE; q as usize];
    let mut cur = vec![1u64];
    for i in 0..q1 {
        let mut padded = cur.clone();
        padded.resize(e as usize, 0);
        let enc = encode(&padded);
        exp[i as usize] = enc as u32;
        log[enc as usize] = i as u32;
        cur = polyfp::mulmod(&cur, &gen, &modulus, p);
    }
    let mut zech = vec![NONE; q1 as usize];
    for k in 0..q1 {
        // 1 + g^k: add one to the constant digit.
        let enc = exp[k as usize] as u64;
        let c0 = enc % p;
        let sum = enc - c0 + (c0 + 1) % p;
        if sum != 0 {
            zech[k as usize] = log[sum as usize];
        }
    }
    ExtTables {
        p,
        e,
        q,
        modulus,
        exp,
        log,
        zech,
    }
}

impl Field for ExtField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.t.p as i64) as u32
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 {
            return *b;
        }
        if *b == 0 {
            return *a;
        }
        if self.t.p == 2 {
            return a ^ b;
        }
        let q1 = self.t.q - 1;
        let la = self.t.log[*a as usize] as u64;
        let lb = self.t.log[*b as usize] as u64;
        let k = (lb + q1 - la) % q1;
        let z = self.t.zech[k as usize];
        if z == NONE {
            0
        } else {
            self.t.exp[((la + z as u64) % q1) as usize]
        }
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 || self.t.p == 2 {
            return *a;
        }
        let q1 = self.t.q - 1;
        let la = self.t.log[*a as usize] as u64;
        self.t.exp[((la + q1 / 2) % q1) as usize]
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        let q1 = self.t.q - 1;
        let s = self.t.log[*a as usize] as u64 + self.t.log[*b as usize] as u64;
        self.t.exp[(s % q1) as usize]
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let q1 = self.t.q - 1;
        let la = self.t.log[*a as usize] as u64;
        Some(self.t.exp[((q1 - la) % q1) as usize])
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn order(&self) -> Option<u64> {
        Some(self.t.q)
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Extension {
            p: self.t.p,
            e: self.t.e,
            min_poly: Some(self.t.modulus.clone()),
        }
    }
    fn format(&self, a: &u32) -> String {
        let c: Vec<String> = self.to_coeffs(a).iter().map(|c| c.to_string()).collect();
        format!("[{}]", c.join(","))
    }
    fn parse(&self, s: &str) -> Result<u32> {
        let s = s.trim();
        let bad = || Error::parse("scalar", format!("not an element of F_{}^{}: {s:?}", self.t.p, self.t.e));
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let mut coeffs = Vec::new();
            for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let v: i64 = tok.parse().map_err(|_| bad())?;
                coeffs.push(v.rem_euclid(self.t.p as i64) as u64);
            }
            if coeffs.len() > self.t.e as usize {
                return Err(bad());
            }
            Ok(self.encode(&coeffs))
        } else {
            let v: i64 = s.parse().map_err(|_| bad())?;
            Ok(self.from_i64(v))
        }
    }
    fn from_rational(&self, q: &BigRational) -> Option<u32> {
        let fp = PrimeField { p: self.t.p };
        fp.from_rational(q).map(|c| c as u32)
    }
}

impl FiniteField for ExtField {
    fn characteristic(&self) -> u64 {
        self.t.p
    }
    fn degree(&self) -> u32 {
        self.t.e
    }
    fn element(&self, i: u64) -> u32 {
        i as u32
    }
    fn index_of(&self, a: &u32) -> u64 {
        *a as u64
    }
    fn to_coeffs(&self, a: &u32) -> Vec<u64> {
        let mut enc = *a as u64;
        (0..self.t.e)
            .map(|_| {
                let c = enc % self.t.p;
                enc /= self.t.p;
                c
            })
            .collect()
    }
    fn modulus(&self) -> Vec<u64> {
        self.t.modulus.clone()
    }
}

/// An embedding F_q ⊆ F_{q^k} into an extension with tabulated arithmetic.
#[derive(Clone, Debug)]
pub struct Embedding<F: FiniteField> {
    base: F,
    big: ExtField,
    table: Vec<u32>,
    back: HashMap<u32, u64>,
    rel_degree: u32,
}

impl<F: FiniteField> Embedding<F> {
    /// Smallest extension of order at least `min_order`, capped at
    /// [`MAX_EXTENSION_ORDER`].
    pub fn new(base: &F, min_order: u64) -> Result<Self> {
        let q = base.size();
        if q > MAX_EXTENSION_ORDER {
            return Err(Error::InvalidField(format!(
                "field of order {q} is too large for tabulated extensions"
            )));
        }
        let mut k = 1u32;
        while q.pow(k) < min_order && q.pow(k + 1) <= MAX_EXTENSION_ORDER {
            k += 1;
        }
        Self::with_degree(base, k)
    }

    pub fn with_degree(base: &F, k: u32) -> Result<Self> {
        let p = base.characteristic();
        let e0 = base.degree();
        let big = ExtField::new(p, e0 * k)?;
        let theta = if e0 == 1 {
            0
        } else {
            let g: Vec<u32> = base.modulus().iter().map(|&c| big.from_prime(c)).collect();
            (0..big.size() as u32)
                .find(|&x| big.eval_poly(&g, x) == 0)
                .ok_or_else(|| Error::InvalidField("no root of the base polynomial".into()))?
        };
        let mut table = Vec::with_capacity(base.size() as usize);
        let mut back = HashMap::new();
        for i in 0..base.size() {
            let coeffs = base.to_coeffs(&base.element(i));
            let mut acc = 0u32;
            let mut pw = 1u32;
            for c in coeffs {
                acc = big.add(&acc, &big.mul(&big.from_prime(c), &pw));
                pw = big.mul(&pw, &theta);
            }
            table.push(acc);
            back.insert(acc, i);
        }
        Ok(Embedding {
            base: base.clone(),
            big,
            table,
            back,
            rel_degree: k,
        })
    }

    pub fn big(&self) -> &ExtField {
        &self.big
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    /// Degree of the extension over the base field.
    pub fn rel_degree(&self) -> u32 {
        self.rel_degree
    }

    pub fn lift(&self, x: &F::Elem) -> u32 {
        self.table[self.base.index_of(x) as usize]
    }

    /// Inverse of [`lift`](Self::lift) on its image.
    pub fn descend(&self, y: u32) -> Option<F::Elem> {
        self.back.get(&y).map(|&i| self.base.element(i))
    }

    /// The generator y ↦ y^q of Gal(F_{q^k} / F_q).
    pub fn frobenius(&self, y: u32) -> u32 {
        self.big.frobenius(y, self.base.degree())
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.mul(&2, &3), 1);
        assert_eq!(f.inv(&2), Some(3));
        assert_eq!(f.sub(&1, &3), 3);
        assert_eq!(f.parse("-1").unwrap(), 4);
        assert_eq!(f.parse("1/2").unwrap(), 3);
        assert!(PrimeField::new(6).is_err());
    }

    #[test]
    fn conway_table_entries_are_primitive() {
        for (p, e, g) in CONWAY {
            assert!(polyfp::is_irreducible(g, *p), "{p} {e}");
            assert!(polyfp::is_primitive(g, *p), "{p} {e}");
        }
    }

    #[test]
    fn extension_field_axioms() {
        for (p, e) in [(2, 3), (3, 2), (5, 2), (2, 6), (7, 3)] {
            let f = ExtField::new(p, e).unwrap();
            let q = f.size();
            for a in 0..q.min(60) as u32 {
                let a = (a as u64 * 7919 % q) as u32;
                assert_eq!(f.add(&a, &f.neg(&a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
                }
                for b in [1u32, 2, (q - 1) as u32] {
                    let c = 3u32 % q as u32;
                    // distributivity
                    let lhs = f.mul(&a, &f.add(&b, &c));
                    let rhs = f.add(&f.mul(&a, &b), &f.mul(&a, &c));
                    assert_eq!(lhs, rhs);
                }
            }
            assert_eq!(f.frobenius(5 % q as u32, e), 5 % q as u32);
        }
    }

    #[test]
    fn extension_addition_is_digitwise() {
        let f = ExtField::new(3, 2).unwrap();
        // [1,2] + [2,2] = [0,1]
        let a = f.parse("[1,2]").unwrap();
        let b = f.parse("[2,2]").unwrap();
        assert_eq!(f.format(&f.add(&a, &b)), "[0,1]");
    }

    #[test]
    fn reducible_min_poly_rejected() {
        // t^2 + 1 = (t+2)(t+3) over F_5
        assert!(ExtField::with_modulus(5, 2, Some(vec![1, 0, 1])).is_err());
        assert!(ExtField::with_modulus(3, 2, Some(vec![1, 0, 1])).is_ok());
    }

    #[test]
    fn embeddings_are_ring_maps() {
        let base = ExtField::new(2, 2).unwrap();
        let emb = Embedding::with_degree(&base, 3).unwrap();
        assert_eq!(emb.big().size(), 64);
        for a in 0..4u32 {
            for b in 0..4u32 {
                let s = emb.lift(&base.add(&a, &b));
                assert_eq!(s, emb.big().add(&emb.lift(&a), &emb.lift(&b)));
                let m = emb.lift(&base.mul(&a, &b));
                assert_eq!(m, emb.big().mul(&emb.lift(&a), &emb.lift(&b)));
            }
            assert_eq!(emb.frobenius(emb.lift(&a)), emb.lift(&a));
            assert_eq!(emb.descend(emb.lift(&a)), Some(a));
        }
        let f5 = PrimeField::new(5).unwrap();
        let e = Embedding::new(&f5, 100).unwrap();
        assert_eq!(e.big().size(), 125);
    }

    #[test]
    fn field_flags() {
        assert_eq!(FieldSpec::from_flag("Q").unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::from_flag("F2").unwrap(), FieldSpec::Prime { p: 2 });
        assert_eq!(FieldSpec::from_flag("Fp:7").unwrap(), FieldSpec::Prime { p: 7 });
        assert!(matches!(
            FieldSpec::from_flag("Fq:5:2").unwrap(),
            FieldSpec::Extension { p: 5, e: 2, .. }
        ));
    }
}
