//! Dense polynomials over F_p (coefficients low degree first), used to
//! validate and tabulate extension fields.

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub(crate) fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    trim(&mut a);
    let dm = m.len() - 1;
    let lead_inv = pow_mod(m[dm], p - 2, p);
    while a.len() > dm {
        let k = a.len() - 1;
        let c = a[k] * lead_inv % p;
        if c != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let idx = k - dm + i;
                a[idx] = (a[idx] + p - c * mi % p) % p;
            }
        }
        trim(&mut a);
    }
    a
}

fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn powmod_poly(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut r = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(&r, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        e >>= 1;
    }
    r
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

/// Rabin's irreducibility test for a polynomial of positive degree.
pub(crate) fn is_irreducible(g: &[u64], p: u64) -> bool {
    let mut g = g.to_vec();
    trim(&mut g);
    if g.len() < 2 {
        return false;
    }
    let n = (g.len() - 1) as u32;
    let x = [0u64, 1];
    for l in prime_factors(n as u64) {
        let h = powmod_poly(&x, p.pow(n / l as u32), &g, p);
        let d = gcd(&g, &sub(&h, &x, p), p);
        if d.len() != 1 {
            return false;
        }
    }
    let h = powmod_poly(&x, p.pow(n), &g, p);
    sub(&h, &rem(&x, &g, p), p).is_empty()
}

/// True when `g` is irreducible and `t` generates the multiplicative group.
pub(crate) fn is_primitive(g: &[u64], p: u64) -> bool {
    if !is_irreducible(g, p) || g[0] == 0 {
        return false;
    }
    let n = (g.len() - 1) as u32;
    let q1 = p.pow(n) - 1;
    let x = [0u64, 1];
    powmod_poly(&x, q1, g, p) == [1]
        && prime_factors(q1)
            .into_iter()
            .all(|l| powmod_poly(&x, q1 / l, g, p) != [1])
}

/// First monic primitive polynomial of degree `e`, scanning lower
/// coefficients by their base-p encoding.
pub(crate) fn least_primitive(p: u64, e: u32) -> Vec<u64> {
    let count = p.pow(e);
    (0..count)
        .map(|mut c| {
            let mut g: Vec<u64> = (0..e)
                .map(|_| {
                    let d = c % p;
                    c /= p;
                    d
                })
                .collect();
            g.push(1);
            g
        })
        .find(|g| is_primitive(g, p))
        .expect("primitive polynomials exist in every degree")
}
