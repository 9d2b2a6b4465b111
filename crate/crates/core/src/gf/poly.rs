//! Univariate polynomials over a tower level, used to find and check moduli.
//!
//! Polynomials are coefficient vectors, lowest degree first, with no trailing
//! zeros once trimmed.

use super::field::Gf;

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn rem(f: &Gf, a: &[u64], m: &[u64]) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = f.inv(m[dm]).expect("modulus has a nonzero leading coefficient");
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = f.mul(*r.last().unwrap(), lead_inv);
        for (j, &mj) in m.iter().enumerate() {
            r[shift + j] = f.sub(r[shift + j], f.mul(c, mj));
        }
        r = trim(r);
    }
    r
}

fn mul_mod(f: &Gf, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = f.add(prod[i + j], f.mul(ai, bj));
        }
    }
    rem(f, &prod, m)
}

fn pow_mod(f: &Gf, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(f, &acc, &b, m);
        }
        e >>= 1;
        if e > 0 {
            b = mul_mod(f, &b, &b, m);
        }
    }
    acc
}

fn gcd(f: &Gf, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or irreducibility test: a monic `poly` of degree `d` over `f` is
/// irreducible iff `gcd(x^{s^i} - x, poly) = 1` for `i = 1..=d/2`.
pub fn is_irreducible(f: &Gf, poly: &[u64]) -> bool {
    let poly = trim(poly.to_vec());
    if poly.len() < 2 {
        return false;
    }
    let d = poly.len() - 1;
    if d == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let mut h = x.clone();
    for _ in 1..=d / 2 {
        h = pow_mod(f, &h, f.order(), &poly);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = f.sub(diff[1], 1);
        let g = gcd(f, &diff, &poly);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Smallest monic irreducible polynomial of `degree` over `f`, where monic
/// polynomials are ordered by the integer `c_0 + c_1 s + ... + c_{d-1} s^{d-1}`.
pub fn smallest_irreducible(f: &Gf, degree: usize) -> Vec<u64> {
    let s = f.order();
    let mut code: u64 = 0;
    loop {
        let mut c = code;
        let mut poly: Vec<u64> = (0..degree)
            .map(|_| {
                let d = c % s;
                c /= s;
                d
            })
            .collect();
        poly.push(1);
        if is_irreducible(f, &poly) {
            return poly;
        }
        code += 1;
    }
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
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

/// Splits a prime power into `(p, k)`; `None` otherwise.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let factors = prime_factors(n);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut k = 0;
    let mut m = n;
    while m > 1 {
        m /= p;
        k += 1;
    }
    Some((p, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime((1u64 << 61) - 1));
        assert!(!is_prime(3215031751));
    }

    #[test]
    fn binary_irreducibles_by_search() {
        let f2 = Gf::prime(2);
        assert_eq!(smallest_irreducible(&f2, 2), vec![1, 1, 1]);
        assert_eq!(smallest_irreducible(&f2, 3), vec![1, 1, 0, 1]);
        assert_eq!(smallest_irreducible(&f2, 4), vec![1, 1, 0, 0, 1]);
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2
        assert!(!is_irreducible(&f2, &[1, 0, 1, 0, 1]));
    }

    #[test]
    fn irreducible_has_no_roots_small() {
        let f3 = Gf::prime(3);
        for d in 2..=3 {
            let poly = smallest_irreducible(&f3, d);
            for x in 0..3u64 {
                let v = poly.iter().rev().fold(0, |acc, &c| f3.add(f3.mul(acc, x), c));
                assert_ne!(v, 0);
            }
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
