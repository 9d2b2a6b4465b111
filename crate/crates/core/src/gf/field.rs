//! Arithmetic for a single level of the field tower.
//!
//! Every element is an integer code in `0..order`. A level of degree `k` over
//! its subfield of order `s` encodes the polynomial `c_0 + c_1 x + ... +
//! c_{k-1} x^{k-1}` as `c_0 + c_1 s + ... + c_{k-1} s^{k-1}`, where each `c_j`
//! is itself a code in the subfield. Nesting the encodings this way makes
//! every code a base-`p` digit string, so addition is digit-wise mod `p` at
//! every level and a subfield element keeps its code when embedded upward.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::poly;
use super::GfError;

/// Fields at or below this order get log/antilog tables.
pub const TABLE_CAP: u64 = 1 << 16;

/// Position of a field inside the tower `F_p ⊂ F_q ⊂ F_{q'}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Prime,
    Base,
    Extension,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Level::Prime => "prime",
            Level::Base => "base",
            Level::Extension => "extension",
        };
        f.write_str(s)
    }
}

enum MulStrategy {
    Prime,
    Table {
        log: Vec<u32>,
        exp: Vec<u64>,
    },
    /// Direct extension of F_2; `modulus` holds all coefficient bits.
    Binary {
        modulus: u64,
    },
    Generic,
}

/// One finite field of the tower.
pub struct Gf {
    level: Level,
    p: u64,
    order: u64,
    prime_degree: usize,
    degree: usize,
    sub: Option<Arc<Gf>>,
    modulus: Vec<u64>,
    strategy: MulStrategy,
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) [{}]", self.p, self.prime_degree, self.level)
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        if std::ptr::eq(self, other) {
            return true;
        }
        self.level == other.level
            && self.p == other.p
            && self.order == other.order
            && self.modulus == other.modulus
            && match (&self.sub, &other.sub) {
                (None, None) => true,
                (Some(a), Some(b)) => **a == **b,
                _ => false,
            }
    }
}

impl Eq for Gf {}

impl Gf {
    /// The prime field `F_p`. `p` must already be known to be prime.
    pub(crate) fn prime(p: u64) -> Gf {
        Gf {
            level: Level::Prime,
            p,
            order: p,
            prime_degree: 1,
            degree: 1,
            sub: None,
            modulus: Vec::new(),
            strategy: MulStrategy::Prime,
        }
    }

    /// Extension of `sub` by a monic irreducible `modulus` (lowest degree first).
    pub(crate) fn extension(level: Level, sub: Arc<Gf>, modulus: Vec<u64>) -> Result<Gf, GfError> {
        let degree = modulus.len().saturating_sub(1);
        if degree == 0 {
            return Err(GfError::BadPolynomial("degree must be at least 1".into()));
        }
        let order = sub
            .order
            .checked_pow(degree as u32)
            .ok_or(GfError::FieldTooLarge { p: sub.p, degree: sub.prime_degree * degree })?;
        let mut gf = Gf {
            level,
            p: sub.p,
            order,
            prime_degree: sub.prime_degree * degree,
            degree,
            sub: Some(sub),
            modulus,
            strategy: MulStrategy::Generic,
        };
        gf.strategy = gf.pick_strategy();
        Ok(gf)
    }

    fn pick_strategy(&self) -> MulStrategy {
        let sub = self.sub.as_ref().expect("extension has a subfield");
        if self.order <= TABLE_CAP {
            return self.build_tables();
        }
        if self.p == 2 && sub.order == 2 && self.degree < 64 {
            let modulus = self.modulus.iter().enumerate().fold(0u64, |acc, (i, &c)| acc | (c << i));
            return MulStrategy::Binary { modulus };
        }
        MulStrategy::Generic
    }

    fn build_tables(&self) -> MulStrategy {
        let n1 = self.order - 1;
        if n1 == 0 {
            return MulStrategy::Generic;
        }
        let factors = poly::prime_factors(n1);
        let generator = (1..self.order)
            .find(|&g| factors.iter().all(|&r| self.pow_generic(g, n1 / r) != 1))
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u64; 2 * n1 as usize];
        let mut log = vec![0u32; self.order as usize];
        let mut x = 1u64;
        for i in 0..n1 as usize {
            exp[i] = x;
            exp[i + n1 as usize] = x;
            log[x as usize] = i as u32;
            x = self.mul_generic(x, generator);
        }
        MulStrategy::Table { log, exp }
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Degree over `F_p`.
    pub fn prime_degree(&self) -> usize {
        self.prime_degree
    }

    /// Degree over the next-lower field of the tower (1 for the prime field).
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn subfield(&self) -> Option<&Arc<Gf>> {
        self.sub.as_ref()
    }

    /// Monic modulus over the subfield, lowest degree first. Empty for `F_p`.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// True when `other` is this field or sits below it in the tower.
    pub fn contains_field(&self, other: &Gf) -> bool {
        let mut cur = Some(self);
        while let Some(f) = cur {
            if f == other {
                return true;
            }
            cur = f.sub.as_deref();
        }
        false
    }

    #[inline]
    pub fn contains(&self, code: u64) -> bool {
        code < self.order
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.prime_degree == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.prime_degree {
            let mut d = a % self.p + b % self.p;
            if d >= self.p {
                d -= self.p;
            }
            out += d * place;
            a /= self.p;
            b /= self.p;
            place = place.wrapping_mul(self.p);
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        if self.prime_degree == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let mut a = a;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.prime_degree {
            let d = a % self.p;
            if d != 0 {
                out += (self.p - d) * place;
            }
            a /= self.p;
            place = place.wrapping_mul(self.p);
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.strategy {
            MulStrategy::Prime => ((a as u128 * b as u128) % self.p as u128) as u64,
            MulStrategy::Table { log, exp } => exp[log[a as usize] as usize + log[b as usize] as usize],
            MulStrategy::Binary { modulus } => binary_mul(a, b, self.degree, *modulus),
            MulStrategy::Generic => self.mul_generic(a, b),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        Some(match &self.strategy {
            MulStrategy::Table { log, exp } => {
                let n1 = self.order as usize - 1;
                exp[(n1 - log[a as usize] as usize) % n1]
            }
            _ => self.pow(a, self.order - 2),
        })
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.random_range(0..self.order)
    }

    /// Absolute trace to `F_p`: `x + x^p + ... + x^{p^{d-1}}`.
    pub fn trace(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        let mut conj = x;
        for _ in 0..self.prime_degree {
            acc = self.add(acc, conj);
            conj = self.pow(conj, self.p);
        }
        debug_assert!(acc < self.p, "trace must land in the prime field");
        acc
    }

    /// Coefficients over the subfield, lowest power first.
    pub fn digits(&self, code: u64) -> Vec<u64> {
        match &self.sub {
            None => vec![code],
            Some(sub) => {
                let mut c = code;
                (0..self.degree)
                    .map(|_| {
                        let d = c % sub.order;
                        c /= sub.order;
                        d
                    })
                    .collect()
            }
        }
    }

    /// Inverse of [`Gf::digits`]. Digits must be codes of the subfield.
    pub fn from_digits(&self, digits: &[u64]) -> Result<u64, GfError> {
        let s = self.sub.as_ref().map_or(self.p, |s| s.order);
        if digits.len() != self.degree {
            return Err(GfError::LengthMismatch { expected: self.degree, got: digits.len() });
        }
        let mut code = 0u64;
        for &d in digits.iter().rev() {
            if d >= s {
                return Err(GfError::NotInField { code: d, order: s });
            }
            code = code * s + d;
        }
        Ok(code)
    }

    fn pow_generic(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_generic(acc, base);
            }
            base = self.mul_generic(base, base);
            e >>= 1;
        }
        acc
    }

    fn mul_generic(&self, a: u64, b: u64) -> u64 {
        let sub = match &self.sub {
            Some(s) => s,
            None => return ((a as u128 * b as u128) % self.p as u128) as u64,
        };
        let k = self.degree;
        let s = sub.order;
        let mut ad = [0u64; 64];
        let mut bd = [0u64; 64];
        let (mut x, mut y) = (a, b);
        for i in 0..k {
            ad[i] = x % s;
            bd[i] = y % s;
            x /= s;
            y /= s;
        }
        let mut prod = [0u64; 128];
        for i in 0..k {
            if ad[i] == 0 {
                continue;
            }
            for j in 0..k {
                if bd[j] != 0 {
                    prod[i + j] = sub.add(prod[i + j], sub.mul(ad[i], bd[j]));
                }
            }
        }
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for j in 0..k {
                let t = sub.mul(c, self.modulus[j]);
                prod[d - k + j] = sub.sub(prod[d - k + j], t);
            }
            prod[d] = 0;
        }
        prod[..k].iter().rev().fold(0u64, |acc, &d| acc * s + d)
    }
}

#[inline]
fn binary_mul(a: u64, b: u64, degree: usize, modulus: u64) -> u64 {
    let top = 1u64 << degree;
    let mut r = 0u64;
    for i in (0..degree).rev() {
        r <<= 1;
        if r & top != 0 {
            r ^= modulus;
        }
        if (b >> i) & 1 == 1 {
            r ^= a;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2_ext(modulus: Vec<u64>) -> Gf {
        let f2 = Arc::new(Gf::prime(2));
        Gf::extension(Level::Base, f2, modulus).unwrap()
    }

    #[test]
    fn binary_and_generic_agree() {
        // x^4 + x + 1 over F_2
        let gf = f2_ext(vec![1, 1, 0, 0, 1]);
        let modulus = 0b10011;
        for a in 0..16 {
            for b in 0..16 {
                assert_eq!(binary_mul(a, b, 4, modulus), gf.mul_generic(a, b), "{a}*{b}");
                assert_eq!(gf.mul(a, b), gf.mul_generic(a, b));
            }
        }
    }

    #[test]
    fn f4_by_hand() {
        let gf = f2_ext(vec![1, 1, 1]);
        // x * x = x + 1
        assert_eq!(gf.mul(0b10, 0b10), 0b11);
        assert_eq!(gf.inv(0b10), Some(0b11));
        assert_eq!(gf.inv(0), None);
    }

    #[test]
    fn odd_characteristic_digitwise_add() {
        let f3 = Arc::new(Gf::prime(3));
        // x^2 + 1 is irreducible over F_3
        let f9 = Gf::extension(Level::Base, f3, vec![1, 0, 1]).unwrap();
        // (2 + x) + (2 + 2x) = 1 + 0x  -> codes 2+3=5, 2+6=8, result 1
        assert_eq!(f9.add(5, 8), 1);
        assert_eq!(f9.neg(5), 1 + 2 * 3);
        for a in 0..9 {
            assert_eq!(f9.add(a, f9.neg(a)), 0);
        }
    }
}
