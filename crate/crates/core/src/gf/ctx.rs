use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::field::{Gf, Level};
use super::poly;
use super::GfError;

/// Default cap on the number of elements [`FieldCtx::enumerate`] will produce.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 16;

/// Serialized form of a field tower, as it appears in network files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    #[serde(default = "one")]
    pub t: usize,
    #[serde(default = "one")]
    pub alpha: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_poly: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ext_poly: Option<Vec<u64>>,
}

fn one() -> usize {
    1
}

/// An element tagged with its tower level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElem {
    pub level: Level,
    pub code: u64,
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.code, self.level)
    }
}

/// The tower `F_p ⊂ F_q ⊂ F_{q'}`. Immutable and cheap to clone.
#[derive(Clone)]
pub struct FieldCtx {
    t: usize,
    alpha: usize,
    prime: Arc<Gf>,
    base: Arc<Gf>,
    ext: Arc<Gf>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FieldCtx(p={}, t={}, alpha={}, base_poly={:?}, ext_poly={:?})",
            self.p(),
            self.t,
            self.alpha,
            self.base_poly(),
            self.ext_poly()
        )
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        *self.ext == *other.ext
    }
}

impl FieldCtx {
    /// Builds the tower with the smallest irreducible moduli.
    pub fn new(p: u64, t: usize, alpha: usize) -> Result<Self, GfError> {
        Self::with_polys(p, t, alpha, None, None)
    }

    pub fn with_polys(
        p: u64,
        t: usize,
        alpha: usize,
        base_poly: Option<&[u64]>,
        ext_poly: Option<&[u64]>,
    ) -> Result<Self, GfError> {
        if t == 0 || alpha == 0 {
            return Err(GfError::ZeroDegree { t, alpha });
        }
        if p > 1 << 61 {
            return Err(GfError::PrimeTooLarge(p));
        }
        if !poly::is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        let prime = Arc::new(Gf::prime(p));
        let base = Arc::new(Self::level_over(Level::Base, &prime, t, base_poly)?);
        let ext = Arc::new(Self::level_over(Level::Extension, &base, alpha, ext_poly)?);
        Ok(FieldCtx { t, alpha, prime, base, ext })
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self, GfError> {
        Self::with_polys(spec.p, spec.t, spec.alpha, spec.base_poly.as_deref(), spec.ext_poly.as_deref())
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p(),
            t: self.t,
            alpha: self.alpha,
            base_poly: Some(self.base_poly().to_vec()),
            ext_poly: Some(self.ext_poly().to_vec()),
        }
    }

    /// Same `F_p ⊂ F_q`, new extension degree. Matrices over the base level
    /// of `self` remain valid over the base level of the result.
    pub fn with_alpha(&self, alpha: usize) -> Result<Self, GfError> {
        self.with_alpha_poly(alpha, None)
    }

    pub fn with_alpha_poly(&self, alpha: usize, ext_poly: Option<&[u64]>) -> Result<Self, GfError> {
        if alpha == 0 {
            return Err(GfError::ZeroDegree { t: self.t, alpha });
        }
        let ext = Arc::new(Self::level_over(Level::Extension, &self.base, alpha, ext_poly)?);
        Ok(FieldCtx { t: self.t, alpha, prime: self.prime.clone(), base: self.base.clone(), ext })
    }

    fn level_over(level: Level, sub: &Arc<Gf>, degree: usize, given: Option<&[u64]>) -> Result<Gf, GfError> {
        // order check before any search, so oversized towers fail fast
        sub.order()
            .checked_pow(degree as u32)
            .ok_or(GfError::FieldTooLarge { p: sub.characteristic(), degree: sub.prime_degree() * degree })?;
        let modulus = match given {
            Some(m) => {
                if m.len() != degree + 1 {
                    return Err(GfError::BadPolynomial(format!(
                        "expected degree {degree}, got {} coefficients",
                        m.len()
                    )));
                }
                if m[degree] != 1 {
                    return Err(GfError::BadPolynomial("polynomial must be monic".into()));
                }
                if let Some(&bad) = m.iter().find(|&&c| !sub.contains(c)) {
                    return Err(GfError::NotInField { code: bad, order: sub.order() });
                }
                if !poly::is_irreducible(sub, m) {
                    return Err(GfError::NotIrreducible(m.to_vec()));
                }
                m.to_vec()
            }
            None => poly::smallest_irreducible(sub, degree),
        };
        Gf::extension(level, sub.clone(), modulus)
    }

    pub fn p(&self) -> u64 {
        self.prime.order()
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    /// `q = p^t`.
    pub fn q(&self) -> u64 {
        self.base.order()
    }

    /// `q' = q^alpha`.
    pub fn q_prime(&self) -> u64 {
        self.ext.order()
    }

    pub fn base_poly(&self) -> &[u64] {
        self.base.modulus()
    }

    pub fn ext_poly(&self) -> &[u64] {
        self.ext.modulus()
    }

    pub fn field(&self, level: Level) -> &Arc<Gf> {
        match level {
            Level::Prime => &self.prime,
            Level::Base => &self.base,
            Level::Extension => &self.ext,
        }
    }

    pub fn prime(&self) -> &Arc<Gf> {
        &self.prime
    }

    pub fn base(&self) -> &Arc<Gf> {
        &self.base
    }

    pub fn ext(&self) -> &Arc<Gf> {
        &self.ext
    }

    pub fn elem(&self, level: Level, code: u64) -> Result<FieldElem, GfError> {
        let f = self.field(level);
        if !f.contains(code) {
            return Err(GfError::NotInField { code, order: f.order() });
        }
        Ok(FieldElem { level, code })
    }

    /// Element from its coefficient vector over the next-lower level.
    pub fn elem_from_coeffs(&self, level: Level, coeffs: &[u64]) -> Result<FieldElem, GfError> {
        let code = self.field(level).from_digits(coeffs)?;
        Ok(FieldElem { level, code })
    }

    pub fn coeffs(&self, x: FieldElem) -> Vec<u64> {
        self.field(x.level).digits(x.code)
    }

    fn same_level(a: FieldElem, b: FieldElem) -> Result<Level, GfError> {
        if a.level != b.level {
            return Err(GfError::LevelMismatch { left: a.level, right: b.level });
        }
        Ok(a.level)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, GfError> {
        let level = Self::same_level(a, b)?;
        Ok(FieldElem { level, code: self.field(level).add(a.code, b.code) })
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, GfError> {
        let level = Self::same_level(a, b)?;
        Ok(FieldElem { level, code: self.field(level).sub(a.code, b.code) })
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, GfError> {
        let level = Self::same_level(a, b)?;
        Ok(FieldElem { level, code: self.field(level).mul(a.code, b.code) })
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, GfError> {
        let binv = self.inv(b)?;
        self.mul(a, binv)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem { level: a.level, code: self.field(a.level).neg(a.code) }
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, GfError> {
        let code = self.field(a.level).inv(a.code).ok_or(GfError::DivisionByZero)?;
        Ok(FieldElem { level: a.level, code })
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        FieldElem { level: a.level, code: self.field(a.level).pow(a.code, e) }
    }

    /// Moves an element up the tower. Codes are preserved by construction.
    pub fn embed(&self, a: FieldElem, to: Level) -> Result<FieldElem, GfError> {
        if (to as u8) < (a.level as u8) {
            return Err(GfError::LevelMismatch { left: a.level, right: to });
        }
        Ok(FieldElem { level: to, code: a.code })
    }

    /// Trace of an `F_q` element down to `F_p`.
    pub fn trace(&self, x: FieldElem) -> Result<FieldElem, GfError> {
        if x.level != Level::Base {
            return Err(GfError::LevelMismatch { left: x.level, right: Level::Base });
        }
        Ok(FieldElem { level: Level::Prime, code: self.base.trace(x.code) })
    }

    /// Groups consecutive `alpha`-tuples of `F_q` codes into `F_{q'}` codes;
    /// entry `j` of a tuple is the coefficient of `x^j`.
    pub fn lift(&self, v: &[u64]) -> Result<Vec<u64>, GfError> {
        if !v.len().is_multiple_of(self.alpha) {
            return Err(GfError::LengthNotDivisible { len: v.len(), alpha: self.alpha });
        }
        v.chunks(self.alpha).map(|c| self.ext.from_digits(c)).collect()
    }

    pub fn flatten(&self, v: &[u64]) -> Vec<u64> {
        v.iter().flat_map(|&x| self.ext.digits(x)).collect()
    }

    /// All elements of a level, in increasing code order (lexicographic on the
    /// coefficient vector read from the highest power down).
    pub fn enumerate(&self, level: Level, cap: u64) -> Result<Vec<FieldElem>, GfError> {
        let order = self.field(level).order();
        if order > cap {
            return Err(GfError::EnumerationCap { order, cap });
        }
        Ok((0..order).map(|code| FieldElem { level, code }).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn e(level: Level, code: u64) -> FieldElem {
        FieldElem { level, code }
    }

    #[test]
    fn small_examples() {
        let f2 = FieldCtx::new(2, 1, 1).unwrap();
        let one = e(Level::Base, 1);
        assert_eq!(f2.add(one, one).unwrap().code, 0);

        let f3 = FieldCtx::new(3, 1, 1).unwrap();
        assert_eq!(f3.inv(e(Level::Base, 2)).unwrap().code, 2);

        let f4 = FieldCtx::new(2, 2, 1).unwrap();
        assert_eq!(f4.base_poly(), &[1, 1, 1]);
        let x = f4.elem_from_coeffs(Level::Base, &[0, 1]).unwrap();
        let xx = f4.mul(x, x).unwrap();
        assert_eq!(f4.coeffs(xx), vec![1, 1]);
    }

    #[test]
    fn errors() {
        let f = FieldCtx::new(3, 1, 2).unwrap();
        assert_eq!(f.inv(e(Level::Base, 0)), Err(GfError::DivisionByZero));
        assert!(matches!(f.add(e(Level::Base, 1), e(Level::Extension, 1)), Err(GfError::LevelMismatch { .. })));
        assert_eq!(FieldCtx::new(4, 1, 1).unwrap_err(), GfError::NotPrime(4));
        assert!(matches!(FieldCtx::with_polys(2, 2, 1, Some(&[1, 0, 1]), None), Err(GfError::NotIrreducible(_))));
        assert!(matches!(f.lift(&[1, 2, 0]), Err(GfError::LengthNotDivisible { .. })));
        assert!(matches!(FieldCtx::new(2, 1, 70), Err(GfError::FieldTooLarge { .. })));
    }

    #[test]
    fn trace_values() {
        let f2 = FieldCtx::new(2, 1, 1).unwrap();
        let f5 = FieldCtx::new(5, 1, 1).unwrap();
        for x in 0..5 {
            assert_eq!(f5.trace(e(Level::Base, x)).unwrap().code, x);
        }
        assert_eq!(f2.trace(e(Level::Base, 1)).unwrap().code, 1);

        let f4 = FieldCtx::new(2, 2, 1).unwrap();
        let tr = |c| f4.trace(e(Level::Base, c)).unwrap().code;
        assert_eq!(tr(0), 0);
        assert_eq!(tr(1), 0);
        assert_eq!(tr(0b10), 1);
        assert!(f4.trace(e(Level::Extension, 1)).is_err());
    }

    #[test]
    fn lift_flatten() {
        let f = FieldCtx::new(2, 1, 1).unwrap();
        assert_eq!(f.lift(&[1, 0, 1]).unwrap(), vec![1, 0, 1]);

        let f = FieldCtx::new(2, 1, 2).unwrap();
        let lifted = f.lift(&[1, 0]).unwrap();
        assert_eq!(f.coeffs(e(Level::Extension, lifted[0])), vec![1, 0]);

        let f = FieldCtx::new(3, 2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let v: Vec<u64> = (0..12).map(|_| rng.random_range(0..9)).collect();
            assert_eq!(f.flatten(&f.lift(&v).unwrap()), v);
        }
    }

    #[test]
    fn enumeration() {
        let f2 = FieldCtx::new(2, 1, 1).unwrap();
        let codes: Vec<u64> = f2.enumerate(Level::Base, DEFAULT_ENUM_CAP).unwrap().iter().map(|x| x.code).collect();
        assert_eq!(codes, vec![0, 1]);
        let f3 = FieldCtx::new(3, 1, 1).unwrap();
        assert_eq!(f3.enumerate(Level::Base, DEFAULT_ENUM_CAP).unwrap().len(), 3);
        let f9 = FieldCtx::new(3, 2, 1).unwrap();
        assert_eq!(f9.enumerate(Level::Base, DEFAULT_ENUM_CAP).unwrap().len(), 9);
        let big = FieldCtx::new(2, 1, 20).unwrap();
        assert!(matches!(big.enumerate(Level::Extension, DEFAULT_ENUM_CAP), Err(GfError::EnumerationCap { .. })));
    }

    #[test]
    fn with_alpha_shares_base() {
        let f = FieldCtx::new(3, 1, 1).unwrap();
        let g = f.with_alpha(4).unwrap();
        assert!(Arc::ptr_eq(f.base(), g.base()));
        assert_eq!(g.q_prime(), 81);
        assert!(g.ext().contains_field(f.base()));
    }
}
