//! Integer Laurent polynomials in one variable and the Alexander polynomials
//! of torus knots and their cables.
//!
//! Coefficients are generic over [`Coefficient`]; the crate root fixes
//! [`crate::AlexanderPoly`] to arbitrary-precision integers so products of
//! cable polynomials can never overflow.

use std::cmp::{max, min};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Ring of coefficients a [`LaurentPoly`] can be built over.
pub trait Coefficient: Clone + fmt::Debug + fmt::Display + Integer + Signed {}

impl<T> Coefficient for T where T: Clone + fmt::Debug + fmt::Display + Integer + Signed {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("torus knot parameters ({p}, {q}) must both be at least 2")]
    TorusTooSmall { p: u64, q: u64 },
    #[error("torus knot parameters ({p}, {q}) are not coprime")]
    NotCoprime { p: u64, q: u64 },
    #[error("substitution power must be positive")]
    ZeroPower,
    #[error("polynomial division is not exact")]
    InexactDivision,
}

/// `Σ coeffs[k] · t^(min_exp + k)`, stored with nonzero first and last
/// coefficient (or no coefficients at all for the zero polynomial).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<T> {
    min_exp: i64,
    coeffs: Vec<T>,
}

impl<T: Coefficient> LaurentPoly<T> {
    pub fn new(min_exp: i64, coeffs: Vec<T>) -> Self {
        let mut p = LaurentPoly { min_exp, coeffs };
        p.normalize();
        p
    }

    pub fn zero() -> Self {
        LaurentPoly {
            min_exp: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(T::one(), 0)
    }

    pub fn monomial(c: T, exp: i64) -> Self {
        Self::new(exp, vec![c])
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, T)>>(terms: I) -> Self {
        let terms: Vec<(i64, T)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|(e, _)| *e).min().unwrap();
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![T::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = slot.clone() + c;
        }
        Self::new(lo, coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.min_exp = 0;
            return;
        }
        self.coeffs.drain(..lead);
        self.min_exp += lead as i64;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    /// Largest exponent with a nonzero coefficient. `None` for zero.
    pub fn max_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_exp + self.coeffs.len() as i64 - 1)
        }
    }

    /// Breadth `max_exp - min_exp`; zero for constants and the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len().saturating_sub(1) as i64
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> T {
        let k = exp - self.min_exp;
        if k < 0 || k >= self.coeffs.len() as i64 {
            T::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.min_exp + k as i64, c))
    }

    /// Multiplies by `t^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        LaurentPoly {
            min_exp: self.min_exp + shift,
            coeffs: self.coeffs.clone(),
        }
    }

    /// `f(t^m)`.
    pub fn substitute_power(&self, m: u32) -> Result<Self, LaurentError> {
        if m == 0 {
            return Err(LaurentError::ZeroPower);
        }
        let m = m as i64;
        Ok(Self::from_terms(
            self.terms().map(|(e, c)| (e * m, c.clone())),
        ))
    }

    /// `f(t^{-1})`.
    pub fn invert_variable(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (-e, c.clone())))
    }

    /// Storage form for Alexander polynomials: lowest exponent 0 and a
    /// positive constant term.
    pub fn normalized_alexander(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = self.shift(-self.min_exp);
        if out.coeffs[0].is_negative() {
            out = -out;
        }
        out
    }

    /// Coefficients are palindromic: `coeff(min + k) == coeff(max - k)`.
    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// Symmetrized view centered on exponent zero. `None` when the breadth
    /// is odd, since no integer shift centers such a polynomial.
    pub fn centered(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let d = self.degree();
        if d % 2 != 0 {
            return None;
        }
        Some(self.shift(-self.min_exp - d / 2))
    }

    /// Exact long division. Fails unless `divisor` divides `self` with zero
    /// remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, LaurentError> {
        if divisor.is_zero() {
            return Err(LaurentError::InexactDivision);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let lead = divisor.coeffs.last().unwrap().clone();
        let dlen = divisor.coeffs.len();
        let mut rem = self.coeffs.clone();
        if rem.len() < dlen {
            return Err(LaurentError::InexactDivision);
        }
        let qlen = rem.len() - dlen + 1;
        let mut quot = vec![T::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = rem[k + dlen - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return Err(LaurentError::InexactDivision);
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - q.clone() * d.clone();
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(LaurentError::InexactDivision);
        }
        Ok(Self::new(self.min_exp - divisor.min_exp, quot))
    }
}

impl<T: Coefficient> Zero for LaurentPoly<T> {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Coefficient> One for LaurentPoly<T> {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl<T: Coefficient> Add for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn add(self, rhs: Self) -> LaurentPoly<T> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = min(self.min_exp, rhs.min_exp);
        let hi = max(self.max_exp().unwrap(), rhs.max_exp().unwrap());
        let coeffs = (lo..=hi).map(|e| self.coeff(e) + rhs.coeff(e)).collect();
        LaurentPoly::new(lo, coeffs)
    }
}

impl<T: Coefficient> Add for LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn add(self, rhs: Self) -> LaurentPoly<T> {
        &self + &rhs
    }
}

impl<T: Coefficient> Neg for LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn neg(self) -> LaurentPoly<T> {
        LaurentPoly {
            min_exp: self.min_exp,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<T: Coefficient> Sub for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn sub(self, rhs: Self) -> LaurentPoly<T> {
        self + &(-rhs.clone())
    }
}

impl<T: Coefficient> Sub for LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn sub(self, rhs: Self) -> LaurentPoly<T> {
        &self - &rhs
    }
}

impl<T: Coefficient> Mul for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn mul(self, rhs: Self) -> LaurentPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        LaurentPoly::new(self.min_exp + rhs.min_exp, coeffs)
    }
}

impl<T: Coefficient> Mul for LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn mul(self, rhs: Self) -> LaurentPoly<T> {
        &self * &rhs
    }
}

impl<T: Coefficient> fmt::Debug for LaurentPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl<T: Coefficient> fmt::Display for LaurentPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = mag.is_one();
            match e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "t")?,
                1 => write!(f, "{mag}t")?,
                _ if unit => write!(f, "t^{e}")?,
                _ => write!(f, "{mag}t^{e}")?,
            }
        }
        Ok(())
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `t^n - 1` as a polynomial.
fn t_pow_minus_one<T: Coefficient>(n: u64) -> LaurentPoly<T> {
    LaurentPoly::from_terms([(n as i64, T::one()), (0, -T::one())])
}

/// Alexander polynomial of the `(p, q)` torus knot, computed as the exact
/// quotient `(t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1))`.
pub fn torus_alexander<T: Coefficient>(p: u64, q: u64) -> Result<LaurentPoly<T>, LaurentError> {
    if p < 2 || q < 2 {
        return Err(LaurentError::TorusTooSmall { p, q });
    }
    if gcd_u64(p, q) != 1 {
        return Err(LaurentError::NotCoprime { p, q });
    }
    let num = &t_pow_minus_one::<T>(p * q) * &t_pow_minus_one(1);
    let den = &t_pow_minus_one::<T>(p) * &t_pow_minus_one(q);
    let quot = num.div_exact(&den)?;
    Ok(quot.normalized_alexander())
}

/// Alexander polynomial of the `(p, q)` cable of a knot with Alexander
/// polynomial `base`: `base(t^p) · Δ_{T(p,q)}(t)`.
pub fn cable_alexander<T: Coefficient>(
    base: &LaurentPoly<T>,
    p: u64,
    q: u64,
) -> Result<LaurentPoly<T>, LaurentError> {
    let pattern = torus_alexander::<T>(p, q)?;
    let p32 = u32::try_from(p).map_err(|_| LaurentError::TorusTooSmall { p, q })?;
    let companion = base.substitute_power(p32)?;
    Ok((&companion * &pattern).normalized_alexander())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = LaurentPoly<BigInt>;

    fn poly(exps: &[(i64, i64)]) -> P {
        P::from_terms(exps.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    fn alternating(exps: &[i64]) -> P {
        P::from_terms(
            exps.iter()
                .enumerate()
                .map(|(k, &e)| (e, BigInt::from(if k % 2 == 0 { 1 } else { -1 }))),
        )
    }

    #[test]
    fn normalization_strips_zeros() {
        let p = P::new(-2, vec![0.into(), 0.into(), 3.into(), 0.into()]);
        assert_eq!(p.min_exp(), 0);
        assert_eq!(p.coeffs(), &[BigInt::from(3)]);
        assert!(P::new(4, vec![0.into()]).is_zero());
    }

    #[test]
    fn trefoil_and_cinquefoil() {
        assert_eq!(
            torus_alexander::<BigInt>(2, 3).unwrap(),
            alternating(&[0, 1, 2])
        );
        assert_eq!(
            torus_alexander::<BigInt>(2, 5).unwrap(),
            alternating(&[0, 1, 2, 3, 4])
        );
        assert_eq!(
            torus_alexander::<BigInt>(3, 2).unwrap(),
            torus_alexander::<BigInt>(2, 3).unwrap()
        );
    }

    #[test]
    fn t45() {
        assert_eq!(
            torus_alexander::<BigInt>(4, 5).unwrap(),
            alternating(&[0, 1, 4, 6, 8, 11, 12])
        );
    }

    #[test]
    fn torus_rejects_bad_parameters() {
        assert_eq!(
            torus_alexander::<i64>(2, 4),
            Err(LaurentError::NotCoprime { p: 2, q: 4 })
        );
        assert_eq!(
            torus_alexander::<i64>(1, 4),
            Err(LaurentError::TorusTooSmall { p: 1, q: 4 })
        );
    }

    #[test]
    fn substitution() {
        let f = torus_alexander::<BigInt>(2, 3).unwrap();
        assert_eq!(f.substitute_power(2).unwrap(), alternating(&[0, 2, 4]));
        assert_eq!(f.substitute_power(1).unwrap(), f);
        assert_eq!(f.substitute_power(0), Err(LaurentError::ZeroPower));
    }

    #[test]
    fn cable_of_trefoil() {
        // (1 - t^2 + t^4)(1 - t + t^2) expanded by hand
        let expected = poly(&[(0, 1), (1, -1), (3, 1), (5, -1), (6, 1)]);
        let f = torus_alexander::<BigInt>(2, 3).unwrap();
        assert_eq!(cable_alexander(&f, 2, 3).unwrap(), expected);
        assert_eq!(cable_alexander(&P::one(), 2, 3).unwrap(), f);
    }

    #[test]
    fn k2_from_closed_form() {
        // n = 2: p_2(t) = 1 - t + t^4 - t^5, degree 8n - 2 = 14.
        // p_2 + t^7 + t^14 p_2(1/t) = 1 - t + t^4 - t^5 + t^7 - t^9 + t^10 - t^13 + t^14
        let expected = alternating(&[0, 1, 4, 5, 7, 9, 10, 13, 14]);
        let base = torus_alexander::<BigInt>(2, 5).unwrap();
        let direct = &base.substitute_power(2).unwrap() * &torus_alexander::<BigInt>(2, 7).unwrap();
        assert_eq!(direct, expected);
        assert_eq!(cable_alexander(&base, 2, 7).unwrap(), expected);
    }

    #[test]
    fn k3_display() {
        let base = torus_alexander::<BigInt>(2, 7).unwrap();
        let k3 = cable_alexander(&base, 2, 11).unwrap();
        assert_eq!(
            k3,
            alternating(&[0, 1, 4, 5, 8, 9, 11, 13, 14, 17, 18, 21, 22])
        );
        assert_eq!(
            k3.to_string(),
            "1 - t + t^4 - t^5 + t^8 - t^9 + t^11 - t^13 + t^14 - t^17 + t^18 - t^21 + t^22"
        );
    }

    #[test]
    fn division() {
        let a = torus_alexander::<BigInt>(2, 3).unwrap();
        let b = poly(&[(-1, 2), (3, -1)]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert_eq!(
            poly(&[(0, 1), (1, 1)]).div_exact(&poly(&[(0, 2)])),
            Err(LaurentError::InexactDivision)
        );
        assert_eq!(
            a.div_exact(&poly(&[(0, 1), (1, 1)])),
            Err(LaurentError::InexactDivision)
        );
    }

    #[test]
    fn centered_view() {
        let f = torus_alexander::<BigInt>(2, 5).unwrap();
        let c = f.centered().unwrap();
        assert_eq!(c.min_exp(), -2);
        assert_eq!(c.max_exp(), Some(2));
        assert!(poly(&[(0, 1), (1, 1)]).centered().is_none());
    }

    #[test]
    fn generic_over_machine_integers() {
        let f = torus_alexander::<i64>(3, 7).unwrap();
        let g = torus_alexander::<BigInt>(3, 7).unwrap();
        let as_big: Vec<BigInt> = f.coeffs().iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(as_big, g.coeffs());
    }

    #[test]
    fn display() {
        assert_eq!(
            poly(&[(0, 2), (1, -1), (3, -3)]).to_string(),
            "2 - t - 3t^3"
        );
        assert_eq!(P::zero().to_string(), "0");
        assert_eq!(poly(&[(-2, -1)]).to_string(), "-t^-2");
    }
}
