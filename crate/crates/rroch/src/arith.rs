//! Exact scalar domains: arbitrary-precision rationals and the ring of
//! integer-valued polynomials in `t0`.
//!
//! Invariants:
//! - `Rational` is always stored reduced with a positive denominator
//!   (guaranteed by the backing big-rational type).
//! - `IVPoly` is stored in the monomial basis with rational coefficients
//!   and no trailing zero coefficients; integrality at the integers is
//!   checked on demand (`is_integer_valued`), not maintained structurally.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

/// An exact rational number with arbitrary-precision numerator and denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`; panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn add(&self, other: &Self) -> Self {
        Rational(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Rational(&self.0 - &other.0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Rational(&self.0 * &other.0)
    }

    /// Exact division; panics if `other` is zero.
    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero");
        Rational(&self.0 / &other.0)
    }

    pub fn neg(&self) -> Self {
        Rational(-&self.0)
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Returns the value as `i64` when it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        if !self.is_integer() {
            return None;
        }
        let n = self.0.to_integer();
        i64::try_from(n).ok()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

/// A rational-coefficient polynomial in the degree-0 symbol `t0`.
///
/// Coefficient `coeffs[k]` multiplies `t0^k`. The sequence carries no
/// trailing zeros; the zero polynomial has an empty sequence.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IVPoly {
    coeffs: Vec<Rational>,
}

impl IVPoly {
    pub fn zero() -> Self {
        IVPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IVPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = IVPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    /// The symbol `t0` itself.
    pub fn t0() -> Self {
        IVPoly {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = IVPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Returns the value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Returns the value as `i64` when the polynomial is a constant integer.
    pub fn as_integer(&self) -> Option<i64> {
        self.as_constant().and_then(|c| c.to_i64())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect();
        IVPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        IVPoly {
            coeffs: self.coeffs.iter().map(Rational::neg).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IVPoly::zero();
        }
        let mut coeffs =
            vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        IVPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        IVPoly::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Value of the polynomial at `t0 = m`.
    pub fn eval(&self, m: i64) -> Rational {
        let x = Rational::from_int(m);
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&x).add(c);
        }
        acc
    }

    /// Substitution `t0 -> t0 + c` for an integer shift `c`.
    pub fn shift(&self, c: i64) -> Self {
        // Horner in (t0 + c).
        let shift = IVPoly::from_coeffs(vec![Rational::from_int(c), Rational::one()]);
        let mut acc = IVPoly::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(&shift).add(&IVPoly::constant(a.clone()));
        }
        acc
    }

    /// The binomial coefficient polynomial `C(t0, k) = t0(t0-1)...(t0-k+1)/k!`.
    pub fn binomial(k: usize) -> Self {
        Self::binomial_of(&IVPoly::t0(), k)
    }

    /// `C(y, k)` for an arbitrary polynomial argument `y`.
    pub fn binomial_of(y: &IVPoly, k: usize) -> Self {
        let mut p = IVPoly::one();
        let mut fact = Rational::one();
        for i in 0..k {
            p = p.mul(&y.sub(&IVPoly::constant(Rational::from_int(i as i64))));
            fact = fact.mul(&Rational::from_int((i + 1) as i64));
        }
        p.scale(&Rational::one().div(&fact))
    }

    /// Coefficients in the binomial basis, `p = sum_k c_k * C(t0, k)`,
    /// computed by finite differences at 0..deg.
    pub fn binomial_coeffs(&self) -> Vec<Rational> {
        let d = if self.is_zero() { 0 } else { self.degree() };
        let mut values: Vec<Rational> = (0..=d as i64).map(|m| self.eval(m)).collect();
        let mut out = Vec::with_capacity(values.len());
        for _ in 0..values.len() {
            out.push(values[0].clone());
            for i in 0..values.len() - 1 {
                values[i] = values[i + 1].sub(&values[i]);
            }
            values.pop();
        }
        out
    }

    /// Integrality at all integers, by the finite-difference criterion:
    /// the binomial-basis coefficients are integers.
    pub fn is_integer_valued(&self) -> bool {
        self.binomial_coeffs().iter().all(Rational::is_integer)
    }

    /// Exact polynomial division; `None` when the division leaves a remainder.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IVPoly::zero());
        }
        if self.coeffs.len() < other.coeffs.len() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dlen = other.coeffs.len();
        let lead = other.coeffs.last().unwrap();
        let mut quot = vec![Rational::zero(); rem.len() - dlen + 1];
        for qi in (0..quot.len()).rev() {
            let c = rem[qi + dlen - 1].div(lead);
            if !c.is_zero() {
                for (j, b) in other.coeffs.iter().enumerate() {
                    rem[qi + j] = rem[qi + j].sub(&c.mul(b));
                }
            }
            quot[qi] = c;
        }
        if rem.iter().all(Rational::is_zero) {
            Some(IVPoly::from_coeffs(quot))
        } else {
            None
        }
    }
}

impl fmt::Display for IVPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag} ")?;
                    }
                    if k == 1 {
                        write!(f, "t0")?;
                    } else {
                        write!(f, "t0^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IVPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Ring operations shared by the sanctioned series coefficient domains.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;
    /// Embeds a polynomial in `t0`; `None` when the domain has no symbol `t0`
    /// and the polynomial is not constant.
    fn from_t0_poly(p: &IVPoly) -> Option<Self>;
    /// Exact division; `None` when not exactly divisible in the domain.
    fn div_exact(&self, other: &Self) -> Option<Self>;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        Rational::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Rational::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Rational::mul(self, other)
    }
    fn neg(&self) -> Self {
        Rational::neg(self)
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn from_t0_poly(p: &IVPoly) -> Option<Self> {
        p.as_constant()
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            None
        } else {
            Some(self.div(other))
        }
    }
}

impl Scalar for IVPoly {
    fn zero() -> Self {
        IVPoly::zero()
    }
    fn one() -> Self {
        IVPoly::one()
    }
    fn is_zero(&self) -> bool {
        IVPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        IVPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        IVPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        IVPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        IVPoly::neg(self)
    }
    fn from_rational(q: &Rational) -> Self {
        IVPoly::constant(q.clone())
    }
    fn from_t0_poly(p: &IVPoly) -> Option<Self> {
        Some(p.clone())
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        IVPoly::div_exact(self, other)
    }
}
