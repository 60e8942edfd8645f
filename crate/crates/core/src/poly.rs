//! Integer Laurent polynomials, ordinary integer polynomials, cyclotomic
//! polynomials and resultants.
//!
//! A [`LaurentPoly`] stores a contiguous coefficient window starting at
//! `min_deg`; both ends of the window are nonzero unless the polynomial is
//! zero, in which case `min_deg = 0` and the window is empty. Every
//! constructor trims, so structural equality is mathematical equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::json::IntRepr;
use crate::linalg::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("no unit multiple of {0} is palindromic")]
    NotSymmetrizable(String),
    #[error("{0} does not evaluate to +-1 at t = 1")]
    NotAKnotPolynomial(String),
    #[error("Laurent polynomial with negative powers evaluated at 0")]
    ZeroArgument,
    #[error("syntax error in polynomial text: {0}")]
    Syntax(String),
}

/// Integer Laurent polynomial `sum coeffs[i] * t^(min_deg + i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    min_deg: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn new(min_deg: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { min_deg, coeffs };
        p.trim();
        p
    }

    pub fn from_ints(min_deg: i64, coeffs: &[i64]) -> Self {
        Self::new(min_deg, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        LaurentPoly { min_deg: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(0, vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: BigInt, k: i64) -> Self {
        Self::new(k, vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    fn trim(&mut self) {
        let trailing = self.coeffs.iter().rev().take_while(|c| c.is_zero()).count();
        self.coeffs.truncate(self.coeffs.len() - trailing);
        let leading = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if leading == self.coeffs.len() {
            self.coeffs.clear();
            self.min_deg = 0;
            return;
        }
        self.coeffs.drain(..leading);
        self.min_deg += leading as i64;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_deg(&self) -> i64 {
        self.min_deg
    }

    /// Highest exponent; equals `min_deg - 1` for the zero polynomial.
    pub fn max_deg(&self) -> i64 {
        self.min_deg + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^k`.
    pub fn coeff(&self, k: i64) -> BigInt {
        let i = k - self.min_deg;
        if i < 0 || i >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Iterator over `(exponent, coefficient)` for nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_deg + i as i64, c))
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { min_deg: self.min_deg + k, coeffs: self.coeffs.clone() }
    }

    /// Substitution `t -> t^-1`.
    pub fn involute(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let coeffs = self.coeffs.iter().rev().cloned().collect();
        LaurentPoly { min_deg: -self.max_deg(), coeffs }
    }

    pub fn is_symmetric(&self) -> bool {
        self.involute() == *self
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Value at `t = 1` (sum of coefficients).
    pub fn value_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Normalizes a raw Alexander polynomial: returns the unique
    /// `eps * t^m * self` that is invariant under `t -> t^-1` and takes the
    /// value `+1` at `t = 1`.
    pub fn symmetrize_alexander(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::NotAKnotPolynomial(self.to_string()));
        }
        let n = self.coeffs.len();
        let palindromic = (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i]);
        if !palindromic || !(n - 1).is_multiple_of(2) {
            return Err(PolyError::NotSymmetrizable(self.to_string()));
        }
        let centered = LaurentPoly { min_deg: -((n as i64 - 1) / 2), coeffs: self.coeffs.clone() };
        let v = centered.value_at_one();
        if v.is_one() {
            Ok(centered)
        } else if v == -BigInt::one() {
            Ok(-centered)
        } else {
            Err(PolyError::NotAKnotPolynomial(self.to_string()))
        }
    }

    /// Ordinary polynomial `t^(-min_deg) * self` together with the shift
    /// `-min_deg` that was applied.
    pub fn to_int_poly(&self) -> (IntPoly, i64) {
        (IntPoly::new(self.coeffs.clone()), -self.min_deg)
    }

    pub fn from_int_poly(p: &IntPoly, min_deg: i64) -> Self {
        Self::new(min_deg, p.coeffs().to_vec())
    }

    /// Exact quotient in `Z[t, t^-1]`, or `None` when `divisor` does not
    /// divide `self`.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (num, _) = self.to_int_poly();
        let (den, _) = divisor.to_int_poly();
        let q = num.exact_div(&den)?;
        Some(Self::from_int_poly(&q, self.min_deg - divisor.min_deg))
    }

    pub fn eval_rational(&self, x: &BigRational) -> Result<BigRational, PolyError> {
        if x.is_zero() {
            if self.min_deg < 0 {
                return Err(PolyError::ZeroArgument);
            }
            return Ok(BigRational::from_integer(self.coeff(0)));
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        Ok(acc * pow_rational(x, self.min_deg))
    }

    pub fn eval_complex(&self, z: Complex64) -> Result<Complex64, PolyError> {
        if z == Complex64::new(0.0, 0.0) {
            if self.min_deg < 0 {
                return Err(PolyError::ZeroArgument);
            }
            return Ok(Complex64::new(self.coeff(0).to_f64().unwrap_or(f64::NAN), 0.0));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_f64().unwrap_or(f64::NAN);
        }
        Ok(acc * z.powi(self.min_deg as i32))
    }
}

fn pow_rational(x: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

fn add_coeffs(a: &LaurentPoly, b: &LaurentPoly, negate_b: bool) -> LaurentPoly {
    if a.is_zero() {
        return if negate_b { -b.clone() } else { b.clone() };
    }
    if b.is_zero() {
        return a.clone();
    }
    let lo = a.min_deg.min(b.min_deg);
    let hi = a.max_deg().max(b.max_deg());
    let coeffs = (lo..=hi)
        .map(|k| {
            let y = b.coeff(k);
            a.coeff(k) + if negate_b { -y } else { y }
        })
        .collect();
    LaurentPoly::new(lo, coeffs)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        add_coeffs(self, rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        add_coeffs(self, rhs, true)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.min_deg + rhs.min_deg, out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl fmt::Display for LaurentPoly {
    /// Ascending-degree text form, e.g. `-1*t^-1 + 3 - 1*t^1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.terms().enumerate() {
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*t^{k}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = PolyError;

    /// Accepts the `Display` form plus the usual shorthands (`t`, `-t^-1`,
    /// `3t^2`, unicode minus).
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let chunks: Vec<&str> = s.split_whitespace().collect();
        let is_atom = |c: char| c.is_ascii_alphanumeric();
        for pair in chunks.windows(2) {
            let end = pair[0].chars().last().is_some_and(is_atom);
            let start = pair[1].chars().next().is_some_and(is_atom);
            if end && start {
                return Err(PolyError::Syntax(format!("missing operator between {:?} and {:?}", pair[0], pair[1])));
            }
        }
        let text: Vec<char> = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        if text.is_empty() {
            return Err(PolyError::Syntax("empty input".into()));
        }
        let mut acc = LaurentPoly::zero();
        let mut pos = 0;
        let err = |msg: &str, at: usize| PolyError::Syntax(format!("{msg} at offset {at} in {s:?}"));
        while pos < text.len() {
            let mut negative = false;
            if text[pos] == '+' || text[pos] == '-' {
                negative = text[pos] == '-';
                pos += 1;
            } else if pos != 0 {
                return Err(err("expected '+' or '-'", pos));
            }
            let digits_start = pos;
            while pos < text.len() && text[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff = if pos > digits_start {
                let digits: String = text[digits_start..pos].iter().collect();
                BigInt::from_str(&digits).map_err(|_| err("bad integer", digits_start))?
            } else {
                BigInt::one()
            };
            let had_digits = pos > digits_start;
            if pos < text.len() && text[pos] == '*' {
                pos += 1;
                if pos >= text.len() || text[pos] != 't' {
                    return Err(err("expected 't' after '*'", pos));
                }
            }
            let mut exp = 0i64;
            if pos < text.len() && text[pos] == 't' {
                pos += 1;
                exp = 1;
                if pos < text.len() && text[pos] == '^' {
                    pos += 1;
                    let e_start = pos;
                    if pos < text.len() && (text[pos] == '-' || text[pos] == '+') {
                        pos += 1;
                    }
                    while pos < text.len() && text[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let e: String = text[e_start..pos].iter().collect();
                    exp = e.parse().map_err(|_| err("bad exponent", e_start))?;
                }
            } else if !had_digits {
                return Err(err("expected a term", pos));
            }
            let c = if negative { -coeff } else { coeff };
            acc = &acc + &LaurentPoly::monomial(c, exp);
        }
        Ok(acc)
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentJson {
    min_deg: i64,
    coeffs: Vec<IntRepr>,
}

impl Serialize for LaurentPoly {
    /// `{"min_deg": -1, "coeffs": [-1, 3, -1]}`; coefficients beyond 53 bits
    /// are written as decimal strings.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LaurentJson { min_deg: self.min_deg, coeffs: self.coeffs.iter().map(IntRepr::from_big).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = LaurentJson::deserialize(d)?;
        let coeffs = raw
            .coeffs
            .into_iter()
            .map(IntRepr::into_big)
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(LaurentPoly::new(raw.min_deg, coeffs))
    }
}

/// Ordinary integer polynomial, ascending coefficients, trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// `t^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = -BigInt::one();
        c[n] = BigInt::one();
        Self::new(c)
    }

    /// `1 + t + ... + t^(n-1)`.
    pub fn geometric(n: usize) -> Self {
        Self::new(vec![BigInt::one(); n])
    }

    pub fn mul(&self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Exact quotient over `Z`, or `None` when the division leaves a
    /// remainder or a non-integral quotient coefficient.
    pub fn exact_div(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let nd = self.degree()?;
        if nd < dd {
            return None;
        }
        let lead = divisor.leading()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * d;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(quot))
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

/// The `n`-th cyclotomic polynomial, by exact division of `t^n - 1` by the
/// cyclotomic polynomials of the proper divisors of `n`.
pub fn cyclotomic(n: usize) -> IntPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut table: Vec<Option<IntPoly>> = vec![None; n + 1];
    cyclotomic_memo(n, &mut table)
}

fn cyclotomic_memo(n: usize, table: &mut Vec<Option<IntPoly>>) -> IntPoly {
    if let Some(p) = &table[n] {
        return p.clone();
    }
    let mut p = IntPoly::x_pow_minus_one(n);
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let phi_d = cyclotomic_memo(d, table);
        p = p.exact_div(&phi_d).expect("cyclotomic factor divides t^n - 1");
    }
    table[n] = Some(p.clone());
    p
}

/// Resultant as the determinant of the Sylvester matrix with the rows of
/// `f` first and coefficients laid out in ascending degree. With this layout
/// `Res(f, g) = lc(g)^deg(f) * prod_{g(b) = 0} f(b)`, so for monic `g` it is
/// the product of `f` over the roots of `g`.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    assert!(!f.is_zero() && !g.is_zero(), "resultant of the zero polynomial");
    let m = f.degree().unwrap_or(0);
    let n = g.degree().unwrap_or(0);
    let size = m + n;
    let mut sylvester = IntMatrix::zeros(size, size);
    for row in 0..n {
        for (j, c) in f.coeffs().iter().enumerate() {
            sylvester.set(row, row + j, c.clone());
        }
    }
    for row in 0..m {
        for (j, c) in g.coeffs().iter().enumerate() {
            sylvester.set(n + row, row + j, c.clone());
        }
    }
    sylvester.det_exact().expect("Sylvester matrix is square")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(min_deg: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(min_deg, c)
    }

    #[test]
    fn arithmetic_examples() {
        let a = lp(0, &[-1, 1]);
        let b = lp(0, &[1, 1]);
        assert_eq!(&a * &b, lp(0, &[-1, 0, 1]));
        assert_eq!(&a * &LaurentPoly::zero(), LaurentPoly::zero());
        assert_eq!(&lp(-1, &[1, 1]) * &LaurentPoly::t(), lp(0, &[1, 1]));
        assert_eq!(&a - &a, LaurentPoly::zero());
        assert_eq!((&a - &a).min_deg(), 0);
    }

    #[test]
    fn involute_examples() {
        let tre = lp(-1, &[1, -1, 1]);
        assert_eq!(tre.involute(), tre);
        assert_eq!(lp(2, &[1]).involute(), lp(-2, &[1]));
        assert_eq!(lp(0, &[-5, 3]).involute(), lp(-1, &[3, -5]));
    }

    #[test]
    fn symmetrize_examples() {
        assert_eq!(lp(0, &[-1, 1, -1]).symmetrize_alexander().unwrap(), lp(-1, &[1, -1, 1]));
        assert_eq!(LaurentPoly::one().symmetrize_alexander().unwrap(), LaurentPoly::one());
        assert_eq!(lp(0, &[1, -3, 1]).symmetrize_alexander().unwrap(), lp(-1, &[-1, 3, -1]));
        assert_eq!(lp(5, &[1, -3, 1]).symmetrize_alexander().unwrap(), lp(-1, &[-1, 3, -1]));
    }

    #[test]
    fn symmetrize_errors() {
        assert!(matches!(lp(0, &[1, 2]).symmetrize_alexander(), Err(PolyError::NotSymmetrizable(_))));
        assert!(matches!(lp(0, &[1, -1]).symmetrize_alexander(), Err(PolyError::NotSymmetrizable(_))));
        assert!(matches!(lp(0, &[1, 1, 1]).symmetrize_alexander(), Err(PolyError::NotAKnotPolynomial(_))));
        assert!(matches!(LaurentPoly::zero().symmetrize_alexander(), Err(PolyError::NotAKnotPolynomial(_))));
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1), IntPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic(2), IntPoly::from_ints(&[1, 1]));
        assert_eq!(cyclotomic(12), IntPoly::from_ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(7), IntPoly::geometric(7));
        assert_eq!(cyclotomic(105).coeffs().iter().filter(|c| **c == BigInt::from(-2)).count(), 2);
    }

    #[test]
    fn resultant_examples() {
        let r = |f: &[i64], g: &[i64]| resultant(&IntPoly::from_ints(f), &IntPoly::from_ints(g));
        assert_eq!(r(&[-2, 1], &[-3, 1]), BigInt::from(1));
        assert_eq!(r(&[0, 1], &[0, 1]), BigInt::zero());
        assert_eq!(r(&[1, 0, 1], &[-1, 1]), BigInt::from(2));
        assert_eq!(r(&[5], &[1, 2, 3]), BigInt::from(25));
    }

    #[test]
    fn evaluation_examples() {
        let tre = lp(-1, &[1, -1, 1]);
        let fig8 = lp(-1, &[-1, 3, -1]);
        let one = BigRational::one();
        assert_eq!(tre.eval_rational(&one).unwrap(), one);
        assert_eq!(fig8.eval_rational(&-one.clone()).unwrap(), BigRational::from_integer(5.into()));
        let v = tre.eval_complex(Complex64::new(0.0, 1.0)).unwrap();
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(tre.eval_rational(&BigRational::zero()), Err(PolyError::ZeroArgument));
        assert_eq!(tre.eval_complex(Complex64::new(0.0, 0.0)), Err(PolyError::ZeroArgument));
        assert_eq!(lp(0, &[4, 1]).eval_rational(&BigRational::zero()).unwrap(), BigRational::from_integer(4.into()));
    }

    #[test]
    fn text_format() {
        let fig8 = lp(-1, &[-1, 3, -1]);
        assert_eq!(fig8.to_string(), "-1*t^-1 + 3 - 1*t^1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!("-1*t^-1 + 3 - 1*t^1".parse::<LaurentPoly>().unwrap(), fig8);
        assert_eq!("-t^-1+3-t".parse::<LaurentPoly>().unwrap(), fig8);
        assert_eq!("\u{2212}t + 3 \u{2212} t^-1".parse::<LaurentPoly>().unwrap(), fig8);
        assert_eq!("2t^2 - 2t^2".parse::<LaurentPoly>().unwrap(), LaurentPoly::zero());
        assert!("3 +".parse::<LaurentPoly>().is_err());
        assert!("t^x".parse::<LaurentPoly>().is_err());
        assert!("3 4".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn json_format() {
        let fig8 = lp(-1, &[-1, 3, -1]);
        let j = serde_json::to_string(&fig8).unwrap();
        assert_eq!(j, r#"{"min_deg":-1,"coeffs":[-1,3,-1]}"#);
        let big: LaurentPoly = serde_json::from_str(r#"{"min_deg":0,"coeffs":["123456789012345678901234567890",0]}"#).unwrap();
        assert_eq!(big.coeff(0).to_string(), "123456789012345678901234567890");
        assert_eq!(big.coeffs().len(), 1);
    }

    #[test]
    fn exact_division() {
        let num = lp(-1, &[-1, 0, 0, 1]);
        let den = lp(0, &[-1, 1]);
        assert_eq!(num.exact_div(&den).unwrap(), lp(-1, &[1, 1, 1]));
        assert!(lp(0, &[1, 0, 1]).exact_div(&den).is_none());
        assert!(lp(0, &[1, 1]).exact_div(&lp(0, &[1, 2])).is_none());
    }
}
