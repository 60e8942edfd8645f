//! Truncated power series over exact rationals, and the Donaldson series of
//! a knot-surgered manifold along a ray `s * h`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;
use thiserror::Error;

use crate::json::rational_string;
use crate::poly::LaurentPoly;

pub const DEFAULT_ORDER: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("exp needs a zero constant term")]
    NonzeroConstantTerm,
    #[error("truncation orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("degree {degree} exceeds the truncation order {order}")]
    OrderExceeded { degree: usize, order: usize },
    #[error("degree {0} must be even and non-negative")]
    OddDegree(i64),
    #[error("exponent 2 + {0}/4 is not an integer")]
    FractionalExponent(i64),
}

/// `c_0 + c_1 s + ... + c_order s^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    order: usize,
    coeffs: Vec<BigRational>,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

impl PowerSeries {
    /// Pads or truncates `coeffs` to `order + 1` entries.
    pub fn new(order: usize, mut coeffs: Vec<BigRational>) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        PowerSeries { order, coeffs }
    }

    pub fn from_ints(order: usize, coeffs: &[i64]) -> Self {
        Self::new(order, coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        Self::new(order, vec![BigRational::one()])
    }

    /// `exp(c s^k)` truncated, built directly from the exponential series.
    pub fn exp_monomial(order: usize, c: &BigRational, k: usize) -> Self {
        assert!(k >= 1, "monomial degree must be positive");
        let mut coeffs = vec![BigRational::zero(); order + 1];
        let mut j = 0;
        let mut term = BigRational::one();
        while j * k <= order {
            coeffs[j * k] = term.clone();
            j += 1;
            term = term * c / BigRational::from_integer(BigInt::from(j));
        }
        PowerSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order != other.order {
            return Err(SeriesError::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(PowerSeries { order: self.order, coeffs })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        PowerSeries { order: self.order, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let mut coeffs = vec![BigRational::zero(); self.order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=self.order - i].iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Ok(PowerSeries { order: self.order, coeffs })
    }

    /// `exp(a)` from `f' = a' f`, i.e. `n f_n = sum_{k=1}^n k a_k f_{n-k}`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let mut f = vec![BigRational::zero(); self.order + 1];
        f[0] = BigRational::one();
        for n in 1..=self.order {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &f[n - k] * BigRational::from_integer(BigInt::from(k));
                }
            }
            f[n] = acc / BigRational::from_integer(BigInt::from(n));
        }
        Ok(PowerSeries { order: self.order, coeffs: f })
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(rational_string).collect())
    }
}

/// `exp(s^2 Q/2) * sum_k a_k exp(2 k F s)`, the Donaldson series along the
/// ray `s * h` with `Q = Q(h)` and `F = F(h)`.
pub fn donaldson_series_xk(
    delta: &LaurentPoly,
    q_h: &BigRational,
    f_h: &BigRational,
    order: usize,
) -> PowerSeries {
    let half = BigRational::new(1.into(), 2.into());
    let gaussian = PowerSeries::exp_monomial(order, &(q_h * &half), 2);
    let mut sum = PowerSeries::zero(order);
    for (k, a) in delta.terms() {
        let rate = BigRational::from_integer(BigInt::from(2 * k)) * f_h;
        let term = PowerSeries::exp_monomial(order, &rate, 1).scale(&BigRational::from_integer(a.clone()));
        sum = sum.add(&term).expect("same order");
    }
    gaussian.mul(&sum).expect("same order")
}

/// `2^(2 + (7 chi + 11 sigma)/4) * sw`.
pub fn witten_coefficient(euler: i64, signature: i64, sw: i64) -> Result<BigRational, SeriesError> {
    let num = 7 * euler + 11 * signature;
    if num % 4 != 0 {
        return Err(SeriesError::FractionalExponent(num));
    }
    let e = 2 + num / 4;
    let two = BigRational::from_integer(BigInt::from(2));
    let power = if e >= 0 {
        num_traits::pow(two, e as usize)
    } else {
        num_traits::pow(two, (-e) as usize).recip()
    };
    Ok(power * BigRational::from_integer(BigInt::from(sw)))
}

/// `q_k` from the series: the coefficient of `s^(d/2)` times `(d/2)!`.
pub fn extract_qk(series: &PowerSeries, d: i64) -> Result<BigRational, SeriesError> {
    if d < 0 || d % 2 != 0 {
        return Err(SeriesError::OddDegree(d));
    }
    let k = (d / 2) as usize;
    if k > series.order() {
        return Err(SeriesError::OrderExceeded { degree: k, order: series.order() });
    }
    Ok(series.coeff(k) * BigRational::from_integer(factorial(k)))
}
