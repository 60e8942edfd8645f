//! Exact arithmetic in the cyclotomic field `Q(zeta_n) = Q[t] / Phi_n(t)`
//! and dense matrices over it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::LinalgError;
use crate::poly::cyclotomic;

/// The field `Q(zeta_n)`, holding the monic modulus `Phi_n`.
#[derive(Debug, PartialEq, Eq)]
pub struct CycField {
    n: usize,
    /// Ascending coefficients of `Phi_n`.
    modulus: Vec<BigRational>,
}

impl CycField {
    pub fn new(n: usize) -> Arc<Self> {
        assert!(n >= 1, "cyclotomic order must be positive");
        let modulus = cyclotomic(n).coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect();
        Arc::new(CycField { n, modulus })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `phi(n)`, the degree of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn reduce(&self, mut c: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree();
        while c.len() > d {
            let top = c.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let base = c.len() - d;
            for (j, m) in self.modulus[..d].iter().enumerate() {
                c[base + j] -= &top * m;
            }
        }
        trim(&mut c);
        c
    }
}

fn trim(c: &mut Vec<BigRational>) {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
}

/// Element of `Q(zeta_n)` as a reduced polynomial in `zeta` of degree
/// `< phi(n)`.
#[derive(Clone)]
pub struct CycNumber {
    field: Arc<CycField>,
    rep: Vec<BigRational>,
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.rep == other.rep
    }
}

impl Eq for CycNumber {}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNumber<{}>({})", self.field.n, self)
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rep.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .rep
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})*z"),
                _ => format!("({c})*z^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl CycNumber {
    pub fn zero(field: &Arc<CycField>) -> Self {
        CycNumber { field: field.clone(), rep: Vec::new() }
    }

    pub fn one(field: &Arc<CycField>) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_int(field: &Arc<CycField>, v: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(field: &Arc<CycField>, v: BigRational) -> Self {
        let mut rep = vec![v];
        trim(&mut rep);
        CycNumber { field: field.clone(), rep }
    }

    /// Polynomial expression `sum coeffs[i] zeta^i`, reduced.
    pub fn from_poly(field: &Arc<CycField>, coeffs: Vec<BigRational>) -> Self {
        CycNumber { field: field.clone(), rep: field.reduce(coeffs) }
    }

    /// `zeta^k` for any integer `k`.
    pub fn zeta_pow(field: &Arc<CycField>, k: i64) -> Self {
        let e = k.rem_euclid(field.n as i64) as usize;
        let mut c = vec![BigRational::zero(); e + 1];
        c[e] = BigRational::one();
        Self::from_poly(field, c)
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.rep.len() == 1 && self.rep[0].is_one()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.rep
    }

    fn check_field(&self, other: &CycNumber) -> Result<(), LinalgError> {
        if self.field.n != other.field.n {
            return Err(LinalgError::FieldMismatch(self.field.n, other.field.n));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &CycNumber) -> Result<CycNumber, LinalgError> {
        self.check_field(other)?;
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &CycNumber) -> Result<CycNumber, LinalgError> {
        self.check_field(other)?;
        Ok(self * other)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against
    /// `Phi_n`.
    pub fn inv(&self) -> Result<CycNumber, LinalgError> {
        if self.is_zero() {
            return Err(LinalgError::DivisionByZero);
        }
        // Invariant: s_i * self = r_i (mod Phi_n).
        let mut r0 = self.field.modulus.clone();
        let mut r1 = self.rep.clone();
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1 = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = qpoly_divrem(&r0, &r1);
            let s2 = qpoly_sub(&s0, &qpoly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // Phi_n is irreducible, so the last nonzero remainder is a constant.
        let c = r1.first().ok_or(LinalgError::DivisionByZero)?.clone();
        let s: Vec<BigRational> = s1.into_iter().map(|x| x / &c).collect();
        Ok(CycNumber::from_poly(&self.field, s))
    }

    pub fn pow(&self, e: u32) -> CycNumber {
        let mut acc = CycNumber::one(&self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

fn qpoly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn qpoly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let q = &rem[i + db] / &lead;
        if q.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            rem[i + j] -= &q * y;
        }
        quot[i] = q;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

impl Add for &CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        debug_assert_eq!(self.field.n, rhs.field.n);
        let n = self.rep.len().max(rhs.rep.len());
        let mut rep: Vec<BigRational> = (0..n)
            .map(|i| match (self.rep.get(i), rhs.rep.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => BigRational::zero(),
            })
            .collect();
        trim(&mut rep);
        CycNumber { field: self.field.clone(), rep }
    }
}

impl Sub for &CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        self + &(-rhs)
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber { field: self.field.clone(), rep: self.rep.iter().map(|c| -c).collect() }
    }
}

impl Mul for &CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        debug_assert_eq!(self.field.n, rhs.field.n);
        if self.is_zero() || rhs.is_zero() {
            return CycNumber::zero(&self.field);
        }
        CycNumber { field: self.field.clone(), rep: self.field.reduce(qpoly_mul(&self.rep, &rhs.rep)) }
    }
}

/// Dense matrix over `Q(zeta_n)`.
#[derive(Clone, PartialEq, Eq)]
pub struct CycMatrix {
    field: Arc<CycField>,
    rows: usize,
    cols: usize,
    data: Vec<CycNumber>,
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycMatrix<{}>{}x{}[", self.field.n, self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                write!(f, "{}; ", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl CycMatrix {
    pub fn zeros(field: &Arc<CycField>, rows: usize, cols: usize) -> Self {
        CycMatrix { field: field.clone(), rows, cols, data: vec![CycNumber::zero(field); rows * cols] }
    }

    pub fn identity(field: &Arc<CycField>, n: usize) -> Self {
        Self::scalar(field, n, &CycNumber::one(field))
    }

    pub fn scalar(field: &Arc<CycField>, n: usize, c: &CycNumber) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNumber {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNumber) {
        debug_assert_eq!(v.field.n, self.field.n);
        self.data[i * self.cols + j] = v;
    }

    pub fn try_mul(&self, rhs: &CycMatrix) -> Result<CycMatrix, LinalgError> {
        if self.field.n != rhs.field.n {
            return Err(LinalgError::FieldMismatch(self.field.n, rhs.field.n));
        }
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch);
        }
        let mut out = CycMatrix::zeros(&self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * rhs.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &CycMatrix) -> Result<CycMatrix, LinalgError> {
        if self.field.n != rhs.field.n {
            return Err(LinalgError::FieldMismatch(self.field.n, rhs.field.n));
        }
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(LinalgError::DimensionMismatch);
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Ok(CycMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycNumber::is_zero)
    }

    /// Row echelon form in place; returns `(rank, sign of the row
    /// permutation, product of pivots)`.
    fn eliminate(&mut self) -> (usize, bool, CycNumber) {
        let mut rank = 0;
        let mut odd_swaps = false;
        let mut pivot_product = CycNumber::one(&self.field);
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&i| !self.get(i, col).is_zero()) else {
                continue;
            };
            if p != rank {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, rank * self.cols + j);
                }
                odd_swaps = !odd_swaps;
            }
            let pivot = self.get(rank, col).clone();
            pivot_product = &pivot_product * &pivot;
            let pinv = pivot.inv().expect("pivot is nonzero");
            for i in rank + 1..self.rows {
                if self.get(i, col).is_zero() {
                    continue;
                }
                let factor = self.get(i, col) * &pinv;
                for j in col..self.cols {
                    let src = self.get(rank, j);
                    if src.is_zero() {
                        continue;
                    }
                    let v = self.get(i, j) - &(&factor * src);
                    self.set(i, j, v);
                }
            }
            rank += 1;
        }
        (rank, odd_swaps, pivot_product)
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate().0
    }

    pub fn det(&self) -> Result<CycNumber, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NonSquare { rows: self.rows, cols: self.cols });
        }
        let (rank, odd, prod) = self.clone().eliminate();
        if rank < self.rows {
            return Ok(CycNumber::zero(&self.field));
        }
        Ok(if odd { -&prod } else { prod })
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<CycMatrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = CycMatrix::identity(&self.field, n);
        for col in 0..n {
            let p = (col..n).find(|&i| !a.get(i, col).is_zero()).ok_or(LinalgError::Singular)?;
            for j in 0..n {
                a.data.swap(p * n + j, col * n + j);
                inv.data.swap(p * n + j, col * n + j);
            }
            let pinv = a.get(col, col).inv()?;
            for j in 0..n {
                let x = a.get(col, j) * &pinv;
                a.set(col, j, x);
                let y = inv.get(col, j) * &pinv;
                inv.set(col, j, y);
            }
            for i in 0..n {
                if i == col || a.get(i, col).is_zero() {
                    continue;
                }
                let factor = a.get(i, col).clone();
                for j in 0..n {
                    let x = a.get(i, j) - &(&factor * a.get(col, j));
                    a.set(i, j, x);
                    let y = inv.get(i, j) - &(&factor * inv.get(col, j));
                    inv.set(i, j, y);
                }
            }
        }
        Ok(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_relations() {
        for n in 1..=15usize {
            let f = CycField::new(n);
            let z = CycNumber::zeta_pow(&f, 1);
            assert!((&z * &CycNumber::zeta_pow(&f, n as i64 - 1)).is_one());
            assert!(z.pow(n as u32).is_one());
            // Phi_n(zeta) = 0
            let phi = cyclotomic(n);
            let val = phi
                .coeffs()
                .iter()
                .enumerate()
                .fold(CycNumber::zero(&f), |acc, (k, c)| {
                    &acc + &(&CycNumber::from_rational(&f, BigRational::from_integer(c.clone())) * &z.pow(k as u32))
                });
            assert!(val.is_zero(), "Phi_{n}(zeta) = {val}");
        }
    }

    #[test]
    fn inverse_and_rank() {
        let f = CycField::new(3);
        assert_eq!(CycMatrix::identity(&f, 3).rank(), 3);
        let a = &CycNumber::zeta_pow(&f, 1) + &CycNumber::from_int(&f, 2);
        assert!((&a * &a.inv().unwrap()).is_one());
        assert_eq!(CycNumber::zero(&f).inv(), Err(LinalgError::DivisionByZero));
        let g = CycField::new(5);
        assert!(matches!(a.try_add(&CycNumber::one(&g)), Err(LinalgError::FieldMismatch(3, 5))));
    }

    #[test]
    fn matrix_inverse_and_det() {
        let f = CycField::new(5);
        let z = CycNumber::zeta_pow(&f, 1);
        let mut m = CycMatrix::zeros(&f, 2, 2);
        m.set(0, 0, z.clone());
        m.set(0, 1, CycNumber::one(&f));
        m.set(1, 0, CycNumber::from_int(&f, 3));
        m.set(1, 1, z.pow(2));
        let inv = m.inverse().unwrap();
        assert_eq!(m.try_mul(&inv).unwrap(), CycMatrix::identity(&f, 2));
        let expected = &z.pow(3) - &CycNumber::from_int(&f, 3);
        assert_eq!(m.det().unwrap(), expected);
        let mut s = CycMatrix::zeros(&f, 2, 2);
        s.set(0, 1, z.clone());
        s.set(1, 0, z.clone());
        assert_eq!(s.det().unwrap(), -&z.pow(2));
        assert_eq!(CycMatrix::zeros(&f, 2, 2).inverse(), Err(LinalgError::Singular));
    }
}
