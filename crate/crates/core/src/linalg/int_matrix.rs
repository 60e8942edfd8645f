//! Dense integer matrices with exact determinants, Smith normal form and
//! cokernels.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use super::LinalgError;
use crate::json::int_value;
use crate::poly::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &BigInt) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    /// Builds a matrix from rows of machine integers.
    ///
    /// Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.as_ref().len(), c, "ragged matrix rows");
            data.extend(row.as_ref().iter().map(|&v| BigInt::from(v)));
        }
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        IntMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &IntMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det_exact(&self) -> Result<BigInt, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        Ok(sign * &a[n * n - 1])
    }

    /// Integer inverse of a matrix with determinant `+-1`.
    pub fn inverse_unimodular(&self) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NonSquare { rows: self.rows, cols: self.cols });
        }
        let snf = smith_normal_form(self);
        if snf.invariant_factors.iter().any(|d| !d.is_one()) {
            return Err(LinalgError::NotUnimodular);
        }
        // U A V = I, so A^-1 = V U.
        Ok(&snf.v * &snf.u)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = q * &self.data[src * self.cols + j];
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = q * &self.data[i * self.cols + src];
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = std::mem::take(&mut self.data[r * self.cols + j]);
            self.data[r * self.cols + j] = -v;
        }
    }

    /// Nested JSON arrays; large entries become decimal strings.
    pub fn to_json(&self) -> Value {
        Value::Array((0..self.rows).map(|i| Value::Array(self.row(i).iter().map(int_value).collect())).collect())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        self + &(-rhs)
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| -v).collect() }
    }
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_1 | d_2 | ...`, zeros last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
    /// Diagonal of `D`, length `min(rows, cols)`, nonnegative.
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| !d.is_zero()).count()
    }
}

/// Position of the nonzero entry of least absolute value in the trailing
/// submatrix starting at `(t, t)`; ties go to the first in row-major order.
fn min_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let v = d.get(i, j);
            if v.is_zero() {
                continue;
            }
            let mag = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| mag < *b) {
                best = Some((i, j, mag));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        while let Some((pi, pj)) = min_pivot(&d, t) {
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let pivot = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -(d.get(i, t) / &pivot);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -(d.get(t, j) / &pivot);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    let invariant_factors = (0..m.min(n)).map(|i| d.get(i, i).clone()).collect();
    SmithForm { u, v, d, invariant_factors }
}

/// Finitely generated abelian group `Z^free_rank + Z/d_1 + ... + Z/d_k`
/// with `d_1 | ... | d_k` and every `d_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { invariant_factors: Vec::new(), free_rank: 0 }
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.invariant_factors.iter().product())
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "invariant_factors": self.invariant_factors.iter().map(int_value).collect::<Vec<_>>(),
            "free_rank": self.free_rank,
        })
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Cokernel `Z^rows / A Z^cols`.
pub fn cokernel(a: &IntMatrix) -> AbelianGroup {
    let snf = smith_normal_form(a);
    let invariant_factors = snf.invariant_factors.iter().filter(|d| *d > &BigInt::one()).cloned().collect();
    AbelianGroup { invariant_factors, free_rank: a.rows - snf.rank() }
}

/// Matrix of the order-`n` automorphism of the `SU(n)` root lattice induced
/// by conjugation with the cyclic shift: the companion matrix of
/// `1 + t + ... + t^(n-1)`.
pub fn companion_tau(n: usize) -> Result<IntMatrix, LinalgError> {
    if n < 2 {
        return Err(LinalgError::BadRank(n));
    }
    let k = n - 1;
    let mut c = IntMatrix::zeros(k, k);
    for i in 1..k {
        c.set(i, i - 1, BigInt::one());
    }
    for i in 0..k {
        c.set(i, k - 1, -BigInt::one());
    }
    Ok(c)
}

/// `sum_k a_k C^k`, using the exact integer inverse of `C` for negative
/// powers.
pub fn poly_at_matrix(p: &LaurentPoly, c: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    if !c.is_square() {
        return Err(LinalgError::NonSquare { rows: c.rows, cols: c.cols });
    }
    let n = c.rows;
    if p.is_zero() {
        return Ok(IntMatrix::zeros(n, n));
    }
    let (ordinary, _) = p.to_int_poly();
    let mut acc = IntMatrix::zeros(n, n);
    for a in ordinary.coeffs().iter().rev() {
        acc = &(&acc * c) + &IntMatrix::scalar(n, a);
    }
    let shift = p.min_deg();
    let factor = if shift < 0 { c.inverse_unimodular()?.pow(shift.unsigned_abs() as u32) } else { c.pow(shift as u32) };
    Ok(&acc * &factor)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn smith_examples() {
        let s = smith_normal_form(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(s.invariant_factors, ints(&[1, 6]));
        let s = smith_normal_form(&IntMatrix::identity(4));
        assert_eq!(s.invariant_factors, ints(&[1, 1, 1, 1]));
        let z = IntMatrix::zeros(2, 2);
        let s = smith_normal_form(&z);
        assert!(s.d.is_zero());
        assert_eq!(cokernel(&z).free_rank, 2);
    }

    #[test]
    fn smith_rectangular() {
        let a = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.invariant_factors, ints(&[2, 6, 12]));
        let b = IntMatrix::from_rows(&[[1, 2], [3, 4], [5, 6]]);
        let s = smith_normal_form(&b);
        assert_eq!(&(&s.u * &b) * &s.v, s.d);
        assert_eq!(s.invariant_factors, ints(&[1, 2]));
        assert_eq!(cokernel(&b), AbelianGroup { invariant_factors: ints(&[2]), free_rank: 1 });
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel(&IntMatrix::from_rows(&[[3]])).to_string(), "Z/3");
        let g = cokernel(&IntMatrix::from_rows(&[[2, 1], [0, 2]]));
        assert_eq!(g.invariant_factors, ints(&[4]));
        assert_eq!(g.order(), Some(BigInt::from(4)));
        let g = cokernel(&IntMatrix::from_rows(&[[0]]));
        assert_eq!(g.free_rank, 1);
        assert_eq!(g.order(), None);
        assert_eq!(cokernel(&IntMatrix::identity(3)).to_string(), "0");
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(IntMatrix::from_rows(&[[2, 0], [0, 3]]).det_exact().unwrap(), BigInt::from(6));
        assert_eq!(IntMatrix::from_rows(&[[0, -1], [1, -1]]).det_exact().unwrap(), BigInt::from(1));
        assert_eq!(IntMatrix::from_rows(&[[1, 2], [2, 4]]).det_exact().unwrap(), BigInt::zero());
        assert_eq!(IntMatrix::from_rows(&[[0, 1], [1, 0]]).det_exact().unwrap(), BigInt::from(-1));
        assert_eq!(IntMatrix::zeros(0, 0).det_exact().unwrap(), BigInt::one());
        assert!(matches!(IntMatrix::zeros(2, 3).det_exact(), Err(LinalgError::NonSquare { .. })));
    }

    #[test]
    fn companion_examples() {
        assert_eq!(companion_tau(2).unwrap(), IntMatrix::from_rows(&[[-1]]));
        assert_eq!(companion_tau(3).unwrap(), IntMatrix::from_rows(&[[0, -1], [1, -1]]));
        assert_eq!(companion_tau(1), Err(LinalgError::BadRank(1)));
        for n in 2..=12 {
            let c = companion_tau(n).unwrap();
            assert_eq!(c.pow(n as u32), IntMatrix::identity(n - 1));
            let sum = (0..n as u32).fold(IntMatrix::zeros(n - 1, n - 1), |acc, k| &acc + &c.pow(k));
            assert!(sum.is_zero());
            assert!(c.det_exact().unwrap().abs().is_one());
        }
    }

    #[test]
    fn poly_at_matrix_examples() {
        let c2 = companion_tau(2).unwrap();
        let c3 = companion_tau(3).unwrap();
        assert_eq!(poly_at_matrix(&LaurentPoly::one(), &c3).unwrap(), IntMatrix::identity(2));
        let trefoil = LaurentPoly::from_ints(-1, &[1, -1, 1]);
        assert_eq!(poly_at_matrix(&trefoil, &c2).unwrap(), IntMatrix::from_rows(&[[-3]]));
        let fig8 = LaurentPoly::from_ints(-1, &[-1, 3, -1]);
        let m = poly_at_matrix(&fig8, &c3).unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[[4, 0], [0, 4]]));
        assert_eq!(m.det_exact().unwrap(), BigInt::from(16));
    }

    #[test]
    fn poly_at_matrix_shift_routes_agree() {
        // C^{min_deg} P(C) against pre-shifting by C^(N) = I.
        let fig8 = LaurentPoly::from_ints(-1, &[-1, 3, -1]);
        for n in 2..=8usize {
            let c = companion_tau(n).unwrap();
            let direct = poly_at_matrix(&fig8, &c).unwrap();
            let shifted = poly_at_matrix(&fig8.shift(n as i64), &c).unwrap();
            assert_eq!(direct, shifted);
        }
    }

    #[test]
    fn not_unimodular() {
        let c = IntMatrix::from_rows(&[[2]]);
        let p = LaurentPoly::from_ints(-1, &[1]);
        assert_eq!(poly_at_matrix(&p, &c), Err(LinalgError::NotUnimodular));
        assert_eq!(poly_at_matrix(&LaurentPoly::t(), &c).unwrap(), c);
    }

    #[test]
    fn unimodular_inverse() {
        let a = IntMatrix::from_rows(&[[2, 1], [7, 4]]);
        let inv = a.inverse_unimodular().unwrap();
        assert_eq!(&a * &inv, IntMatrix::identity(2));
    }
}
