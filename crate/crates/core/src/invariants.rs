//! Invariant formulas and bookkeeping: the instanton number, formal
//! dimensions, the coprime condition, the product of the Alexander
//! polynomial over nontrivial `N`-th roots of unity (three routes),
//! branched-cover homology, the knot-surgery product, orientation signs and
//! the lift ladder.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::json::{int_string, rational_string};
use crate::linalg::{cokernel, companion_tau, poly_at_matrix, AbelianGroup, LinalgError};
use crate::poly::{resultant, IntPoly, LaurentPoly, PolyError};

/// Relative tolerance for the floating-point product route.
pub const FLOAT_ROUTE_RTOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("routes disagree: {0}")]
    CrossCheckMismatch(String),
    #[error("4N*kappa = {0} is not an integer")]
    NonIntegralDimension(BigRational),
    #[error("N = {n} is even, the sign is undetermined (magnitude {magnitude})")]
    EvenN { n: usize, magnitude: BigInt },
    #[error("the Alexander product vanishes at N = {0}")]
    DegenerateProduct(usize),
    #[error("parity violation: {0}")]
    ParityViolation(String),
    #[error("rank parameter N = {0} is below 2")]
    BadRank(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldTopology {
    pub name: String,
    pub b2_plus: i64,
    pub b1: i64,
    pub euler: Option<i64>,
    pub signature: Option<i64>,
}

impl ManifoldTopology {
    pub fn new(name: impl Into<String>, b2_plus: i64, b1: i64) -> Self {
        ManifoldTopology { name: name.into(), b2_plus, b1, euler: None, signature: None }
    }

    pub fn k3() -> Self {
        ManifoldTopology { name: "K3".into(), b2_plus: 3, b1: 0, euler: Some(24), signature: Some(-16) }
    }

    /// `b2+ - b1 + 1`.
    pub fn index_term(&self) -> i64 {
        self.b2_plus - self.b1 + 1
    }

    /// Warning text when the invariants are not defined for this topology
    /// (they need `b2+ >= 2`).
    pub fn hypothesis_warning(&self) -> Option<String> {
        (self.b2_plus < 2).then(|| {
            format!("{}: b2+ = {} < 2, integer invariants are not defined here", self.name, self.b2_plus)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleData {
    pub n: usize,
    pub c1_pairings: Vec<i64>,
    pub c2: Option<i64>,
    pub c1_sq: i64,
    pub k_dot_w: Option<i64>,
}

impl BundleData {
    /// Bundle on K3 with `c1 = (N+1)h`, `c2 = C(N+1, 2) h^2`, `h^2 = 2(N-1)`.
    pub fn k3(n: usize) -> Self {
        let n = n as i64;
        let h_sq = 2 * (n - 1);
        BundleData {
            n: n as usize,
            c1_pairings: Vec::new(),
            c2: Some((n + 1) * n / 2 * h_sq),
            c1_sq: (n + 1) * (n + 1) * h_sq,
            k_dot_w: Some(0),
        }
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Instanton number `c2 - ((N-1)/2N) c1^2`.
pub fn kappa(n: usize, c2: i64, c1_sq: i64) -> BigRational {
    let n = n as i64;
    BigRational::from_integer(BigInt::from(c2)) - rat((n - 1) * c1_sq, 2 * n)
}

/// Formal dimension `4N kappa - (N^2 - 1)(b2+ - b1 + 1)`.
pub fn formal_dimension(n: usize, kappa: &BigRational, topo: &ManifoldTopology) -> Result<BigInt, InvariantError> {
    let n = n as i64;
    let four_n_kappa = kappa * BigRational::from_integer(BigInt::from(4 * n));
    if !four_n_kappa.is_integer() {
        return Err(InvariantError::NonIntegralDimension(four_n_kappa));
    }
    Ok(four_n_kappa.to_integer() - BigInt::from((n * n - 1) * topo.index_term()))
}

/// The `kappa` giving a zero-dimensional moduli space, when the integer
/// `(N^2-1)(b2+ - b1 + 1) + 2(N-1) w.w` is divisible by `4N`.
pub fn dimension_zero_kappa(n: usize, topo: &ManifoldTopology, c1_sq: i64) -> Option<BigRational> {
    let n = n as i64;
    let index = (n * n - 1) * topo.index_term();
    let total = index + 2 * (n - 1) * c1_sq;
    (total.rem_euclid(4 * n) == 0).then(|| rat(index, 4 * n))
}

/// Whether some pairing of `c1(w)` with an integral class is coprime to `N`.
pub fn is_coprime(c1_pairings: &[i64], n: usize) -> bool {
    let g = c1_pairings.iter().fold(0i64, |acc, &p| acc.gcd(&p));
    g.gcd(&(n as i64)) == 1
}

/// `q^w(K3) = 1`.
pub fn k3_invariant() -> i64 {
    1
}

/// `kappa = (N-1)/2N` of the exceptional-sphere bundle in a blow-up.
pub fn blow_up_kappa(n: usize) -> BigRational {
    let n = n as i64;
    rat(n - 1, 2 * n)
}

/// Dimension of the framed moduli space, `d + (N^2 - 1)`.
pub fn framed_dimension(n: usize, kappa: &BigRational, topo: &ManifoldTopology) -> Result<BigInt, InvariantError> {
    let n64 = n as i64;
    Ok(formal_dimension(n, kappa, topo)? + BigInt::from(n64 * n64 - 1))
}

/// Product of `Delta(zeta^k)`, `k = 1..N-1`, for a symmetrized `Delta`.
#[derive(Debug, Clone, PartialEq)]
pub struct RelativeInvariant {
    pub n: usize,
    /// The product for odd `N` (nonnegative); its absolute value for even `N`.
    pub value: BigInt,
    pub sign_determined: bool,
    pub degenerate: bool,
    /// Cokernel of `Delta(tau_v)`, i.e. `H_1` of the `N`-fold branched cover.
    pub homology: AbelianGroup,
    pub float_product: f64,
}

impl RelativeInvariant {
    pub fn to_json(&self, knot: &str) -> Value {
        json!({
            "schema": 1,
            "knot": knot,
            "N": self.n,
            "value": int_string(&self.value),
            "sign_determined": self.sign_determined,
            "degenerate": self.degenerate,
            "homology": self.homology.invariant_factors.iter().map(int_string).collect::<Vec<_>>(),
            "free_rank": self.homology.free_rank,
            "method_agreement": true,
        })
    }
}

/// Exact signed product through the resultant of the shifted polynomial
/// against `1 + t + ... + t^(N-1)`. The shift `t^m` contributes the unit
/// `zeta^(m N (N-1)/2)`, which is `(-1)^m` for even `N` and `1` for odd `N`.
pub fn product_by_resultant(delta: &LaurentPoly, n: usize) -> BigInt {
    if delta.is_zero() {
        return BigInt::zero();
    }
    let (shifted, m) = delta.to_int_poly();
    let r = resultant(&shifted, &IntPoly::geometric(n));
    if n.is_multiple_of(2) && m.rem_euclid(2) == 1 {
        -r
    } else {
        r
    }
}

/// Exact signed product as `det Delta(C)` for the companion matrix `C` of
/// `1 + t + ... + t^(N-1)`, together with the cokernel.
pub fn product_by_matrix(delta: &LaurentPoly, n: usize) -> Result<(BigInt, AbelianGroup), InvariantError> {
    let c = companion_tau(n)?;
    let m = poly_at_matrix(delta, &c)?;
    Ok((m.det_exact()?, cokernel(&m)))
}

/// Floating-point product and the scale `prod max(1, |Delta(zeta^k)|)` used
/// to judge it when the exact value vanishes.
pub fn product_by_float(delta: &LaurentPoly, n: usize) -> Result<(f64, f64), InvariantError> {
    let mut prod = Complex64::new(1.0, 0.0);
    let mut scale = 1.0f64;
    for k in 1..n {
        let z = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
        let v = delta.eval_complex(z)?;
        prod *= v;
        scale *= v.norm().max(1.0);
    }
    Ok((prod.re, scale))
}

fn big_to_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}

/// `prod_{k=1}^{N-1} Delta(e^{2 pi i k / N})`, cross-checked by the
/// resultant, matrix and floating-point routes.
pub fn q_relative(delta: &LaurentPoly, n: usize) -> Result<RelativeInvariant, InvariantError> {
    if n < 2 {
        return Err(InvariantError::BadRank(n));
    }
    let by_resultant = product_by_resultant(delta, n);
    let (by_det, homology) = product_by_matrix(delta, n)?;
    if by_resultant != by_det {
        return Err(InvariantError::CrossCheckMismatch(format!(
            "N = {n}: resultant route {by_resultant}, determinant route {by_det}"
        )));
    }
    let degenerate = by_det.is_zero();
    match homology.order() {
        Some(order) if order != by_det.abs() => {
            return Err(InvariantError::CrossCheckMismatch(format!(
                "N = {n}: cokernel order {order}, |det| {}",
                by_det.abs()
            )));
        }
        None if !degenerate => {
            return Err(InvariantError::CrossCheckMismatch(format!("N = {n}: infinite cokernel, det {by_det}")));
        }
        _ => {}
    }
    let (float_product, scale) = product_by_float(delta, n)?;
    let exact = big_to_f64(&by_det);
    let tol = if degenerate { FLOAT_ROUTE_RTOL * scale } else { FLOAT_ROUTE_RTOL * exact.abs() };
    // Written so that a NaN product fails the check.
    let within = (float_product - exact).abs() <= tol;
    if !within {
        return Err(InvariantError::CrossCheckMismatch(format!(
            "N = {n}: floating-point product {float_product} against exact {by_det}"
        )));
    }
    let odd = n % 2 == 1;
    if odd && by_det.is_negative() {
        return Err(InvariantError::CrossCheckMismatch(format!("N = {n} odd but product {by_det} is negative")));
    }
    Ok(RelativeInvariant {
        n,
        value: by_det.abs(),
        sign_determined: odd,
        degenerate,
        homology,
        float_product,
    })
}

/// First homology of the `N`-fold cyclic branched cover: the cokernel of
/// `Delta(tau_v)` on the root lattice.
pub fn branched_cover_homology(delta: &LaurentPoly, n: usize) -> Result<AbelianGroup, InvariantError> {
    Ok(product_by_matrix(delta, n)?.1)
}

/// `q^w(X_K) = q^w(X) * prod Delta(zeta^k)` for odd `N`.
pub fn q_fintushel_stern(q_x: &BigInt, delta: &LaurentPoly, n: usize) -> Result<BigInt, InvariantError> {
    let rel = q_relative(delta, n)?;
    if n.is_multiple_of(2) {
        return Err(InvariantError::EvenN { n, magnitude: q_x.abs() * &rel.value });
    }
    if q_x.is_zero() {
        return Ok(BigInt::zero());
    }
    if rel.degenerate {
        return Err(InvariantError::DegenerateProduct(n));
    }
    Ok(q_x * rel.value)
}

/// Position on the lift ladder: shifting by `k` adds `k` to `kappa` and
/// `4Nk` to the dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftIndex {
    pub kappa: BigRational,
    pub dim: BigInt,
    pub k_offset: i64,
}

impl LiftIndex {
    pub fn to_json(&self) -> Value {
        json!({ "kappa": rational_string(&self.kappa), "dim": int_string(&self.dim), "k_offset": self.k_offset })
    }
}

pub fn lift_shift(base: &LiftIndex, k: i64, n: usize) -> LiftIndex {
    LiftIndex {
        kappa: &base.kappa + BigRational::from_integer(BigInt::from(k)),
        dim: &base.dim + BigInt::from(4 * n as i64 * k),
        k_offset: base.k_offset + k,
    }
}

fn parity_sign(exponent: i64) -> i8 {
    if exponent.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Distinguished orientation against the complex orientation on a Kahler
/// surface: `+1` for odd `N`, `(-1)^((w.w + K.w)/2)` for even `N`.
pub fn sign_complex_compare(n: usize, w_sq: i64, k_dot_w: i64) -> Result<i8, InvariantError> {
    if n % 2 == 1 {
        return Ok(1);
    }
    let s = w_sq + k_dot_w;
    if s.rem_euclid(2) != 0 {
        return Err(InvariantError::ParityViolation(format!("w.w + K.w = {s} is odd")));
    }
    Ok(parity_sign(s / 2))
}

/// Orientations for `w` and `w + Nv`: `+1` unless `N = 2 mod 4`, where the
/// sign is `(-1)^(v.v)`.
pub fn sign_lift_compare(n: usize, v_sq: i64) -> i8 {
    if n % 4 == 2 {
        parity_sign(v_sq)
    } else {
        1
    }
}

/// Effect of the dualizing map `M^w -> M^-w`: `+1` for odd `N`,
/// `(-1)^(w.w)` for even `N`.
pub fn sign_dual_compare(n: usize, w_sq: i64) -> i8 {
    if n % 2 == 1 {
        1
    } else {
        parity_sign(w_sq)
    }
}

/// `q^w` against `q^-w`: `+1` for odd `N`, `(-1)^((b2+ - b1 + 1)/2)` for
/// even `N`, where `b2+ - b1` must be odd.
pub fn sign_conjugate_bundle(n: usize, b2_plus: i64, b1: i64) -> Result<i8, InvariantError> {
    if n % 2 == 1 {
        return Ok(1);
    }
    let t = b2_plus - b1 + 1;
    if t.rem_euclid(2) != 0 {
        return Err(InvariantError::ParityViolation(format!("b2+ - b1 = {} is even", b2_plus - b1)));
    }
    Ok(parity_sign(t / 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn lp(min_deg: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(min_deg, c)
    }

    fn trefoil() -> LaurentPoly {
        lp(-1, &[1, -1, 1])
    }

    fn fig8() -> LaurentPoly {
        lp(-1, &[-1, 3, -1])
    }

    #[test]
    fn kappa_examples() {
        for n in 2..=10usize {
            let ni = n as i64;
            assert_eq!(kappa(n, ni * (ni * ni - 1), 2 * (ni + 1) * (ni + 1) * (ni - 1)), rat(ni * ni - 1, ni));
        }
        assert_eq!(kappa(5, 0, 0), BigRational::zero());
        assert_eq!(kappa(2, 1, 0), BigRational::one());
        assert_eq!(kappa(3, 0, 3), rat(-1, 1));
    }

    #[test]
    fn dimension_examples() {
        let k3 = ManifoldTopology::k3();
        for n in 2..=10usize {
            let b = BundleData::k3(n);
            let k = kappa(n, b.c2.unwrap(), b.c1_sq);
            assert_eq!(formal_dimension(n, &k, &k3).unwrap(), BigInt::zero());
        }
        let point = ManifoldTopology::new("b2+=0", 0, 0);
        for n in 2..=8usize {
            let k = blow_up_kappa(n);
            let ni = n as i64;
            assert_eq!(formal_dimension(n, &k, &point).unwrap(), BigInt::from(2 * (ni - 1) - (ni * ni - 1)));
            assert_eq!(framed_dimension(n, &k, &point).unwrap(), BigInt::from(2 * (ni - 1)));
        }
        let balanced = ManifoldTopology::new("b2+=b1", 2, 2);
        assert_eq!(formal_dimension(4, &BigRational::zero(), &balanced).unwrap(), BigInt::from(-15));
        assert!(matches!(formal_dimension(3, &rat(1, 24), &k3), Err(InvariantError::NonIntegralDimension(_))));
    }

    #[test]
    fn dimension_zero_examples() {
        let k3 = ManifoldTopology::k3();
        for n in 2..=10usize {
            let b = BundleData::k3(n);
            let ni = n as i64;
            assert_eq!(dimension_zero_kappa(n, &k3, b.c1_sq), Some(rat(ni * ni - 1, ni)));
        }
        for w_sq in -5..=5 {
            assert_eq!(dimension_zero_kappa(2, &ManifoldTopology::new("even", 2, 0), w_sq), None);
            assert_eq!(dimension_zero_kappa(2, &ManifoldTopology::new("even", 4, 2), w_sq), None);
        }
        assert_eq!(dimension_zero_kappa(3, &k3, 0), None);
    }

    #[test]
    fn coprime_examples() {
        assert!(is_coprime(&[1, 0, 0], 7));
        assert!(!is_coprime(&[2, 4], 2));
        assert!(is_coprime(&[3, 5], 15));
        assert!(!is_coprime(&[3, 6], 15));
        assert!(!is_coprime(&[], 3));
    }

    #[test]
    fn q_relative_examples() {
        for n in 2..=9 {
            let q = q_relative(&LaurentPoly::one(), n).unwrap();
            assert_eq!(q.value, BigInt::one());
            assert_eq!(q.sign_determined, n % 2 == 1);
        }
        let q = q_relative(&trefoil(), 2).unwrap();
        assert_eq!((q.value, q.sign_determined, q.degenerate), (BigInt::from(3), false, false));
        let q = q_relative(&trefoil(), 6).unwrap();
        assert!(q.degenerate);
        assert_eq!(q.value, BigInt::zero());
        let q = q_relative(&fig8(), 3).unwrap();
        assert_eq!(q.value, BigInt::from(16));
        assert!(q.sign_determined);
        assert_eq!(q_relative(&fig8(), 2).unwrap().value, BigInt::from(5));
        assert_eq!(q_relative(&trefoil(), 1), Err(InvariantError::BadRank(1)));
    }

    #[test]
    fn shift_unit_is_exact() {
        // Delta(-1) = -3 for the trefoil: the signed even-N product.
        assert_eq!(product_by_resultant(&trefoil(), 2), BigInt::from(-3));
        assert_eq!(product_by_matrix(&trefoil(), 2).unwrap().0, BigInt::from(-3));
        assert_eq!(product_by_resultant(&fig8(), 2), BigInt::from(5));
        // Shifting Delta by t^m changes the resultant by the computed unit only.
        for n in 2..=9usize {
            let base = product_by_resultant(&fig8(), n);
            let (shifted, m) = fig8().to_int_poly();
            let raw = resultant(&shifted, &IntPoly::geometric(n));
            let unit = if n % 2 == 0 && m % 2 != 0 { -BigInt::one() } else { BigInt::one() };
            assert_eq!(raw * unit, base);
        }
    }

    #[test]
    fn homology_examples() {
        assert_eq!(branched_cover_homology(&trefoil(), 2).unwrap().to_string(), "Z/3");
        assert_eq!(branched_cover_homology(&fig8(), 3).unwrap().to_string(), "Z/4 + Z/4");
        assert!(branched_cover_homology(&trefoil(), 6).unwrap().free_rank >= 1);
        assert_eq!(branched_cover_homology(&LaurentPoly::one(), 5).unwrap(), AbelianGroup::trivial());
    }

    #[test]
    fn fintushel_stern_examples() {
        let one = BigInt::one();
        assert_eq!(q_fintushel_stern(&one, &LaurentPoly::one(), 5).unwrap(), one);
        assert_eq!(q_fintushel_stern(&one, &fig8(), 3).unwrap(), BigInt::from(16));
        assert_eq!(q_fintushel_stern(&BigInt::zero(), &fig8(), 3).unwrap(), BigInt::zero());
        assert_eq!(q_fintushel_stern(&BigInt::zero(), &trefoil(), 3).unwrap(), BigInt::zero());
        assert_eq!(
            q_fintushel_stern(&one, &trefoil(), 2),
            Err(InvariantError::EvenN { n: 2, magnitude: BigInt::from(3) })
        );
        // Delta(zeta_3) = -2 for the trefoil
        assert_eq!(q_fintushel_stern(&one, &trefoil(), 3).unwrap(), BigInt::from(4));
    }

    #[test]
    fn fintushel_stern_degenerate() {
        // t^-1 Phi_3(t) vanishes at the primitive cube roots of unity.
        let phi3_sym = lp(-1, &[1, 1, 1]);
        assert!(q_relative(&phi3_sym, 3).unwrap().degenerate);
        assert_eq!(q_fintushel_stern(&BigInt::one(), &phi3_sym, 3), Err(InvariantError::DegenerateProduct(3)));
    }

    #[test]
    fn lift_examples() {
        let base = LiftIndex { kappa: BigRational::zero(), dim: BigInt::zero(), k_offset: 0 };
        let up = lift_shift(&base, 1, 3);
        assert_eq!((up.kappa.clone(), up.dim.clone()), (BigRational::one(), BigInt::from(12)));
        assert_eq!(lift_shift(&base, 0, 3), base);
        assert_eq!(lift_shift(&lift_shift(&base, -1, 5), 1, 5), base);
    }

    #[test]
    fn sign_examples() {
        assert_eq!(sign_complex_compare(3, 5, 0).unwrap(), 1);
        assert_eq!(sign_complex_compare(2, 2, 0).unwrap(), -1);
        assert_eq!(sign_complex_compare(2, 0, 0).unwrap(), 1);
        assert!(matches!(sign_complex_compare(2, 1, 0), Err(InvariantError::ParityViolation(_))));
        assert_eq!(sign_lift_compare(5, 1), 1);
        assert_eq!(sign_lift_compare(4, 1), 1);
        assert_eq!(sign_lift_compare(2, 1), -1);
        assert_eq!(sign_lift_compare(6, 2), 1);
        assert_eq!(sign_dual_compare(7, 3), 1);
        assert_eq!(sign_dual_compare(2, 3), -1);
        assert_eq!(sign_dual_compare(2, 0), 1);
        assert_eq!(sign_conjugate_bundle(3, 2, 0).unwrap(), 1);
        assert_eq!(sign_conjugate_bundle(2, 3, 0).unwrap(), 1);
        assert_eq!(sign_conjugate_bundle(2, 1, 0).unwrap(), -1);
        assert!(matches!(sign_conjugate_bundle(2, 2, 0), Err(InvariantError::ParityViolation(_))));
    }

    #[test]
    fn hypothesis_warning() {
        assert!(ManifoldTopology::k3().hypothesis_warning().is_none());
        assert!(ManifoldTopology::new("CP2", 1, 0).hypothesis_warning().is_some());
    }
}
