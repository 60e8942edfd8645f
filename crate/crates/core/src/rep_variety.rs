//! Flat-connection data: the clock and shift matrices on the 3-torus, the
//! Chern-Simons ladder of the `N` flat points, the torus solutions in the
//! kernel of `Delta(tau_v)`, and an independent count from the Wirtinger
//! presentation of the knot group.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::json::{int_string, rational_string};
use crate::knots::WirtingerPresentation;
use crate::linalg::{
    companion_tau, poly_at_matrix, smith_normal_form, AbelianGroup, CycField, CycMatrix, CycNumber, IntMatrix,
    LinalgError,
};
use crate::poly::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("solution set is infinite (the Alexander product vanishes)")]
    Degenerate,
    #[error("{count} solutions exceed the enumeration cap {cap}")]
    CapExceeded { count: BigInt, cap: usize },
    #[error("rank parameter N = {0} is below 2")]
    BadRank(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `rho(x) = diag(1, zeta, ..., zeta^(N-1))` and the cyclic shift
/// `rho(y): e_i -> e_(i+1)`, whose corner entry is `-1` for even `N` so
/// that the determinant is 1.
pub fn clock_shift(n: usize) -> Result<(CycMatrix, CycMatrix), RepError> {
    if n < 2 {
        return Err(RepError::BadRank(n));
    }
    let field = CycField::new(n);
    let mut clock = CycMatrix::zeros(&field, n, n);
    let mut shift = CycMatrix::zeros(&field, n, n);
    for i in 0..n {
        clock.set(i, i, CycNumber::zeta_pow(&field, i as i64));
    }
    for i in 0..n - 1 {
        shift.set(i + 1, i, CycNumber::one(&field));
    }
    let corner = if n.is_multiple_of(2) { -1 } else { 1 };
    shift.set(0, n - 1, CycNumber::from_int(&field, corner));
    Ok((clock, shift))
}

/// Expected determinant of the clock matrix, `zeta^(N(N-1)/2)`.
pub fn clock_determinant(field: &std::sync::Arc<CycField>, n: usize) -> CycNumber {
    CycNumber::zeta_pow(field, (n * (n - 1) / 2) as i64)
}

/// Coefficient matrix of `M -> (M A - A M)` stacked over the given
/// matrices, acting on `M` flattened row-major.
fn commutant_system(mats: &[&CycMatrix]) -> CycMatrix {
    let n = mats[0].rows();
    let field = mats[0].field().clone();
    let mut sys = CycMatrix::zeros(&field, mats.len() * n * n, n * n);
    for (block, a) in mats.iter().enumerate() {
        for r in 0..n {
            for c in 0..n {
                let eq = block * n * n + r * n + c;
                // (M A)_{rc} = sum_q M_{rq} A_{qc}
                for q in 0..n {
                    let v = a.get(q, c);
                    if !v.is_zero() {
                        let cur = sys.get(eq, r * n + q).clone();
                        sys.set(eq, r * n + q, &cur + v);
                    }
                }
                // (A M)_{rc} = sum_p A_{rp} M_{pc}
                for p in 0..n {
                    let v = a.get(r, p);
                    if !v.is_zero() {
                        let cur = sys.get(eq, p * n + c).clone();
                        sys.set(eq, p * n + c, &cur - v);
                    }
                }
            }
        }
    }
    sys
}

/// Dimension over `Q(zeta_N)` of the matrices commuting with both clock and
/// shift.
pub fn centralizer_dimension(clock: &CycMatrix, shift: &CycMatrix) -> usize {
    let n = clock.rows();
    n * n - commutant_system(&[clock, shift]).rank()
}

/// Verifies the `N` flat points of the 3-torus: determinant-one shift,
/// clock determinant `zeta^(N(N-1)/2)`, commutator `zeta I`, scalar
/// centralizer, and exactly `N` central elements `zeta^k I` of determinant
/// one. Returns `N`.
pub fn verify_t3_points(n: usize) -> Result<usize, RepError> {
    let (clock, shift) = clock_shift(n)?;
    let field = clock.field().clone();
    let fail = |msg: String| Err(RepError::VerificationFailed(msg));
    if !shift.det()?.is_one() {
        return fail(format!("N = {n}: shift does not have determinant 1"));
    }
    // The clock has determinant zeta^(N(N-1)/2) = (-1)^(N-1); it is
    // determinant one only projectively when N is even.
    if clock.det()? != clock_determinant(&field, n) {
        return fail(format!("N = {n}: clock determinant is not zeta^(N(N-1)/2)"));
    }
    let zeta = CycNumber::zeta_pow(&field, 1);
    let comm = clock.try_mul(&shift)?.try_mul(&clock.inverse()?)?.try_mul(&shift.inverse()?)?;
    if comm != CycMatrix::scalar(&field, n, &zeta) {
        return fail(format!("N = {n}: commutator is not zeta * I"));
    }
    let dim = centralizer_dimension(&clock, &shift);
    if dim != 1 {
        return fail(format!("N = {n}: centralizer has dimension {dim}"));
    }
    // Candidate central values +-zeta^k; keep the distinct ones with
    // determinant lambda^N = 1.
    let mut admissible: Vec<CycNumber> = Vec::new();
    for k in 0..n as i64 {
        for sign in [1, -1] {
            let lambda = &CycNumber::zeta_pow(&field, k) * &CycNumber::from_int(&field, sign);
            let scalar = CycMatrix::scalar(&field, n, &lambda);
            let commutes = scalar.try_mul(&clock)? == clock.try_mul(&scalar)?
                && scalar.try_mul(&shift)? == shift.try_mul(&scalar)?;
            if commutes && scalar.det()?.is_one() && !admissible.contains(&lambda) {
                admissible.push(lambda);
            }
        }
    }
    if admissible.len() != n {
        return fail(format!("N = {n}: {} admissible central elements", admissible.len()));
    }
    Ok(admissible.len())
}

/// Chern-Simons values of the flat points `alpha_k` together with the
/// spectral-flow constants of one step and of the full loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernSimonsLadder {
    pub n: usize,
    /// `-k/N mod 1` for `k = 0..N-1`.
    pub values: Vec<BigRational>,
    pub d_step: i64,
    pub kappa_step: BigRational,
    pub d_loop: i64,
    pub kappa_loop: BigRational,
}

impl ChernSimonsLadder {
    pub fn to_json(&self) -> Value {
        json!({
            "values": self.values.iter().map(rational_string).collect::<Vec<_>>(),
            "d_step": self.d_step,
            "kappa_step": rational_string(&self.kappa_step),
            "d_loop": self.d_loop,
            "kappa_loop": rational_string(&self.kappa_loop),
        })
    }
}

fn frac_part(q: &BigRational) -> BigRational {
    q - q.floor()
}

pub fn chern_simons_ladder(n: usize) -> Result<ChernSimonsLadder, RepError> {
    if n < 2 {
        return Err(RepError::BadRank(n));
    }
    let nn = BigInt::from(n);
    let values = (0..n).map(|k| frac_part(&BigRational::new(-BigInt::from(k), nn.clone()))).collect();
    let kappa_step = BigRational::new(BigInt::one(), nn);
    Ok(ChernSimonsLadder {
        n,
        values,
        d_step: 4,
        kappa_loop: &kappa_step * BigRational::from_integer(BigInt::from(n)),
        kappa_step,
        d_loop: 4 * n as i64,
    })
}

/// Point of the maximal torus in root-lattice coordinates, each in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusElement {
    pub n: usize,
    pub coords: Vec<BigRational>,
}

impl TorusElement {
    pub fn new(n: usize, coords: Vec<BigRational>) -> Self {
        TorusElement { n, coords: coords.iter().map(frac_part).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// A flat point `alpha_k` on the lift ladder, carrying its torus data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatPoint {
    pub h: TorusElement,
    pub k_lift: i64,
}

fn int_mul_rational(m: &IntMatrix, v: &[BigRational]) -> Vec<BigRational> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .zip(v)
                .fold(BigRational::zero(), |acc, (a, x)| acc + BigRational::from_integer(a.clone()) * x)
        })
        .collect()
}

/// Explicit elements of `ker(Delta(tau_v))` on the torus. With
/// `U M V = D`, the solutions are `h = V (c_1/d_1, ..., c_r/d_r) mod 1`.
pub fn kernel_torus_solutions(delta: &LaurentPoly, n: usize, cap: usize) -> Result<Vec<TorusElement>, RepError> {
    let c = companion_tau(n)?;
    let m = poly_at_matrix(delta, &c)?;
    let snf = smith_normal_form(&m);
    if snf.invariant_factors.iter().any(Zero::is_zero) {
        return Err(RepError::Degenerate);
    }
    let count: BigInt = snf.invariant_factors.iter().product();
    if count > BigInt::from(cap) {
        return Err(RepError::CapExceeded { count, cap });
    }
    let dims: Vec<usize> = snf
        .invariant_factors
        .iter()
        .map(|d| usize::try_from(d).expect("bounded by cap"))
        .collect();
    let total: usize = dims.iter().product();
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0usize; dims.len()];
    for _ in 0..total {
        let g: Vec<BigRational> = digits
            .iter()
            .zip(&dims)
            .map(|(&c, &d)| BigRational::new(BigInt::from(c), BigInt::from(d)))
            .collect();
        let h = TorusElement::new(n, int_mul_rational(&snf.v, &g));
        if !int_mul_rational(&m, &h.coords).iter().all(BigRational::is_integer) {
            return Err(RepError::VerificationFailed(format!("M h is not integral for h = {:?}", h.coords)));
        }
        out.push(h);
        for (digit, &d) in digits.iter_mut().zip(&dims) {
            *digit += 1;
            if *digit < d {
                break;
            }
            *digit = 0;
        }
    }
    Ok(out)
}

/// Group structure of the kernel (isomorphic to the cokernel for a
/// nonsingular square matrix).
pub fn kernel_group(delta: &LaurentPoly, n: usize) -> Result<AbelianGroup, RepError> {
    let m = poly_at_matrix(delta, &companion_tau(n)?)?;
    Ok(crate::linalg::cokernel(&m))
}

/// Integer system `A` whose torus solutions `A x = 0 mod Z` are the
/// homomorphisms sending every meridian into the coset `v H`, with the base
/// meridian's torus part pinned to zero.
///
/// A relation `m_k = m_j m_i m_j^-1` becomes `t_k = T t_i + (1 - T) t_j`
/// with `T = tau_v`; inverse conjugation uses `T = tau_v^-1 = C^(N-1)`.
pub fn wirtinger_linear_system(w: &WirtingerPresentation, n: usize) -> Result<IntMatrix, RepError> {
    let c = companion_tau(n)?;
    let c_inv = c.pow(n as u32 - 1);
    let r = n - 1;
    let id = IntMatrix::identity(r);
    let column_of = |g: usize| -> Option<usize> {
        match g.cmp(&w.base_meridian()) {
            std::cmp::Ordering::Less => Some(g),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(g - 1),
        }
    };
    let unknowns = w.n_generators() - 1;
    let mut a = IntMatrix::zeros(w.relations().len() * r, unknowns * r);
    for (row, rel) in w.relations().iter().enumerate() {
        let tau = if rel.sign > 0 { &c } else { &c_inv };
        let blocks = [(rel.out, id.clone()), (rel.input, -tau), (rel.over, &(-&id) + tau)];
        for (g, block) in blocks {
            let Some(col) = column_of(g) else { continue };
            let mut acc = IntMatrix::zeros(r, r);
            for i in 0..r {
                for j in 0..r {
                    acc.set(i, j, a.get(row * r + i, col * r + j) + block.get(i, j));
                }
            }
            a.set_block(row * r, col * r, &acc);
        }
    }
    Ok(a)
}

/// Number of torus solutions of the pinned Wirtinger system, via the Smith
/// form of the stacked matrix.
pub fn wirtinger_torus_count(w: &WirtingerPresentation, n: usize) -> Result<BigInt, RepError> {
    let a = wirtinger_linear_system(w, n)?;
    if a.cols() == 0 {
        return Ok(BigInt::one());
    }
    let snf = smith_normal_form(&a);
    if snf.rank() < a.cols() {
        return Err(RepError::Degenerate);
    }
    Ok(snf.invariant_factors.iter().product())
}

/// Summary used by the `repvar` command.
pub fn repvar_report(delta: &LaurentPoly, w: &WirtingerPresentation, n: usize) -> Result<Value, RepError> {
    let t3_points = verify_t3_points(n)?;
    let ladder = chern_simons_ladder(n)?;
    let group = kernel_group(delta, n)?;
    let kernel_count = group.order();
    let wirtinger = match wirtinger_torus_count(w, n) {
        Ok(c) => Some(c),
        Err(RepError::Degenerate) => None,
        Err(e) => return Err(e),
    };
    Ok(json!({
        "schema": 1,
        "N": n,
        "t3_points": t3_points,
        "cs_ladder": ladder.to_json(),
        "kernel_count": kernel_count.as_ref().map(int_string),
        "wirtinger_count": wirtinger.as_ref().map(int_string),
        "group": group.to_json(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knots::{braid_closure_wirtinger, parse_braid};

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn clock_shift_small() {
        let (x, y) = clock_shift(2).unwrap();
        let f = x.field().clone();
        assert_eq!(x.get(1, 1), &CycNumber::from_int(&f, -1));
        assert_eq!(y.get(0, 1), &CycNumber::from_int(&f, -1));
        assert_eq!(y.get(1, 0), &CycNumber::one(&f));
        assert_eq!(x.det().unwrap(), CycNumber::from_int(&f, -1));
        assert!(y.det().unwrap().is_one());
        let (_, y3) = clock_shift(3).unwrap();
        assert_eq!(y3.get(0, 2), &CycNumber::one(y3.field()));
        assert_eq!(clock_shift(1).unwrap_err(), RepError::BadRank(1));
    }

    #[test]
    fn t3_small() {
        assert_eq!(verify_t3_points(2).unwrap(), 2);
        assert_eq!(verify_t3_points(3).unwrap(), 3);
        assert_eq!(verify_t3_points(6).unwrap(), 6);
    }

    #[test]
    fn centralizer_of_clock_alone_is_diagonal() {
        let (x, _) = clock_shift(5).unwrap();
        let sys = commutant_system(&[&x]);
        assert_eq!(25 - sys.rank(), 5);
    }

    #[test]
    fn ladder() {
        let l = chern_simons_ladder(3).unwrap();
        assert_eq!(l.values, vec![rat(0, 1), rat(2, 3), rat(1, 3)]);
        assert_eq!(l.kappa_loop, BigRational::one());
        assert_eq!(l.d_loop, 12);
    }

    #[test]
    fn kernel_examples() {
        let unknot = kernel_torus_solutions(&LaurentPoly::one(), 4, 10).unwrap();
        assert_eq!(unknot.len(), 1);
        assert!(unknot[0].is_identity());
        let tref = LaurentPoly::from_ints(-1, &[1, -1, 1]);
        let mut sols = kernel_torus_solutions(&tref, 2, 10).unwrap();
        sols.sort();
        let coords: Vec<_> = sols.iter().map(|h| h.coords[0].clone()).collect();
        assert_eq!(coords, vec![rat(0, 1), rat(1, 3), rat(2, 3)]);
        let fig8 = LaurentPoly::from_ints(-1, &[-1, 3, -1]);
        let sols = kernel_torus_solutions(&fig8, 3, 100).unwrap();
        assert_eq!(sols.len(), 16);
        assert_eq!(kernel_group(&fig8, 3).unwrap().to_string(), "Z/4 + Z/4");
        assert_eq!(kernel_torus_solutions(&tref, 6, 100), Err(RepError::Degenerate));
        assert!(matches!(kernel_torus_solutions(&fig8, 3, 10), Err(RepError::CapExceeded { .. })));
    }

    #[test]
    fn wirtinger_examples() {
        let count = |s: &str, n| wirtinger_torus_count(&braid_closure_wirtinger(&parse_braid(s).unwrap()), n);
        assert_eq!(count("", 3).unwrap(), BigInt::one());
        assert_eq!(count("1 1 1", 2).unwrap(), BigInt::from(3));
        assert_eq!(count("1 -2 1 -2", 2).unwrap(), BigInt::from(5));
        assert_eq!(count("1 -2 1 -2", 3).unwrap(), BigInt::from(16));
        assert_eq!(count("1 1 1", 6), Err(RepError::Degenerate));
    }
}
