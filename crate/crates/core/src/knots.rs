//! Braid-word knot input, Wirtinger presentations of closed braids, and the
//! Alexander polynomial by two independent routes (reduced Burau
//! representation and Fox free calculus).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::{LaurentPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("syntax error in braid word: {0}")]
    Syntax(String),
    #[error("braid closure has {components} components, expected a knot")]
    NotAKnot { components: usize },
    #[error("letter {letter} out of range for a braid on {strands} strands")]
    IndexOutOfRange { letter: i64, strands: usize },
    #[error("Fox minor of the Alexander matrix vanishes")]
    DegenerateMatrix,
    #[error("internal error: {0}")]
    Internal(String),
    #[error("unknown knot {0:?}")]
    UnknownKnot(String),
    #[error("knot table line {line}: {msg}")]
    TableSyntax { line: usize, msg: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A braid on `strands` strands whose closure is a knot. Letter `i` stands
/// for the Artin generator `sigma_|i|`, inverted when `i < 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i64>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i64>) -> Result<Self, KnotError> {
        if strands == 0 {
            return Err(KnotError::Syntax("strand count must be at least 1".into()));
        }
        for &l in &letters {
            if l == 0 {
                return Err(KnotError::Syntax("letter 0 is not a generator".into()));
            }
            if l.unsigned_abs() as usize >= strands {
                return Err(KnotError::IndexOutOfRange { letter: l, strands });
            }
        }
        let b = BraidWord { strands, letters };
        let components = b.closure_components();
        if components != 1 {
            return Err(KnotError::NotAKnot { components });
        }
        Ok(b)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    /// Position at the bottom of the braid reached by the strand that
    /// starts at each top position.
    pub fn permutation(&self) -> Vec<usize> {
        // occupant[p] = top position of the strand now at position p
        let mut occupant: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let a = l.unsigned_abs() as usize - 1;
            occupant.swap(a, a + 1);
        }
        let mut perm = vec![0; self.strands];
        for (p, &start) in occupant.iter().enumerate() {
            perm[start] = p;
        }
        perm
    }

    /// Number of components of the closure (cycles of the permutation).
    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for s in 0..self.strands {
            if seen[s] {
                continue;
            }
            cycles += 1;
            let mut p = s;
            while !seen[p] {
                seen[p] = true;
                p = perm[p];
            }
        }
        cycles
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.signum()).sum()
    }

    /// Markov stabilization: one more strand and a positive letter on it.
    pub fn stabilize(&self) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.push(self.strands as i64);
        BraidWord { strands: self.strands + 1, letters }
    }
}

impl FromStr for BraidWord {
    type Err = KnotError;

    /// Whitespace-separated nonzero integers, optionally prefixed by
    /// `strands=<n>;`. Without the prefix the strand count is
    /// `max |letter| + 1`.
    fn from_str(text: &str) -> Result<Self, KnotError> {
        parse_braid(text)
    }
}

pub fn parse_braid(text: &str) -> Result<BraidWord, KnotError> {
    let mut body = text.trim();
    let mut strands = None;
    if let Some(rest) = body.strip_prefix("strands=") {
        let (count, tail) = rest
            .split_once(';')
            .ok_or_else(|| KnotError::Syntax(format!("missing ';' after strand count in {text:?}")))?;
        let n: usize = count
            .trim()
            .parse()
            .map_err(|_| KnotError::Syntax(format!("bad strand count {count:?}")))?;
        strands = Some(n);
        body = tail;
    }
    let letters = body
        .split_whitespace()
        .map(|tok| {
            let v: i64 = tok.parse().map_err(|_| KnotError::Syntax(format!("non-integer token {tok:?}")))?;
            if v == 0 {
                return Err(KnotError::Syntax("letter 0 is not a generator".into()));
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let strands = strands.unwrap_or_else(|| letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0) + 1);
    BraidWord::new(strands, letters)
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let max = self.letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0);
        if self.strands != max + 1 {
            write!(f, "strands={};", self.strands)?;
            if !self.letters.is_empty() {
                write!(f, " ")?;
            }
        }
        let words: Vec<String> = self.letters.iter().map(i64::to_string).collect();
        write!(f, "{}", words.join(" "))
    }
}

/// One crossing relation `m_out = m_over^s m_in m_over^-s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WirtingerRelation {
    pub out: usize,
    pub input: usize,
    pub over: usize,
    pub sign: i8,
}

/// Knot-group presentation with one meridian generator per arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WirtingerPresentation {
    n_generators: usize,
    relations: Vec<WirtingerRelation>,
    base_meridian: usize,
    /// Longitude as `(generator, exponent)` pairs; the final entry carries
    /// the framing correction on the base meridian.
    longitude: Vec<(usize, i64)>,
}

impl WirtingerPresentation {
    pub fn new(
        n_generators: usize,
        relations: Vec<WirtingerRelation>,
        base_meridian: usize,
        longitude: Vec<(usize, i64)>,
    ) -> Result<Self, KnotError> {
        let in_range = |g: usize| g < n_generators;
        if !in_range(base_meridian)
            || relations.iter().any(|r| !(in_range(r.out) && in_range(r.input) && in_range(r.over)) || r.sign.abs() != 1)
            || longitude.iter().any(|&(g, _)| !in_range(g))
        {
            return Err(KnotError::Internal("presentation references an invalid generator".into()));
        }
        Ok(WirtingerPresentation { n_generators, relations, base_meridian, longitude })
    }

    pub fn n_generators(&self) -> usize {
        self.n_generators
    }

    pub fn relations(&self) -> &[WirtingerRelation] {
        &self.relations
    }

    pub fn base_meridian(&self) -> usize {
        self.base_meridian
    }

    pub fn longitude(&self) -> &[(usize, i64)] {
        &self.longitude
    }

    /// Image of the longitude in the abelianization `Z`; zero for a
    /// correctly framed longitude.
    pub fn longitude_degree(&self) -> i64 {
        self.longitude.iter().map(|&(_, e)| e).sum()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

struct RawCrossing {
    over: usize,
    under_in: usize,
    under_out: usize,
    sign: i8,
}

/// Wirtinger presentation of the closure of `b`, read off the standard
/// closed-braid diagram with strands running downward.
///
/// At `sigma_i` the strand at position `i` crosses over to position `i+1`;
/// at `sigma_i^-1` the strand at position `i+1` crosses over to position
/// `i`. The under-strand starts a new arc at every crossing.
pub fn braid_closure_wirtinger(b: &BraidWord) -> WirtingerPresentation {
    let n = b.strands;
    let mut label: Vec<usize> = (0..n).collect();
    let mut next = n;
    let mut crossings = Vec::with_capacity(b.letters.len());
    for &l in &b.letters {
        let a = l.unsigned_abs() as usize - 1;
        let (over, under_in) = if l > 0 { (label[a], label[a + 1]) } else { (label[a + 1], label[a]) };
        let under_out = next;
        next += 1;
        if l > 0 {
            label[a + 1] = over;
            label[a] = under_out;
        } else {
            label[a] = over;
            label[a + 1] = under_out;
        }
        crossings.push(RawCrossing { over, under_in, under_out, sign: l.signum() as i8 });
    }
    let mut uf = UnionFind((0..next).collect());
    for (p, &bottom) in label.iter().enumerate() {
        uf.union(p, bottom);
    }
    let mut canon = vec![usize::MAX; next];
    let mut n_generators = 0;
    for raw in 0..next {
        let root = uf.find(raw);
        if canon[root] == usize::MAX {
            canon[root] = n_generators;
            n_generators += 1;
        }
        canon[raw] = canon[root];
    }
    let relations = crossings
        .iter()
        .map(|c| WirtingerRelation {
            out: canon[c.under_out],
            input: canon[c.under_in],
            over: canon[c.over],
            sign: c.sign,
        })
        .collect();
    let base = canon[0];

    // Walk the knot once from the top of position 0, recording the over-arc
    // at every undercrossing.
    let mut longitude = Vec::new();
    let mut pos = 0usize;
    loop {
        for (c, &l) in crossings.iter().zip(&b.letters) {
            let a = l.unsigned_abs() as usize - 1;
            if pos != a && pos != a + 1 {
                continue;
            }
            let moving_right = pos == a;
            let under = (l > 0) != moving_right;
            if under {
                longitude.push((canon[c.over], c.sign as i64));
            }
            pos = if moving_right { a + 1 } else { a };
        }
        if pos == 0 {
            break;
        }
    }
    let writhe = b.writhe();
    if writhe != 0 {
        longitude.push((base, -writhe));
    }
    WirtingerPresentation::new(n_generators, relations, base, longitude)
        .expect("closed-braid presentation is well formed")
}

type LaurentMatrix = Vec<Vec<LaurentPoly>>;

fn laurent_identity(n: usize) -> LaurentMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() }).collect())
        .collect()
}

fn laurent_mul(a: &LaurentMatrix, b: &LaurentMatrix) -> LaurentMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![LaurentPoly::zero(); m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                if !bk[j].is_zero() {
                    out[i][j] = &out[i][j] + &(&a[i][k] * &bk[j]);
                }
            }
        }
    }
    out
}

/// Determinant over `Z[t, t^-1]` by Bareiss elimination; every division is
/// exact in an integral domain.
fn laurent_det(mut a: LaurentMatrix) -> Result<LaurentPoly, KnotError> {
    let n = a.len();
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(LaurentPoly::zero());
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .exact_div(&prev)
                    .ok_or_else(|| KnotError::Internal("inexact Bareiss division".into()))?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Reduced Burau matrix of `sigma_i^{+-1}` on `strands` strands.
///
/// `sigma_i` differs from the identity only in row `i-1`, which reads
/// `(t, -t, 1)` in columns `i-2, i-1, i`; the inverse has `(1, -t^-1, t^-1)`
/// there.
pub fn reduced_burau_generator(strands: usize, letter: i64) -> Vec<Vec<LaurentPoly>> {
    let dim = strands - 1;
    let k = letter.unsigned_abs() as usize - 1;
    let mut m = laurent_identity(dim);
    let t = LaurentPoly::t();
    let t_inv = LaurentPoly::monomial(BigInt::one(), -1);
    let (left, diag, right) = if letter > 0 {
        (t.clone(), -&t, LaurentPoly::one())
    } else {
        (LaurentPoly::one(), -&t_inv, t_inv.clone())
    };
    m[k][k] = diag;
    if k >= 1 {
        m[k][k - 1] = left;
    }
    if k + 1 < dim {
        m[k][k + 1] = right;
    }
    m
}

pub fn reduced_burau(b: &BraidWord) -> Vec<Vec<LaurentPoly>> {
    b.letters
        .iter()
        .fold(laurent_identity(b.strands - 1), |acc, &l| laurent_mul(&acc, &reduced_burau_generator(b.strands, l)))
}

/// Alexander polynomial of the closure as
/// `det(I - Burau(b)) * (1 - t) / (1 - t^strands)`, symmetrized.
pub fn alexander_burau(b: &BraidWord) -> Result<LaurentPoly, KnotError> {
    let dim = b.strands - 1;
    let burau = reduced_burau(b);
    let mut m = laurent_identity(dim);
    for i in 0..dim {
        for j in 0..dim {
            m[i][j] = &m[i][j] - &burau[i][j];
        }
    }
    let det = laurent_det(m)?;
    let one_minus_t = LaurentPoly::from_ints(0, &[1, -1]);
    let denom = &LaurentPoly::one() - &LaurentPoly::monomial(BigInt::one(), b.strands as i64);
    let raw = (&det * &one_minus_t)
        .exact_div(&denom)
        .ok_or_else(|| KnotError::Internal(format!("1 - t^{} does not divide the Burau determinant", b.strands)))?;
    Ok(raw.symmetrize_alexander()?)
}

/// Alexander matrix of the presentation: Fox derivatives of the relators
/// `m_over^s m_in m_over^-s m_out^-1`, abelianized by `m_i -> t`. Rows are
/// relations, columns generators.
pub fn alexander_matrix(w: &WirtingerPresentation) -> Vec<Vec<LaurentPoly>> {
    let t = LaurentPoly::t();
    let t_inv = LaurentPoly::monomial(BigInt::one(), -1);
    w.relations
        .iter()
        .map(|r| {
            let mut row = vec![LaurentPoly::zero(); w.n_generators];
            let (d_over, d_in) = if r.sign > 0 {
                (&LaurentPoly::one() - &t, t.clone())
            } else {
                (&LaurentPoly::one() - &t_inv, t_inv.clone())
            };
            row[r.over] = &row[r.over] + &d_over;
            row[r.input] = &row[r.input] + &d_in;
            row[r.out] = &row[r.out] - &LaurentPoly::one();
            row
        })
        .collect()
}

/// Alexander polynomial from the Fox matrix, dropping the last relation and
/// the base-meridian column.
pub fn alexander_fox(w: &WirtingerPresentation) -> Result<LaurentPoly, KnotError> {
    if w.relations.is_empty() {
        return Ok(LaurentPoly::one());
    }
    let full = alexander_matrix(w);
    let minor: Vec<Vec<LaurentPoly>> = full[..full.len() - 1]
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != w.base_meridian)
                .map(|(_, p)| p.clone())
                .collect()
        })
        .collect();
    if minor.iter().any(|row| row.len() != minor.len()) {
        return Err(KnotError::Internal(format!(
            "{} relations against {} generators",
            w.relations.len(),
            w.n_generators
        )));
    }
    let det = laurent_det(minor)?;
    if det.is_zero() {
        return Err(KnotError::DegenerateMatrix);
    }
    Ok(det.symmetrize_alexander()?)
}

/// Named braid words, sorted by name.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KnotTable {
    entries: BTreeMap<String, BraidWord>,
}

const DEFAULT_TABLE: &str = include_str!("../data/knots.txt");

impl KnotTable {
    /// Table shipped with the crate: unknot, 3_1, 4_1, 5_1, 5_2, 6_1.
    pub fn builtin() -> Self {
        Self::parse(DEFAULT_TABLE).expect("built-in knot table parses")
    }

    /// Lines `name: braid-word`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, KnotError> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (name, braid) = line
                .split_once(':')
                .ok_or_else(|| KnotError::TableSyntax { line: idx + 1, msg: "expected 'name: braid'".into() })?;
            let name = name.trim();
            if name.is_empty() {
                return Err(KnotError::TableSyntax { line: idx + 1, msg: "empty knot name".into() });
            }
            let word = parse_braid(braid)
                .map_err(|e| KnotError::TableSyntax { line: idx + 1, msg: e.to_string() })?;
            if entries.insert(name.to_string(), word).is_some() {
                return Err(KnotError::TableSyntax { line: idx + 1, msg: format!("duplicate name {name:?}") });
            }
        }
        Ok(KnotTable { entries })
    }

    pub fn get(&self, name: &str) -> Option<&BraidWord> {
        self.entries.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &BraidWord)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// A table name, or else a literal braid word.
    pub fn resolve(&self, knot_ref: &str) -> Result<BraidWord, KnotError> {
        if let Some(b) = self.get(knot_ref) {
            return Ok(b.clone());
        }
        parse_braid(knot_ref).map_err(|e| match e {
            KnotError::Syntax(_) => KnotError::UnknownKnot(knot_ref.to_string()),
            other => other,
        })
    }

    /// Checks every entry by the Burau/Fox cross-method equality and returns
    /// the Alexander polynomials.
    pub fn validate(&self) -> Result<BTreeMap<String, LaurentPoly>, KnotError> {
        let mut out = BTreeMap::new();
        for (name, b) in &self.entries {
            let burau = alexander_burau(b)?;
            let fox = alexander_fox(&braid_closure_wirtinger(b))?;
            if burau != fox {
                return Err(KnotError::Internal(format!("{name}: Burau gives {burau}, Fox gives {fox}")));
            }
            out.insert(name.clone(), burau);
        }
        Ok(out)
    }
}

/// Symmetrized Alexander polynomial, checked by both routes.
pub fn alexander(b: &BraidWord) -> Result<LaurentPoly, KnotError> {
    let burau = alexander_burau(b)?;
    let fox = alexander_fox(&braid_closure_wirtinger(b))?;
    if burau != fox {
        return Err(KnotError::Internal(format!("Burau gives {burau}, Fox gives {fox}")));
    }
    Ok(burau)
}

/// `|Delta(-1)|`.
pub fn determinant(delta: &LaurentPoly) -> BigInt {
    let v: BigInt = delta.terms().map(|(k, c)| if k % 2 == 0 { c.clone() } else { -c.clone() }).sum();
    if v < BigInt::zero() {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(min_deg: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(min_deg, c)
    }

    #[test]
    fn parse_examples() {
        let t = parse_braid("1 1 1").unwrap();
        assert_eq!((t.strands(), t.letters()), (2, &[1, 1, 1][..]));
        let f = parse_braid("1 -2 1 -2").unwrap();
        assert_eq!(f.strands(), 3);
        assert_eq!(parse_braid("1 1"), Err(KnotError::NotAKnot { components: 2 }));
        assert!(matches!(parse_braid("1 x"), Err(KnotError::Syntax(_))));
        assert!(matches!(parse_braid("1 0 1"), Err(KnotError::Syntax(_))));
        assert_eq!(parse_braid("strands=2; 3"), Err(KnotError::IndexOutOfRange { letter: 3, strands: 2 }));
        let u = parse_braid("strands=1;").unwrap();
        assert_eq!((u.strands(), u.letters().len()), (1, 0));
        assert_eq!(parse_braid("").unwrap(), u);
        assert_eq!(parse_braid("strands=3; 1 2").unwrap().to_string(), "1 2");
        assert_eq!(parse_braid("strands=4; 1 2 3").unwrap().stabilize().to_string(), "1 2 3 4");
        assert_eq!(u.to_string(), "");
        assert_eq!(BraidWord::new(3, vec![1]).unwrap_err(), KnotError::NotAKnot { components: 2 });
    }

    #[test]
    fn wirtinger_examples() {
        let w = braid_closure_wirtinger(&parse_braid("").unwrap());
        assert_eq!((w.n_generators(), w.relations().len()), (1, 0));
        let w = braid_closure_wirtinger(&parse_braid("1 1 1").unwrap());
        assert_eq!((w.n_generators(), w.relations().len()), (3, 3));
        let w = braid_closure_wirtinger(&parse_braid("1 -2 1 -2").unwrap());
        assert_eq!((w.n_generators(), w.relations().len()), (4, 4));
        assert_eq!(w.longitude_degree(), 0);
    }

    #[test]
    fn longitude_is_null_homologous() {
        for (_, b) in KnotTable::builtin().iter() {
            let w = braid_closure_wirtinger(b);
            assert_eq!(w.longitude_degree(), 0);
            // one entry per crossing passed under, plus the framing term
            let expected = b.letters().len() + usize::from(b.writhe() != 0);
            assert_eq!(w.longitude().len(), expected);
        }
    }

    #[test]
    fn burau_generators_invert_and_braid() {
        for n in 2..=5usize {
            for i in 1..n as i64 {
                let g = reduced_burau_generator(n, i);
                let h = reduced_burau_generator(n, -i);
                assert_eq!(laurent_mul(&g, &h), laurent_identity(n - 1));
            }
            for i in 1..(n as i64 - 1) {
                let a = reduced_burau_generator(n, i);
                let b = reduced_burau_generator(n, i + 1);
                let lhs = laurent_mul(&laurent_mul(&a, &b), &a);
                let rhs = laurent_mul(&laurent_mul(&b, &a), &b);
                assert_eq!(lhs, rhs, "braid relation n={n} i={i}");
            }
        }
    }

    #[test]
    fn burau_examples() {
        assert_eq!(alexander_burau(&parse_braid("").unwrap()).unwrap(), LaurentPoly::one());
        assert_eq!(alexander_burau(&parse_braid("1").unwrap()).unwrap(), LaurentPoly::one());
        assert_eq!(alexander_burau(&parse_braid("1 1 1").unwrap()).unwrap(), lp(-1, &[1, -1, 1]));
        assert_eq!(alexander_burau(&parse_braid("1 -2 1 -2").unwrap()).unwrap(), lp(-1, &[-1, 3, -1]));
        assert_eq!(alexander_burau(&parse_braid("-1 -1 -1").unwrap()).unwrap(), lp(-1, &[1, -1, 1]));
    }

    #[test]
    fn fox_examples() {
        let fox = |s: &str| alexander_fox(&braid_closure_wirtinger(&parse_braid(s).unwrap())).unwrap();
        assert_eq!(fox(""), LaurentPoly::one());
        assert_eq!(fox("1 1 1"), lp(-1, &[1, -1, 1]));
        assert_eq!(fox("1 1 1 1 1"), lp(-2, &[1, -1, 1, -1, 1]));
        assert_eq!(fox("1 -2 1 -2"), lp(-1, &[-1, 3, -1]));
    }

    #[test]
    fn fox_degenerate_minor() {
        // Relations that say nothing: m0 = m0 m0 m0^-1.
        let r = WirtingerRelation { out: 0, input: 0, over: 0, sign: 1 };
        let w = WirtingerPresentation::new(2, vec![r, r], 0, vec![]).unwrap();
        assert_eq!(alexander_fox(&w), Err(KnotError::DegenerateMatrix));
        assert!(WirtingerPresentation::new(1, vec![WirtingerRelation { over: 1, ..r }], 0, vec![]).is_err());
    }

    #[test]
    fn builtin_table_validates() {
        let table = KnotTable::builtin();
        assert_eq!(table.len(), 6);
        let polys = table.validate().unwrap();
        assert_eq!(polys["unknot"], LaurentPoly::one());
        assert_eq!(polys["3_1"], lp(-1, &[1, -1, 1]));
        assert_eq!(polys["4_1"], lp(-1, &[-1, 3, -1]));
        assert_eq!(polys["5_1"], lp(-2, &[1, -1, 1, -1, 1]));
        assert_eq!(polys["5_2"], lp(-1, &[2, -3, 2]));
        assert_eq!(polys["6_1"], lp(-1, &[-2, 5, -2]));
    }

    #[test]
    fn determinants() {
        let polys = KnotTable::builtin().validate().unwrap();
        let det = |k: &str| determinant(&polys[k]);
        assert_eq!(det("3_1"), BigInt::from(3));
        assert_eq!(det("4_1"), BigInt::from(5));
        assert_eq!(det("5_1"), BigInt::from(5));
        assert_eq!(det("5_2"), BigInt::from(7));
        assert_eq!(det("6_1"), BigInt::from(9));
    }

    #[test]
    fn stabilization_preserves_alexander() {
        for (_, b) in KnotTable::builtin().iter() {
            let s = b.stabilize();
            assert_eq!(s.closure_components(), 1);
            assert_eq!(alexander(&s).unwrap(), alexander(b).unwrap());
        }
    }

    #[test]
    fn table_parsing() {
        let t = KnotTable::parse("# comment\n\ntref: 1 1 1 # trailing\n").unwrap();
        assert_eq!(t.get("tref").unwrap().letters(), &[1, 1, 1]);
        assert!(matches!(KnotTable::parse("a: 1 1 1\na: 1 1 1"), Err(KnotError::TableSyntax { line: 2, .. })));
        assert!(matches!(KnotTable::parse("nocolon"), Err(KnotError::TableSyntax { line: 1, .. })));
        assert!(matches!(KnotTable::parse("x: 1 1"), Err(KnotError::TableSyntax { line: 1, .. })));
        assert_eq!(t.resolve("1 -2 1 -2").unwrap().strands(), 3);
        assert!(matches!(t.resolve("9_42"), Err(KnotError::UnknownKnot(_))));
        assert!(matches!(t.resolve("1 1"), Err(KnotError::NotAKnot { .. })));
    }
}
