//! Exact integer and rational linear algebra.
//!
//! Characteristic polynomials are stored low degree first: `charpoly[k]` is
//! the coefficient of `x^k` in `det(xI - M)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::bitmat::BitMatrix;
use crate::decompose::{Classification, DecompositionBlocks, Label};
use crate::error::{Error, Result};
use crate::graph::RiordanGraph;

pub type IntMatrix = Vec<Vec<i64>>;
pub type RatMatrix = Vec<Vec<BigRational>>;

fn ser_big<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_big_vec<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn de_big<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

fn de_big_vec<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigInt>, D::Error> {
    let v = Vec::<String>::deserialize(d)?;
    v.iter()
        .map(|s| s.parse().map_err(serde::de::Error::custom))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inertia {
    pub plus: usize,
    pub zero: usize,
    pub minus: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactSummary {
    #[serde(serialize_with = "ser_big_vec", deserialize_with = "de_big_vec")]
    pub charpoly: Vec<BigInt>,
    #[serde(serialize_with = "ser_big", deserialize_with = "de_big")]
    pub det: BigInt,
    pub rank: usize,
    pub nullity: usize,
    pub inertia: Inertia,
}

impl ExactSummary {
    pub fn of(m: &IntMatrix) -> Result<Self> {
        let n = m.len();
        let charpoly = charpoly(m)?;
        let inertia = inertia_from_charpoly(&charpoly)?;
        let mut det = charpoly[0].clone();
        if n % 2 == 1 {
            det = -det;
        }
        Ok(ExactSummary {
            charpoly,
            det,
            rank: n - inertia.zero,
            nullity: inertia.zero,
            inertia,
        })
    }

    pub fn of_bits(a: &BitMatrix) -> Result<Self> {
        Self::of(&a.to_i64())
    }
}

fn check_square(m: &IntMatrix) -> Result<usize> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("matrix is not square".into()));
    }
    Ok(n)
}

/// Ring operations Faddeev-LeVerrier needs; a `false`/`None` return reports
/// overflow so the caller can retry in a wider type.
trait FlRing: Clone {
    fn ring_zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn add_scaled(&mut self, a: &Self, k: i64) -> bool;
    fn div_exact(&self, k: i64) -> Option<Self>;
    fn negated(&self) -> Self;
    fn into_big(self) -> BigInt;
}

impl FlRing for i128 {
    fn ring_zero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn add_scaled(&mut self, a: &Self, k: i64) -> bool {
        match a.checked_mul(k as i128).and_then(|p| self.checked_add(p)) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
    fn div_exact(&self, k: i64) -> Option<Self> {
        let k = k as i128;
        (self % k == 0).then(|| self / k)
    }
    fn negated(&self) -> Self {
        -self
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl FlRing for BigInt {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn add_scaled(&mut self, a: &Self, k: i64) -> bool {
        if k == 1 {
            *self += a;
        } else if k == -1 {
            *self -= a;
        } else if k != 0 {
            *self += a * k;
        }
        true
    }
    fn div_exact(&self, k: i64) -> Option<Self> {
        let (q, r) = self.div_rem(&BigInt::from(k));
        r.is_zero().then_some(q)
    }
    fn negated(&self) -> Self {
        -self
    }
    fn into_big(self) -> BigInt {
        self
    }
}

enum FlOutcome<T> {
    Done(Vec<T>),
    Overflow,
    Inexact,
}

/// `M_k = A M_{k-1} + c_{n-k+1} I`, `c_{n-k} = -tr(A M_k) / k`.
fn faddeev_leverrier<T: FlRing>(rows: &[Vec<(usize, i64)>]) -> FlOutcome<T> {
    let n = rows.len();
    let mut c = vec![T::ring_zero(); n + 1];
    c[n] = T::from_i64(1);
    let mut m = vec![T::ring_zero(); n * n];
    let mut next = vec![T::ring_zero(); n * n];
    for k in 1..=n {
        for x in next.iter_mut() {
            *x = T::ring_zero();
        }
        for (i, row) in rows.iter().enumerate() {
            let out = &mut next[i * n..(i + 1) * n];
            for &(l, a) in row {
                let src = &m[l * n..(l + 1) * n];
                for (o, s) in out.iter_mut().zip(src) {
                    if !o.add_scaled(s, a) {
                        return FlOutcome::Overflow;
                    }
                }
            }
        }
        let shift = c[n - k + 1].clone();
        for i in 0..n {
            if !next[i * n + i].add_scaled(&shift, 1) {
                return FlOutcome::Overflow;
            }
        }
        std::mem::swap(&mut m, &mut next);
        let mut tr = T::ring_zero();
        for (i, row) in rows.iter().enumerate() {
            for &(l, a) in row {
                if !tr.add_scaled(&m[l * n + i], a) {
                    return FlOutcome::Overflow;
                }
            }
        }
        match tr.div_exact(k as i64) {
            Some(q) => c[n - k] = q.negated(),
            None => return FlOutcome::Inexact,
        }
    }
    FlOutcome::Done(c)
}

/// Exact characteristic polynomial of a square integer matrix.
pub fn charpoly(m: &IntMatrix) -> Result<Vec<BigInt>> {
    check_square(m)?;
    let rows: Vec<Vec<(usize, i64)>> = m
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(j, &v)| (j, v)).collect())
        .collect();
    let inexact = || Error::AssertionFailure("Faddeev-LeVerrier division was not exact".into());
    match faddeev_leverrier::<i128>(&rows) {
        FlOutcome::Done(c) => Ok(c.into_iter().map(FlRing::into_big).collect()),
        FlOutcome::Inexact => Err(inexact()),
        FlOutcome::Overflow => match faddeev_leverrier::<BigInt>(&rows) {
            FlOutcome::Done(c) => Ok(c),
            _ => Err(inexact()),
        },
    }
}

/// Evaluate a low-degree-first polynomial at an integer.
pub fn poly_eval(p: &[BigInt], t: i64) -> BigInt {
    let t = BigInt::from(t);
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * &t + c)
}

fn sign_variations<'a>(coeffs: impl Iterator<Item = (usize, &'a BigInt)>, flip_odd: bool) -> usize {
    let mut last: Option<bool> = None;
    let mut count = 0;
    for (k, c) in coeffs {
        if c.is_zero() {
            continue;
        }
        let mut pos = c.is_positive();
        if flip_odd && k % 2 == 1 {
            pos = !pos;
        }
        if last.is_some_and(|l| l != pos) {
            count += 1;
        }
        last = Some(pos);
    }
    count
}

/// Inertia from the characteristic polynomial of a symmetric matrix. All
/// roots are real, so Descartes' rule counts positive roots exactly; the
/// negative count is checked against `p(-x)`.
pub fn inertia_from_charpoly(p: &[BigInt]) -> Result<Inertia> {
    let n = p.len() - 1;
    let zero = p.iter().take_while(|c| c.is_zero()).count();
    let plus = sign_variations(p.iter().enumerate(), false);
    let minus = sign_variations(p.iter().enumerate(), true);
    if plus + zero + minus != n {
        return Err(Error::AssertionFailure(format!(
            "sign counts {plus}+{zero}+{minus} do not sum to {n}; matrix not symmetric?"
        )));
    }
    Ok(Inertia { plus, zero, minus })
}

pub fn inertia(m: &IntMatrix) -> Result<Inertia> {
    inertia_from_charpoly(&charpoly(m)?)
}

fn to_big(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

/// Fraction-free elimination with full pivoting. Returns the rank and, for
/// square input, the determinant.
fn bareiss(mut a: Vec<Vec<BigInt>>) -> (usize, BigInt) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut sign = 1;
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let pivot = (k..rows).find_map(|i| (k..cols).find(|&j| !a[i][j].is_zero()).map(|j| (i, j)));
        let Some((pi, pj)) = pivot else { break };
        if pi != k {
            a.swap(pi, k);
            sign = -sign;
        }
        if pj != k {
            for row in a.iter_mut() {
                row.swap(pj, k);
            }
            sign = -sign;
        }
        rank += 1;
        for i in k + 1..rows {
            for j in k + 1..cols {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = if rows == cols && rank == rows {
        if rows == 0 {
            BigInt::one()
        } else {
            &a[rows - 1][rows - 1] * sign
        }
    } else {
        BigInt::zero()
    };
    (rank, det)
}

/// Rank over the rationals; rectangular input allowed.
pub fn rank_int(m: &IntMatrix) -> usize {
    bareiss(to_big(m)).0
}

pub fn det_exact(m: &IntMatrix) -> Result<BigInt> {
    check_square(m)?;
    Ok(bareiss(to_big(m)).1)
}

pub fn to_rational(m: &IntMatrix) -> RatMatrix {
    m.iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
        .collect()
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(a: &mut RatMatrix) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                let (src, dst) = if i < r {
                    let (lo, hi) = a.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = a.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    if !s.is_zero() {
                        *d -= &factor * s;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_rat(m: &RatMatrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of the right kernel `{x : M x = 0}`.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<BigRational>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![BigRational::zero(); cols];
            v[fc] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][fc].clone();
            }
            v
        })
        .collect()
}

/// Solve `M Z = R` for square nonsingular `M`.
pub fn solve(m: &RatMatrix, rhs: &RatMatrix) -> Result<RatMatrix> {
    let n = m.len();
    let k = rhs.first().map_or(0, Vec::len);
    let mut aug: RatMatrix = m
        .iter()
        .zip(rhs)
        .map(|(a, b)| a.iter().chain(b.iter()).cloned().collect())
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
        return Err(Error::AssertionFailure("coefficient matrix is singular".into()));
    }
    Ok(aug.into_iter().map(|row| row[n..n + k].to_vec()).collect())
}

pub fn rat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner)
                        .filter(|&l| !row[l].is_zero())
                        .fold(BigRational::zero(), |acc, l| acc + &row[l] * &b[l][j])
                })
                .collect()
        })
        .collect()
}

pub fn transpose_i64(m: &IntMatrix) -> IntMatrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

pub fn mat_vec(m: &IntMatrix, x: &[i64]) -> Vec<i64> {
    m.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

/// Determinant identity for even-order o- or e-decomposable graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchurCheck {
    #[serde(serialize_with = "ser_big", deserialize_with = "de_big")]
    pub det_g: BigInt,
    #[serde(serialize_with = "ser_big", deserialize_with = "de_big")]
    pub det_b: BigInt,
    /// `det(G) = (-1)^{n/2} det(B)^2`.
    pub signed_holds: bool,
    /// `det(G) = det(B)^2` with no sign factor.
    pub unsigned_holds: bool,
}

pub fn schur_pair_check(
    rg: &RiordanGraph,
    blocks: &DecompositionBlocks,
    cls: &Classification,
) -> Result<SchurCheck> {
    let n = rg.n();
    if n % 2 != 0 || !(cls.has(Label::ODecomposable) || cls.has(Label::EDecomposable)) {
        return Err(Error::HypothesisNotMet(
            "determinant identity needs even order and an o- or e-decomposable graph".into(),
        ));
    }
    let det_g = det_exact(&rg.graph().adjacency().to_i64())?;
    let det_b = det_exact(&blocks.b.to_i64())?;
    let sq = &det_b * &det_b;
    let signed = if (n / 2) % 2 == 1 { -sq.clone() } else { sq.clone() };
    Ok(SchurCheck {
        signed_holds: det_g == signed,
        unsigned_holds: det_g == sq,
        det_g,
        det_b,
    })
}

/// `eta(B)`: column nullity of the `ceil(n/2) x floor(n/2)` block.
pub fn block_nullity(b: &BitMatrix) -> usize {
    b.cols() - rank_int(&b.to_i64())
}

/// Rank of `[X; B^T]`.
pub fn stacked_rank(blocks: &DecompositionBlocks) -> usize {
    let mut m = blocks.x.to_i64();
    m.extend(blocks.b.transpose().to_i64());
    rank_int(&m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NullityTransform {
    pub eta_g: usize,
    pub eta_b: usize,
    pub eta_transformed: usize,
    /// Rows of the integer matrix `M` that was inverted.
    pub m_used: IntMatrix,
}

/// The square matrix `M` built from rows of `X` and `B^T`: `X - B^T` for
/// even `n`; for odd `n` with `k = (n+1)/2`, rows `r_i - b_i` for `i < k`
/// followed by `r_k - b_{k-1}`.
pub fn transform_matrix(blocks: &DecompositionBlocks) -> IntMatrix {
    let x = blocks.x.to_i64();
    let bt = blocks.b.transpose().to_i64();
    let k = x.len();
    let n = blocks.n();
    let diff = |r: &[i64], b: &[i64]| -> Vec<i64> { r.iter().zip(b).map(|(a, c)| a - c).collect() };
    if n % 2 == 0 {
        (0..k).map(|i| diff(&x[i], &bt[i])).collect()
    } else {
        (0..k).map(|i| diff(&x[i], &bt[i.min(k - 2)])).collect()
    }
}

/// Compare `eta(G)` with `eta(B^T M^{-1} B)` for an io-decomposable Bell
/// graph with `g(0) = 1`. Disagreement is an internal error.
pub fn nullity_transform(
    rg: &RiordanGraph,
    blocks: &DecompositionBlocks,
    cls: &Classification,
    eta_g: usize,
) -> Result<NullityTransform> {
    let n = rg.n();
    if !cls.io_bell() || n < 2 || !rg.g().coeff(0)? {
        return Err(Error::HypothesisNotMet(
            "nullity transform needs an io-decomposable Bell graph with g(0) = 1 and n >= 2".into(),
        ));
    }
    let m = transform_matrix(blocks);
    let b = to_rational(&blocks.b.to_i64());
    let bt = to_rational(&blocks.b.transpose().to_i64());
    let z = solve(&to_rational(&m), &b)?;
    let s = rat_mul(&bt, &z);
    let eta_transformed = s.len() - rank_rat(&s);
    if eta_transformed != eta_g {
        return Err(Error::AssertionFailure(format!(
            "eta(G) = {eta_g} but eta(B^T M^-1 B) = {eta_transformed} at n = {n}"
        )));
    }
    Ok(NullityTransform {
        eta_g,
        eta_b: block_nullity(&blocks.b),
        eta_transformed,
        m_used: m,
    })
}

/// Whether every kernel vector of `A` vanishes on the odd labels, from an
/// exact kernel basis.
pub fn kernel_vanishes_on_odd(a: &BitMatrix) -> bool {
    kernel_basis(&to_rational(&a.to_i64()))
        .iter()
        .all(|v| v.iter().step_by(2).all(Zero::is_zero))
}

/// Small helper for reports: a big integer as `f64` when it fits.
pub fn big_to_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{classify, decompose};
    use crate::graph::{Family, Graph};
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn fam(f: Family, n: usize) -> RiordanGraph {
        RiordanGraph::family(f, n).unwrap()
    }

    fn summary(rg: &RiordanGraph) -> ExactSummary {
        ExactSummary::of_bits(rg.graph().adjacency()).unwrap()
    }

    #[test]
    fn charpoly_examples() {
        assert_eq!(charpoly(&vec![vec![0, 1], vec![1, 0]]).unwrap(), big(&[-1, 0, 1]));
        let k3 = Graph::complete(3).adjacency().to_i64();
        assert_eq!(charpoly(&k3).unwrap(), big(&[-2, -3, 0, 1]));
        assert!(summary(&fam(Family::Catalan, 6)).charpoly[0].is_zero());
    }

    #[test]
    fn inertia_fixtures() {
        let pg10 = summary(&fam(Family::Pascal, 10)).inertia;
        assert_eq!((pg10.plus, pg10.zero, pg10.minus), (4, 1, 5));
        let g16 = RiordanGraph::from_exprs("1+z^3", "z/(1+z)", 16).unwrap();
        let i = summary(&g16).inertia;
        assert_eq!((i.plus, i.minus), (6, 10));
        let g10 = RiordanGraph::from_exprs("1/(1+z^2)", "z/(1+z)", 10).unwrap();
        let i = summary(&g10).inertia;
        assert_eq!((i.plus, i.minus), (5, 5));
        // K_1 is the single zero eigenvalue; the pattern starts at n = 2
        for n in 2..=16 {
            let i = summary(&fam(Family::Complete, n)).inertia;
            assert_eq!((i.plus, i.zero, i.minus), (1, 0, n - 1));
        }
    }

    #[test]
    fn determinants() {
        assert!(det_exact(&fam(Family::Catalan, 6).graph().adjacency().to_i64()).unwrap().is_zero());
        assert_eq!(det_exact(&Graph::complete(2).adjacency().to_i64()).unwrap(), BigInt::from(-1));
        assert!(summary(&fam(Family::Catalan, 11)).det.is_zero());
        assert!(!summary(&fam(Family::Catalan, 5)).det.is_zero());
        assert_eq!(det_exact(&vec![]).unwrap(), BigInt::one());
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_int(&vec![vec![0; 3]; 2]), 0);
        let rg = fam(Family::Catalan, 12);
        let d = decompose(&rg).unwrap();
        assert_eq!(stacked_rank(&d), 6);
        assert!(rank_int(&d.b.to_i64()) <= 5);
        assert_eq!(rank_int(&vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]), 2);
    }

    #[test]
    fn schur_examples() {
        let rg = RiordanGraph::from_exprs("1/(1-z^2)", "z/(1-z)", 8).unwrap();
        let cls = classify(&rg).unwrap();
        let d = decompose(&rg).unwrap();
        let s = schur_pair_check(&rg, &d, &cls).unwrap();
        assert!(s.det_b.is_zero() && s.det_g.is_zero() && s.signed_holds);
        let k2 = fam(Family::Path, 2);
        let s = schur_pair_check(&k2, &decompose(&k2).unwrap(), &classify(&k2).unwrap()).unwrap();
        assert_eq!(s.det_g, BigInt::from(-1));
        assert!(s.signed_holds && !s.unsigned_holds);
        let cg8 = fam(Family::Catalan, 8);
        let s = schur_pair_check(&cg8, &decompose(&cg8).unwrap(), &classify(&cg8).unwrap()).unwrap();
        assert!(s.signed_holds);
        let k5 = fam(Family::Complete, 4);
        assert!(schur_pair_check(&k5, &decompose(&k5).unwrap(), &classify(&k5).unwrap()).is_err());
    }

    #[test]
    fn nullity_transform_examples() {
        for (f, n) in [(Family::Pascal, 10), (Family::Catalan, 8), (Family::Catalan, 9), (Family::Pascal, 7)] {
            let rg = fam(f, n);
            let cls = classify(&rg).unwrap();
            let d = decompose(&rg).unwrap();
            let eta = summary(&rg).nullity;
            let t = nullity_transform(&rg, &d, &cls, eta).unwrap();
            assert_eq!(t.eta_g, t.eta_transformed);
            assert!(t.eta_b <= t.eta_g && t.eta_g <= 2 * t.eta_b + n % 2);
        }
        let pg10 = fam(Family::Pascal, 10);
        assert_eq!(summary(&pg10).nullity, 1);
        assert!(kernel_vanishes_on_odd(pg10.graph().adjacency()));
        assert_eq!(block_nullity(&decompose(&pg10).unwrap().b), 1);
    }

    #[test]
    fn kernel_and_solve() {
        let m = to_rational(&vec![vec![1, 1, 0], vec![0, 0, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        let col: RatMatrix = k[0].iter().map(|x| vec![x.clone()]).collect();
        assert!(rat_mul(&m, &col).iter().all(|r| r[0].is_zero()));
        assert!(!k[0].iter().all(Zero::is_zero));
        let singular = to_rational(&vec![vec![1, 2], vec![2, 4]]);
        assert!(solve(&singular, &to_rational(&vec![vec![1], vec![1]])).is_err());
        let z = solve(&to_rational(&vec![vec![2, 0], vec![0, 4]]), &to_rational(&vec![vec![1], vec![1]])).unwrap();
        assert_eq!(z[1][0], BigRational::new(1.into(), 4.into()));
    }

    #[test]
    fn summary_json_uses_decimal_strings() {
        let s = summary(&fam(Family::Complete, 3));
        let j = serde_json::to_value(&s).unwrap();
        assert_eq!(j["det"], "2");
        assert_eq!(j["charpoly"][0], "-2");
        assert_eq!(j["inertia"]["minus"], 2);
        let back: ExactSummary = serde_json::from_value(j).unwrap();
        assert_eq!(back, s);
    }

    fn sym_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
            let mut m = vec![vec![0; n]; n];
            for i in 0..n {
                for j in 0..=i {
                    m[i][j] = v[i * n + j];
                    m[j][i] = v[i * n + j];
                }
            }
            m
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn charpoly_matches_determinant(m in (1usize..=12).prop_flat_map(sym_matrix), t in -4i64..=4) {
            let p = charpoly(&m).unwrap();
            let n = m.len();
            let shifted: IntMatrix = (0..n)
                .map(|i| (0..n).map(|j| if i == j { t - m[i][j] } else { -m[i][j] }).collect())
                .collect();
            prop_assert_eq!(poly_eval(&p, t), det_exact(&shifted).unwrap());
            let s = ExactSummary::of(&m).unwrap();
            prop_assert_eq!(s.inertia.plus + s.inertia.zero + s.inertia.minus, n);
            prop_assert_eq!(s.rank, rank_int(&m));
        }
    }
}
