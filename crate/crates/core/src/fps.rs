//! Truncated formal power series over GF(2).
//!
//! Coefficients are packed 64 per word, lowest degree in the lowest bit of
//! the first word. A series knows its coefficients for degrees `0..len`;
//! everything above is unknown, and every operation keeps bits at or above
//! `len` cleared.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Series {
    words: Vec<u64>,
    len: usize,
}

/// Outcome of comparing two series that may carry different truncations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Agreement {
    /// Coefficients agree on every degree both series know.
    pub equal: bool,
    /// The two truncations differ, so only a prefix was compared.
    pub partial: bool,
    /// Number of coefficients compared.
    pub compared: usize,
}

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

impl Gf2Series {
    /// Series known on `len` coefficients (degrees `0..len`), all zero.
    /// `len == 0` is the empty series produced by extracting from a
    /// constant-only series.
    pub fn with_len(len: usize) -> Self {
        Gf2Series {
            words: vec![0; words_for(len)],
            len,
        }
    }

    pub fn zero(trunc: usize) -> Self {
        Self::with_len(trunc + 1)
    }

    pub fn one(trunc: usize) -> Self {
        Self::monomial(0, trunc)
    }

    pub fn z(trunc: usize) -> Self {
        Self::monomial(1, trunc)
    }

    pub fn monomial(k: usize, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if k <= trunc {
            s.set(k, true);
        }
        s
    }

    /// Polynomial with the given exponents (repeated exponents cancel).
    pub fn from_exponents(exps: &[usize], trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        for &e in exps {
            if e <= trunc {
                s.flip(e);
            }
        }
        s
    }

    /// Series whose known coefficients are exactly `coeffs`.
    pub fn from_bits<I: IntoIterator<Item = bool>>(coeffs: I) -> Self {
        let bits: Vec<bool> = coeffs.into_iter().collect();
        let mut s = Self::with_len(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                s.set(i, true);
            }
        }
        s
    }

    /// Number of known coefficients.
    pub fn precision(&self) -> usize {
        self.len
    }

    /// Inclusive truncation degree, `None` for the empty series.
    pub fn trunc(&self) -> Option<usize> {
        self.len.checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Result<bool> {
        if i < self.len {
            Ok(self.bit(i))
        } else {
            Err(Error::TruncationExceeded {
                requested: i,
                available: self.trunc(),
            })
        }
    }

    #[inline]
    pub(crate) fn bit(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if v {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    fn flip(&mut self, i: usize) {
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Coefficients as booleans, lowest degree first.
    pub fn bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.bit(i)).collect()
    }

    /// Degrees carrying a 1.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let t = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(w * WORD + t)
                }
            })
        })
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Keep degrees `0..=trunc`. Asking for more than is known is an error.
    pub fn truncated(&self, trunc: usize) -> Result<Self> {
        self.with_precision(trunc + 1)
    }

    pub fn with_precision(&self, len: usize) -> Result<Self> {
        if len > self.len {
            return Err(Error::TruncationExceeded {
                requested: len.saturating_sub(1),
                available: self.trunc(),
            });
        }
        let mut out = Gf2Series {
            words: self.words[..words_for(len)].to_vec(),
            len,
        };
        out.clear_tail();
        Ok(out)
    }

    /// Zero-extend to `len` coefficients. Only meaningful when the caller knows
    /// the higher coefficients vanish (polynomials) or during Newton lifting.
    pub(crate) fn zero_extended(&self, len: usize) -> Self {
        let mut out = self.clone();
        if len > out.len {
            out.words.resize(words_for(len), 0);
            out.len = len;
        }
        out
    }

    pub fn agreement(&self, other: &Self) -> Agreement {
        let compared = self.len.min(other.len);
        let full = compared / WORD;
        let mut equal = self.words[..full] == other.words[..full];
        let rem = compared % WORD;
        if equal && rem != 0 {
            let mask = (1u64 << rem) - 1;
            equal = (self.words[full] & mask) == (other.words[full] & mask);
        }
        Agreement {
            equal,
            partial: self.len != other.len,
            compared,
        }
    }

    /// Agreement on degrees `0..=deg`, both series must know that far.
    pub fn agrees_through(&self, other: &Self, deg: usize) -> Result<bool> {
        Ok(self.truncated(deg)? == other.truncated(deg)?)
    }

    /// Coefficientwise XOR on the shared prefix.
    pub fn add(&self, other: &Self) -> Self {
        let len = self.len.min(other.len);
        let nw = words_for(len);
        let mut out = Gf2Series {
            words: (0..nw).map(|i| self.words[i] ^ other.words[i]).collect(),
            len,
        };
        out.clear_tail();
        out
    }

    /// XOR `src << shift` into `dst`, restricted to the first `dst.len` bits.
    fn xor_shifted(dst: &mut Gf2Series, src: &Gf2Series, shift: usize) {
        if shift >= dst.len {
            return;
        }
        let ws = shift / WORD;
        let bs = shift % WORD;
        let nw = dst.words.len();
        for (i, &w) in src.words.iter().enumerate() {
            let d = i + ws;
            if d >= nw {
                break;
            }
            if bs == 0 {
                dst.words[d] ^= w;
            } else {
                dst.words[d] ^= w << bs;
                if d + 1 < nw {
                    dst.words[d + 1] ^= w >> (WORD - bs);
                }
            }
        }
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Self {
        let len = self.len.min(other.len);
        let mut out = Self::with_len(len);
        let (sparse, dense) = if self.count_ones() <= other.count_ones() {
            (self, other)
        } else {
            (other, self)
        };
        for i in sparse.support() {
            if i >= len {
                break;
            }
            Self::xor_shifted(&mut out, dense, i);
        }
        out.clear_tail();
        out
    }

    /// Frobenius square: coefficient `i` moves to `2i`.
    pub fn square(&self) -> Self {
        let mut out = Self::with_len(self.len);
        for i in self.support() {
            if 2 * i < self.len {
                out.set(2 * i, true);
            } else {
                break;
            }
        }
        out
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut result = Self::with_len(self.len);
        if self.len > 0 {
            result.set(0, true);
        }
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        result
    }

    /// Multiplicative inverse by Newton lifting; in characteristic 2 the
    /// update `b <- b(2 - ab)` becomes `b <- a b^2`.
    pub fn inverse(&self) -> Result<Self> {
        if self.len == 0 {
            return Ok(Self::with_len(0));
        }
        if !self.bit(0) {
            return Err(Error::ZeroConstantTerm);
        }
        let mut b = Self::one(0);
        let mut prec = 1;
        while prec < self.len {
            prec = (2 * prec).min(self.len);
            let a = self.with_precision(prec)?;
            let b2 = b.zero_extended(prec).square();
            b = a.mul(&b2);
        }
        Ok(b)
    }

    /// `g(f(z))`, defined when `f(0) = 0`. Known to the smaller of the two
    /// truncations.
    pub fn compose(&self, f: &Self) -> Result<Self> {
        if f.len > 0 && f.bit(0) {
            return Err(Error::NonzeroLowTerm);
        }
        let len = self.len.min(f.len);
        let inner = f.with_precision(len)?;
        let mut acc = Self::with_len(len);
        for i in (0..len).rev() {
            acc = acc.mul(&inner);
            if self.bit(i) {
                acc.flip(0);
            }
        }
        Ok(acc)
    }

    /// `sum_i a[2i] z^i`; over GF(2) this is `(z a)'(sqrt z)`.
    pub fn even_part(&self) -> Self {
        self.stride(0)
    }

    /// `sum_i a[2i+1] z^i`; over GF(2) this is `a'(sqrt z)`.
    pub fn odd_part(&self) -> Self {
        self.stride(1)
    }

    fn stride(&self, offset: usize) -> Self {
        let len = if self.len > offset {
            (self.len - offset).div_ceil(2)
        } else {
            0
        };
        let mut out = Self::with_len(len);
        for i in 0..len {
            if self.bit(2 * i + offset) {
                out.set(i, true);
            }
        }
        out
    }

    /// Multiply by `z^k`; the truncation degree is preserved.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut out = Self::with_len(self.len);
        Self::xor_shifted(&mut out, self, k);
        out.clear_tail();
        out
    }

    /// Divide by `z^k`. The low `k` coefficients must vanish; the truncation
    /// degree drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if (0..k.min(self.len)).any(|i| self.bit(i)) {
            return Err(Error::ZeroConstantTerm);
        }
        let len = self.len.saturating_sub(k);
        Ok(Self::from_bits((0..len).map(|i| self.bit(i + k))))
    }

    /// Formal derivative reduced mod 2: `[z^i] a' = (i+1) a[i+1]`.
    pub fn derivative(&self) -> Self {
        let len = self.len.saturating_sub(1);
        Self::from_bits((0..len).map(|i| i % 2 == 0 && self.bit(i + 1)))
    }

    /// Number of odd coefficients among degrees `0..=n`, i.e. the value at
    /// `z = 1` of the degree-`n` truncation read over the integers.
    /// Negative `n` gives 0.
    pub fn ones_count_prefix(&self, n: i64) -> Result<usize> {
        if n < 0 {
            return Ok(0);
        }
        let n = n as usize;
        Ok(self.truncated(n)?.count_ones())
    }

    /// Catalan generating function mod 2, from `C = 1 + z C^2` solved one
    /// degree at a time: `[z^k] C = [z^{k-1}] C^2`, and squaring only fills
    /// even degrees with `C[i]` at `2i`.
    pub fn catalan(trunc: usize) -> Self {
        let mut c = Self::zero(trunc);
        c.set(0, true);
        for k in 1..=trunc {
            let d = k - 1;
            if d % 2 == 0 && c.bit(d / 2) {
                c.set(k, true);
            }
        }
        c
    }

    /// The known prefix as a polynomial in the expression language, e.g.
    /// `1+z+z^3`; `0` when every known coefficient vanishes.
    pub fn to_poly_expr(&self) -> String {
        let terms: Vec<String> = self
            .support()
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    /// Comma-separated dump, low degree first.
    pub fn dump(&self) -> String {
        let mut s = String::with_capacity(2 * self.len);
        for i in 0..self.len {
            if i > 0 {
                s.push(',');
            }
            s.push(if self.bit(i) { '1' } else { '0' });
        }
        s
    }
}

impl fmt::Display for Gf2Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}

impl fmt::Debug for Gf2Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Series[{}]", self.dump())
    }
}

impl FromStr for Gf2Series {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::with_len(0));
        }
        let mut bits = Vec::new();
        let mut offset = 0;
        for tok in s.split(',') {
            match tok.trim() {
                "0" => bits.push(false),
                "1" => bits.push(true),
                other => {
                    return Err(Error::Syntax {
                        offset,
                        message: format!("expected 0 or 1, found `{other}`"),
                    })
                }
            }
            offset += tok.len() + 1;
        }
        Ok(Self::from_bits(bits))
    }
}

impl Add for &Gf2Series {
    type Output = Gf2Series;
    fn add(self, rhs: &Gf2Series) -> Gf2Series {
        Gf2Series::add(self, rhs)
    }
}

impl Mul for &Gf2Series {
    type Output = Gf2Series;
    fn mul(self, rhs: &Gf2Series) -> Gf2Series {
        Gf2Series::mul(self, rhs)
    }
}
