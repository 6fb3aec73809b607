//! Truncated Witt vectors `W_4[F_2]`.
//!
//! `[a0, a1, a2, a3]` corresponds to the residue `a0 + 2 a1 + 4 a2 + 8 a3`
//! mod 16, and addition and multiplication are the polynomial laws obtained
//! by transporting the ring structure of `Z_16`. The laws are written once,
//! generically over any [`BooleanRing`], so the same code runs on concrete
//! bits, sparse ANF polynomials and dense truth tables.

use std::ops::Index;

use crate::error::{Error, Result};

/// A commutative ring of characteristic 2.
pub trait BooleanRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
}

impl BooleanRing for bool {
    #[inline]
    fn zero() -> Self {
        false
    }
    #[inline]
    fn one() -> Self {
        true
    }
    #[inline]
    fn add(&self, rhs: &Self) -> Self {
        self ^ rhs
    }
    #[inline]
    fn mul(&self, rhs: &Self) -> Self {
        self & rhs
    }
}

/// Embeds a bit as the ring's zero or one.
#[inline]
pub fn from_bit<R: BooleanRing>(b: bool) -> R {
    if b {
        R::one()
    } else {
        R::zero()
    }
}

/// Number of Witt components kept.
pub const WITT_LEN: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WittVec<R>(pub [R; WITT_LEN]);

impl<R> Index<usize> for WittVec<R> {
    type Output = R;
    fn index(&self, i: usize) -> &R {
        &self.0[i]
    }
}

impl WittVec<bool> {
    /// Little-endian bits of `r`.
    pub fn from_residue(r: u32) -> Result<Self> {
        if r >= 16 {
            return Err(Error::ResidueOutOfRange(r));
        }
        Ok(WittVec(std::array::from_fn(|i| (r >> i) & 1 == 1)))
    }

    pub fn to_residue(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &b)| u32::from(b) << i)
            .sum()
    }
}

impl<R: BooleanRing> WittVec<R> {
    pub fn zero() -> Self {
        WittVec(std::array::from_fn(|_| R::zero()))
    }

    pub fn one() -> Self {
        let mut v = Self::zero();
        v.0[0] = R::one();
        v
    }

    pub fn from_bits(bits: &WittVec<bool>) -> Self {
        WittVec(std::array::from_fn(|i| from_bit(bits.0[i])))
    }

    pub fn map<S, F: FnMut(&R) -> S>(&self, f: F) -> WittVec<S> {
        WittVec(self.0.each_ref().map(f))
    }

    /// Witt sum.
    pub fn add(&self, rhs: &Self) -> Self {
        self.add_prefix(rhs, WITT_LEN)
    }

    /// Witt product.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.mul_prefix(rhs, WITT_LEN)
    }

    /// Sum computing only the first `len` components; the rest are zero.
    /// Component `i` of a sum or product only depends on components `<= i`
    /// of the operands, so the computed prefix is exact.
    ///
    /// ```text
    /// S0 = a0 + b0
    /// S1 = a0 b0 + a1 + b1
    /// S2 = a0 b0 (a1 + b1) + a1 b1 + a2 + b2
    /// S3 = a0 b0 a1 a2 + a0 b0 a1 b2 + a0 b0 b1 a2 + a0 b0 b1 b2
    ///      + a1 b1 a2 + a1 b1 b2 + a2 b2 + a3 + b3
    /// ```
    pub fn add_prefix(&self, rhs: &Self, len: usize) -> Self {
        let [a0, a1, a2, a3] = &self.0;
        let [b0, b1, b2, b3] = &rhs.0;
        let mut out = Self::zero();
        out.0[0] = a0.add(b0);
        if len < 2 {
            return out;
        }
        let c0 = a0.mul(b0);
        out.0[1] = c0.add(a1).add(b1);
        if len < 3 {
            return out;
        }
        let s1 = a1.add(b1);
        let p1 = a1.mul(b1);
        out.0[2] = c0.mul(&s1).add(&p1).add(a2).add(b2);
        if len < 4 {
            return out;
        }
        // (a0 b0 (a1 + b1) + a1 b1) (a2 + b2) + a2 b2 + a3 + b3
        let carry = c0.mul(&s1).add(&p1);
        out.0[3] = carry.mul(&a2.add(b2)).add(&a2.mul(b2)).add(a3).add(b3);
        out
    }

    /// Product computing only the first `len` components.
    ///
    /// ```text
    /// P0 = a0 b0
    /// P1 = a0 b1 + a1 b0
    /// P2 = a0 b0 a1 b1 + a0 b2 + a1 b1 + a2 b0
    /// P3 = a0 b0 a1 b1 a2 + a0 b0 a1 b1 b2 + a0 b0 a1 b1 + a0 b0 a2 b2
    ///      + a0 a1 b1 b2 + b0 a1 b1 a2 + a0 b3 + b0 a3 + a1 b2 + b1 a2
    /// ```
    pub fn mul_prefix(&self, rhs: &Self, len: usize) -> Self {
        let [a0, a1, a2, a3] = &self.0;
        let [b0, b1, b2, b3] = &rhs.0;
        let mut out = Self::zero();
        let c0 = a0.mul(b0);
        out.0[0] = c0.clone();
        if len < 2 {
            return out;
        }
        out.0[1] = a0.mul(b1).add(&a1.mul(b0));
        if len < 3 {
            return out;
        }
        let d1 = a1.mul(b1);
        let c0d1 = c0.mul(&d1);
        out.0[2] = c0d1.add(&a0.mul(b2)).add(&d1).add(&a2.mul(b0));
        if len < 4 {
            return out;
        }
        // a0 b0 a1 b1 (a2 + b2 + 1) + a0 b0 a2 b2 + a1 b1 (a0 b2 + b0 a2)
        //   + a0 b3 + b0 a3 + a1 b2 + b1 a2
        let a0b2 = a0.mul(b2);
        let b0a2 = b0.mul(a2);
        out.0[3] = c0d1
            .mul(&a2.add(b2).add(&R::one()))
            .add(&c0.mul(&a2.mul(b2)))
            .add(&d1.mul(&a0b2.add(&b0a2)))
            .add(&a0.mul(b3))
            .add(&b0.mul(a3))
            .add(&a1.mul(b2))
            .add(&b1.mul(a2));
        out
    }
}

/// Left fold of the Witt sum; an empty list sums to zero.
pub fn witt_sum_fold<R: BooleanRing>(terms: &[WittVec<R>]) -> WittVec<R> {
    witt_sum_fold_prefix(terms, WITT_LEN)
}

pub fn witt_sum_fold_prefix<R: BooleanRing>(terms: &[WittVec<R>], len: usize) -> WittVec<R> {
    terms
        .iter()
        .fold(WittVec::zero(), |acc, t| acc.add_prefix(t, len))
}

/// `[e_0, e_1, ..., e_max]` of `values`, by the recurrence
/// `e_t <- e_t + e_{t-1} x` applied once per value.
pub fn elementary_symmetric<'a, R, I>(values: I, max_degree: usize) -> Vec<R>
where
    R: BooleanRing + 'a,
    I: IntoIterator<Item = &'a R>,
{
    let mut e = vec![R::zero(); max_degree + 1];
    e[0] = R::one();
    for (seen, x) in values.into_iter().enumerate() {
        for t in (1..=max_degree.min(seen + 1)).rev() {
            e[t] = e[t].add(&e[t - 1].mul(x));
        }
    }
    e
}

/// How the juxtaposition between the `Σ a_{i1}a_{j1}a_{k1}a_{l1}` block and
/// the `(Σ a_{i1})(Σ e_6 of bit 0)` block of the multi-term `S3` is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum S3Reading {
    /// The two blocks are added (the reading that agrees with the fold).
    Sum,
    /// The two blocks are multiplied, taking the juxtaposition literally.
    Product,
}

/// Multi-term Witt sum through closed forms in the elementary symmetric
/// polynomials of the per-bit slices, with `x_b = (a_{1b}, ..., a_{sb})`:
///
/// ```text
/// S0 = e1(x0)
/// S1 = e2(x0) + e1(x1)
/// S2 = e1(x1) e2(x0) + e2(x1) + e1(x2) + e4(x0)
/// S3 = e1(x3) + e2(x2) + e1(x2) e2(x1) + e2(x0) e1(x1) e1(x2)
///      + e2(x0) e3(x1) + e4(x0) (e1(x2) + e2(x1)) + e4(x1)
///      + e1(x1) e6(x0) + e8(x0)
/// ```
pub fn closed_form_sum<R: BooleanRing>(terms: &[WittVec<R>]) -> WittVec<R> {
    closed_form_sum_with(terms, S3Reading::Sum)
}

pub fn closed_form_sum_with<R: BooleanRing>(
    terms: &[WittVec<R>],
    reading: S3Reading,
) -> WittVec<R> {
    let x0 = elementary_symmetric(terms.iter().map(|t| &t.0[0]), 8);
    let x1 = elementary_symmetric(terms.iter().map(|t| &t.0[1]), 4);
    let x2 = elementary_symmetric(terms.iter().map(|t| &t.0[2]), 2);
    let x3 = elementary_symmetric(terms.iter().map(|t| &t.0[3]), 1);

    let s0 = x0[1].clone();
    let s1 = x0[2].add(&x1[1]);
    let s2 = x1[1].mul(&x0[2]).add(&x1[2]).add(&x2[1]).add(&x0[4]);

    let quartic = x1[4].clone();
    let septic = x1[1].mul(&x0[6]);
    let joined = match reading {
        S3Reading::Sum => quartic.add(&septic),
        S3Reading::Product => quartic.mul(&septic),
    };
    let s3 = x3[1]
        .add(&x2[2])
        .add(&x2[1].mul(&x1[2]))
        .add(&x0[2].mul(&x1[1]).mul(&x2[1]))
        .add(&x0[2].mul(&x1[3]))
        .add(&x0[4].mul(&x2[1].add(&x1[2])))
        .add(&joined)
        .add(&x0[8]);
    WittVec([s0, s1, s2, s3])
}
