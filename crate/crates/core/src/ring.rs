//! Convolution rings `Z_q[X]/(X^N - 1)` and `GF(2)[X]/(X^N - 1)`, and key
//! generation for the NTRU variant with `p = 2 + X` and `q = 2^m`.
//!
//! The secret key is a pair of binary polynomials `F`, `g`. From them
//! `f = 1 + (2 + X) * F` and the public key `h = (2 + X) * f^-1 * g mod q`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest supported ring dimension. Monomials over `F_0..F_{N-1}` are stored
/// in one `u64`.
pub const MAX_N: usize = 64;
/// Largest supported modulus exponent (`q <= 2^16`).
pub const MAX_LOG_Q: u32 = 16;
/// Number of times keygen redraws `F` before giving up.
pub const MAX_KEYGEN_DRAWS: u32 = 1000;

/// Public ring parameters `(N, q)`. `p = 2 + X` is implied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NtruParams {
    n: usize,
    q: u32,
}

impl NtruParams {
    pub fn new(n: usize, q: u32) -> Result<Self> {
        if !(5..=MAX_N).contains(&n) {
            return Err(Error::InvalidParams(format!(
                "N = {n} must lie in [5, {MAX_N}]"
            )));
        }
        if !is_prime(n) {
            return Err(Error::InvalidParams(format!("N = {n} must be prime")));
        }
        if !q.is_power_of_two() {
            return Err(Error::InvalidParams(format!(
                "q = {q} must be a power of two"
            )));
        }
        let m = q.trailing_zeros();
        if !(4..=MAX_LOG_Q).contains(&m) {
            return Err(Error::InvalidParams(format!(
                "q = 2^{m} must satisfy 16 <= q <= 2^{MAX_LOG_Q}"
            )));
        }
        Ok(NtruParams { n, q })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// `m` such that `q = 2^m`.
    #[inline]
    pub fn log_q(&self) -> u32 {
        self.q.trailing_zeros()
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// An element of `Z_q[X]/(X^N - 1)`.
///
/// `q` is carried by the element rather than by [`NtruParams`] so the same
/// type serves the intermediate moduli of the Hensel lift and the mod-16
/// reduction used by the attack.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZqPoly {
    coeffs: Vec<u32>,
    q: u32,
}

impl fmt::Debug for ZqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZqPoly(mod {}, {:?})", self.q, self.coeffs)
    }
}

impl ZqPoly {
    /// Builds a polynomial from integer coefficients, reducing each mod `q`.
    /// `q` must be a power of two.
    pub fn from_coeffs<I>(coeffs: I, q: u32) -> Self
    where
        I: IntoIterator,
        I::Item: Into<i64>,
    {
        assert!(q.is_power_of_two(), "modulus must be a power of two");
        let modulus = i64::from(q);
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.into().rem_euclid(modulus) as u32)
            .collect();
        ZqPoly { coeffs, q }
    }

    pub fn zero(n: usize, q: u32) -> Self {
        Self::from_coeffs(std::iter::repeat_n(0i64, n), q)
    }

    pub fn one(n: usize, q: u32) -> Self {
        Self::monomial(n, q, 0)
    }

    /// `X^e` with the exponent reduced mod `N`.
    pub fn monomial(n: usize, q: u32, e: usize) -> Self {
        let mut p = Self::zero(n, q);
        p.coeffs[e % n] = 1 % q;
        p
    }

    /// The public polynomial `p = 2 + X`.
    pub fn p_poly(n: usize, q: u32) -> Self {
        let mut p = Self::zero(n, q);
        p.coeffs[0] = 2 % q;
        p.coeffs[1] = (p.coeffs[1] + 1) % q;
        p
    }

    /// Lifts a binary polynomial to `Z_q` with coefficients in `{0, 1}`.
    pub fn from_gf2(a: &Gf2Poly, q: u32) -> Self {
        Self::from_coeffs(a.bits().map(i64::from), q)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    fn check_same_ring(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() || self.q != other.q {
            return Err(Error::ParamMismatch {
                left_n: self.n(),
                left_q: self.q,
                right_n: other.n(),
                right_q: other.q,
            });
        }
        Ok(())
    }

    /// Cyclic convolution `c_k = sum_{i + j = k mod N} a_i b_j mod q`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let n = self.n();
        let mask = u64::from(self.q - 1);
        let mut acc = vec![0u64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let k = if i + j >= n { i + j - n } else { i + j };
                acc[k] = (acc[k] + u64::from(a) * u64::from(b)) & mask;
            }
        }
        Ok(ZqPoly {
            coeffs: acc.into_iter().map(|c| c as u32).collect(),
            q: self.q,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mask = self.q - 1;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a + b) & mask)
            .collect();
        Ok(ZqPoly { coeffs, q: self.q })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mask = self.q - 1;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.wrapping_sub(*b) & mask)
            .collect();
        Ok(ZqPoly { coeffs, q: self.q })
    }

    /// Reinterprets the coefficients modulo `new_q`, which must be a power of
    /// two. Reduction (`new_q | q`) is the only direction that is a ring map.
    pub fn with_modulus(&self, new_q: u32) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&c| i64::from(c)), new_q)
    }

    /// Coefficients mod 2.
    pub fn to_gf2(&self) -> Gf2Poly {
        Gf2Poly::from_bits(self.coeffs.iter().map(|c| c & 1 == 1))
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 % self.q && self.coeffs[1..].iter().all(|&c| c == 0)
    }
}

/// A polynomial in `GF(2)[X]/(X^N - 1)`, bit `i` of `bits` holding the
/// coefficient of `X^i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gf2Poly {
    bits: u64,
    n: usize,
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({})", self.to_bitstring())
    }
}

impl Gf2Poly {
    pub fn new(bits: u64, n: usize) -> Self {
        assert!(n <= MAX_N);
        Gf2Poly {
            bits: bits & low_mask(n),
            n,
        }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut mask = 0u64;
        let mut n = 0;
        for (i, b) in bits.into_iter().enumerate() {
            assert!(i < MAX_N, "GF(2) polynomial longer than {MAX_N}");
            mask |= u64::from(b) << i;
            n = i + 1;
        }
        Gf2Poly { bits: mask, n }
    }

    pub fn one(n: usize) -> Self {
        Self::new(1, n)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn as_mask(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn coeff(&self, i: usize) -> bool {
        (self.bits >> i) & 1 == 1
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.n).map(move |i| self.coeff(i))
    }

    /// Index 0 first.
    pub fn to_bitstring(&self) -> String {
        self.bits().map(|b| if b { '1' } else { '0' }).collect()
    }

    pub fn from_bitstring(s: &str) -> Option<Self> {
        if s.len() > MAX_N {
            return None;
        }
        let bits: Option<Vec<bool>> = s
            .chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect();
        bits.map(Self::from_bits)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let prod = clmul(u128::from(self.bits), u128::from(other.bits));
        Gf2Poly::new(fold_cyclic(prod, self.n), self.n)
    }
}

#[inline]
fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Carry-less product; callers keep `deg a + deg b < 128`.
fn clmul(a: u128, mut b: u128) -> u128 {
    let mut acc = 0u128;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

/// Reduces a GF(2) polynomial modulo `X^N - 1`.
fn fold_cyclic(mut v: u128, n: usize) -> u64 {
    let mask = (1u128 << n) - 1;
    let mut out = 0u128;
    while v != 0 {
        out ^= v & mask;
        v >>= n;
    }
    out as u64
}

fn degree(v: u128) -> i32 {
    127 - v.leading_zeros() as i32
}

fn divmod(mut a: u128, b: u128) -> (u128, u128) {
    let db = degree(b);
    let mut quot = 0u128;
    while a != 0 && degree(a) >= db {
        let s = degree(a) - db;
        quot ^= 1u128 << s;
        a ^= b << s;
    }
    (quot, a)
}

/// Inverse in `GF(2)[X]/(X^N - 1)` by the extended Euclidean algorithm.
pub fn invert_mod2(a: &Gf2Poly) -> Result<Gf2Poly> {
    let n = a.n;
    let modulus = (1u128 << n) | 1;
    let (mut r0, mut r1) = (modulus, u128::from(a.bits));
    let (mut s0, mut s1) = (0u128, 1u128);
    while r1 != 0 {
        let (quot, rem) = divmod(r0, r1);
        let s2 = s0 ^ u128::from(fold_cyclic(clmul(quot, s1), n));
        (r0, r1) = (r1, rem);
        (s0, s1) = (s1, s2);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible);
    }
    Ok(Gf2Poly::new(fold_cyclic(s0, n), n))
}

/// Raises an inverse mod 2 to an inverse mod `a.modulus()` by Newton
/// iteration `v <- v * (2 - a * v)`, doubling the 2-adic precision per step.
pub fn hensel_lift_inverse(a: &ZqPoly, inv2: &Gf2Poly) -> Result<ZqPoly> {
    hensel_lift_inverse_counted(a, inv2).map(|(v, _)| v)
}

/// As [`hensel_lift_inverse`], also returning the number of Newton steps.
pub fn hensel_lift_inverse_counted(a: &ZqPoly, inv2: &Gf2Poly) -> Result<(ZqPoly, u32)> {
    let n = a.n();
    if inv2.n() != n || a.to_gf2().mul(inv2) != Gf2Poly::one(n) {
        return Err(Error::HenselPrecondition);
    }
    let q = a.modulus();
    let m = q.trailing_zeros();
    let two = ZqPoly::from_coeffs(
        std::iter::once(2i64).chain(std::iter::repeat_n(0, n - 1)),
        q,
    );
    let mut v = ZqPoly::from_gf2(inv2, q);
    let mut precision = 1;
    let mut steps = 0;
    while precision < m {
        let av = a.mul(&v)?;
        v = v.mul(&two.sub(&av)?)?;
        precision *= 2;
        steps += 1;
    }
    Ok((v, steps))
}

/// `f^-1 mod q`, or [`Error::NotInvertible`].
pub fn invert_mod_q(f: &ZqPoly) -> Result<ZqPoly> {
    let inv2 = invert_mod2(&f.to_gf2())?;
    hensel_lift_inverse(f, &inv2)
}

/// A complete key set together with the seed that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NtruKeySet {
    pub params: NtruParams,
    /// Secret binary polynomial `F`.
    pub big_f: Gf2Poly,
    /// Secret binary polynomial `g`.
    pub g: Gf2Poly,
    /// `f = 1 + (2 + X) * F mod q`.
    pub f: ZqPoly,
    /// Public key `h = (2 + X) * f^-1 * g mod q`.
    pub h: ZqPoly,
    pub seed: u64,
}

/// `f = 1 + (2 + X) * F` in `Z_q[X]/(X^N - 1)`.
pub fn f_from_secret(params: &NtruParams, big_f: &Gf2Poly) -> ZqPoly {
    let n = params.n();
    let q = params.q();
    let pf = ZqPoly::p_poly(n, q)
        .mul(&ZqPoly::from_gf2(big_f, q))
        .expect("same ring");
    pf.add(&ZqPoly::one(n, q)).expect("same ring")
}

/// Builds a key set from explicit secrets.
pub fn key_set_from_secrets(
    params: NtruParams,
    big_f: Gf2Poly,
    g: Gf2Poly,
    seed: u64,
) -> Result<NtruKeySet> {
    if big_f.n() != params.n() || g.n() != params.n() {
        return Err(Error::InvalidParams(format!(
            "secret polynomials must have length N = {}",
            params.n()
        )));
    }
    let (n, q) = (params.n(), params.q());
    let f = f_from_secret(&params, &big_f);
    let f_inv = invert_mod_q(&f)?;
    let h = ZqPoly::p_poly(n, q)
        .mul(&f_inv)?
        .mul(&ZqPoly::from_gf2(&g, q))?;
    Ok(NtruKeySet {
        params,
        big_f,
        g,
        f,
        h,
        seed,
    })
}

/// Deterministic key generation. `F` and `g` are independent uniform bit
/// strings drawn from ChaCha8 seeded with `seed` (`F` first, then `g`); `F`
/// is redrawn while `f` is not invertible mod 2.
pub fn keygen(params: NtruParams, seed: u64) -> Result<NtruKeySet> {
    keygen_counted(params, seed).map(|(keys, _)| keys)
}

/// As [`keygen`], also returning how many times `F` was redrawn.
pub fn keygen_counted(params: NtruParams, seed: u64) -> Result<(NtruKeySet, u32)> {
    let n = params.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| Gf2Poly::from_bits((0..n).map(|_| rng.gen::<bool>()));
    for retries in 0..MAX_KEYGEN_DRAWS {
        let big_f = draw(&mut rng);
        let f = f_from_secret(&params, &big_f);
        if invert_mod2(&f.to_gf2()).is_err() {
            continue;
        }
        let g = draw(&mut rng);
        let keys = key_set_from_secrets(params, big_f, g, seed)?;
        return Ok((keys, retries));
    }
    Err(Error::KeygenExhausted(MAX_KEYGEN_DRAWS))
}
