//! Boolean polynomials in algebraic normal form over `x_0..x_{n-1}`,
//! `n <= 64`.
//!
//! A monomial is a set of variables stored as a `u64` mask; a polynomial is
//! the sorted, duplicate-free list of its monomial masks. `x * x = x` is
//! built into multiplication (mask union) and `m + m = 0` into addition
//! (symmetric difference).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::witt::BooleanRing;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(pub u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn var(i: usize) -> Self {
        assert!(i < 64, "variable index {i} out of range");
        Monomial(1 << i)
    }

    #[inline]
    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn divides(self, other: Monomial) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn vars(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        })
    }

    /// Highest variable index plus one (0 for the constant).
    pub fn support_len(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        for (n, i) in self.vars().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            write!(f, "x{i}")?;
        }
        Ok(())
    }
}

/// Values of `x_0..x_{len-1}`, bit `i` of `bits` holding `x_i`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Assignment {
    bits: u64,
    len: usize,
}

impl Assignment {
    pub fn new(bits: u64, len: usize) -> Self {
        assert!(len <= 64);
        let mask = if len == 64 { u64::MAX } else { (1 << len) - 1 };
        Assignment {
            bits: bits & mask,
            len,
        }
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(values: I) -> Self {
        let mut bits = 0;
        let mut len = 0;
        for (i, v) in values.into_iter().enumerate() {
            assert!(i < 64);
            bits |= u64::from(v) << i;
            len = i + 1;
        }
        Assignment { bits, len }
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.bits >> i) & 1 == 1
    }

    /// Index 0 first.
    pub fn to_bitstring(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }
}

/// Sorted (ascending mask), duplicate-free sum of monomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AnfPoly {
    terms: Vec<u64>,
}

impl fmt::Debug for AnfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AnfPoly({self})")
    }
}

/// Sorts masks and cancels equal pairs.
fn canonicalize(mut masks: Vec<u64>) -> Vec<u64> {
    masks.sort_unstable();
    let mut out = Vec::with_capacity(masks.len());
    let mut i = 0;
    while i < masks.len() {
        let mut j = i + 1;
        while j < masks.len() && masks[j] == masks[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            out.push(masks[i]);
        }
        i = j;
    }
    out
}

impl AnfPoly {
    pub fn zero() -> Self {
        AnfPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        AnfPoly { terms: vec![0] }
    }

    pub fn var(i: usize) -> Self {
        AnfPoly::from_monomial(Monomial::var(i))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        AnfPoly { terms: vec![m.0] }
    }

    /// Sum of the given monomials; repeated masks cancel in pairs.
    pub fn from_masks<I: IntoIterator<Item = u64>>(masks: I) -> Self {
        AnfPoly {
            terms: canonicalize(masks.into_iter().collect()),
        }
    }

    /// Wraps masks already sorted ascending and duplicate-free.
    pub(crate) fn from_sorted_unchecked(terms: Vec<u64>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0] < w[1]));
        AnfPoly { terms }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms == [0]
    }

    pub fn masks(&self) -> &[u64] {
        &self.terms
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().map(|&m| Monomial(m))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Maximum monomial degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|m| m.count_ones()).max().unwrap_or(0)
    }

    pub fn stats(&self) -> (u32, usize) {
        (self.degree(), self.term_count())
    }

    pub fn has_constant(&self) -> bool {
        self.terms.first() == Some(&0)
    }

    /// Smallest number of variables that covers every monomial.
    pub fn support_len(&self) -> usize {
        let union = self.terms.iter().fold(0, |acc, m| acc | m);
        Monomial(union).support_len()
    }

    /// Symmetric difference of the monomial sets.
    pub fn anf_add(&self, other: &Self) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        AnfPoly { terms: out }
    }

    pub fn anf_mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return AnfPoly::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut masks = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &a in &self.terms {
            masks.extend(other.terms.iter().map(|&b| a | b));
        }
        AnfPoly {
            terms: canonicalize(masks),
        }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Self {
        AnfPoly {
            terms: canonicalize(self.terms.iter().map(|&t| t | m.0).collect()),
        }
    }

    /// XOR over monomials of the AND of their variables.
    pub fn eval(&self, a: &Assignment) -> Result<bool> {
        let needed = self.support_len();
        if needed > a.len() {
            return Err(Error::AssignmentLength {
                expected: needed,
                got: a.len(),
            });
        }
        Ok(self.eval_bits(a.bits()))
    }

    /// Evaluation at a raw bit pattern, without length checks.
    #[inline]
    pub fn eval_bits(&self, x: u64) -> bool {
        self.terms.iter().fold(false, |acc, &m| acc ^ (m & !x == 0))
    }

    /// Substitutes `x_var = value`.
    pub fn substitute(&self, var: usize, value: bool) -> Self {
        let bit = 1u64 << var;
        if value {
            AnfPoly::from_masks(self.terms.iter().map(|&m| m & !bit))
        } else {
            AnfPoly {
                terms: self
                    .terms
                    .iter()
                    .copied()
                    .filter(|m| m & bit == 0)
                    .collect(),
            }
        }
    }
}

impl BooleanRing for AnfPoly {
    fn zero() -> Self {
        AnfPoly::zero()
    }
    fn one() -> Self {
        AnfPoly::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.anf_add(rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.anf_mul(rhs)
    }
}

/// Monomials ascending by mask joined by ` + `, `0` for the zero polynomial.
impl fmt::Display for AnfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, &m) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}", Monomial(m))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseAnfError(pub String);

impl fmt::Display for ParseAnfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseAnfError {}

fn parse_monomial(s: &str) -> std::result::Result<u64, ParseAnfError> {
    match s {
        "1" => return Ok(0),
        "0" => return Err(ParseAnfError("`0` is not a monomial".into())),
        _ => {}
    }
    let mut mask = 0u64;
    for factor in s.split('*') {
        let idx = factor
            .strip_prefix('x')
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&i| i < 64)
            .ok_or_else(|| ParseAnfError(format!("bad factor `{factor}`")))?;
        mask |= 1 << idx;
    }
    Ok(mask)
}

/// Parses the text rendering. Input need not be canonical: repeated
/// monomials cancel and out-of-order terms are sorted.
impl FromStr for AnfPoly {
    type Err = ParseAnfError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(AnfPoly::zero());
        }
        let masks = s
            .split('+')
            .map(|t| parse_monomial(t.trim()))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(AnfPoly::from_masks(masks))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> AnfPoly {
        s.parse().unwrap()
    }

    #[test]
    fn add_cases() {
        let a = p("x0 + x1*x2 + 1");
        assert!(a.anf_add(&a).is_zero());
        assert_eq!(a.anf_add(&AnfPoly::zero()), a);
        assert_eq!(p("x0 + x1").anf_add(&p("x1 + x2")), p("x0 + x2"));
    }

    #[test]
    fn mul_cases() {
        assert_eq!(p("x0").anf_mul(&p("x0")), p("x0"));
        assert_eq!(p("x0 + 1").anf_mul(&p("x0 + 1")), p("x0 + 1"));
        let prod = p("x0 + x1").anf_mul(&p("x0 + x1 + 1"));
        // (x0 + x1)(x0 + x1 + 1) = 0 for every assignment.
        for bits in 0..4u64 {
            let a = Assignment::new(bits, 2);
            let lhs = p("x0 + x1").eval(&a).unwrap() & p("x0 + x1 + 1").eval(&a).unwrap();
            assert_eq!(prod.eval(&a).unwrap(), lhs);
        }
        assert!(prod.is_zero());
    }

    #[test]
    fn eval_cases() {
        let a = Assignment::from_bools([true, true, false]);
        assert!(!AnfPoly::zero().eval(&a).unwrap());
        assert!(AnfPoly::one().eval(&a).unwrap());
        assert!(p("x0*x1 + x2").eval(&a).unwrap());
        assert!(matches!(
            p("x5").eval(&a),
            Err(Error::AssignmentLength {
                expected: 6,
                got: 3
            })
        ));
    }

    #[test]
    fn stats_cases() {
        assert_eq!(AnfPoly::zero().stats(), (0, 0));
        assert_eq!(p("x0*x1*x2*x3").stats(), (4, 1));
        assert_eq!(p("1 + x3 + x0*x1").stats(), (2, 3));
    }

    #[test]
    fn rendering() {
        assert_eq!(AnfPoly::zero().to_string(), "0");
        assert_eq!(AnfPoly::one().to_string(), "1");
        assert_eq!(p("x2*x0 + 1 + x1").to_string(), "1 + x1 + x0*x2");
        assert_eq!(p("x0 + x0").to_string(), "0");
        assert!("x0 + y1".parse::<AnfPoly>().is_err());
        assert!("x64".parse::<AnfPoly>().is_err());
        assert!("x0 + ".parse::<AnfPoly>().is_err());
    }

    #[test]
    fn substitution() {
        let a = p("x0*x1 + x1 + x2");
        assert_eq!(a.substitute(1, false), p("x2"));
        assert_eq!(a.substitute(1, true), p("x0 + 1 + x2"));
        assert_eq!(p("x0*x1 + x0").substitute(1, true), AnfPoly::zero());
    }
}
