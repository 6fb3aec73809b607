//! Dense Boolean functions on `n <= MAX_TABLE_VARS` variables stored as
//! packed truth tables.
//!
//! Ring operations are word-wise XOR and AND, which makes the symbolic Witt
//! fold cheap regardless of how many monomials the intermediate ANF would
//! carry. Conversion to and from ANF is the binary Möbius transform.

use crate::anf::AnfPoly;
use crate::witt::BooleanRing;

/// Largest variable count for a dense table (2^26 bits = 8 MiB).
pub const MAX_TABLE_VARS: usize = 26;

/// Bit `x` of the table holds the function value at the assignment whose
/// bit `i` is `x_i`.
#[derive(Clone, Debug)]
pub enum TruthTable {
    Const(bool),
    Dense { n_vars: u32, words: Vec<u64> },
}

const LOW_PATTERNS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

fn word_count(n_vars: u32) -> usize {
    if n_vars <= 6 {
        1
    } else {
        1 << (n_vars - 6)
    }
}

fn valid_mask(n_vars: u32) -> u64 {
    if n_vars >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << n_vars)) - 1
    }
}

/// In-place binary Möbius transform (an involution): truth table <-> ANF
/// coefficient table.
fn moebius(words: &mut [u64], n_vars: u32) {
    for (i, pattern) in LOW_PATTERNS.iter().enumerate().take(n_vars.min(6) as usize) {
        let shift = 1 << i;
        for w in words.iter_mut() {
            *w ^= (*w & pattern) << shift;
        }
    }
    for i in 6..n_vars {
        let stride = 1usize << (i - 6);
        for block in words.chunks_mut(2 * stride) {
            let (lo, hi) = block.split_at_mut(stride);
            for (h, l) in hi.iter_mut().zip(lo.iter()) {
                *h ^= *l;
            }
        }
    }
}

impl TruthTable {
    pub fn variable(n_vars: usize, i: usize) -> Self {
        assert!(n_vars <= MAX_TABLE_VARS && i < n_vars);
        let n = n_vars as u32;
        let words = if i < 6 {
            vec![!LOW_PATTERNS[i] & valid_mask(n); word_count(n)]
        } else {
            let stride = 1usize << (i - 6);
            (0..word_count(n))
                .map(|w| if w & stride != 0 { u64::MAX } else { 0 })
                .collect()
        };
        TruthTable::Dense { n_vars: n, words }
    }

    pub fn from_anf(n_vars: usize, p: &AnfPoly) -> Self {
        assert!(n_vars <= MAX_TABLE_VARS);
        assert!(
            p.support_len() <= n_vars,
            "polynomial uses variables beyond n_vars"
        );
        let n = n_vars as u32;
        let mut words = vec![0u64; word_count(n)];
        for &m in p.masks() {
            words[(m >> 6) as usize] ^= 1 << (m & 63);
        }
        moebius(&mut words, n);
        TruthTable::Dense { n_vars: n, words }
    }

    /// Canonical ANF of the function.
    pub fn to_anf(&self) -> AnfPoly {
        match self {
            TruthTable::Const(false) => AnfPoly::zero(),
            TruthTable::Const(true) => AnfPoly::one(),
            TruthTable::Dense { n_vars, words } => {
                let mut coeffs = words.clone();
                moebius(&mut coeffs, *n_vars);
                if let Some(last) = coeffs.last_mut() {
                    *last &= valid_mask(*n_vars);
                }
                let mut masks = Vec::new();
                for (w, &word) in coeffs.iter().enumerate() {
                    let mut bits = word;
                    while bits != 0 {
                        let b = bits.trailing_zeros() as u64;
                        masks.push(((w as u64) << 6) | b);
                        bits &= bits - 1;
                    }
                }
                AnfPoly::from_sorted_unchecked(masks)
            }
        }
    }

    pub fn eval_bits(&self, x: u64) -> bool {
        match self {
            TruthTable::Const(b) => *b,
            TruthTable::Dense { words, .. } => (words[(x >> 6) as usize] >> (x & 63)) & 1 == 1,
        }
    }

    /// Number of assignments where the function is 1.
    pub fn weight(&self, n_vars: usize) -> u64 {
        match self {
            TruthTable::Const(false) => 0,
            TruthTable::Const(true) => 1 << n_vars,
            TruthTable::Dense { words, n_vars: n } => {
                assert_eq!(*n as usize, n_vars);
                words.iter().map(|w| u64::from(w.count_ones())).sum()
            }
        }
    }

    /// Assignments (as bit patterns) where the function is 1, ascending.
    pub fn ones(&self, n_vars: usize) -> Vec<u64> {
        match self {
            TruthTable::Const(false) => Vec::new(),
            TruthTable::Const(true) => (0..1u64 << n_vars).collect(),
            TruthTable::Dense { words, .. } => {
                let mut out = Vec::new();
                for (w, &word) in words.iter().enumerate() {
                    let mut bits = word;
                    while bits != 0 {
                        out.push(((w as u64) << 6) | u64::from(bits.trailing_zeros()));
                        bits &= bits - 1;
                    }
                }
                out
            }
        }
    }

    fn complement(n_vars: u32, words: &[u64]) -> Self {
        let mask = valid_mask(n_vars);
        TruthTable::Dense {
            n_vars,
            words: words.iter().map(|w| !w & mask).collect(),
        }
    }
}

impl BooleanRing for TruthTable {
    fn zero() -> Self {
        TruthTable::Const(false)
    }

    fn one() -> Self {
        TruthTable::Const(true)
    }

    fn add(&self, rhs: &Self) -> Self {
        use TruthTable::*;
        match (self, rhs) {
            (Const(a), Const(b)) => Const(a ^ b),
            (Const(false), t) | (t, Const(false)) => t.clone(),
            (Const(true), Dense { n_vars, words }) | (Dense { n_vars, words }, Const(true)) => {
                TruthTable::complement(*n_vars, words)
            }
            (
                Dense { n_vars, words: a },
                Dense {
                    n_vars: m,
                    words: b,
                },
            ) => {
                assert_eq!(n_vars, m, "truth tables over different variable counts");
                Dense {
                    n_vars: *n_vars,
                    words: a.iter().zip(b).map(|(x, y)| x ^ y).collect(),
                }
            }
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        use TruthTable::*;
        match (self, rhs) {
            (Const(a), Const(b)) => Const(a & b),
            (Const(false), _) | (_, Const(false)) => Const(false),
            (Const(true), t) | (t, Const(true)) => t.clone(),
            (
                Dense { n_vars, words: a },
                Dense {
                    n_vars: m,
                    words: b,
                },
            ) => {
                assert_eq!(n_vars, m, "truth tables over different variable counts");
                Dense {
                    n_vars: *n_vars,
                    words: a.iter().zip(b).map(|(x, y)| x & y).collect(),
                }
            }
        }
    }
}
