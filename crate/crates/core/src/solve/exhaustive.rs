use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::anf::Assignment;
use crate::attack::{equation_holds, numeric_residues, EquationSystem};
use crate::error::{Error, Result};
use crate::ring::{NtruParams, ZqPoly};
use crate::truth_table::{TruthTable, MAX_TABLE_VARS};
use crate::witt::BooleanRing;

use super::SolutionSet;

/// Largest `N` the exhaustive backend accepts.
pub const EXHAUSTIVE_MAX_N: usize = 28;

/// Low bits enumerated in Gray-code order inside one work chunk.
const CHUNK_BITS: usize = 16;

/// Number of random points on which the system and `h` are checked against
/// each other before searching.
const CONSISTENCY_PROBES: usize = 64;

/// All `F` satisfying `sys`, found by evaluating the equivalent numeric
/// condition on `(1 + (2 + X) F) * h mod 16` over all `2^N` candidates.
///
/// `sys` must come from `h`: a spot check rejects mismatched inputs, and
/// every reported solution is re-checked against the ANF equations.
pub fn solve_exhaustive(
    sys: &EquationSystem,
    params: &NtruParams,
    h: &ZqPoly,
) -> Result<SolutionSet> {
    let n = params.n();
    if sys.n_vars != n {
        return Err(Error::InvalidParams(format!(
            "system has {} variables but keys have N = {n}",
            sys.n_vars
        )));
    }
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::SearchBudget {
            n,
            max: EXHAUSTIVE_MAX_N,
        });
    }
    let checks: Vec<(u8, usize)> = {
        let mut c: Vec<_> = sys.equations.iter().map(|e| (e.level, e.k)).collect();
        c.sort_unstable();
        c.dedup();
        c
    };
    if checks
        .iter()
        .any(|&(level, k)| !(1..=3).contains(&level) || k >= n)
    {
        return Err(Error::InvalidParams(
            "system contains equations that are not attack equations".into(),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..CONSISTENCY_PROBES {
        let x: u64 = rng.gen::<u64>() & low_mask(n);
        let c = numeric_residues(params, h, x);
        for eq in &sys.equations {
            if eq.poly.eval_bits(x) == equation_holds(&c, eq.level, eq.k) {
                return Err(Error::InvalidParams(format!(
                    "system equation (bit {}, k {}) does not match the supplied h",
                    eq.level, eq.k
                )));
            }
        }
    }

    let h16: Vec<u8> = h.coeffs().iter().map(|&c| (c & 15) as u8).collect();
    // u = (2 + X) h; flipping F_i adds or subtracts X^i u.
    let u: Vec<u8> = (0..n)
        .map(|k| (2 * h16[k] + h16[(k + n - 1) % n]) & 15)
        .collect();
    let rotations: Vec<Vec<u8>> = (0..n)
        .map(|i| (0..n).map(|k| u[(k + n - i) % n]).collect())
        .collect();

    let chunk_bits = CHUNK_BITS.min(n);
    let chunks = 1u64 << (n - chunk_bits);
    let found: Vec<Vec<Assignment>> = (0..chunks)
        .into_par_iter()
        .map(|prefix| {
            let mut x = prefix << chunk_bits;
            let mut c: Vec<u8> = numeric_residues(params, h, x)
                .iter()
                .map(|&v| v as u8)
                .collect();
            let mut hits = Vec::new();
            let mut test = |c: &[u8], x: u64| {
                if checks.iter().all(|&(level, k)| holds(c, level, k)) {
                    hits.push(Assignment::new(x, n));
                }
            };
            test(&c, x);
            for step in 1u64..(1 << chunk_bits) {
                let bit = step.trailing_zeros() as usize;
                x ^= 1 << bit;
                let rot = &rotations[bit];
                if (x >> bit) & 1 == 1 {
                    for (ck, r) in c.iter_mut().zip(rot) {
                        *ck = (*ck + r) & 15;
                    }
                } else {
                    for (ck, r) in c.iter_mut().zip(rot) {
                        *ck = ck.wrapping_sub(*r) & 15;
                    }
                }
                test(&c, x);
            }
            hits
        })
        .collect();

    let set = SolutionSet::from_unsorted(found.into_iter().flatten().collect(), true);
    for s in &set.solutions {
        if !sys.is_satisfied_by(s)? {
            return Err(Error::InvalidParams(format!(
                "numeric solution {} does not satisfy the ANF system",
                s.to_bitstring()
            )));
        }
    }
    Ok(set)
}

#[inline]
fn holds(c: &[u8], level: u8, k: usize) -> bool {
    let n = c.len();
    match level {
        1 => (c[k] >> 1) & 1 == c[if k + 1 == n { 0 } else { k + 1 }] & 1,
        2 => c[k] & 4 == 0,
        _ => c[k] & 8 == 0,
    }
}

fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1 << n) - 1
    }
}

/// All solutions of an arbitrary ANF system, by multiplying the truth tables
/// of `1 + p` over the equations.
pub fn solve_exhaustive_anf(sys: &EquationSystem) -> Result<SolutionSet> {
    let n = sys.n_vars;
    if n > MAX_TABLE_VARS {
        return Err(Error::SearchBudget {
            n,
            max: MAX_TABLE_VARS,
        });
    }
    let mut acc = TruthTable::one();
    for eq in &sys.equations {
        if eq.poly.support_len() > n {
            return Err(Error::AssignmentLength {
                expected: eq.poly.support_len(),
                got: n,
            });
        }
        let t = TruthTable::from_anf(n, &eq.poly);
        acc = acc.mul(&t.add(&TruthTable::one()));
        if matches!(acc, TruthTable::Const(false)) {
            break;
        }
    }
    let solutions = acc
        .ones(n)
        .into_iter()
        .map(|x| Assignment::new(x, n))
        .collect();
    Ok(SolutionSet {
        solutions,
        exhaustive: true,
    })
}
