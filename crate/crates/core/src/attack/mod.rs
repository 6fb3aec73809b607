//! Equation generation for the key-recovery attack.
//!
//! Writing `f * h = (2 + X) * g (mod 16)` coefficient-wise in `W_4[F_2]`
//! gives, for each `k`, `L_k = sum_{i + j = k} f_i h_j` on the left and
//! `R_k = [g_{k-1}, g_k, 0, 0]` on the right. With the `F_i` as unknowns:
//!
//! * bit 0 defines `g_{k-1} = L_{k,0}` (affine in `F`),
//! * bit 1 yields `L_{k,1} + L_{k+1,0} = 0` (quadratic),
//! * bit 2 yields `L_{k,2} = 0` (degree 4),
//! * bit 3 yields `L_{k,3} = 0` (degree 8).

mod closed_form;

pub use closed_form::{
    closed_form_l2_l3, Bit3Aux, CkForm, ClosedFormReport, Join, L3Reading, L3ReadingOutcome,
};

use rayon::prelude::*;

use crate::anf::{AnfPoly, Assignment};
use crate::error::{Error, Result};
use crate::ring::{Gf2Poly, NtruKeySet, NtruParams, ZqPoly};
use crate::truth_table::TruthTable;
use crate::witt::{witt_sum_fold_prefix, BooleanRing, WittVec, WITT_LEN};

/// Largest `N` for which generation runs on dense truth tables; above it the
/// sparse ANF ring is used.
pub const DENSE_GENERATION_MAX_N: usize = 24;

/// A Boolean ring that can name the unknowns `F_i` and report canonical ANF.
pub trait SymbolicRing: BooleanRing + Send + Sync {
    fn variable(n_vars: usize, i: usize) -> Self;
    fn to_anf(&self) -> AnfPoly;
}

impl SymbolicRing for AnfPoly {
    fn variable(_n_vars: usize, i: usize) -> Self {
        AnfPoly::var(i)
    }
    fn to_anf(&self) -> AnfPoly {
        self.clone()
    }
}

impl SymbolicRing for TruthTable {
    fn variable(n_vars: usize, i: usize) -> Self {
        TruthTable::variable(n_vars, i)
    }
    fn to_anf(&self) -> AnfPoly {
        TruthTable::to_anf(self)
    }
}

/// Witt coefficients of `f` (symbolic in the `F_i`) and of `h mod 16`.
#[derive(Clone, Debug)]
pub struct SymbolicKeyCoeffs<R> {
    /// `f_0 = [1 + F_{N-1}, F_0 + F_{N-1}, F_0 F_{N-1}, 0]`,
    /// `f_i = [F_{i-1}, F_i, 0, 0]` for `i >= 1`.
    pub f_witt: Vec<WittVec<R>>,
    pub h_witt: Vec<WittVec<bool>>,
}

fn modulus_check(params: &NtruParams) -> Result<()> {
    if params.q() < 16 {
        return Err(Error::ModulusTooSmall(params.q()));
    }
    Ok(())
}

impl<R: SymbolicRing> SymbolicKeyCoeffs<R> {
    pub fn from_public(params: &NtruParams, h: &ZqPoly) -> Result<Self> {
        modulus_check(params)?;
        let n = params.n();
        if h.n() != n {
            return Err(Error::InvalidParams(format!(
                "h has {} coefficients, expected {n}",
                h.n()
            )));
        }
        let vars: Vec<R> = (0..n).map(|i| R::variable(n, i)).collect();
        let last = &vars[n - 1];
        let mut f_witt = Vec::with_capacity(n);
        f_witt.push(WittVec([
            R::one().add(last),
            vars[0].add(last),
            vars[0].mul(last),
            R::zero(),
        ]));
        for i in 1..n {
            f_witt.push(WittVec([
                vars[i - 1].clone(),
                vars[i].clone(),
                R::zero(),
                R::zero(),
            ]));
        }
        let h_witt = h
            .coeffs()
            .iter()
            .map(|&c| WittVec::from_residue(c % 16).expect("reduced mod 16"))
            .collect();
        Ok(SymbolicKeyCoeffs { f_witt, h_witt })
    }

    pub fn n(&self) -> usize {
        self.f_witt.len()
    }

    /// The `N` products `f_i * h_{i*}`, `i + i* = k (mod N)`, truncated to
    /// `len` components.
    pub fn products(&self, k: usize, len: usize) -> Vec<WittVec<R>> {
        let n = self.n();
        (0..n)
            .map(|i| {
                let j = (k + n - i) % n;
                self.f_witt[i].mul_prefix(&WittVec::from_bits(&self.h_witt[j]), len)
            })
            .collect()
    }
}

pub fn build_symbolic_coeffs<R: SymbolicRing>(keys: &NtruKeySet) -> Result<SymbolicKeyCoeffs<R>> {
    SymbolicKeyCoeffs::from_public(&keys.params, &keys.h)
}

/// `L_k` as a Witt sum, folded pairwise.
pub fn compute_l<R: SymbolicRing>(coeffs: &SymbolicKeyCoeffs<R>, k: usize) -> WittVec<R> {
    compute_l_prefix(coeffs, k, WITT_LEN)
}

/// `L_k` restricted to its first `len` components.
pub fn compute_l_prefix<R: SymbolicRing>(
    coeffs: &SymbolicKeyCoeffs<R>,
    k: usize,
    len: usize,
) -> WittVec<R> {
    witt_sum_fold_prefix(&coeffs.products(k, len), len)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Provenance {
    pub params: NtruParams,
    pub seed: u64,
}

/// One equation `poly = 0` coming from Witt bit `level` of coefficient `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub level: u8,
    pub k: usize,
    pub poly: AnfPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationSystem {
    pub n_vars: usize,
    /// Ascending level, then ascending `k`, for generated systems.
    pub equations: Vec<Equation>,
    pub provenance: Option<Provenance>,
}

impl EquationSystem {
    pub fn empty(n_vars: usize) -> Self {
        EquationSystem {
            n_vars,
            equations: Vec::new(),
            provenance: None,
        }
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    /// Whether every equation vanishes at `a`.
    pub fn is_satisfied_by(&self, a: &Assignment) -> Result<bool> {
        if a.len() != self.n_vars {
            return Err(Error::AssignmentLength {
                expected: self.n_vars,
                got: a.len(),
            });
        }
        Ok(self.equations.iter().all(|e| !e.poly.eval_bits(a.bits())))
    }

    /// The system restricted to equations whose level is below `bits`.
    pub fn truncated(&self, bits: u8) -> Self {
        EquationSystem {
            n_vars: self.n_vars,
            equations: self
                .equations
                .iter()
                .filter(|e| e.level < bits)
                .cloned()
                .collect(),
            provenance: self.provenance,
        }
    }
}

fn check_bits(bits: u8) -> Result<()> {
    if !(2..=4).contains(&bits) {
        return Err(Error::InvalidBitCount(bits));
    }
    Ok(())
}

/// Generates the system from the first `bits` Witt bits: `N` equations of
/// level 1, plus `N` of level 2 when `bits >= 3`, plus `N` of level 3 when
/// `bits = 4`.
pub fn generate_system(keys: &NtruKeySet, bits: u8) -> Result<EquationSystem> {
    let provenance = Provenance {
        params: keys.params,
        seed: keys.seed,
    };
    let mut sys = generate_system_from_public(&keys.params, &keys.h, bits)?;
    sys.provenance = Some(provenance);
    Ok(sys)
}

/// As [`generate_system`] from public data only.
pub fn generate_system_from_public(
    params: &NtruParams,
    h: &ZqPoly,
    bits: u8,
) -> Result<EquationSystem> {
    if params.n() <= DENSE_GENERATION_MAX_N {
        generate_system_with::<TruthTable>(params, h, bits)
    } else {
        generate_system_with::<AnfPoly>(params, h, bits)
    }
}

/// Generation over an explicit component ring.
pub fn generate_system_with<R: SymbolicRing>(
    params: &NtruParams,
    h: &ZqPoly,
    bits: u8,
) -> Result<EquationSystem> {
    check_bits(bits)?;
    let coeffs = SymbolicKeyCoeffs::<R>::from_public(params, h)?;
    let n = params.n();
    let len = bits as usize;
    let ls: Vec<Vec<AnfPoly>> = (0..n)
        .into_par_iter()
        .map(|k| {
            let l = compute_l_prefix(&coeffs, k, len);
            l.0[..len].iter().map(SymbolicRing::to_anf).collect()
        })
        .collect();

    let mut equations = Vec::with_capacity(n * (len - 1));
    for k in 0..n {
        let poly = ls[k][1].anf_add(&ls[(k + 1) % n][0]);
        equations.push(Equation { level: 1, k, poly });
    }
    for level in 2..len {
        for (k, l) in ls.iter().enumerate() {
            equations.push(Equation {
                level: level as u8,
                k,
                poly: l[level].clone(),
            });
        }
    }
    Ok(EquationSystem {
        n_vars: n,
        equations,
        provenance: None,
    })
}

/// Residues `(1 + (2 + X) x) * h mod 16` for a candidate `F = x`.
pub fn numeric_residues(params: &NtruParams, h: &ZqPoly, x: u64) -> Vec<u32> {
    let n = params.n();
    let f = crate::ring::f_from_secret(
        &NtruParams::new(n, 16).expect("N already validated"),
        &Gf2Poly::new(x, n),
    );
    f.mul(&h.with_modulus(16))
        .expect("same ring")
        .coeffs()
        .to_vec()
}

/// Whether the equation of `level` at `k` holds for the residues `c` of
/// `f * h mod 16`.
#[inline]
pub fn equation_holds(c: &[u32], level: u8, k: usize) -> bool {
    let n = c.len();
    match level {
        1 => (c[k] >> 1) & 1 == c[(k + 1) % n] & 1,
        2 => (c[k] >> 2) & 1 == 0,
        3 => (c[k] >> 3) & 1 == 0,
        _ => panic!("equation level {level} out of range"),
    }
}

/// Reads `g` off the bit-0 relations `g_{k-1} = L_{k,0}` at `F`, then checks
/// `f * h = (2 + X) g (mod 16)`.
pub fn recover_g(params: &NtruParams, h: &ZqPoly, big_f: &Assignment) -> Result<Gf2Poly> {
    let n = params.n();
    if big_f.len() != n {
        return Err(Error::AssignmentLength {
            expected: n,
            got: big_f.len(),
        });
    }
    let g = read_g(params, h, big_f);
    let c = numeric_residues(params, h, big_f.bits());
    let pg = ZqPoly::p_poly(n, 16).mul(&ZqPoly::from_gf2(&g, 16))?;
    if pg.coeffs() != &c[..] {
        return Err(Error::InconsistentSolution);
    }
    Ok(g)
}

/// `g` from the bit-0 relations alone, without any consistency check.
pub fn read_g(params: &NtruParams, h: &ZqPoly, big_f: &Assignment) -> Gf2Poly {
    let n = params.n();
    let c = numeric_residues(params, h, big_f.bits());
    Gf2Poly::from_bits((0..n).map(|j| c[(j + 1) % n] & 1 == 1))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LevelStats {
    pub level: u8,
    pub count: usize,
    pub max_degree: u32,
    pub max_terms: usize,
    pub mean_terms: f64,
}

/// Degree and term-count aggregates per level, ascending level.
pub fn system_stats(sys: &EquationSystem) -> Vec<LevelStats> {
    let mut out: Vec<LevelStats> = Vec::new();
    for eq in &sys.equations {
        let (deg, terms) = eq.poly.stats();
        let entry = match out.iter_mut().find(|s| s.level == eq.level) {
            Some(s) => s,
            None => {
                out.push(LevelStats {
                    level: eq.level,
                    count: 0,
                    max_degree: 0,
                    max_terms: 0,
                    mean_terms: 0.0,
                });
                out.last_mut().unwrap()
            }
        };
        entry.count += 1;
        entry.max_degree = entry.max_degree.max(deg);
        entry.max_terms = entry.max_terms.max(terms);
        entry.mean_terms += terms as f64;
    }
    for s in &mut out {
        s.mean_terms /= s.count as f64;
    }
    out.sort_by_key(|s| s.level);
    out
}
