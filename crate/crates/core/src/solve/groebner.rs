//! Buchberger's algorithm in `F_2[x_0..x_{n-1}] / (x_i^2 + x_i)`.
//!
//! Polynomials stay square-free throughout. The field equations are never
//! stored: their S-polynomial with a generator `g` and a variable `x` of
//! `LM(g)` is the Boolean product `x * g`, which is queued as a pair of its
//! own. Work polynomials are dense bitsets indexed by monomial rank in the
//! chosen order, so the leading term is the highest set bit and a reduction
//! step only touches bits below the one it clears.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use crate::anf::{AnfPoly, Assignment, Monomial};
use crate::attack::EquationSystem;
use crate::error::{Error, Result};

use super::SolutionSet;

/// Variable limit of the dense work representation (2^20 monomials).
pub const GROEBNER_MAX_VARS: usize = 20;

/// Ties between equal-degree monomials break on ascending variable index:
/// `x_0 > x_1 > ... > x_{n-1}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
}

impl MonomialOrder {
    /// Larger key means larger monomial.
    #[inline]
    pub fn key(self, m: u64) -> u128 {
        match self {
            MonomialOrder::DegRevLex => (u128::from(m.count_ones()) << 64) | u128::from(!m),
            MonomialOrder::Lex => u128::from(m.reverse_bits()),
        }
    }

    pub fn leading_monomial(self, p: &AnfPoly) -> Option<Monomial> {
        p.masks()
            .iter()
            .copied()
            .max_by_key(|&m| self.key(m))
            .map(Monomial)
    }

    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::DegRevLex => "degrevlex",
            MonomialOrder::Lex => "lex",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerConfig {
    pub order: MonomialOrder,
    /// Critical pairs processed before giving up.
    pub max_pairs: usize,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            order: MonomialOrder::DegRevLex,
            max_pairs: 2_000_000,
        }
    }
}

/// A reduced Gröbner basis (together with the implicit field equations),
/// generators sorted by descending leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub n_vars: usize,
    pub order: MonomialOrder,
    pub generators: Vec<AnfPoly>,
}

impl GroebnerBasis {
    /// The ideal contains 1.
    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(AnfPoly::is_one)
    }

    /// Normal form of `p` modulo the basis.
    pub fn reduce(&self, p: &AnfPoly) -> AnfPoly {
        let ctx = Ctx::new(self.n_vars, self.order);
        let gens: Vec<Gen> = self
            .generators
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| ctx.gen_from(g))
            .collect();
        let refs: Vec<&Gen> = gens.iter().collect();
        let mut work = ctx.dense(p);
        ctx.reduce(&mut work, &refs);
        ctx.to_anf(&work)
    }
}

struct Ctx {
    n: usize,
    order: MonomialOrder,
    rank: Vec<u32>,
    unrank: Vec<u64>,
}

#[derive(Clone, Debug)]
struct Gen {
    lm: u64,
    /// Descending in the order, `terms[0] == lm`.
    terms: Vec<u64>,
}

impl Ctx {
    fn new(n: usize, order: MonomialOrder) -> Self {
        let mut unrank: Vec<u64> = (0..1u64 << n).collect();
        unrank.sort_unstable_by_key(|&m| order.key(m));
        let mut rank = vec![0u32; unrank.len()];
        for (r, &m) in unrank.iter().enumerate() {
            rank[m as usize] = r as u32;
        }
        Ctx {
            n,
            order,
            rank,
            unrank,
        }
    }

    fn words(&self) -> usize {
        self.unrank.len().div_ceil(64)
    }

    fn dense(&self, p: &AnfPoly) -> Vec<u64> {
        let mut w = vec![0u64; self.words()];
        for &m in p.masks() {
            self.toggle(&mut w, m);
        }
        w
    }

    #[inline]
    fn toggle(&self, w: &mut [u64], m: u64) {
        let r = self.rank[m as usize] as usize;
        w[r >> 6] ^= 1 << (r & 63);
    }

    /// Set bits as masks, descending in the order.
    fn terms_desc(&self, w: &[u64]) -> Vec<u64> {
        let mut out = Vec::new();
        for (i, &word) in w.iter().enumerate().rev() {
            let mut bits = word;
            while bits != 0 {
                let b = 63 - bits.leading_zeros() as usize;
                out.push(self.unrank[(i << 6) | b]);
                bits &= !(1 << b);
            }
        }
        out
    }

    fn to_anf(&self, w: &[u64]) -> AnfPoly {
        AnfPoly::from_masks(self.terms_desc(w))
    }

    fn gen_from(&self, p: &AnfPoly) -> Gen {
        let mut terms = p.masks().to_vec();
        terms.sort_unstable_by_key(|&m| Reverse(self.order.key(m)));
        Gen {
            lm: terms[0],
            terms,
        }
    }

    fn gen_from_dense(&self, w: &[u64]) -> Option<Gen> {
        let terms = self.terms_desc(w);
        terms.first().copied().map(|lm| Gen { lm, terms })
    }

    /// Adds `m * g` (Boolean product) into `w`.
    fn add_multiple(&self, w: &mut [u64], g: &Gen, m: u64) {
        for &t in &g.terms {
            self.toggle(w, t | m);
        }
    }

    /// Full reduction of `w` by `basis`.
    fn reduce(&self, w: &mut [u64], basis: &[&Gen]) {
        for i in (0..w.len()).rev() {
            let mut limit: u32 = 64;
            loop {
                let visible = if limit == 64 {
                    w[i]
                } else {
                    w[i] & ((1u64 << limit) - 1)
                };
                if visible == 0 {
                    break;
                }
                let b = 63 - visible.leading_zeros();
                limit = b;
                let t = self.unrank[(i << 6) | b as usize];
                if let Some(g) = basis.iter().find(|g| g.lm & !t == 0) {
                    self.add_multiple(w, g, t & !g.lm);
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Pair {
    /// `S(g_i, g_j)`, `i < j`.
    Standard(usize, usize),
    /// `x_v * g_i` for `x_v | LM(g_i)`.
    Field(usize, u32),
}

struct State<'a> {
    ctx: &'a Ctx,
    gens: Vec<Gen>,
    queue: BinaryHeap<Reverse<(u32, u64, Pair)>>,
    pending: HashSet<(usize, usize)>,
    seq: u64,
}

impl State<'_> {
    /// Returns `false` when the new generator is the constant 1.
    fn add(&mut self, g: Gen) -> bool {
        if g.lm == 0 {
            self.gens = vec![g];
            return false;
        }
        let i = self.gens.len();
        for (j, other) in self.gens.iter().enumerate() {
            if other.lm & g.lm == 0 {
                continue;
            }
            let deg = (other.lm | g.lm).count_ones();
            self.queue
                .push(Reverse((deg, self.seq, Pair::Standard(j, i))));
            self.pending.insert((j, i));
            self.seq += 1;
        }
        for v in Monomial(g.lm).vars() {
            self.queue.push(Reverse((
                g.lm.count_ones() + 1,
                self.seq,
                Pair::Field(i, v as u32),
            )));
            self.seq += 1;
        }
        self.gens.push(g);
        true
    }

    fn is_pending(&self, a: usize, b: usize) -> bool {
        self.pending.contains(&(a.min(b), a.max(b)))
    }

    /// Buchberger's chain criterion.
    fn chain_skips(&self, i: usize, j: usize) -> bool {
        let lcm = self.gens[i].lm | self.gens[j].lm;
        self.gens.iter().enumerate().any(|(k, g)| {
            k != i && k != j && g.lm & !lcm == 0 && !self.is_pending(i, k) && !self.is_pending(j, k)
        })
    }

    fn basis_refs(&self) -> Vec<&Gen> {
        self.gens.iter().collect()
    }
}

/// Keeps generators with minimal leading monomials, then reduces each tail
/// by the others.
fn interreduce(ctx: &Ctx, mut gens: Vec<Gen>) -> Vec<Gen> {
    gens.sort_by_key(|g| ctx.order.key(g.lm));
    let mut kept: Vec<Gen> = Vec::new();
    for g in gens {
        if !kept.iter().any(|k| k.lm & !g.lm == 0) {
            kept.push(g);
        }
    }
    for i in 0..kept.len() {
        let mut w = vec![0u64; ctx.words()];
        for &t in &kept[i].terms {
            ctx.toggle(&mut w, t);
        }
        let others: Vec<&Gen> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g)
            .collect();
        ctx.reduce(&mut w, &others);
        kept[i] = ctx
            .gen_from_dense(&w)
            .expect("leading monomial is irreducible");
    }
    kept.sort_by_key(|g| Reverse(ctx.order.key(g.lm)));
    kept
}

fn finish(ctx: &Ctx, gens: Vec<Gen>) -> GroebnerBasis {
    GroebnerBasis {
        n_vars: ctx.n,
        order: ctx.order,
        generators: gens
            .into_iter()
            .map(|g| AnfPoly::from_masks(g.terms))
            .collect(),
    }
}

/// Reduced Gröbner basis of the ideal generated by the system's equations
/// and the field equations.
pub fn buchberger(sys: &EquationSystem, config: GroebnerConfig) -> Result<GroebnerBasis> {
    let polys: Vec<AnfPoly> = sys.equations.iter().map(|e| e.poly.clone()).collect();
    buchberger_polys(sys.n_vars, &polys, config)
}

pub(crate) fn buchberger_polys(
    n: usize,
    polys: &[AnfPoly],
    config: GroebnerConfig,
) -> Result<GroebnerBasis> {
    if n > GROEBNER_MAX_VARS {
        return Err(Error::TooManyVariables {
            n,
            max: GROEBNER_MAX_VARS,
        });
    }
    if let Some(p) = polys.iter().find(|p| p.support_len() > n) {
        return Err(Error::AssignmentLength {
            expected: p.support_len(),
            got: n,
        });
    }
    let ctx = Ctx::new(n, config.order);
    buchberger_in(&ctx, polys, config.max_pairs)
}

fn buchberger_in(ctx: &Ctx, polys: &[AnfPoly], max_pairs: usize) -> Result<GroebnerBasis> {
    let mut state = State {
        ctx,
        gens: Vec::new(),
        queue: BinaryHeap::new(),
        pending: HashSet::new(),
        seq: 0,
    };

    // Lowest-degree inputs first, so quadratic equations are consumed before
    // the degree-4 and degree-8 ones.
    let mut inputs: Vec<&AnfPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    inputs.sort_by_key(|p| p.degree());
    for p in inputs {
        let mut w = ctx.dense(p);
        ctx.reduce(&mut w, &state.basis_refs());
        if let Some(g) = ctx.gen_from_dense(&w) {
            if !state.add(g) {
                return Ok(finish(ctx, state.gens));
            }
        }
    }

    let mut processed = 0usize;
    while let Some(Reverse((_, _, pair))) = state.queue.pop() {
        let mut w = vec![0u64; ctx.words()];
        match pair {
            Pair::Standard(i, j) => {
                state.pending.remove(&(i, j));
                if state.chain_skips(i, j) {
                    continue;
                }
                let (gi, gj) = (&state.gens[i], &state.gens[j]);
                ctx.add_multiple(&mut w, gi, gj.lm & !gi.lm);
                ctx.add_multiple(&mut w, gj, gi.lm & !gj.lm);
            }
            Pair::Field(i, v) => {
                ctx.add_multiple(&mut w, &state.gens[i], 1u64 << v);
            }
        }
        processed += 1;
        if processed > max_pairs {
            let partial = finish(state.ctx, state.gens);
            return Err(Error::GroebnerBudget {
                pairs: max_pairs,
                partial: Box::new(partial),
            });
        }
        ctx.reduce(&mut w, &state.basis_refs());
        if let Some(g) = ctx.gen_from_dense(&w) {
            if !state.add(g) {
                return Ok(finish(ctx, state.gens));
            }
        }
    }
    let gens = interreduce(ctx, state.gens);
    Ok(finish(ctx, gens))
}

/// All common zeros of the basis, by splitting on one variable at a time:
/// substitute 0 and 1, recompute the basis, and drop branches whose ideal
/// becomes the unit ideal.
pub fn solutions_from_basis(gb: &GroebnerBasis) -> Result<SolutionSet> {
    solutions_from_basis_with(
        gb,
        GroebnerConfig {
            order: gb.order,
            ..GroebnerConfig::default()
        },
    )
}

pub fn solutions_from_basis_with(
    gb: &GroebnerBasis,
    config: GroebnerConfig,
) -> Result<SolutionSet> {
    let n = gb.n_vars;
    if n > GROEBNER_MAX_VARS {
        return Err(Error::TooManyVariables {
            n,
            max: GROEBNER_MAX_VARS,
        });
    }
    let ctx = Ctx::new(n, config.order);
    let mut out = Vec::new();
    split(&ctx, gb.clone(), 0, 0, config.max_pairs, &mut out)?;
    Ok(SolutionSet::from_unsorted(out, true))
}

fn split(
    ctx: &Ctx,
    gb: GroebnerBasis,
    fixed: u64,
    values: u64,
    max_pairs: usize,
    out: &mut Vec<Assignment>,
) -> Result<()> {
    if gb.is_unit() {
        return Ok(());
    }
    let n = ctx.n;
    let support = gb
        .generators
        .iter()
        .flat_map(|g| g.masks())
        .fold(0, |a, m| a | m);
    if gb.generators.is_empty() || support == 0 {
        let free: Vec<usize> = (0..n).filter(|i| fixed & (1 << i) == 0).collect();
        for combo in 0..1u64 << free.len() {
            let mut x = values;
            for (b, &v) in free.iter().enumerate() {
                x |= ((combo >> b) & 1) << v;
            }
            out.push(Assignment::new(x, n));
        }
        return Ok(());
    }
    let var = support.trailing_zeros() as usize;
    for value in [false, true] {
        let substituted: Vec<AnfPoly> = gb
            .generators
            .iter()
            .map(|g| g.substitute(var, value))
            .collect();
        let next = buchberger_in(ctx, &substituted, max_pairs)?;
        split(
            ctx,
            next,
            fixed | (1 << var),
            values | (u64::from(value) << var),
            max_pairs,
            out,
        )?;
    }
    Ok(())
}
