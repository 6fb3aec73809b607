//! Expanded expressions for `L_{k,2}` and `L_{k,3}` in terms of the
//! products `f_i h_{i*}`, evaluated as an independent check on the fold.
//!
//! The expanded `L_{k,3}` has three places where the written form admits
//! more than one reading; every combination is evaluated and compared with
//! the fold, and the outcome is reported per reading.

use crate::anf::{AnfPoly, Assignment, Monomial};
use crate::witt::{elementary_symmetric, from_bit};

use super::{compute_l, SymbolicKeyCoeffs, SymbolicRing};

/// Auxiliary sums of the expanded `L_{k,3}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bit3Aux {
    /// `sum_{i<j} (f_i0 h_i*1 + f_i1 h_i*0)(f_j0 h_j*1 + f_j1 h_j*0)`
    pub a: AnfPoly,
    /// `sum_{i<j} f_i0 h_i*0 f_j0 h_j*0`
    pub b: AnfPoly,
    /// `sum_i (f_i0 h_i*0 f_i1 h_i*1 + f_i0 h_i*1 + f_i1 h_i*0 + f_i1 h_i*1)`,
    /// exactly as written.
    pub c: AnfPoly,
    /// `sum_i (f_i0 h_i*1 + f_i1 h_i*0)`
    pub d: AnfPoly,
}

/// Which form of `C_k` enters the expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CkForm {
    /// `C_k` as written, with `f_i0 h_i*1 + f_i1 h_i*0` in the middle.
    AsWritten,
    /// `C_k = sum_i (f_i0 h_i*0 f_i1 h_i*1 + f_i0 h_i*2 + f_i1 h_i*1 + f_i2 h_i*0)`,
    /// the bit-2 component of the products.
    ProductBit2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Join {
    Product,
    Sum,
}

/// One reading of the expanded `L_{k,3}`:
///
/// ```text
///   sum_i P3_i + sum_{i<j} P2_i P2_j + C_k A_k + (B_k D_k) <bdc> C_k
///   + B_k e3(D) + (C_k + A_k) e4(B) + e4(D) + D_k e6(B) <tail> e8(B)
/// ```
///
/// where `e_t(B)`, `e_t(D)` are elementary symmetric sums of the bit-0 and
/// bit-1 product slices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct L3Reading {
    pub c_k: CkForm,
    pub bdc: Join,
    pub tail: Join,
}

impl L3Reading {
    pub fn all() -> Vec<L3Reading> {
        let mut out = Vec::with_capacity(8);
        for c_k in [CkForm::AsWritten, CkForm::ProductBit2] {
            for bdc in [Join::Product, Join::Sum] {
                for tail in [Join::Product, Join::Sum] {
                    out.push(L3Reading { c_k, bdc, tail });
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct L3ReadingOutcome {
    pub reading: L3Reading,
    pub l3: AnfPoly,
    /// `None` when the reading equals the fold's `L_{k,3}`.
    pub counterexample: Option<Assignment>,
}

#[derive(Clone, Debug)]
pub struct ClosedFormReport {
    pub k: usize,
    pub l2: AnfPoly,
    /// `None` when the expanded `L_{k,2}` equals the fold's.
    pub l2_counterexample: Option<Assignment>,
    pub aux: Bit3Aux,
    pub readings: Vec<L3ReadingOutcome>,
}

impl ClosedFormReport {
    pub fn matching_readings(&self) -> impl Iterator<Item = L3Reading> + '_ {
        self.readings
            .iter()
            .filter(|r| r.counterexample.is_none())
            .map(|r| r.reading)
    }
}

/// Lowest-weight assignment where `a` and `b` differ. The minimal-degree
/// monomial of `a + b` has no other monomial of the difference below it, so
/// setting exactly its variables evaluates the difference to 1.
fn minimal_counterexample(a: &AnfPoly, b: &AnfPoly, n: usize) -> Option<Assignment> {
    let diff = a.anf_add(b);
    diff.monomials()
        .min_by_key(|m| (m.degree(), m.0))
        .map(|m: Monomial| Assignment::new(m.0, n))
}

pub fn closed_form_l2_l3<R: SymbolicRing>(
    coeffs: &SymbolicKeyCoeffs<R>,
    k: usize,
) -> ClosedFormReport {
    let n = coeffs.n();
    let mut t0 = Vec::with_capacity(n);
    let mut t1 = Vec::with_capacity(n);
    let mut t2 = Vec::with_capacity(n);
    let mut t3 = Vec::with_capacity(n);
    let mut c_written = R::zero();
    for i in 0..n {
        let j = (k + n - i) % n;
        let [f0, f1, f2, _] = &coeffs.f_witt[i].0;
        let hb = &coeffs.h_witt[j].0;
        let [h0, h1, h2, h3]: [R; 4] = std::array::from_fn(|b| from_bit(hb[b]));

        let f0h0 = f0.mul(&h0);
        let f1h1 = f1.mul(&h1);
        let f0h1 = f0.mul(&h1);
        let f1h0 = f1.mul(&h0);
        let f0h2 = f0.mul(&h2);
        let f2h0 = f2.mul(&h0);
        let cross = f0h0.mul(&f1h1);

        t0.push(f0h0.clone());
        t1.push(f0h1.add(&f1h0));
        t2.push(cross.add(&f0h2).add(&f1h1).add(&f2h0));
        // f_i0 h_i*0 (f_i1 h_i*1 f_i2 + f_i1 h_i*1 h_i*2 + f_i1 h_i*1 + f_i2 h_i*2)
        //   + f_i1 h_i*1 (f_i0 h_i*2 + f_i2 h_i*0) + f_i0 h_i*3 + f_i1 h_i*2 + f_i2 h_i*1
        let inner = f1h1
            .mul(f2)
            .add(&f1h1.mul(&h2))
            .add(&f1h1)
            .add(&f2.mul(&h2));
        t3.push(
            f0h0.mul(&inner)
                .add(&f1h1.mul(&f0h2.add(&f2h0)))
                .add(&f0.mul(&h3))
                .add(&f1.mul(&h2))
                .add(&f2.mul(&h1)),
        );
        c_written = c_written.add(&cross.add(&f0h1).add(&f1h0).add(&f1h1));
    }

    let e0 = elementary_symmetric(t0.iter(), 8);
    let e1 = elementary_symmetric(t1.iter(), 4);
    let e2 = elementary_symmetric(t2.iter(), 2);
    let e3 = elementary_symmetric(t3.iter(), 1);

    let l2 = e1[1].mul(&e0[2]).add(&e1[2]).add(&e2[1]).add(&e0[4]);

    let a_k = e1[2].clone();
    let b_k = e0[2].clone();
    let d_k = e1[1].clone();

    let fold = compute_l(coeffs, k);
    let fold_l2 = fold.0[2].to_anf();
    let fold_l3 = fold.0[3].to_anf();
    let l2_anf = l2.to_anf();

    let readings = L3Reading::all()
        .into_iter()
        .map(|reading| {
            let c_k = match reading.c_k {
                CkForm::AsWritten => c_written.clone(),
                CkForm::ProductBit2 => e2[1].clone(),
            };
            let bd = b_k.mul(&d_k);
            let bdc = match reading.bdc {
                Join::Product => bd.mul(&c_k),
                Join::Sum => bd.add(&c_k),
            };
            let sextic = d_k.mul(&e0[6]);
            let tail = match reading.tail {
                Join::Product => sextic.mul(&e0[8]),
                Join::Sum => sextic.add(&e0[8]),
            };
            let l3 = e3[1]
                .add(&e2[2])
                .add(&c_k.mul(&a_k))
                .add(&bdc)
                .add(&b_k.mul(&e1[3]))
                .add(&c_k.add(&a_k).mul(&e0[4]))
                .add(&e1[4])
                .add(&tail)
                .to_anf();
            let counterexample = minimal_counterexample(&l3, &fold_l3, n);
            L3ReadingOutcome {
                reading,
                l3,
                counterexample,
            }
        })
        .collect();

    ClosedFormReport {
        k,
        l2_counterexample: minimal_counterexample(&l2_anf, &fold_l2, n),
        l2: l2_anf,
        aux: Bit3Aux {
            a: a_k.to_anf(),
            b: b_k.to_anf(),
            c: c_written.to_anf(),
            d: d_k.to_anf(),
        },
        readings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{keygen, NtruParams, ZqPoly};
    use crate::truth_table::TruthTable;

    #[test]
    fn l2_matches_fold_and_one_reading_survives() {
        for (n, seed) in [(7usize, 1u64), (11, 2), (13, 3)] {
            let p = NtruParams::new(n, 128).unwrap();
            let keys = keygen(p, seed).unwrap();
            let coeffs = SymbolicKeyCoeffs::<TruthTable>::from_public(&p, &keys.h).unwrap();
            for k in 0..n {
                let report = closed_form_l2_l3(&coeffs, k);
                assert_eq!(report.l2_counterexample, None);
                let ok: Vec<_> = report.matching_readings().collect();
                assert!(ok.contains(&L3Reading {
                    c_k: CkForm::ProductBit2,
                    bdc: Join::Product,
                    tail: Join::Sum,
                }));
            }
        }
    }

    #[test]
    fn only_one_reading_survives() {
        // at N = 7 and 11 the e8 tail often vanishes and product/sum coincide
        let p = NtruParams::new(13, 128).unwrap();
        for seed in 1..=3 {
            let keys = keygen(p, seed).unwrap();
            let coeffs = SymbolicKeyCoeffs::<TruthTable>::from_public(&p, &keys.h).unwrap();
            for k in [0, 5, 10] {
                let ok: Vec<_> = closed_form_l2_l3(&coeffs, k).matching_readings().collect();
                assert_eq!(
                    ok,
                    [L3Reading {
                        c_k: CkForm::ProductBit2,
                        bdc: Join::Product,
                        tail: Join::Sum,
                    }]
                );
            }
        }
    }

    #[test]
    fn counterexamples_are_real() {
        let p = NtruParams::new(11, 128).unwrap();
        let keys = keygen(p, 8).unwrap();
        let coeffs = SymbolicKeyCoeffs::<TruthTable>::from_public(&p, &keys.h).unwrap();
        let report = closed_form_l2_l3(&coeffs, 0);
        let fold = compute_l(&coeffs, 0).0[3].to_anf();
        for outcome in &report.readings {
            if let Some(x) = outcome.counterexample {
                assert_ne!(outcome.l3.eval(&x).unwrap(), fold.eval(&x).unwrap());
            }
        }
    }

    #[test]
    fn unit_f_reads_h_bits() {
        let p = NtruParams::new(7, 128).unwrap();
        let h = ZqPoly::from_coeffs([13i64, 4, 8, 0, 12, 1, 2], 128);
        let coeffs = SymbolicKeyCoeffs::<AnfPoly>::from_public(&p, &h).unwrap();
        let zero = Assignment::new(0, 7);
        for k in 0..7 {
            let report = closed_form_l2_l3(&coeffs, k);
            let fold = compute_l(&coeffs, k);
            let hk = h.coeffs()[k];
            assert_eq!(report.l2.eval(&zero).unwrap(), (hk >> 2) & 1 == 1);
            assert_eq!(fold.0[2].eval(&zero).unwrap(), (hk >> 2) & 1 == 1);
            assert_eq!(fold.0[3].eval(&zero).unwrap(), (hk >> 3) & 1 == 1);
        }
    }

    #[test]
    fn aux_degree_bounds() {
        let p = NtruParams::new(13, 128).unwrap();
        let keys = keygen(p, 4).unwrap();
        let coeffs = SymbolicKeyCoeffs::<TruthTable>::from_public(&p, &keys.h).unwrap();
        for k in 0..13 {
            let aux = closed_form_l2_l3(&coeffs, k).aux;
            assert!(aux.b.degree() <= 2 && aux.d.degree() <= 2);
            assert!(aux.a.degree() <= 4 && aux.c.degree() <= 4);
        }
    }
}
