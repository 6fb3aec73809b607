use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ntru_witt::attack::{
    build_symbolic_coeffs, closed_form_l2_l3, recover_g, CkForm, Join, L3Reading,
};
use ntru_witt::solve::solve_exhaustive_anf;
use ntru_witt::witt::{closed_form_sum, witt_sum_fold};
use ntru_witt::{
    buchberger, generate_system, keygen, solutions_from_basis, solve_exhaustive, AnfPoly,
    Assignment, BooleanRing, GroebnerConfig, NtruParams, TruthTable, WittVec,
};

type Suite = fn() -> Result<String, String>;

fn wv(r: u32) -> WittVec<bool> {
    WittVec::from_residue(r).expect("residue below 16")
}

fn witt_pairs() -> Result<String, String> {
    for a in 0..16 {
        for b in 0..16 {
            let (x, y) = (wv(a), wv(b));
            if x.add(&y).to_residue() != (a + b) % 16 || x.mul(&y).to_residue() != (a * b) % 16 {
                return Err(format!("pair ({a}, {b})"));
            }
        }
    }
    Ok("256/256 pairs".into())
}

fn distributivity() -> Result<String, String> {
    for a in 0..16 {
        for b in 0..16 {
            for c in 0..16 {
                let (x, y, z) = (wv(a), wv(b), wv(c));
                if x.mul(&y.add(&z)) != x.mul(&y).add(&x.mul(&z)) {
                    return Err(format!("triple ({a}, {b}, {c})"));
                }
            }
        }
    }
    Ok("4096/4096 triples".into())
}

fn multi_term_sums() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5000 {
        let s = rng.gen_range(0..=12);
        let tuple: Vec<u32> = (0..s).map(|_| rng.gen_range(0..16)).collect();
        let terms: Vec<_> = tuple.iter().map(|&r| wv(r)).collect();
        let fold = witt_sum_fold(&terms);
        if fold.to_residue() != tuple.iter().sum::<u32>() % 16 {
            return Err(format!("fold of {tuple:?}"));
        }
        if closed_form_sum(&terms) != fold {
            return Err(format!("closed form of {tuple:?}"));
        }
    }
    Ok("5000 random sums, fold and closed form".into())
}

fn closed_forms() -> Result<String, String> {
    let expected = L3Reading {
        c_k: CkForm::ProductBit2,
        bdc: Join::Product,
        tail: Join::Sum,
    };
    let keys = keygen(NtruParams::new(7, 128).unwrap(), 1).map_err(|e| e.to_string())?;
    let coeffs = build_symbolic_coeffs::<TruthTable>(&keys).map_err(|e| e.to_string())?;
    for k in 0..7 {
        let report = closed_form_l2_l3(&coeffs, k);
        if report.l2_counterexample.is_some() {
            return Err(format!("L2 differs at k = {k}"));
        }
        if !report.matching_readings().any(|r| r == expected) {
            return Err(format!("L3 differs at k = {k}"));
        }
    }
    Ok("L2 and L3 expansions match the fold at N=7".into())
}

fn truth_tables() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let n = 9;
    for _ in 0..200 {
        let mut poly = || AnfPoly::from_masks((0..20).map(|_| rng.gen::<u64>() & ((1 << n) - 1)));
        let (a, b) = (poly(), poly());
        let (ta, tb) = (TruthTable::from_anf(n, &a), TruthTable::from_anf(n, &b));
        if ta.to_anf() != a {
            return Err(format!("round trip of {a}"));
        }
        if ta.add(&tb).to_anf() != a.anf_add(&b) || ta.mul(&tb).to_anf() != a.anf_mul(&b) {
            return Err(format!("ring ops on {a} and {b}"));
        }
        let x = rng.gen::<u64>() & ((1 << n) - 1);
        if ta.eval_bits(x) != a.eval(&Assignment::new(x, n)).unwrap() {
            return Err(format!("evaluation of {a}"));
        }
    }
    Ok("200 random pairs over 9 variables".into())
}

fn end_to_end() -> Result<String, String> {
    let keys = keygen(NtruParams::new(7, 128).unwrap(), 1).map_err(|e| e.to_string())?;
    let truth = Assignment::new(keys.big_f.as_mask(), 7);
    let sys = generate_system(&keys, 4).map_err(|e| e.to_string())?;
    let numeric = solve_exhaustive(&sys, &keys.params, &keys.h).map_err(|e| e.to_string())?;
    let anf = solve_exhaustive_anf(&sys).map_err(|e| e.to_string())?;
    let gb = buchberger(&sys, GroebnerConfig::default()).map_err(|e| e.to_string())?;
    let groebner = solutions_from_basis(&gb).map_err(|e| e.to_string())?;
    if numeric != anf || numeric != groebner {
        return Err("backends disagree".into());
    }
    if !numeric.contains(&truth) {
        return Err("true F not among the solutions".into());
    }
    let g = recover_g(&keys.params, &keys.h, &truth).map_err(|e| e.to_string())?;
    if g != keys.g {
        return Err("g not recovered".into());
    }
    Ok(format!(
        "{} solution(s), F and g recovered by all backends",
        numeric.len()
    ))
}

pub fn run() -> bool {
    let suites: [(&str, Suite); 6] = [
        ("witt pairs", witt_pairs),
        ("witt distributivity", distributivity),
        ("multi-term sums", multi_term_sums),
        ("closed forms", closed_forms),
        ("truth tables", truth_tables),
        ("end-to-end N=7", end_to_end),
    ];
    let mut ok = true;
    for (name, suite) in suites {
        match suite() {
            Ok(detail) => println!("ok     {name}: {detail}"),
            Err(detail) => {
                ok = false;
                println!("FAILED {name}: {detail}");
            }
        }
    }
    ok
}
