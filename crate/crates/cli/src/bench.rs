use std::fs::OpenOptions;
use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};

use ntru_witt::attack::system_stats;
use ntru_witt::ring::keygen;
use ntru_witt::{generate_system, solve_exhaustive, NtruParams};

const HEADER: [&str; 13] = [
    "N",
    "q",
    "seed",
    "bits",
    "n_eqs",
    "max_degree",
    "max_terms_b1",
    "max_terms_b2",
    "max_terms_b3",
    "gen_ms",
    "solve_ms",
    "n_solutions",
    "recovered",
];

struct Record {
    n: usize,
    q: u32,
    seed: u64,
    bits: u8,
    n_eqs: usize,
    max_degree: u32,
    max_terms: [usize; 3],
    gen_ms: u128,
    solve_ms: u128,
    n_solutions: i64,
    recovered: bool,
}

impl Record {
    fn failed(n: usize, q: u32, seed: u64, bits: u8) -> Self {
        Record {
            n,
            q,
            seed,
            bits,
            n_eqs: 0,
            max_degree: 0,
            max_terms: [0; 3],
            gen_ms: 0,
            solve_ms: 0,
            n_solutions: -1,
            recovered: false,
        }
    }

    fn fields(&self) -> Vec<String> {
        let mut out = vec![
            self.n.to_string(),
            self.q.to_string(),
            self.seed.to_string(),
            self.bits.to_string(),
            self.n_eqs.to_string(),
            self.max_degree.to_string(),
        ];
        out.extend(self.max_terms.iter().map(usize::to_string));
        out.extend([
            self.gen_ms.to_string(),
            self.solve_ms.to_string(),
            self.n_solutions.to_string(),
            self.recovered.to_string(),
        ]);
        out
    }
}

fn trial(n: usize, q: u32, seed: u64, bits: u8) -> Result<Record> {
    let params = NtruParams::new(n, q)?;
    let keys = keygen(params, seed)?;
    let start = Instant::now();
    let sys = generate_system(&keys, bits)?;
    let gen_ms = start.elapsed().as_millis();
    let start = Instant::now();
    let solutions = solve_exhaustive(&sys, &params, &keys.h)?;
    let solve_ms = start.elapsed().as_millis();

    let mut rec = Record {
        n_eqs: sys.len(),
        gen_ms,
        solve_ms,
        n_solutions: solutions.len() as i64,
        recovered: crate::recovered(&keys, &solutions),
        ..Record::failed(n, q, seed, bits)
    };
    for s in system_stats(&sys) {
        rec.max_degree = rec.max_degree.max(s.max_degree);
        rec.max_terms[s.level as usize - 1] = s.max_terms;
    }
    Ok(rec)
}

pub fn run(n_list: &[usize], q: u32, trials: u64, bits: u8, csv: &Path, seed0: u64) -> Result<()> {
    let fresh = std::fs::metadata(csv).map_or(true, |m| m.len() == 0);
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(csv)
        .with_context(|| format!("cannot open {}", csv.display()))?;
    let mut writer = csv::Writer::from_writer(file);
    if fresh {
        writer.write_record(HEADER)?;
    }
    for &n in n_list {
        for t in 0..trials {
            let seed = seed0 + t;
            let rec = trial(n, q, seed, bits).unwrap_or_else(|e| {
                eprintln!("trial N={n} seed={seed} failed: {e:#}");
                Record::failed(n, q, seed, bits)
            });
            println!(
                "N={n} seed={seed}: {} equations, {} solutions, recovered {}",
                rec.n_eqs, rec.n_solutions, rec.recovered
            );
            writer.write_record(rec.fields())?;
            writer.flush()?;
        }
    }
    Ok(())
}
