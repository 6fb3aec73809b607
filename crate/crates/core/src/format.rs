//! Line-based text formats for key sets and equation systems.
//!
//! Key file:
//!
//! ```text
//! ntru-witt-keys v1
//! N <int>
//! q <int>
//! seed <int>
//! F <bitstring, index 0 first>
//! g <bitstring>
//! h <N space-separated residues>
//! ```
//!
//! System file (each polynomial asserts `= 0`; the `# keys` line is optional):
//!
//! ```text
//! ntru-witt-anf v1
//! vars <N>
//! eqs <count>
//! # keys N <N> q <q> seed <seed>
//! # bit <level> k <k>
//! <polynomial>
//! ...
//! ```

use std::fmt::Write as _;

use crate::anf::AnfPoly;
use crate::attack::{Equation, EquationSystem, Provenance};
use crate::error::{Error, Result};
use crate::ring::{f_from_secret, Gf2Poly, NtruKeySet, NtruParams, ZqPoly};

pub const KEY_MAGIC: &str = "ntru-witt-keys v1";
pub const ANF_MAGIC: &str = "ntru-witt-anf v1";

pub fn write_keys(keys: &NtruKeySet) -> String {
    let mut out = String::new();
    writeln!(out, "{KEY_MAGIC}").unwrap();
    writeln!(out, "N {}", keys.params.n()).unwrap();
    writeln!(out, "q {}", keys.params.q()).unwrap();
    writeln!(out, "seed {}", keys.seed).unwrap();
    writeln!(out, "F {}", keys.big_f.to_bitstring()).unwrap();
    writeln!(out, "g {}", keys.g.to_bitstring()).unwrap();
    let h: Vec<String> = keys.h.coeffs().iter().map(u32::to_string).collect();
    writeln!(out, "h {}", h.join(" ")).unwrap();
    out
}

/// Iterator over non-empty lines with 1-based line numbers.
struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    fn next_line(&mut self) -> Result<(usize, &'a str)> {
        for (i, line) in self.inner.by_ref() {
            self.last = i + 1;
            if !line.trim().is_empty() {
                return Ok((i + 1, line.trim_end()));
            }
        }
        Err(Error::parse(self.last + 1, "unexpected end of file"))
    }

    fn field(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (no, line) = self.next_line()?;
        match line.split_once(' ') {
            Some((k, v)) if k == key => Ok((no, v.trim())),
            _ => Err(Error::parse(no, format!("expected `{key} <value>`"))),
        }
    }

    fn rest(&mut self) -> Option<(usize, &'a str)> {
        self.next_line().ok()
    }
}

fn number<T: std::str::FromStr>(no: usize, s: &str, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::parse(no, format!("bad {what} `{s}`")))
}

pub fn parse_keys(text: &str) -> Result<NtruKeySet> {
    let mut lines = Lines::new(text);
    let (no, magic) = lines.next_line()?;
    if magic != KEY_MAGIC {
        return Err(Error::parse(no, format!("expected `{KEY_MAGIC}`")));
    }
    let (no, n) = lines.field("N")?;
    let n: usize = number(no, n, "N")?;
    let (no, q) = lines.field("q")?;
    let q: u32 = number(no, q, "q")?;
    let params = NtruParams::new(n, q).map_err(|e| Error::parse(no, e.to_string()))?;
    let (no, seed) = lines.field("seed")?;
    let seed: u64 = number(no, seed, "seed")?;

    let mut bitstring = |key: &str| -> Result<Gf2Poly> {
        let (no, s) = lines.field(key)?;
        match Gf2Poly::from_bitstring(s) {
            Some(p) if p.n() == n => Ok(p),
            _ => Err(Error::parse(
                no,
                format!("{key} must be a {n}-character bitstring"),
            )),
        }
    };
    let big_f = bitstring("F")?;
    let g = bitstring("g")?;

    let (no, h) = lines.field("h")?;
    let h: Vec<u32> = h
        .split_whitespace()
        .map(|c| number::<u32>(no, c, "coefficient"))
        .collect::<Result<_>>()?;
    if h.len() != n || h.iter().any(|&c| c >= q) {
        return Err(Error::parse(
            no,
            format!("h must have {n} residues in [0, {q})"),
        ));
    }
    if let Some((no, _)) = lines.rest() {
        return Err(Error::parse(no, "trailing content"));
    }
    let h = ZqPoly::from_coeffs(h.into_iter().map(i64::from), q);
    let f = f_from_secret(&params, &big_f);
    if f.mul(&h)? != ZqPoly::p_poly(n, q).mul(&ZqPoly::from_gf2(&g, q))? {
        return Err(Error::parse(no, "h does not satisfy f * h = (2 + X) g"));
    }
    Ok(NtruKeySet {
        params,
        big_f,
        g,
        f,
        h,
        seed,
    })
}

pub fn write_system(sys: &EquationSystem) -> String {
    let mut out = String::new();
    writeln!(out, "{ANF_MAGIC}").unwrap();
    writeln!(out, "vars {}", sys.n_vars).unwrap();
    writeln!(out, "eqs {}", sys.equations.len()).unwrap();
    if let Some(p) = &sys.provenance {
        writeln!(
            out,
            "# keys N {} q {} seed {}",
            p.params.n(),
            p.params.q(),
            p.seed
        )
        .unwrap();
    }
    for eq in &sys.equations {
        writeln!(out, "# bit {} k {}", eq.level, eq.k).unwrap();
        writeln!(out, "{}", eq.poly).unwrap();
    }
    out
}

fn parse_provenance(no: usize, rest: &str) -> Result<Provenance> {
    let parts: Vec<&str> = rest.split_whitespace().collect();
    match parts.as_slice() {
        ["N", n, "q", q, "seed", seed] => {
            let params = NtruParams::new(number(no, n, "N")?, number(no, q, "q")?)
                .map_err(|e| Error::parse(no, e.to_string()))?;
            Ok(Provenance {
                params,
                seed: number(no, seed, "seed")?,
            })
        }
        _ => Err(Error::parse(
            no,
            "expected `# keys N <n> q <q> seed <seed>`",
        )),
    }
}

pub fn parse_system(text: &str) -> Result<EquationSystem> {
    let mut lines = Lines::new(text);
    let (no, magic) = lines.next_line()?;
    if magic != ANF_MAGIC {
        return Err(Error::parse(no, format!("expected `{ANF_MAGIC}`")));
    }
    let (no, vars) = lines.field("vars")?;
    let n_vars: usize = number(no, vars, "variable count")?;
    if n_vars > 64 {
        return Err(Error::parse(no, "at most 64 variables are supported"));
    }
    let (no, eqs) = lines.field("eqs")?;
    let count: usize = number(no, eqs, "equation count")?;

    let mut provenance = None;
    let mut equations = Vec::with_capacity(count);
    let mut pending_tag: Option<(usize, u8, usize)> = None;
    while let Some((no, line)) = lines.rest() {
        if let Some(rest) = line.strip_prefix("# keys ") {
            if provenance.is_some() || !equations.is_empty() || pending_tag.is_some() {
                return Err(Error::parse(no, "`# keys` must precede the equations"));
            }
            provenance = Some(parse_provenance(no, rest)?);
            continue;
        }
        if let Some(rest) = line.strip_prefix("# bit ") {
            if pending_tag.is_some() {
                return Err(Error::parse(no, "tag without a polynomial"));
            }
            let parts: Vec<&str> = rest.split_whitespace().collect();
            let (level, k) = match parts.as_slice() {
                [level, "k", k] => (
                    number::<u8>(no, level, "bit level")?,
                    number::<usize>(no, k, "k")?,
                ),
                _ => return Err(Error::parse(no, "expected `# bit <level> k <k>`")),
            };
            pending_tag = Some((no, level, k));
            continue;
        }
        if line.starts_with('#') {
            return Err(Error::parse(no, "unknown comment line"));
        }
        let (_, level, k) = pending_tag
            .take()
            .ok_or_else(|| Error::parse(no, "polynomial without a `# bit` tag"))?;
        let poly: AnfPoly = line
            .parse()
            .map_err(|e: crate::anf::ParseAnfError| Error::parse(no, e.0))?;
        if poly.support_len() > n_vars {
            return Err(Error::parse(
                no,
                format!(
                    "polynomial uses variables beyond x{}",
                    n_vars.saturating_sub(1)
                ),
            ));
        }
        equations.push(Equation { level, k, poly });
    }
    if let Some((no, _, _)) = pending_tag {
        return Err(Error::parse(no, "tag without a polynomial"));
    }
    if equations.len() != count {
        return Err(Error::parse(
            lines.last,
            format!(
                "header declares {count} equations, found {}",
                equations.len()
            ),
        ));
    }
    Ok(EquationSystem {
        n_vars,
        equations,
        provenance,
    })
}
