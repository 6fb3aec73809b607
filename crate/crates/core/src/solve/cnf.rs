//! Extended DIMACS export.
//!
//! Variable `i + 1` is `x_i`; every distinct monomial of degree >= 2 gets an
//! auxiliary variable tied to its factors by AND clauses; every equation
//! becomes one XOR clause (`x` line) over the monomial variables. An XOR
//! clause asserts that the XOR of its literals is true.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use crate::anf::Monomial;
use crate::attack::EquationSystem;
use crate::error::Result;

pub fn to_cnf_string(sys: &EquationSystem) -> String {
    let n = sys.n_vars;
    let mut aux: BTreeMap<u64, usize> = BTreeMap::new();
    for eq in &sys.equations {
        for &m in eq.poly.masks() {
            if m.count_ones() >= 2 {
                aux.insert(m, 0);
            }
        }
    }
    for (idx, v) in aux.values_mut().enumerate() {
        *v = n + 1 + idx;
    }
    let var_of = |m: u64| -> usize {
        if m.count_ones() == 1 {
            m.trailing_zeros() as usize + 1
        } else {
            aux[&m]
        }
    };

    let mut clauses = String::new();
    let mut count = 0usize;
    for (&m, &a) in &aux {
        let mut long = format!("{a}");
        for v in Monomial(m).vars() {
            writeln!(clauses, "-{a} {} 0", v + 1).unwrap();
            write!(long, " -{}", v + 1).unwrap();
            count += 1;
        }
        writeln!(clauses, "{long} 0").unwrap();
        count += 1;
    }
    for eq in &sys.equations {
        if eq.poly.is_zero() {
            continue;
        }
        let lits: Vec<usize> = eq
            .poly
            .masks()
            .iter()
            .filter(|&&m| m != 0)
            .map(|&m| var_of(m))
            .collect();
        count += 1;
        if lits.is_empty() {
            // 1 = 0
            clauses.push_str("0\n");
            continue;
        }
        clauses.push('x');
        for (i, v) in lits.iter().enumerate() {
            // Without a constant term the XOR must be false: negate one literal.
            if i == 0 && !eq.poly.has_constant() {
                write!(clauses, " -{v}").unwrap();
            } else {
                write!(clauses, " {v}").unwrap();
            }
        }
        clauses.push_str(" 0\n");
    }

    let mut out = String::new();
    out.push_str("c ntru-witt cnf v1\n");
    writeln!(out, "c vars {n} eqs {}", sys.equations.len()).unwrap();
    for i in 0..n {
        writeln!(out, "c var {} = x{i}", i + 1).unwrap();
    }
    for (&m, &a) in &aux {
        writeln!(out, "c var {a} = {}", Monomial(m)).unwrap();
    }
    writeln!(out, "p cnf {} {count}", n + aux.len()).unwrap();
    out.push_str(&clauses);
    out
}

pub fn export_cnf<W: Write>(sys: &EquationSystem, mut out: W) -> Result<()> {
    out.write_all(to_cnf_string(sys).as_bytes())?;
    Ok(())
}
