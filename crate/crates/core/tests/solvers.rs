use ntru_witt::solve::{export_cnf, solve_exhaustive_anf};
use ntru_witt::{
    buchberger, generate_system, keygen, solutions_from_basis, solve_exhaustive, AnfPoly, Equation,
    EquationSystem, GroebnerConfig, MonomialOrder, NtruParams,
};

fn system(n_vars: usize, polys: &[&str]) -> EquationSystem {
    EquationSystem {
        n_vars,
        equations: polys
            .iter()
            .enumerate()
            .map(|(k, p)| Equation {
                level: 1,
                k,
                poly: p.parse().unwrap(),
            })
            .collect(),
        provenance: None,
    }
}

#[test]
fn backends_agree_on_attack_systems() {
    for (n, seeds) in [(7usize, 1..=6u64), (11, 1..=4), (13, 1..=2)] {
        let params = NtruParams::new(n, 128).unwrap();
        for seed in seeds {
            let keys = keygen(params, seed).unwrap();
            let full = generate_system(&keys, 4).unwrap();
            for bits in 2..=4 {
                let sys = full.truncated(bits);
                let numeric = solve_exhaustive(&sys, &params, &keys.h).unwrap();
                let anf = solve_exhaustive_anf(&sys).unwrap();
                assert_eq!(numeric, anf, "N={n} seed={seed} bits={bits}");
                let gb = buchberger(&sys, GroebnerConfig::default()).unwrap();
                assert_eq!(
                    solutions_from_basis(&gb).unwrap(),
                    numeric,
                    "N={n} seed={seed} bits={bits}"
                );
            }
        }
    }
}

#[test]
fn lex_and_degrevlex_give_the_same_solutions() {
    let keys = keygen(NtruParams::new(11, 128).unwrap(), 9).unwrap();
    let sys = generate_system(&keys, 3).unwrap();
    let lex = GroebnerConfig {
        order: MonomialOrder::Lex,
        ..GroebnerConfig::default()
    };
    let a = solutions_from_basis(&buchberger(&sys, GroebnerConfig::default()).unwrap()).unwrap();
    let b = solutions_from_basis(&buchberger(&sys, lex).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn basis_generates_the_vanishing_ideal() {
    let keys = keygen(NtruParams::new(11, 128).unwrap(), 3).unwrap();
    for bits in [2u8, 4] {
        let sys = generate_system(&keys, bits).unwrap();
        let gb = buchberger(&sys, GroebnerConfig::default()).unwrap();
        let sols = solutions_from_basis(&gb).unwrap();
        for g in &gb.generators {
            for x in &sols.solutions {
                assert!(!g.eval(x).unwrap(), "generator {g} does not vanish");
            }
        }
        for eq in &sys.equations {
            assert!(
                gb.reduce(&eq.poly).is_zero(),
                "input does not reduce to zero"
            );
        }
        // x_i is constant on the solution set iff x_i + c lies in the ideal.
        for i in 0..11 {
            let values: Vec<bool> = sols.solutions.iter().map(|x| x.get(i)).collect();
            let constant = values.windows(2).all(|w| w[0] == w[1]);
            let lin = AnfPoly::var(i).anf_add(&if values[0] {
                AnfPoly::one()
            } else {
                AnfPoly::zero()
            });
            assert_eq!(gb.reduce(&lin).is_zero(), constant, "x{i}");
        }
    }
}

#[test]
fn small_hand_systems() {
    let cases: [(usize, &[&str], &[u64]); 4] = [
        (3, &["x0 + x1", "x1*x2 + 1"], &[0b111]),
        (3, &["x0*x1*x2"], &[0, 1, 2, 3, 4, 5, 6]),
        (2, &["x0", "x0 + 1"], &[]),
        (
            4,
            &["x0*x1 + x2", "x2 + x3"],
            &[0b0000, 0b0001, 0b0010, 0b1111],
        ),
    ];
    for (n, polys, expected) in cases {
        let sys = system(n, polys);
        let anf = solve_exhaustive_anf(&sys).unwrap();
        let got: Vec<u64> = anf.solutions.iter().map(|x| x.bits()).collect();
        assert_eq!(got, expected, "{polys:?}");
        let gb = buchberger(&sys, GroebnerConfig::default()).unwrap();
        assert_eq!(solutions_from_basis(&gb).unwrap(), anf, "{polys:?}");
        assert_eq!(gb.is_unit(), expected.is_empty());
    }
}

#[test]
fn cnf_header_counts() {
    let sys = system(3, &["x0*x1 + x0*x1*x2 + 1", "x2"]);
    let mut buf = Vec::new();
    export_cnf(&sys, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    // two aux monomials: 3 + 4 AND clauses, then 2 XOR lines
    assert!(text.contains("p cnf 5 9\n"), "{text}");
    assert!(text.contains("c var 4 = x0*x1\n"));
    assert!(text.contains("c var 5 = x0*x1*x2\n"));
    assert!(text.ends_with("x 4 5 0\nx -3 0\n"));
}

struct Dimacs {
    vars: usize,
    /// `(is_xor, literals)`
    clauses: Vec<(bool, Vec<i64>)>,
}

fn parse_dimacs(text: &str) -> Dimacs {
    let mut vars = 0;
    let mut clauses = Vec::new();
    for line in text.lines() {
        if line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p cnf ") {
            vars = rest.split_whitespace().next().unwrap().parse().unwrap();
            continue;
        }
        let (xor, body) = line.strip_prefix("x ").map_or((false, line), |b| (true, b));
        let lits = body
            .split_whitespace()
            .map(|t| t.parse::<i64>().unwrap())
            .take_while(|&l| l != 0)
            .collect();
        clauses.push((xor, lits));
    }
    Dimacs { vars, clauses }
}

fn satisfied(d: &Dimacs, value: &[bool]) -> bool {
    let lit = |l: i64| value[l.unsigned_abs() as usize - 1] == (l > 0);
    d.clauses.iter().all(|(xor, lits)| {
        if *xor {
            lits.iter().fold(false, |acc, &l| acc ^ lit(l))
        } else {
            lits.iter().any(|&l| lit(l))
        }
    })
}

#[test]
fn cnf_projects_onto_attack_solutions() {
    let params = NtruParams::new(7, 128).unwrap();
    for seed in 1..=3u64 {
        let keys = keygen(params, seed).unwrap();
        for bits in 2..=3u8 {
            let sys = generate_system(&keys, bits).unwrap();
            let cnf = ntru_witt::solve::to_cnf_string(&sys);
            let d = parse_dimacs(&cnf);
            // aux variable -> monomial mask, from the header
            let aux: Vec<u64> = cnf
                .lines()
                .filter_map(|l| l.strip_prefix("c var "))
                .skip(7)
                .map(|l| {
                    let m: AnfPoly = l.split(" = ").nth(1).unwrap().parse().unwrap();
                    m.masks()[0]
                })
                .collect();
            assert_eq!(d.vars, 7 + aux.len());
            let expected = solve_exhaustive(&sys, &params, &keys.h).unwrap();
            let mut projected = Vec::new();
            for x in 0..1u64 << 7 {
                let mut value: Vec<bool> = (0..7).map(|i| (x >> i) & 1 == 1).collect();
                value.extend(aux.iter().map(|&m| m & !x == 0));
                if satisfied(&d, &value) {
                    projected.push(x);
                }
                // any other aux value breaks an AND definition
                for j in 7..d.vars {
                    value[j] = !value[j];
                    assert!(!satisfied(&d, &value));
                    value[j] = !value[j];
                }
            }
            let want: Vec<u64> = expected.solutions.iter().map(|a| a.bits()).collect();
            assert_eq!(projected, want, "seed={seed} bits={bits}");
        }
    }
}
