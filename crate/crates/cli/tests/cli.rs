use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn witt(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_witt"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("run witt")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn keygen(dir: &Path, n: &str, seed: &str, out: &str) {
    let res = witt(
        &[
            "keygen", "--n", n, "--q", "128", "--seed", seed, "--out", out,
        ],
        dir,
    );
    assert!(res.status.success(), "{res:?}");
}

#[test]
fn keygen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    keygen(dir.path(), "23", "1", "a.keys");
    keygen(dir.path(), "23", "1", "b.keys");
    keygen(dir.path(), "23", "2", "c.keys");
    let a = fs::read(dir.path().join("a.keys")).unwrap();
    assert_eq!(a, fs::read(dir.path().join("b.keys")).unwrap());
    assert_ne!(a, fs::read(dir.path().join("c.keys")).unwrap());
    assert!(String::from_utf8(a)
        .unwrap()
        .starts_with("ntru-witt-keys v1\nN 23\nq 128\nseed 1\n"));
}

#[test]
fn keygen_rejects_bad_params() {
    let dir = TempDir::new().unwrap();
    for (n, q) in [("24", "128"), ("7", "100"), ("7", "8")] {
        let res = witt(&["keygen", "--n", n, "--q", q, "--out", "k"], dir.path());
        assert_eq!(res.status.code(), Some(2), "N={n} q={q}");
        assert!(!dir.path().join("k").exists());
    }
}

#[test]
fn attack_equation_counts() {
    let dir = TempDir::new().unwrap();
    keygen(dir.path(), "17", "1", "k");
    for (bits, count) in [("2", 17), ("3", 34), ("4", 51)] {
        let res = witt(
            &["attack", "--keys", "k", "--bits", bits, "--out", "s"],
            dir.path(),
        );
        assert!(res.status.success());
        let text = fs::read_to_string(dir.path().join("s")).unwrap();
        assert!(text.starts_with(&format!("ntru-witt-anf v1\nvars 17\neqs {count}\n")));
        assert!(stdout(&res).contains("level 1: 17 equations"));
    }
}

#[test]
fn attack_reports_corrupt_key_file_line() {
    let dir = TempDir::new().unwrap();
    keygen(dir.path(), "7", "1", "k");
    let text = fs::read_to_string(dir.path().join("k")).unwrap();
    fs::write(dir.path().join("k"), text.replace("seed 1", "seed one")).unwrap();
    let res = witt(
        &["attack", "--keys", "k", "--bits", "3", "--out", "s"],
        dir.path(),
    );
    assert_eq!(res.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&res.stderr).contains("line 4"));
}

#[test]
fn solve_recovers_key_with_both_backends() {
    let dir = TempDir::new().unwrap();
    keygen(dir.path(), "11", "5", "k");
    assert!(witt(
        &["attack", "--keys", "k", "--bits", "4", "--out", "s"],
        dir.path()
    )
    .status
    .success());
    let f = fs::read_to_string(dir.path().join("k")).unwrap();
    let f = f
        .lines()
        .find_map(|l| l.strip_prefix("F "))
        .unwrap()
        .to_string();
    for backend in ["exhaustive", "groebner"] {
        let res = witt(
            &[
                "solve",
                "--system",
                "s",
                "--backend",
                backend,
                "--keys",
                "k",
            ],
            dir.path(),
        );
        assert!(res.status.success(), "{backend}");
        let out = stdout(&res);
        assert!(out.contains("solutions 1\n"), "{out}");
        assert!(out.contains(&format!("F {f}\n")));
        assert!(out.contains("recovered true"));
    }
}

#[test]
fn empty_system_lists_everything_capped() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("e"), "ntru-witt-anf v1\nvars 6\neqs 0\n").unwrap();
    let res = witt(&["solve", "--system", "e", "--max-print", "4"], dir.path());
    assert!(res.status.success());
    let out = stdout(&res);
    assert!(out.contains("solutions 64"));
    assert_eq!(out.lines().filter(|l| l.starts_with("F ")).count(), 4);
    assert!(String::from_utf8_lossy(&res.stderr).contains("warning"));
}

#[test]
fn inconsistent_system_exits_nonzero() {
    let dir = TempDir::new().unwrap();
    fs::write(
        dir.path().join("u"),
        "ntru-witt-anf v1\nvars 2\neqs 2\n# bit 1 k 0\nx0\n# bit 1 k 1\n1 + x0\n",
    )
    .unwrap();
    for backend in ["exhaustive", "groebner"] {
        let res = witt(
            &["solve", "--system", "u", "--backend", backend],
            dir.path(),
        );
        assert_eq!(res.status.code(), Some(1), "{backend}");
        assert!(stdout(&res).contains("solutions 0"));
    }
}

#[test]
fn groebner_budget_is_a_diagnostic() {
    let dir = TempDir::new().unwrap();
    keygen(dir.path(), "29", "1", "k");
    assert!(witt(
        &["attack", "--keys", "k", "--bits", "2", "--out", "s"],
        dir.path()
    )
    .status
    .success());
    let res = witt(
        &["solve", "--system", "s", "--backend", "groebner"],
        dir.path(),
    );
    assert_eq!(res.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&res.stderr).starts_with("error: "));
}

#[test]
fn bench_appends_rows() {
    let dir = TempDir::new().unwrap();
    let args = [
        "bench", "--n-list", "7,11", "--trials", "3", "--bits", "3", "--csv", "b.csv",
    ];
    assert!(witt(&args, dir.path()).status.success());
    assert!(witt(
        &["bench", "--n-list", "4", "--trials", "1", "--bits", "3", "--csv", "b.csv"],
        dir.path()
    )
    .status
    .success());
    let text = fs::read_to_string(dir.path().join("b.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "N,q,seed,bits,n_eqs,max_degree,max_terms_b1,max_terms_b2,max_terms_b3,gen_ms,solve_ms,n_solutions,recovered"
    );
    assert_eq!(lines.len(), 8);
    for row in &lines[1..7] {
        assert!(row.ends_with(",1,true"), "{row}");
    }
    assert!(lines[1].starts_with("7,128,1,3,14,"));
    assert!(lines[6].starts_with("11,128,3,3,22,"));
    assert!(lines[7].starts_with("4,128,1,3,") && lines[7].ends_with(",-1,false"));
}

#[test]
fn selftest_passes() {
    let dir = TempDir::new().unwrap();
    let res = witt(&["selftest"], dir.path());
    assert!(res.status.success(), "{}", stdout(&res));
    assert!(!stdout(&res).contains("FAILED"));
}

#[test]
fn cnf_export_of_small_system() {
    let dir = TempDir::new().unwrap();
    fs::write(
        dir.path().join("s"),
        "ntru-witt-anf v1\nvars 2\neqs 1\n# bit 1 k 0\n1 + x0*x1\n",
    )
    .unwrap();
    assert!(
        witt(&["export-cnf", "--system", "s", "--out", "c"], dir.path())
            .status
            .success()
    );
    let cnf = fs::read_to_string(dir.path().join("c")).unwrap();
    assert!(cnf.contains("p cnf 3 4\n"));
    assert!(cnf.ends_with("x 3 0\n"));
}
