//! The external backend, driven by a brute-force DIMACS solver script.

use std::fs;
use std::os::unix::fs::PermissionsExt;
use std::path::PathBuf;

use improv_sat::{
    dimacs::parse_dimacs, dimacs::to_dimacs_string, enumerate_projected_models, solve, to_cnf,
    CnfFormula, ExternalSolver, Formula, SolveOutcome, SolverError, Var,
};

const BRUTE_FORCE: &str = r#"#!/usr/bin/env python3
import itertools, sys
nv, clauses, cur = 0, [], []
for line in open(sys.argv[-1]):
    t = line.split()
    if not t or t[0] == 'c':
        continue
    if t[0] == 'p':
        nv = int(t[2]); continue
    for x in map(int, t):
        if x == 0:
            clauses.append(cur); cur = []
        else:
            cur.append(x)
for bits in itertools.product([False, True], repeat=nv):
    if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in clauses):
        print("s SATISFIABLE")
        print("v " + " ".join(str(i + 1 if b else -(i + 1)) for i, b in enumerate(bits)) + " 0")
        sys.exit(10)
print("s UNSATISFIABLE")
sys.exit(20)
"#;

const LYING: &str = "#!/bin/sh\necho 's UNSATISFIABLE'\n";
const WRONG_MODEL: &str = "#!/bin/sh\necho 's SATISFIABLE'\necho 'v -1 -2 0'\n";
const UNKNOWN: &str = "#!/bin/sh\necho 's UNKNOWN'\n";

fn script(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    fs::set_permissions(&path, fs::Permissions::from_mode(0o755)).unwrap();
    path
}

fn x_or_y() -> CnfFormula {
    let mut cnf = CnfFormula::new(2);
    cnf.add_clause([Var::new(1).pos(), Var::new(2).pos()]);
    cnf
}

#[test]
fn brute_force_script_answers() {
    let dir = tempfile::tempdir().unwrap();
    let mut ext = ExternalSolver::new(script(&dir, "bf.py", BRUTE_FORCE));
    match solve(&mut ext, &x_or_y()).unwrap() {
        SolveOutcome::Sat(m) => assert!(x_or_y().is_satisfied_by(&m)),
        other => panic!("{other:?}"),
    }
    let mut unsat = CnfFormula::new(1);
    unsat.add_clause([Var::new(1).pos()]);
    unsat.add_clause([Var::new(1).neg()]);
    assert_eq!(solve(&mut ext, &unsat).unwrap(), SolveOutcome::Unsat);
}

#[test]
fn external_enumeration_uses_blocking_clauses() {
    let dir = tempfile::tempdir().unwrap();
    let mut ext = ExternalSolver::new(script(&dir, "bf.py", BRUTE_FORCE));
    let (x, y) = (Var::new(1), Var::new(2));
    let cnf = to_cnf(&Formula::xor(Formula::var(x), Formula::var(y)), &[x, y]);
    assert_eq!(enumerate_projected_models(&mut ext, &cnf, 10).unwrap().len(), 2);
}

#[test]
fn spurious_unsat_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let mut ext = ExternalSolver::new(script(&dir, "liar.sh", LYING));
    let result = solve(&mut ext, &x_or_y());
    if cfg!(debug_assertions) {
        assert!(matches!(result, Err(SolverError::UnsoundUnsat(_))));
    }
}

#[test]
fn falsifying_model_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let mut ext = ExternalSolver::new(script(&dir, "wrong.sh", WRONG_MODEL));
    assert!(matches!(
        solve(&mut ext, &x_or_y()),
        Err(SolverError::InvalidModel { .. })
    ));
}

#[test]
fn unknown_status_is_a_resource_limit() {
    let dir = tempfile::tempdir().unwrap();
    let mut ext = ExternalSolver::new(script(&dir, "unknown.sh", UNKNOWN));
    assert_eq!(solve(&mut ext, &x_or_y()).unwrap(), SolveOutcome::ResourceLimit);
}

#[test]
fn dimacs_round_trip_with_projection() {
    let mut cnf = CnfFormula::new(12);
    cnf.add_clause([Var::new(12).neg(), Var::new(3).pos()]);
    cnf.set_projection((1..=12).map(Var::new));
    let text = to_dimacs_string(&cnf);
    assert_eq!(
        text,
        "p cnf 12 1\nc ind 1 2 3 4 5 6 7 8 9 10 0\nc ind 11 12 0\n-12 3 0\n"
    );
    assert_eq!(parse_dimacs(&text).unwrap(), cnf);
}
