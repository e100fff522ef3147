//! DIMACS CNF interchange.

use std::fmt::Write as _;
use std::io::{self, Write};

use thiserror::Error;

use crate::cnf::{CnfFormula, Lit, Model, Var};
use crate::solver::SolveOutcome;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimacsError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("header declares {declared} clauses but {found} were read")]
    ClauseCount { declared: usize, found: usize },
}

/// Renders `cnf` as DIMACS text: header, then `c ind` projection lines, then
/// one clause per line.
pub fn to_dimacs_string(cnf: &CnfFormula) -> String {
    let mut out = String::new();
    writeln!(out, "p cnf {} {}", cnf.num_vars(), cnf.clauses().len()).unwrap();
    for chunk in cnf.projection().chunks(10) {
        out.push_str("c ind");
        for v in chunk {
            write!(out, " {}", v.index()).unwrap();
        }
        out.push_str(" 0\n");
    }
    for clause in cnf.clauses() {
        for lit in clause {
            write!(out, "{} ", lit.to_dimacs()).unwrap();
        }
        out.push_str("0\n");
    }
    out
}

pub fn write_dimacs<W: Write>(cnf: &CnfFormula, mut writer: W) -> io::Result<()> {
    writer.write_all(to_dimacs_string(cnf).as_bytes())
}

/// Parses DIMACS CNF, including `c ind` projection lines.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, DimacsError> {
    let mut cnf: Option<CnfFormula> = None;
    let mut declared = 0usize;
    let mut projection = Vec::new();
    let mut pending: Vec<Lit> = Vec::new();
    let mut clauses = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        let syntax = |message: String| DimacsError::Syntax {
            line: line_no,
            message,
        };
        if line.is_empty() || line == "%" {
            continue;
        }
        if let Some(rest) = line.strip_prefix('c') {
            let mut tokens = rest.split_whitespace();
            if tokens.next() == Some("ind") {
                for tok in tokens {
                    let v: u32 = tok
                        .parse()
                        .map_err(|_| syntax(format!("bad projection variable `{tok}`")))?;
                    if v != 0 {
                        projection.push(Var::new(v));
                    }
                }
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 3 || parts[0] != "cnf" {
                return Err(syntax(format!("malformed header `{line}`")));
            }
            let vars: u32 = parts[1]
                .parse()
                .map_err(|_| syntax("bad variable count".into()))?;
            declared = parts[2]
                .parse()
                .map_err(|_| syntax("bad clause count".into()))?;
            cnf = Some(CnfFormula::new(vars));
            continue;
        }
        let Some(formula) = cnf.as_ref() else {
            return Err(DimacsError::MissingHeader);
        };
        for tok in line.split_whitespace() {
            let value: i32 = tok
                .parse()
                .map_err(|_| syntax(format!("bad literal `{tok}`")))?;
            if value == 0 {
                clauses.push(std::mem::take(&mut pending));
            } else {
                if value.unsigned_abs() > formula.num_vars() {
                    return Err(syntax(format!("literal {value} out of range")));
                }
                pending.push(Lit::from_dimacs(value));
            }
        }
    }
    let mut cnf = cnf.ok_or(DimacsError::MissingHeader)?;
    if !pending.is_empty() {
        clauses.push(pending);
    }
    if clauses.len() != declared {
        return Err(DimacsError::ClauseCount {
            declared,
            found: clauses.len(),
        });
    }
    for clause in clauses {
        cnf.add_clause(clause);
    }
    cnf.set_projection(projection);
    Ok(cnf)
}

/// Reads a solver's `s` and `v` lines. Unknown status and missing status both
/// map to `None`; callers treat that as a resource limit.
pub fn parse_solver_output(text: &str, num_vars: u32) -> Result<Option<SolveOutcome>, String> {
    let mut status = None;
    let mut values = vec![false; num_vars as usize];
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            status = match rest.trim() {
                "SATISFIABLE" => Some(true),
                "UNSATISFIABLE" => Some(false),
                _ => None,
            };
        } else if let Some(rest) = line.strip_prefix("v ") {
            for tok in rest.split_whitespace() {
                let value: i64 = tok
                    .parse()
                    .map_err(|_| format!("bad model literal `{tok}`"))?;
                if value == 0 {
                    continue;
                }
                let idx = value.unsigned_abs() as usize;
                if idx <= values.len() {
                    values[idx - 1] = value > 0;
                }
            }
        }
    }
    Ok(match status {
        Some(true) => Some(SolveOutcome::Sat(Model::new(values))),
        Some(false) => Some(SolveOutcome::Unsat),
        None => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CnfFormula {
        let mut cnf = CnfFormula::new(3);
        cnf.add_clause([Var::new(1).pos(), Var::new(2).neg()]);
        cnf.add_clause([Var::new(3).pos()]);
        cnf.set_projection([Var::new(1), Var::new(2)]);
        cnf
    }

    #[test]
    fn writes_exact_text() {
        assert_eq!(
            to_dimacs_string(&sample()),
            "p cnf 3 2\nc ind 1 2 0\n1 -2 0\n3 0\n"
        );
    }

    #[test]
    fn round_trip() {
        let cnf = sample();
        assert_eq!(parse_dimacs(&to_dimacs_string(&cnf)).unwrap(), cnf);
    }

    #[test]
    fn clause_count_mismatch() {
        assert_eq!(
            parse_dimacs("p cnf 2 2\n1 0\n"),
            Err(DimacsError::ClauseCount {
                declared: 2,
                found: 1
            })
        );
    }

    #[test]
    fn solver_output() {
        let out = "c hello\ns SATISFIABLE\nv 1 -2\nv 3 0\n";
        match parse_solver_output(out, 3).unwrap() {
            Some(SolveOutcome::Sat(m)) => assert_eq!(m.values(), &[true, false, true]),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            parse_solver_output("s UNSATISFIABLE\n", 3).unwrap(),
            Some(SolveOutcome::Unsat)
        );
        assert_eq!(parse_solver_output("s UNKNOWN\n", 3).unwrap(), None);
    }
}
