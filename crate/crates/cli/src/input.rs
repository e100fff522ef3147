//! Automaton and instance files.
//!
//! An instance is `{"improv": A, "admiss": B, "epsilon": "p/q", "rho": "p/q"}`
//! where `A` is an automaton object or a path, and `B` may also be a builtin
//! such as `hamming_leq(001, 1)` or `factor_window(bbac, 2, 0, 1)`. Paths are
//! resolved against the instance file's directory. Objects with a
//! `state_bits` field are symbolic automata.

use std::fs;
use std::path::{Path, PathBuf};

use improv_core::builtins::Builtin;
use improv_core::json::automaton_from_value;
use improv_core::rational::parse_exact;
use improv_core::{Alphabet, Automaton, Symbol};
use improv_sat::SolverBackend;
use improv_symbolic::{accepts, encode_dfa, encode_nfa, symbolic_from_value, SymbolicAutomaton};
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::Value;

use crate::error::CliError;

/// One side of an instance, in whichever representation the file used.
#[derive(Clone, Debug)]
pub enum Side {
    Explicit(Automaton),
    Symbolic(SymbolicAutomaton),
}

impl Side {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Side::Explicit(a) => a.alphabet(),
            Side::Symbolic(s) => s.alphabet(),
        }
    }

    pub fn explicit(&self) -> Option<&Automaton> {
        match self {
            Side::Explicit(a) => Some(a),
            Side::Symbolic(_) => None,
        }
    }

    pub fn to_symbolic(&self) -> Result<SymbolicAutomaton, CliError> {
        Ok(match self {
            Side::Symbolic(s) => s.clone(),
            Side::Explicit(Automaton::Dfa(d)) => encode_dfa(d)?,
            Side::Explicit(Automaton::Nfa(n)) => encode_nfa(n)?,
        })
    }

    /// Membership, through a satisfiability query for symbolic automata.
    pub fn accepts(&self, word: &[Symbol], backend: &SolverBackend) -> Result<bool, CliError> {
        match self {
            Side::Explicit(a) => Ok(a.accepts(word)),
            Side::Symbolic(s) => Ok(accepts(s, backend.build().as_mut(), word)?),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    improv: Value,
    admiss: Value,
    epsilon: String,
    rho: String,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub improv: Side,
    pub admiss: Side,
    pub epsilon: BigRational,
    pub rho: BigRational,
}

impl Instance {
    pub fn is_symbolic(&self) -> bool {
        matches!(self.improv, Side::Symbolic(_)) || matches!(self.admiss, Side::Symbolic(_))
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })
}

fn parse_json(text: &str, path: &Path) -> Result<Value, CliError> {
    serde_json::from_str(text)
        .map_err(|e| CliError::Instance(format!("{}: {e}", path.display())))
}

fn side_from_value(value: Value) -> Result<Side, CliError> {
    if value.get("state_bits").is_some() {
        Ok(Side::Symbolic(symbolic_from_value(value)?))
    } else {
        Ok(Side::Explicit(automaton_from_value(value)?))
    }
}

/// Reads an automaton file of either kind.
pub fn load_side(path: &Path) -> Result<Side, CliError> {
    side_from_value(parse_json(&read(path)?, path)?)
}

fn looks_builtin(text: &str) -> bool {
    let t = text.trim();
    t.ends_with(')') && t.contains('(')
}

fn resolve(value: Value, base: &Path, alphabet: Option<&Alphabet>) -> Result<Side, CliError> {
    match value {
        Value::String(s) => match alphabet {
            Some(alphabet) if looks_builtin(&s) => {
                Ok(Side::Explicit(Builtin::parse(&s, alphabet)?.to_dfa(alphabet)?.into()))
            }
            _ => load_side(&base.join(s)),
        },
        obj @ Value::Object(_) => side_from_value(obj),
        other => Err(CliError::Instance(format!(
            "expected an automaton object, path or builtin, got {other}"
        ))),
    }
}

pub fn load_instance(path: &Path) -> Result<Instance, CliError> {
    let value = parse_json(&read(path)?, path)?;
    let file: InstanceFile =
        serde_json::from_value(value).map_err(|e| CliError::Instance(e.to_string()))?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_else(PathBuf::new);
    let improv = resolve(file.improv, &base, None)?;
    let admiss = resolve(file.admiss, &base, Some(improv.alphabet()))?;
    if admiss.alphabet() != improv.alphabet() {
        return Err(improv_core::AutomatonError::AlphabetMismatch.into());
    }
    Ok(Instance {
        improv,
        admiss,
        epsilon: parse_exact(&file.epsilon)?,
        rho: parse_exact(&file.rho)?,
    })
}
