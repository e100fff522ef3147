//! Prefix syntax for formulas in symbolic automaton files.
//!
//! ```text
//! expr := "true" | "false" | var | "(" op expr* ")"
//! op   := "not" | "and" | "or" | "xor"
//! var  := ("x" | "a" | "y") digits
//! ```
//!
//! `not` takes one argument, `xor` two or more (odd parity), `and`/`or` any
//! number. `(and)` is true and `(or)` is false.

use improv_sat::{Formula, Var};

use crate::error::SymbolicError;

/// Variable blocks: `x` state bits, `a` input bits, `y` next-state bits.
#[derive(Clone, Copy, Debug)]
pub struct Blocks {
    pub state_bits: usize,
    pub input_bits: usize,
}

impl Blocks {
    fn var(&self, name: &str) -> Option<Var> {
        let mut chars = name.chars();
        let block = chars.next()?;
        let index = chars.as_str();
        if !index.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let i: usize = index.parse().ok()?;
        let (n, m) = (self.state_bits, self.input_bits);
        let offset = match block {
            'x' if i < n => i,
            'a' if i < m => n + i,
            'y' if i < n => n + m + i,
            _ => return None,
        };
        Some(Var::new(1 + offset as u32))
    }

    fn name(&self, v: Var) -> String {
        let i = v.index() as usize - 1;
        let (n, m) = (self.state_bits, self.input_bits);
        if i < n {
            format!("x{i}")
        } else if i < n + m {
            format!("a{}", i - n)
        } else {
            format!("y{}", i - n - m)
        }
    }
}

fn tokenize(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        if c == '(' || c == ')' || c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(&text[s..i]);
            }
            if !c.is_whitespace() {
                out.push(&text[i..i + 1]);
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(&text[s..]);
    }
    out
}

pub fn parse_formula(text: &str, blocks: Blocks) -> Result<Formula, SymbolicError> {
    let err = |message: String| SymbolicError::Formula {
        text: text.to_string(),
        message,
    };
    let tokens = tokenize(text);
    let mut pos = 0;
    let f = parse_expr(&tokens, &mut pos, blocks).map_err(err)?;
    if pos != tokens.len() {
        return Err(err(format!("unexpected `{}` after expression", tokens[pos])));
    }
    Ok(f)
}

fn parse_expr(tokens: &[&str], pos: &mut usize, blocks: Blocks) -> Result<Formula, String> {
    let Some(&tok) = tokens.get(*pos) else {
        return Err("unexpected end of input".into());
    };
    *pos += 1;
    match tok {
        "true" => Ok(Formula::Const(true)),
        "false" => Ok(Formula::Const(false)),
        ")" => Err("unbalanced `)`".into()),
        "(" => {
            let op = *tokens.get(*pos).ok_or("missing operator")?;
            *pos += 1;
            let mut args = Vec::new();
            loop {
                match tokens.get(*pos) {
                    None => return Err(format!("unclosed `({op}`")),
                    Some(&")") => {
                        *pos += 1;
                        break;
                    }
                    Some(_) => args.push(parse_expr(tokens, pos, blocks)?),
                }
            }
            match op {
                "and" => Ok(Formula::And(args)),
                "or" => Ok(Formula::Or(args)),
                "not" if args.len() == 1 => Ok(args.pop().unwrap().negate()),
                "not" => Err(format!("`not` takes one argument, got {}", args.len())),
                "xor" if args.len() >= 2 => {
                    let mut it = args.into_iter();
                    let first = it.next().unwrap();
                    Ok(it.fold(first, Formula::xor))
                }
                "xor" => Err("`xor` takes at least two arguments".into()),
                other => Err(format!("unknown operator `{other}`")),
            }
        }
        name => blocks
            .var(name)
            .map(Formula::Var)
            .ok_or_else(|| format!("unknown variable `{name}`")),
    }
}

/// Renders `formula` in the prefix syntax. Implications and equivalences are
/// expanded into the four basic operators.
pub fn format_formula(formula: &Formula, blocks: Blocks) -> String {
    let list = |op: &str, parts: &[Formula]| {
        let mut s = format!("({op}");
        for p in parts {
            s.push(' ');
            s.push_str(&format_formula(p, blocks));
        }
        s.push(')');
        s
    };
    match formula {
        Formula::Const(b) => b.to_string(),
        Formula::Var(v) => blocks.name(*v),
        Formula::Not(f) => format!("(not {})", format_formula(f, blocks)),
        Formula::And(fs) => list("and", fs),
        Formula::Or(fs) => list("or", fs),
        Formula::Xor(a, b) => list("xor", &[(**a).clone(), (**b).clone()]),
        Formula::Implies(a, b) => list("or", &[(**a).clone().negate(), (**b).clone()]),
        Formula::Iff(a, b) => format!("(not {})", list("xor", &[(**a).clone(), (**b).clone()])),
    }
}
