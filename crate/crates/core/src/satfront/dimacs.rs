//! DIMACS CNF reading and writing.

use std::fmt;

use crate::error::{parse_err, Result};

/// A CNF formula: clauses of signed, 1-based variable indices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl Cnf {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Self {
        Self { num_vars, clauses }
    }

    /// Whether `assignment[v - 1]` satisfies every clause.
    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter().any(|&l| {
                let v = assignment[l.unsigned_abs() as usize - 1];
                if l > 0 {
                    v
                } else {
                    !v
                }
            })
        })
    }
}

/// Emits the formula in DIMACS form, one clause per line.
impl fmt::Display for Cnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.num_vars, self.clauses.len())?;
        for c in &self.clauses {
            for l in c {
                write!(f, "{l} ")?;
            }
            writeln!(f, "0")?;
        }
        Ok(())
    }
}

pub fn parse_dimacs(text: &str) -> Result<Cnf> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(parse_err(lineno, "second problem line"));
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let nums = match toks.as_slice() {
                ["p", "cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                _ => None,
            };
            header =
                Some(nums.ok_or_else(|| parse_err(lineno, format!("malformed header `{line}`")))?);
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(parse_err(lineno, "clause before the `p cnf` header"));
        };
        for tok in line.split_whitespace() {
            let lit: i32 = tok
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad literal `{tok}`")))?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(parse_err(lineno, "empty clause"));
                }
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > num_vars {
                return Err(parse_err(
                    lineno,
                    format!("literal {lit} exceeds {num_vars} variables"),
                ));
            } else {
                current.push(lit);
            }
        }
        last_line = lineno;
    }
    let Some((num_vars, num_clauses)) = header else {
        return Err(parse_err(0, "missing `p cnf` header"));
    };
    if !current.is_empty() {
        return Err(parse_err(last_line, "last clause lacks its terminating 0"));
    }
    if clauses.len() != num_clauses {
        return Err(parse_err(
            last_line,
            format!(
                "header declares {num_clauses} clauses, found {}",
                clauses.len()
            ),
        ));
    }
    Ok(Cnf { num_vars, clauses })
}
