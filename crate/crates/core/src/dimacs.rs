//! 3-CNF formulas and DIMACS input.

use std::fmt;

use crate::error::{Error, Result};

/// A CNF formula whose clauses all have exactly three literals, in DIMACS
/// sign convention (`-3` is the negation of variable 3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: u32,
    clauses: Vec<[i32; 3]>,
}

impl CnfFormula {
    pub fn new(num_vars: u32, clauses: Vec<[i32; 3]>) -> Result<CnfFormula> {
        if num_vars == 0 {
            return Err(Error::MalformedClause("formula must declare at least one variable".into()));
        }
        for clause in &clauses {
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() > num_vars {
                    return Err(Error::MalformedClause(format!(
                        "literal {lit} in clause {clause:?} is outside 1..={num_vars}"
                    )));
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[i32; 3]] {
        &self.clauses
    }

    /// Variables occurring in some clause, ascending.
    pub fn occurring_vars(&self) -> Vec<u32> {
        let mut vars: Vec<u32> = self
            .clauses
            .iter()
            .flatten()
            .map(|l| l.unsigned_abs())
            .collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    /// `assignment[v - 1]` is the value of variable `v`.
    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause
                .iter()
                .any(|&l| assignment[(l.unsigned_abs() - 1) as usize] == (l > 0))
        })
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.num_vars, self.clauses.len())?;
        for [a, b, c] in &self.clauses {
            writeln!(f, "{a} {b} {c} 0")?;
        }
        Ok(())
    }
}

fn dimacs(line: usize, message: impl Into<String>) -> Error {
    Error::Dimacs {
        line,
        message: message.into(),
    }
}

/// Parses DIMACS CNF. Clauses must have exactly three literals unless `pad`
/// is set, in which case shorter clauses repeat their last literal.
pub fn parse_dimacs(text: &str, pad: bool) -> Result<CnfFormula> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses: Vec<[i32; 3]> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut current_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(dimacs(line_no, "duplicate problem line"));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                return Err(dimacs(line_no, "expected `p cnf <vars> <clauses>`"));
            }
            let vars = fields[2]
                .parse::<u32>()
                .map_err(|_| dimacs(line_no, format!("bad variable count `{}`", fields[2])))?;
            let count = fields[3]
                .parse::<usize>()
                .map_err(|_| dimacs(line_no, format!("bad clause count `{}`", fields[3])))?;
            if vars == 0 {
                return Err(dimacs(line_no, "variable count must be positive"));
            }
            header = Some((vars, count));
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(dimacs(line_no, "clause before the `p cnf` header"));
        };
        for token in line.split_whitespace() {
            let lit = token
                .parse::<i32>()
                .map_err(|_| dimacs(line_no, format!("bad literal `{token}`")))?;
            if current.is_empty() {
                current_line = line_no;
            }
            if lit == 0 {
                clauses.push(finish_clause(&current, pad, current_line)?);
                current.clear();
                continue;
            }
            if lit.unsigned_abs() > vars {
                return Err(dimacs(
                    line_no,
                    format!("variable {} out of range 1..={vars}", lit.unsigned_abs()),
                ));
            }
            current.push(lit);
        }
    }

    let Some((vars, count)) = header else {
        return Err(dimacs(0, "missing `p cnf` header"));
    };
    if !current.is_empty() {
        return Err(dimacs(current_line, "clause not terminated by 0"));
    }
    if clauses.len() != count {
        return Err(dimacs(
            0,
            format!("header declares {count} clauses but {} were given", clauses.len()),
        ));
    }
    CnfFormula::new(vars, clauses)
}

fn finish_clause(lits: &[i32], pad: bool, line: usize) -> Result<[i32; 3]> {
    match lits.len() {
        3 => Ok([lits[0], lits[1], lits[2]]),
        1 | 2 if pad => {
            let last = *lits.last().unwrap();
            let mut out = [last; 3];
            out[..lits.len()].copy_from_slice(lits);
            Ok(out)
        }
        n => Err(dimacs(
            line,
            format!("clause has {n} literals, expected exactly 3{}", if n < 3 && !pad { " (use padding to extend short clauses)" } else { "" }),
        )),
    }
}
