//! DIMACS CNF reading, for differential testing against external solvers.
//! Writing lives on [`CnfTheory::to_dimacs`].

use crate::error::{ParseError, ParseErrorKind};

use super::{CnfTheory, Literal};

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::new(line, ParseErrorKind::Dimacs(msg.into()))
}

/// Parses `p cnf <vars> <clauses>` followed by zero-terminated clauses.
/// Comment lines start with `c`; clauses may span lines.
pub fn parse(text: &str) -> Result<CnfTheory, ParseError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    let mut last_line = 0;
    for (k, line) in text.lines().enumerate() {
        let lineno = k + 1;
        last_line = lineno;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(err(lineno, "duplicate problem line"));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                ["p", "cnf", vars, count] => {
                    let vars = vars.parse().map_err(|_| err(lineno, "bad variable count"))?;
                    let count = count.parse().map_err(|_| err(lineno, "bad clause count"))?;
                    header = Some((vars, count));
                }
                _ => return Err(err(lineno, "expected 'p cnf <vars> <clauses>'")),
            }
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(err(lineno, "clause before problem line"));
        };
        for tok in line.split_whitespace() {
            let v: i64 = tok.parse().map_err(|_| err(lineno, format!("bad literal '{tok}'")))?;
            if v == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            let lit = Literal::from_dimacs(v).ok_or_else(|| err(lineno, format!("bad literal '{tok}'")))?;
            if lit.atom().index() > vars {
                return Err(err(lineno, format!("variable {} exceeds declared count {vars}", lit.atom().index())));
            }
            current.push(lit);
        }
    }
    let Some((vars, count)) = header else {
        return Err(err(last_line.max(1), "missing problem line"));
    };
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != count {
        return Err(err(last_line, format!("expected {count} clauses, found {}", clauses.len())));
    }
    Ok(CnfTheory::from_clauses(vars, clauses))
}
