//! `.rbset` files: a JSON header line, then one operator literal per line.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::{OperatorSet, SearchStats};
use crate::error::{Error, Result};
use crate::identities::satisfies;
use crate::literal::{operator_to_string, parse_operator, FieldLiteral, ProblemLiteral};

const FORMAT: &str = "rbset";
const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    format: String,
    version: u32,
    problem: ProblemLiteral,
    field: FieldLiteral,
    count: usize,
    metadata: SearchStats,
}

pub fn write_rbset(set: &OperatorSet, mut w: impl Write) -> Result<()> {
    let header = Header {
        format: FORMAT.to_string(),
        version: VERSION,
        problem: ProblemLiteral::of(&set.problem),
        field: FieldLiteral::of(set.field),
        count: set.ops.len(),
        metadata: set.metadata.clone(),
    };
    writeln!(w, "{}", serde_json::to_string(&header)?)?;
    for r in &set.ops {
        writeln!(w, "{}", operator_to_string(r))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads and validates a set: matching field, strictly increasing order, the
/// declared count, and every member satisfying the declared problem.
pub fn read_rbset(r: impl BufRead) -> Result<OperatorSet> {
    let mut lines = r.lines();
    let first = lines
        .next()
        .ok_or_else(|| Error::Parse("empty operator set file".into()))??;
    let header: Header = serde_json::from_str(&first)
        .map_err(|e| Error::Parse(format!("header: {e}")))?;
    if header.format != FORMAT || header.version != VERSION {
        return Err(Error::Parse(format!(
            "unsupported format {} version {}",
            header.format, header.version
        )));
    }
    let field = header.field.resolve()?;
    let problem = header.problem.resolve(field)?;
    let mut ops = Vec::with_capacity(header.count);
    for (n, line) in lines.enumerate() {
        let line = line?;
        let lineno = n + 2;
        if line.trim().is_empty() {
            continue;
        }
        let op = parse_operator(&line).map_err(|e| Error::Parse(format!("line {lineno}: {e}")))?;
        if op.field() != field {
            return Err(Error::Parse(format!("line {lineno}: operator over another field")));
        }
        if ops.last().is_some_and(|prev| *prev >= op) {
            return Err(Error::Parse(format!(
                "line {lineno}: operators not strictly increasing"
            )));
        }
        if !satisfies(&op, &problem) {
            return Err(Error::Parse(format!(
                "line {lineno}: operator does not satisfy the declared problem {problem}"
            )));
        }
        ops.push(op);
    }
    if ops.len() != header.count {
        return Err(Error::Parse(format!(
            "header declares {} operators, file has {}",
            header.count,
            ops.len()
        )));
    }
    Ok(OperatorSet {
        problem,
        field,
        ops,
        metadata: header.metadata,
    })
}
