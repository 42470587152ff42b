//! Parser for the OpenQASM 2.0 subset accepted as compiler input: one qreg,
//! an optional creg, the supported gate applications, and measurements.
//! `//` comments are ignored and statements end at semicolons.

use thiserror::Error;

use crate::circuit::{Circuit, CircuitError, GateKind, Operands, Qubit};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: unknown gate `{name}`")]
    UnknownGate { line: usize, name: String },
    #[error("line {line}: qubit operand {index} out of range (register has {size} qubits)")]
    UndeclaredQubit { line: usize, index: u32, size: u32 },
    #[error("line {line}: classical operand {index} out of range (register has {size} bits)")]
    UndeclaredClassicalBit { line: usize, index: u32, size: u32 },
    #[error("line {line}: `{gate}` expects {expected} operand(s), got {got}")]
    ArityMismatch {
        line: usize,
        gate: String,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: {detail}")]
    MalformedSyntax { line: usize, detail: String },
    #[error("line {line}: qubit q[{index}] used after measurement")]
    ReuseAfterMeasure { line: usize, index: u32 },
}

fn syntax(line: usize, detail: impl Into<String>) -> ParseError {
    ParseError::MalformedSyntax {
        line,
        detail: detail.into(),
    }
}

/// Parses an input circuit. `swap` is rejected: swaps appear only in
/// compiler output.
pub fn parse_qasm(text: &str) -> Result<Circuit, ParseError> {
    parse(text, false)
}

/// Parses compiler output: the input grammar extended with `swap`.
pub fn parse_qasm_extended(text: &str) -> Result<Circuit, ParseError> {
    parse(text, true)
}

struct Statement {
    line: usize,
    text: String,
}

/// Splits source text into semicolon-terminated statements, stripping `//`
/// comments and recording the line each statement starts on.
fn split_statements(text: &str) -> Result<Vec<Statement>, ParseError> {
    let mut statements = Vec::new();
    let mut current = String::new();
    let mut start_line = 1;
    let mut last_line = 1;
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        last_line = lineno;
        let line = match raw.find("//") {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        for ch in line.chars() {
            if ch == ';' {
                let text = current.trim().to_string();
                if !text.is_empty() {
                    statements.push(Statement {
                        line: start_line,
                        text,
                    });
                }
                current.clear();
            } else {
                if current.trim().is_empty() && !ch.is_whitespace() {
                    current.clear();
                    start_line = lineno;
                }
                current.push(ch);
            }
        }
        current.push(' ');
    }
    if !current.trim().is_empty() {
        return Err(syntax(last_line, "statement is missing a terminating `;`"));
    }
    Ok(statements)
}

struct Register {
    name: String,
    size: u32,
}

fn parse_register_decl(stmt: &Statement, keyword: &str) -> Result<Register, ParseError> {
    let rest = stmt.text[keyword.len()..].trim();
    let open = rest
        .find('[')
        .ok_or_else(|| syntax(stmt.line, format!("malformed {keyword} declaration")))?;
    let close = rest
        .find(']')
        .ok_or_else(|| syntax(stmt.line, format!("malformed {keyword} declaration")))?;
    if close < open || !rest[close + 1..].trim().is_empty() {
        return Err(syntax(stmt.line, format!("malformed {keyword} declaration")));
    }
    let name = rest[..open].trim();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(syntax(stmt.line, format!("invalid register name `{name}`")));
    }
    let size: u32 = rest[open + 1..close]
        .trim()
        .parse()
        .map_err(|_| syntax(stmt.line, format!("invalid {keyword} size")))?;
    Ok(Register {
        name: name.to_string(),
        size,
    })
}

/// Parses `name[index]` against a declared register.
fn parse_operand(text: &str, reg: Option<&Register>, line: usize) -> Result<u32, ParseError> {
    let text = text.trim();
    let reg = reg.ok_or_else(|| syntax(line, "operand used before register declaration"))?;
    let open = text
        .find('[')
        .ok_or_else(|| syntax(line, format!("malformed operand `{text}`")))?;
    if !text.ends_with(']') {
        return Err(syntax(line, format!("malformed operand `{text}`")));
    }
    let name = text[..open].trim();
    if name != reg.name {
        return Err(syntax(
            line,
            format!("unknown register `{name}` (declared: `{}`)", reg.name),
        ));
    }
    let index: u32 = text[open + 1..text.len() - 1]
        .trim()
        .parse()
        .map_err(|_| syntax(line, format!("invalid operand index in `{text}`")))?;
    Ok(index)
}

fn parse(text: &str, allow_swap: bool) -> Result<Circuit, ParseError> {
    let statements = split_statements(text)?;
    let mut qreg: Option<Register> = None;
    let mut creg: Option<Register> = None;
    let mut gates: Vec<(GateKind, Operands, Option<u32>)> = Vec::new();
    let mut gate_lines: Vec<usize> = Vec::new();

    for stmt in &statements {
        let text = stmt.text.as_str();
        let line = stmt.line;
        let head = text.split_whitespace().next().unwrap_or("");
        match head {
            "OPENQASM" => {
                if text != "OPENQASM 2.0" {
                    return Err(syntax(line, "only OPENQASM 2.0 is supported"));
                }
            }
            "include" => {
                // The qelib1 include is accepted and ignored.
            }
            "qreg" => {
                if qreg.is_some() {
                    return Err(syntax(line, "exactly one qreg is supported"));
                }
                qreg = Some(parse_register_decl(stmt, "qreg")?);
            }
            "creg" => {
                if creg.is_some() {
                    return Err(syntax(line, "at most one creg is supported"));
                }
                creg = Some(parse_register_decl(stmt, "creg")?);
            }
            "measure" => {
                let rest = text["measure".len()..].trim();
                let (qpart, cpart) = rest
                    .split_once("->")
                    .ok_or_else(|| syntax(line, "measure requires `q[i] -> c[j]`"))?;
                let qubit = parse_operand(qpart, qreg.as_ref(), line)?;
                check_qubit(qubit, qreg.as_ref(), line)?;
                let clbit = parse_operand(cpart, creg.as_ref(), line)?;
                let csize = creg.as_ref().map(|r| r.size).unwrap_or(0);
                if clbit >= csize {
                    return Err(ParseError::UndeclaredClassicalBit {
                        line,
                        index: clbit,
                        size: csize,
                    });
                }
                gates.push((GateKind::Measure, Operands::Single(Qubit(qubit)), Some(clbit)));
                gate_lines.push(line);
            }
            _ => {
                let kind = match GateKind::from_name(head) {
                    Some(GateKind::Swap) if !allow_swap => {
                        return Err(ParseError::UnknownGate {
                            line,
                            name: head.to_string(),
                        })
                    }
                    Some(GateKind::Measure) => unreachable!("handled above"),
                    Some(kind) => kind,
                    None => {
                        return Err(ParseError::UnknownGate {
                            line,
                            name: head.to_string(),
                        })
                    }
                };
                let rest = text[head.len()..].trim();
                if rest.is_empty() {
                    return Err(ParseError::ArityMismatch {
                        line,
                        gate: head.to_string(),
                        expected: if kind.is_two_qubit() { 2 } else { 1 },
                        got: 0,
                    });
                }
                let operand_texts: Vec<&str> = rest.split(',').collect();
                let expected = if kind.is_two_qubit() { 2 } else { 1 };
                if operand_texts.len() != expected {
                    return Err(ParseError::ArityMismatch {
                        line,
                        gate: head.to_string(),
                        expected,
                        got: operand_texts.len(),
                    });
                }
                let mut indices = Vec::with_capacity(expected);
                for t in &operand_texts {
                    let idx = parse_operand(t, qreg.as_ref(), line)?;
                    check_qubit(idx, qreg.as_ref(), line)?;
                    indices.push(idx);
                }
                let operands = if expected == 2 {
                    if indices[0] == indices[1] {
                        return Err(syntax(
                            line,
                            format!("`{head}` operands must be distinct"),
                        ));
                    }
                    Operands::Pair(Qubit(indices[0]), Qubit(indices[1]))
                } else {
                    Operands::Single(Qubit(indices[0]))
                };
                gates.push((kind, operands, None));
                gate_lines.push(line);
            }
        }
    }

    let qreg = qreg.ok_or_else(|| syntax(1, "missing qreg declaration"))?;
    let num_clbits = creg.map(|r| r.size).unwrap_or(0);
    Circuit::new(qreg.size, num_clbits, gates).map_err(|e| match e {
        CircuitError::ReuseAfterMeasure { gate, qubit } => ParseError::ReuseAfterMeasure {
            line: gate_lines[gate.index()],
            index: qubit.0,
        },
        other => syntax(
            gate_lines.last().copied().unwrap_or(1),
            format!("invalid circuit: {other}"),
        ),
    })
}

fn check_qubit(index: u32, qreg: Option<&Register>, line: usize) -> Result<(), ParseError> {
    let size = qreg.map(|r| r.size).unwrap_or(0);
    if index >= size {
        return Err(ParseError::UndeclaredQubit { line, index, size });
    }
    Ok(())
}
