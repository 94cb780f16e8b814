//! OpenQASM 2.0 export and import for the `rz`/`sx`/`cx`/`h`/`swap` subset.
//!
//! Angles are written symbolically (`rz(3*pi/4) q[1];`) and only exact dyadic
//! multiples of `pi` are accepted back, so export followed by import is
//! lossless.

use std::fmt::Write;

use crate::angle::Angle;
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

/// Upper bound on the register size accepted by [`from_qasm`].
pub const MAX_QASM_QUBITS: usize = 1 << 16;

pub fn to_qasm(circuit: &Circuit) -> String {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{}];", circuit.num_qubits());
    for gate in circuit.gates() {
        let _ = match gate {
            Gate::Rz { qubit, angle } => writeln!(out, "rz({angle}) q[{}];", qubit.0),
            Gate::Sx { qubit } => writeln!(out, "sx q[{}];", qubit.0),
            Gate::Cx { control, target } => writeln!(out, "cx q[{}],q[{}];", control.0, target.0),
            Gate::H { qubit } => writeln!(out, "h q[{}];", qubit.0),
            Gate::Swap { a, b } => writeln!(out, "swap q[{}],q[{}];", a.0, b.0),
        };
    }
    out
}

struct Statement {
    line: usize,
    text: String,
}

impl Statement {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Qasm {
            line: self.line,
            message: message.into(),
        }
    }
}

/// Splits on `;` with `//` comments removed, recording each statement's
/// starting line.
fn statements(source: &str) -> Result<Vec<Statement>> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start_line = 1;
    for (idx, raw_line) in source.lines().enumerate() {
        let line_no = idx + 1;
        let code = raw_line.split_once("//").map_or(raw_line, |(code, _)| code);
        let mut rest = code;
        while let Some(pos) = rest.find(';') {
            if current.trim().is_empty() {
                start_line = line_no;
            }
            current.push_str(&rest[..pos]);
            let text = current.trim().to_string();
            if text.is_empty() {
                return Err(Error::Qasm {
                    line: line_no,
                    message: "empty statement".into(),
                });
            }
            out.push(Statement {
                line: start_line,
                text,
            });
            current.clear();
            rest = &rest[pos + 1..];
        }
        if current.trim().is_empty() && !rest.trim().is_empty() {
            start_line = line_no;
        }
        current.push_str(rest);
        current.push(' ');
    }
    if !current.trim().is_empty() {
        return Err(Error::Qasm {
            line: start_line,
            message: "statement is missing a terminating `;`".into(),
        });
    }
    Ok(out)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `name[index]`, whitespace tolerant.
fn parse_indexed(stmt: &Statement, text: &str) -> Result<(String, usize)> {
    let text = text.trim();
    let (name, rest) = text
        .split_once('[')
        .ok_or_else(|| stmt.error(format!("expected `reg[index]`, found `{text}`")))?;
    let index = rest
        .strip_suffix(']')
        .ok_or_else(|| stmt.error(format!("unterminated index in `{text}`")))?
        .trim();
    let name = name.trim();
    if !is_identifier(name) {
        return Err(stmt.error(format!("invalid register name `{name}`")));
    }
    if index.is_empty() || !index.bytes().all(|b| b.is_ascii_digit()) {
        return Err(stmt.error(format!("invalid index `{index}`")));
    }
    let index = index
        .parse()
        .map_err(|_| stmt.error(format!("index `{index}` is too large")))?;
    Ok((name.to_string(), index))
}

/// Imports a single-register program written with `rz`, `sx`, `cx`, `h` and
/// `swap`. The header must be `OPENQASM 2.0;`; `include` lines are accepted
/// and ignored.
pub fn from_qasm(source: &str) -> Result<Circuit> {
    let stmts = statements(source)?;
    let mut iter = stmts.iter();

    let header = iter.next().ok_or(Error::Qasm {
        line: 1,
        message: "missing `OPENQASM 2.0;` header".into(),
    })?;
    let version: Vec<&str> = header.text.split_whitespace().collect();
    if version != ["OPENQASM", "2.0"] {
        return Err(header.error(format!("unsupported header `{}`", header.text)));
    }

    let mut register: Option<(String, Circuit)> = None;
    for stmt in iter {
        let text = stmt.text.as_str();
        if let Some(path) = text.strip_prefix("include") {
            let path = path.trim();
            if path.len() < 2 || !path.starts_with('"') || !path.ends_with('"') {
                return Err(stmt.error("include expects a quoted file name"));
            }
            continue;
        }
        if let Some(decl) = text.strip_prefix("qreg") {
            if !decl.starts_with(char::is_whitespace) {
                return Err(stmt.error(format!("unknown statement `{text}`")));
            }
            if register.is_some() {
                return Err(stmt.error("only one quantum register is supported"));
            }
            let (name, size) = parse_indexed(stmt, decl)?;
            if size == 0 || size > MAX_QASM_QUBITS {
                return Err(stmt.error(format!("register size {size} out of range")));
            }
            let circuit = Circuit::new(size).map_err(|e| stmt.error(e.to_string()))?;
            register = Some((name, circuit));
            continue;
        }

        let Some((reg_name, circuit)) = register.as_mut() else {
            return Err(stmt.error("gate used before `qreg` declaration"));
        };

        let name_end = text
            .find(|c: char| c == '(' || c.is_whitespace())
            .ok_or_else(|| stmt.error(format!("gate `{text}` has no operands")))?;
        let name = &text[..name_end];
        let mut rest = text[name_end..].trim_start();
        let mut param = None;
        if let Some(after) = rest.strip_prefix('(') {
            let close = after
                .find(')')
                .ok_or_else(|| stmt.error("unterminated parameter list"))?;
            param = Some(&after[..close]);
            rest = &after[close + 1..];
        }

        let mut operands = Vec::new();
        for arg in rest.split(',') {
            let (reg, index) = parse_indexed(stmt, arg)?;
            if &reg != reg_name {
                return Err(stmt.error(format!("unknown register `{reg}`")));
            }
            operands.push(index);
        }

        let expect = |params: bool, arity: usize| -> Result<()> {
            if param.is_some() != params {
                return Err(stmt.error(if params {
                    format!("`{name}` takes one angle parameter")
                } else {
                    format!("`{name}` takes no parameters")
                }));
            }
            if operands.len() != arity {
                return Err(stmt.error(format!("`{name}` takes {arity} operand(s), got {}", operands.len())));
            }
            Ok(())
        };

        let gate = match name {
            "rz" => {
                expect(true, 1)?;
                let angle: Angle = param
                    .unwrap_or_default()
                    .parse()
                    .map_err(|e: Error| stmt.error(e.to_string()))?;
                Gate::rz(operands[0], angle)
            }
            "sx" => {
                expect(false, 1)?;
                Gate::sx(operands[0])
            }
            "h" => {
                expect(false, 1)?;
                Gate::h(operands[0])
            }
            "cx" | "CX" => {
                expect(false, 2)?;
                Gate::cx(operands[0], operands[1])
            }
            "swap" => {
                expect(false, 2)?;
                Gate::swap(operands[0], operands[1])
            }
            other => return Err(stmt.error(format!("unsupported gate `{other}`"))),
        };
        circuit.push(gate).map_err(|e| stmt.error(e.to_string()))?;
    }

    register.map(|(_, circuit)| circuit).ok_or(Error::Qasm {
        line: stmts.last().map_or(1, |s| s.line),
        message: "no `qreg` declaration".into(),
    })
}
