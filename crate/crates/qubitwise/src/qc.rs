//! The `.qc` circuit text format.
//!
//! ```text
//! # comments run to end of line
//! qubits 3
//! H 1 ; X 2          # gates sharing a layer, applied left to right
//! CX 1 0             # same as: X 0 c=1
//! Z 0 a=2            # a= marks an anticontrol
//! MEASURE 0
//! ```
//!
//! Tokens are case-insensitive. Gate lines are `NAME t [t2] [c=w]* [a=w]*`;
//! the sugar forms are `CX c t`, `CCX c1 c2 t` and `CSWAP c t1 t2`.

use std::fmt::{self, Write as _};

use qubitwise_core::{Circuit, Control, ControlKind, ControlSpec, Gate, GateOp, Operation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based; 0 when the problem is the whole file (e.g. it is empty).
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

fn parse_wire(token: &str, line: usize) -> Result<usize, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::new(line, format!("expected a wire index, found `{token}`")))
}

struct Segment<'a> {
    name: &'a str,
    positional: Vec<usize>,
    controls: Vec<Control>,
}

fn split_segment(text: &str, line: usize) -> Result<Segment<'_>, ParseError> {
    let mut tokens = text.split_whitespace();
    let name = tokens
        .next()
        .ok_or_else(|| ParseError::new(line, "empty gate in layer"))?;
    let mut positional = Vec::new();
    let mut controls = Vec::new();
    for token in tokens {
        match token.split_once('=') {
            Some((key, wire)) => {
                let wire = parse_wire(wire, line)?;
                match key.to_ascii_lowercase().as_str() {
                    "c" => controls.push(Control::on(wire)),
                    "a" => controls.push(Control::anti(wire)),
                    _ => {
                        return Err(ParseError::new(
                            line,
                            format!("unknown option `{key}=`; expected `c=` or `a=`"),
                        ))
                    }
                }
            }
            None if controls.is_empty() => positional.push(parse_wire(token, line)?),
            None => {
                return Err(ParseError::new(
                    line,
                    format!("target `{token}` after control options"),
                ))
            }
        }
    }
    Ok(Segment {
        name,
        positional,
        controls,
    })
}

fn expect_args(name: &str, got: usize, expected: usize, line: usize) -> Result<(), ParseError> {
    if got == expected {
        Ok(())
    } else {
        Err(ParseError::new(
            line,
            format!("{name} takes {expected} wire(s), found {got}"),
        ))
    }
}

fn build_op(segment: Segment<'_>, line: usize) -> Result<GateOp, ParseError> {
    let Segment {
        name,
        positional,
        controls,
    } = segment;
    let upper = name.to_ascii_uppercase();
    let p = &positional;
    let (op, targets, leading) = match upper.as_str() {
        "MEASURE" => {
            expect_args(&upper, p.len(), 1, line)?;
            (Operation::Measure, vec![p[0]], vec![])
        }
        "CX" => {
            expect_args(&upper, p.len(), 2, line)?;
            (
                Operation::Gate(Gate::X),
                vec![p[1]],
                vec![Control::on(p[0])],
            )
        }
        "CCX" => {
            expect_args(&upper, p.len(), 3, line)?;
            (
                Operation::Gate(Gate::X),
                vec![p[2]],
                vec![Control::on(p[0]), Control::on(p[1])],
            )
        }
        "CSWAP" => {
            expect_args(&upper, p.len(), 3, line)?;
            (
                Operation::Gate(Gate::Swap),
                vec![p[1], p[2]],
                vec![Control::on(p[0])],
            )
        }
        _ => {
            let gate: Gate = upper
                .parse()
                .map_err(|_| ParseError::new(line, format!("unknown gate `{name}`")))?;
            expect_args(gate.name(), p.len(), gate.arity(), line)?;
            (Operation::Gate(gate), positional.clone(), vec![])
        }
    };
    let all_controls = leading.into_iter().chain(controls).collect();
    let controls =
        ControlSpec::new(all_controls).map_err(|e| ParseError::new(line, e.to_string()))?;
    Ok(GateOp {
        op,
        targets,
        controls,
    })
}

fn parse_header(text: &str, line: usize) -> Result<usize, ParseError> {
    let mut tokens = text.split_whitespace();
    match (tokens.next(), tokens.next(), tokens.next()) {
        (Some(kw), Some(n), None) if kw.eq_ignore_ascii_case("qubits") => n
            .parse()
            .map_err(|_| ParseError::new(line, format!("invalid qubit count `{n}`"))),
        _ => Err(ParseError::new(
            line,
            "expected `qubits <n>` as the first line",
        )),
    }
}

/// Parses a circuit, expanding `;`-separated layers into one step per gate.
pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let mut circuit: Option<Circuit> = None;
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some(c) = circuit.as_mut() else {
            let n = parse_header(content, line)?;
            circuit = Some(Circuit::new(n).map_err(|e| ParseError::new(line, e.to_string()))?);
            continue;
        };
        for segment in content.split(';') {
            let op = build_op(split_segment(segment.trim(), line)?, line)?;
            c.push(op)
                .map_err(|e| ParseError::new(line, e.to_string()))?;
        }
    }
    circuit.ok_or_else(|| ParseError::new(0, "missing `qubits <n>` header"))
}

/// Canonical text for `op`: one gate, explicit controls, no sugar.
pub struct DisplayOp<'a>(pub &'a GateOp);

impl fmt::Display for DisplayOp<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = self.0;
        f.write_str(op.op.name())?;
        for t in &op.targets {
            write!(f, " {t}")?;
        }
        for c in op.controls.entries() {
            let key = match c.kind {
                ControlKind::Control => 'c',
                ControlKind::AntiControl => 'a',
            };
            write!(f, " {key}={}", c.wire)?;
        }
        Ok(())
    }
}

/// Prints `circuit` in a form [`parse_circuit`] reads back to the same ops.
pub fn print_circuit(circuit: &Circuit) -> String {
    let mut out = format!("qubits {}\n", circuit.n());
    for op in circuit.ops() {
        writeln!(out, "{}", DisplayOp(op)).expect("writing to a String");
    }
    out
}
