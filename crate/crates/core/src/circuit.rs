//! Circuit representation and an OpenQASM 2.0 subset.
//!
//! Gates are stored in application order. Each [`Gate`] lists its qubits
//! as `controls..., target`; a swap lists its two qubits and is lowered to
//! three CNOTs only when the simulator asks for [`GateSpec`]s, so gate counts
//! treat it as one gate.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gates::{self, Base};
use crate::mdd::GateSpec;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateOp {
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Rx(f64),
    Ry(f64),
    Rz(f64),
    Phase(f64),
    Swap,
}

impl GateOp {
    /// Base matrix, or `None` for swap.
    pub fn base(self) -> Option<Base> {
        Some(match self {
            GateOp::X => gates::X,
            GateOp::Y => gates::Y,
            GateOp::Z => gates::Z,
            GateOp::H => gates::H,
            GateOp::S => gates::S,
            GateOp::Sdg => gates::SDG,
            GateOp::T => gates::T,
            GateOp::Tdg => gates::TDG,
            GateOp::Rx(a) => gates::rx(a),
            GateOp::Ry(a) => gates::ry(a),
            GateOp::Rz(a) => gates::rz(a),
            GateOp::Phase(a) => gates::phase(a),
            GateOp::Swap => return None,
        })
    }

    fn angle(self) -> Option<f64> {
        match self {
            GateOp::Rx(a) | GateOp::Ry(a) | GateOp::Rz(a) | GateOp::Phase(a) => Some(a),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    pub op: GateOp,
    pub qubits: Vec<u32>,
}

impl Gate {
    pub fn single(op: GateOp, target: u32) -> Self {
        Gate {
            op,
            qubits: vec![target],
        }
    }

    pub fn controlled(op: GateOp, controls: &[u32], target: u32) -> Self {
        let mut qubits = controls.to_vec();
        qubits.push(target);
        Gate { op, qubits }
    }

    pub fn cx(control: u32, target: u32) -> Self {
        Self::controlled(GateOp::X, &[control], target)
    }

    pub fn swap(a: u32, b: u32) -> Self {
        Gate {
            op: GateOp::Swap,
            qubits: vec![a, b],
        }
    }

    pub fn target(&self) -> u32 {
        *self.qubits.last().expect("gate without qubits")
    }

    pub fn controls(&self) -> &[u32] {
        &self.qubits[..self.qubits.len() - 1]
    }

    /// The gate as decision-diagram specs, in application order.
    pub fn specs(&self) -> Vec<GateSpec> {
        match self.op.base() {
            Some(base) => vec![GateSpec::controlled(base, self.controls(), self.target())],
            None => {
                let (a, b) = (self.qubits[0], self.qubits[1]);
                vec![
                    GateSpec::controlled(gates::X, &[a], b),
                    GateSpec::controlled(gates::X, &[b], a),
                    GateSpec::controlled(gates::X, &[a], b),
                ]
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    pub name: String,
    pub n: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(name: impl Into<String>, n: usize) -> Self {
        Circuit {
            name: name.into(),
            n,
            gates: Vec::new(),
        }
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    /// Gate count with every swap counted once.
    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    /// Gate count after lowering swaps to CNOTs.
    pub fn lowered_gate_count(&self) -> usize {
        self.gates
            .iter()
            .map(|g| if g.op == GateOp::Swap { 3 } else { 1 })
            .sum()
    }

    /// Checks qubit indices and arity of every gate.
    pub fn validate(&self) -> Result<()> {
        for (i, g) in self.gates.iter().enumerate() {
            if g.qubits.is_empty() || (g.op == GateOp::Swap && g.qubits.len() != 2) {
                return Err(Error::Argument(format!("gate {i} has the wrong number of qubits")));
            }
            for (k, &q) in g.qubits.iter().enumerate() {
                if q as usize >= self.n {
                    return Err(Error::Argument(format!(
                        "gate {i} uses qubit {q} but the circuit has {} qubits",
                        self.n
                    )));
                }
                if g.qubits[..k].contains(&q) {
                    return Err(Error::Argument(format!("gate {i} uses qubit {q} twice")));
                }
            }
        }
        Ok(())
    }
}

/// Renders `circuit` as OpenQASM 2.0 using the register name `q`.
pub fn circuit_to_qasm(circuit: &Circuit) -> Result<String> {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\n");
    let _ = writeln!(out, "qreg q[{}];", circuit.n);
    for (i, g) in circuit.gates.iter().enumerate() {
        let controls = g.controls().len();
        let name = match (g.op, controls) {
            (GateOp::X, 0) => "x",
            (GateOp::Y, 0) => "y",
            (GateOp::Z, 0) => "z",
            (GateOp::H, 0) => "h",
            (GateOp::S, 0) => "s",
            (GateOp::Sdg, 0) => "sdg",
            (GateOp::T, 0) => "t",
            (GateOp::Tdg, 0) => "tdg",
            (GateOp::Rx(_), 0) => "rx",
            (GateOp::Ry(_), 0) => "ry",
            (GateOp::Rz(_), 0) => "rz",
            (GateOp::Phase(_), 0) => "p",
            (GateOp::X, 1) => "cx",
            (GateOp::Z, 1) => "cz",
            (GateOp::Phase(_), 1) => "cp",
            (GateOp::X, 2) => "ccx",
            (GateOp::Swap, 1) => "swap",
            (op, c) => {
                return Err(Error::Serialization(format!(
                    "gate {i} ({op:?} with {c} controls) has no OpenQASM 2.0 form"
                )))
            }
        };
        out.push_str(name);
        if let Some(a) = g.op.angle() {
            let _ = write!(out, "({a:?})");
        }
        let args: Vec<String> = g.qubits.iter().map(|q| format!("q[{q}]")).collect();
        let _ = writeln!(out, " {};", args.join(","));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Real(f64),
    Str(String),
    Arrow,
    Sym(char),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(v) => format!("`{v}`"),
            Tok::Real(v) => format!("`{v}`"),
            Tok::Str(s) => format!("\"{s}\""),
            Tok::Arrow => "`->`".into(),
            Tok::Sym(c) => format!("`{c}`"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
    #[cfg_attr(not(test), allow(dead_code))]
    width: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let err = |line, column, message: String| Error::Parse { line, column, message };
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let begin = i;
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[begin..i].iter().collect())
        } else if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let mut real = false;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                real = true;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    real = true;
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let s: String = chars[begin..i].iter().collect();
            if real {
                Tok::Real(
                    s.parse()
                        .map_err(|_| err(start_line, start_col, format!("bad number `{s}`")))?,
                )
            } else {
                match s.parse() {
                    Ok(v) => Tok::Int(v),
                    Err(_) => Tok::Real(
                        s.parse()
                            .map_err(|_| err(start_line, start_col, format!("bad number `{s}`")))?,
                    ),
                }
            }
        } else if c == '"' {
            i += 1;
            while i < chars.len() && chars[i] != '"' && chars[i] != '\n' {
                i += 1;
            }
            if i >= chars.len() || chars[i] != '"' {
                return Err(err(start_line, start_col, "unterminated string".into()));
            }
            i += 1;
            Tok::Str(chars[begin + 1..i - 1].iter().collect())
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            i += 2;
            Tok::Arrow
        } else if "[](),;+-*/".contains(c) {
            i += 1;
            Tok::Sym(c)
        } else {
            return Err(err(start_line, start_col, format!("unexpected character `{c}`")));
        };
        col += i - begin;
        tokens.push(Token {
            tok,
            line: start_line,
            column: start_col,
            width: i - begin,
        });
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens.get(self.pos).map_or(self.end, |t| (t.line, t.column))
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let (line, column) = self.here();
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn unexpected(&self, wanted: &str) -> Error {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {}", t.describe())),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    fn int(&mut self) -> Result<u64> {
        match self.peek() {
            Some(&Tok::Int(v)) => {
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<f64> {
        let mut v = self.term()?;
        loop {
            if self.eat_sym('+') {
                v += self.term()?;
            } else if self.eat_sym('-') {
                v -= self.term()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn term(&mut self) -> Result<f64> {
        let mut v = self.unary()?;
        loop {
            if self.eat_sym('*') {
                v *= self.unary()?;
            } else if self.eat_sym('/') {
                let (line, column) = self.here();
                let d = self.unary()?;
                if d == 0.0 {
                    return Err(Error::Semantic {
                        line,
                        column,
                        message: "division by zero in angle".into(),
                    });
                }
                v /= d;
            } else {
                return Ok(v);
            }
        }
    }

    fn unary(&mut self) -> Result<f64> {
        if self.eat_sym('-') {
            return Ok(-self.unary()?);
        }
        if self.eat_sym('+') {
            return self.unary();
        }
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(v as f64)
            }
            Some(Tok::Real(v)) => {
                self.pos += 1;
                Ok(v)
            }
            Some(Tok::Ident(s)) if s == "pi" => {
                self.pos += 1;
                Ok(PI)
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect_sym(')')?;
                Ok(v)
            }
            _ => Err(self.unexpected("an angle expression")),
        }
    }
}

struct Register {
    name: String,
    size: usize,
}

/// Gate names of the supported subset: (name, parameters, qubit operands).
fn gate_shape(name: &str) -> Option<(usize, usize)> {
    Some(match name {
        "x" | "y" | "z" | "h" | "s" | "sdg" | "t" | "tdg" => (0, 1),
        "rx" | "ry" | "rz" | "p" | "u1" => (1, 1),
        "cx" | "CX" | "cz" | "swap" => (0, 2),
        "cp" | "cu1" => (1, 2),
        "ccx" => (0, 3),
        _ => return None,
    })
}

fn gate_op(name: &str, param: f64) -> GateOp {
    match name {
        "x" | "cx" | "CX" | "ccx" => GateOp::X,
        "y" => GateOp::Y,
        "z" | "cz" => GateOp::Z,
        "h" => GateOp::H,
        "s" => GateOp::S,
        "sdg" => GateOp::Sdg,
        "t" => GateOp::T,
        "tdg" => GateOp::Tdg,
        "rx" => GateOp::Rx(param),
        "ry" => GateOp::Ry(param),
        "rz" => GateOp::Rz(param),
        "p" | "u1" | "cp" | "cu1" => GateOp::Phase(param),
        "swap" => GateOp::Swap,
        _ => unreachable!("gate_shape admitted `{name}`"),
    }
}

/// Parses the supported OpenQASM 2.0 subset.
pub fn parse_qasm(text: &str) -> Result<Circuit> {
    let tokens = lex(text)?;
    let end = tokens.last().map_or((1, 1), |t| (t.line, t.column + 1));
    let mut p = Parser { tokens, pos: 0, end };

    match p.next() {
        Some(Tok::Ident(s)) if s == "OPENQASM" => {}
        _ => {
            p.pos = 0;
            return Err(p.error("file must start with `OPENQASM 2.0;`"));
        }
    }
    match p.peek() {
        Some(Tok::Real(v)) if *v == 2.0 => p.pos += 1,
        _ => return Err(p.unexpected("version `2.0`")),
    }
    p.expect_sym(';')?;

    let mut qreg: Option<Register> = None;
    let mut cregs: Vec<String> = Vec::new();
    let mut circuit = Circuit::new("circuit", 0);
    let mut warned_measure = false;

    while let Some(tok) = p.peek().cloned() {
        let (line, column) = p.here();
        let Tok::Ident(word) = tok else {
            return Err(p.unexpected("a statement"));
        };
        p.pos += 1;
        match word.as_str() {
            "include" => {
                match p.next() {
                    Some(Tok::Str(_)) => {}
                    _ => {
                        p.pos -= 1;
                        return Err(p.unexpected("a file name string"));
                    }
                }
                p.expect_sym(';')?;
            }
            "qreg" | "creg" => {
                let name = p.ident()?;
                p.expect_sym('[')?;
                let size = p.int()?;
                p.expect_sym(']')?;
                p.expect_sym(';')?;
                if word == "qreg" {
                    if qreg.is_some() {
                        return Err(Error::Parse {
                            line,
                            column,
                            message: "only one quantum register is supported".into(),
                        });
                    }
                    if size == 0 {
                        return Err(Error::Semantic {
                            line,
                            column,
                            message: "quantum register must hold at least one qubit".into(),
                        });
                    }
                    circuit.n = usize::try_from(size).map_err(|_| Error::Semantic {
                        line,
                        column,
                        message: "register too large".into(),
                    })?;
                    qreg = Some(Register { name, size: circuit.n });
                } else {
                    log::warn!("line {line}: classical register `{name}` ignored");
                    cregs.push(name);
                }
            }
            "measure" => {
                operand_any(&mut p)?;
                if p.next() != Some(Tok::Arrow) {
                    p.pos -= 1;
                    return Err(p.unexpected("`->`"));
                }
                operand_any(&mut p)?;
                p.expect_sym(';')?;
                if !warned_measure {
                    log::warn!("line {line}: measurements are ignored");
                    warned_measure = true;
                }
            }
            "barrier" => {
                operand_any(&mut p)?;
                while p.eat_sym(',') {
                    operand_any(&mut p)?;
                }
                p.expect_sym(';')?;
            }
            name => {
                let Some((params, arity)) = gate_shape(name) else {
                    return Err(Error::Parse {
                        line,
                        column,
                        message: format!("unknown or unsupported gate `{name}`"),
                    });
                };
                let mut param = 0.0;
                if params > 0 {
                    p.expect_sym('(')?;
                    param = p.expr()?;
                    p.expect_sym(')')?;
                }
                let Some(reg) = qreg.as_ref() else {
                    return Err(Error::Semantic {
                        line,
                        column,
                        message: "gate applied before any qreg declaration".into(),
                    });
                };
                let mut qubits = Vec::with_capacity(arity);
                for k in 0..arity {
                    if k > 0 {
                        p.expect_sym(',')?;
                    }
                    let (ql, qc) = p.here();
                    let reg_name = p.ident()?;
                    p.expect_sym('[')?;
                    let idx = p.int()?;
                    p.expect_sym(']')?;
                    let semantic = |message: String| Error::Semantic {
                        line: ql,
                        column: qc,
                        message,
                    };
                    if reg_name != reg.name {
                        return Err(semantic(format!("unknown quantum register `{reg_name}`")));
                    }
                    if idx >= reg.size as u64 {
                        return Err(semantic(format!(
                            "qubit index {idx} out of range for `{}[{}]`",
                            reg.name, reg.size
                        )));
                    }
                    if qubits.contains(&(idx as u32)) {
                        return Err(semantic(format!("qubit {idx} used twice in one gate")));
                    }
                    qubits.push(idx as u32);
                }
                p.expect_sym(';')?;
                circuit.push(Gate {
                    op: gate_op(name, param),
                    qubits,
                });
            }
        }
    }
    if qreg.is_none() {
        return Err(p.error("no quantum register declared"));
    }
    Ok(circuit)
}

/// `name` or `name[index]`, without checks; used where operands are ignored.
fn operand_any(p: &mut Parser) -> Result<()> {
    p.ident()?;
    if p.eat_sym('[') {
        p.int()?;
        p.expect_sym(']')?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    const BELL: &str = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\nh q[0];\ncx q[0],q[1];\n";

    #[test]
    fn bell_circuit() {
        let c = parse_qasm(BELL).unwrap();
        assert_eq!(c.n, 2);
        assert_eq!(c.gates, vec![Gate::single(GateOp::H, 0), Gate::cx(0, 1)]);
        let specs = c.gates[1].specs();
        assert_eq!(specs[0].target, 1);
        assert_eq!(specs[0].controls[0].qubit, 0);
    }

    #[test]
    fn controlled_phase_angle() {
        let c = parse_qasm("OPENQASM 2.0;\nqreg q[2];\ncp(pi/4) q[1],q[0];").unwrap();
        let spec = &c.gates[0].specs()[0];
        let expected = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        assert!((spec.base[3] - expected).norm() < 1e-15);
        assert_eq!(spec.target, 0);
    }

    #[test]
    fn angle_expressions() {
        let c =
            parse_qasm("OPENQASM 2.0;\nqreg q[1];\nrz(3*pi/4) q[0];\nrx(-pi/2+0.5) q[0];\nry(.25e1) q[0];").unwrap();
        assert_eq!(c.gates[0].op, GateOp::Rz(3.0 * PI / 4.0));
        assert_eq!(c.gates[1].op, GateOp::Rx(-PI / 2.0 + 0.5));
        assert_eq!(c.gates[2].op, GateOp::Ry(2.5));
    }

    #[test]
    fn semantic_errors() {
        let e = parse_qasm("OPENQASM 2.0;\nqreg q[4];\nh q[5];").unwrap_err();
        assert!(matches!(e, Error::Semantic { line: 3, column: 3, .. }), "{e}");
        let e = parse_qasm("OPENQASM 2.0;\nqreg q[4];\nh r[1];").unwrap_err();
        assert!(matches!(e, Error::Semantic { .. }));
        let e = parse_qasm("OPENQASM 2.0;\nqreg q[4];\ncx q[1],q[1];").unwrap_err();
        assert!(matches!(e, Error::Semantic { .. }));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = parse_qasm("OPENQASM 2.0;\nqreg q[2];\nfoo q[0];").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, column: 1, .. }), "{e}");
        let e = parse_qasm("OPENQASM 2.0;\nqreg q[2];\nqreg r[2];").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = parse_qasm("OPENQASM 2.0;\nqreg q[2];\nh q[0]").unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
        let e = parse_qasm("qreg q[2];").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, column: 1, .. }));
    }

    #[test]
    fn measurements_and_barriers_are_skipped() {
        let text =
            "OPENQASM 2.0;\nqreg q[2];\ncreg c[2];\nh q[0];\nbarrier q;\nmeasure q[0] -> c[0];\nmeasure q -> c;\n";
        let c = parse_qasm(text).unwrap();
        assert_eq!(c.gates.len(), 1);
    }

    #[test]
    fn swap_counts_once() {
        let c = parse_qasm("OPENQASM 2.0;\nqreg q[3];\nswap q[0],q[2];\nccx q[0],q[1],q[2];").unwrap();
        assert_eq!(c.gate_count(), 2);
        assert_eq!(c.lowered_gate_count(), 4);
        assert_eq!(c.gates[0].specs().len(), 3);
        assert_eq!(c.gates[1].specs()[0].controls.len(), 2);
    }

    #[test]
    fn serialization() {
        let empty = Circuit::new("empty", 1);
        assert_eq!(circuit_to_qasm(&empty).unwrap(), "OPENQASM 2.0;\nqreg q[1];\n");
        let c = parse_qasm(BELL).unwrap();
        let text = circuit_to_qasm(&c).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert_eq!(parse_qasm(&text).unwrap().gates, c.gates);

        let mut big = Circuit::new("mcx", 4);
        big.push(Gate::controlled(GateOp::X, &[0, 1, 2], 3));
        assert!(matches!(circuit_to_qasm(&big), Err(Error::Serialization(_))));
    }

    #[test]
    fn angles_round_trip_exactly() {
        let mut c = Circuit::new("angles", 2);
        for a in [0.1, 1.0 / 3.0, 1e-17, 123456.789, -2.5] {
            c.push(Gate::single(GateOp::Rz(a), 0));
            c.push(Gate::controlled(GateOp::Phase(a), &[0], 1));
        }
        let back = parse_qasm(&circuit_to_qasm(&c).unwrap()).unwrap();
        assert_eq!(back.gates, c.gates);
    }

    /// Deleting any single token of a valid file must not parse.
    #[test]
    fn token_deletion_is_rejected() {
        let text = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\ncreg c[3];\n\
                    h q[0];\ncx q[0],q[1];\nrz(3*pi/4) q[2];\ncp(pi/8) q[1],q[2];\n\
                    ccx q[0],q[1],q[2];\nswap q[0],q[2];\nbarrier q[0],q[1];\nmeasure q[0] -> c[0];\n";
        let tokens = lex(text).unwrap();
        assert!(parse_qasm(text).is_ok());
        let lines: Vec<&str> = text.lines().collect();
        for t in &tokens {
            let line = lines[t.line - 1];
            let start = t.column - 1;
            let mut mutated: Vec<String> = lines.iter().map(|s| s.to_string()).collect();
            mutated[t.line - 1] = format!("{} {}", &line[..start], &line[start + t.width..]);
            let source = mutated.join("\n");
            match parse_qasm(&source) {
                Err(Error::Parse { line, column, .. }) | Err(Error::Semantic { line, column, .. }) => {
                    assert!(line >= 1 && column >= 1);
                }
                other => panic!("deleting {:?} at {}:{} gave {other:?}", t.tok, t.line, t.column),
            }
        }
    }
}
