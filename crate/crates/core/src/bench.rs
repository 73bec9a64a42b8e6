//! Generators for the benchmark families.
//!
//! Bit strings are written most significant qubit first, so `"110"` on three
//! qubits means `q2 = 1, q1 = 1, q0 = 0` and denotes basis index 6.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::circuit::{Circuit, Gate, GateOp};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Ghz,
    W,
    Bv,
    Qft,
    Qpe,
    Grover,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Ghz,
        Family::W,
        Family::Bv,
        Family::Qft,
        Family::Qpe,
        Family::Grover,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Ghz => "ghz",
            Family::W => "w",
            Family::Bv => "bv",
            Family::Qft => "qft",
            Family::Qpe => "qpe",
            Family::Grover => "grover",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Argument(format!("unknown benchmark `{s}`")))
    }
}

/// Family-specific knobs; `None` selects the default.
#[derive(Clone, Debug, Default)]
pub struct Knobs {
    /// Bernstein-Vazirani secret.
    pub secret: Option<Vec<bool>>,
    /// Phase-estimation numerator `k` of the eigenphase `k / 2^p`.
    pub phase: Option<u64>,
    /// Grover marked element.
    pub marked: Option<Vec<bool>>,
    /// Emit multi-controlled Z gates directly instead of the H-conjugated multi-controlled X.
    pub native_mcz: bool,
}

/// Builds a family instance on `qubits` total qubits.
///
/// Phase estimation uses `qubits - 1` precision qubits and Bernstein-Vazirani
/// `qubits - 1` data qubits; the remaining qubit is the eigenstate or ancilla.
pub fn generate(family: Family, qubits: usize, knobs: &Knobs) -> Result<Circuit> {
    match family {
        Family::Ghz => gen_ghz(qubits),
        Family::W => gen_w(qubits),
        Family::Bv => {
            let data = qubits
                .checked_sub(1)
                .filter(|&d| d > 0)
                .ok_or_else(|| Error::Argument("bv needs at least 2 qubits".into()))?;
            let secret = knobs.secret.clone().unwrap_or_else(|| alternating(data));
            gen_bv(qubits, &secret)
        }
        Family::Qft => gen_qft(qubits),
        Family::Qpe => {
            let p = qubits
                .checked_sub(1)
                .filter(|&p| p > 0)
                .ok_or_else(|| Error::Argument("qpe needs at least 2 qubits".into()))?;
            let k = match knobs.phase {
                Some(k) => k,
                None => bits_to_index(&alternating(p.min(63))),
            };
            gen_qpe(p, k)
        }
        Family::Grover => {
            let marked = knobs.marked.clone().unwrap_or_else(|| alternating(qubits));
            gen_grover(qubits, &marked, knobs.native_mcz)
        }
    }
}

/// `1010…` of length `len`.
pub fn alternating(len: usize) -> Vec<bool> {
    (0..len).map(|i| i % 2 == 0).collect()
}

/// Parses a string of `0`/`1` characters, most significant first.
pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Argument(format!("invalid bit `{other}` in `{s}`"))),
        })
        .collect()
}

/// Basis index of an MSB-first bit string; bits beyond 64 must be zero.
pub fn bits_to_index(bits: &[bool]) -> u64 {
    bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
}

/// GHZ state: H on the top qubit, then a CNOT chain running down the register,
/// each gate controlled by the qubit directly above its target.
pub fn gen_ghz(n: usize) -> Result<Circuit> {
    if n == 0 {
        return Err(Error::Argument("ghz needs at least one qubit".into()));
    }
    let top = n as u32 - 1;
    let mut c = Circuit::new(format!("ghz_{n}"), n);
    c.push(Gate::single(GateOp::H, top));
    for k in (0..top).rev() {
        c.push(Gate::cx(k + 1, k));
    }
    Ok(c)
}

/// W state by a rotation cascade: after `X(q0)`, step `k` moves all but a
/// `1/(n-k+1)` share of the remaining amplitude from `q(k-1)` to `qk` using
/// `ry(a), cx(q(k-1), qk), ry(-a), cx(qk, q(k-1))` with `cos a = sqrt((n-k)/(n-k+1))`.
pub fn gen_w(n: usize) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::Argument("w needs at least 2 qubits".into()));
    }
    let mut c = Circuit::new(format!("w_{n}"), n);
    c.push(Gate::single(GateOp::X, 0));
    for k in 1..n {
        let remaining = (n - k) as f64;
        let half_theta = (remaining / (remaining + 1.0)).sqrt().acos();
        let (prev, cur) = (k as u32 - 1, k as u32);
        c.push(Gate::single(GateOp::Ry(half_theta), cur));
        c.push(Gate::cx(prev, cur));
        c.push(Gate::single(GateOp::Ry(-half_theta), cur));
        c.push(Gate::cx(cur, prev));
    }
    Ok(c)
}

/// Bernstein-Vazirani on `n` qubits: data `q0..q(n-2)`, ancilla `q(n-1)`.
pub fn gen_bv(n: usize, secret: &[bool]) -> Result<Circuit> {
    if n < 2 || secret.len() != n - 1 {
        return Err(Error::Argument(format!(
            "bv on {n} qubits needs a secret of {} bits, got {}",
            n.saturating_sub(1),
            secret.len()
        )));
    }
    let data = n as u32 - 1;
    let ancilla = data;
    let mut c = Circuit::new(format!("bv_{n}"), n);
    c.push(Gate::single(GateOp::X, ancilla));
    c.push(Gate::single(GateOp::H, ancilla));
    for q in 0..data {
        c.push(Gate::single(GateOp::H, q));
    }
    for q in 0..data {
        if secret[(data - 1 - q) as usize] {
            c.push(Gate::cx(q, ancilla));
        }
    }
    for q in 0..data {
        c.push(Gate::single(GateOp::H, q));
    }
    c.push(Gate::single(GateOp::H, ancilla));
    Ok(c)
}

/// QFT mapping `|x⟩` to `2^{-n/2} Σ_y e^{2πi·xy/2^n} |y⟩`.
pub fn gen_qft(n: usize) -> Result<Circuit> {
    if n == 0 {
        return Err(Error::Argument("qft needs at least one qubit".into()));
    }
    let mut c = Circuit::new(format!("qft_{n}"), n);
    qft_into(&mut c, n as u32, false);
    Ok(c)
}

fn qft_into(c: &mut Circuit, n: u32, inverse: bool) {
    let mut body = Vec::new();
    for k in (0..n).rev() {
        body.push(Gate::single(GateOp::H, k));
        for j in (0..k).rev() {
            let angle = PI / f64::powi(2.0, (k - j) as i32);
            body.push(Gate::controlled(GateOp::Phase(angle), &[j], k));
        }
    }
    for i in 0..n / 2 {
        body.push(Gate::swap(i, n - 1 - i));
    }
    if inverse {
        body.reverse();
        for g in &mut body {
            if let GateOp::Phase(a) = g.op {
                g.op = GateOp::Phase(-a);
            }
        }
    }
    c.gates.extend(body);
}

/// Phase estimation with `p` precision qubits `q0..q(p-1)` on the phase gate
/// `diag(1, e^{2πi·k/2^p})` acting on `qp`; ends in `|k⟩ ⊗ |1⟩`.
pub fn gen_qpe(p: usize, k: u64) -> Result<Circuit> {
    if p == 0 || p > 63 {
        return Err(Error::Argument(format!("qpe precision must be 1..=63, got {p}")));
    }
    if k >> p != 0 {
        return Err(Error::Argument(format!("phase numerator {k} needs more than {p} bits")));
    }
    let eigen = p as u32;
    let mut c = Circuit::new(format!("qpe_{}", p + 1), p + 1);
    c.push(Gate::single(GateOp::X, eigen));
    for q in 0..eigen {
        c.push(Gate::single(GateOp::H, q));
    }
    let modulus = 1u128 << p;
    for j in 0..eigen {
        let numerator = ((k as u128) << j) % modulus;
        let angle = 2.0 * PI * numerator as f64 / modulus as f64;
        c.push(Gate::controlled(GateOp::Phase(angle), &[j], eigen));
    }
    qft_into(&mut c, eigen, true);
    Ok(c)
}

/// `⌊(π/4)·√(2^n)⌋`.
pub fn grover_iterations(n: usize) -> u64 {
    (PI / 4.0 * f64::powf(2.0, n as f64 / 2.0)).floor() as u64
}

pub fn gen_grover(n: usize, marked: &[bool], native_mcz: bool) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::Argument("grover needs at least 2 qubits".into()));
    }
    if marked.len() != n {
        return Err(Error::Argument(format!(
            "marked element has {} bits, expected {n}",
            marked.len()
        )));
    }
    let nq = n as u32;
    let mut c = Circuit::new(format!("grover_{n}"), n);
    let all: Vec<u32> = (0..nq).collect();
    let zero_bits: Vec<u32> = (0..nq).filter(|&q| !marked[(nq - 1 - q) as usize]).collect();
    let layer = |c: &mut Circuit, op: GateOp, qs: &[u32]| {
        for &q in qs {
            c.push(Gate::single(op, q));
        }
    };
    let controls: Vec<u32> = (1..nq).collect();
    let mcz = |c: &mut Circuit| {
        if native_mcz {
            c.push(Gate::controlled(GateOp::Z, &controls, 0));
        } else {
            c.push(Gate::single(GateOp::H, 0));
            c.push(Gate::controlled(GateOp::X, &controls, 0));
            c.push(Gate::single(GateOp::H, 0));
        }
    };
    layer(&mut c, GateOp::H, &all);
    for _ in 0..grover_iterations(n) {
        layer(&mut c, GateOp::X, &zero_bits);
        mcz(&mut c);
        layer(&mut c, GateOp::X, &zero_bits);
        layer(&mut c, GateOp::H, &all);
        layer(&mut c, GateOp::X, &all);
        mcz(&mut c);
        layer(&mut c, GateOp::X, &all);
        layer(&mut c, GateOp::H, &all);
    }
    Ok(c)
}
