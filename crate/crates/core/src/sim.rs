//! Simulation drivers and their reports, including DOT export.

use std::fmt::Write as _;
use std::time::Instant;

use num_complex::Complex64;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::bench::{self, Family, Knobs};
use crate::circuit::Circuit;
use crate::engine::{Engine, EngineConfig, Mode};
use crate::error::{Error, Result};
use crate::store::{Edge, Kind, MatrixEdge, NodeId, VectorEdge};
use crate::weights::WEIGHT_TOLERANCE;
use crate::ENGINE_VERSION;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SimKind {
    Statevector,
    Unitary,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AmplitudeSample {
    pub index: u64,
    pub re: f64,
    pub im: f64,
}

/// Counters of one simulation run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimReport {
    pub benchmark: String,
    pub n: usize,
    /// Gate count with swaps counted once.
    pub gates: usize,
    /// Gate DDs actually applied (swaps lowered to three CNOTs).
    pub applied_gates: usize,
    pub mode: Mode,
    pub kind: SimKind,
    pub wall_time_seconds: f64,
    pub matrix_nodes_created: u64,
    pub vector_nodes_created: u64,
    pub peak_live_nodes: usize,
    /// Collections of the operator table.
    pub gc_runs: u64,
    pub vector_gc_runs: u64,
    pub unique_table_lookups: u64,
    pub ct_hit_rate: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub amplitudes: Vec<AmplitudeSample>,
}

impl SimReport {
    fn new(circuit: &Circuit, engine: &Engine, kind: SimKind, seconds: f64) -> Self {
        let stats = engine.stats();
        SimReport {
            benchmark: circuit.name.clone(),
            n: circuit.n,
            gates: circuit.gate_count(),
            applied_gates: circuit.lowered_gate_count(),
            mode: engine.mode(),
            kind,
            wall_time_seconds: seconds,
            matrix_nodes_created: stats.matrix.nodes_created,
            vector_nodes_created: stats.vector.nodes_created,
            peak_live_nodes: stats.peak_live,
            gc_runs: stats.matrix.gc_runs,
            vector_gc_runs: stats.vector.gc_runs,
            unique_table_lookups: stats.matrix.lookups + stats.vector.lookups,
            ct_hit_rate: stats.ct_hit_rate(),
            amplitudes: Vec::new(),
        }
    }

    /// Records amplitudes of `state` at the given basis indices.
    pub fn sample(&mut self, engine: &Engine, state: VectorEdge, indices: &[u64]) -> Result<()> {
        for &index in indices {
            let a = engine.amplitude(state, index)?;
            self.amplitudes.push(AmplitudeSample {
                index,
                re: a.re,
                im: a.im,
            });
        }
        Ok(())
    }

    /// The report as the stats-file JSON object.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Stats<'a> {
            #[serde(flatten)]
            report: &'a SimReport,
            engine_version: &'static str,
            epsilon_w: f64,
        }
        serde_json::to_value(Stats {
            report: self,
            engine_version: ENGINE_VERSION,
            epsilon_w: WEIGHT_TOLERANCE,
        })
        .expect("report serializes")
    }
}

fn check_circuit(circuit: &Circuit) -> Result<()> {
    if circuit.n == 0 {
        return Err(Error::Argument("circuit has no qubits".into()));
    }
    circuit.validate()?;
    for g in &circuit.gates {
        for spec in g.specs() {
            spec.validate(circuit.n)?;
        }
    }
    Ok(())
}

/// Applies `circuit` to `|0…0⟩`.
pub fn simulate_statevector(engine: &mut Engine, circuit: &Circuit) -> Result<(VectorEdge, SimReport)> {
    let start = engine.make_zero_state(circuit.n)?;
    simulate_statevector_from(engine, circuit, start)
}

/// Applies `circuit` to `initial`, which must span all `circuit.n` levels.
///
/// The returned state keeps one reference; release it with
/// [`Engine::dec_ref`] once it is no longer needed.
pub fn simulate_statevector_from(
    engine: &mut Engine,
    circuit: &Circuit,
    initial: VectorEdge,
) -> Result<(VectorEdge, SimReport)> {
    check_circuit(circuit)?;
    let top = circuit.n as u32 - 1;
    if engine.edge_level(initial) != top as i32 {
        return Err(Error::Structural(format!(
            "initial state is rooted at level {}, expected {top}",
            engine.edge_level(initial)
        )));
    }
    let clock = Instant::now();
    let mut state = initial;
    engine.inc_ref(state);
    for g in &circuit.gates {
        for spec in g.specs() {
            let gate = engine.make_gate_dd(&spec, circuit.n)?;
            engine.inc_ref(gate);
            let next = engine.multiply_mv(gate, state, top)?;
            engine.inc_ref(next);
            engine.dec_ref(state);
            engine.dec_ref(gate);
            state = next;
            engine.collect_garbage(false);
        }
    }
    let seconds = clock.elapsed().as_secs_f64();
    let report = SimReport::new(circuit, engine, SimKind::Statevector, seconds);
    Ok((state, report))
}

/// Builds the operator of `circuit` by left-multiplying gate DDs onto the identity.
///
/// Like [`simulate_statevector_from`], the result keeps one reference.
pub fn simulate_unitary(engine: &mut Engine, circuit: &Circuit) -> Result<(MatrixEdge, SimReport)> {
    check_circuit(circuit)?;
    let top = circuit.n as u32 - 1;
    let clock = Instant::now();
    let mut u = engine.identity_dd(top as i32);
    engine.inc_ref(u);
    for g in &circuit.gates {
        for spec in g.specs() {
            let gate = engine.make_gate_dd(&spec, circuit.n)?;
            engine.inc_ref(gate);
            let next = engine.multiply_mm(gate, u, top)?;
            engine.inc_ref(next);
            engine.dec_ref(u);
            engine.dec_ref(gate);
            u = next;
            engine.collect_garbage(false);
        }
    }
    let seconds = clock.elapsed().as_secs_f64();
    let report = SimReport::new(circuit, engine, SimKind::Unitary, seconds);
    Ok((u, report))
}

/// Both modes side by side.
#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub legacy: SimReport,
    pub new: SimReport,
    /// Largest absolute difference between corresponding amplitudes or entries.
    pub max_deviation: f64,
}

impl Comparison {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "legacy": self.legacy.to_json(),
            "new": self.new.to_json(),
            "max_deviation": self.max_deviation,
        })
    }
}

/// Simulates `circuit` in both modes and measures the largest deviation.
///
/// The legacy result is rebuilt inside the new-mode engine and subtracted
/// there, so the deviation is exact over all `2^n` amplitudes.
pub fn compare(circuit: &Circuit, kind: SimKind, samples: &[u64]) -> Result<Comparison> {
    let mut legacy = Engine::new(Mode::Legacy);
    let mut new = Engine::new(Mode::New);
    let top = circuit.n as u32 - 1;
    let (legacy_report, new_report, max_deviation) = match kind {
        SimKind::Statevector => {
            let (a, mut ra) = simulate_statevector(&mut legacy, circuit)?;
            let (b, mut rb) = simulate_statevector(&mut new, circuit)?;
            ra.sample(&legacy, a, samples)?;
            rb.sample(&new, b, samples)?;
            let dev = vector_deviation(&mut new, b, &legacy, a, top)?;
            (ra, rb, dev)
        }
        SimKind::Unitary => {
            let (a, ra) = simulate_unitary(&mut legacy, circuit)?;
            let (b, rb) = simulate_unitary(&mut new, circuit)?;
            let dev = matrix_deviation(&mut new, b, &legacy, a, top)?;
            (ra, rb, dev)
        }
    };
    Ok(Comparison {
        legacy: legacy_report,
        new: new_report,
        max_deviation,
    })
}

/// Largest amplitude of `b - a`, where `a` lives in `other`.
fn vector_deviation(engine: &mut Engine, b: VectorEdge, other: &Engine, a: VectorEdge, top: u32) -> Result<f64> {
    let a = engine.import_vector(other, a);
    let neg = engine.weights_mut().neg(a.weight);
    let diff = engine.add_vectors(b, a.with_weight(neg), top)?;
    Ok(engine.max_magnitude_vector(diff))
}

fn matrix_deviation(engine: &mut Engine, b: MatrixEdge, other: &Engine, a: MatrixEdge, top: u32) -> Result<f64> {
    let a = engine.import_matrix(other, a);
    let neg = engine.weights_mut().neg(a.weight);
    let diff = engine.add_matrices(b, a.with_weight(neg), top)?;
    Ok(engine.max_magnitude_matrix(diff))
}

/// One row of a benchmark sweep, both modes side by side.
#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub benchmark: Family,
    pub n: usize,
    pub gates: usize,
    pub legacy_time_s: f64,
    pub legacy_nodes: u64,
    pub legacy_gc: u64,
    pub new_time_s: f64,
    pub new_nodes: u64,
    pub new_gc: u64,
    pub speedup: f64,
}

pub fn bench_sweep(family: Family, sizes: &[usize], knobs: &Knobs, kind: SimKind) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let circuit = bench::generate(family, n, knobs)?;
        let run = |mode| -> Result<SimReport> {
            let mut engine = Engine::with_config(EngineConfig::new(mode));
            match kind {
                SimKind::Statevector => simulate_statevector(&mut engine, &circuit).map(|r| r.1),
                SimKind::Unitary => simulate_unitary(&mut engine, &circuit).map(|r| r.1),
            }
        };
        let legacy = run(Mode::Legacy)?;
        let new = run(Mode::New)?;
        log::info!(
            "{family} n={n}: legacy {:.3}s, new {:.3}s",
            legacy.wall_time_seconds,
            new.wall_time_seconds
        );
        rows.push(BenchRow {
            benchmark: family,
            n,
            gates: circuit.gate_count(),
            legacy_time_s: legacy.wall_time_seconds,
            legacy_nodes: legacy.matrix_nodes_created,
            legacy_gc: legacy.gc_runs,
            new_time_s: new.wall_time_seconds,
            new_nodes: new.matrix_nodes_created,
            new_gc: new.gc_runs,
            speedup: if new.wall_time_seconds > 0.0 {
                legacy.wall_time_seconds / new.wall_time_seconds
            } else {
                f64::NAN
            },
        });
    }
    Ok(rows)
}

pub fn rows_to_csv(rows: &[BenchRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Serialization(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Serialization(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Serialization(e.to_string()))
}

fn format_weight(w: Complex64) -> String {
    let clean = |x: f64| if x.abs() < 1e-12 { 0.0 } else { x };
    let (re, im) = (clean(w.re), clean(w.im));
    let num = |x: f64| {
        let s = format!("{x:.4}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        if s == "-0" {
            "0".to_string()
        } else {
            s.to_string()
        }
    };
    match (re == 0.0, im == 0.0) {
        (_, true) => num(re),
        (true, false) => format!("{}i", num(im)),
        (false, false) => format!("{}{}{}i", num(re), if im < 0.0 { "" } else { "+" }, num(im)),
    }
}

/// Graphviz rendering of a diagram: one rank per level, zero edges drawn as
/// dots, edge weights other than 1 as labels.
pub fn export_dot<K: Kind>(engine: &Engine, root: Edge<K>) -> String {
    let mut out = String::from("digraph dd {\n  node [shape=circle, fontsize=10];\n  edge [fontsize=9];\n");
    out.push_str("  root [shape=point, style=invis];\n");
    if root.is_zero() {
        out.push_str("  z0 [shape=point];\n  root -> z0;\n}\n");
        return out;
    }
    let mut names: FxHashMap<NodeId, String> = FxHashMap::default();
    let mut per_level: Vec<Vec<String>> = Vec::new();
    let mut order = Vec::new();
    let mut stack = vec![root.node];
    while let Some(id) = stack.pop() {
        if id.is_sentinel() || names.contains_key(&id) {
            continue;
        }
        let level = engine.level::<K>(id) as usize;
        if per_level.len() <= level {
            per_level.resize_with(level + 1, Vec::new);
        }
        let name = format!("n{level}_{}", per_level[level].len());
        per_level[level].push(name.clone());
        names.insert(id, name);
        order.push(id);
        let succ = engine.successors::<K>(id);
        stack.extend(succ.as_ref().iter().rev().map(|e| e.node));
    }
    let has_terminal = std::iter::once(root)
        .chain(
            order
                .iter()
                .flat_map(|&id| engine.successors::<K>(id).as_ref().to_vec()),
        )
        .any(|e| e.is_terminal());
    for (level, nodes) in per_level.iter().enumerate().rev() {
        if nodes.is_empty() {
            continue;
        }
        let _ = writeln!(out, "  {{ rank=same; {} }}", nodes.join("; "));
        for name in nodes {
            let _ = writeln!(out, "  {name} [label=\"q{level}\"];");
        }
    }
    if has_terminal {
        out.push_str("  t [shape=box, label=\"1\"];\n");
    }
    let target = |e: &Edge<K>| -> String {
        if e.is_terminal() {
            "t".into()
        } else {
            names[&e.node].clone()
        }
    };
    let weight = |e: &Edge<K>| -> Option<String> {
        (!e.weight.is_one()).then(|| format_weight(engine.weights().value(e.weight)))
    };
    match weight(&root) {
        Some(w) => {
            let _ = writeln!(out, "  root -> {} [label=\"{w}\"];", target(&root));
        }
        None => {
            let _ = writeln!(out, "  root -> {};", target(&root));
        }
    }
    let mut stubs = 0usize;
    for id in order {
        let from = &names[&id];
        for (k, e) in engine.successors::<K>(id).as_ref().iter().enumerate() {
            let to = if e.is_zero() {
                let stub = format!("z{stubs}");
                let _ = writeln!(out, "  {stub} [shape=point];");
                stubs += 1;
                stub
            } else {
                target(e)
            };
            match weight(e).filter(|_| !e.is_zero()) {
                Some(w) => {
                    let _ = writeln!(out, "  {from} -> {to} [taillabel=\"{k}\", label=\"{w}\"];");
                }
                None => {
                    let _ = writeln!(out, "  {from} -> {to} [taillabel=\"{k}\"];");
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

/// True when no stored operator node has the identity shape.
pub fn identity_free(engine: &Engine) -> bool {
    engine.identity_shaped_nodes().is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{gen_ghz, gen_qft};
    use crate::circuit::parse_qasm;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    const BELL: &str = "OPENQASM 2.0;\nqreg q[2];\nh q[0];\ncx q[0],q[1];\n";

    #[test]
    fn bell_statevector_in_both_modes() {
        let c = parse_qasm(BELL).unwrap();
        for mode in [Mode::Legacy, Mode::New] {
            let mut e = Engine::new(mode);
            let (s, mut report) = simulate_statevector(&mut e, &c).unwrap();
            let amps = e.to_dense_vector(s, 2).unwrap();
            for (a, x) in amps.iter().zip([FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2]) {
                assert!((a - Complex64::new(x, 0.0)).norm() < 1e-12);
            }
            report.sample(&e, s, &[0, 3]).unwrap();
            assert_eq!(report.amplitudes[1].index, 3);
            assert_eq!(report.gates, 2);
            assert_eq!(report.mode, mode);
        }
    }

    #[test]
    fn bell_unitary() {
        // H on the upper qubit, then CNOT controlled by it
        let c = parse_qasm("OPENQASM 2.0;\nqreg q[2];\nh q[1];\ncx q[1],q[0];\n").unwrap();
        let mut e = Engine::new(Mode::New);
        let (u, _) = simulate_unitary(&mut e, &c).unwrap();
        let r = FRAC_1_SQRT_2;
        let expected = [[r, 0.0, r, 0.0], [0.0, r, 0.0, r], [0.0, r, 0.0, -r], [r, 0.0, -r, 0.0]];
        let dense = e.to_dense_matrix(u, 2).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!((dense[i][j] - Complex64::new(expected[i][j], 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn empty_circuit_is_the_identity_edge() {
        let mut e = Engine::new(Mode::New);
        let (u, report) = simulate_unitary(&mut e, &Circuit::new("empty", 3)).unwrap();
        assert_eq!(u, MatrixEdge::one());
        assert_eq!(report.matrix_nodes_created, 0);
    }

    #[test]
    fn qft_unitary_is_the_dft() {
        let mut e = Engine::new(Mode::New);
        let (u, _) = simulate_unitary(&mut e, &gen_qft(4).unwrap()).unwrap();
        let dense = e.to_dense_matrix(u, 4).unwrap();
        for (y, row) in dense.iter().enumerate() {
            for (x, a) in row.iter().enumerate() {
                let expected = Complex64::from_polar(0.25, 2.0 * PI * (x * y) as f64 / 16.0);
                assert!((a - expected).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn ghz_counts() {
        for n in [16usize, 64] {
            let mut e = Engine::new(Mode::New);
            let (_, r) = simulate_statevector(&mut e, &gen_ghz(n).unwrap()).unwrap();
            assert_eq!(r.matrix_nodes_created, 2 * n as u64 - 1);
            assert_eq!(r.gc_runs, 0);
        }
    }

    #[test]
    fn report_json_is_flat() {
        let mut e = Engine::new(Mode::New);
        let (_, r) = simulate_statevector(&mut e, &gen_ghz(3).unwrap()).unwrap();
        let json = r.to_json();
        assert_eq!(json["matrix_nodes_created"], 5);
        assert_eq!(json["mode"], "new");
        assert_eq!(json["kind"], "statevector");
        assert_eq!(json["epsilon_w"], WEIGHT_TOLERANCE);
        assert!(json.get("amplitudes").is_none());
    }

    #[test]
    fn comparison_of_modes() {
        let cmp = compare(&gen_qft(5).unwrap(), SimKind::Statevector, &[0, 1]).unwrap();
        assert!(cmp.max_deviation <= 1e-10);
        assert!(cmp.new.matrix_nodes_created < cmp.legacy.matrix_nodes_created);
        let cmp = compare(&gen_ghz(4).unwrap(), SimKind::Unitary, &[]).unwrap();
        assert!(cmp.max_deviation <= 1e-10);
    }

    #[test]
    fn deviation_sees_real_differences() {
        let c = |re: f64| Complex64::new(re, 0.0);
        let mut a = Engine::new(Mode::Legacy);
        let mut b = Engine::new(Mode::New);
        let va = a.vector_from_dense(&[c(0.6), c(0.8), c(0.0), c(0.0)]).unwrap();
        let vb = b.vector_from_dense(&[c(0.6), c(0.8 - 3e-9), c(0.0), c(0.0)]).unwrap();
        let dev = vector_deviation(&mut b, vb, &a, va, 1).unwrap();
        assert!((dev - 3e-9).abs() < 1e-12, "{dev}");
        // H and ry(0.1) differ most in entry (1, 1): -1/sqrt2 against cos(0.05).
        let ma = a.make_gate_dd(&crate::GateSpec::new(crate::gates::H, 0), 2).unwrap();
        let mb = b
            .make_gate_dd(&crate::GateSpec::new(crate::gates::ry(0.1), 0), 2)
            .unwrap();
        let dev = matrix_deviation(&mut b, mb, &a, ma, 1).unwrap();
        assert!((dev - (0.05f64.cos() + FRAC_1_SQRT_2)).abs() < 1e-12, "{dev}");
        let same = b.make_gate_dd(&crate::GateSpec::new(crate::gates::H, 0), 2).unwrap();
        assert_eq!(matrix_deviation(&mut b, same, &a, ma, 1).unwrap(), 0.0);
    }

    #[test]
    fn initial_state_must_span_the_register() {
        let mut e = Engine::new(Mode::New);
        let small = e.make_zero_state(2).unwrap();
        let c = gen_ghz(3).unwrap();
        assert!(matches!(
            simulate_statevector_from(&mut e, &c, small),
            Err(Error::Structural(_))
        ));
        let start = e.make_basis_state_index(3, 0b100).unwrap();
        let (s, _) = simulate_statevector_from(&mut e, &c, start).unwrap();
        // H|1> = (|0> - |1>)/sqrt2 on q2, then the CNOT chain copies it down
        assert!((e.amplitude(s, 7).unwrap().re + FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn dot_export() {
        let mut e = Engine::new(Mode::New);
        let (s, _) = simulate_statevector(&mut e, &parse_qasm(BELL).unwrap()).unwrap();
        let dot = export_dot(&e, s);
        assert_eq!(dot.matches("rank=same").count(), 2);
        assert_eq!(dot.matches("label=\"q").count(), 3);
        assert!(dot.contains("t [shape=box"));
        assert!(dot.contains("n1_0 -> n0_0 [taillabel=\"0\", label=\"0.7071\"]"));
        assert_eq!(dot, export_dot(&e, s));

        let cx = e
            .make_gate_dd(&crate::GateSpec::controlled(crate::gates::X, &[1], 0), 2)
            .unwrap();
        let dot = export_dot(&e, cx);
        assert_eq!(dot.matches("rank=same").count(), 2);

        let dot = export_dot(&e, VectorEdge::zero());
        assert!(dot.contains("z0 [shape=point]"));
    }

    #[test]
    fn bench_rows_serialize() {
        let rows = bench_sweep(Family::Ghz, &[4, 8], &Knobs::default(), SimKind::Statevector).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1].new_nodes, 15);
        let csv = rows_to_csv(&rows).unwrap();
        assert!(csv.starts_with("benchmark,n,gates,legacy_time_s"));
        assert_eq!(csv.lines().count(), 3);
    }
}
