#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;
use qdd::circuit::Circuit;
use qdd::gates::{self, Base};
use qdd::{Control, GateSpec};

pub type Dense = Vec<Complex64>;
pub type DenseMatrix = Vec<Vec<Complex64>>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Applies one gate to a dense amplitude vector, qubit `k` being bit `k` of the index.
pub fn dense_apply(state: &[Complex64], spec: &GateSpec) -> Dense {
    let t = spec.target as usize;
    let mut next = state.to_vec();
    for (idx, amp) in next.iter_mut().enumerate() {
        let active = spec.controls.iter().all(|c| ((idx >> c.qubit) & 1 == 1) == c.positive);
        if !active {
            continue;
        }
        let bit = (idx >> t) & 1;
        let i0 = idx & !(1 << t);
        let i1 = idx | (1 << t);
        *amp = spec.base[2 * bit] * state[i0] + spec.base[2 * bit + 1] * state[i1];
    }
    next
}

pub fn dense_statevector(circuit: &Circuit) -> Dense {
    let mut state = vec![c(0.0, 0.0); 1 << circuit.n];
    state[0] = c(1.0, 0.0);
    for g in &circuit.gates {
        for spec in g.specs() {
            state = dense_apply(&state, &spec);
        }
    }
    state
}

/// Circuit unitary, built column by column from the images of basis states.
pub fn dense_unitary(circuit: &Circuit) -> DenseMatrix {
    let dim = 1 << circuit.n;
    let mut u = vec![vec![c(0.0, 0.0); dim]; dim];
    for col in 0..dim {
        let mut state = vec![c(0.0, 0.0); dim];
        state[col] = c(1.0, 0.0);
        for g in &circuit.gates {
            for spec in g.specs() {
                state = dense_apply(&state, &spec);
            }
        }
        for row in 0..dim {
            u[row][col] = state[row];
        }
    }
    u
}

pub fn max_deviation(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn base_gate() -> impl Strategy<Value = Base> {
    prop_oneof![
        Just(gates::X),
        Just(gates::Y),
        Just(gates::Z),
        Just(gates::H),
        Just(gates::S),
        Just(gates::T),
        Just(gates::TDG),
        (-3.2f64..3.2).prop_map(gates::rx),
        (-3.2f64..3.2).prop_map(gates::ry),
        (-3.2f64..3.2).prop_map(gates::phase),
    ]
}

/// A valid gate on `n` qubits with up to two controls of either polarity.
pub fn gate_spec(n: usize) -> impl Strategy<Value = GateSpec> {
    let n = n as u32;
    (
        base_gate(),
        0..n,
        proptest::collection::vec((0..n, any::<bool>()), 0..3),
    )
        .prop_map(move |(base, target, raw)| {
            let mut spec = GateSpec::new(base, target);
            for (q, positive) in raw {
                if q != target && spec.controls.iter().all(|c| c.qubit != q) {
                    spec = spec.with_control(if positive { Control::pos(q) } else { Control::neg(q) });
                }
            }
            spec
        })
}

/// One step of a randomized construction sequence over a small pool of states.
#[derive(Clone, Debug)]
pub enum Op {
    /// Push a basis state.
    Basis(u64),
    /// Push a state built from (mostly sparse) dense amplitudes.
    Dense(Vec<Option<(f64, f64)>>),
    /// Apply a gate to a pool entry and push the result.
    Apply(proptest::sample::Index, GateSpec),
    /// Push the sum of two pool entries, unless its norm grows too large.
    Add(proptest::sample::Index, proptest::sample::Index),
    /// Left-multiply the running operator by a gate.
    Compose(GateSpec),
    Drop(proptest::sample::Index),
    Collect,
}

pub fn op(n: usize) -> impl Strategy<Value = Op> {
    use proptest::sample::Index;
    let amp = proptest::option::weighted(0.3, (-1.0f64..1.0, -1.0f64..1.0));
    prop_oneof![
        2 => (0..1u64 << n).prop_map(Op::Basis),
        1 => proptest::collection::vec(amp, 1 << n).prop_map(Op::Dense),
        6 => (any::<Index>(), gate_spec(n)).prop_map(|(i, s)| Op::Apply(i, s)),
        2 => (any::<Index>(), any::<Index>()).prop_map(|(i, j)| Op::Add(i, j)),
        2 => gate_spec(n).prop_map(Op::Compose),
        1 => any::<Index>().prop_map(Op::Drop),
        1 => Just(Op::Collect),
    ]
}

/// Final contents of a sequence run.
#[derive(Debug, PartialEq)]
pub struct Trace {
    pub states: Vec<Dense>,
    pub operator: DenseMatrix,
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub mode: qdd::Mode,
    /// Force a collection after every step and check that nothing referenced changed.
    pub force_gc: bool,
    pub memoize: bool,
}

const POOL: usize = 8;

fn dense_of(engine: &qdd::Engine, pool: &[qdd::VectorEdge], u: qdd::MatrixEdge, n: usize) -> Trace {
    Trace {
        states: pool.iter().map(|&s| engine.to_dense_vector(s, n).unwrap()).collect(),
        operator: engine.to_dense_matrix(u, n).unwrap(),
    }
}

fn push(engine: &mut qdd::Engine, pool: &mut Vec<qdd::VectorEdge>, s: qdd::VectorEdge) {
    engine.inc_ref(s);
    pool.push(s);
    if pool.len() > POOL {
        let old = pool.remove(0);
        engine.dec_ref(old);
    }
}

/// Every stored vector node has unit 2-norm over its successor weights and a
/// real positive first nonzero weight.
pub fn check_vector_normalization(engine: &qdd::Engine) {
    for id in engine.stored_nodes::<qdd::Vector>() {
        let succ = engine.successors::<qdd::Vector>(id);
        let w: Vec<Complex64> = succ.iter().map(|e| engine.weights().value(e.weight)).collect();
        let norm2 = w[0].norm_sqr() + w[1].norm_sqr();
        assert!((norm2 - 1.0).abs() < 1e-9, "node {id:?} has local norm {norm2}");
        let first = if succ[0].is_zero() { w[1] } else { w[0] };
        assert!(
            first.re > 0.0 && first.im.abs() < 1e-12,
            "node {id:?} leads with {first}"
        );
    }
}

/// Runs `ops` on `n` qubits, checking store invariants after every step.
pub fn run_sequence(ops: &[Op], n: usize, opts: RunOptions) -> Trace {
    use qdd::{Engine, EngineConfig};

    let mut config = EngineConfig::new(opts.mode);
    if !opts.memoize {
        config.compute_table_capacity = 0;
    }
    if !opts.force_gc {
        config.gc_threshold = usize::MAX;
    }
    let mut engine = Engine::with_config(config);
    let top = n as u32 - 1;
    let mut pool: Vec<qdd::VectorEdge> = Vec::new();
    let zero = engine.make_zero_state(n).unwrap();
    push(&mut engine, &mut pool, zero);
    let mut u = engine.identity_dd(top as i32);
    engine.inc_ref(u);

    for (step, op) in ops.iter().enumerate() {
        match op {
            Op::Basis(index) => {
                let s = engine.make_basis_state_index(n, *index).unwrap();
                let mut via_gates = engine.make_zero_state(n).unwrap();
                for q in 0..n as u32 {
                    if index >> q & 1 == 1 {
                        let x = engine.make_gate_dd(&GateSpec::new(gates::X, q), n).unwrap();
                        via_gates = engine.multiply_mv(x, via_gates, top).unwrap();
                    }
                }
                assert_eq!(s, via_gates, "basis state {index} built two ways");
                push(&mut engine, &mut pool, s);
            }
            Op::Dense(raw) => {
                let mut amps: Dense = raw
                    .iter()
                    .map(|a| a.map_or(c(0.0, 0.0), |(re, im)| c(re, im)))
                    .collect();
                let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
                if norm < 1e-3 {
                    continue;
                }
                amps.iter_mut().for_each(|a| *a /= norm);
                let s = engine.vector_from_dense(&amps).unwrap();
                let again = engine.vector_from_dense(&amps).unwrap();
                assert_eq!(s, again, "rebuilding a dense vector");
                push(&mut engine, &mut pool, s);
            }
            Op::Apply(i, spec) => {
                let s = *i.get(&pool);
                let g = engine.make_gate_dd(spec, n).unwrap();
                assert_eq!(g, engine.make_gate_dd(spec, n).unwrap(), "rebuilding {spec:?}");
                let next = engine.multiply_mv(g, s, top).unwrap();
                let norm2 = engine.vnorm2(next) / engine.vnorm2(s);
                assert!((norm2 - 1.0).abs() < 1e-9, "gate changed the norm by {norm2}");
                push(&mut engine, &mut pool, next);
            }
            Op::Add(i, j) => {
                let sum = engine.add_vectors(*i.get(&pool), *j.get(&pool), top).unwrap();
                if !sum.is_zero() && engine.vnorm2(sum) <= 4.0 {
                    push(&mut engine, &mut pool, sum);
                }
            }
            Op::Compose(spec) => {
                let g = engine.make_gate_dd(spec, n).unwrap();
                let next = engine.multiply_mm(g, u, top).unwrap();
                engine.inc_ref(next);
                engine.dec_ref(u);
                u = next;
            }
            Op::Drop(i) => {
                if pool.len() > 1 {
                    let s = pool.remove(i.index(pool.len()));
                    engine.dec_ref(s);
                }
            }
            Op::Collect => {
                if opts.force_gc {
                    engine.collect_garbage(true);
                }
            }
        }
        // Without collections the store only grows, so scan it now and then.
        let scan = opts.force_gc || step % 64 == 63 || step + 1 == ops.len();
        if scan && opts.mode == qdd::Mode::New {
            assert!(
                engine.identity_shaped_nodes().is_empty(),
                "identity node stored after {op:?}"
            );
        }
        if opts.force_gc {
            let before = dense_of(&engine, &pool, u, n);
            engine.collect_garbage(true);
            assert_eq!(
                before,
                dense_of(&engine, &pool, u, n),
                "collection changed a live diagram"
            );
        } else if scan {
            let stats = engine.stats();
            assert_eq!(
                stats.matrix.nodes_created as usize,
                engine.stored_nodes::<qdd::Matrix>().len()
            );
            assert_eq!(
                stats.vector.nodes_created as usize,
                engine.stored_nodes::<qdd::Vector>().len()
            );
        }
    }
    check_vector_normalization(&engine);

    let trace = dense_of(&engine, &pool, u, n);
    for s in pool.drain(..) {
        engine.dec_ref(s);
    }
    engine.dec_ref(u);
    engine.collect_garbage(true);
    assert!(
        engine.stored_nodes::<qdd::Vector>().is_empty(),
        "vector nodes outlive their roots"
    );
    assert!(
        engine.stored_nodes::<qdd::Matrix>().is_empty(),
        "matrix nodes outlive their roots"
    );
    trace
}

/// Deterministic sequence of `len` operations.
pub fn fixed_sequence(n: usize, len: usize) -> Vec<Op> {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::TestRunner;
    let mut runner = TestRunner::deterministic();
    proptest::collection::vec(op(n), len)
        .new_tree(&mut runner)
        .unwrap()
        .current()
}
