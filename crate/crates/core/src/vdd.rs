//! State (vector) decision diagrams.
//!
//! Vector DDs are always full height: a node at level `l` has successors at
//! level `l - 1` (or the terminal at level 0). Nodes are normalized so the
//! successor weights have unit 2-norm and the first non-zero one is real and
//! positive; the factor moves to the incoming edge. The squared norm of a
//! whole state is therefore the squared magnitude of its root weight.

use num_complex::Complex64;
use rustc_hash::FxHashMap;

use crate::deep;
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::store::{Edge, Kind, NodeId, Vector, VectorEdge};
use crate::weights::WeightRef;

impl Engine {
    /// Normalizes and interns a vector node stacking `e0` over `e1`.
    pub fn make_vector_node(&mut self, level: u32, e0: VectorEdge, e1: VectorEdge) -> Result<VectorEdge> {
        for e in [e0, e1] {
            if e.is_zero() {
                continue;
            }
            let child = self.edge_level(e);
            if child != level as i32 - 1 {
                return Err(Error::Structural(format!(
                    "vector successor at level {child} under a level-{level} node"
                )));
            }
        }
        Ok(self.vnode(level, [e0, e1]))
    }

    pub(crate) fn vnode(&mut self, level: u32, succ: [VectorEdge; 2]) -> VectorEdge {
        let [e0, e1] = succ;
        if e0.is_zero() && e1.is_zero() {
            return Edge::zero();
        }
        let v0 = self.weights.value(e0.weight);
        let v1 = self.weights.value(e1.weight);
        let norm = (v0.norm_sqr() + v1.norm_sqr()).sqrt();
        let first = if e0.is_zero() { v1 } else { v0 };
        let factor = first / first.norm() * norm;
        let w0 = self.normalized_weight(e0.weight, v0, factor);
        let w1 = self.normalized_weight(e1.weight, v1, factor);
        let (id, _) = self.find_or_insert::<Vector>(level, [e0.with_weight(w0), e1.with_weight(w1)]);
        let incoming = self.weights.lookup(factor);
        Edge::new(id, incoming)
    }

    fn normalized_weight(&mut self, w: WeightRef, value: Complex64, factor: Complex64) -> WeightRef {
        if w.is_zero() {
            WeightRef::ZERO
        } else {
            self.weights.lookup(value / factor)
        }
    }

    /// Computational basis state `|bits⟩`; `bits[0]` is the most significant qubit.
    pub fn make_basis_state(&mut self, n: usize, bits: &[bool]) -> Result<VectorEdge> {
        if n == 0 || bits.is_empty() {
            return Err(Error::Argument("basis state needs at least one qubit".into()));
        }
        if bits.len() != n {
            return Err(Error::Argument(format!(
                "bitstring has {} bits for {n} qubits",
                bits.len()
            )));
        }
        let mut e = VectorEdge::one();
        for (level, &bit) in bits.iter().rev().enumerate() {
            let succ = if bit { [Edge::zero(), e] } else { [e, Edge::zero()] };
            e = self.vnode(level as u32, succ);
        }
        Ok(e)
    }

    /// `|0…0⟩` on `n` qubits.
    pub fn make_zero_state(&mut self, n: usize) -> Result<VectorEdge> {
        self.make_basis_state(n, &vec![false; n])
    }

    /// Basis state for an integer index (bit `k` of `index` is qubit `k`).
    pub fn make_basis_state_index(&mut self, n: usize, index: u64) -> Result<VectorEdge> {
        if n < 64 && index >> n != 0 {
            return Err(Error::Argument(format!("index {index} out of range for {n} qubits")));
        }
        let bits: Vec<bool> = (0..n).rev().map(|q| q < 64 && (index >> q) & 1 == 1).collect();
        self.make_basis_state(n, &bits)
    }

    /// Amplitude of basis state `index`; bit `k` of `index` selects the branch at level `k`.
    ///
    /// Levels at or above 64 always take the `|0⟩` branch.
    pub fn amplitude(&self, v: VectorEdge, index: u64) -> Result<Complex64> {
        let top = self.edge_level(v);
        if top < 63 && index >> (top + 1) != 0 {
            return Err(Error::Argument(format!(
                "index {index} out of range for a {}-qubit state",
                top + 1
            )));
        }
        let mut e = v;
        let mut amp = self.weights.value(v.weight);
        let mut level = top;
        while level >= 0 {
            if e.is_zero() {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let bit = if level < 64 { (index >> level) & 1 } else { 0 };
            e = self.successors::<Vector>(e.node)[bit as usize];
            amp *= self.weights.value(e.weight);
            level -= 1;
        }
        if e.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(amp)
    }

    /// Squared 2-norm of the represented vector, computed bottom-up.
    pub fn vnorm2(&self, v: VectorEdge) -> f64 {
        if v.is_zero() {
            return 0.0;
        }
        let mut memo = FxHashMap::default();
        self.weights.mag2(v.weight) * self.node_norm2(v.node, &mut memo)
    }

    fn node_norm2(&self, node: NodeId, memo: &mut FxHashMap<NodeId, f64>) -> f64 {
        if node.is_terminal() {
            return 1.0;
        }
        if let Some(&n) = memo.get(&node) {
            return n;
        }
        let succ = self.successors::<Vector>(node);
        let total = deep(|| {
            succ.iter()
                .filter(|e| !e.is_zero())
                .map(|e| self.weights.mag2(e.weight) * self.node_norm2(e.node, memo))
                .sum()
        });
        memo.insert(node, total);
        total
    }

    /// Dense statevector of a state on `n` qubits (index bit `k` = qubit `k`).
    pub fn to_dense_vector(&self, v: VectorEdge, n: usize) -> Result<Vec<Complex64>> {
        if n > 30 {
            return Err(Error::Argument(format!("{n} qubits is too many for a dense vector")));
        }
        if !v.is_zero() && self.edge_level(v) != n as i32 - 1 {
            return Err(Error::Structural(format!(
                "state rooted at level {} is not an {n}-qubit state",
                self.edge_level(v)
            )));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); 1 << n];
        self.fill_dense(v, self.weights.value(v.weight), n, 0, &mut out);
        Ok(out)
    }

    fn fill_dense(&self, e: VectorEdge, acc: Complex64, levels: usize, offset: usize, out: &mut [Complex64]) {
        if e.is_zero() {
            return;
        }
        if levels == 0 {
            out[offset] = acc;
            return;
        }
        let succ = self.successors::<Vector>(e.node);
        let half = 1 << (levels - 1);
        for (bit, s) in succ.iter().enumerate() {
            if !s.is_zero() {
                let w = acc * self.weights.value(s.weight);
                self.fill_dense(*s, w, levels - 1, offset + bit * half, out);
            }
        }
    }

    /// Builds a state DD from a dense vector whose length is a power of two.
    pub fn vector_from_dense(&mut self, amplitudes: &[Complex64]) -> Result<VectorEdge> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Argument(format!(
                "dense vector length {len} is not a power of two ≥ 2"
            )));
        }
        for a in amplitudes {
            if !a.re.is_finite() || !a.im.is_finite() {
                return Err(Error::NumericDomain("non-finite amplitude".into()));
            }
        }
        let n = len.trailing_zeros();
        Ok(self.dense_rec(amplitudes, n))
    }

    fn dense_rec(&mut self, amplitudes: &[Complex64], levels: u32) -> VectorEdge {
        if levels == 0 {
            let w = self.weights.lookup(amplitudes[0]);
            return Edge::terminal(w);
        }
        let (lo, hi) = amplitudes.split_at(amplitudes.len() / 2);
        let e0 = self.dense_rec(lo, levels - 1);
        let e1 = self.dense_rec(hi, levels - 1);
        self.vnode(levels - 1, [e0, e1])
    }

    /// Largest amplitude magnitude over all basis states.
    pub fn max_magnitude_vector(&self, v: VectorEdge) -> f64 {
        if v.is_zero() {
            return 0.0;
        }
        let mut memo = FxHashMap::default();
        self.weights.value(v.weight).norm() * self.max_path::<Vector>(v.node, &mut memo)
    }

    pub(crate) fn max_path<K: Kind>(&self, node: NodeId, memo: &mut FxHashMap<NodeId, f64>) -> f64 {
        if node.is_terminal() {
            return 1.0;
        }
        if let Some(&m) = memo.get(&node) {
            return m;
        }
        let succ = self.successors::<K>(node);
        let best = deep(|| {
            succ.as_ref()
                .iter()
                .filter(|e| !e.is_zero())
                .map(|e| self.weights.value(e.weight).norm() * self.max_path::<K>(e.node, memo))
                .fold(0.0, f64::max)
        });
        memo.insert(node, best);
        best
    }

    /// Rebuilds a state DD owned by another engine inside this one.
    pub fn import_vector(&mut self, source: &Engine, v: VectorEdge) -> VectorEdge {
        let mut memo = FxHashMap::default();
        let inner = self.import_vector_rec(source, v.node, &mut memo);
        let w = self.weights.lookup(source.weights.value(v.weight));
        let w = self.weights.mul(inner.weight, w);
        inner.with_weight(w)
    }

    fn import_vector_rec(
        &mut self,
        source: &Engine,
        node: NodeId,
        memo: &mut FxHashMap<NodeId, VectorEdge>,
    ) -> VectorEdge {
        if node.is_sentinel() {
            return Edge::new(node, WeightRef::ONE);
        }
        if let Some(&e) = memo.get(&node) {
            return e;
        }
        let level = source.level::<Vector>(node) as u32;
        let succ = source.successors::<Vector>(node);
        let mut out = [Edge::zero(); 2];
        for (slot, s) in out.iter_mut().zip(succ) {
            if s.is_zero() {
                continue;
            }
            let child = deep(|| self.import_vector_rec(source, s.node, memo));
            let w = self.weights.lookup(source.weights.value(s.weight));
            let w = self.weights.mul(child.weight, w);
            *slot = child.with_weight(w);
        }
        let e = self.vnode(level, out);
        memo.insert(node, e);
        e
    }
}
