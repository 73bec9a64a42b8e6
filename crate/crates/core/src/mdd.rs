//! Operator (matrix) decision diagrams.
//!
//! A matrix node has four successors in quadrant order
//! `[top-left, top-right, bottom-left, bottom-right]`. Nodes are normalized by
//! dividing all four weights by the first weight of maximal magnitude, so an
//! identity level always shows up in the exact form `[e, 0, 0, e]` with
//! `e.weight == ONE`.
//!
//! In [`Mode::New`] such nodes are never stored: [`Engine::make_matrix_node`]
//! returns the first successor instead, and an edge from conceptual level `l`
//! to a node at level `k < l` means `I ⊗ M` with the identity acting on the
//! skipped levels. The terminal edge is therefore the (scaled) identity of any
//! size.

use num_complex::Complex64;
use rustc_hash::FxHashMap;

use crate::deep;
use crate::engine::{Engine, Mode};
use crate::error::{Error, Result};
use crate::gates::{self, Base};
use crate::store::{Edge, Matrix, MatrixEdge, NodeId, OpTag};
use crate::weights::WeightRef;

/// A control qubit; `positive` controls fire on `|1⟩`, negative ones on `|0⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Control {
    pub qubit: u32,
    pub positive: bool,
}

impl Control {
    pub fn pos(qubit: u32) -> Self {
        Control { qubit, positive: true }
    }

    pub fn neg(qubit: u32) -> Self {
        Control { qubit, positive: false }
    }
}

/// A 2×2 unitary on `target`, optionally conditioned on control qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct GateSpec {
    pub base: Base,
    pub target: u32,
    pub controls: Vec<Control>,
}

/// Tolerance for the unitarity check on gate bases.
pub const UNITARITY_TOLERANCE: f64 = 1e-10;

impl GateSpec {
    pub fn new(base: Base, target: u32) -> Self {
        GateSpec {
            base,
            target,
            controls: Vec::new(),
        }
    }

    pub fn controlled(base: Base, controls: &[u32], target: u32) -> Self {
        GateSpec {
            base,
            target,
            controls: controls.iter().copied().map(Control::pos).collect(),
        }
    }

    pub fn with_control(mut self, control: Control) -> Self {
        self.controls.push(control);
        self
    }

    /// Checks indices against an `n`-qubit register and the base for unitarity.
    pub fn validate(&self, n: usize) -> Result<()> {
        let in_range = |q: u32| (q as usize) < n;
        if !in_range(self.target) {
            return Err(Error::Argument(format!(
                "target qubit {} out of range for {n} qubits",
                self.target
            )));
        }
        let mut seen = vec![self.target];
        for c in &self.controls {
            if !in_range(c.qubit) {
                return Err(Error::Argument(format!(
                    "control qubit {} out of range for {n} qubits",
                    c.qubit
                )));
            }
            if seen.contains(&c.qubit) {
                return Err(Error::Argument(format!(
                    "qubit {} used more than once in one gate",
                    c.qubit
                )));
            }
            seen.push(c.qubit);
        }
        if self.base.iter().any(|u| !u.re.is_finite() || !u.im.is_finite()) {
            return Err(Error::NumericDomain("gate matrix has non-finite entries".into()));
        }
        let err = gates::unitarity_error(&self.base);
        if err > UNITARITY_TOLERANCE {
            return Err(Error::NumericDomain(format!(
                "gate matrix is not unitary (deviation {err:.3e})"
            )));
        }
        Ok(())
    }

    fn control_at(&self, qubit: u32) -> Option<bool> {
        self.controls.iter().find(|c| c.qubit == qubit).map(|c| c.positive)
    }
}

/// True iff the (normalized) tuple is `[e, 0, 0, e]` with unit weights.
pub fn resembles_identity(succ: &[MatrixEdge; 4]) -> bool {
    succ[1].is_zero() && succ[2].is_zero() && succ[0] == succ[3] && succ[0].weight.is_one()
}

impl Engine {
    /// Normalizes `succ` and returns the canonical edge for it.
    ///
    /// In [`Mode::New`] a node that resembles the identity is not stored; its
    /// first successor is returned with the normalization factor applied.
    pub fn make_matrix_node(&mut self, level: u32, succ: [MatrixEdge; 4]) -> Result<MatrixEdge> {
        for e in &succ {
            if e.is_zero() {
                continue;
            }
            let child = self.edge_level(*e);
            if child >= level as i32 {
                return Err(Error::Structural(format!(
                    "matrix successor at level {child} under a level-{level} node"
                )));
            }
        }
        Ok(self.mnode(level, succ))
    }

    pub(crate) fn mnode(&mut self, level: u32, succ: [MatrixEdge; 4]) -> MatrixEdge {
        let values = succ.map(|e| self.weights.value(e.weight));
        let mags = values.map(|v| v.norm());
        let max = mags.iter().copied().fold(0.0, f64::max);
        if succ.iter().all(|e| e.is_zero()) {
            return Edge::zero();
        }
        let tol = self.weights.tolerance();
        let pivot = mags
            .iter()
            .position(|&m| m >= max - tol)
            .expect("non-empty successor tuple");
        let factor = values[pivot];
        let mut normalized = succ;
        for (i, e) in normalized.iter_mut().enumerate() {
            if e.is_zero() {
                continue;
            }
            let w = if i == pivot {
                WeightRef::ONE
            } else {
                self.weights.lookup(values[i] / factor)
            };
            *e = e.with_weight(w);
        }
        let incoming = self.weights.lookup(factor);
        if self.config.mode == Mode::New && resembles_identity(&normalized) {
            let skip = normalized[0];
            let w = self.weights.mul(skip.weight, incoming);
            return skip.with_weight(w);
        }
        let (id, _) = self.find_or_insert::<Matrix>(level, normalized);
        Edge::new(id, incoming)
    }

    /// Identity on levels `top..=0`: the terminal edge in new mode, an explicit chain in legacy mode.
    pub fn identity_dd(&mut self, top: i32) -> MatrixEdge {
        let mut e = MatrixEdge::one();
        if self.config.mode == Mode::Legacy {
            for level in 0..=top {
                e = self.mnode(level as u32, [e, Edge::zero(), Edge::zero(), e]);
            }
        }
        e
    }

    /// Operator DD of `spec` on an `n`-qubit register.
    ///
    /// In new mode only the target and control levels get nodes, so the
    /// result does not depend on `n`; in legacy mode the result spans every
    /// level up to `n - 1`.
    pub fn make_gate_dd(&mut self, spec: &GateSpec, n: usize) -> Result<MatrixEdge> {
        spec.validate(n)?;
        let legacy = self.config.mode == Mode::Legacy;
        let target = spec.target;
        let mut em: [MatrixEdge; 4] = [Edge::zero(); 4];
        for (e, u) in em.iter_mut().zip(spec.base) {
            let w = self.weights.lookup(u);
            *e = Edge::terminal(w);
        }

        let mut below: Vec<u32> = if legacy {
            (0..target).collect()
        } else {
            spec.controls.iter().map(|c| c.qubit).filter(|&q| q < target).collect()
        };
        below.sort_unstable();
        for z in below {
            match spec.control_at(z) {
                Some(positive) => {
                    let ident = self.identity_dd(z as i32 - 1);
                    for (i, e) in em.iter_mut().enumerate() {
                        let inactive = if i == 0 || i == 3 { ident } else { Edge::zero() };
                        *e = if positive {
                            self.mnode(z, [inactive, Edge::zero(), Edge::zero(), *e])
                        } else {
                            self.mnode(z, [*e, Edge::zero(), Edge::zero(), inactive])
                        };
                    }
                }
                None => {
                    for e in em.iter_mut() {
                        *e = self.mnode(z, [*e, Edge::zero(), Edge::zero(), *e]);
                    }
                }
            }
        }

        let mut e = self.mnode(target, em);

        let mut above: Vec<u32> = if legacy {
            (target + 1..n as u32).collect()
        } else {
            spec.controls.iter().map(|c| c.qubit).filter(|&q| q > target).collect()
        };
        above.sort_unstable();
        for z in above {
            e = match spec.control_at(z) {
                Some(positive) => {
                    let ident = self.identity_dd(z as i32 - 1);
                    if positive {
                        self.mnode(z, [ident, Edge::zero(), Edge::zero(), e])
                    } else {
                        self.mnode(z, [e, Edge::zero(), Edge::zero(), ident])
                    }
                }
                None => self.mnode(z, [e, Edge::zero(), Edge::zero(), e]),
            };
        }
        Ok(e)
    }

    /// Entry `(row, col)` of an operator on `n` qubits; skipped levels act as identity.
    pub fn matrix_entry(&self, m: MatrixEdge, row: u64, col: u64, n: usize) -> Result<Complex64> {
        if n == 0 || n > 63 {
            return Err(Error::Argument(format!("matrix readback needs 1..=63 qubits, got {n}")));
        }
        if row >> n != 0 || col >> n != 0 {
            return Err(Error::Argument(format!(
                "entry ({row}, {col}) out of range for {n} qubits"
            )));
        }
        if self.edge_level(m) >= n as i32 {
            return Err(Error::Structural(format!(
                "operator rooted at level {} does not fit {n} qubits",
                self.edge_level(m)
            )));
        }
        let zero = Complex64::new(0.0, 0.0);
        let mut e = m;
        let mut value = self.weights.value(m.weight);
        for level in (0..n as i32).rev() {
            if e.is_zero() {
                return Ok(zero);
            }
            let r = (row >> level) & 1;
            let c = (col >> level) & 1;
            if self.edge_level(e) == level {
                e = self.successors::<Matrix>(e.node)[(2 * r + c) as usize];
                value *= self.weights.value(e.weight);
            } else if r != c {
                return Ok(zero);
            }
        }
        if e.is_zero() {
            return Ok(zero);
        }
        Ok(value)
    }

    /// Dense `2^n × 2^n` readback, row-major.
    pub fn to_dense_matrix(&self, m: MatrixEdge, n: usize) -> Result<Vec<Vec<Complex64>>> {
        if n > 12 {
            return Err(Error::Argument(format!("{n} qubits is too many for a dense matrix")));
        }
        let dim = 1u64 << n;
        (0..dim)
            .map(|r| (0..dim).map(|c| self.matrix_entry(m, r, c, n)).collect())
            .collect()
    }

    /// Kronecker product `top ⊗ bottom`, where every node of `top` lies above the root of `bottom`.
    pub fn kron(&mut self, top: MatrixEdge, bottom: MatrixEdge) -> Result<MatrixEdge> {
        if top.is_zero() || bottom.is_zero() {
            return Ok(Edge::zero());
        }
        let bottom_level = self.edge_level(bottom);
        if let Some(lowest) = self.lowest_level(top) {
            if lowest <= bottom_level {
                return Err(Error::Structural(format!(
                    "kron operands overlap: top reaches level {lowest}, bottom is rooted at {bottom_level}"
                )));
            }
        }
        let inner = bottom.with_weight(WeightRef::ONE);
        let mut r = self.kron_rec(top.node, inner);
        let w = self.weights.mul(top.weight, bottom.weight);
        let w = self.weights.mul(r.weight, w);
        r = r.with_weight(w);
        Ok(r)
    }

    fn kron_rec(&mut self, node: NodeId, bottom: MatrixEdge) -> MatrixEdge {
        if node.is_terminal() {
            return bottom;
        }
        let key = (node, WeightRef::ONE);
        if let Some(r) = self.ct_lookup(OpTag::Kron, key, bottom.raw(), 0) {
            return r;
        }
        let level = self.level::<Matrix>(node) as u32;
        let succ = self.successors::<Matrix>(node);
        let mut out = [Edge::zero(); 4];
        for (slot, s) in out.iter_mut().zip(succ) {
            if s.is_zero() {
                continue;
            }
            let child = deep(|| self.kron_rec(s.node, bottom));
            let w = self.weights.mul(child.weight, s.weight);
            *slot = child.with_weight(w);
        }
        let r = self.mnode(level, out);
        self.ct_insert(OpTag::Kron, key, bottom.raw(), 0, r);
        r
    }

    /// Lowest node level in a matrix DD, or `None` when it has no nodes.
    fn lowest_level(&self, m: MatrixEdge) -> Option<i32> {
        let mut lowest = None;
        let mut seen = rustc_hash::FxHashSet::default();
        let mut stack = vec![m.node];
        while let Some(id) = stack.pop() {
            if id.is_sentinel() || !seen.insert(id) {
                continue;
            }
            let level = self.level::<Matrix>(id);
            lowest = Some(lowest.map_or(level, |l: i32| l.min(level)));
            stack.extend(self.successors::<Matrix>(id).iter().map(|e| e.node));
        }
        lowest
    }

    /// Largest entry magnitude of an operator (skipped levels contribute 1).
    pub fn max_magnitude_matrix(&self, m: MatrixEdge) -> f64 {
        if m.is_zero() {
            return 0.0;
        }
        let mut memo = FxHashMap::default();
        self.weights.value(m.weight).norm() * self.max_path::<Matrix>(m.node, &mut memo)
    }

    /// Rebuilds an operator DD owned by another engine inside this one, in this engine's mode.
    pub fn import_matrix(&mut self, source: &Engine, m: MatrixEdge) -> MatrixEdge {
        let mut memo = FxHashMap::default();
        let inner = self.import_matrix_rec(source, m.node, &mut memo);
        let w = self.weights.lookup(source.weights.value(m.weight));
        let w = self.weights.mul(inner.weight, w);
        inner.with_weight(w)
    }

    fn import_matrix_rec(
        &mut self,
        source: &Engine,
        node: NodeId,
        memo: &mut FxHashMap<NodeId, MatrixEdge>,
    ) -> MatrixEdge {
        if node.is_sentinel() {
            return Edge::new(node, WeightRef::ONE);
        }
        if let Some(&e) = memo.get(&node) {
            return e;
        }
        let level = source.level::<Matrix>(node) as u32;
        let succ = source.successors::<Matrix>(node);
        let mut out = [Edge::zero(); 4];
        for (slot, s) in out.iter_mut().zip(succ) {
            if s.is_zero() {
                continue;
            }
            let child = deep(|| self.import_matrix_rec(source, s.node, memo));
            let w = self.weights.lookup(source.weights.value(s.weight));
            let w = self.weights.mul(child.weight, w);
            *slot = child.with_weight(w);
        }
        let e = self.mnode(level, out);
        memo.insert(node, e);
        e
    }

    /// Stored matrix nodes that have the identity shape `[e, 0, 0, e]`.
    pub fn identity_shaped_nodes(&self) -> Vec<NodeId> {
        self.stored_nodes::<Matrix>()
            .into_iter()
            .filter(|&id| resembles_identity(&self.successors::<Matrix>(id)))
            .collect()
    }
}
