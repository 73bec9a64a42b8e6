//! Multiplication and addition of decision diagrams.
//!
//! All four operations treat a level skipped by a matrix edge as identity.
//! The recursions strip the weights of their operands before consulting the
//! compute table and scale the cached result afterwards, so subproblems that
//! differ only by a scalar share one entry.

use crate::deep;
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::store::{Edge, Matrix, MatrixEdge, OpTag, Vector, VectorEdge};
use crate::weights::WeightRef;

impl Engine {
    /// `U · v` where `v` is rooted at level `l`.
    pub fn multiply_mv(&mut self, u: MatrixEdge, v: VectorEdge, l: u32) -> Result<VectorEdge> {
        self.check_vector_level(v, l)?;
        self.check_matrix_level(u, l)?;
        Ok(self.mv_rec(u, v, l as i32))
    }

    /// `A · B` for operators rooted at or below level `l`.
    pub fn multiply_mm(&mut self, a: MatrixEdge, b: MatrixEdge, l: u32) -> Result<MatrixEdge> {
        self.check_matrix_level(a, l)?;
        self.check_matrix_level(b, l)?;
        Ok(self.mm_rec(a, b))
    }

    pub fn add_vectors(&mut self, a: VectorEdge, b: VectorEdge, l: u32) -> Result<VectorEdge> {
        self.check_vector_level(a, l)?;
        self.check_vector_level(b, l)?;
        Ok(self.add_v(a, b, l as i32))
    }

    pub fn add_matrices(&mut self, a: MatrixEdge, b: MatrixEdge, l: u32) -> Result<MatrixEdge> {
        self.check_matrix_level(a, l)?;
        self.check_matrix_level(b, l)?;
        Ok(self.add_m(a, b))
    }

    fn check_vector_level(&self, v: VectorEdge, l: u32) -> Result<()> {
        if !v.is_zero() && self.edge_level(v) != l as i32 {
            return Err(Error::Structural(format!(
                "vector rooted at level {} used at level {l}",
                self.edge_level(v)
            )));
        }
        Ok(())
    }

    fn check_matrix_level(&self, m: MatrixEdge, l: u32) -> Result<()> {
        if self.edge_level(m) > l as i32 {
            return Err(Error::Structural(format!(
                "operator rooted at level {} exceeds level {l}",
                self.edge_level(m)
            )));
        }
        Ok(())
    }

    pub(crate) fn mv_rec(&mut self, u: MatrixEdge, v: VectorEdge, l: i32) -> VectorEdge {
        if u.is_zero() || v.is_zero() {
            return Edge::zero();
        }
        let w = self.weights.mul(u.weight, v.weight);
        if u.is_terminal() {
            return v.with_weight(w);
        }
        let ukey = (u.node, WeightRef::ONE);
        let vkey = (v.node, WeightRef::ONE);
        if let Some(r) = self.ct_lookup::<Vector>(OpTag::MultiplyMv, ukey, vkey, l) {
            return self.scale_edge(r, w);
        }
        self.mv_recursions += 1;
        let u1 = u.with_weight(WeightRef::ONE);
        let at_level = self.edge_level(u) == l;
        let usucc = at_level.then(|| self.successors::<Matrix>(u.node));
        let vsucc = self.successors::<Vector>(v.node);
        let mut out = [Edge::zero(); 2];
        for i in 0..2 {
            for j in 0..2 {
                let e1 = match usucc {
                    Some(s) => s[2 * i + j],
                    None if i == j => u1,
                    None => continue,
                };
                let e2 = vsucc[j];
                if e1.is_zero() || e2.is_zero() {
                    continue;
                }
                let product = deep(|| self.mv_rec(e1, e2, l - 1));
                out[i] = self.add_v(out[i], product, l - 1);
            }
        }
        let r = self.vnode(l as u32, out);
        self.ct_insert(OpTag::MultiplyMv, ukey, vkey, l, r);
        self.scale_edge(r, w)
    }

    pub(crate) fn add_v(&mut self, a: VectorEdge, b: VectorEdge, l: i32) -> VectorEdge {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.node == b.node {
            let w = self.weights.add(a.weight, b.weight);
            return a.with_weight(w);
        }
        let ratio = self.weights.div_nonzero(b.weight, a.weight);
        let akey = (a.node, WeightRef::ONE);
        let bkey = (b.node, ratio);
        if let Some(r) = self.ct_lookup::<Vector>(OpTag::AddVectors, akey, bkey, l) {
            return self.scale_edge(r, a.weight);
        }
        let sa = self.successors::<Vector>(a.node);
        let sb = self.successors::<Vector>(b.node);
        let mut out = [Edge::zero(); 2];
        for k in 0..2 {
            let rhs = self.scale_edge(sb[k], ratio);
            out[k] = deep(|| self.add_v(sa[k], rhs, l - 1));
        }
        let r = self.vnode(l as u32, out);
        self.ct_insert(OpTag::AddVectors, akey, bkey, l, r);
        self.scale_edge(r, a.weight)
    }

    /// Quadrant `k` of `e` viewed as an operator at level `top`.
    fn quadrant(&mut self, e: MatrixEdge, top: i32, k: usize) -> MatrixEdge {
        if self.edge_level(e) == top {
            let s = self.successors::<Matrix>(e.node)[k];
            self.scale_edge(s, e.weight)
        } else if k == 0 || k == 3 {
            e
        } else {
            Edge::zero()
        }
    }

    pub(crate) fn add_m(&mut self, a: MatrixEdge, b: MatrixEdge) -> MatrixEdge {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.node == b.node {
            let w = self.weights.add(a.weight, b.weight);
            return a.with_weight(w);
        }
        let top = self.edge_level(a).max(self.edge_level(b));
        let ratio = self.weights.div_nonzero(b.weight, a.weight);
        let akey = (a.node, WeightRef::ONE);
        let bkey = (b.node, ratio);
        if let Some(r) = self.ct_lookup::<Matrix>(OpTag::AddMatrices, akey, bkey, top) {
            return self.scale_edge(r, a.weight);
        }
        let a1 = a.with_weight(WeightRef::ONE);
        let b1 = b.with_weight(ratio);
        let mut out = [Edge::zero(); 4];
        for (k, slot) in out.iter_mut().enumerate() {
            let x = self.quadrant(a1, top, k);
            let y = self.quadrant(b1, top, k);
            *slot = deep(|| self.add_m(x, y));
        }
        let r = self.mnode(top as u32, out);
        self.ct_insert(OpTag::AddMatrices, akey, bkey, top, r);
        self.scale_edge(r, a.weight)
    }

    pub(crate) fn mm_rec(&mut self, a: MatrixEdge, b: MatrixEdge) -> MatrixEdge {
        if a.is_zero() || b.is_zero() {
            return Edge::zero();
        }
        let w = self.weights.mul(a.weight, b.weight);
        if a.is_terminal() {
            return b.with_weight(w);
        }
        if b.is_terminal() {
            return a.with_weight(w);
        }
        let top = self.edge_level(a).max(self.edge_level(b));
        let akey = (a.node, WeightRef::ONE);
        let bkey = (b.node, WeightRef::ONE);
        if let Some(r) = self.ct_lookup::<Matrix>(OpTag::MultiplyMm, akey, bkey, top) {
            return self.scale_edge(r, w);
        }
        let a1 = a.with_weight(WeightRef::ONE);
        let b1 = b.with_weight(WeightRef::ONE);
        let qa: [MatrixEdge; 4] = std::array::from_fn(|k| k).map(|k| self.quadrant(a1, top, k));
        let qb: [MatrixEdge; 4] = std::array::from_fn(|k| k).map(|k| self.quadrant(b1, top, k));
        let mut out = [Edge::zero(); 4];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let (x, y) = (qa[2 * i + k], qb[2 * k + j]);
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    let product = deep(|| self.mm_rec(x, y));
                    out[2 * i + j] = self.add_m(out[2 * i + j], product);
                }
            }
        }
        let r = self.mnode(top as u32, out);
        self.ct_insert(OpTag::MultiplyMm, akey, bkey, top, r);
        self.scale_edge(r, w)
    }

    #[inline]
    fn scale_edge<K>(&mut self, e: Edge<K>, w: WeightRef) -> Edge<K> {
        let scaled = self.weights.mul(e.weight, w);
        e.with_weight(scaled)
    }

    /// Conjugate transpose of an operator.
    pub fn adjoint(&mut self, m: MatrixEdge) -> MatrixEdge {
        if m.is_zero() {
            return m;
        }
        let conj = self.weights.value(m.weight).conj();
        let w = self.weights.lookup(conj);
        if m.is_terminal() {
            return Edge::terminal(w);
        }
        let mut memo = rustc_hash::FxHashMap::default();
        let inner = self.adjoint_rec(m.node, &mut memo);
        self.scale_edge(inner, w)
    }

    fn adjoint_rec(
        &mut self,
        node: crate::store::NodeId,
        memo: &mut rustc_hash::FxHashMap<crate::store::NodeId, MatrixEdge>,
    ) -> MatrixEdge {
        if node.is_sentinel() {
            return Edge::new(node, WeightRef::ONE);
        }
        if let Some(&e) = memo.get(&node) {
            return e;
        }
        let level = self.level::<Matrix>(node) as u32;
        let succ = self.successors::<Matrix>(node);
        let mut out = [Edge::zero(); 4];
        for (k, s) in succ.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let child = deep(|| self.adjoint_rec(s.node, memo));
            let conj = self.weights.value(s.weight).conj();
            let w = self.weights.lookup(conj);
            // quadrant (i, j) moves to (j, i)
            out[(k % 2) * 2 + k / 2] = self.scale_edge(child, w);
        }
        let e = self.mnode(level, out);
        memo.insert(node, e);
        e
    }
}
