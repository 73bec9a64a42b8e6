//! Node storage: per-level unique tables, reference counts, garbage
//! collection and the compute table.
//!
//! Nodes of each kind live in an arena indexed by [`NodeId`]. The unique
//! table for a (kind, level) pair maps the full successor tuple to the node
//! that owns it, which is what makes structurally equal diagrams share one
//! root. Reference counts are maintained transitively: a node's children are
//! counted once when the node itself becomes referenced, so every node
//! reachable from a referenced root has a positive count and collection is a
//! sweep over the zero-count entries.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;

use rustc_hash::{FxHashMap, FxHasher};
use serde::Serialize;

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::weights::WeightRef;

/// Level reported for the terminal and the zero stub.
pub const TERMINAL_LEVEL: i32 = -1;

const FREE_SLOT: u32 = u32::MAX;

/// Index of a node in the arena of its kind, or one of the two sentinels.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct NodeId(u32);

impl NodeId {
    pub const TERMINAL: NodeId = NodeId(u32::MAX);
    pub const ZERO_STUB: NodeId = NodeId(u32::MAX - 1);

    #[inline]
    pub fn is_terminal(self) -> bool {
        self == Self::TERMINAL
    }

    #[inline]
    pub fn is_zero_stub(self) -> bool {
        self == Self::ZERO_STUB
    }

    #[inline]
    pub fn is_sentinel(self) -> bool {
        self.0 >= Self::ZERO_STUB.0
    }

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }
}

/// Marker for two-successor (state) nodes.
#[derive(Debug)]
pub enum Vector {}

/// Marker for four-successor (operator) nodes.
#[derive(Debug)]
pub enum Matrix {}

pub trait Kind: Sized + 'static {
    const ARITY: usize;
    const NAME: &'static str;
    type Succ: Copy + Eq + Hash + fmt::Debug + AsRef<[Edge<Self>]> + AsMut<[Edge<Self>]>;

    fn zero_succ() -> Self::Succ;
    fn table(engine: &Engine) -> &NodeTable<Self>;
    fn table_mut(engine: &mut Engine) -> &mut NodeTable<Self>;
}

impl Kind for Vector {
    const ARITY: usize = 2;
    const NAME: &'static str = "vector";
    type Succ = [Edge<Vector>; 2];

    fn zero_succ() -> Self::Succ {
        [Edge::zero(); 2]
    }
    fn table(engine: &Engine) -> &NodeTable<Self> {
        &engine.vectors
    }
    fn table_mut(engine: &mut Engine) -> &mut NodeTable<Self> {
        &mut engine.vectors
    }
}

impl Kind for Matrix {
    const ARITY: usize = 4;
    const NAME: &'static str = "matrix";
    type Succ = [Edge<Matrix>; 4];

    fn zero_succ() -> Self::Succ {
        [Edge::zero(); 4]
    }
    fn table(engine: &Engine) -> &NodeTable<Self> {
        &engine.matrices
    }
    fn table_mut(engine: &mut Engine) -> &mut NodeTable<Self> {
        &mut engine.matrices
    }
}

/// Weighted edge into a node of kind `K`.
///
/// A zero edge always has weight [`WeightRef::ZERO`] and target
/// [`NodeId::ZERO_STUB`]; no other combination with a zero weight exists.
pub struct Edge<K> {
    pub node: NodeId,
    pub weight: WeightRef,
    kind: PhantomData<K>,
}

pub type VectorEdge = Edge<Vector>;
pub type MatrixEdge = Edge<Matrix>;

impl<K> Edge<K> {
    #[inline]
    pub fn new(node: NodeId, weight: WeightRef) -> Self {
        if weight.is_zero() {
            Self::zero()
        } else {
            Edge {
                node,
                weight,
                kind: PhantomData,
            }
        }
    }

    #[inline]
    pub const fn zero() -> Self {
        Edge {
            node: NodeId::ZERO_STUB,
            weight: WeightRef::ZERO,
            kind: PhantomData,
        }
    }

    /// Terminal edge. For matrices this is the (scaled) identity on every level it skips.
    #[inline]
    pub fn terminal(weight: WeightRef) -> Self {
        Self::new(NodeId::TERMINAL, weight)
    }

    #[inline]
    pub fn one() -> Self {
        Self::terminal(WeightRef::ONE)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.weight.is_zero()
    }

    #[inline]
    pub fn is_terminal(&self) -> bool {
        self.node.is_terminal()
    }

    #[inline]
    pub fn with_weight(self, weight: WeightRef) -> Self {
        Self::new(self.node, weight)
    }

    #[inline]
    pub(crate) fn raw(self) -> (NodeId, WeightRef) {
        (self.node, self.weight)
    }

    #[inline]
    pub(crate) fn from_raw((node, weight): (NodeId, WeightRef)) -> Self {
        Self::new(node, weight)
    }
}

impl<K> Clone for Edge<K> {
    fn clone(&self) -> Self {
        *self
    }
}
impl<K> Copy for Edge<K> {}
impl<K> PartialEq for Edge<K> {
    fn eq(&self, other: &Self) -> bool {
        self.node == other.node && self.weight == other.weight
    }
}
impl<K> Eq for Edge<K> {}
impl<K> Hash for Edge<K> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.node.hash(state);
        self.weight.hash(state);
    }
}
impl<K> fmt::Debug for Edge<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node {
            NodeId::ZERO_STUB => write!(f, "Edge(zero)"),
            NodeId::TERMINAL => write!(f, "Edge(terminal, w{})", self.weight.index()),
            n => write!(f, "Edge(n{}, w{})", n.index(), self.weight.index()),
        }
    }
}

pub(crate) struct Node<K: Kind> {
    pub(crate) level: u32,
    pub(crate) succ: K::Succ,
    pub(crate) rc: u32,
}

/// Arena plus per-level unique tables for one node kind.
pub struct NodeTable<K: Kind> {
    nodes: Vec<Node<K>>,
    free: Vec<u32>,
    unique: Vec<FxHashMap<K::Succ, NodeId>>,
    stored: usize,
    live: usize,
    peak_live: usize,
    created: u64,
    lookups: u64,
    gc_runs: u64,
    threshold: usize,
}

impl<K: Kind> NodeTable<K> {
    pub(crate) fn new(threshold: usize) -> Self {
        NodeTable {
            nodes: Vec::new(),
            free: Vec::new(),
            unique: Vec::new(),
            stored: 0,
            live: 0,
            peak_live: 0,
            created: 0,
            lookups: 0,
            gc_runs: 0,
            threshold: threshold.max(1),
        }
    }

    #[inline]
    pub(crate) fn node(&self, id: NodeId) -> &Node<K> {
        let node = &self.nodes[id.0 as usize];
        debug_assert_ne!(node.level, FREE_SLOT, "access to a reclaimed node");
        node
    }

    #[inline]
    fn node_mut(&mut self, id: NodeId) -> &mut Node<K> {
        &mut self.nodes[id.0 as usize]
    }

    fn is_stored(&self, id: NodeId) -> bool {
        self.nodes.get(id.0 as usize).is_some_and(|n| n.level != FREE_SLOT)
    }

    fn find_or_insert(&mut self, level: u32, succ: K::Succ) -> (NodeId, bool) {
        self.lookups += 1;
        let level_idx = level as usize;
        if self.unique.len() <= level_idx {
            self.unique.resize_with(level_idx + 1, FxHashMap::default);
        }
        if let Some(&id) = self.unique[level_idx].get(&succ) {
            return (id, false);
        }
        let node = Node { level, succ, rc: 0 };
        let id = match self.free.pop() {
            Some(slot) => {
                self.nodes[slot as usize] = node;
                NodeId(slot)
            }
            None => {
                let slot = u32::try_from(self.nodes.len())
                    .ok()
                    .filter(|&s| s < NodeId::ZERO_STUB.0)
                    .expect("node arena overflow");
                self.nodes.push(node);
                NodeId(slot)
            }
        };
        self.unique[level_idx].insert(succ, id);
        self.stored += 1;
        self.created += 1;
        (id, true)
    }

    /// Removes every stored node with a zero reference count.
    fn sweep(&mut self) -> usize {
        let nodes = &mut self.nodes;
        let free = &mut self.free;
        let mut reclaimed = 0;
        for table in &mut self.unique {
            table.retain(|_, id| {
                let node = &mut nodes[id.0 as usize];
                if node.rc > 0 {
                    true
                } else {
                    node.level = FREE_SLOT;
                    free.push(id.0);
                    reclaimed += 1;
                    false
                }
            });
        }
        self.stored -= reclaimed;
        reclaimed
    }

    pub fn stats(&self) -> TableStats {
        TableStats {
            nodes_created: self.created,
            stored: self.stored,
            live: self.live,
            peak_live: self.peak_live,
            lookups: self.lookups,
            gc_runs: self.gc_runs,
            gc_threshold: self.threshold,
        }
    }

    /// Ids of all nodes currently held by the unique tables, ordered by id.
    pub(crate) fn stored_ids(&self) -> Vec<NodeId> {
        let mut ids: Vec<NodeId> = self.unique.iter().flat_map(|t| t.values().copied()).collect();
        ids.sort_unstable();
        ids
    }
}

/// Counters for one unique table.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TableStats {
    /// Cumulative unique-table insertions.
    pub nodes_created: u64,
    /// Nodes currently held by the table, referenced or not.
    pub stored: usize,
    /// Nodes with a positive reference count.
    pub live: usize,
    pub peak_live: usize,
    pub lookups: u64,
    pub gc_runs: u64,
    pub gc_threshold: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct StoreStats {
    pub vector: TableStats,
    pub matrix: TableStats,
    /// Peak of referenced vector plus matrix nodes.
    pub peak_live: usize,
    pub gc_runs: u64,
    pub ct_hits: u64,
    pub ct_misses: u64,
    pub weights_interned: usize,
}

impl StoreStats {
    pub fn ct_hit_rate(&self) -> f64 {
        let total = self.ct_hits + self.ct_misses;
        if total == 0 {
            0.0
        } else {
            self.ct_hits as f64 / total as f64
        }
    }
}

/// Operations memoized in the compute table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpTag {
    AddVectors = 0,
    AddMatrices = 1,
    MultiplyMv = 2,
    MultiplyMm = 3,
    Kron = 4,
}

const OP_TAGS: usize = 5;

type RawEdge = (NodeId, WeightRef);

#[derive(Clone, Copy)]
struct CtEntry {
    a: RawEdge,
    b: RawEdge,
    level: i32,
    result: RawEdge,
}

/// Direct-mapped memo table, one bank per operation. Collisions overwrite.
pub struct ComputeTable {
    banks: Vec<Vec<Option<CtEntry>>>,
    capacity: usize,
    hits: u64,
    misses: u64,
}

impl ComputeTable {
    pub(crate) fn new(capacity: usize) -> Self {
        let capacity = if capacity == 0 { 0 } else { capacity.next_power_of_two() };
        ComputeTable {
            banks: (0..OP_TAGS).map(|_| Vec::new()).collect(),
            capacity,
            hits: 0,
            misses: 0,
        }
    }

    fn slot(&self, a: RawEdge, b: RawEdge, level: i32) -> usize {
        let mut h = FxHasher::default();
        a.hash(&mut h);
        b.hash(&mut h);
        level.hash(&mut h);
        let x = h.finish();
        // fold the high bits in, Fx leaves the low ones weak
        ((x ^ (x >> 29) ^ (x >> 47)) as usize) & (self.capacity - 1)
    }

    fn lookup(&mut self, tag: OpTag, a: RawEdge, b: RawEdge, level: i32) -> Option<RawEdge> {
        if self.capacity == 0 {
            return None;
        }
        let bank = &self.banks[tag as usize];
        let hit = if bank.is_empty() {
            None
        } else {
            match bank[self.slot(a, b, level)] {
                Some(e) if e.a == a && e.b == b && e.level == level => Some(e.result),
                _ => None,
            }
        };
        if hit.is_some() {
            self.hits += 1;
        } else {
            self.misses += 1;
        }
        hit
    }

    fn insert(&mut self, tag: OpTag, a: RawEdge, b: RawEdge, level: i32, result: RawEdge) {
        if self.capacity == 0 {
            return;
        }
        let slot = self.slot(a, b, level);
        let bank = &mut self.banks[tag as usize];
        if bank.is_empty() {
            bank.resize(self.capacity, None);
        }
        bank[slot] = Some(CtEntry { a, b, level, result });
    }

    fn clear(&mut self) {
        for bank in &mut self.banks {
            bank.iter_mut().for_each(|e| *e = None);
        }
    }
}

impl Engine {
    /// Level of a node; sentinels report [`TERMINAL_LEVEL`].
    #[inline]
    pub fn level<K: Kind>(&self, node: NodeId) -> i32 {
        if node.is_sentinel() {
            TERMINAL_LEVEL
        } else {
            K::table(self).node(node).level as i32
        }
    }

    #[inline]
    pub fn edge_level<K: Kind>(&self, edge: Edge<K>) -> i32 {
        self.level::<K>(edge.node)
    }

    /// Successor tuple of a stored node.
    #[inline]
    pub fn successors<K: Kind>(&self, node: NodeId) -> K::Succ {
        debug_assert!(!node.is_sentinel());
        K::table(self).node(node).succ
    }

    /// Returns the canonical node for `(level, succ)`, inserting it when absent.
    ///
    /// Successors must be stored nodes (or sentinels) strictly below `level`,
    /// and zero weights must go with the zero stub.
    pub fn ut_lookup<K: Kind>(&mut self, level: u32, succ: K::Succ) -> Result<(NodeId, bool)> {
        for e in succ.as_ref() {
            if e.weight.is_zero() != e.node.is_zero_stub() {
                return Err(Error::Structural(format!(
                    "successor {e:?} mixes a zero weight and a non-zero target"
                )));
            }
            if !e.node.is_sentinel() {
                if !K::table(self).is_stored(e.node) {
                    return Err(Error::Structural(format!("successor {e:?} is not a stored node")));
                }
                let child = self.level::<K>(e.node);
                if child >= level as i32 {
                    return Err(Error::Structural(format!(
                        "successor at level {child} is not below level {level}"
                    )));
                }
            }
        }
        Ok(self.find_or_insert::<K>(level, succ))
    }

    #[inline]
    pub(crate) fn find_or_insert<K: Kind>(&mut self, level: u32, succ: K::Succ) -> (NodeId, bool) {
        K::table_mut(self).find_or_insert(level, succ)
    }

    /// Marks `edge` as referenced; its whole sub-diagram stays alive across collections.
    pub fn inc_ref<K: Kind>(&mut self, edge: Edge<K>) {
        let mut stack = vec![edge.node];
        let table = K::table_mut(self);
        while let Some(id) = stack.pop() {
            if id.is_sentinel() {
                continue;
            }
            let node = table.node_mut(id);
            node.rc = node.rc.checked_add(1).expect("reference count overflow");
            if node.rc == 1 {
                stack.extend(node.succ.as_ref().iter().map(|e| e.node));
                table.live += 1;
            }
        }
        table.peak_live = table.peak_live.max(table.live);
        let total = self.vectors.live + self.matrices.live;
        self.peak_live = self.peak_live.max(total);
    }

    /// Releases a reference taken with [`Engine::inc_ref`].
    ///
    /// # Panics
    /// On reference-count underflow, which means the caller released an
    /// edge it never referenced.
    pub fn dec_ref<K: Kind>(&mut self, edge: Edge<K>) {
        let mut stack = vec![edge.node];
        let table = K::table_mut(self);
        while let Some(id) = stack.pop() {
            if id.is_sentinel() {
                continue;
            }
            let node = table.node_mut(id);
            assert!(node.rc > 0, "reference count underflow on {} node {}", K::NAME, id.0);
            node.rc -= 1;
            if node.rc == 0 {
                stack.extend(node.succ.as_ref().iter().map(|e| e.node));
                table.live -= 1;
            }
        }
    }

    pub fn ref_count<K: Kind>(&self, node: NodeId) -> u32 {
        if node.is_sentinel() {
            0
        } else {
            K::table(self).node(node).rc
        }
    }

    /// Reclaims unreferenced nodes.
    ///
    /// Without `force` this only runs when a table holds more entries than
    /// its threshold, and only sweeps those tables; a run that frees less than
    /// a quarter of a table doubles that table's threshold. Any run clears the
    /// compute table.
    pub fn collect_garbage(&mut self, force: bool) -> usize {
        let sweep_vectors = force || self.vectors.stored > self.vectors.threshold;
        let sweep_matrices = force || self.matrices.stored > self.matrices.threshold;
        if !sweep_vectors && !sweep_matrices {
            return 0;
        }
        let mut reclaimed = 0;
        if sweep_vectors {
            reclaimed += sweep_table(&mut self.vectors, force);
        }
        if sweep_matrices {
            reclaimed += sweep_table(&mut self.matrices, force);
        }
        self.compute.clear();
        self.gc_runs += 1;
        log::debug!("garbage collection #{} reclaimed {reclaimed} nodes", self.gc_runs);
        reclaimed
    }

    pub fn ct_lookup<R>(
        &mut self,
        tag: OpTag,
        a: (NodeId, WeightRef),
        b: (NodeId, WeightRef),
        level: i32,
    ) -> Option<Edge<R>> {
        self.compute.lookup(tag, a, b, level).map(Edge::from_raw)
    }

    pub fn ct_insert<R>(
        &mut self,
        tag: OpTag,
        a: (NodeId, WeightRef),
        b: (NodeId, WeightRef),
        level: i32,
        result: Edge<R>,
    ) {
        self.compute.insert(tag, a, b, level, result.raw());
    }

    pub fn stats(&self) -> StoreStats {
        StoreStats {
            vector: self.vectors.stats(),
            matrix: self.matrices.stats(),
            peak_live: self.peak_live,
            gc_runs: self.gc_runs,
            ct_hits: self.compute.hits,
            ct_misses: self.compute.misses,
            weights_interned: self.weights.len(),
        }
    }

    /// All nodes of kind `K` currently stored, in id order.
    pub fn stored_nodes<K: Kind>(&self) -> Vec<NodeId> {
        K::table(self).stored_ids()
    }

    /// Distinct nodes reachable from `roots`; independent of reference counts.
    pub fn reachable_nodes<K: Kind>(&self, roots: &[Edge<K>]) -> usize {
        let mut seen = rustc_hash::FxHashSet::default();
        let mut stack: Vec<NodeId> = roots.iter().map(|e| e.node).collect();
        while let Some(id) = stack.pop() {
            if id.is_sentinel() || !seen.insert(id) {
                continue;
            }
            stack.extend(self.successors::<K>(id).as_ref().iter().map(|e| e.node));
        }
        seen.len()
    }
}

fn sweep_table<K: Kind>(table: &mut NodeTable<K>, force: bool) -> usize {
    let before = table.stored;
    let reclaimed = table.sweep();
    table.gc_runs += 1;
    if !force && reclaimed * 4 < before {
        table.threshold = table.threshold.saturating_mul(2);
    }
    reclaimed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Mode;

    fn leaf(engine: &mut Engine, a: f64, b: f64) -> VectorEdge {
        let wa = engine.weights.intern(a, 0.0).unwrap();
        let wb = engine.weights.intern(b, 0.0).unwrap();
        let (id, _) = engine
            .ut_lookup::<Vector>(0, [Edge::terminal(wa), Edge::terminal(wb)])
            .unwrap();
        Edge::new(id, WeightRef::ONE)
    }

    #[test]
    fn identical_tuples_share_a_node() {
        let mut e = Engine::new(Mode::New);
        let succ = [Edge::one(), Edge::zero()];
        let (a, inserted_a) = e.ut_lookup::<Vector>(0, succ).unwrap();
        let (b, inserted_b) = e.ut_lookup::<Vector>(0, succ).unwrap();
        assert_eq!(a, b);
        assert!(inserted_a);
        assert!(!inserted_b);
        assert_eq!(e.stats().vector.nodes_created, 1);
    }

    #[test]
    fn weight_difference_gives_distinct_nodes() {
        let mut e = Engine::new(Mode::New);
        let a = leaf(&mut e, 0.6, 0.8);
        let b = leaf(&mut e, 0.8, 0.6);
        assert_ne!(a.node, b.node);
    }

    #[test]
    fn structural_errors() {
        let mut e = Engine::new(Mode::New);
        let child = leaf(&mut e, 1.0, 0.0);
        assert!(matches!(
            e.ut_lookup::<Vector>(0, [child, Edge::zero()]),
            Err(Error::Structural(_))
        ));
        let bogus = Edge::<Vector> {
            node: NodeId::ZERO_STUB,
            weight: WeightRef::ONE,
            kind: PhantomData,
        };
        assert!(matches!(
            e.ut_lookup::<Vector>(1, [bogus, Edge::zero()]),
            Err(Error::Structural(_))
        ));
        assert!(e.ut_lookup::<Vector>(1, [child, Edge::zero()]).is_ok());
    }

    #[test]
    fn gc_reclaims_released_roots() {
        let mut e = Engine::new(Mode::New);
        let root = leaf(&mut e, 1.0, 0.0);
        e.inc_ref(root);
        e.dec_ref(root);
        assert_eq!(e.collect_garbage(true), 1);
        assert_eq!(e.stats().vector.stored, 0);
    }

    #[test]
    fn shared_child_survives() {
        let mut e = Engine::new(Mode::New);
        let child = leaf(&mut e, 1.0, 0.0);
        let (r1, _) = e.ut_lookup::<Vector>(1, [child, Edge::zero()]).unwrap();
        let (r2, _) = e.ut_lookup::<Vector>(1, [Edge::zero(), child]).unwrap();
        let (r1, r2) = (
            Edge::<Vector>::new(r1, WeightRef::ONE),
            Edge::<Vector>::new(r2, WeightRef::ONE),
        );
        e.inc_ref(r1);
        e.inc_ref(r2);
        e.dec_ref(r1);
        assert_eq!(e.collect_garbage(true), 1);
        assert_eq!(e.ref_count::<Vector>(child.node), 1);
        assert_eq!(e.successors::<Vector>(r2.node)[1], child);
    }

    #[test]
    fn empty_forced_collection_counts_a_run() {
        let mut e = Engine::new(Mode::New);
        assert_eq!(e.collect_garbage(true), 0);
        assert_eq!(e.stats().gc_runs, 1);
        assert_eq!(e.collect_garbage(false), 0);
        assert_eq!(e.stats().gc_runs, 1);
    }

    #[test]
    #[should_panic(expected = "underflow")]
    fn underflow_fails_fast() {
        let mut e = Engine::new(Mode::New);
        let root = leaf(&mut e, 1.0, 0.0);
        e.dec_ref(root);
    }

    #[test]
    fn compute_table_roundtrip_and_clear() {
        let mut e = Engine::new(Mode::New);
        let v = leaf(&mut e, 1.0, 0.0);
        let key = (v.node, WeightRef::ONE);
        assert!(e.ct_lookup::<Vector>(OpTag::AddVectors, key, key, 0).is_none());
        e.ct_insert(OpTag::AddVectors, key, key, 0, v);
        assert_eq!(e.ct_lookup::<Vector>(OpTag::AddVectors, key, key, 0), Some(v));
        assert!(e.ct_lookup::<Vector>(OpTag::MultiplyMv, key, key, 0).is_none());
        e.collect_garbage(true);
        assert!(e.ct_lookup::<Vector>(OpTag::AddVectors, key, key, 0).is_none());
    }

    #[test]
    fn automatic_threshold_and_hysteresis() {
        let mut config = crate::engine::EngineConfig::new(Mode::New);
        config.gc_threshold = 4;
        let mut e = Engine::with_config(config);
        let mut roots = Vec::new();
        for k in 1..=6 {
            let r = leaf(&mut e, 1.0, k as f64);
            e.inc_ref(r);
            roots.push(r);
        }
        // all referenced: nothing reclaimed, threshold doubles
        assert_eq!(e.collect_garbage(false), 0);
        assert_eq!(e.stats().vector.gc_runs, 1);
        assert_eq!(e.stats().vector.gc_threshold, 8);
        assert_eq!(e.collect_garbage(false), 0);
        assert_eq!(e.stats().vector.gc_runs, 1);
        assert_eq!(e.stats().matrix.gc_runs, 0);
    }
}
