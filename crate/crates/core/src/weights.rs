//! Interned complex edge weights.
//!
//! Every edge weight in the engine is a [`WeightRef`], a handle into a
//! [`WeightTable`]. Values closer than [`WEIGHT_TOLERANCE`] (max-norm on the
//! components) share one handle, so unique-table keys can hash and compare
//! weights exactly.
//!
//! Lookup buckets values on their components rounded to the tolerance grid
//! and probes the eight neighbouring buckets, which keeps interning amortized
//! constant time. When several stored values are within tolerance the oldest
//! one wins, so interning is deterministic.

use num_complex::Complex64;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

/// Interning tolerance on each component.
pub const WEIGHT_TOLERANCE: f64 = 1e-13;

/// Handle to an interned complex weight.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WeightRef(u32);

impl WeightRef {
    pub const ZERO: WeightRef = WeightRef(0);
    pub const ONE: WeightRef = WeightRef(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self == Self::ONE
    }

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }
}

pub struct WeightTable {
    values: Vec<Complex64>,
    buckets: FxHashMap<(i64, i64), Vec<u32>>,
    tolerance: f64,
}

impl Default for WeightTable {
    fn default() -> Self {
        Self::new()
    }
}

impl WeightTable {
    pub fn new() -> Self {
        Self::with_tolerance(WEIGHT_TOLERANCE)
    }

    pub fn with_tolerance(tolerance: f64) -> Self {
        assert!(tolerance > 0.0 && tolerance.is_finite());
        let mut table = WeightTable {
            values: Vec::new(),
            buckets: FxHashMap::default(),
            tolerance,
        };
        let zero = table.insert(Complex64::new(0.0, 0.0));
        let one = table.insert(Complex64::new(1.0, 0.0));
        debug_assert_eq!(zero, WeightRef::ZERO);
        debug_assert_eq!(one, WeightRef::ONE);
        table
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Number of distinct interned values.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Interns `re + i·im`, rejecting non-finite input.
    pub fn intern(&mut self, re: f64, im: f64) -> Result<WeightRef> {
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::NumericDomain(format!(
                "cannot intern non-finite weight ({re}, {im})"
            )));
        }
        Ok(self.lookup(Complex64::new(re, im)))
    }

    /// Interns a value produced by engine arithmetic.
    ///
    /// Operands are finite interned weights, so results are finite unless
    /// they overflow, which is treated as an engine bug.
    #[inline]
    pub(crate) fn lookup(&mut self, value: Complex64) -> WeightRef {
        assert!(
            value.re.is_finite() && value.im.is_finite(),
            "engine produced a non-finite weight {value}"
        );
        // -0.0 + 0.0 == +0.0
        let value = Complex64::new(value.re + 0.0, value.im + 0.0);
        let (kr, ki) = self.bucket(value);
        let mut best: Option<u32> = None;
        for dr in -1..=1 {
            for di in -1..=1 {
                let Some(bucket) = self.buckets.get(&(kr.saturating_add(dr), ki.saturating_add(di))) else {
                    continue;
                };
                for &idx in bucket {
                    if best.is_some_and(|b| b <= idx) {
                        continue;
                    }
                    let stored = self.values[idx as usize];
                    if (stored.re - value.re).abs() <= self.tolerance && (stored.im - value.im).abs() <= self.tolerance
                    {
                        best = Some(idx);
                    }
                }
            }
        }
        match best {
            Some(idx) => WeightRef(idx),
            None => self.insert(value),
        }
    }

    fn insert(&mut self, value: Complex64) -> WeightRef {
        let idx = u32::try_from(self.values.len()).expect("weight table overflow");
        self.values.push(value);
        let key = self.bucket(value);
        self.buckets.entry(key).or_default().push(idx);
        WeightRef(idx)
    }

    #[inline]
    fn bucket(&self, value: Complex64) -> (i64, i64) {
        // float-to-int casts saturate
        (
            (value.re / self.tolerance).floor() as i64,
            (value.im / self.tolerance).floor() as i64,
        )
    }

    #[inline]
    pub fn value(&self, w: WeightRef) -> Complex64 {
        self.values[w.0 as usize]
    }

    #[inline]
    pub fn add(&mut self, a: WeightRef, b: WeightRef) -> WeightRef {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let sum = self.value(a) + self.value(b);
        self.lookup(sum)
    }

    #[inline]
    pub fn mul(&mut self, a: WeightRef, b: WeightRef) -> WeightRef {
        if a.is_zero() || b.is_zero() {
            return WeightRef::ZERO;
        }
        if a.is_one() {
            return b;
        }
        if b.is_one() {
            return a;
        }
        let product = self.value(a) * self.value(b);
        self.lookup(product)
    }

    pub fn div(&mut self, a: WeightRef, b: WeightRef) -> Result<WeightRef> {
        if b.is_zero() {
            return Err(Error::NumericDomain("division by a zero weight".into()));
        }
        Ok(self.div_nonzero(a, b))
    }

    #[inline]
    pub(crate) fn div_nonzero(&mut self, a: WeightRef, b: WeightRef) -> WeightRef {
        debug_assert!(!b.is_zero());
        if a.is_zero() {
            return WeightRef::ZERO;
        }
        if b.is_one() {
            return a;
        }
        if a == b {
            return WeightRef::ONE;
        }
        let quotient = self.value(a) / self.value(b);
        self.lookup(quotient)
    }

    pub fn neg(&mut self, a: WeightRef) -> WeightRef {
        if a.is_zero() {
            return a;
        }
        let negated = -self.value(a);
        self.lookup(negated)
    }

    #[inline]
    pub fn mag2(&self, a: WeightRef) -> f64 {
        self.value(a).norm_sqr()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn constants() {
        let mut t = WeightTable::new();
        assert_eq!(t.intern(1.0, 0.0).unwrap(), WeightRef::ONE);
        assert_eq!(t.intern(0.0, 0.0).unwrap(), WeightRef::ZERO);
        assert_eq!(t.intern(-0.0, -0.0).unwrap(), WeightRef::ZERO);
    }

    #[test]
    fn idempotent_and_tolerant() {
        let mut t = WeightTable::new();
        let a = t.intern(FRAC_1_SQRT_2, 0.0).unwrap();
        let b = t.intern(FRAC_1_SQRT_2, 0.0).unwrap();
        assert_eq!(a, b);
        // |delta| = 1e-14 <= 1e-13
        let c = t.intern(FRAC_1_SQRT_2 + 1e-14, 0.0).unwrap();
        assert_eq!(a, c);
        let d = t.intern(FRAC_1_SQRT_2 + 1e-12, 0.0).unwrap();
        assert_ne!(a, d);
    }

    #[test]
    fn rejects_non_finite() {
        let mut t = WeightTable::new();
        assert!(matches!(t.intern(f64::NAN, 0.0), Err(Error::NumericDomain(_))));
        assert!(matches!(t.intern(0.0, f64::INFINITY), Err(Error::NumericDomain(_))));
    }

    #[test]
    fn arithmetic_examples() {
        let mut t = WeightTable::new();
        let h = t.intern(FRAC_1_SQRT_2, 0.0).unwrap();
        let half = t.intern(0.5, 0.0).unwrap();
        assert_eq!(t.mul(h, h), half);
        assert_eq!(t.add(half, half), WeightRef::ONE);
        let i = t.intern(0.0, 1.0).unwrap();
        let minus_one = t.intern(-1.0, 0.0).unwrap();
        assert_eq!(t.mul(i, i), minus_one);
        assert_eq!(t.neg(WeightRef::ONE), minus_one);
        assert_eq!(t.mag2(i), 1.0);
        assert!(matches!(t.div(h, WeightRef::ZERO), Err(Error::NumericDomain(_))));
        assert_eq!(t.div(h, h).unwrap(), WeightRef::ONE);
    }

    #[test]
    fn boundary_buckets_are_probed() {
        let mut t = WeightTable::new();
        // straddle a bucket edge
        let a = t.intern(3.0 * WEIGHT_TOLERANCE - 1e-16, 0.0).unwrap();
        let b = t.intern(3.0 * WEIGHT_TOLERANCE + 1e-16, 0.0).unwrap();
        assert_eq!(a, b);
    }

    fn finite() -> impl Strategy<Value = f64> {
        -4.0f64..4.0
    }

    proptest! {
        #[test]
        fn handle_equality_implies_closeness(a in finite(), b in finite(), c in finite(), d in finite()) {
            let mut t = WeightTable::new();
            let x = t.intern(a, b).unwrap();
            let y = t.intern(c, d).unwrap();
            if x == y {
                prop_assert!((a - c).abs() <= 2.0 * WEIGHT_TOLERANCE);
                prop_assert!((b - d).abs() <= 2.0 * WEIGHT_TOLERANCE);
            }
        }

        #[test]
        fn zero_and_one_are_exact(a in finite(), b in finite()) {
            let mut t = WeightTable::new();
            let x = t.intern(a, b).unwrap();
            prop_assert_eq!(t.mul(x, WeightRef::ONE), x);
            prop_assert_eq!(t.mul(WeightRef::ONE, x), x);
            prop_assert_eq!(t.mul(x, WeightRef::ZERO), WeightRef::ZERO);
            prop_assert_eq!(t.add(x, WeightRef::ZERO), x);
        }

        #[test]
        fn arithmetic_matches_complex(a in finite(), b in finite(), c in finite(), d in finite()) {
            let mut t = WeightTable::new();
            let x = t.intern(a, b).unwrap();
            let y = t.intern(c, d).unwrap();
            let exact_sum = Complex64::new(a, b) + Complex64::new(c, d);
            let exact_prod = Complex64::new(a, b) * Complex64::new(c, d);
            let sum = t.add(x, y);
            let prod = t.mul(x, y);
            let tol = 4.0 * WEIGHT_TOLERANCE;
            prop_assert!((t.value(sum) - exact_sum).re.abs() <= tol);
            prop_assert!((t.value(sum) - exact_sum).im.abs() <= tol);
            // products of magnitude-4 operands carry proportionally larger rounding
            let scale = 1.0f64.max(exact_prod.norm());
            prop_assert!((t.value(prod) - exact_prod).re.abs() <= tol * scale);
            prop_assert!((t.value(prod) - exact_prod).im.abs() <= tol * scale);
        }
    }
}
