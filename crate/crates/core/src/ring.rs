//! Finite rings stored as explicit Cayley tables.
//!
//! Every ring in the crate is a [`FiniteRing`]: elements are the indices
//! `0..order`, index `0` is always the additive zero, and addition and
//! multiplication are dense `order × order` lookup tables. Structured
//! constructors (see [`crate::construct`]) compile down to this form, so the
//! analyses in the rest of the crate only ever deal with table lookups.
//!
//! Rings may be non-unital (`one() == None`) and need not be commutative.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{FinringError, Result};

/// Default upper bound on the number of elements of any constructed ring.
pub const DEFAULT_ORDER_CAP: usize = 512;

static ORDER_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_ORDER_CAP);

/// Current global order cap.
pub fn order_cap() -> usize {
    ORDER_CAP.load(Ordering::Relaxed)
}

/// Replaces the global order cap. Values below 1 are clamped to 1.
pub fn set_order_cap(cap: usize) {
    ORDER_CAP.store(cap.max(1), Ordering::Relaxed);
}

pub(crate) fn check_cap(order: usize) -> Result<()> {
    let cap = order_cap();
    if order > cap {
        Err(FinringError::OrderCap { order, cap })
    } else {
        Ok(())
    }
}

/// Multiplies sizes, reporting the cap violation instead of overflowing.
pub(crate) fn capped_product(factors: &[usize]) -> Result<usize> {
    let cap = order_cap();
    let mut acc: usize = 1;
    for &f in factors {
        acc = match acc.checked_mul(f) {
            Some(v) if v <= cap => v,
            Some(v) => return Err(FinringError::OrderCap { order: v, cap }),
            None => return Err(FinringError::OrderCap { order: usize::MAX, cap }),
        };
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    AdditiveIdentity,
    AdditiveInverse,
    AdditiveAssociativity,
    AdditiveCommutativity,
    MultiplicativeAssociativity,
    LeftDistributivity,
    RightDistributivity,
    MultiplicativeIdentity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::AdditiveIdentity => "additive identity",
            Axiom::AdditiveInverse => "additive inverse",
            Axiom::AdditiveAssociativity => "additive associativity",
            Axiom::AdditiveCommutativity => "additive commutativity",
            Axiom::MultiplicativeAssociativity => "multiplicative associativity",
            Axiom::LeftDistributivity => "left distributivity",
            Axiom::RightDistributivity => "right distributivity",
            Axiom::MultiplicativeIdentity => "multiplicative identity",
        };
        f.write_str(name)
    }
}

/// The first violated axiom and the elements that violate it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.axiom, self.witness)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomReport {
    Pass,
    Fail(AxiomFailure),
}

impl AxiomReport {
    pub fn is_pass(&self) -> bool {
        matches!(self, AxiomReport::Pass)
    }

    pub fn failure(&self) -> Option<&AxiomFailure> {
        match self {
            AxiomReport::Pass => None,
            AxiomReport::Fail(f) => Some(f),
        }
    }
}

/// Serialized form of a ring: `{ "order", "one", "add", "mul", "labels" }`.
///
/// The negation table is derived on load and never written out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDoc {
    pub order: usize,
    pub one: Option<usize>,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl RingDoc {
    pub fn from_json(text: &str) -> Result<RingDoc> {
        serde_json::from_str(text).map_err(|e| FinringError::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ring documents always serialize")
    }

    fn flatten(&self) -> Result<(Vec<usize>, Vec<usize>)> {
        let n = self.order;
        if n == 0 {
            return Err(FinringError::Structural("order must be positive".into()));
        }
        let flat = |name: &str, rows: &[Vec<usize>]| -> Result<Vec<usize>> {
            if rows.len() != n {
                return Err(FinringError::Structural(format!(
                    "{name} table has {} rows, expected {n}",
                    rows.len()
                )));
            }
            let mut out = Vec::with_capacity(n * n);
            for (i, row) in rows.iter().enumerate() {
                if row.len() != n {
                    return Err(FinringError::Structural(format!(
                        "{name} row {i} has {} entries, expected {n}",
                        row.len()
                    )));
                }
                if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                    return Err(FinringError::Structural(format!(
                        "{name} row {i} contains index {bad} outside 0..{n}"
                    )));
                }
                out.extend_from_slice(row);
            }
            Ok(out)
        };
        let add = flat("add", &self.add)?;
        let mul = flat("mul", &self.mul)?;
        if let Some(one) = self.one {
            if one >= n {
                return Err(FinringError::Structural(format!("one = {one} outside 0..{n}")));
            }
        }
        if let Some(labels) = &self.labels {
            if labels.len() != n {
                return Err(FinringError::Structural(format!(
                    "{} labels for {n} elements",
                    labels.len()
                )));
            }
        }
        Ok((add, mul))
    }
}

/// Checks every ring axiom on candidate tables.
///
/// Structural problems (wrong dimensions, out-of-range entries) are reported
/// as `Err`; a well-formed table that is not a ring yields
/// `Ok(AxiomReport::Fail(..))` naming the first violated axiom in a fixed
/// scan order together with a concrete witness.
pub fn verify_ring_axioms(candidate: &RingDoc) -> Result<AxiomReport> {
    let (add, mul) = candidate.flatten()?;
    Ok(scan_axioms(candidate.order, &add, &mul, candidate.one))
}

fn scan_axioms(n: usize, add: &[usize], mul: &[usize], one: Option<usize>) -> AxiomReport {
    let a_ = |x: usize, y: usize| add[x * n + y];
    let m_ = |x: usize, y: usize| mul[x * n + y];
    let fail = |axiom, witness: Vec<usize>| AxiomReport::Fail(AxiomFailure { axiom, witness });

    for x in 0..n {
        if a_(x, 0) != x || a_(0, x) != x {
            return fail(Axiom::AdditiveIdentity, vec![x]);
        }
    }
    for x in 0..n {
        if !(0..n).any(|y| a_(x, y) == 0 && a_(y, x) == 0) {
            return fail(Axiom::AdditiveInverse, vec![x]);
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = a_(x, y);
            for z in 0..n {
                if a_(xy, z) != a_(x, a_(y, z)) {
                    return fail(Axiom::AdditiveAssociativity, vec![x, y, z]);
                }
            }
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            if a_(x, y) != a_(y, x) {
                return fail(Axiom::AdditiveCommutativity, vec![x, y]);
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = m_(x, y);
            for z in 0..n {
                if m_(xy, z) != m_(x, m_(y, z)) {
                    return fail(Axiom::MultiplicativeAssociativity, vec![x, y, z]);
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if m_(x, a_(y, z)) != a_(m_(x, y), m_(x, z)) {
                    return fail(Axiom::LeftDistributivity, vec![x, y, z]);
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if m_(a_(x, y), z) != a_(m_(x, z), m_(y, z)) {
                    return fail(Axiom::RightDistributivity, vec![x, y, z]);
                }
            }
        }
    }
    if let Some(e) = one {
        for x in 0..n {
            if m_(e, x) != x || m_(x, e) != x {
                return fail(Axiom::MultiplicativeIdentity, vec![x]);
            }
        }
    }
    AxiomReport::Pass
}

struct Tables {
    order: usize,
    labels: Vec<String>,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    one: Option<usize>,
    commutative: bool,
    provenance: String,
}

/// A finite, possibly non-unital, possibly noncommutative ring.
///
/// Cloning is cheap: the tables are shared behind an `Arc` and never mutated.
#[derive(Clone)]
pub struct FiniteRing {
    inner: Arc<Tables>,
}

impl FiniteRing {
    /// Builds a ring from flat row-major tables and verifies every axiom.
    pub fn from_tables(
        order: usize,
        add: Vec<usize>,
        mul: Vec<usize>,
        one: Option<usize>,
        labels: Vec<String>,
        provenance: impl Into<String>,
    ) -> Result<FiniteRing> {
        let ring = Self::from_tables_unchecked(order, add, mul, one, labels, provenance)?;
        match ring.verify() {
            AxiomReport::Pass => Ok(ring),
            AxiomReport::Fail(f) => Err(FinringError::Axiom(f)),
        }
    }

    /// Builds a ring after structural checks only; the axioms are not verified.
    ///
    /// Used for fault injection and for loading tables that are checked later.
    /// Elements without an additive inverse get `0` in the negation table.
    pub fn from_tables_unchecked(
        order: usize,
        add: Vec<usize>,
        mul: Vec<usize>,
        one: Option<usize>,
        labels: Vec<String>,
        provenance: impl Into<String>,
    ) -> Result<FiniteRing> {
        if order == 0 {
            return Err(FinringError::Structural("order must be positive".into()));
        }
        check_cap(order)?;
        let n = order;
        if add.len() != n * n || mul.len() != n * n {
            return Err(FinringError::Structural(format!(
                "tables must have {} entries (add has {}, mul has {})",
                n * n,
                add.len(),
                mul.len()
            )));
        }
        if add.iter().chain(mul.iter()).any(|&v| v >= n) {
            return Err(FinringError::Structural(format!("table entry outside 0..{n}")));
        }
        if labels.len() != n {
            return Err(FinringError::Structural(format!("{} labels for {n} elements", labels.len())));
        }
        if one.is_some_and(|e| e >= n) {
            return Err(FinringError::Structural(format!("one outside 0..{n}")));
        }
        let neg = (0..n)
            .map(|x| (0..n).find(|&y| add[x * n + y] == 0).unwrap_or(0))
            .collect();
        let commutative = (0..n).all(|x| (x + 1..n).all(|y| mul[x * n + y] == mul[y * n + x]));
        Ok(FiniteRing {
            inner: Arc::new(Tables {
                order,
                labels,
                add,
                mul,
                neg,
                one,
                commutative,
                provenance: provenance.into(),
            }),
        })
    }

    /// Loads and verifies a serialized ring. Missing labels default to indices.
    pub fn from_doc(doc: &RingDoc, provenance: impl Into<String>) -> Result<FiniteRing> {
        let (add, mul) = doc.flatten()?;
        let labels = doc
            .labels
            .clone()
            .unwrap_or_else(|| (0..doc.order).map(|i| i.to_string()).collect());
        Self::from_tables(doc.order, add, mul, doc.one, labels, provenance)
    }

    pub fn to_doc(&self) -> RingDoc {
        let n = self.order();
        let rows = |t: &[usize]| t.chunks(n).map(|r| r.to_vec()).collect();
        RingDoc {
            order: n,
            one: self.one(),
            add: rows(&self.inner.add),
            mul: rows(&self.inner.mul),
            labels: Some(self.inner.labels.clone()),
        }
    }

    /// Re-runs the full axiom scan on this ring's tables.
    pub fn verify(&self) -> AxiomReport {
        scan_axioms(self.order(), &self.inner.add, &self.inner.mul, self.one())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.inner.order
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.inner.add[a * self.inner.order + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.inner.mul[a * self.inner.order + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.inner.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn one(&self) -> Option<usize> {
        self.inner.one
    }

    pub fn is_unital(&self) -> bool {
        self.inner.one.is_some()
    }

    pub fn is_commutative(&self) -> bool {
        self.inner.commutative
    }

    pub fn label(&self, a: usize) -> &str {
        &self.inner.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn provenance(&self) -> &str {
        &self.inner.provenance
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Index of the element carrying `label`, if any.
    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.inner.labels.iter().position(|l| l == label)
    }

    /// `k · a` computed by repeated addition.
    pub fn scalar(&self, k: usize, a: usize) -> usize {
        (0..k).fold(0, |acc, _| self.add(acc, a))
    }

    /// `a^k` for `k >= 1`.
    pub fn pow(&self, a: usize, k: usize) -> usize {
        assert!(k >= 1, "pow needs a positive exponent");
        (1..k).fold(a, |acc, _| self.mul(acc, a))
    }

    /// Order of `a` in the additive group.
    pub fn additive_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut acc = a;
        while acc != 0 {
            acc = self.add(acc, a);
            k += 1;
        }
        k
    }

    /// Additive order of the identity, when the ring is unital.
    pub fn characteristic(&self) -> Option<usize> {
        self.one().map(|e| self.additive_order(e))
    }

    /// Two-sided inverse of `a`, if `a` is a unit.
    pub fn inverse(&self, a: usize) -> Option<usize> {
        let e = self.one()?;
        self.elements().find(|&b| self.mul(a, b) == e && self.mul(b, a) == e)
    }

    /// A field here is a commutative unital ring with `1 != 0` in which
    /// every nonzero element is invertible.
    pub fn is_field(&self) -> bool {
        match self.one() {
            Some(e) if e != 0 && self.is_commutative() => {
                (1..self.order()).all(|a| self.inverse(a).is_some())
            }
            _ => false,
        }
    }

    /// Same tables (labels and provenance ignored).
    pub fn same_tables(&self, other: &FiniteRing) -> bool {
        self.inner.order == other.inner.order
            && self.inner.one == other.inner.one
            && self.inner.add == other.inner.add
            && self.inner.mul == other.inner.mul
    }

    pub(crate) fn add_table(&self) -> &[usize] {
        &self.inner.add
    }

    pub(crate) fn mul_table(&self) -> &[usize] {
        &self.inner.mul
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.same_tables(other) && self.inner.labels == other.inner.labels
    }
}

impl Eq for FiniteRing {}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("provenance", &self.inner.provenance)
            .field("order", &self.inner.order)
            .field("one", &self.inner.one)
            .field("commutative", &self.inner.commutative)
            .finish()
    }
}

/// An additive subgroup grown one generator at a time.
pub(crate) struct AdditiveSpan<'a> {
    ring: &'a FiniteRing,
    pub(crate) inside: Vec<bool>,
    pub(crate) members: Vec<usize>,
}

impl<'a> AdditiveSpan<'a> {
    pub(crate) fn new(ring: &'a FiniteRing) -> Self {
        Self::from_subgroup(ring, &[0])
    }

    /// `members` must already be an additive subgroup.
    pub(crate) fn from_subgroup(ring: &'a FiniteRing, members: &[usize]) -> Self {
        let mut inside = vec![false; ring.order()];
        for &m in members {
            inside[m] = true;
        }
        AdditiveSpan { ring, inside, members: members.to_vec() }
    }

    /// Replaces the span `H` by `H + <g>`. Returns `false` if `g` was already in it.
    pub(crate) fn absorb(&mut self, g: usize) -> bool {
        if self.inside[g] {
            return false;
        }
        let base = self.members.len();
        let mut m = g;
        // Cosets k*g + H are disjoint until k*g first falls back into H.
        while !self.inside[m] {
            for i in 0..base {
                let x = self.ring.add(self.members[i], m);
                self.inside[x] = true;
                self.members.push(x);
            }
            m = self.ring.add(m, g);
        }
        true
    }

    pub(crate) fn into_sorted(mut self) -> Vec<usize> {
        self.members.sort_unstable();
        self.members
    }
}

/// Smallest subset containing `seed` that is closed under addition,
/// negation and multiplication. Returned sorted; always contains `0`.
pub fn subring_closure(ring: &FiniteRing, seed: &[usize]) -> Vec<usize> {
    let mut span = AdditiveSpan::new(ring);
    let mut gens: Vec<usize> = Vec::new();
    let mut queue = seed.to_vec();
    // The subring is spanned by products of generators, and a product that
    // already lies in the span expands into products of earlier generators.
    while let Some(c) = queue.pop() {
        if span.absorb(c) {
            gens.push(c);
            for &g in &gens {
                queue.push(ring.mul(c, g));
                queue.push(ring.mul(g, c));
            }
        }
    }
    span.into_sorted()
}
