//! Structural analysis: units, two-sided ideals, maximal ideals, locality,
//! subfields, and quotient rings with their canonical projections.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{FinringError, Result};
use crate::hom::{check_hom, RingHom};
use crate::ring::{check_cap, subring_closure, AdditiveSpan, FiniteRing};

/// A two-sided ideal, stored as a sorted set of element indices of `parent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSubset {
    pub parent: FiniteRing,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl IdealSubset {
    /// Validates that `members` is a two-sided ideal of `parent`.
    pub fn new(parent: &FiniteRing, members: &[usize]) -> Result<IdealSubset> {
        let ideal = Self::unchecked(parent, members.to_vec());
        if ideal.members.iter().any(|&m| m >= parent.order()) {
            return Err(FinringError::NotIdeal("element outside the ring".into()));
        }
        if !ideal.mask[0] {
            return Err(FinringError::NotIdeal("missing 0".into()));
        }
        for &x in &ideal.members {
            if !ideal.mask[parent.neg(x)] {
                return Err(FinringError::NotIdeal(format!("-{} missing", parent.label(x))));
            }
            for &y in &ideal.members {
                if !ideal.mask[parent.add(x, y)] {
                    return Err(FinringError::NotIdeal(format!(
                        "{}+{} missing",
                        parent.label(x),
                        parent.label(y)
                    )));
                }
            }
            for r in parent.elements() {
                if !ideal.mask[parent.mul(r, x)] || !ideal.mask[parent.mul(x, r)] {
                    return Err(FinringError::NotIdeal(format!(
                        "not absorbing at ({}, {})",
                        parent.label(r),
                        parent.label(x)
                    )));
                }
            }
        }
        Ok(ideal)
    }

    fn unchecked(parent: &FiniteRing, mut members: Vec<usize>) -> IdealSubset {
        members.sort_unstable();
        members.dedup();
        let mut mask = vec![false; parent.order()];
        for &m in members.iter().filter(|&&m| m < parent.order()) {
            mask[m] = true;
        }
        IdealSubset { parent: parent.clone(), members, mask }
    }

    pub fn zero(parent: &FiniteRing) -> IdealSubset {
        Self::unchecked(parent, vec![0])
    }

    pub fn whole(parent: &FiniteRing) -> IdealSubset {
        Self::unchecked(parent, parent.elements().collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn contains(&self, a: usize) -> bool {
        self.mask[a]
    }

    pub fn is_proper(&self) -> bool {
        self.members.len() < self.parent.order()
    }

    pub fn is_subset_of(&self, other: &IdealSubset) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn labels(&self) -> Vec<String> {
        self.members.iter().map(|&m| self.parent.label(m).to_string()).collect()
    }
}

/// Ordering used for every list of ideals or subfields: size, then members.
fn size_then_lex(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn require_unital(r: &FiniteRing, what: &str) -> Result<usize> {
    r.one().ok_or_else(|| FinringError::NotUnital(what.into()))
}

/// Elements with a two-sided inverse.
pub fn units(r: &FiniteRing) -> Result<Vec<usize>> {
    require_unital(r, "units")?;
    Ok(r.elements().filter(|&a| r.inverse(a).is_some()).collect())
}

/// Smallest two-sided ideal containing `seed`.
pub fn ideal_closure(r: &FiniteRing, seed: &[usize]) -> IdealSubset {
    let mut span = AdditiveSpan::new(r);
    let mut queue = seed.to_vec();
    while let Some(c) = queue.pop() {
        if span.absorb(c) {
            for t in r.elements() {
                queue.push(r.mul(t, c));
                queue.push(r.mul(c, t));
            }
        }
    }
    IdealSubset::unchecked(r, span.into_sorted())
}

pub fn principal_ideal(r: &FiniteRing, a: usize) -> IdealSubset {
    ideal_closure(r, &[a])
}

/// `I + J`; both must be ideals of the same ring.
pub fn ideal_sum(i: &IdealSubset, j: &IdealSubset) -> IdealSubset {
    let r = &i.parent;
    let mut span = AdditiveSpan::from_subgroup(r, i.members());
    for &y in j.members() {
        span.absorb(y);
    }
    IdealSubset::unchecked(r, span.into_sorted())
}

/// Every two-sided ideal, sorted by size then members.
///
/// Starts from `{0}` and all principal ideals and closes the collection
/// under pairwise sums. Every ideal of a finite ring is a finite sum of the
/// principal ideals of its elements, so the closure is the full lattice.
pub fn all_ideals(r: &FiniteRing) -> Result<Vec<IdealSubset>> {
    check_cap(r.order())?;
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut ideals: Vec<IdealSubset> = Vec::new();
    let mut worklist: Vec<IdealSubset> = Vec::new();
    let offer = |i: IdealSubset, seen: &mut HashSet<Vec<usize>>, ideals: &mut Vec<IdealSubset>, worklist: &mut Vec<IdealSubset>| {
        if seen.insert(i.members().to_vec()) {
            ideals.push(i.clone());
            worklist.push(i);
        }
    };
    offer(IdealSubset::zero(r), &mut seen, &mut ideals, &mut worklist);
    for a in r.elements() {
        offer(principal_ideal(r, a), &mut seen, &mut ideals, &mut worklist);
    }
    while let Some(i) = worklist.pop() {
        let snapshot: Vec<IdealSubset> = ideals.clone();
        for j in &snapshot {
            offer(ideal_sum(&i, j), &mut seen, &mut ideals, &mut worklist);
        }
    }
    ideals.sort_by(|a, b| size_then_lex(a.members(), b.members()));
    Ok(ideals)
}

/// Proper ideals not strictly contained in another proper ideal.
///
/// Derived from the full ideal list by containment; the zero ring has none.
pub fn maximal_ideals(r: &FiniteRing) -> Result<Vec<IdealSubset>> {
    require_unital(r, "maximal_ideals")?;
    let proper: Vec<IdealSubset> = all_ideals(r)?.into_iter().filter(|i| i.is_proper()).collect();
    Ok(proper
        .iter()
        .filter(|i| !proper.iter().any(|j| j.len() > i.len() && i.is_subset_of(j)))
        .cloned()
        .collect())
}

/// The unique maximal ideal when `r` is local.
pub fn is_local(r: &FiniteRing) -> Result<Option<IdealSubset>> {
    let mut max = maximal_ideals(r)?;
    Ok(if max.len() == 1 { max.pop() } else { None })
}

/// Whether `set` is a unital subring (sharing `r`'s identity) that is a field.
pub fn is_subfield(r: &FiniteRing, set: &[usize]) -> bool {
    let Some(e) = r.one() else { return false };
    if e == 0 {
        return false;
    }
    let mut inside = vec![false; r.order()];
    for &x in set {
        if x >= r.order() {
            return false;
        }
        inside[x] = true;
    }
    if !inside[0] || !inside[e] {
        return false;
    }
    set.iter().all(|&x| {
        inside[r.neg(x)]
            && set.iter().all(|&y| {
                inside[r.add(x, y)] && inside[r.mul(x, y)] && r.mul(x, y) == r.mul(y, x)
            })
            && (x == 0 || set.iter().any(|&y| r.mul(x, y) == e))
    })
}

/// All subfields containing `r`'s identity, sorted by size then members.
///
/// A finite field is generated as a unital ring by a single element over its
/// prime field, and the prime field is generated by `1`, so every subfield
/// is `subring_closure({1, a})` for some `a`.
pub fn subfields(r: &FiniteRing) -> Result<Vec<Vec<usize>>> {
    let e = require_unital(r, "subfields")?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in r.elements() {
        let c = subring_closure(r, &[e, a]);
        if seen.insert(c.clone()) && is_subfield(r, &c) {
            out.push(c);
        }
    }
    out.sort_by(|a, b| size_then_lex(a, b));
    Ok(out)
}

/// `R/I` together with its canonical projection.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    pub quotient: FiniteRing,
    pub projection: RingHom,
    /// Least parent index in each coset, indexed by quotient element.
    pub coset_reps: Vec<usize>,
}

impl QuotientPresentation {
    /// Coset of a parent element.
    pub fn class_of(&self, a: usize) -> usize {
        self.projection.map[a]
    }
}

/// Builds `R/I` for a proper ideal `I`.
pub fn quotient(r: &FiniteRing, i: &IdealSubset) -> Result<QuotientPresentation> {
    if !i.is_proper() {
        return Err(FinringError::InvalidArgument(
            "quotient by the whole ring; use quotient_allow_zero".into(),
        ));
    }
    quotient_allow_zero(r, i)
}

/// As [`quotient`], but also accepts `I = R` and returns the zero ring.
pub fn quotient_allow_zero(r: &FiniteRing, i: &IdealSubset) -> Result<QuotientPresentation> {
    let n = r.order();
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for a in r.elements() {
        if class[a] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(a);
        for &m in i.members() {
            class[r.add(a, m)] = id;
        }
    }
    let k = reps.len();
    let mut add = Vec::with_capacity(k * k);
    let mut mul = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            add.push(class[r.add(a, b)]);
            mul.push(class[r.mul(a, b)]);
        }
    }
    let one = r.one().map(|e| class[e]);
    let labels = reps.iter().map(|&a| format!("[{}]", r.label(a))).collect();
    let quotient = FiniteRing::from_tables(
        k,
        add,
        mul,
        one,
        labels,
        format!("{} / ideal of order {}", r.provenance(), i.len()),
    )?;
    let projection = RingHom::new(r.clone(), quotient.clone(), class, r.is_unital());
    check_hom(&projection).map_err(FinringError::Hom)?;
    Ok(QuotientPresentation { quotient, projection, coset_reps: reps })
}

/// Summary document for the `analyze` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub ring: String,
    pub order: usize,
    pub commutative: bool,
    pub unital: bool,
    pub unit_count: Option<usize>,
    pub ideal_count: usize,
    pub maximal_ideals: Vec<Vec<usize>>,
    pub local: Option<bool>,
    pub subfields: Vec<Vec<usize>>,
}

pub fn analyze(r: &FiniteRing) -> Result<AnalysisReport> {
    let ideals = all_ideals(r)?;
    let (unit_count, maximal, local, fields) = if r.is_unital() {
        let max = maximal_ideals(r)?;
        let local = (r.order() >= 2).then_some(max.len() == 1);
        (
            Some(units(r)?.len()),
            max.iter().map(|m| m.members().to_vec()).collect(),
            local,
            subfields(r)?,
        )
    } else {
        (None, Vec::new(), None, Vec::new())
    };
    Ok(AnalysisReport {
        ring: r.provenance().to_string(),
        order: r.order(),
        commutative: r.is_commutative(),
        unital: r.is_unital(),
        unit_count,
        ideal_count: ideals.len(),
        maximal_ideals: maximal,
        local,
        subfields: fields,
    })
}
