//! Semidirect products `B ⋊_{λ,ρ} S` of a rng `B` by a ring `S`.
//!
//! The carrier is `B ⊕ S` and the product is
//! `(b,s)·(c,t) = (b·c + λ(s)(c) + ρ(t)(b), s·t)`, where `λ` sends `S` into
//! the right-`B`-module endomorphisms of `B` (homomorphically) and `ρ` into
//! the left-module endomorphisms (anti-homomorphically). Endomorphisms are
//! stored as explicit tables over the elements of `B`; composition applies
//! the innermost map first.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::construct::restrict;
use crate::error::{FinringError, Result};
use crate::hom::{check_hom, RingHom};
use crate::ring::{capped_product, FiniteRing, RingDoc};
use crate::structure::{is_subfield, IdealSubset};

/// A rng `B`, a ring `S` and the two action tables.
///
/// `lambda[s][x]` is `λ(s)(x)` and `rho[s][x]` is `ρ(s)(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemidirectSpec {
    pub b: FiniteRing,
    pub s: FiniteRing,
    pub lambda: Vec<Vec<usize>>,
    pub rho: Vec<Vec<usize>>,
}

/// Checked in this order; the first violation is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ActionAxiom {
    ModuleEndo,
    HomInS,
    AntiHomInS,
    Commuting,
    MiddleLinearity,
    UnitPreservation,
}

impl fmt::Display for ActionAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ActionAxiom::ModuleEndo => "module-endo",
            ActionAxiom::HomInS => "hom-in-s",
            ActionAxiom::AntiHomInS => "anti-hom-in-s",
            ActionAxiom::Commuting => "commuting",
            ActionAxiom::MiddleLinearity => "middle-linearity",
            ActionAxiom::UnitPreservation => "unit-preservation",
        })
    }
}

/// First violated action axiom. `s`, `t` index `S`; `x`, `y` index `B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionViolation {
    pub axiom: ActionAxiom,
    pub detail: String,
    pub s: Option<usize>,
    pub t: Option<usize>,
    pub x: Option<usize>,
    pub y: Option<usize>,
}

impl fmt::Display for ActionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.axiom, self.detail)
    }
}

fn violation(
    axiom: ActionAxiom,
    detail: String,
    s: Option<usize>,
    t: Option<usize>,
    x: Option<usize>,
    y: Option<usize>,
) -> ActionViolation {
    ActionViolation { axiom, detail, s, t, x, y }
}

fn check_shape(spec: &SemidirectSpec) -> Result<()> {
    let (nb, ns) = (spec.b.order(), spec.s.order());
    for (name, tables) in [("lambda", &spec.lambda), ("rho", &spec.rho)] {
        if tables.len() != ns {
            return Err(FinringError::Structural(format!(
                "{name} has {} tables, S has {ns} elements",
                tables.len()
            )));
        }
        for (s, table) in tables.iter().enumerate() {
            if table.len() != nb {
                return Err(FinringError::Structural(format!(
                    "{name}[{s}] has {} entries, B has {nb} elements",
                    table.len()
                )));
            }
            if table.iter().any(|&v| v >= nb) {
                return Err(FinringError::Structural(format!("{name}[{s}] points outside B")));
            }
        }
    }
    Ok(())
}

/// Checks all action-pair axioms in the fixed order
/// module-endo, hom-in-s, anti-hom-in-s, commuting, middle-linearity,
/// unit-preservation. Unit preservation is only checked when `S` is unital.
pub fn verify_action_pair(spec: &SemidirectSpec) -> Result<Result<(), ActionViolation>> {
    check_shape(spec)?;
    Ok(scan_action_axioms(spec))
}

fn scan_action_axioms(spec: &SemidirectSpec) -> Result<(), ActionViolation> {
    let (b, s) = (&spec.b, &spec.s);
    let lam = |u: usize, x: usize| spec.lambda[u][x];
    let rho = |u: usize, x: usize| spec.rho[u][x];
    use ActionAxiom::*;

    for u in s.elements() {
        for x in b.elements() {
            for y in b.elements() {
                if lam(u, b.add(x, y)) != b.add(lam(u, x), lam(u, y)) {
                    return Err(violation(ModuleEndo, format!("lambda({u}) not additive"), Some(u), None, Some(x), Some(y)));
                }
                if lam(u, b.mul(x, y)) != b.mul(lam(u, x), y) {
                    return Err(violation(
                        ModuleEndo,
                        format!("lambda({u}) does not commute with right multiplication"),
                        Some(u),
                        None,
                        Some(x),
                        Some(y),
                    ));
                }
                if rho(u, b.add(x, y)) != b.add(rho(u, x), rho(u, y)) {
                    return Err(violation(ModuleEndo, format!("rho({u}) not additive"), Some(u), None, Some(x), Some(y)));
                }
                if rho(u, b.mul(x, y)) != b.mul(x, rho(u, y)) {
                    return Err(violation(
                        ModuleEndo,
                        format!("rho({u}) does not commute with left multiplication"),
                        Some(u),
                        None,
                        Some(x),
                        Some(y),
                    ));
                }
            }
        }
    }
    for u in s.elements() {
        for v in s.elements() {
            for x in b.elements() {
                if lam(s.add(u, v), x) != b.add(lam(u, x), lam(v, x)) {
                    return Err(violation(HomInS, format!("lambda({u}+{v}) != lambda({u})+lambda({v})"), Some(u), Some(v), Some(x), None));
                }
                if lam(s.mul(u, v), x) != lam(u, lam(v, x)) {
                    return Err(violation(HomInS, format!("lambda({u}*{v}) != lambda({u})∘lambda({v})"), Some(u), Some(v), Some(x), None));
                }
            }
        }
    }
    for u in s.elements() {
        for v in s.elements() {
            for x in b.elements() {
                if rho(s.add(u, v), x) != b.add(rho(u, x), rho(v, x)) {
                    return Err(violation(AntiHomInS, format!("rho({u}+{v}) != rho({u})+rho({v})"), Some(u), Some(v), Some(x), None));
                }
                if rho(s.mul(u, v), x) != rho(v, rho(u, x)) {
                    return Err(violation(AntiHomInS, format!("rho({u}*{v}) != rho({v})∘rho({u})"), Some(u), Some(v), Some(x), None));
                }
            }
        }
    }
    for u in s.elements() {
        for v in s.elements() {
            for x in b.elements() {
                if lam(u, rho(v, x)) != rho(v, lam(u, x)) {
                    return Err(violation(Commuting, format!("lambda({u}) and rho({v}) do not commute"), Some(u), Some(v), Some(x), None));
                }
            }
        }
    }
    for u in s.elements() {
        for x in b.elements() {
            for y in b.elements() {
                if b.mul(rho(u, x), y) != b.mul(x, lam(u, y)) {
                    return Err(violation(MiddleLinearity, format!("rho({u})(x)·y != x·lambda({u})(y)"), Some(u), None, Some(x), Some(y)));
                }
            }
        }
    }
    if let Some(e) = s.one() {
        for x in b.elements() {
            if lam(e, x) != x || rho(e, x) != x {
                return Err(violation(UnitPreservation, "lambda(1) or rho(1) is not the identity".into(), Some(e), None, Some(x), None));
            }
        }
    }
    Ok(())
}

impl SemidirectSpec {
    /// Index of `(b, s)` in the product ring.
    #[inline]
    pub fn pair(&self, b: usize, s: usize) -> usize {
        b * self.s.order() + s
    }

    /// Components of a product-ring index.
    #[inline]
    pub fn split(&self, z: usize) -> (usize, usize) {
        (z / self.s.order(), z % self.s.order())
    }
}

/// Builds `B ⋊ S`. `S` must be unital; the result has identity `(0, 1)`.
pub fn build_sdprod(spec: &SemidirectSpec) -> Result<FiniteRing> {
    if !spec.s.is_unital() {
        return Err(FinringError::NotUnital(
            "build_sdprod (use build_sdprod_rng for a non-unital S)".into(),
        ));
    }
    build_sdprod_inner(spec)
}

/// Rng-level product that accepts a non-unital `S`; no identity is claimed
/// when `S` has none.
pub fn build_sdprod_rng(spec: &SemidirectSpec) -> Result<FiniteRing> {
    build_sdprod_inner(spec)
}

fn build_sdprod_inner(spec: &SemidirectSpec) -> Result<FiniteRing> {
    verify_action_pair(spec)?.map_err(FinringError::Action)?;
    let (b, s) = (&spec.b, &spec.s);
    let order = capped_product(&[b.order(), s.order()])?;
    let mut add = Vec::with_capacity(order * order);
    let mut mul = Vec::with_capacity(order * order);
    for z in 0..order {
        let (x, u) = spec.split(z);
        for w in 0..order {
            let (y, v) = spec.split(w);
            add.push(spec.pair(b.add(x, y), s.add(u, v)));
            let first = b.add(b.add(b.mul(x, y), spec.lambda[u][y]), spec.rho[v][x]);
            mul.push(spec.pair(first, s.mul(u, v)));
        }
    }
    let one = s.one().map(|e| spec.pair(0, e));
    let labels = (0..order)
        .map(|z| {
            let (x, u) = spec.split(z);
            format!("({},{})", b.label(x), s.label(u))
        })
        .collect();
    FiniteRing::from_tables(order, add, mul, one, labels, format!("sdprod({}, {})", b.provenance(), s.provenance()))
}

/// Actions of the unital subring `acting ⊆ R` on the ideal `m` by left and
/// right multiplication in `R`.
fn multiplication_actions(r: &FiniteRing, acting: &[usize], m: &IdealSubset) -> Result<SemidirectSpec> {
    let b = restrict(r, m.members(), format!("ideal of order {} in {}", m.len(), r.provenance()))?;
    let s = restrict(r, acting, format!("subring of order {} in {}", acting.len(), r.provenance()))?;
    let mut sorted_acting = acting.to_vec();
    sorted_acting.sort_unstable();
    sorted_acting.dedup();
    let mut pos = vec![usize::MAX; r.order()];
    for (i, &x) in m.members().iter().enumerate() {
        pos[x] = i;
    }
    let lambda = sorted_acting
        .iter()
        .map(|&u| m.members().iter().map(|&x| pos[r.mul(u, x)]).collect())
        .collect();
    let rho = sorted_acting
        .iter()
        .map(|&u| m.members().iter().map(|&x| pos[r.mul(x, u)]).collect())
        .collect();
    Ok(SemidirectSpec { b, s, lambda, rho })
}

/// `M ⋊ κ` with actions given by multiplication in `R`.
///
/// Elements of `B` and `S` are re-indexed in ascending order of their index
/// in `R`: `spec.b` element `i` is `m.members()[i]` and `spec.s` element `j`
/// is the `j`-th smallest member of `kappa`.
pub fn induced_actions(r: &FiniteRing, kappa: &[usize], m: &IdealSubset) -> Result<SemidirectSpec> {
    if !is_subfield(r, kappa) {
        return Err(FinringError::NotField("kappa is not a subfield of R".into()));
    }
    IdealSubset::new(r, m.members())?;
    let spec = multiplication_actions(r, kappa, m)?;
    verify_action_pair(&spec)?.map_err(FinringError::Action)?;
    Ok(spec)
}

/// `I ⋊ R` where all of `R` acts on its ideal `I` by multiplication.
pub fn ideal_actions(r: &FiniteRing, i: &IdealSubset) -> Result<SemidirectSpec> {
    if !r.is_unital() {
        return Err(FinringError::NotUnital("ideal_actions".into()));
    }
    IdealSubset::new(r, i.members())?;
    let all: Vec<usize> = r.elements().collect();
    multiplication_actions(r, &all, i)
}

/// Action pair on the algebra `A` given by multiplication through `embed`.
pub fn algebra_actions(a: &FiniteRing, kappa: &FiniteRing, embed: &RingHom) -> Result<SemidirectSpec> {
    if !kappa.is_field() {
        return Err(FinringError::NotField(kappa.provenance().to_string()));
    }
    if embed.domain.order() != kappa.order() || embed.codomain.order() != a.order() {
        return Err(FinringError::InvalidArgument("embedding does not go from kappa to A".into()));
    }
    if !embed.unital {
        return Err(FinringError::InvalidArgument("embedding must be unital".into()));
    }
    check_hom(embed).map_err(FinringError::Hom)?;
    if !embed.is_injective() {
        return Err(FinringError::InvalidArgument("embedding is not injective".into()));
    }
    let lambda = kappa
        .elements()
        .map(|u| a.elements().map(|x| a.mul(embed.apply(u), x)).collect())
        .collect();
    let rho = kappa
        .elements()
        .map(|u| a.elements().map(|x| a.mul(x, embed.apply(u))).collect())
        .collect();
    Ok(SemidirectSpec { b: a.clone(), s: kappa.clone(), lambda, rho })
}

/// `A ⋊ κ` for a κ-algebra `A` presented by the unital injective `embed`.
pub fn algebra_sdprod(a: &FiniteRing, kappa: &FiniteRing, embed: &RingHom) -> Result<FiniteRing> {
    build_sdprod(&algebra_actions(a, kappa, embed)?)
}

/// The embedding of the prime field `Z/pZ` into a ring of characteristic `p`.
pub fn prime_field_embedding(a: &FiniteRing, kappa: &FiniteRing) -> Result<RingHom> {
    let e = a.one().ok_or_else(|| FinringError::NotUnital("algebra".into()))?;
    let p = kappa.order();
    if !kappa.is_field() || !crate::construct::is_prime(p) || kappa.characteristic() != Some(p) {
        return Err(FinringError::InvalidArgument(format!(
            "{} is not a prime field; supply an explicit embedding",
            kappa.provenance()
        )));
    }
    if a.characteristic() != Some(p) {
        return Err(FinringError::InvalidArgument(format!(
            "{} does not have characteristic {p}",
            a.provenance()
        )));
    }
    let ke = kappa.one().expect("fields are unital");
    let mut map = vec![0; p];
    for k in 0..p {
        map[kappa.scalar(k, ke)] = a.scalar(k, e);
    }
    let h = RingHom::new(kappa.clone(), a.clone(), map, true);
    check_hom(&h).map_err(FinringError::Hom)?;
    Ok(h)
}

/// Greedy minimal additive generating set: repeatedly take the element of
/// largest additive order outside the subgroup generated so far.
pub fn additive_generators(r: &FiniteRing) -> Vec<usize> {
    let n = r.order();
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut span = vec![0];
    let mut gens = Vec::new();
    let orders: Vec<usize> = r.elements().map(|a| r.additive_order(a)).collect();
    while span.len() < n {
        let g = r
            .elements()
            .filter(|&a| !inside[a])
            .max_by(|&a, &b| orders[a].cmp(&orders[b]).then(b.cmp(&a)))
            .expect("span is proper");
        gens.push(g);
        let mut i = 0;
        while i < span.len() {
            let x = r.add(span[i], g);
            if !inside[x] {
                inside[x] = true;
                span.push(x);
            }
            i += 1;
        }
    }
    gens
}

/// Extends images of additive generators to an additive map on all of `r`,
/// or `None` when the assignment is not well defined.
fn extend_additive<V: Clone + PartialEq>(
    r: &FiniteRing,
    gens: &[usize],
    images: &[V],
    zero: V,
    add: impl Fn(&V, &V) -> V,
) -> Option<Vec<V>> {
    let mut out: Vec<Option<V>> = vec![None; r.order()];
    out[0] = Some(zero);
    let mut frontier = vec![0];
    while let Some(x) = frontier.pop() {
        let fx = out[x].clone().expect("frontier elements are assigned");
        for (g, img) in gens.iter().zip(images) {
            let y = r.add(x, *g);
            let fy = add(&fx, img);
            match &out[y] {
                Some(prev) if *prev != fy => return None,
                Some(_) => {}
                None => {
                    out[y] = Some(fy);
                    frontier.push(y);
                }
            }
        }
    }
    out.into_iter().collect()
}

fn endo_add(b: &FiniteRing, f: &[usize], g: &[usize]) -> Vec<usize> {
    f.iter().zip(g).map(|(&x, &y)| b.add(x, y)).collect()
}

/// All additive endomorphisms of `b` satisfying `keep`.
fn additive_endos(b: &FiniteRing, keep: impl Fn(&[usize]) -> bool) -> Vec<Vec<usize>> {
    let gens = additive_generators(b);
    let orders: Vec<usize> = gens.iter().map(|&g| b.additive_order(g)).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let ok = choice.iter().zip(&orders).all(|(&img, &ord)| ord % b.additive_order(img) == 0);
        if ok {
            if let Some(map) = extend_additive(b, &gens, &choice, 0, |x, y| b.add(*x, *y)) {
                if keep(&map) {
                    out.push(map);
                }
            }
        }
        // odometer over images
        let mut i = 0;
        loop {
            if i == choice.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < b.order() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Families `S → End(B)` built from generator images, extended additively
/// and filtered by `keep`.
fn action_families(
    b: &FiniteRing,
    s: &FiniteRing,
    candidates: &[Vec<usize>],
    keep: impl Fn(&[Vec<usize>]) -> bool,
) -> Vec<Vec<Vec<usize>>> {
    let gens = additive_generators(s);
    let zero_map = vec![0; b.order()];
    let mut out = Vec::new();
    if gens.is_empty() {
        let family = vec![zero_map];
        if keep(&family) {
            out.push(family);
        }
        return out;
    }
    if candidates.is_empty() {
        return out;
    }
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<Vec<usize>> = choice.iter().map(|&c| candidates[c].clone()).collect();
        if let Some(family) = extend_additive(s, &gens, &images, zero_map.clone(), |f, g| endo_add(b, f, g)) {
            if keep(&family) {
                out.push(family);
            }
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < candidates.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// All action pairs `(λ, ρ)` making `B ⋊ S` a semidirect product.
///
/// Candidate endomorphism tables are assigned to a greedy additive
/// generating set of `S` and extended additively; the multiplicative,
/// commuting, middle-linearity and unit conditions are then checked and every
/// surviving pair is re-verified with [`verify_action_pair`].
pub fn enumerate_action_pairs(b: &FiniteRing, s: &FiniteRing) -> Result<Vec<SemidirectSpec>> {
    capped_product(&[b.order(), s.order()])?;
    let is_right = |f: &[usize]| b.elements().all(|x| b.elements().all(|y| f[b.mul(x, y)] == b.mul(f[x], y)));
    let is_left = |f: &[usize]| b.elements().all(|x| b.elements().all(|y| f[b.mul(x, y)] == b.mul(x, f[y])));
    let (right_endos, left_endos) = match b.one() {
        // Over a unital B, f(x) = f(1)x for right-module maps and x f(1) for left ones.
        Some(_) => {
            let lmul = |c: usize| b.elements().map(|x| b.mul(c, x)).collect::<Vec<_>>();
            let rmul = |c: usize| b.elements().map(|x| b.mul(x, c)).collect::<Vec<_>>();
            (
                b.elements().map(lmul).filter(|f| is_right(f)).collect::<Vec<_>>(),
                b.elements().map(rmul).filter(|f| is_left(f)).collect::<Vec<_>>(),
            )
        }
        None => (additive_endos(b, is_right), additive_endos(b, is_left)),
    };
    let unit_ok = |fam: &[Vec<usize>]| match s.one() {
        Some(e) => fam[e].iter().enumerate().all(|(x, &y)| x == y),
        None => true,
    };
    let lambdas = action_families(b, s, &right_endos, |fam| {
        unit_ok(fam)
            && s.elements().all(|u| {
                s.elements().all(|v| b.elements().all(|x| fam[s.mul(u, v)][x] == fam[u][fam[v][x]]))
            })
    });
    let rhos = action_families(b, s, &left_endos, |fam| {
        unit_ok(fam)
            && s.elements().all(|u| {
                s.elements().all(|v| b.elements().all(|x| fam[s.mul(u, v)][x] == fam[v][fam[u][x]]))
            })
    });
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for lambda in &lambdas {
        for rho in &rhos {
            let spec = SemidirectSpec { b: b.clone(), s: s.clone(), lambda: lambda.clone(), rho: rho.clone() };
            if verify_action_pair(&spec)?.is_ok() && seen.insert((lambda.clone(), rho.clone())) {
                out.push(spec);
            }
        }
    }
    Ok(out)
}

/// Serialized semidirect data: both rings as ring documents and the action
/// tables, `|S|` tables of `|B|` indices each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemidirectDoc {
    #[serde(rename = "B")]
    pub b: RingDoc,
    #[serde(rename = "S")]
    pub s: RingDoc,
    pub lambda: Vec<Vec<usize>>,
    pub rho: Vec<Vec<usize>>,
}

impl SemidirectDoc {
    pub fn from_json(text: &str) -> Result<SemidirectDoc> {
        serde_json::from_str(text).map_err(|e| FinringError::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("semidirect documents always serialize")
    }

    pub fn to_spec(&self) -> Result<SemidirectSpec> {
        Ok(SemidirectSpec {
            b: FiniteRing::from_doc(&self.b, "B")?,
            s: FiniteRing::from_doc(&self.s, "S")?,
            lambda: self.lambda.clone(),
            rho: self.rho.clone(),
        })
    }
}

impl From<&SemidirectSpec> for SemidirectDoc {
    fn from(spec: &SemidirectSpec) -> Self {
        SemidirectDoc {
            b: spec.b.to_doc(),
            s: spec.s.to_doc(),
            lambda: spec.lambda.clone(),
            rho: spec.rho.clone(),
        }
    }
}

/// `2(Z/4Z) ⋊ Z/2Z` with `1` acting as the identity on both sides.
pub fn two_z4_by_z2() -> Result<SemidirectSpec> {
    let z4 = crate::construct::make_zmod(4)?;
    let b = restrict(&z4, &[0, 2], "2Zmod(4)")?;
    let s = crate::construct::make_zmod(2)?;
    let zero = vec![0, 0];
    let id = vec![0, 1];
    Ok(SemidirectSpec { b, s, lambda: vec![zero.clone(), id.clone()], rho: vec![zero, id] })
}
