//! The fixed ring catalogue and the theorem-by-theorem verification matrix.
//!
//! Every check is a pure function of one catalogue entry. Entries may be
//! evaluated in parallel; rows are always emitted in catalogue order, then
//! check order, so serial and parallel runs produce identical reports.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::{make_function_ring, make_gf, make_poly_quotient, make_product, make_zmod};
use crate::error::Result;
use crate::hom::{check_hom, RingHom};
use crate::ring::{AxiomReport, FiniteRing};
use crate::semidirect::{algebra_actions, build_sdprod, prime_field_embedding, two_z4_by_z2, SemidirectSpec};
use crate::star::{build_phi_psi, check_star_decomposition, check_star_section, class_witnesses, decompose, phi_map, star_witness_for};
use crate::structure::{all_ideals, is_local, is_subfield, maximal_ideals, quotient, subfields, units, IdealSubset};

#[derive(Clone, Debug)]
pub struct CatalogueEntry {
    pub id: String,
    pub ring: FiniteRing,
    /// The action data when the ring was built as a semidirect product.
    pub sdprod: Option<SemidirectSpec>,
}

impl CatalogueEntry {
    pub fn plain(id: impl Into<String>, ring: FiniteRing) -> CatalogueEntry {
        CatalogueEntry { id: id.into(), ring, sdprod: None }
    }
}

fn kappa_by_kappa(p: usize, k: usize) -> Result<SemidirectSpec> {
    let f = make_gf(p, k)?;
    algebra_actions(&f, &f, &RingHom::identity(&f))
}

fn gf_id(p: usize, k: usize) -> String {
    if k == 1 {
        format!("GF({p})")
    } else {
        format!("GF({p},{k})")
    }
}

/// The standard catalogue: `Z/nZ` (2..=16), `GF(q)` for
/// q ∈ {2,3,4,5,7,8,9}, `GF(q)[x]/⟨x²⟩` and `⟨x³⟩` and `GF(q)×GF(q)` for
/// q ∈ {2,3}, three function rings, `κ⋊κ` for κ ∈ {GF(2),GF(3),GF(4),GF(5)},
/// `2(Z/4Z)⋊Z/2Z` and `GF(4)⋊GF(2)`.
pub fn standard_catalogue() -> Result<Vec<CatalogueEntry>> {
    let mut out = Vec::new();
    for n in 2..=16 {
        out.push(CatalogueEntry::plain(format!("Zmod({n})"), make_zmod(n)?));
    }
    for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
        out.push(CatalogueEntry::plain(gf_id(p, k), make_gf(p, k)?));
    }
    for p in [2, 3] {
        let f = make_gf(p, 1)?;
        out.push(CatalogueEntry::plain(format!("polyquot(GF({p}), [0,0,1])"), make_poly_quotient(&f, &[0, 0, 1])?));
        out.push(CatalogueEntry::plain(format!("polyquot(GF({p}), [0,0,0,1])"), make_poly_quotient(&f, &[0, 0, 0, 1])?));
    }
    for p in [2, 3] {
        let f = make_gf(p, 1)?;
        out.push(CatalogueEntry::plain(format!("product(GF({p}), GF({p}))"), make_product(&f, &f)?));
    }
    for (p, x) in [(2, 2), (2, 3), (3, 2)] {
        let f = make_gf(p, 1)?;
        out.push(CatalogueEntry::plain(format!("fnring({x}, GF({p}))"), make_function_ring(x, &f)?));
    }
    for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
        let spec = kappa_by_kappa(p, k)?;
        let id = gf_id(p, k);
        out.push(CatalogueEntry { id: format!("sdprod_alg({id}, {id})"), ring: build_sdprod(&spec)?, sdprod: Some(spec) });
    }
    let spec = two_z4_by_z2()?;
    out.push(CatalogueEntry { id: "2Zmod(4) ⋊ Zmod(2)".into(), ring: build_sdprod(&spec)?, sdprod: Some(spec) });
    let (gf4, gf2) = (make_gf(2, 2)?, make_gf(2, 1)?);
    let spec = algebra_actions(&gf4, &gf2, &prime_field_embedding(&gf4, &gf2)?)?;
    out.push(CatalogueEntry { id: "sdprod_alg(GF(2,2), GF(2))".into(), ring: build_sdprod(&spec)?, sdprod: Some(spec) });
    Ok(out)
}

/// One cell of the verification matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub ring_id: String,
    pub check_id: String,
    pub paper_ref: String,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogueReport {
    pub rows: Vec<CheckRow>,
}

impl CatalogueReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn row(&self, ring_id: &str, check_id: &str) -> Option<&CheckRow> {
        self.rows.iter().find(|r| r.ring_id == ring_id && r.check_id == check_id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.rows).expect("report rows always serialize")
    }

    /// Fixed-width table, one row per check.
    pub fn to_table(&self) -> String {
        let w_ring = self.rows.iter().map(|r| r.ring_id.chars().count()).max().unwrap_or(4).max(4);
        let w_check = self.rows.iter().map(|r| r.check_id.len()).max().unwrap_or(5).max(5);
        let mut out = String::new();
        let _ = writeln!(out, "{:<w_ring$}  {:<w_check$}  {:<6}  reference", "ring", "check", "result");
        for r in &self.rows {
            let pad = w_ring - r.ring_id.chars().count();
            let _ = write!(
                out,
                "{}{}  {:<w_check$}  {:<6}  {}",
                r.ring_id,
                " ".repeat(pad),
                r.check_id,
                if r.pass { "PASS" } else { "FAIL" },
                r.paper_ref
            );
            if let (false, Some(w)) = (r.pass, &r.witness) {
                let _ = write!(out, "  [{w}]");
            }
            out.push('\n');
        }
        let failed = self.failures().count();
        let _ = writeln!(out, "{} checks, {} passed, {} failed", self.rows.len(), self.rows.len() - failed, failed);
        out
    }
}

/// Outcome of a single check: `Ok(None)` passes, `Ok(Some(w))` fails with
/// witness `w`, `Err` fails with the error as witness.
type Outcome = Result<Option<String>>;

struct Check {
    id: &'static str,
    reference: &'static str,
    run: fn(&CatalogueEntry) -> Outcome,
}

const CHECKS: &[Check] = &[
    Check { id: "ring-axioms", reference: "ring axioms (associative, distributive, identity)", run: chk_ring_axioms },
    Check { id: "ideal-lagrange", reference: "ideals are additive subgroups: |I| divides |R|", run: chk_lagrange },
    Check { id: "simple-iff-field", reference: "fields have only trivial ideals, and conversely", run: chk_simple_iff_field },
    Check { id: "residue-field", reference: "R/m is a field for m maximal", run: chk_residue_field },
    Check { id: "subfield-meets-maximal", reference: "m ∩ κ = {0} (injectivity of φ)", run: chk_meet_trivial },
    Check { id: "phi-injective", reference: "φ: m⋊κ → R is an injective homomorphism", run: chk_phi_injective },
    Check { id: "star-oracle-agreement", reference: "section exists ⇔ R = m ⊕ κ", run: chk_oracle_agreement },
    Check { id: "decomposition-bijection", reference: "R ≅ m ⊕ κ as additive groups", run: chk_decomposition },
    Check { id: "phi-psi-round-trip", reference: "R ≅ m⋊κ via φ and ψ", run: chk_phi_psi },
    Check { id: "maximal-field", reference: "witness fields are maximal; one field order per m", run: chk_maximal_field },
    Check { id: "field-trivial-star", reference: "every field has (★) with m = {0}", run: chk_field_star },
    Check { id: "class-intersection", reference: "classes (A) and (B) meet only in fields", run: chk_class_intersection },
    Check { id: "sdprod-structure", reference: "m⋊κ: {(x,0)} maximal, injections multiplicative", run: chk_sdprod_structure },
    Check { id: "sdprod-not-local", reference: "B⋊κ with B unital, 1 ≠ 0, is not local", run: chk_not_local },
    Check { id: "unit-formula", reference: "U(κ⋊κ) = {(a,b) : b ≠ 0, a = 0 or a ≠ -b}", run: chk_unit_formula },
];

/// Identifiers of every check in matrix order.
pub fn check_ids() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.id).collect()
}

fn run_entry(entry: &CatalogueEntry) -> Vec<CheckRow> {
    CHECKS
        .iter()
        .map(|c| {
            let (pass, witness) = match (c.run)(entry) {
                Ok(None) => (true, None),
                Ok(Some(w)) => (false, Some(w)),
                Err(e) => (false, Some(e.to_string())),
            };
            CheckRow {
                ring_id: entry.id.clone(),
                check_id: c.id.to_string(),
                paper_ref: c.reference.to_string(),
                pass,
                witness,
            }
        })
        .collect()
}

/// Runs every check on every entry, in parallel across entries.
pub fn verify_catalogue(entries: &[CatalogueEntry]) -> CatalogueReport {
    let rows: Vec<Vec<CheckRow>> = entries.par_iter().map(run_entry).collect();
    CatalogueReport { rows: rows.into_iter().flatten().collect() }
}

/// Single-threaded variant of [`verify_catalogue`].
pub fn verify_catalogue_serial(entries: &[CatalogueEntry]) -> CatalogueReport {
    CatalogueReport { rows: entries.iter().flat_map(run_entry).collect() }
}

fn unital_nonzero(r: &FiniteRing) -> bool {
    r.is_unital() && r.order() >= 2
}

fn fail(msg: String) -> Outcome {
    Ok(Some(msg))
}

fn chk_ring_axioms(e: &CatalogueEntry) -> Outcome {
    Ok(match e.ring.verify() {
        AxiomReport::Pass => None,
        AxiomReport::Fail(f) => Some(f.to_string()),
    })
}

fn chk_lagrange(e: &CatalogueEntry) -> Outcome {
    for i in all_ideals(&e.ring)? {
        if !e.ring.order().is_multiple_of(i.len()) {
            return fail(format!("ideal {:?} of size {}", i.members(), i.len()));
        }
    }
    Ok(None)
}

fn chk_simple_iff_field(e: &CatalogueEntry) -> Outcome {
    let r = &e.ring;
    let n_ideals = all_ideals(r)?.len();
    if r.is_field() && n_ideals != 2 {
        return fail(format!("field with {n_ideals} ideals"));
    }
    if unital_nonzero(r) && r.is_commutative() && n_ideals == 2 && !r.is_field() {
        return fail("commutative ring with only trivial ideals is not a field".into());
    }
    Ok(None)
}

fn chk_residue_field(e: &CatalogueEntry) -> Outcome {
    let r = &e.ring;
    if !unital_nonzero(r) {
        return Ok(None);
    }
    for m in maximal_ideals(r)? {
        let q = quotient(r, &m)?;
        // A noncommutative simple quotient is reported by the section oracle;
        // only commutative quotients are asserted to be fields.
        if q.quotient.is_commutative() && !q.quotient.is_field() {
            return fail(format!("R/m not a field for m = {:?}", m.members()));
        }
    }
    Ok(None)
}

fn chk_meet_trivial(e: &CatalogueEntry) -> Outcome {
    let r = &e.ring;
    if !unital_nonzero(r) {
        return Ok(None);
    }
    let fields = subfields(r)?;
    for m in maximal_ideals(r)? {
        for kappa in &fields {
            if let Some(&x) = kappa.iter().find(|&&x| x != 0 && m.contains(x)) {
                return fail(format!("{} in m {:?} and κ {:?}", r.label(x), m.members(), kappa));
            }
        }
    }
    Ok(None)
}

fn chk_phi_injective(e: &CatalogueEntry) -> Outcome {
    let r = &e.ring;
    if !unital_nonzero(r) {
        return Ok(None);
    }
    let fields = subfields(r)?;
    for m in maximal_ideals(r)? {
        for kappa in &fields {
            let (_, _, phi) = phi_map(r, &m, kappa)?;
            if let Err(f) = check_hom(&phi) {
                return fail(format!("φ not a homomorphism for m {:?}: {f}", m.members()));
            }
            if !phi.is_injective() {
                return fail(format!("φ not injective for m {:?}, κ {:?}", m.members(), kappa));
            }
        }
    }
    Ok(None)
}

fn chk_oracle_agreement(e: &CatalogueEntry) -> Outcome {
    let r = &e.ring;
    if !unital_nonzero(r) {
        return Ok(None);
    }
    let fields = subfields(r)?;
    for m in maximal_ideals(r)? {
        if !quotient(r, &m)?.quotient.is_commutative() {
            continue;
        }
        let by_section = check_star_section(r, &m)?.is_some();
        let by_count = fields.iter().any(|k| m.len() * k.len() == r.order());
        if by_section != by_count {
            return fail(format!(
                "m {:?}: section search says {by_section}, decomposition says {by_count}",
                m.members()
            ));
        }
    }
    Ok(None)
}

fn chk_decomposition(e: &CatalogueEntry) -> Outcome {
    let r = &e.ring;
    if !unital_nonzero(r) {
        return Ok(None);
    }
    let Some(w) = check_star_decomposition(r)? else { return Ok(None) };
    let mut hit = vec![false; r.order()];
    for &x in w.m.members() {
        for &u in &w.kappa {
            let a = r.add(x, u);
            if hit[a] {
                return fail(format!("{} has two decompositions", r.label(a)));
            }
            hit[a] = true;
        }
    }
    for a in r.elements() {
        let (x, u) = decompose(&w, a);
        if !hit[a] || r.add(x, u) != a || !w.m.contains(x) || w.kappa.binary_search(&u).is_err() {
            return fail(format!("decomposition of {} is wrong", r.label(a)));
        }
    }
    Ok(None)
}

fn chk_phi_psi(e: &CatalogueEntry) -> Outcome {
    let r = &e.ring;
    if !unital_nonzero(r) {
        return Ok(None);
    }
    let Some(w) = check_star_decomposition(r)? else { return Ok(None) };
    let pp = build_phi_psi(r, &w)?;
    if !pp.phi.then(&pp.psi).is_identity() || !pp.psi.then(&pp.phi).is_identity() {
        return fail("φ and ψ are not inverse".into());
    }
    Ok(None)
}

fn chk_maximal_field(e: &CatalogueEntry) -> Outcome {
    let r = &e.ring;
    if !unital_nonzero(r) {
        return Ok(None);
    }
    let fields = subfields(r)?;
    for m in maximal_ideals(r)? {
        let mut orders = Vec::new();
        for kappa in &fields {
            if star_witness_for(r, &m, kappa)?.is_none() {
                continue;
            }
            orders.push(kappa.len());
            for bigger in fields.iter().filter(|k2| k2.len() > kappa.len()) {
                let contains = kappa.iter().all(|x| bigger.binary_search(x).is_ok());
                if contains && star_witness_for(r, &m, bigger)?.is_none() {
                    return fail(format!("κ {:?} ⊆ κ' {:?} but κ' is not a witness", kappa, bigger));
                }
            }
        }
        if orders.windows(2).any(|w| w[0] != w[1]) {
            return fail(format!("witness fields of different orders for m {:?}", m.members()));
        }
    }
    Ok(None)
}

fn chk_field_star(e: &CatalogueEntry) -> Outcome {
    let r = &e.ring;
    if !r.is_field() {
        return Ok(None);
    }
    let all: Vec<usize> = r.elements().collect();
    let zero = IdealSubset::zero(r);
    if star_witness_for(r, &zero, &all)?.is_none() {
        return fail("field without the trivial witness".into());
    }
    match check_star_decomposition(r)? {
        Some(w) if w.m.members() == [0] => Ok(None),
        Some(w) => fail(format!("first witness has m = {:?}", w.m.members())),
        None => fail("no witness for a field".into()),
    }
}

fn chk_class_intersection(e: &CatalogueEntry) -> Outcome {
    let r = &e.ring;
    if !unital_nonzero(r) {
        return Ok(None);
    }
    let (a, b) = class_witnesses(r)?;
    if a.is_some() && b.is_some() && !r.is_field() {
        return fail("in classes (A) and (B) but not a field".into());
    }
    Ok(None)
}

fn chk_sdprod_structure(e: &CatalogueEntry) -> Outcome {
    let Some(spec) = &e.sdprod else { return Ok(None) };
    let r = &e.ring;
    let (b, s) = (&spec.b, &spec.s);
    for x in b.elements() {
        for y in b.elements() {
            if r.mul(spec.pair(x, 0), spec.pair(y, 0)) != spec.pair(b.mul(x, y), 0) {
                return fail(format!("i_B not multiplicative at ({x},{y})"));
            }
        }
    }
    for u in s.elements() {
        for v in s.elements() {
            if r.mul(spec.pair(0, u), spec.pair(0, v)) != spec.pair(0, s.mul(u, v)) {
                return fail(format!("i_S not multiplicative at ({u},{v})"));
            }
        }
    }
    if !s.is_field() {
        return Ok(None);
    }
    let first: Vec<usize> = b.elements().map(|x| spec.pair(x, 0)).collect();
    let m = IdealSubset::new(r, &first)?;
    if !maximal_ideals(r)?.iter().any(|mm| mm.members() == m.members()) {
        return fail("{(x,0)} is not a maximal ideal".into());
    }
    let kappa: Vec<usize> = s.elements().map(|u| spec.pair(0, u)).collect();
    if !is_subfield(r, &kappa) || star_witness_for(r, &m, &kappa)?.is_none() {
        return fail("({(x,0)}, {(0,u)}) does not exhibit (★)".into());
    }
    Ok(None)
}

fn chk_not_local(e: &CatalogueEntry) -> Outcome {
    let Some(spec) = &e.sdprod else { return Ok(None) };
    let (Some(b1), Some(s1)) = (spec.b.one(), spec.s.one()) else { return Ok(None) };
    if b1 == 0 || !spec.s.is_field() {
        return Ok(None);
    }
    let r = &e.ring;
    if is_local(r)?.is_some() {
        return fail("ring is local".into());
    }
    let z = spec.pair(spec.b.neg(b1), s1);
    if r.inverse(z).is_some() || spec.split(z).1 == 0 {
        return fail(format!("{} is invertible or lies in {{(x,0)}}", r.label(z)));
    }
    Ok(None)
}

fn chk_unit_formula(e: &CatalogueEntry) -> Outcome {
    let Some(spec) = &e.sdprod else { return Ok(None) };
    let (b, s) = (&spec.b, &spec.s);
    if !s.is_field() || !b.same_tables(s) {
        return Ok(None);
    }
    let r = &e.ring;
    let scanned = units(r)?;
    let predicted: Vec<usize> = r
        .elements()
        .filter(|&z| {
            let (a, bb) = spec.split(z);
            bb != 0 && (a == 0 || a != s.neg(bb))
        })
        .collect();
    if scanned != predicted {
        return fail(format!("scan {scanned:?} vs formula {predicted:?}"));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_shape() {
        let cat = standard_catalogue().unwrap();
        assert_eq!(cat.len(), 15 + 7 + 4 + 2 + 3 + 4 + 2);
        assert!(cat.iter().all(|e| e.ring.order() <= 81));
    }

    #[test]
    fn empty_catalogue_is_empty_success() {
        let rep = verify_catalogue(&[]);
        assert!(rep.rows.is_empty());
        assert!(rep.all_pass());
    }

    #[test]
    fn patched_zmod4_fails_axioms_only_where_expected() {
        let z4 = make_zmod(4).unwrap();
        let mut mul = z4.mul_table().to_vec();
        mul[2 * 4 + 2] = 1;
        let broken = FiniteRing::from_tables_unchecked(4, z4.add_table().to_vec(), mul, Some(1), z4.labels().to_vec(), "patched").unwrap();
        let rep = verify_catalogue(&[CatalogueEntry::plain("patched Zmod(4)", broken)]);
        assert!(!rep.row("patched Zmod(4)", "ring-axioms").unwrap().pass);
        assert!(rep.row("patched Zmod(4)", "class-intersection").unwrap().pass);
    }
}
