//! The section property (★): a maximal ideal `M` such that `R → R/M` has a
//! unital ring-homomorphism section, whose image is then a subfield `κ`.
//!
//! Two independent deciders are provided:
//!
//! * [`check_star_decomposition`] looks for a subfield `κ` with
//!   `|M|·|κ| = |R|`. Since `M ∩ κ = {0}`, `(x, u) ↦ x + u` is injective, so
//!   the cardinality condition is the same as every element splitting as
//!   `x + u`.
//! * [`check_star_section`] never enumerates subfields: it lifts a generator
//!   of the residue field into its coset and checks the induced map.

use serde::{Deserialize, Serialize};

use crate::error::{FinringError, Result};
use crate::hom::{check_hom, RingHom};
use crate::ring::FiniteRing;
use crate::semidirect::{build_sdprod, induced_actions, verify_action_pair, SemidirectSpec};
use crate::structure::{is_local, is_subfield, maximal_ideals, quotient, subfields, units, IdealSubset, QuotientPresentation};

/// A maximal ideal and subfield exhibiting (★), with the section and the
/// unique split `a = x + u` of every element.
#[derive(Clone, Debug)]
pub struct StarWitness {
    pub m: IdealSubset,
    pub kappa: Vec<usize>,
    pub quotient: QuotientPresentation,
    /// `R/M → R`, landing in `kappa`.
    pub section: RingHom,
    /// `decomposition[a] = (x, u)` with `x ∈ M`, `u ∈ κ`, `a = x + u`.
    pub decomposition: Vec<(usize, usize)>,
}

impl StarWitness {
    pub fn ring(&self) -> &FiniteRing {
        &self.m.parent
    }
}

/// Builds the witness for a given pair, or `None` if the pair does not
/// exhibit (★).
pub fn star_witness_for(r: &FiniteRing, m: &IdealSubset, kappa: &[usize]) -> Result<Option<StarWitness>> {
    if !is_subfield(r, kappa) {
        return Err(FinringError::NotField("kappa is not a subfield".into()));
    }
    if m.len() * kappa.len() != r.order() {
        return Ok(None);
    }
    let mut decomposition = vec![None; r.order()];
    for &x in m.members() {
        for &u in kappa {
            let a = r.add(x, u);
            if decomposition[a].replace((x, u)).is_some() {
                // M ∩ κ ≠ {0}: only possible when M is not a proper ideal.
                return Ok(None);
            }
        }
    }
    let Some(decomposition) = decomposition.into_iter().collect::<Option<Vec<_>>>() else {
        return Ok(None);
    };
    let q = quotient(r, m)?;
    let mut section = vec![usize::MAX; q.quotient.order()];
    for &u in kappa {
        section[q.class_of(u)] = u;
    }
    let section = RingHom::new(q.quotient.clone(), r.clone(), section, true);
    if check_hom(&section).is_err() {
        return Ok(None);
    }
    Ok(Some(StarWitness { m: m.clone(), kappa: kappa.to_vec(), quotient: q, section, decomposition }))
}

/// Decides (★) by the sum decomposition: maximal ideals (size, then members)
/// are tried against subfields (size, then members) and the first pair with
/// `|M|·|κ| = |R|` is returned with its section verified.
pub fn check_star_decomposition(r: &FiniteRing) -> Result<Option<StarWitness>> {
    if r.order() < 2 {
        return Ok(None);
    }
    let fields = subfields(r)?;
    if fields.is_empty() {
        return Ok(None);
    }
    for m in maximal_ideals(r)? {
        for kappa in &fields {
            if let Some(w) = star_witness_for(r, &m, kappa)? {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// Residue-field generator data: the prime `p`, a generator `g` and, for
/// each quotient element, its coordinates in the basis `1, g, …, g^{k-1}`.
fn residue_field_basis(f: &FiniteRing) -> Option<(usize, usize, Vec<Vec<usize>>)> {
    let e = f.one()?;
    let p = f.additive_order(e);
    let n = f.order();
    let mut k = 0;
    let mut size = 1;
    while size < n {
        size *= p;
        k += 1;
    }
    if size != n {
        return None;
    }
    for g in f.elements() {
        let mut powers = vec![e];
        for _ in 1..k {
            powers.push(f.mul(*powers.last().unwrap(), g));
        }
        let mut coords = vec![None; n];
        for idx in 0..n {
            let digits: Vec<usize> = (0..k).map(|i| idx / p.pow(i as u32) % p).collect();
            let value = digits
                .iter()
                .zip(&powers)
                .fold(0, |acc, (&c, &pw)| f.add(acc, f.scalar(c, pw)));
            if coords[value].is_some() {
                break;
            }
            coords[value] = Some(digits);
        }
        if let Some(coords) = coords.into_iter().collect::<Option<Vec<_>>>() {
            return Some((p, g, coords));
        }
    }
    None
}

/// Decides (★)-with-`M` by searching for the section directly.
///
/// A generator `g` of the residue field is lifted to each element `r` of its
/// coset (in index order) that satisfies `p·1 = 0` and `g`'s minimal
/// relation `g^k = Σ c_i g^i`; the candidate section sends
/// `Σ c_i g^i ↦ Σ c_i r^i` and is kept if it is a unital homomorphism
/// with `π ∘ s = id`.
pub fn check_star_section(r: &FiniteRing, m: &IdealSubset) -> Result<Option<RingHom>> {
    let e = r.one().ok_or_else(|| FinringError::NotUnital("check_star_section".into()))?;
    let q = quotient(r, m)?;
    let f = &q.quotient;
    if !f.is_commutative() {
        return Err(FinringError::Unsupported("residue ring is noncommutative".into()));
    }
    if !f.is_field() {
        return Err(FinringError::NotField("R/M (is M maximal?)".into()));
    }
    let (p, g, coords) =
        residue_field_basis(f).ok_or_else(|| FinringError::NotField("residue field has no generator".into()))?;
    if r.scalar(p, e) != 0 {
        return Ok(None);
    }
    let k = coords[0].len();
    let relation = &coords[f.pow(g, k)];
    let lift = |x: usize, c: &[usize]| {
        let mut acc = 0;
        let mut pw = e;
        for &ci in c {
            acc = r.add(acc, r.scalar(ci, pw));
            pw = r.mul(pw, x);
        }
        acc
    };
    for cand in r.elements().filter(|&a| q.class_of(a) == g) {
        if r.pow(cand, k) != lift(cand, relation) {
            continue;
        }
        let map: Vec<usize> = coords.iter().map(|c| lift(cand, c)).collect();
        let s = RingHom::new(f.clone(), r.clone(), map, true);
        let splits = f.elements().all(|c| q.class_of(s.apply(c)) == c);
        if splits && check_hom(&s).is_ok() {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// The unique `(x, u)` with `a = x + u`.
pub fn decompose(w: &StarWitness, a: usize) -> (usize, usize) {
    w.decomposition[a]
}

/// `M ⋊ κ` together with the maps `φ(x, u) = x + u` and
/// `ψ(z) = (z - j([z]), j([z]))`.
#[derive(Clone, Debug)]
pub struct PhiPsi {
    pub spec: SemidirectSpec,
    pub sdprod: FiniteRing,
    pub phi: RingHom,
    pub psi: RingHom,
}

/// `φ: M ⋊ κ → R`, defined for any maximal ideal and subfield.
pub fn phi_map(r: &FiniteRing, m: &IdealSubset, kappa: &[usize]) -> Result<(SemidirectSpec, FiniteRing, RingHom)> {
    let spec = induced_actions(r, kappa, m)?;
    let sd = build_sdprod(&spec)?;
    let mut kappa_sorted = kappa.to_vec();
    kappa_sorted.sort_unstable();
    let map = sd
        .elements()
        .map(|z| {
            let (i, j) = spec.split(z);
            r.add(m.members()[i], kappa_sorted[j])
        })
        .collect();
    let phi = RingHom::new(sd.clone(), r.clone(), map, true);
    Ok((spec, sd, phi))
}

pub fn build_phi_psi(r: &FiniteRing, w: &StarWitness) -> Result<PhiPsi> {
    let (spec, sd, phi) = phi_map(r, &w.m, &w.kappa)?;
    check_hom(&phi).map_err(FinringError::Hom)?;
    let mut kappa_sorted = w.kappa.clone();
    kappa_sorted.sort_unstable();
    let pos_m = |x: usize| w.m.members().binary_search(&x).expect("x lies in M");
    let pos_k = |u: usize| kappa_sorted.binary_search(&u).expect("u lies in kappa");
    let psi_map = r
        .elements()
        .map(|z| {
            let ju = w.section.apply(w.quotient.class_of(z));
            spec.pair(pos_m(r.sub(z, ju)), pos_k(ju))
        })
        .collect();
    let psi = RingHom::new(r.clone(), sd.clone(), psi_map, true);
    check_hom(&psi).map_err(FinringError::Hom)?;
    if !phi.then(&psi).is_identity() || !psi.then(&phi).is_identity() {
        return Err(FinringError::InvalidArgument("phi and psi are not mutually inverse".into()));
    }
    Ok(PhiPsi { spec, sdprod: sd, phi, psi })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairWitness {
    pub maximal_ideal: Vec<usize>,
    pub subfield: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub star: Option<StarWitness>,
    pub class_a: Option<PairWitness>,
    pub class_b: Option<PairWitness>,
    pub is_field: bool,
    pub local: bool,
}

/// Serializable summary of a [`Classification`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub ring: String,
    pub star: bool,
    pub class_a: Option<PairWitness>,
    pub class_b: Option<PairWitness>,
    pub is_field: bool,
    pub local: bool,
}

impl Classification {
    pub fn report(&self, r: &FiniteRing) -> ClassificationReport {
        ClassificationReport {
            ring: r.provenance().to_string(),
            star: self.star.is_some(),
            class_a: self.class_a.clone(),
            class_b: self.class_b.clone(),
            is_field: self.is_field,
            local: self.local,
        }
    }
}

/// Membership in classes (A) and (B), quantifying over every subfield and
/// maximal ideal before answering no.
///
/// (A): local, and some subfield `κ` splits every unit as `x + u`, `x ∈ M`.
/// (B): some subfield contains all units, and some maximal ideal together
/// with it splits every non-unit.
pub fn classify(r: &FiniteRing) -> Result<Classification> {
    let (class_a, class_b) = class_witnesses(r)?;
    Ok(Classification {
        star: check_star_decomposition(r)?,
        class_a,
        class_b,
        is_field: r.is_field(),
        local: is_local(r)?.is_some(),
    })
}

/// The class (A) and class (B) witnesses alone, without deciding (★).
pub fn class_witnesses(r: &FiniteRing) -> Result<(Option<PairWitness>, Option<PairWitness>)> {
    if !r.is_unital() {
        return Err(FinringError::NotUnital("classify".into()));
    }
    if r.order() < 2 {
        return Err(FinringError::InvalidArgument("classify needs a ring with 1 != 0".into()));
    }
    let fields = subfields(r)?;
    let maximal = maximal_ideals(r)?;
    let unit_set = units(r)?;
    let mut is_unit = vec![false; r.order()];
    for &u in &unit_set {
        is_unit[u] = true;
    }
    let splits = |m: &IdealSubset, kappa: &[usize], a: usize| kappa.iter().any(|&u| m.contains(r.sub(a, u)));

    let local = is_local(r)?;
    let class_a = local.as_ref().and_then(|m| {
        fields
            .iter()
            .find(|kappa| unit_set.iter().all(|&a| splits(m, kappa, a)))
            .map(|kappa| PairWitness { maximal_ideal: m.members().to_vec(), subfield: kappa.clone() })
    });
    let class_b = fields
        .iter()
        .filter(|kappa| unit_set.iter().all(|u| kappa.binary_search(u).is_ok()))
        .find_map(|kappa| {
            maximal
                .iter()
                .find(|m| r.elements().filter(|&a| !is_unit[a]).all(|a| splits(m, kappa, a)))
                .map(|m| PairWitness { maximal_ideal: m.members().to_vec(), subfield: kappa.clone() })
        });
    Ok((class_a, class_b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InheritanceReport {
    pub product_order: usize,
    pub predicted_ideal: Vec<usize>,
    pub predicted_field: Vec<usize>,
    pub ideal_is_maximal: bool,
    pub field_is_subfield: bool,
    pub witness_verified: bool,
}

impl InheritanceReport {
    pub fn passed(&self) -> bool {
        self.ideal_is_maximal && self.field_is_subfield && self.witness_verified
    }
}

/// Builds `S ⋊ R` from `spec` and checks that `S ⋊ M` and `κ` (from the
/// witness of `R`) exhibit (★) for it.
pub fn check_inheritance(spec: &SemidirectSpec, r_witness: &StarWitness) -> Result<InheritanceReport> {
    verify_action_pair(spec)?.map_err(FinringError::Action)?;
    if !spec.s.same_tables(r_witness.ring()) {
        return Err(FinringError::InvalidArgument("witness does not belong to the acting ring".into()));
    }
    let p = build_sdprod(spec)?;
    let mut predicted_ideal: Vec<usize> = spec
        .b
        .elements()
        .flat_map(|x| r_witness.m.members().iter().map(move |&y| (x, y)))
        .map(|(x, y)| spec.pair(x, y))
        .collect();
    predicted_ideal.sort_unstable();
    let mut predicted_field: Vec<usize> = r_witness.kappa.iter().map(|&u| spec.pair(0, u)).collect();
    predicted_field.sort_unstable();

    let max = maximal_ideals(&p)?;
    let ideal_is_maximal = max.iter().any(|m| m.members() == predicted_ideal.as_slice());
    let field_is_subfield = is_subfield(&p, &predicted_field);
    let witness_verified = ideal_is_maximal
        && field_is_subfield
        && star_witness_for(&p, &IdealSubset::new(&p, &predicted_ideal)?, &predicted_field)?.is_some();
    Ok(InheritanceReport {
        product_order: p.order(),
        predicted_ideal,
        predicted_field,
        ideal_is_maximal,
        field_is_subfield,
        witness_verified,
    })
}

/// Result of the `star` command: a witness, or the reason none exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarReport {
    pub ring: String,
    pub holds: bool,
    pub maximal_ideal: Option<Vec<usize>>,
    pub subfield: Option<Vec<usize>>,
    pub section: Option<Vec<usize>>,
    pub decomposition: Option<Vec<(usize, usize)>>,
    pub maximal_ideals_checked: usize,
    pub subfields_checked: usize,
    pub reason: Option<String>,
}

pub fn star_report(r: &FiniteRing) -> Result<StarReport> {
    let w = check_star_decomposition(r)?;
    let (n_max, n_fields) = if r.order() >= 2 && r.is_unital() {
        (maximal_ideals(r)?.len(), subfields(r)?.len())
    } else {
        (0, 0)
    };
    let reason = match (&w, n_max, n_fields) {
        (Some(_), _, _) => None,
        (None, 0, _) => Some("no maximal ideal exists".to_string()),
        (None, _, 0) => Some("no subfield exists".to_string()),
        (None, m, k) => Some(format!(
            "no pair (M, κ) with |M|·|κ| = |R| among {m} maximal ideals × {k} subfields"
        )),
    };
    Ok(StarReport {
        ring: r.provenance().to_string(),
        holds: w.is_some(),
        maximal_ideal: w.as_ref().map(|w| w.m.members().to_vec()),
        subfield: w.as_ref().map(|w| w.kappa.clone()),
        section: w.as_ref().map(|w| w.section.map.clone()),
        decomposition: w.as_ref().map(|w| w.decomposition.clone()),
        maximal_ideals_checked: n_max,
        subfields_checked: n_fields,
        reason,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{make_gf, make_poly_quotient, make_product, make_zmod};
    use crate::semidirect::{algebra_sdprod, ideal_actions, two_z4_by_z2};
    use crate::structure::principal_ideal;

    fn gf(p: usize) -> FiniteRing {
        make_gf(p, 1).unwrap()
    }

    fn kk(p: usize) -> FiniteRing {
        let f = gf(p);
        algebra_sdprod(&f, &f, &RingHom::identity(&f)).unwrap()
    }

    #[test]
    fn decomposition_examples() {
        let dual = make_poly_quotient(&gf(2), &[0, 0, 1]).unwrap();
        let w = check_star_decomposition(&dual).unwrap().unwrap();
        assert_eq!(w.m.labels(), vec!["0", "x"]);
        assert_eq!(w.kappa, vec![0, 1]);

        assert!(check_star_decomposition(&make_zmod(4).unwrap()).unwrap().is_none());

        let w3 = make_product(&gf(3), &gf(3)).unwrap();
        let w = check_star_decomposition(&w3).unwrap().unwrap();
        // Deterministic order picks 0×GF(3) first; GF(3)×0 works as well.
        assert_eq!(w.m.labels(), vec!["(0,0)", "(0,1)", "(0,2)"]);
        assert_eq!(w.kappa, vec![0, 4, 8]);
        let k0 = IdealSubset::new(&w3, &[0, 3, 6]).unwrap();
        assert!(star_witness_for(&w3, &k0, &[0, 4, 8]).unwrap().is_some());
    }

    #[test]
    fn section_examples() {
        let dual = make_poly_quotient(&gf(2), &[0, 0, 1]).unwrap();
        let m = principal_ideal(&dual, dual.find_label("x").unwrap());
        let s = check_star_section(&dual, &m).unwrap().unwrap();
        assert_eq!(s.map, vec![0, 1]);

        let z4 = make_zmod(4).unwrap();
        let m = principal_ideal(&z4, 2);
        assert!(check_star_section(&z4, &m).unwrap().is_none());

        let gf2 = gf(2);
        let v = make_product(&gf2, &gf2).unwrap();
        let k0 = IdealSubset::new(&v, &[0, 2]).unwrap();
        assert_eq!(k0.labels(), vec!["(0,0)", "(1,0)"]);
        let s = check_star_section(&v, &k0).unwrap().unwrap();
        let labels: Vec<&str> = s.map.iter().map(|&a| v.label(a)).collect();
        assert_eq!(labels, vec!["(0,0)", "(1,1)"]);
    }

    #[test]
    fn decompose_examples() {
        let r = kk(2);
        let w = check_star_decomposition(&r).unwrap().unwrap();
        assert_eq!(decompose(&w, 0), (0, 0));
        let at = |l: &str| r.find_label(l).unwrap();
        assert_eq!(decompose(&w, at("(1,1)")), (at("(1,0)"), at("(0,1)")));

        let w3 = make_product(&gf(3), &gf(3)).unwrap();
        let k0 = IdealSubset::new(&w3, &[0, 3, 6]).unwrap();
        let w = star_witness_for(&w3, &k0, &[0, 4, 8]).unwrap().unwrap();
        let at = |l: &str| w3.find_label(l).unwrap();
        assert_eq!(decompose(&w, at("(2,1)")), (at("(1,0)"), at("(1,1)")));
    }

    #[test]
    fn phi_psi_examples() {
        let dual = make_poly_quotient(&gf(2), &[0, 0, 1]).unwrap();
        let w = check_star_decomposition(&dual).unwrap().unwrap();
        let pp = build_phi_psi(&dual, &w).unwrap();
        assert_eq!(pp.sdprod.order(), 4);
        assert!(pp.phi.is_injective() && pp.phi.is_surjective());

        let f = make_gf(2, 2).unwrap();
        let w = check_star_decomposition(&f).unwrap().unwrap();
        assert_eq!(w.m.members(), &[0]);
        let pp = build_phi_psi(&f, &w).unwrap();
        assert!(pp.phi.is_identity());

        let r = kk(3);
        let w = check_star_decomposition(&r).unwrap().unwrap();
        let pp = build_phi_psi(&r, &w).unwrap();
        assert!(pp.psi.then(&pp.phi).is_identity());
        assert!(pp.phi.then(&pp.psi).is_identity());
    }

    #[test]
    fn classification_examples() {
        let d3 = make_poly_quotient(&gf(3), &[0, 0, 1]).unwrap();
        let c = classify(&d3).unwrap();
        assert!(c.class_a.is_some() && c.class_b.is_none() && c.star.is_some());

        let c = classify(&kk(2)).unwrap();
        assert!(c.class_b.is_some() && c.class_a.is_none() && c.star.is_some());

        let c = classify(&kk(3)).unwrap();
        assert!(c.star.is_some() && c.class_a.is_none() && c.class_b.is_none());

        let c = classify(&gf(5)).unwrap();
        assert!(c.class_a.is_some() && c.class_b.is_some() && c.is_field);
    }

    #[test]
    fn inheritance_examples() {
        let gf2 = gf(2);
        let spec = crate::semidirect::algebra_actions(&gf2, &gf2, &RingHom::identity(&gf2)).unwrap();
        let w = check_star_decomposition(&gf2).unwrap().unwrap();
        let rep = check_inheritance(&spec, &w).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.predicted_ideal, vec![0, 2]);

        let spec = two_z4_by_z2().unwrap();
        let w = check_star_decomposition(&spec.s).unwrap().unwrap();
        let rep = check_inheritance(&spec, &w).unwrap();
        assert!(rep.passed());
        let p = build_sdprod(&spec).unwrap();
        let labels: Vec<&str> = rep.predicted_ideal.iter().map(|&z| p.label(z)).collect();
        assert_eq!(labels, vec!["(0,0)", "(2,0)"]);

        let w3 = make_product(&gf(3), &gf(3)).unwrap();
        let i = IdealSubset::new(&w3, &[0, 3, 6]).unwrap();
        let spec = ideal_actions(&w3, &i).unwrap();
        let w = check_star_decomposition(&w3).unwrap().unwrap();
        assert!(check_inheritance(&spec, &w).unwrap().passed());
    }

    #[test]
    fn star_report_reasons() {
        let rep = star_report(&make_zmod(8).unwrap()).unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.reason.as_deref(), Some("no subfield exists"));
        assert!(star_report(&kk(2)).unwrap().holds);
    }
}
