//! Ring homomorphisms between table rings and a backtracking isomorphism search.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{FinringError, Result};
use crate::ring::{check_cap, subring_closure, FiniteRing};

/// A total map between two ring carriers, one codomain index per domain index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingHom {
    pub domain: FiniteRing,
    pub codomain: FiniteRing,
    pub map: Vec<usize>,
    /// When set, both rings must be unital and `map(1) = 1`.
    pub unital: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum HomFailure {
    /// The map is not total over the domain or points outside the codomain.
    Shape { detail: String },
    Additive { a: usize, b: usize },
    Multiplicative { a: usize, b: usize },
    /// Unital flag set but a ring has no identity.
    MissingUnit,
    /// Unital flag set but `map(1) != 1`.
    Unit { image: usize },
}

impl fmt::Display for HomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomFailure::Shape { detail } => write!(f, "map shape: {detail}"),
            HomFailure::Additive { a, b } => write!(f, "map({a}+{b}) != map({a})+map({b})"),
            HomFailure::Multiplicative { a, b } => write!(f, "map({a}*{b}) != map({a})*map({b})"),
            HomFailure::MissingUnit => write!(f, "unital map between rings without identity"),
            HomFailure::Unit { image } => write!(f, "map(1) = {image} is not the identity"),
        }
    }
}

impl RingHom {
    pub fn new(domain: FiniteRing, codomain: FiniteRing, map: Vec<usize>, unital: bool) -> RingHom {
        RingHom { domain, codomain, map, unital }
    }

    pub fn identity(ring: &FiniteRing) -> RingHom {
        RingHom::new(ring.clone(), ring.clone(), ring.elements().collect(), ring.is_unital())
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.order()];
        self.map.iter().all(|&b| !std::mem::replace(&mut seen[b], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.codomain.order()];
        for &b in &self.map {
            seen[b] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RingHom) -> RingHom {
        RingHom::new(
            self.domain.clone(),
            other.codomain.clone(),
            self.map.iter().map(|&b| other.map[b]).collect(),
            self.unital && other.unital,
        )
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> Option<RingHom> {
        if self.map.len() != self.codomain.order() || !self.is_injective() {
            return None;
        }
        let mut inv = vec![0; self.codomain.order()];
        for (a, &b) in self.map.iter().enumerate() {
            inv[b] = a;
        }
        Some(RingHom::new(self.codomain.clone(), self.domain.clone(), inv, self.unital))
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(a, &b)| a == b)
    }
}

/// Checks additivity, multiplicativity and (when flagged) unit preservation,
/// scanning pairs in index order and reporting the first failure.
pub fn check_hom(h: &RingHom) -> Result<(), HomFailure> {
    let (d, c) = (&h.domain, &h.codomain);
    if h.map.len() != d.order() {
        return Err(HomFailure::Shape {
            detail: format!("{} images for {} domain elements", h.map.len(), d.order()),
        });
    }
    if let Some(&bad) = h.map.iter().find(|&&b| b >= c.order()) {
        return Err(HomFailure::Shape { detail: format!("image {bad} outside codomain") });
    }
    let f = |a: usize| h.map[a];
    for a in d.elements() {
        for b in d.elements() {
            if f(d.add(a, b)) != c.add(f(a), f(b)) {
                return Err(HomFailure::Additive { a, b });
            }
            if f(d.mul(a, b)) != c.mul(f(a), f(b)) {
                return Err(HomFailure::Multiplicative { a, b });
            }
        }
    }
    if h.unital {
        match (d.one(), c.one()) {
            (Some(e), Some(e2)) if f(e) == e2 => {}
            (Some(e), Some(_)) => return Err(HomFailure::Unit { image: f(e) }),
            _ => return Err(HomFailure::MissingUnit),
        }
    }
    Ok(())
}

/// Invariant preserved by every isomorphism: additive order and the shape
/// (tail length, period) of the multiplicative power sequence.
fn element_profile(r: &FiniteRing, a: usize) -> (usize, usize, usize) {
    let mut seen = vec![usize::MAX; r.order()];
    let mut x = a;
    let mut i = 0;
    while seen[x] == usize::MAX {
        seen[x] = i;
        x = r.mul(x, a);
        i += 1;
    }
    (r.additive_order(a), seen[x], i - seen[x])
}

/// Generators of `r` as a unital ring, chosen greedily by closure gain.
fn unital_generators(r: &FiniteRing, one: usize) -> Vec<usize> {
    let mut closure = subring_closure(r, &[one]);
    let mut gens = Vec::new();
    while closure.len() < r.order() {
        let mut inside = vec![false; r.order()];
        for &x in &closure {
            inside[x] = true;
        }
        let mut best: Option<(usize, Vec<usize>)> = None;
        for a in r.elements().filter(|&a| !inside[a]) {
            let mut seed = closure.clone();
            seed.push(a);
            let c = subring_closure(r, &seed);
            if best.as_ref().is_none_or(|(_, b)| c.len() > b.len()) {
                best = Some((a, c));
            }
        }
        let (a, c) = best.expect("closure is proper, so a new element exists");
        gens.push(a);
        closure = c;
    }
    gens
}

/// Extends a partial injective map along the ring operations. Returns false
/// on a conflict (non-function or non-injective).
fn propagate(r: &FiniteRing, s: &FiniteRing, fwd: &mut [Option<usize>], back: &mut [Option<usize>], start: &[usize]) -> bool {
    let mut known: Vec<usize> = (0..fwd.len()).filter(|&x| fwd[x].is_some()).collect();
    let mut queue: Vec<usize> = start.to_vec();
    let assign = |x: usize, y: usize, fwd: &mut [Option<usize>], back: &mut [Option<usize>], known: &mut Vec<usize>, queue: &mut Vec<usize>| -> bool {
        match (fwd[x], back[y]) {
            (Some(y0), _) => y0 == y,
            (None, Some(_)) => false,
            (None, None) => {
                fwd[x] = Some(y);
                back[y] = Some(x);
                known.push(x);
                queue.push(x);
                true
            }
        }
    };
    while let Some(x) = queue.pop() {
        let fx = fwd[x].expect("queued elements are mapped");
        if !assign(r.neg(x), s.neg(fx), fwd, back, &mut known, &mut queue) {
            return false;
        }
        let mut i = 0;
        while i < known.len() {
            let y = known[i];
            let fy = fwd[y].expect("known elements are mapped");
            if !assign(r.add(x, y), s.add(fx, fy), fwd, back, &mut known, &mut queue)
                || !assign(r.mul(x, y), s.mul(fx, fy), fwd, back, &mut known, &mut queue)
                || !assign(r.mul(y, x), s.mul(fy, fx), fwd, back, &mut known, &mut queue)
            {
                return false;
            }
            i += 1;
        }
    }
    true
}

/// Searches for a unital ring isomorphism `r → s`.
///
/// Generators of `r` are assigned images with matching element profiles in
/// index order; each partial assignment is closed under the operations and
/// abandoned on the first conflict. The first complete map found is returned.
pub fn find_isomorphism(r: &FiniteRing, s: &FiniteRing) -> Result<Option<RingHom>> {
    let (Some(e_r), Some(e_s)) = (r.one(), s.one()) else {
        return Err(FinringError::NotUnital("find_isomorphism".into()));
    };
    check_cap(r.order())?;
    check_cap(s.order())?;
    if r.order() != s.order() || r.is_commutative() != s.is_commutative() {
        return Ok(None);
    }
    let n = r.order();
    let mut fwd = vec![None; n];
    let mut back = vec![None; n];
    fwd[0] = Some(0);
    back[0] = Some(0);
    if e_r != 0 {
        fwd[e_r] = Some(e_s);
        back[e_s] = Some(e_r);
    } else if e_s != 0 {
        return Ok(None);
    }
    if !propagate(r, s, &mut fwd, &mut back, &[e_r]) {
        return Ok(None);
    }
    let gens = unital_generators(r, e_r);
    let s_profiles: Vec<_> = s.elements().map(|b| element_profile(s, b)).collect();

    fn search(
        r: &FiniteRing,
        s: &FiniteRing,
        gens: &[usize],
        s_profiles: &[(usize, usize, usize)],
        fwd: Vec<Option<usize>>,
        back: Vec<Option<usize>>,
    ) -> Option<Vec<usize>> {
        let Some((&g, rest)) = gens.split_first() else {
            return fwd.into_iter().collect();
        };
        if fwd[g].is_some() {
            return search(r, s, rest, s_profiles, fwd, back);
        }
        let profile = element_profile(r, g);
        for b in s.elements().filter(|&b| back[b].is_none() && s_profiles[b] == profile) {
            let (mut f2, mut b2) = (fwd.clone(), back.clone());
            f2[g] = Some(b);
            b2[b] = Some(g);
            if propagate(r, s, &mut f2, &mut b2, &[g]) {
                if let Some(found) = search(r, s, rest, s_profiles, f2, b2) {
                    return Some(found);
                }
            }
        }
        None
    }

    Ok(search(r, s, &gens, &s_profiles, fwd, back).and_then(|map| {
        let h = RingHom::new(r.clone(), s.clone(), map, true);
        (check_hom(&h).is_ok() && h.is_injective()).then_some(h)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{make_function_ring, make_gf, make_poly_quotient, make_product, make_zmod};

    #[test]
    fn identity_passes() {
        let z4 = make_zmod(4).unwrap();
        assert_eq!(check_hom(&RingHom::identity(&z4)), Ok(()));
    }

    #[test]
    fn diagonal_is_unital_and_corner_is_not() {
        let gf2 = make_gf(2, 1).unwrap();
        let v = make_product(&gf2, &gf2).unwrap();
        let at = |l: &str| v.find_label(l).unwrap();
        let diag = RingHom::new(gf2.clone(), v.clone(), vec![at("(0,0)"), at("(1,1)")], true);
        assert_eq!(check_hom(&diag), Ok(()));
        assert!(diag.is_injective());
        let corner = RingHom::new(gf2.clone(), v.clone(), vec![at("(0,0)"), at("(1,0)")], true);
        assert_eq!(check_hom(&corner), Err(HomFailure::Unit { image: at("(1,0)") }));
        let corner_rng = RingHom { unital: false, ..corner };
        assert_eq!(check_hom(&corner_rng), Ok(()));
    }

    #[test]
    fn shape_errors() {
        let z4 = make_zmod(4).unwrap();
        let h = RingHom::new(z4.clone(), z4.clone(), vec![0, 1], false);
        assert!(matches!(check_hom(&h), Err(HomFailure::Shape { .. })));
    }

    #[test]
    fn isomorphism_examples() {
        let z4 = make_zmod(4).unwrap();
        let gf4 = make_gf(2, 2).unwrap();
        assert!(find_isomorphism(&z4, &gf4).unwrap().is_none());
        let gf2 = make_gf(2, 1).unwrap();
        let v = make_product(&gf2, &gf2).unwrap();
        let f = make_function_ring(2, &gf2).unwrap();
        assert!(find_isomorphism(&v, &f).unwrap().is_some());
        let z2 = make_zmod(2).unwrap();
        let id = find_isomorphism(&z2, &z2).unwrap().unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn isomorphism_finds_nontrivial_relabelling() {
        let gf2 = make_gf(2, 1).unwrap();
        let quot = make_poly_quotient(&gf2, &[1, 1, 1]).unwrap();
        let gf4 = make_gf(2, 2).unwrap();
        let h = find_isomorphism(&quot, &gf4).unwrap().unwrap();
        assert_eq!(check_hom(&h), Ok(()));
        // GF(4) ≇ GF(2)[x]/⟨x²⟩ ≇ GF(2)×GF(2)
        let dual = make_poly_quotient(&gf2, &[0, 0, 1]).unwrap();
        let v = make_product(&gf2, &gf2).unwrap();
        assert!(find_isomorphism(&gf4, &dual).unwrap().is_none());
        assert!(find_isomorphism(&dual, &v).unwrap().is_none());
        assert!(find_isomorphism(&v, &gf4).unwrap().is_none());
    }
}
