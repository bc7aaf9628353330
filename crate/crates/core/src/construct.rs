//! Constructors for every ring family the workbench needs: `Z/nZ`, `GF(p^k)`,
//! direct products, function rings `κ^X`, polynomial quotients `κ[x]/⟨f⟩`, and
//! sub-rngs carved out of an existing ring.
//!
//! All of them produce explicit tables and run the full axiom scan before
//! returning.

use crate::error::{FinringError, Result};
use crate::ring::{capped_product, check_cap, FiniteRing};

/// Monic irreducible polynomials used for `GF(p^k)`, coefficients in
/// ascending degree. One per `(p, k)` with `k >= 2` and `p^k <= 512`; each is
/// the smallest monic irreducible when the coefficient vector is read as a
/// base-`p` number.
pub const IRREDUCIBLES: &[(usize, usize, &[usize])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 1, 0, 1, 1, 0, 0, 0, 1]),
    (2, 9, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 1, 0, 0, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (5, 2, &[2, 0, 1]),
    (5, 3, &[1, 1, 0, 1]),
    (7, 2, &[1, 0, 1]),
    (7, 3, &[2, 0, 0, 1]),
    (11, 2, &[1, 0, 1]),
    (13, 2, &[2, 0, 1]),
    (17, 2, &[3, 0, 1]),
    (19, 2, &[1, 0, 1]),
];

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Splits `q` as `p^k` with `p` prime, if possible.
pub fn prime_power(q: usize) -> Option<(usize, usize)> {
    let p = (2..=q).find(|&d| q.is_multiple_of(d))?;
    let mut k = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Tabulates closed-form operations. The families built here satisfy the
/// axioms by construction; the test suite checks every one with
/// `verify_ring_axioms`, so the cubic scan is skipped at runtime.
fn build(
    order: usize,
    one: Option<usize>,
    labels: Vec<String>,
    provenance: String,
    add: impl Fn(usize, usize) -> usize,
    mul: impl Fn(usize, usize) -> usize,
) -> Result<FiniteRing> {
    let mut at = Vec::with_capacity(order * order);
    let mut mt = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            at.push(add(a, b));
            mt.push(mul(a, b));
        }
    }
    FiniteRing::from_tables_unchecked(order, at, mt, one, labels, provenance)
}

/// `Z/nZ` with residues labelled `0..n-1`. `n = 1` gives the zero ring.
pub fn make_zmod(n: usize) -> Result<FiniteRing> {
    if n == 0 {
        return Err(FinringError::InvalidArgument("Zmod needs n >= 1".into()));
    }
    check_cap(n)?;
    build(
        n,
        Some(1 % n),
        (0..n).map(|i| i.to_string()).collect(),
        format!("Zmod({n})"),
        |a, b| (a + b) % n,
        |a, b| (a * b) % n,
    )
}

/// The zero ring `{0}` with `1 = 0`.
pub fn zero_ring() -> FiniteRing {
    make_zmod(1).expect("the zero ring is always constructible")
}

/// `GF(p^k)` as `GF(p)[t]/⟨f⟩` for the built-in irreducible `f`.
///
/// For `k = 1` this is `Z/pZ` with the field property checked.
pub fn make_gf(p: usize, k: usize) -> Result<FiniteRing> {
    if !is_prime(p) {
        return Err(FinringError::InvalidArgument(format!("GF: {p} is not prime")));
    }
    if k == 0 {
        return Err(FinringError::InvalidArgument("GF: k must be positive".into()));
    }
    capped_product(&vec![p; k])?;
    let ring = if k == 1 {
        make_zmod(p)?
    } else {
        let (_, _, poly) = IRREDUCIBLES
            .iter()
            .find(|(pp, kk, _)| *pp == p && *kk == k)
            .ok_or_else(|| {
                FinringError::Unsupported(format!("no built-in irreducible polynomial for GF({p},{k})"))
            })?;
        let base = make_zmod(p)?;
        quotient_ring(&base, poly, "t", provenance_gf(p, k))?
    };
    if !ring.is_field() {
        return Err(FinringError::NotField(format!("GF({p},{k}) construction")));
    }
    Ok(relabel_provenance(ring, provenance_gf(p, k)))
}

fn provenance_gf(p: usize, k: usize) -> String {
    if k == 1 {
        format!("GF({p})")
    } else {
        format!("GF({p},{k})")
    }
}

fn relabel_provenance(ring: FiniteRing, provenance: String) -> FiniteRing {
    if ring.provenance() == provenance {
        return ring;
    }
    let n = ring.order();
    FiniteRing::from_tables_unchecked(
        n,
        ring.add_table().to_vec(),
        ring.mul_table().to_vec(),
        ring.one(),
        ring.labels().to_vec(),
        provenance,
    )
    .expect("tables already validated")
}

fn tuple_label(parts: &[&str]) -> String {
    format!("({})", parts.join(","))
}

/// Componentwise product `R × S`; element `(a, b)` has index `a·|S| + b`.
pub fn make_product(r: &FiniteRing, s: &FiniteRing) -> Result<FiniteRing> {
    let (nr, ns) = (r.order(), s.order());
    let order = capped_product(&[nr, ns])?;
    let split = |x: usize| (x / ns, x % ns);
    let one = match (r.one(), s.one()) {
        (Some(a), Some(b)) => Some(a * ns + b),
        _ => None,
    };
    let labels = (0..order)
        .map(|x| {
            let (a, b) = split(x);
            tuple_label(&[r.label(a), s.label(b)])
        })
        .collect();
    build(
        order,
        one,
        labels,
        format!("product({}, {})", r.provenance(), s.provenance()),
        |x, y| {
            let ((a, b), (c, d)) = (split(x), split(y));
            r.add(a, c) * ns + s.add(b, d)
        },
        |x, y| {
            let ((a, b), (c, d)) = (split(x), split(y));
            r.mul(a, c) * ns + s.mul(b, d)
        },
    )
}

/// All functions `X → κ` for `|X| = x_size`, with pointwise operations.
///
/// A function is stored as the tuple `(f(0), …, f(x_size-1))` and indexed
/// with `f(0)` as the most significant digit, so the result has the same
/// tables as the iterated product `κ × … × κ` (flattened).
pub fn make_function_ring(x_size: usize, kappa: &FiniteRing) -> Result<FiniteRing> {
    if x_size == 0 {
        return Err(FinringError::InvalidArgument("fnring needs |X| >= 1".into()));
    }
    if !kappa.is_field() {
        return Err(FinringError::NotField(format!("fnring base {}", kappa.provenance())));
    }
    let q = kappa.order();
    let order = capped_product(&vec![q; x_size])?;
    let digits = |mut x: usize| {
        let mut d = vec![0; x_size];
        for slot in d.iter_mut().rev() {
            *slot = x % q;
            x /= q;
        }
        d
    };
    let undigits = |d: &[usize]| d.iter().fold(0, |acc, &v| acc * q + v);
    let e = kappa.one().expect("fields are unital");
    let one = undigits(&vec![e; x_size]);
    let labels = (0..order)
        .map(|x| {
            let d = digits(x);
            let parts: Vec<&str> = d.iter().map(|&v| kappa.label(v)).collect();
            tuple_label(&parts)
        })
        .collect();
    let pointwise = |op: &dyn Fn(usize, usize) -> usize, x: usize, y: usize| {
        let (dx, dy) = (digits(x), digits(y));
        let out: Vec<usize> = dx.iter().zip(&dy).map(|(&a, &b)| op(a, b)).collect();
        undigits(&out)
    };
    build(
        order,
        Some(one),
        labels,
        format!("fnring({x_size}, {})", kappa.provenance()),
        |x, y| pointwise(&|a, b| kappa.add(a, b), x, y),
        |x, y| pointwise(&|a, b| kappa.mul(a, b), x, y),
    )
}

/// `κ[x]/⟨f⟩` for a monic `f` of degree at least 1.
///
/// `f` lists coefficients (element indices of `κ`) in ascending degree, the
/// last one being the leading coefficient. Residues `c_0 + c_1 x + …` have
/// index `Σ c_i |κ|^i`.
pub fn make_poly_quotient(kappa: &FiniteRing, f: &[usize]) -> Result<FiniteRing> {
    if !kappa.is_field() {
        return Err(FinringError::NotField(format!("polyquot base {}", kappa.provenance())));
    }
    let provenance = format!(
        "polyquot({}, [{}])",
        kappa.provenance(),
        f.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    );
    quotient_ring(kappa, f, "x", provenance)
}

fn quotient_ring(kappa: &FiniteRing, f: &[usize], var: &str, provenance: String) -> Result<FiniteRing> {
    let q = kappa.order();
    if let Some(&bad) = f.iter().find(|&&c| c >= q) {
        return Err(FinringError::InvalidArgument(format!(
            "coefficient {bad} is not an element of a ring of order {q}"
        )));
    }
    let e = kappa.one().ok_or_else(|| FinringError::NotUnital("polyquot".into()))?;
    if f.len() < 2 {
        return Err(FinringError::InvalidArgument("modulus must have degree >= 1".into()));
    }
    if f[f.len() - 1] != e {
        return Err(FinringError::InvalidArgument(
            "modulus must be monic (last coefficient is the leading one)".into(),
        ));
    }
    let d = f.len() - 1;
    let order = capped_product(&vec![q; d])?;
    let digits = |mut x: usize| {
        let mut c = vec![0; d];
        for slot in c.iter_mut() {
            *slot = x % q;
            x /= q;
        }
        c
    };
    let undigits = |c: &[usize]| c.iter().rev().fold(0, |acc, &v| acc * q + v);
    let add = |x: usize, y: usize| {
        let (a, b) = (digits(x), digits(y));
        let s: Vec<usize> = a.iter().zip(&b).map(|(&u, &v)| kappa.add(u, v)).collect();
        undigits(&s)
    };
    let mul = |x: usize, y: usize| {
        let (a, b) = (digits(x), digits(y));
        let mut prod = vec![0; 2 * d - 1];
        for (i, &u) in a.iter().enumerate() {
            for (j, &v) in b.iter().enumerate() {
                prod[i + j] = kappa.add(prod[i + j], kappa.mul(u, v));
            }
        }
        for top in (d..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            // x^top = x^(top-d) · x^d and x^d ≡ -(f_0 + … + f_{d-1} x^{d-1}).
            for (j, &fj) in f[..d].iter().enumerate() {
                let idx = top - d + j;
                prod[idx] = kappa.sub(prod[idx], kappa.mul(c, fj));
            }
            prod[top] = 0;
        }
        undigits(&prod[..d])
    };
    let labels = (0..order).map(|x| poly_label(kappa, &digits(x), var)).collect();
    build(order, Some(e), labels, provenance, add, mul)
}

fn poly_label(kappa: &FiniteRing, coeffs: &[usize], var: &str) -> String {
    let one = kappa.one();
    let mut terms = Vec::new();
    for (deg, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let power = match deg {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{deg}"),
        };
        let coeff = kappa.label(c);
        let coeff = if coeff.contains('+') || coeff.contains(',') {
            format!("({coeff})")
        } else {
            coeff.to_string()
        };
        terms.push(if deg == 0 {
            coeff
        } else if Some(c) == one {
            power
        } else {
            format!("{coeff}{power}")
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// The rng obtained by restricting `ring`'s tables to `members`.
///
/// `members` must contain `0` and be closed under addition, negation and
/// multiplication. Elements keep their parent labels and are re-indexed in
/// ascending parent order; the parent's identity is kept when it lies in
/// `members`.
pub fn restrict(ring: &FiniteRing, members: &[usize], provenance: impl Into<String>) -> Result<FiniteRing> {
    let mut members = members.to_vec();
    members.sort_unstable();
    members.dedup();
    if members.first() != Some(&0) {
        return Err(FinringError::InvalidArgument("a subring must contain 0".into()));
    }
    if let Some(&bad) = members.iter().find(|&&m| m >= ring.order()) {
        return Err(FinringError::InvalidArgument(format!("element {bad} not in ring")));
    }
    let mut pos = vec![usize::MAX; ring.order()];
    for (i, &m) in members.iter().enumerate() {
        pos[m] = i;
    }
    let k = members.len();
    let mut add = Vec::with_capacity(k * k);
    let mut mul = Vec::with_capacity(k * k);
    for &a in &members {
        for &b in &members {
            let (s, p) = (pos[ring.add(a, b)], pos[ring.mul(a, b)]);
            if s == usize::MAX || p == usize::MAX {
                return Err(FinringError::InvalidArgument(format!(
                    "subset not closed under the ring operations at ({}, {})",
                    ring.label(a),
                    ring.label(b)
                )));
            }
            add.push(s);
            mul.push(p);
        }
    }
    let one = ring.one().map(|e| pos[e]).filter(|&i| i != usize::MAX);
    let labels = members.iter().map(|&m| ring.label(m).to_string()).collect();
    // A subset closed under both operations inherits every axiom.
    FiniteRing::from_tables_unchecked(k, add, mul, one, labels, provenance)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Trial division of a monic polynomial over Z/p by every monic polynomial
    /// of degree 1..=deg/2. Independent of the table machinery.
    fn irreducible_by_trial_division(f: &[usize], p: usize) -> bool {
        fn rem(mut a: Vec<usize>, g: &[usize], p: usize) -> Vec<usize> {
            while a.len() >= g.len() {
                let lead = *a.last().unwrap();
                let shift = a.len() - g.len();
                for (i, &gi) in g.iter().enumerate() {
                    a[shift + i] = (a[shift + i] + p * p - lead * gi % p) % p;
                }
                while a.last() == Some(&0) {
                    a.pop();
                }
            }
            a
        }
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            for v in 0..p.pow(d as u32) {
                let mut g: Vec<usize> = (0..d).map(|i| v / p.pow(i as u32) % p).collect();
                g.push(1);
                if rem(f.to_vec(), &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn builtin_list_is_irreducible_and_complete() {
        for &(p, k, f) in IRREDUCIBLES {
            assert_eq!(f.len(), k + 1);
            assert!(irreducible_by_trial_division(f, p), "GF({p},{k})");
        }
        for p in (2..=512).filter(|&p| is_prime(p)) {
            let mut k = 2;
            while p.pow(k as u32) <= 512 {
                assert!(IRREDUCIBLES.iter().any(|e| e.0 == p && e.1 == k), "missing ({p},{k})");
                k += 1;
            }
        }
    }

    #[test]
    fn zmod_examples() {
        let z2 = make_zmod(2).unwrap();
        assert_eq!(z2.add(1, 1), 0);
        let z4 = make_zmod(4).unwrap();
        assert_eq!(z4.mul(2, 2), 0);
        let units: Vec<usize> = z4.elements().filter(|&a| z4.inverse(a).is_some()).collect();
        assert_eq!(units, vec![1, 3]);
        let z1 = make_zmod(1).unwrap();
        assert_eq!(z1.order(), 1);
        assert_eq!(z1.one(), Some(0));
        assert!(matches!(make_zmod(0), Err(FinringError::InvalidArgument(_))));
    }

    #[test]
    fn gf_examples() {
        let gf2 = make_gf(2, 1).unwrap();
        assert!(gf2.is_field());
        assert_eq!(gf2.order(), 2);
        let gf4 = make_gf(2, 2).unwrap();
        assert!(gf4.is_field());
        let t = gf4.find_label("t").unwrap();
        let t_plus_1 = gf4.find_label("t+1").unwrap();
        assert_eq!(gf4.mul(t, t), t_plus_1);
        assert_eq!(make_gf(3, 1).unwrap().order(), 3);
        assert!(make_gf(4, 1).is_err());
        assert!(matches!(make_gf(2, 10), Err(FinringError::OrderCap { .. })));
    }

    #[test]
    fn every_builtin_field_is_a_field() {
        for &(p, k, _) in IRREDUCIBLES.iter().filter(|e| e.0.pow(e.1 as u32) <= 64) {
            assert!(make_gf(p, k).unwrap().is_field());
        }
    }

    #[test]
    fn product_examples() {
        let gf2 = make_gf(2, 1).unwrap();
        let v = make_product(&gf2, &gf2).unwrap();
        assert_eq!(v.order(), 4);
        assert_eq!(v.labels(), ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]);
        let z4 = make_zmod(4).unwrap();
        let with_zero = make_product(&z4, &zero_ring()).unwrap();
        assert!(with_zero.same_tables(&z4));
        let gf3 = make_gf(3, 1).unwrap();
        let w = make_product(&gf3, &gf3).unwrap();
        let diag: Vec<usize> = (0..3).map(|a| w.find_label(&format!("({a},{a})")).unwrap()).collect();
        let closure = crate::ring::subring_closure(&w, &[w.one().unwrap()]);
        let mut sorted = diag.clone();
        sorted.sort();
        assert_eq!(closure, sorted);
    }

    #[test]
    fn function_ring_examples() {
        let gf2 = make_gf(2, 1).unwrap();
        assert!(make_function_ring(1, &gf2).unwrap().same_tables(&gf2));
        let prod = make_product(&gf2, &gf2).unwrap();
        let f = make_function_ring(2, &gf2).unwrap();
        assert_eq!(f, prod.clone());
        let gf3 = make_gf(3, 1).unwrap();
        assert_eq!(make_function_ring(2, &gf3).unwrap().order(), 9);
        assert!(make_function_ring(2, &make_zmod(4).unwrap()).is_err());
    }

    #[test]
    fn poly_quotient_examples() {
        let gf2 = make_gf(2, 1).unwrap();
        let dual = make_poly_quotient(&gf2, &[0, 0, 1]).unwrap();
        assert_eq!(dual.order(), 4);
        let x = dual.find_label("x").unwrap();
        assert_ne!(x, 0);
        assert_eq!(dual.mul(x, x), 0);
        let gf3 = make_gf(3, 1).unwrap();
        assert_eq!(make_poly_quotient(&gf3, &[0, 0, 1]).unwrap().order(), 9);
        let gf4 = make_poly_quotient(&gf2, &[1, 1, 1]).unwrap();
        assert!(gf4.is_field());
        assert!(make_poly_quotient(&gf2, &[1, 0, 0]).is_err());
        assert!(make_poly_quotient(&gf3, &[1, 2]).is_err());
    }

    #[test]
    fn field_iff_irreducible_up_to_degree_three() {
        for p in [2usize, 3] {
            let base = make_gf(p, 1).unwrap();
            for deg in 1..=3usize {
                for v in 0..p.pow(deg as u32) {
                    let mut f: Vec<usize> = (0..deg).map(|i| v / p.pow(i as u32) % p).collect();
                    f.push(1);
                    let ring = make_poly_quotient(&base, &f).unwrap();
                    assert_eq!(ring.is_field(), irreducible_by_trial_division(&f, p), "p={p} f={f:?}");
                }
            }
        }
    }

    #[test]
    fn restrict_keeps_labels() {
        let z4 = make_zmod(4).unwrap();
        let two = restrict(&z4, &[0, 2], "2Zmod(4)").unwrap();
        assert_eq!(two.labels(), ["0", "2"]);
        assert_eq!(two.one(), None);
        assert_eq!(two.mul(1, 1), 0);
        assert!(restrict(&z4, &[0, 1], "bad").is_err());
    }
}
