//! Commutant, nuclei, center, associator and the metagroup predicates.
//!
//! Every predicate that can fail reports the lexicographically first
//! violating tuple, so results do not depend on how scans are partitioned
//! across threads.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::magma::{ClassTag, Elem, FiniteBinarySystem};
use crate::report::Report;
use crate::subset::{self, Subset};

/// Outcome of a predicate check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails { witness: Vec<Elem>, detail: String },
}

impl Verdict {
    pub fn fails(witness: Vec<Elem>, detail: impl Into<String>) -> Self {
        Verdict::Fails {
            witness,
            detail: detail.into(),
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&[Elem]> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails { witness, .. } => Some(witness),
        }
    }

    pub(crate) fn from_option(w: Option<Vec<Elem>>, detail: &str) -> Self {
        match w {
            None => Verdict::Holds,
            Some(w) => Verdict::fails(w, detail),
        }
    }
}

/// First `(a, b, c)` with `(ab)c != a(bc)`, in lexicographic order.
pub fn first_nonassociative_triple(g: &FiniteBinarySystem) -> Option<[Elem; 3]> {
    let n = g.order();
    (0..n).into_par_iter().find_map_first(|a| {
        for b in 0..n {
            let ab = g.mul(a, b);
            for c in 0..n {
                if g.mul(ab, c) != g.mul(a, g.mul(b, c)) {
                    return Some([a, b, c]);
                }
            }
        }
        None
    })
}

/// `Com(G)`: elements commuting with everything.
pub fn commutant(g: &FiniteBinarySystem) -> Subset {
    let n = g.order();
    Subset::from_predicate(n, |a| (0..n).all(|b| g.mul(a, b) == g.mul(b, a)))
}

fn nucleus_by(g: &FiniteBinarySystem, assoc: impl Fn(Elem, Elem, Elem) -> bool + Sync) -> Subset {
    let n = g.order();
    let members: Vec<Elem> = (0..n)
        .into_par_iter()
        .filter(|&a| (0..n).all(|b| (0..n).all(|c| assoc(a, b, c))))
        .collect();
    Subset::new(n, members).expect("indices in range")
}

/// `N_l(G) = { a : (ab)c = a(bc) for all b, c }`.
pub fn nucleus_left(g: &FiniteBinarySystem) -> Subset {
    nucleus_by(g, |a, b, c| g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)))
}

/// `N_m(G) = { a : (ba)c = b(ac) for all b, c }`.
pub fn nucleus_middle(g: &FiniteBinarySystem) -> Subset {
    nucleus_by(g, |a, b, c| g.mul(g.mul(b, a), c) == g.mul(b, g.mul(a, c)))
}

/// `N_r(G) = { a : (bc)a = b(ca) for all b, c }`.
pub fn nucleus_right(g: &FiniteBinarySystem) -> Subset {
    nucleus_by(g, |a, b, c| g.mul(g.mul(b, c), a) == g.mul(b, g.mul(c, a)))
}

pub fn nucleus(g: &FiniteBinarySystem) -> Subset {
    nucleus_left(g)
        .intersection(&nucleus_middle(g))
        .intersection(&nucleus_right(g))
}

/// `C(G) = Com(G) ∩ N(G)`.
pub fn center(g: &FiniteBinarySystem) -> Subset {
    commutant(g).intersection(&nucleus(g))
}

/// The unique `t` with `(ab)c = t * (a(bc))`.
pub fn associator_t(g: &FiniteBinarySystem, a: Elem, b: Elem, c: Elem) -> Result<Elem> {
    g.require_quasigroup()?;
    for x in [a, b, c] {
        g.check_elem(x)?;
    }
    Ok(assoc_t(g, a, b, c))
}

#[inline]
pub(crate) fn assoc_t(g: &FiniteBinarySystem, a: Elem, b: Elem, c: Elem) -> Elem {
    g.rd(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)))
}

/// The unique `t2` with `ab = t2 * (ba)`.
pub fn commutator_t2(g: &FiniteBinarySystem, a: Elem, b: Elem) -> Result<Elem> {
    g.require_quasigroup()?;
    g.check_elem(a)?;
    g.check_elem(b)?;
    Ok(g.rd(g.mul(a, b), g.mul(b, a)))
}

/// Loop whose associator always lands in the center.
pub fn is_metagroup(g: &FiniteBinarySystem) -> Verdict {
    if !g.is_loop() {
        return Verdict::fails(Vec::new(), "not a loop");
    }
    let z = center(g);
    let n = g.order();
    let w = (0..n).into_par_iter().find_map_first(|a| {
        for b in 0..n {
            for c in 0..n {
                if !z.contains(assoc_t(g, a, b, c)) {
                    return Some(vec![a, b, c]);
                }
            }
        }
        None
    });
    Verdict::from_option(w, "associator outside the center")
}

/// Metagroup with `ab = t2(a,b) * ba` and `t2` central for all pairs.
pub fn is_central_metagroup(g: &FiniteBinarySystem) -> Verdict {
    let base = is_metagroup(g);
    if !base.holds() {
        return base;
    }
    let z = center(g);
    let n = g.order();
    let w = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| !z.contains(g.rd(g.mul(a, b), g.mul(b, a))))
        .map(|(a, b)| vec![a, b]);
    Verdict::from_option(w, "commutator t2 outside the center")
}

/// Closed under multiplication and both divisions, and contains the identity
/// when `g` is a loop.
pub fn is_submetagroup(g: &FiniteBinarySystem, s: &Subset) -> Result<Verdict> {
    s.check_parent(g)?;
    g.require_quasigroup()?;
    if s.is_empty() {
        return Ok(Verdict::fails(Vec::new(), "empty subset"));
    }
    if let Some(e) = g.identity() {
        if !s.contains(e) {
            return Ok(Verdict::fails(vec![e], "identity missing"));
        }
    }
    let m = s.members();
    for &a in &m {
        for &b in &m {
            for (x, what) in [
                (g.mul(a, b), "product"),
                (g.ld(a, b), "left quotient"),
                (g.rd(a, b), "right quotient"),
            ] {
                if !s.contains(x) {
                    return Ok(Verdict::fails(vec![a, b], format!("{what} leaves the subset")));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Submetagroup with `gH = Hg` for every `g`.
pub fn is_almost_invariant(g: &FiniteBinarySystem, s: &Subset) -> Result<Verdict> {
    let sub = is_submetagroup(g, s)?;
    if !sub.holds() {
        return Ok(sub);
    }
    let w = (0..g.order()).find(|&x| subset::left_translate(g, x, s) != subset::right_translate(g, s, x));
    Ok(Verdict::from_option(w.map(|x| vec![x]), "gH != Hg"))
}

/// Almost invariant, and `(gH)k = g(Hk)`, `k(gH) = (kg)H` for all `g, k`.
pub fn is_invariant(g: &FiniteBinarySystem, s: &Subset) -> Result<Verdict> {
    let base = is_almost_invariant(g, s)?;
    if !base.holds() {
        return Ok(base);
    }
    let n = g.order();
    let m = s.members();
    let img = |f: &dyn Fn(Elem) -> Elem| Subset::new(n, m.iter().map(|&h| f(h))).expect("in range");
    for x in 0..n {
        for k in 0..n {
            let lhs = img(&|h| g.mul(g.mul(x, h), k));
            let rhs = img(&|h| g.mul(x, g.mul(h, k)));
            if lhs != rhs {
                return Ok(Verdict::fails(vec![x, k], "(gH)k != g(Hk)"));
            }
            let lhs = img(&|h| g.mul(k, g.mul(x, h)));
            let rhs = img(&|h| g.mul(g.mul(k, x), h));
            if lhs != rhs {
                return Ok(Verdict::fails(vec![x, k], "k(gH) != (kg)H"));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Smallest subset containing `gens` (and the identity, for loops) that is
/// closed under multiplication and left division.
pub fn generated_subloop(g: &FiniteBinarySystem, gens: impl IntoIterator<Item = Elem>) -> Result<Subset> {
    g.require_quasigroup()?;
    let n = g.order();
    let mut set = Subset::empty(n);
    let mut members: Vec<Elem> = Vec::new();
    let mut work: Vec<Elem> = Vec::new();
    let push = |x: Elem, set: &mut Subset, work: &mut Vec<Elem>| {
        if set.insert(x) {
            work.push(x);
        }
    };
    if let Some(e) = g.identity() {
        push(e, &mut set, &mut work);
    }
    for x in gens {
        g.check_elem(x)?;
        push(x, &mut set, &mut work);
    }
    while let Some(x) = work.pop() {
        members.push(x);
        for i in 0..members.len() {
            let y = members[i];
            for z in [g.mul(x, y), g.mul(y, x), g.ld(x, y), g.ld(y, x)] {
                push(z, &mut set, &mut work);
            }
        }
    }
    Ok(set)
}

/// `C_m(G)`: the subgroup generated by all associator values.
pub fn minimal_t_subgroup(g: &FiniteBinarySystem) -> Result<Subset> {
    g.require_loop()?;
    let n = g.order();
    let mut values = Subset::empty(n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                values.insert(assoc_t(g, a, b, c));
            }
        }
    }
    generated_subloop(g, values.iter())
}

/// Checks that `map` is a bijective endomorphism of `g` that preserves both
/// divisions.
pub fn verify_automorphism(g: &FiniteBinarySystem, map: &[Elem]) -> Result<Verdict> {
    let n = g.order();
    if map.len() != n {
        return Err(Error::Input(format!(
            "map has {} entries, structure has order {n}",
            map.len()
        )));
    }
    let image = Subset::new(n, map.iter().copied())?;
    if image.len() != n {
        let dup = (0..n).find(|&a| map[..a].contains(&map[a])).unwrap_or(0);
        return Ok(Verdict::fails(vec![dup], "map is not injective"));
    }
    for a in 0..n {
        for b in 0..n {
            if map[g.mul(a, b)] != g.mul(map[a], map[b]) {
                return Ok(Verdict::fails(vec![a, b], "does not preserve multiplication"));
            }
            if g.is_quasigroup() {
                if map[g.ld(a, b)] != g.ld(map[a], map[b]) {
                    return Ok(Verdict::fails(vec![a, b], "does not preserve left division"));
                }
                if map[g.rd(a, b)] != g.rd(map[a], map[b]) {
                    return Ok(Verdict::fails(vec![a, b], "does not preserve right division"));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Checks each axiom level up to `level`, with witnesses for failures.
/// Levels above a failed one are skipped.
pub fn verify_class(g: &FiniteBinarySystem, level: ClassTag) -> Report {
    use ClassTag::*;
    let steps: &[ClassTag] = match level {
        Magma => &[],
        Quasigroup => &[Quasigroup],
        Loop => &[Quasigroup, Loop],
        Metagroup => &[Quasigroup, Loop, Metagroup],
        CentralMetagroup => &[Quasigroup, Loop, Metagroup, CentralMetagroup],
        Group => &[Quasigroup, Loop, Group],
    };
    let mut r = Report::new();
    let mut blocked = false;
    for &step in steps {
        let name = match step {
            Quasigroup => "Latin square",
            Loop => "two-sided identity",
            Metagroup => "associator in the center",
            CentralMetagroup => "commutator t2 in the center",
            Group => "associative",
            Magma => unreachable!(),
        };
        if blocked {
            r.skip(name, "a lower level failed");
            continue;
        }
        let v = match step {
            Quasigroup => {
                let flat: Vec<u32> = g.rows().into_iter().flatten().map(|x| x as u32).collect();
                match crate::products::latin_violation(g.order(), &flat) {
                    Some((detail, w)) => Verdict::fails(w, detail),
                    None => Verdict::Holds,
                }
            }
            Loop if g.is_loop() => Verdict::Holds,
            Loop => Verdict::fails(Vec::new(), "no element is a two-sided identity"),
            Metagroup => is_metagroup(g),
            CentralMetagroup => is_central_metagroup(g),
            Group => match first_nonassociative_triple(g) {
                Some(t) => Verdict::fails(t.to_vec(), "(ab)c != a(bc)"),
                None => Verdict::Holds,
            },
            Magma => unreachable!(),
        };
        blocked = !v.holds();
        r.verdict(name, v);
    }
    r
}

/// Summary numbers printed by `analyze`.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Analysis {
    pub order: usize,
    pub class: crate::magma::ClassTag,
    pub commutant: Vec<Elem>,
    pub nucleus_left: Vec<Elem>,
    pub nucleus_middle: Vec<Elem>,
    pub nucleus_right: Vec<Elem>,
    pub center: Vec<Elem>,
    pub nonassociative_triples: usize,
    pub associator_values: Vec<Elem>,
    pub minimal_t_subgroup: Option<Vec<Elem>>,
    pub nonassociative_witness: Option<[Elem; 3]>,
}

pub fn analyze(g: &FiniteBinarySystem) -> Result<Analysis> {
    g.require_quasigroup()?;
    let n = g.order();
    let mut count = 0;
    let mut values = Subset::empty(n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let t = assoc_t(g, a, b, c);
                if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                    count += 1;
                }
                values.insert(t);
            }
        }
    }
    Ok(Analysis {
        order: n,
        class: g.classify(),
        commutant: commutant(g).members(),
        nucleus_left: nucleus_left(g).members(),
        nucleus_middle: nucleus_middle(g).members(),
        nucleus_right: nucleus_right(g).members(),
        center: center(g).members(),
        nonassociative_triples: count,
        associator_values: values.members(),
        minimal_t_subgroup: if g.is_loop() {
            Some(minimal_t_subgroup(g)?.members())
        } else {
            None
        },
        nonassociative_witness: first_nonassociative_triple(g),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn abelian_group_everything_central() {
        let z4 = catalog::cyclic(4).unwrap();
        assert_eq!(commutant(&z4).len(), 4);
        assert_eq!(center(&z4).len(), 4);
        assert!(is_central_metagroup(&z4).holds());
        assert_eq!(minimal_t_subgroup(&z4).unwrap().members(), vec![0]);
    }

    #[test]
    fn s3_center_trivial_and_not_central_metagroup() {
        let s3 = catalog::symmetric3();
        assert_eq!(commutant(&s3).members(), vec![0]);
        assert_eq!(center(&s3).members(), vec![0]);
        for nuc in [nucleus_left(&s3), nucleus_middle(&s3), nucleus_right(&s3), nucleus(&s3)] {
            assert_eq!(nuc.len(), 6);
        }
        assert!(is_metagroup(&s3).holds());
        let v = is_central_metagroup(&s3);
        assert!(!v.holds());
        let w = v.witness().unwrap();
        let (a, b) = (w[0], w[1]);
        assert_ne!(s3.mul(a, b), s3.mul(b, a));
    }

    #[test]
    fn identity_slot_gives_trivial_associator() {
        let m = catalog::cd_basis(3).unwrap();
        for b in 0..16 {
            for c in 0..16 {
                assert_eq!(associator_t(&m, 0, b, c).unwrap(), 0);
            }
        }
    }

    #[test]
    fn non_normal_subgroup_of_s3() {
        let s3 = catalog::symmetric3();
        // a transposition and the identity
        let t = (1..6).find(|&x| s3.mul(x, x) == 0).unwrap();
        let h = Subset::new(6, [0, t]).unwrap();
        assert!(is_submetagroup(&s3, &h).unwrap().holds());
        assert!(!is_almost_invariant(&s3, &h).unwrap().holds());
        assert!(!is_invariant(&s3, &h).unwrap().holds());
        let trivial = Subset::singleton(6, 0);
        assert!(is_invariant(&s3, &trivial).unwrap().holds());
        assert!(is_invariant(&s3, &Subset::full(6)).unwrap().holds());
    }

    #[test]
    fn non_closed_subset_rejected() {
        let z4 = catalog::cyclic(4).unwrap();
        let s = Subset::new(4, [0, 1]).unwrap();
        let v = is_submetagroup(&z4, &s).unwrap();
        // 0 / 1 = 3 is the first escape
        assert_eq!(v.witness(), Some(&[0, 1][..]));
    }

    #[test]
    fn automorphism_check() {
        let z4 = catalog::cyclic(4).unwrap();
        assert!(verify_automorphism(&z4, &[0, 3, 2, 1]).unwrap().holds());
        assert!(!verify_automorphism(&z4, &[0, 2, 1, 3]).unwrap().holds());
        assert!(!verify_automorphism(&z4, &[0, 0, 2, 1]).unwrap().holds());
        assert!(verify_automorphism(&z4, &[0, 1]).is_err());
    }

    #[test]
    fn class_levels() {
        let m16 = catalog::cd_basis(3).unwrap();
        assert!(verify_class(&m16, ClassTag::CentralMetagroup).all_passed());
        let r = verify_class(&m16, ClassTag::Group);
        assert!(!r.all_passed());
        assert!(!r.get("associative").unwrap().witness.is_empty());
        let bad = FiniteBinarySystem::from_table(vec![vec![0, 1], vec![1, 1]]).unwrap();
        let r = verify_class(&bad, ClassTag::Group);
        assert_eq!(r.get("Latin square").unwrap().witness, vec![1, 0, 1]);
        assert_eq!(r.get("associative").unwrap().status, crate::report::Status::Skipped);
    }
}
