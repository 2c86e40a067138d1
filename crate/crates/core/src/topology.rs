//! Finite topologies on quasigroup carriers: neighborhood bases, continuity of
//! the operations, and the `W(S, Q)` sets of a function space `B^V`.

use std::collections::BTreeSet;

use crate::analysis::Verdict;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::magma::{Elem, FiniteBinarySystem};
use crate::report::Report;
use crate::wreath::FunctionSpace;

/// Cap on the number of open sets generated from a base.
const MAX_OPENS: usize = 1 << 16;

/// A topology on `0..n`, stored as its sorted list of open sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteTopology {
    n: usize,
    opens: Vec<BitSet>,
}

impl FiniteTopology {
    /// Validates that `opens` contains `∅` and the carrier and is closed
    /// under pairwise union and intersection.
    pub fn new(n: usize, opens: impl IntoIterator<Item = BitSet>) -> Result<Self> {
        let set: BTreeSet<BitSet> = opens.into_iter().collect();
        if let Some(bad) = set.iter().find(|u| u.capacity() != n) {
            return Err(Error::Input(format!(
                "open set over a carrier of size {} in a topology on {n} points",
                bad.capacity()
            )));
        }
        if !set.contains(&BitSet::new(n)) {
            return Err(Error::Input("the empty set is not open".into()));
        }
        if !set.contains(&BitSet::full(n)) {
            return Err(Error::Input("the whole carrier is not open".into()));
        }
        let opens: Vec<BitSet> = set.iter().cloned().collect();
        for (i, u) in opens.iter().enumerate() {
            for v in &opens[i + 1..] {
                if !set.contains(&u.union(v)) {
                    return Err(Error::Input(format!("not closed under union: {u:?} and {v:?}")));
                }
                if !set.contains(&u.intersection(v)) {
                    return Err(Error::Input(format!(
                        "not closed under intersection: {u:?} and {v:?}"
                    )));
                }
            }
        }
        Ok(FiniteTopology { n, opens })
    }

    /// Every subset is open. Limited to 16 points.
    pub fn discrete(n: usize) -> Result<Self> {
        if n > 16 {
            return Err(Error::Resource(format!("discrete topology on {n} points")));
        }
        let opens = (0u64..1 << n).map(|m| BitSet::from_indices(n, (0..n).filter(|&i| m >> i & 1 == 1)));
        Ok(FiniteTopology {
            n,
            opens: opens.collect::<BTreeSet<_>>().into_iter().collect(),
        })
    }

    /// Only `∅` and the carrier are open.
    pub fn indiscrete(n: usize) -> Self {
        let mut opens = vec![BitSet::new(n), BitSet::full(n)];
        opens.sort();
        opens.dedup();
        FiniteTopology { n, opens }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn opens(&self) -> &[BitSet] {
        &self.opens
    }

    pub fn is_open(&self, s: &BitSet) -> bool {
        self.opens.binary_search(s).is_ok()
    }

    /// Smallest open set containing `x`.
    pub fn minimal_neighborhood(&self, x: Elem) -> BitSet {
        self.opens
            .iter()
            .filter(|u| u.contains(x))
            .fold(BitSet::full(self.n), |acc, u| acc.intersection(u))
    }

    /// Every singleton is closed; on a finite carrier this means discrete.
    pub fn is_t1(&self) -> bool {
        (0..self.n).all(|x| self.minimal_neighborhood(x).count() == 1)
    }
}

/// Neighborhood families `ℬ_g`, one per carrier element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseFamily {
    n: usize,
    families: Vec<Vec<BitSet>>,
}

impl BaseFamily {
    pub fn new(n: usize, families: Vec<Vec<BitSet>>) -> Result<Self> {
        if families.len() != n {
            return Err(Error::Input(format!(
                "{} neighborhood families for {n} points",
                families.len()
            )));
        }
        let mut out = Vec::with_capacity(n);
        for fam in families {
            if fam.iter().any(|u| u.capacity() != n) {
                return Err(Error::Input("base member over the wrong carrier".into()));
            }
            out.push(canonical(fam));
        }
        Ok(BaseFamily { n, families: out })
    }

    /// `ℬ_g = {{g}}`.
    pub fn discrete(n: usize) -> Self {
        BaseFamily {
            n,
            families: (0..n).map(|g| vec![BitSet::from_indices(n, [g])]).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn family(&self, g: Elem) -> &[BitSet] {
        &self.families[g]
    }

    pub fn families(&self) -> &[Vec<BitSet>] {
        &self.families
    }

    /// All members of all families, deduplicated.
    pub fn members(&self) -> Vec<BitSet> {
        canonical(self.families.iter().flatten().cloned().collect())
    }
}

fn canonical(mut v: Vec<BitSet>) -> Vec<BitSet> {
    v.sort();
    v.dedup();
    v
}

fn check_size(g: &FiniteBinarySystem, n: usize) -> Result<()> {
    if g.order() == n {
        Ok(())
    } else {
        Err(Error::Input(format!(
            "structure of order {} with a topology on {n} points",
            g.order()
        )))
    }
}

/// `ℬ_g = { U open : g ∈ U }`.
pub fn base_from_topology(g: &FiniteBinarySystem, t: &FiniteTopology) -> Result<BaseFamily> {
    check_size(g, t.n)?;
    let families = (0..t.n)
        .map(|x| t.opens.iter().filter(|u| u.contains(x)).cloned().collect())
        .collect();
    Ok(BaseFamily { n: t.n, families })
}

fn image(n: usize, u: &BitSet, f: impl Fn(Elem) -> Elem) -> BitSet {
    BitSet::from_indices(n, u.iter().map(f))
}

fn image2(n: usize, u: &BitSet, v: &BitSet, f: impl Fn(Elem, Elem) -> Elem) -> BitSet {
    let vm: Vec<Elem> = v.iter().collect();
    BitSet::from_indices(n, u.iter().flat_map(|x| vm.iter().map(move |&y| (x, y))).map(|(x, y)| f(x, y)))
}

fn bits_members(u: &BitSet) -> String {
    format!("{u:?}")
}

/// Evaluates each of the eight base properties on `ℬ`.
pub fn verify_base_axioms(g: &FiniteBinarySystem, base: &BaseFamily) -> Result<Report> {
    g.require_quasigroup()?;
    check_size(g, base.n)?;
    let n = base.n;
    let fam = |x: Elem| &base.families[x];
    let mapped = |x: Elem, f: &dyn Fn(Elem) -> Elem| canonical(fam(x).iter().map(|u| image(n, u, f)).collect());
    let mut r = Report::new();

    let mut w = None;
    'a: for x in 0..n {
        for h in 0..n {
            if *fam(g.mul(h, x)) != mapped(x, &|y| g.mul(h, y)) {
                w = Some((vec![x, h], "B_{hg} != h B_g"));
                break 'a;
            }
            if *fam(g.mul(x, h)) != mapped(x, &|y| g.mul(y, h)) {
                w = Some((vec![x, h], "B_{gh} != B_g h"));
                break 'a;
            }
        }
    }
    r.verdict("bases translate under multiplication", to_verdict(w));

    let mut w = None;
    'b: for x in 0..n {
        for h in 0..n {
            if *fam(g.ld(h, x)) != mapped(x, &|y| g.ld(h, y)) {
                w = Some((vec![x, h], "B_{h\\g} != h\\B_g"));
                break 'b;
            }
            if *fam(g.rd(x, h)) != mapped(x, &|y| g.rd(y, h)) {
                w = Some((vec![x, h], "B_{g/h} != B_g/h"));
                break 'b;
            }
        }
    }
    r.verdict("bases translate under division", to_verdict(w));

    let w = (0..n)
        .find_map(|x| fam(x).iter().find(|u| !u.contains(x)).map(|u| (vec![x], bits_members(u))));
    r.verdict("g in every member of B_g", to_verdict(w));

    // U_g fixed, a ranges over G, b solves the relevant equation
    let joint = |name: &str, r: &mut Report, b_of: &dyn Fn(Elem, Elem) -> Elem, op: &dyn Fn(&BitSet, &BitSet) -> BitSet| {
        let mut w = None;
        'c: for x in 0..n {
            for ug in fam(x) {
                for a in 0..n {
                    let b = b_of(a, x);
                    let ok = fam(a)
                        .iter()
                        .any(|ua| fam(b).iter().any(|ub| op(ua, ub).is_subset(ug)));
                    if !ok {
                        w = Some((vec![x, a, b], format!("no neighborhoods inside {}", bits_members(ug))));
                        break 'c;
                    }
                }
            }
        }
        r.verdict(name, to_verdict(w));
    };
    joint(
        "neighborhoods for multiplication",
        &mut r,
        &|a, x| g.ld(a, x),
        &|ua, ub| image2(n, ua, ub, |p, q| g.mul(p, q)),
    );
    joint(
        "neighborhoods for right division",
        &mut r,
        &|a, x| g.ld(x, a),
        &|ua, ub| image2(n, ua, ub, |p, q| g.rd(p, q)),
    );
    joint(
        "neighborhoods for left division",
        &mut r,
        &|a, x| g.rd(a, x),
        &|ua, ub| image2(n, ub, ua, |p, q| g.ld(p, q)),
    );

    let mut w = None;
    'd: for x in 0..n {
        let f = fam(x);
        for u in f {
            for v in f {
                let uv = u.intersection(v);
                if !f.iter().any(|s| s.is_subset(&uv)) {
                    w = Some((vec![x], format!("{} and {}", bits_members(u), bits_members(v))));
                    break 'd;
                }
            }
        }
    }
    r.verdict("B_g refines intersections", to_verdict(w));

    let w = (0..n).find_map(|x| {
        let inter = fam(x).iter().fold(BitSet::full(n), |acc, u| acc.intersection(u));
        (inter != BitSet::from_indices(n, [x])).then(|| (vec![x], format!("intersection is {}", bits_members(&inter))))
    });
    r.verdict("intersection of B_g is {g}", to_verdict(w));
    Ok(r)
}

fn to_verdict<S: Into<String>>(w: Option<(Vec<Elem>, S)>) -> Verdict {
    match w {
        None => Verdict::Holds,
        Some((witness, detail)) => Verdict::fails(witness, detail),
    }
}

/// All unions of members of `ℬ`. Fails if the result is not closed under
/// intersection.
pub fn topology_from_base(base: &BaseFamily) -> Result<FiniteTopology> {
    let n = base.n;
    let mut opens: BTreeSet<BitSet> = BTreeSet::new();
    opens.insert(BitSet::new(n));
    for u in base.members() {
        let fresh: Vec<BitSet> = opens.iter().map(|x| x.union(&u)).collect();
        opens.extend(fresh);
        if opens.len() > MAX_OPENS {
            return Err(Error::Resource(format!("more than {MAX_OPENS} open sets")));
        }
    }
    opens.insert(BitSet::full(n));
    let list: Vec<BitSet> = opens.iter().cloned().collect();
    for (i, u) in list.iter().enumerate() {
        for v in &list[i + 1..] {
            let w = u.intersection(v);
            if !opens.contains(&w) {
                return Err(Error::precondition(
                    format!("unions of the base are not closed under intersection: {u:?} and {v:?}"),
                    w.iter().collect(),
                ));
            }
        }
    }
    Ok(FiniteTopology { n, opens: list })
}

/// Joint continuity of multiplication and both divisions. A map `f` is
/// continuous at `(x, y)` iff `f(M(x) × M(y)) ⊆ M(f(x, y))`, `M` being the
/// minimal neighborhood.
pub fn check_continuity(g: &FiniteBinarySystem, t: &FiniteTopology) -> Result<Report> {
    g.require_quasigroup()?;
    check_size(g, t.n)?;
    let n = t.n;
    let m: Vec<BitSet> = (0..n).map(|x| t.minimal_neighborhood(x)).collect();
    let mut r = Report::new();
    let ops: [(&str, &dyn Fn(Elem, Elem) -> Elem); 3] = [
        ("multiplication continuous", &|a, b| g.mul(a, b)),
        ("left division continuous", &|a, b| g.ld(a, b)),
        ("right division continuous", &|a, b| g.rd(a, b)),
    ];
    for (name, f) in ops {
        let w = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find_map(|(x, y)| {
            let target = &m[f(x, y)];
            let img = image2(n, &m[x], &m[y], f);
            (!img.is_subset(target)).then(|| {
                (
                    vec![x, y],
                    format!("preimage of the open set {} is not open at ({x}, {y})", bits_members(target)),
                )
            })
        });
        r.verdict(name, to_verdict(w));
    }
    if t.is_t1() {
        r.note("topology is T1 (on a finite carrier this is the discrete topology)");
    } else {
        r.note("topology is not T1; a finite T1 topology must be discrete");
    }
    Ok(r)
}

/// `W(S, Q) = { f : f(S) ⊆ Q }` as a set of function indices. `S` indexes
/// points of `fs`, `Q` elements of `B`.
pub fn w_set(fs: &FunctionSpace, s: &BitSet, q: &BitSet) -> BitSet {
    BitSet::from_indices(
        fs.len(),
        (0..fs.len()).filter(|&f| s.iter().all(|k| q.contains(fs.value(f, k)))),
    )
}

fn nonempty_subsets(n: usize) -> Vec<BitSet> {
    (1u64..1 << n)
        .map(|m| BitSet::from_indices(n, (0..n).filter(|&i| m >> i & 1 == 1)))
        .collect()
}

fn pointwise_image(
    fs: &FunctionSpace,
    x: &BitSet,
    y: &BitSet,
    f: impl Fn(Elem, Elem) -> Elem,
) -> BitSet {
    let nv = fs.points().len();
    let ys: Vec<Vec<Elem>> = y.iter().map(|g| fs.decode(g)).collect();
    let mut out = BitSet::new(fs.len());
    for a in x.iter() {
        let av = fs.decode(a);
        for bv in &ys {
            let vals: Vec<Elem> = (0..nv).map(|k| f(av[k], bv[k])).collect();
            out.insert(fs.encode(&vals));
        }
    }
    out
}

/// Largest number of index families enumerated for the union/intersection items.
const MAX_SUBFAMILIES: usize = 1 << 20;

/// Exhaustive check of the six `W(S, Q)` identities for `|V| = nv`.
pub fn verify_w_set_identities(nv: usize, b: &FiniteBinarySystem, max_size: usize) -> Result<Report> {
    b.require_quasigroup()?;
    if nv == 0 {
        return Err(Error::Input("V must be nonempty".into()));
    }
    let nb = b.order();
    let fs = FunctionSpace::new((0..nv).collect(), nb, max_size)?;
    let ss = nonempty_subsets(nv);
    let qs = nonempty_subsets(nb);
    for (count, what) in [(ss.len(), "subsets of V"), (qs.len(), "subsets of B")] {
        if count >= 64 || (1usize << count) > MAX_SUBFAMILIES {
            return Err(Error::Resource(format!("too many families of {what}")));
        }
    }
    let w: Vec<Vec<BitSet>> = ss.iter().map(|s| qs.iter().map(|q| w_set(&fs, s, q)).collect()).collect();
    let q_index = |q: &BitSet| qs.binary_search(q).ok();
    let w_of = |si: usize, q: &BitSet| -> BitSet {
        match q_index(q) {
            Some(qi) => w[si][qi].clone(),
            None => w_set(&fs, &ss[si], q),
        }
    };
    let elementwise = |q: &BitSet, q1: &BitSet, f: &dyn Fn(Elem, Elem) -> Elem| image2(nb, q, q1, f);
    let mut r = Report::new();

    let mut bad = None;
    'a: for si in 0..ss.len() {
        for (i2, q2) in qs.iter().enumerate() {
            for (i1, q1) in qs.iter().enumerate() {
                if q1.is_subset(q2) && !w[si][i1].is_subset(&w[si][i2]) {
                    bad = Some((vec![si, i1, i2], "W(S,Q1) not inside W(S,Q2)"));
                    break 'a;
                }
            }
        }
    }
    r.verdict("W monotone in Q", to_verdict(bad));

    let consts: Vec<usize> = (0..nb).map(|x| fs.encode(&vec![x; nv])).collect();
    let mut bad = None;
    'b: for x in 0..nb {
        let cx = BitSet::from_indices(fs.len(), [consts[x]]);
        for si in 0..ss.len() {
            for (qi, q) in qs.iter().enumerate() {
                let bq = image(nb, q, |y| b.rd(x, y));
                let lhs = w_of(si, &bq);
                let rhs = pointwise_image(&fs, &cx, &w[si][qi], |p, y| b.rd(p, y));
                if lhs != rhs {
                    bad = Some((vec![x, si, qi], "W(S,b/Q) != b/W(S,Q)"));
                    break 'b;
                }
                let qb = image(nb, q, |y| b.ld(y, x));
                let lhs = w_of(si, &qb);
                let rhs = pointwise_image(&fs, &w[si][qi], &cx, |y, p| b.ld(y, p));
                if lhs != rhs {
                    bad = Some((vec![x, si, qi], "W(S,Q\\b) != W(S,Q)\\b"));
                    break 'b;
                }
            }
        }
    }
    r.verdict("W commutes with division by constants", to_verdict(bad));

    let ops: [(&str, &dyn Fn(Elem, Elem) -> Elem); 3] = [
        ("\\", &|p, q| b.ld(p, q)),
        ("/", &|p, q| b.rd(p, q)),
        ("*", &|p, q| b.mul(p, q)),
    ];
    let mut bad = None;
    let mut strict = 0usize;
    'c: for si in 0..ss.len() {
        for (qi, q) in qs.iter().enumerate() {
            for (q1i, q1) in qs.iter().enumerate() {
                for (sym, op) in ops {
                    let lhs = pointwise_image(&fs, &w[si][qi], &w[si][q1i], op);
                    let rhs = w_of(si, &elementwise(q, q1, op));
                    if !lhs.is_subset(&rhs) {
                        bad = Some((vec![si, qi, q1i], format!("W(S,Q) {sym} W(S,Q1) not inside W(S,Q {sym} Q1)")));
                        break 'c;
                    }
                    if lhs != rhs {
                        strict += 1;
                    }
                }
            }
        }
    }
    r.verdict("pointwise operations on W sets", to_verdict(bad));
    r.note(format!("strict containments among pointwise operations: {strict}"));

    let mut bad = None;
    'd: for (i2, s2) in ss.iter().enumerate() {
        for (i1, s1) in ss.iter().enumerate() {
            if s1.is_subset(s2) {
                if let Some(qi) = (0..qs.len()).find(|&qi| !w[i2][qi].is_subset(&w[i1][qi])) {
                    bad = Some((vec![i1, i2, qi], "W(S2,Q) not inside W(S1,Q)"));
                    break 'd;
                }
            }
        }
    }
    r.verdict("W antitone in S", to_verdict(bad));

    // every nonempty family of S_i, built up one member at a time
    let mut bad = None;
    let fam_count = 1usize << ss.len();
    'e: for qi in 0..qs.len() {
        let mut union = vec![BitSet::new(nv); fam_count];
        let mut inter = vec![BitSet::full(fs.len()); fam_count];
        for mask in 1..fam_count {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            union[mask] = union[rest].union(&ss[low]);
            inter[mask] = inter[rest].intersection(&w[low][qi]);
            let si = ss.binary_search(&union[mask]).expect("nonempty subset");
            if w[si][qi] != inter[mask] {
                bad = Some((vec![qi, mask], "W(U S_i, Q) != ∩ W(S_i, Q)"));
                break 'e;
            }
        }
    }
    r.verdict("W of a union of S", to_verdict(bad));

    // every family of Q_i with nonempty intersection
    let mut bad = None;
    let fam_count = 1usize << qs.len();
    let mut inter_q = vec![BitSet::full(nb); fam_count];
    for mask in 1..fam_count {
        let low = mask.trailing_zeros() as usize;
        inter_q[mask] = inter_q[mask & (mask - 1)].intersection(&qs[low]);
    }
    'f: for si in 0..ss.len() {
        let mut inter = vec![BitSet::full(fs.len()); fam_count];
        for mask in 1..fam_count {
            let low = mask.trailing_zeros() as usize;
            inter[mask] = inter[mask & (mask - 1)].intersection(&w[si][low]);
            if inter_q[mask].is_empty() {
                continue;
            }
            if w_of(si, &inter_q[mask]) != inter[mask] {
                bad = Some((vec![si, mask], "W(S, ∩ Q_i) != ∩ W(S, Q_i)"));
                break 'f;
            }
        }
    }
    r.verdict("W of an intersection of Q", to_verdict(bad));
    Ok(r)
}

/// Searches for `S, Q, Q1` with `W(S,Q) W(S,Q1)` strictly inside `W(S,QQ1)`.
/// Returns the first witness as `(S, Q, Q1)` and the number of triples tried.
pub fn w_set_product_strictness(
    nv: usize,
    b: &FiniteBinarySystem,
    max_size: usize,
) -> Result<(Option<(BitSet, BitSet, BitSet)>, usize)> {
    let nb = b.order();
    let fs = FunctionSpace::new((0..nv).collect(), nb, max_size)?;
    let ss = nonempty_subsets(nv);
    let qs = nonempty_subsets(nb);
    let mut tried = 0;
    for s in &ss {
        for q in &qs {
            let wq = w_set(&fs, s, q);
            for q1 in &qs {
                tried += 1;
                let lhs = pointwise_image(&fs, &wq, &w_set(&fs, s, q1), |p, r| b.mul(p, r));
                let rhs = w_set(&fs, s, &image2(nb, q, q1, |p, r| b.mul(p, r)));
                if lhs != rhs {
                    return Ok((Some((s.clone(), q.clone(), q1.clone())), tried));
                }
            }
        }
    }
    Ok((None, tried))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn bits(n: usize, m: &[usize]) -> BitSet {
        BitSet::from_indices(n, m.iter().copied())
    }

    #[test]
    fn construction_checks() {
        assert!(FiniteTopology::new(2, [bits(2, &[]), bits(2, &[0])]).is_err());
        assert!(FiniteTopology::new(3, [bits(3, &[]), bits(3, &[0]), bits(3, &[1]), bits(3, &[0, 1, 2])]).is_err());
        let t = FiniteTopology::new(2, [bits(2, &[]), bits(2, &[0]), bits(2, &[0, 1])]).unwrap();
        assert_eq!(t.opens().len(), 3);
        assert_eq!(FiniteTopology::discrete(3).unwrap().opens().len(), 8);
    }

    #[test]
    fn discrete_and_indiscrete_bases() {
        let g = catalog::cyclic(3).unwrap();
        let d = base_from_topology(&g, &FiniteTopology::discrete(3).unwrap()).unwrap();
        assert!(d.family(1).contains(&bits(3, &[1])));
        let i = base_from_topology(&g, &FiniteTopology::indiscrete(3)).unwrap();
        assert_eq!(i.family(2), &[BitSet::full(3)]);
        let r = verify_base_axioms(&g, &i).unwrap();
        assert!(!r.passed("intersection of B_g is {g}"));
        assert!(r.passed("bases translate under multiplication"));
    }

    #[test]
    fn discrete_base_passes_everything() {
        let g = catalog::symmetric3();
        let r = verify_base_axioms(&g, &BaseFamily::discrete(6)).unwrap();
        assert!(r.all_passed(), "{r}");
        assert_eq!(r.items.len(), 8);
    }

    #[test]
    fn dropping_a_translate_breaks_translation() {
        let g = catalog::cyclic(4).unwrap();
        let mut fams: Vec<Vec<BitSet>> = (0..4).map(|x| vec![bits(4, &[x]), bits(4, &[x, (x + 2) % 4])]).collect();
        fams[3].pop();
        let base = BaseFamily::new(4, fams).unwrap();
        let r = verify_base_axioms(&g, &base).unwrap();
        let item = r.get("bases translate under multiplication").unwrap();
        assert_eq!(item.status, crate::report::Status::Fail);
        assert!(!item.witness.is_empty());
    }

    #[test]
    fn one_point_round_trip() {
        let base = BaseFamily::new(1, vec![vec![BitSet::full(1)]]).unwrap();
        let t = topology_from_base(&base).unwrap();
        assert_eq!(t.opens().len(), 2);
    }

    #[test]
    fn continuity_examples() {
        let z2 = catalog::cyclic(2).unwrap();
        let sierpinski = FiniteTopology::new(2, [bits(2, &[]), bits(2, &[0]), bits(2, &[0, 1])]).unwrap();
        let r = check_continuity(&z2, &sierpinski).unwrap();
        let item = r.get("multiplication continuous").unwrap();
        assert_eq!(item.status, crate::report::Status::Fail);
        assert_eq!(item.witness, vec![1, 1]);
        assert!(check_continuity(&z2, &FiniteTopology::indiscrete(2)).unwrap().all_passed());
        assert!(check_continuity(&z2, &FiniteTopology::discrete(2).unwrap()).unwrap().all_passed());
    }

    #[test]
    fn coset_topology_is_continuous() {
        // opens are unions of cosets of {0, 2} in Z4
        let z4 = catalog::cyclic(4).unwrap();
        let t = FiniteTopology::new(4, [bits(4, &[]), bits(4, &[0, 2]), bits(4, &[1, 3]), BitSet::full(4)]).unwrap();
        assert!(check_continuity(&z4, &t).unwrap().all_passed());
        let base = base_from_topology(&z4, &t).unwrap();
        let r = verify_base_axioms(&z4, &base).unwrap();
        assert!(!r.passed("intersection of B_g is {g}"));
        assert_eq!(r.items.iter().filter(|i| i.status == crate::report::Status::Pass).count(), 7);
    }

    #[test]
    fn w_set_counts() {
        let fs = FunctionSpace::new(vec![0, 1], 2, 64).unwrap();
        assert_eq!(w_set(&fs, &bits(2, &[0, 1]), &bits(2, &[0, 1])).count(), 4);
        assert_eq!(w_set(&fs, &bits(2, &[0]), &bits(2, &[0])).count(), 2);
        assert_eq!(w_set(&fs, &bits(2, &[0, 1]), &bits(2, &[0])).count(), 1);
    }

    #[test]
    fn w_set_identities_small() {
        let r = verify_w_set_identities(1, &catalog::cyclic(3).unwrap(), 4096).unwrap();
        assert!(r.all_passed(), "{r}");
        let r = verify_w_set_identities(2, &catalog::cyclic(2).unwrap(), 4096).unwrap();
        assert!(r.all_passed(), "{r}");
        assert_eq!(r.items.len(), 6);
    }
}
