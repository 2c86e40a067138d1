//! Right cosets, transversal sets with their `ψ`/`τ` factorization, the coset
//! space `G/_cH` with its quotient map, and right translations on it.

use crate::analysis::{self, Verdict};
use crate::error::{Error, Result};
use crate::magma::{Elem, FiniteBinarySystem};
use crate::report::Report;
use crate::subset::{self, Subset};

/// `Hb = { hb : h in H }`.
pub fn right_coset(g: &FiniteBinarySystem, h: &Subset, b: Elem) -> Result<Subset> {
    h.check_parent(g)?;
    g.check_elem(b)?;
    Ok(subset::right_translate(g, h, b))
}

/// Checks `(Hb)a = H(ba)` for every pair; the witness is `[a, b]`.
pub fn check_coset_condition(g: &FiniteBinarySystem, h: &Subset) -> Result<Verdict> {
    h.check_parent(g)?;
    let n = g.order();
    let m = h.members();
    for a in 0..n {
        for b in 0..n {
            let lhs = Subset::new(n, m.iter().map(|&x| g.mul(g.mul(x, b), a)))?;
            let rhs = Subset::new(n, m.iter().map(|&x| g.mul(x, g.mul(b, a))))?;
            if lhs != rhs {
                return Ok(Verdict::fails(vec![a, b], "(Hb)a != H(ba)"));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// The set of right cosets of `H` with the quotient map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSpace {
    sub: Subset,
    cosets: Vec<Subset>,
    pi: Vec<usize>,
}

impl QuotientSpace {
    pub fn sub(&self) -> &Subset {
        &self.sub
    }

    /// Cosets ordered by their least member.
    pub fn cosets(&self) -> &[Subset] {
        &self.cosets
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// Index of the coset containing `g`.
    pub fn pi(&self, g: Elem) -> usize {
        self.pi[g]
    }

    pub fn pi_table(&self) -> &[usize] {
        &self.pi
    }
}

/// Partition of `domain` into the right cosets `Hx`, `x` in `domain`, ordered
/// by least member. Fails if two cosets overlap without being equal or a coset
/// leaves the domain.
fn coset_partition(
    g: &FiniteBinarySystem,
    domain: &Subset,
    h: &Subset,
) -> Result<(Vec<Subset>, Vec<usize>)> {
    let n = g.order();
    let mut cosets: Vec<Subset> = Vec::new();
    let mut pi = vec![usize::MAX; n];
    for x in domain.iter() {
        if pi[x] != usize::MAX {
            continue;
        }
        let c = subset::right_translate(g, h, x);
        if !c.is_subset(domain) {
            let out = c.difference(domain).first().expect("nonempty");
            return Err(Error::precondition(
                "right coset leaves the carrier",
                vec![x, out],
            ));
        }
        if let Some(y) = c.iter().find(|&y| pi[y] != usize::MAX) {
            return Err(Error::precondition(
                "right cosets overlap without being equal",
                vec![x, y],
            ));
        }
        if !c.contains(x) {
            return Err(Error::precondition("x is not in its own coset Hx", vec![x]));
        }
        for y in c.iter() {
            pi[y] = cosets.len();
        }
        cosets.push(c);
    }
    Ok((cosets, pi))
}

/// Builds `G/_cH`. Requires `(Hb)a = H(ba)` for all `a, b`; also re-checks
/// that `Ha = Hb` exactly when `H(b/a) = H`.
pub fn quotient(g: &FiniteBinarySystem, h: &Subset) -> Result<QuotientSpace> {
    g.require_quasigroup()?;
    h.check_parent(g)?;
    if h.is_empty() {
        return Err(Error::Input("empty subquasigroup".into()));
    }
    if let Verdict::Fails { witness, detail } = check_coset_condition(g, h)? {
        return Err(Error::precondition(detail, witness));
    }
    let (cosets, pi) = coset_partition(g, &Subset::full(g.order()), h)?;
    let n = g.order();
    let h_coset = pi[h.first().expect("nonempty")];
    if cosets[h_coset] != *h {
        return Err(Error::precondition("H is not one of its own right cosets", vec![]));
    }
    for a in 0..n {
        for b in 0..n {
            let same = pi[a] == pi[b];
            let trivial = cosets[pi[g.rd(b, a)]] == *h;
            if same != trivial {
                return Err(Error::precondition("Ha = Hb does not match H(b/a) = H", vec![a, b]));
            }
        }
    }
    Ok(QuotientSpace {
        sub: h.clone(),
        cosets,
        pi,
    })
}

/// A transversal set `V` of `H` in a carrier `K` (all of `G` unless built
/// with [`Transversal::within`]), with `d = ψ(d) τ(d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transversal {
    domain: Subset,
    sub: Subset,
    reps: Vec<Elem>,
    psi: Vec<Elem>,
    tau: Vec<Elem>,
    coset: Vec<usize>,
}

const OUTSIDE: usize = usize::MAX;

impl Transversal {
    /// Transversal of `H` in `G` with the least element of each coset as
    /// representative. Requires the coset space to exist.
    pub fn new(g: &FiniteBinarySystem, h: &Subset) -> Result<Self> {
        quotient(g, h)?;
        Self::within(g, &Subset::full(g.order()), h, &[])
    }

    /// Transversal of `H` inside the sub-carrier `K`. Each coset takes its
    /// member from `preferred` if there is one, otherwise its least member.
    pub fn within(
        g: &FiniteBinarySystem,
        k: &Subset,
        h: &Subset,
        preferred: &[Elem],
    ) -> Result<Self> {
        g.require_quasigroup()?;
        k.check_parent(g)?;
        h.check_parent(g)?;
        if !h.is_subset(k) {
            return Err(Error::Input("H is not contained in the carrier".into()));
        }
        let (cosets, coset_of) = coset_partition(g, k, h)?;
        let mut reps: Vec<Elem> = cosets.iter().map(|c| c.first().expect("nonempty")).collect();
        let mut chosen = vec![false; cosets.len()];
        for &p in preferred {
            g.check_elem(p)?;
            if !k.contains(p) {
                return Err(Error::precondition("preferred representative outside the carrier", vec![p]));
            }
            let ci = coset_of[p];
            if chosen[ci] && reps[ci] != p {
                return Err(Error::precondition(
                    "two preferred representatives share a coset",
                    vec![reps[ci], p],
                ));
            }
            chosen[ci] = true;
            reps[ci] = p;
        }
        let n = g.order();
        let mut psi = vec![OUTSIDE; n];
        let mut tau = vec![OUTSIDE; n];
        for d in k.iter() {
            let v = reps[coset_of[d]];
            let a = g.rd(d, v);
            if !h.contains(a) {
                return Err(Error::Structure(format!(
                    "d/v = {a} is not in H for d = {d}, v = {v}"
                )));
            }
            psi[d] = a;
            tau[d] = v;
        }
        Ok(Transversal {
            domain: k.clone(),
            sub: h.clone(),
            reps,
            psi,
            tau,
            coset: coset_of,
        })
    }

    pub fn reps(&self) -> &[Elem] {
        &self.reps
    }

    pub fn sub(&self) -> &Subset {
        &self.sub
    }

    pub fn domain(&self) -> &Subset {
        &self.domain
    }

    pub fn rep_set(&self) -> Subset {
        Subset::new(self.domain.order(), self.reps.iter().copied()).expect("in range")
    }

    /// `d^ψ`, the `H`-part of `d`. Panics outside the carrier.
    pub fn psi(&self, d: Elem) -> Elem {
        assert!(self.domain.contains(d), "{d} outside the transversal carrier");
        self.psi[d]
    }

    /// `d^τ`, the representative of `Hd`.
    pub fn tau(&self, d: Elem) -> Elem {
        assert!(self.domain.contains(d), "{d} outside the transversal carrier");
        self.tau[d]
    }

    /// Position of `d`'s coset in [`Transversal::reps`].
    pub fn rep_index(&self, d: Elem) -> usize {
        self.coset[d]
    }

    /// `ν(a, c) = (a^τ c)^τ`, the induced action of `G` on `V`.
    pub fn nu(&self, g: &FiniteBinarySystem, a: Elem, c: Elem) -> Elem {
        self.tau(g.mul(self.tau(a), c))
    }

    /// Checks the covering and disjointness of `{Hv}` and the factorization
    /// identities of the transversal.
    pub fn check(&self, g: &FiniteBinarySystem) -> Report {
        let mut r = Report::new();
        let n = g.order();
        let covered = self
            .reps
            .iter()
            .fold(Subset::empty(n), |acc, &v| acc.union(&subset::right_translate(g, &self.sub, v)));
        r.check("cosets cover the carrier", covered == self.domain, || {
            self.domain.difference(&covered).members()
        });
        let mut disjoint = None;
        'outer: for (i, &v1) in self.reps.iter().enumerate() {
            for &v2 in &self.reps[i + 1..] {
                let c1 = subset::right_translate(g, &self.sub, v1);
                let c2 = subset::right_translate(g, &self.sub, v2);
                if !c1.is_disjoint(&c2) {
                    disjoint = Some(vec![v1, v2]);
                    break 'outer;
                }
            }
        }
        r.verdict("cosets pairwise disjoint", Verdict::from_option(disjoint, ""));
        let dom: Vec<Elem> = self.domain.members();
        let first = |f: &dyn Fn(Elem) -> bool| dom.iter().copied().find(|&d| !f(d)).map(|d| vec![d]);
        r.verdict(
            "psi idempotent",
            Verdict::from_option(first(&|d| self.psi(self.psi(d)) == self.psi(d)), ""),
        );
        r.verdict(
            "tau idempotent",
            Verdict::from_option(first(&|d| self.tau(self.tau(d)) == self.tau(d)), ""),
        );
        r.verdict(
            "d = psi(d) tau(d)",
            Verdict::from_option(first(&|d| g.mul(self.psi(d), self.tau(d)) == d), ""),
        );
        if let Some(e) = g.identity() {
            r.verdict(
                "psi(tau(d)) = e",
                Verdict::from_option(first(&|d| self.psi(self.tau(d)) == e), ""),
            );
            r.verdict(
                "tau(psi(d)) = e",
                Verdict::from_option(first(&|d| self.tau(self.psi(d)) == e), ""),
            );
        }
        r
    }
}

/// `S_b(Hg) = H(gb)` as a permutation of coset indices. Verifies the map is
/// well defined and that `Hg -> H(g/b)` inverts it.
pub fn right_translation(g: &FiniteBinarySystem, q: &QuotientSpace, b: Elem) -> Result<Vec<usize>> {
    g.check_elem(b)?;
    let mut perm = vec![usize::MAX; q.len()];
    for x in 0..g.order() {
        let i = q.pi(x);
        let j = q.pi(g.mul(x, b));
        if perm[i] == usize::MAX {
            perm[i] = j;
        } else if perm[i] != j {
            return Err(Error::Structure(format!(
                "right translation by {b} is not well defined on the coset of {x}"
            )));
        }
    }
    let mut inverse = vec![usize::MAX; q.len()];
    for x in 0..g.order() {
        inverse[q.pi(x)] = q.pi(g.rd(x, b));
    }
    for (i, &j) in perm.iter().enumerate() {
        if inverse[j] != i {
            return Err(Error::Structure(format!(
                "right translation by {b} is not a bijection on cosets"
            )));
        }
    }
    Ok(perm)
}

/// `π ∘ R_b = S_b ∘ π` for every `b` and `g`; witness `[b, g]`.
pub fn check_translation_commutes(g: &FiniteBinarySystem, q: &QuotientSpace) -> Result<Verdict> {
    for b in 0..g.order() {
        let s = right_translation(g, q, b)?;
        for x in 0..g.order() {
            if q.pi(g.mul(x, b)) != s[q.pi(x)] {
                return Ok(Verdict::fails(vec![b, x], "pi(gb) != S_b(pi(g))"));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// The coset space with `(Hg)(Hk) = H(gk)` as a finite binary system.
/// Fails with a witness `[g, g', k, k']` when the product depends on the
/// choice of representatives.
pub fn quotient_structure(g: &FiniteBinarySystem, q: &QuotientSpace) -> Result<FiniteBinarySystem> {
    let m = q.len();
    let mut table = vec![vec![usize::MAX; m]; m];
    let mut witness_of = vec![vec![(0, 0); m]; m];
    for x in 0..g.order() {
        for k in 0..g.order() {
            let (i, j) = (q.pi(x), q.pi(k));
            let c = q.pi(g.mul(x, k));
            if table[i][j] == usize::MAX {
                table[i][j] = c;
                witness_of[i][j] = (x, k);
            } else if table[i][j] != c {
                let (x0, k0) = witness_of[i][j];
                return Err(Error::precondition(
                    "coset product depends on representatives (H not invariant)",
                    vec![x0, x, k0, k],
                ));
            }
        }
    }
    let qs = FiniteBinarySystem::from_table(table)?;
    // π(e) = H sits at coset index 0 because e = 0 is the least element.
    Ok(qs)
}

/// Outcome of checking the nested transversal identities for `A ⊆ AC1 ⊆ D`.
#[derive(Debug, Clone)]
pub struct NestedTransversals {
    pub ac1: Subset,
    pub c1a: Subset,
    /// `V_{C1, C1∩A}`, which also serves as `V_{AC1, A}`.
    pub v_c1: Transversal,
    pub v_d_ac1: Transversal,
    pub v_d_a: Transversal,
    pub report: Report,
}

/// Builds `V_{D,AC1}`, `V_{AC1,A}` and `V_{D,A} = V_{AC1,A} V_{D,AC1}` and
/// checks the composition rules for `ψ` and `τ` across the tower
/// `A ⊆ AC1 ⊆ D`, plus `(d^ψ γ)^ψ = d^ψ γ^ψ` and `(d^ψ γ)^τ = γ^τ` for
/// `γ` in `C1`.
pub fn check_nested_transversals(g: &FiniteBinarySystem, a: &Subset, c1: &Subset) -> Result<NestedTransversals> {
    g.require_loop()?;
    a.check_parent(g)?;
    c1.check_parent(g)?;
    if let Verdict::Fails { witness, detail } = analysis::is_submetagroup(g, a)? {
        return Err(Error::precondition(format!("A is not a submetagroup: {detail}"), witness));
    }
    let z = analysis::center(g);
    if !c1.is_subset(&z) {
        return Err(Error::precondition(
            "C1 is not central",
            c1.difference(&z).members(),
        ));
    }
    if let Verdict::Fails { witness, detail } = analysis::is_submetagroup(g, c1)? {
        return Err(Error::precondition(format!("C1 is not a subgroup: {detail}"), witness));
    }
    let cm = analysis::minimal_t_subgroup(g)?;
    if !cm.is_subset(c1) {
        return Err(Error::precondition(
            "C1 does not contain the associator subgroup",
            cm.difference(c1).members(),
        ));
    }
    let ac1 = subset::product(g, a, c1);
    if let Verdict::Fails { witness, detail } = analysis::is_submetagroup(g, &ac1)? {
        return Err(Error::precondition(format!("AC1 is not closed: {detail}"), witness));
    }
    let c1a = c1.intersection(a);

    let v_c1 = Transversal::within(g, c1, &c1a, &[])?;
    let v_ac1_a = Transversal::within(g, &ac1, a, v_c1.reps())?;
    let v_d_ac1 = Transversal::new(g, &ac1)?;
    let mut composite = Vec::new();
    for &v in v_d_ac1.reps() {
        for &gam in v_c1.reps() {
            composite.push(g.mul(gam, v));
        }
    }
    let v_d_a = Transversal::within(g, &Subset::full(g.order()), a, &composite)?;

    let mut r = Report::new();
    // the transversal of C1∩A in C1 must itself be a transversal of A in AC1
    r.check(
        "V_{C1,C1A} = V_{AC1,A}",
        v_ac1_a.rep_set() == v_c1.rep_set() && v_ac1_a.check(g).all_passed(),
        || v_ac1_a.reps().to_vec(),
    );
    let composite_set = Subset::new(g.order(), composite.iter().copied())?;
    r.check(
        "V_{C1,C1A} V_{D,AC1} = V_{D,A}",
        composite.len() == v_d_a.reps().len() && composite_set == v_d_a.rep_set(),
        || composite.clone(),
    );
    r.check(
        "V_{AC1,A} subset of V_{D,A}",
        v_ac1_a.rep_set().is_subset(&v_d_a.rep_set()),
        || v_ac1_a.rep_set().difference(&v_d_a.rep_set()).members(),
    );

    let n = g.order();
    let first = |f: &dyn Fn(Elem) -> bool| (0..n).find(|&d| !f(d)).map(|d| vec![d]);
    r.verdict(
        "psi^D_A = psi^{AC1}_A o psi^D_{AC1}",
        Verdict::from_option(
            first(&|d| v_d_a.psi(d) == v_ac1_a.psi(v_d_ac1.psi(d))),
            "",
        ),
    );
    r.verdict(
        "tau^D_A(d) = tau^{AC1}_A(psi^D_{AC1}(d)) tau^D_{AC1}(d)",
        Verdict::from_option(
            first(&|d| v_d_a.tau(d) == g.mul(v_ac1_a.tau(v_d_ac1.psi(d)), v_d_ac1.tau(d))),
            "",
        ),
    );
    let mut w264 = None;
    'outer: for d in 0..n {
        let dp = v_d_a.psi(d);
        for gam in c1.iter() {
            let x = g.mul(dp, gam);
            if v_d_a.psi(x) != g.mul(dp, v_d_a.psi(gam)) || v_d_a.tau(x) != v_d_a.tau(gam) {
                w264 = Some(vec![d, gam]);
                break 'outer;
            }
        }
    }
    r.verdict(
        "(d^psi gamma)^psi = d^psi gamma^psi and (d^psi gamma)^tau = gamma^tau",
        Verdict::from_option(w264, ""),
    );
    Ok(NestedTransversals {
        ac1,
        c1a,
        v_c1,
        v_d_ac1,
        v_d_a,
        report: r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn s3_rotations() -> (FiniteBinarySystem, Subset) {
        let s3 = catalog::symmetric3();
        // 3-cycles are the elements of order 3
        let h = Subset::from_predicate(6, |x| x == 0 || (s3.mul(x, x) != 0 && s3.mul(x, s3.mul(x, x)) == 0));
        assert_eq!(h.len(), 3);
        (s3, h)
    }

    #[test]
    fn trivial_and_full_subgroups() {
        let g = catalog::cd_basis(3).unwrap();
        let e = Subset::singleton(16, 0);
        for b in 0..16 {
            assert_eq!(right_coset(&g, &e, b).unwrap().members(), vec![b]);
            assert_eq!(right_coset(&g, &Subset::full(16), b).unwrap().len(), 16);
        }
        assert_eq!(quotient(&g, &e).unwrap().len(), 16);
        assert_eq!(quotient(&g, &Subset::full(16)).unwrap().len(), 1);

        let t = Transversal::new(&g, &e).unwrap();
        assert_eq!(t.reps().len(), 16);
        for d in 0..16 {
            assert_eq!(t.psi(d), 0);
            assert_eq!(t.tau(d), d);
            for c in 0..16 {
                assert_eq!(t.nu(&g, d, c), g.mul(d, c));
            }
        }
        let t = Transversal::new(&g, &Subset::full(16)).unwrap();
        assert_eq!(t.reps(), &[0]);
        for d in 0..16 {
            assert_eq!(t.psi(d), d);
            assert_eq!(t.tau(d), 0);
        }
        let top = quotient_structure(&g, &quotient(&g, &Subset::full(16)).unwrap()).unwrap();
        assert_eq!(top.order(), 1);
        assert!(top.is_loop());
    }

    #[test]
    fn s3_three_cycle_cosets() {
        let (s3, h) = s3_rotations();
        let q = quotient(&s3, &h).unwrap();
        assert_eq!(q.len(), 2);
        assert!(q.cosets().iter().all(|c| c.len() == 3));
        let t = Transversal::new(&s3, &h).unwrap();
        assert!(t.check(&s3).all_passed());
    }

    #[test]
    fn non_normal_subgroup_keeps_coset_condition_but_has_no_quotient_table() {
        let s3 = catalog::symmetric3();
        let h = Subset::new(6, [0, 1]).unwrap();
        assert_eq!(s3.mul(1, 1), 0);
        assert!(check_coset_condition(&s3, &h).unwrap().holds());
        let q = quotient(&s3, &h).unwrap();
        assert_eq!(q.len(), 3);
        assert!(matches!(quotient_structure(&s3, &q), Err(Error::Precondition { .. })));
    }

    #[test]
    fn nu_at_identity_is_tau() {
        let g = catalog::cd_basis(3).unwrap();
        let z = analysis::center(&g);
        let t = Transversal::new(&g, &z).unwrap();
        for a in 0..16 {
            assert_eq!(t.nu(&g, a, 0), t.tau(a));
            for c in 0..16 {
                assert!(t.reps().contains(&t.nu(&g, a, c)));
            }
        }
    }

    #[test]
    fn right_translation_identity_and_inverse() {
        let (s3, h) = s3_rotations();
        let q = quotient(&s3, &h).unwrap();
        assert_eq!(right_translation(&s3, &q, 0).unwrap(), vec![0, 1]);
        for b in 0..6 {
            let s = right_translation(&s3, &q, b).unwrap();
            let binv = s3.inv_r(b).unwrap();
            let sinv = right_translation(&s3, &q, binv).unwrap();
            for i in 0..q.len() {
                assert_eq!(sinv[s[i]], i);
            }
        }
        assert!(check_translation_commutes(&s3, &q).unwrap().holds());
    }

    #[test]
    fn coset_condition_fails_in_some_order_5_loop() {
        // a subloop {e, x} of a non-metagroup loop where (Hb)a != H(ba)
        let loops = crate::search::enumerate_reduced(5);
        let found = loops.iter().any(|g| {
            (1..5).any(|x| {
                let h = Subset::new(5, [0, x]).unwrap();
                !check_coset_condition(g, &h).unwrap().holds()
            })
        });
        assert!(found);
    }

    #[test]
    fn nested_transversals_with_trivial_c1() {
        let g = catalog::cd_basis(3).unwrap();
        let q8 = Subset::new(16, 0..8).unwrap();
        let c1 = Subset::singleton(16, 0);
        // C1 = {e} does not contain the associator subgroup of M16
        assert!(matches!(check_nested_transversals(&g, &q8, &c1), Err(Error::Precondition { .. })));
        // in a group the associator subgroup is trivial
        let d4 = catalog::dihedral(4).unwrap();
        let a = Subset::new(8, [0, 4]).unwrap();
        let out = check_nested_transversals(&d4, &a, &Subset::singleton(8, 0)).unwrap();
        assert!(out.report.all_passed(), "{}", out.report);
    }

    #[test]
    fn nested_transversals_in_direct_product() {
        // K x C with A = K x {e}, C1 = {e} x C
        let k = catalog::symmetric3();
        let c = catalog::cyclic(3).unwrap();
        let g = crate::products::direct_product(&k, &c);
        let a = Subset::from_predicate(18, |x| x % 3 == 0);
        let c1 = Subset::from_predicate(18, |x| x < 3);
        let out = check_nested_transversals(&g, &a, &c1).unwrap();
        assert!(out.report.all_passed(), "{}", out.report);
        // psi^G_A is the projection onto K
        for d in 0..18 {
            assert_eq!(out.v_d_a.psi(d), (d / 3) * 3);
        }
    }
}
