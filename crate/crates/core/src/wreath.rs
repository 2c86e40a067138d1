//! Smashed twisted wreath products `D Δ_A F` with `F = B^V`.
//!
//! `V` is a transversal of `A` in `D`. A pair `(d, f)` is stored at index
//! `d * |F| + f`, and functions `f: V -> B` are numbered in mixed radix with
//! the first representative as the least significant digit, so the constant
//! function `e` is 0 and `(e, const_e)` is index 0. The product is
//!
//! ```text
//! (d1, f1)(d, f) = (d1 d, ξ((d1^ψ, f1), (d^ψ, f)) f1 f^{d1})
//! f^{d}(v) = φ(s(d, v)) f(τ(v (d\e))),   s(d, v) = ψ(v (d\e))
//! ```
//!
//! with `ξ` applied pointwise and the products in `B` taken left to right.

use rayon::prelude::*;

use crate::analysis::{self, Verdict};
use crate::coset::Transversal;
use crate::error::{Error, Result};
use crate::magma::{Elem, FiniteBinarySystem};
use crate::products::latin_violation;
use crate::report::Report;
use crate::subset::Subset;

/// Default bound on `|B|^|V|` and on the order of the product.
pub const DEFAULT_MAX_SIZE: usize = 4096;

/// All functions `V -> B` for a fixed ordered `V`, in mixed radix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionSpace {
    points: Vec<Elem>,
    base: usize,
    len: usize,
}

impl FunctionSpace {
    /// `points` are the elements of `V` in digit order; `base = |B|`.
    pub fn new(points: Vec<Elem>, base: usize, max_size: usize) -> Result<Self> {
        if base == 0 {
            return Err(Error::Input("empty codomain".into()));
        }
        let mut len: usize = 1;
        for _ in &points {
            len = len
                .checked_mul(base)
                .filter(|&l| l <= max_size)
                .ok_or_else(|| {
                    Error::Resource(format!(
                        "{base}^{} functions exceed the bound {max_size}",
                        points.len()
                    ))
                })?;
        }
        Ok(FunctionSpace { points, base, len })
    }

    pub fn points(&self) -> &[Elem] {
        &self.points
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The constant function `e`.
    pub fn const_e(&self) -> usize {
        0
    }

    /// Value of function `f` at the `k`-th point.
    pub fn value(&self, f: usize, k: usize) -> Elem {
        (f / self.base.pow(k as u32)) % self.base
    }

    pub fn decode(&self, f: usize) -> Vec<Elem> {
        let mut out = Vec::with_capacity(self.points.len());
        let mut x = f;
        for _ in &self.points {
            out.push(x % self.base);
            x /= self.base;
        }
        out
    }

    pub fn encode(&self, values: &[Elem]) -> usize {
        debug_assert_eq!(values.len(), self.points.len());
        values.iter().rev().fold(0, |acc, &v| acc * self.base + v)
    }

    /// Pointwise `f g` in `b`.
    pub fn mul(&self, b: &FiniteBinarySystem, f: usize, g: usize) -> usize {
        let (x, y) = (self.decode(f), self.decode(g));
        let out: Vec<Elem> = x.iter().zip(&y).map(|(&p, &q)| b.mul(p, q)).collect();
        self.encode(&out)
    }
}

/// Inputs of a wreath product.
#[derive(Debug, Clone)]
pub struct WreathSpec {
    pub d: FiniteBinarySystem,
    /// Submetagroup `A` of `D`.
    pub a: Subset,
    /// Preferred representatives for `V`; the least coset member otherwise.
    pub preferred: Vec<Elem>,
    pub b: FiniteBinarySystem,
    /// `phi[i][b]` is `φ(a_i) b` where `a_i` is the `i`-th member of `A`.
    pub phi: Vec<Vec<Elem>>,
    /// `xi[i1 * |B| + b1][i2 * |B| + b2]` is `ξ((a_i1, b1), (a_i2, b2))`.
    pub xi: Vec<Vec<Elem>>,
    /// Carried with the spec; not used by the product formula.
    pub eta: Option<Vec<Vec<Vec<Elem>>>>,
    /// Carried with the spec; not used by the product formula.
    pub kappa: Option<Vec<Vec<Vec<Elem>>>>,
    /// `C1` as pairs `(d, b)` identifying an element of `D` with one of `B`.
    pub c1: Vec<(Elem, Elem)>,
    pub max_size: usize,
}

impl WreathSpec {
    /// Trivial action and `ξ ≡ e`.
    pub fn trivial(d: FiniteBinarySystem, a: Subset, b: FiniteBinarySystem) -> Self {
        let (na, nb) = (a.len(), b.order());
        WreathSpec {
            phi: (0..na).map(|_| (0..nb).collect()).collect(),
            xi: vec![vec![0; na * nb]; na * nb],
            d,
            a,
            preferred: Vec::new(),
            b,
            eta: None,
            kappa: None,
            c1: Vec::new(),
            max_size: DEFAULT_MAX_SIZE,
        }
    }

    /// Sets `ξ` from a function of `((a1, b1), (a2, b2))` with `a1, a2` in `A`.
    pub fn with_xi(mut self, f: impl Fn((Elem, Elem), (Elem, Elem)) -> Elem) -> Self {
        let am = self.a.members();
        let nb = self.b.order();
        let n = am.len() * nb;
        self.xi = (0..n)
            .map(|x| (0..n).map(|y| f((am[x / nb], x % nb), (am[y / nb], y % nb))).collect())
            .collect();
        self
    }

    /// Sets `φ(a) b = f(a, b)` for `a` in `A`.
    pub fn with_phi(mut self, f: impl Fn(Elem, Elem) -> Elem) -> Self {
        let nb = self.b.order();
        self.phi = self.a.iter().map(|x| (0..nb).map(|y| f(x, y)).collect()).collect();
        self
    }

    fn validate_shapes(&self) -> Result<()> {
        self.a.check_parent(&self.d)?;
        let (na, nb) = (self.a.len(), self.b.order());
        if self.phi.len() != na || self.phi.iter().any(|r| r.len() != nb) {
            return Err(Error::Input(format!("phi must be a {na} x {nb} array")));
        }
        let n = na * nb;
        if self.xi.len() != n || self.xi.iter().any(|r| r.len() != n) {
            return Err(Error::Input(format!("xi must be a {n} x {n} array")));
        }
        let bad = self
            .phi
            .iter()
            .flatten()
            .chain(self.xi.iter().flatten())
            .find(|&&v| v >= nb);
        if let Some(v) = bad {
            return Err(Error::Input(format!("factor value {v} is not an element of B")));
        }
        for &(x, y) in &self.c1 {
            self.d.check_elem(x)?;
            self.b.check_elem(y)?;
        }
        Ok(())
    }
}

/// A built wreath product with its transversal, function space and action.
#[derive(Debug, Clone)]
pub struct WreathStructure {
    spec: WreathSpec,
    tr: Transversal,
    fs: FunctionSpace,
    a_pos: Vec<usize>,
    action: Vec<u32>,
    product: FiniteBinarySystem,
}

impl WreathStructure {
    pub fn spec(&self) -> &WreathSpec {
        &self.spec
    }

    pub fn transversal(&self) -> &Transversal {
        &self.tr
    }

    pub fn functions(&self) -> &FunctionSpace {
        &self.fs
    }

    pub fn product(&self) -> &FiniteBinarySystem {
        &self.product
    }

    pub fn index(&self, d: Elem, f: usize) -> Elem {
        d * self.fs.len() + f
    }

    pub fn pair(&self, g: Elem) -> (Elem, usize) {
        (g / self.fs.len(), g % self.fs.len())
    }

    /// `f^{d}`.
    pub fn f_action(&self, d: Elem, f: usize) -> usize {
        self.action[d * self.fs.len() + f] as usize
    }

    /// Checks on the factor data that the construction itself does not force.
    pub fn check_factors(&self) -> Report {
        let mut r = Report::new();
        let spec = &self.spec;
        let nb = spec.b.order();
        let w = spec
            .phi
            .iter()
            .position(|row| row[0] != 0)
            .map(|i| vec![spec.a.members()[i]]);
        r.verdict("phi(a) e = e", Verdict::from_option(w, ""));
        let w = (0..nb).find(|&y| spec.phi[self.a_pos[0]][y] != y).map(|y| vec![y]);
        r.verdict("phi(e) = id", Verdict::from_option(w, ""));
        let c1_b = Subset::new(nb, spec.c1.iter().map(|p| p.1)).expect("checked");
        let c1_d = Subset::new(spec.d.order(), spec.c1.iter().map(|p| p.0)).expect("checked");
        if spec.c1.is_empty() {
            r.skip("xi values in C1", "no C1 given");
        } else {
            let w = spec
                .xi
                .iter()
                .flatten()
                .find(|&&v| !c1_b.contains(v))
                .map(|&v| vec![v]);
            r.verdict("xi values in C1", Verdict::from_option(w, "value outside C1"));
            let zb = analysis::center(&spec.b);
            let zd = analysis::center(&spec.d);
            r.check("C1 central in B", c1_b.is_subset(&zb), || c1_b.difference(&zb).members());
            r.check("C1 central in D", c1_d.is_subset(&zd), || c1_d.difference(&zd).members());
        }
        r
    }

    /// The action `d -> (f -> f^{d})` agrees with the formula evaluated from
    /// scratch, and `f^{e} = f`.
    pub fn check_action(&self) -> Report {
        let mut r = Report::new();
        let n = self.fs.len();
        let w = (0..n).find(|&f| self.f_action(0, f) != f).map(|f| vec![0, f]);
        r.verdict("f^{e} = f", Verdict::from_option(w, ""));
        let d = &self.spec.d;
        let direct = |x: Elem, f: usize| {
            let c = d.ld(x, 0);
            let vals = self.fs.decode(f);
            let out: Vec<Elem> = self
                .fs
                .points()
                .iter()
                .map(|&v| {
                    let vc = d.mul(v, c);
                    let s = self.tr.psi(vc);
                    let moved = vals[self.tr.reps().iter().position(|&u| u == self.tr.tau(vc)).expect("rep")];
                    self.spec.phi[self.a_pos[s]][moved]
                })
                .collect();
            self.fs.encode(&out)
        };
        let w = (0..d.order())
            .flat_map(|x| (0..n).map(move |f| (x, f)))
            .find(|&(x, f)| self.f_action(x, f) != direct(x, f))
            .map(|(x, f)| vec![x, f]);
        r.verdict("f^{d} matches direct evaluation", Verdict::from_option(w, ""));
        r
    }
}

fn a_positions(spec: &WreathSpec) -> Vec<usize> {
    let mut pos = vec![usize::MAX; spec.d.order()];
    for (i, x) in spec.a.iter().enumerate() {
        pos[x] = i;
    }
    pos
}

fn build_action(
    d: &FiniteBinarySystem,
    tr: &Transversal,
    fs: &FunctionSpace,
    phi: &[Vec<Elem>],
    a_pos: &[usize],
) -> Vec<u32> {
    let nf = fs.len();
    let nv = fs.points().len();
    let mut action = vec![0u32; d.order() * nf];
    action.par_chunks_mut(nf).enumerate().for_each(|(x, row)| {
        let c = d.ld(x, 0);
        // for each point: (position of v^{[d\e]}, row of φ(s(d, v)))
        let moves: Vec<(usize, usize)> = fs
            .points()
            .iter()
            .map(|&v| {
                let vc = d.mul(v, c);
                (tr.rep_index(tr.tau(vc)), a_pos[tr.psi(vc)])
            })
            .collect();
        let mut vals = vec![0; nv];
        for (f, cell) in row.iter_mut().enumerate() {
            let src = fs.decode(f);
            for (k, &(to, ai)) in moves.iter().enumerate() {
                vals[k] = phi[ai][src[to]];
            }
            *cell = fs.encode(&vals) as u32;
        }
    });
    action
}

/// Builds `D Δ_A B^V`. Fails with a resource error past the size bound and
/// with a factor rejection if the result is not a loop with identity
/// `(e, const_e)`.
pub fn wreath_product(spec: WreathSpec) -> Result<WreathStructure> {
    spec.d.require_loop()?;
    spec.b.require_loop()?;
    spec.validate_shapes()?;
    if let Verdict::Fails { witness, detail } = analysis::is_submetagroup(&spec.d, &spec.a)? {
        return Err(Error::precondition(format!("A is not a submetagroup: {detail}"), witness));
    }
    let tr = Transversal::within(&spec.d, &Subset::full(spec.d.order()), &spec.a, &spec.preferred)?;
    let fs = FunctionSpace::new(tr.reps().to_vec(), spec.b.order(), spec.max_size)?;
    let nf = fs.len();
    let n = spec
        .d
        .order()
        .checked_mul(nf)
        .filter(|&n| n <= spec.max_size)
        .ok_or_else(|| {
            Error::Resource(format!(
                "product order {} x {nf} exceeds the bound {}",
                spec.d.order(),
                spec.max_size
            ))
        })?;
    let a_pos = a_positions(&spec);
    let action = build_action(&spec.d, &tr, &fs, &spec.phi, &a_pos);

    let (d, b) = (&spec.d, &spec.b);
    let nb = b.order();
    let decoded: Vec<Vec<Elem>> = (0..nf).map(|f| fs.decode(f)).collect();
    let mut table = vec![0u32; n * n];
    table.par_chunks_mut(n).enumerate().for_each(|(x, row)| {
        let (d1, f1) = (x / nf, x % nf);
        let p1 = a_pos[tr.psi(d1)];
        let mut vals = vec![0; fs.points().len()];
        for (y, cell) in row.iter_mut().enumerate() {
            let (d2, f2) = (y / nf, y % nf);
            let p2 = a_pos[tr.psi(d2)];
            let moved = &decoded[action[d1 * nf + f2] as usize];
            for (k, val) in vals.iter_mut().enumerate() {
                let (u, w) = (decoded[f1][k], decoded[f2][k]);
                let twist = spec.xi[p1 * nb + u][p2 * nb + w];
                *val = b.mul(b.mul(twist, u), moved[k]);
            }
            *cell = (d.mul(d1, d2) * nf + fs.encode(&vals)) as u32;
        }
    });
    if let Some((detail, witness)) = latin_violation(n, &table) {
        return Err(Error::FactorRejected {
            message: format!("wreath product is not a quasigroup: {detail}"),
            witness,
        });
    }
    let product = FiniteBinarySystem::from_flat(n, table);
    if !product.is_loop() {
        return Err(Error::FactorRejected {
            message: "wreath product has no identity".into(),
            witness: Vec::new(),
        });
    }
    if let Some(k) = product.swapped_identity() {
        return Err(Error::FactorRejected {
            message: "the identity is not (e, const_e)".into(),
            witness: vec![k],
        });
    }
    Ok(WreathStructure {
        spec,
        tr,
        fs,
        a_pos,
        action,
        product,
    })
}

/// The transported structure `C_{i,j}`, the map `θ_{i,j}` and the checks
/// that `θ_{i,j}` preserves multiplication and both divisions.
#[derive(Debug, Clone)]
pub struct ThetaIsomorphism {
    pub c_ij: WreathStructure,
    pub map: Vec<Elem>,
    pub report: Report,
}

fn invert(p: &[Elem]) -> Vec<Elem> {
    let mut inv = vec![0; p.len()];
    for (x, &y) in p.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

/// Transports `w` along automorphisms `i` of `D` and `j` of `B`, which must
/// agree on `C1`, and checks `θ(d, f) = (i(d), j ∘ f ∘ i⁻¹)` is an isomorphism.
pub fn theta_isomorphism(w: &WreathStructure, i: &[Elem], j: &[Elem]) -> Result<ThetaIsomorphism> {
    let spec = &w.spec;
    if let Verdict::Fails { witness, detail } = analysis::verify_automorphism(&spec.d, i)? {
        return Err(Error::precondition(format!("i is not an automorphism of D: {detail}"), witness));
    }
    if let Verdict::Fails { witness, detail } = analysis::verify_automorphism(&spec.b, j)? {
        return Err(Error::precondition(format!("j is not an automorphism of B: {detail}"), witness));
    }
    for &(x, y) in &spec.c1 {
        if !spec.c1.contains(&(i[x], j[y])) {
            return Err(Error::precondition("i and j disagree on C1", vec![x, y]));
        }
    }
    let (iinv, jinv) = (invert(i), invert(j));
    let a2 = Subset::new(spec.d.order(), spec.a.iter().map(|x| i[x]))?;
    let am = spec.a.members();
    let pos_old = &w.a_pos;
    let nb = spec.b.order();
    // φ_ij(a')(b') = j(φ(i⁻¹ a')(j⁻¹ b'))
    let phi2: Vec<Vec<Elem>> = a2
        .iter()
        .map(|x2| (0..nb).map(|y2| j[spec.phi[pos_old[iinv[x2]]][jinv[y2]]]).collect())
        .collect();
    let am2 = a2.members();
    let k = am2.len() * nb;
    let xi2: Vec<Vec<Elem>> = (0..k)
        .map(|r| {
            (0..k)
                .map(|c| {
                    let (x1, y1) = (pos_old[iinv[am2[r / nb]]], jinv[r % nb]);
                    let (x2, y2) = (pos_old[iinv[am2[c / nb]]], jinv[c % nb]);
                    j[spec.xi[x1 * nb + y1][x2 * nb + y2]]
                })
                .collect()
        })
        .collect();
    debug_assert_eq!(am.len(), am2.len());
    let spec2 = WreathSpec {
        d: spec.d.clone(),
        a: a2,
        preferred: w.tr.reps().iter().map(|&v| i[v]).collect(),
        b: spec.b.clone(),
        phi: phi2,
        xi: xi2,
        eta: spec.eta.clone(),
        kappa: spec.kappa.clone(),
        c1: spec.c1.clone(),
        max_size: spec.max_size,
    };
    let c_ij = wreath_product(spec2)?;

    let (fs, fs2) = (&w.fs, &c_ij.fs);
    // position in V of i⁻¹(v') for each point v' of the new transversal
    let back: Vec<usize> = fs2.points().iter().map(|&v2| w.tr.rep_index(iinv[v2])).collect();
    let n = w.product.order();
    let map: Vec<Elem> = (0..n)
        .map(|g| {
            let (x, f) = w.pair(g);
            let vals = fs.decode(f);
            let moved: Vec<Elem> = back.iter().map(|&p| j[vals[p]]).collect();
            c_ij.index(i[x], fs2.encode(&moved))
        })
        .collect();

    let (g, h) = (&w.product, &c_ij.product);
    let mut r = Report::new();
    r.check("theta bijective", Subset::new(n, map.iter().copied())?.len() == n, Vec::new);
    let find = |op: &(dyn Fn(&FiniteBinarySystem, Elem, Elem) -> Elem + Sync)| {
        (0..n).into_par_iter().find_map_first(|x| {
            (0..n)
                .find(|&y| map[op(g, x, y)] != op(h, map[x], map[y]))
                .map(|y| vec![x, y])
        })
    };
    r.verdict(
        "theta(g1 g) = theta(g1) theta(g)",
        Verdict::from_option(find(&|s, x, y| s.mul(x, y)), ""),
    );
    r.verdict(
        "theta(g1 \\ g) = theta(g1) \\ theta(g)",
        Verdict::from_option(find(&|s, x, y| s.ld(x, y)), ""),
    );
    r.verdict(
        "theta(g / g1) = theta(g) / theta(g1)",
        Verdict::from_option(find(&|s, x, y| s.rd(x, y)), ""),
    );
    Ok(ThetaIsomorphism { c_ij, map, report: r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::magma::ClassTag;

    fn z2_wreath_z2() -> WreathSpec {
        let d = catalog::cyclic(2).unwrap();
        WreathSpec::trivial(d, Subset::singleton(2, 0), catalog::cyclic(2).unwrap())
    }

    #[test]
    fn mixed_radix() {
        let fs = FunctionSpace::new(vec![0, 3, 5], 3, 100).unwrap();
        assert_eq!(fs.len(), 27);
        assert_eq!(fs.decode(fs.encode(&[2, 0, 1])), vec![2, 0, 1]);
        assert_eq!(fs.encode(&[1, 0, 0]), 1);
        assert_eq!(fs.value(fs.encode(&[2, 1, 0]), 1), 1);
        assert!(matches!(FunctionSpace::new(vec![0; 13], 2, 4096), Err(Error::Resource(_))));
    }

    #[test]
    fn trivial_wreath_of_z2_is_a_group_of_order_8() {
        let w = wreath_product(z2_wreath_z2()).unwrap();
        assert_eq!(w.product().order(), 8);
        assert_eq!(w.product().classify(), ClassTag::Group);
        assert!(!w.product().is_commutative());
        assert!(w.check_action().all_passed());
    }

    #[test]
    fn swap_action_on_two_points() {
        let w = wreath_product(z2_wreath_z2()).unwrap();
        // V = {0, 1}; f^{1}(v) = f(v + 1), so the two coordinates swap
        for f in 0..4 {
            let vals = w.functions().decode(f);
            let expect = w.functions().encode(&[vals[1], vals[0]]);
            assert_eq!(w.f_action(1, f), expect);
            assert_eq!(w.f_action(0, f), f);
        }
    }

    #[test]
    fn full_a_gives_direct_product() {
        let d = catalog::cyclic(3).unwrap();
        let b = catalog::cyclic(2).unwrap();
        let w = wreath_product(WreathSpec::trivial(d.clone(), Subset::full(3), b.clone())).unwrap();
        assert_eq!(*w.product(), crate::products::direct_product(&d, &b));
    }

    #[test]
    fn size_bound() {
        let mut spec = WreathSpec::trivial(
            catalog::cyclic(8).unwrap(),
            Subset::singleton(8, 0),
            catalog::cyclic(4).unwrap(),
        );
        spec.max_size = 1000;
        assert!(matches!(wreath_product(spec), Err(Error::Resource(_))));
    }

    #[test]
    fn identity_theta() {
        let w = wreath_product(z2_wreath_z2()).unwrap();
        let t = theta_isomorphism(&w, &[0, 1], &[0, 1]).unwrap();
        assert!(t.report.all_passed(), "{}", t.report);
        assert_eq!(t.map, (0..8).collect::<Vec<_>>());
        assert_eq!(*t.c_ij.product(), *w.product());
    }

    #[test]
    fn non_automorphism_rejected() {
        let w = wreath_product(z2_wreath_z2()).unwrap();
        assert!(matches!(
            theta_isomorphism(&w, &[0, 1], &[1, 0]),
            Err(Error::Precondition { .. })
        ));
    }

    /// `ξ = 2` when both `B`-components are odd, valued in `C1 = {0, 2}`.
    fn parity_twisted() -> WreathSpec {
        let mut spec = WreathSpec::trivial(
            catalog::cyclic(2).unwrap(),
            Subset::singleton(2, 0),
            catalog::cyclic(4).unwrap(),
        )
        .with_xi(|(_, b1), (_, b2)| if b1 % 2 == 1 && b2 % 2 == 1 { 2 } else { 0 });
        spec.c1 = vec![(0, 0), (0, 2)];
        spec
    }

    #[test]
    fn parity_twisted_wreath() {
        let w = wreath_product(parity_twisted()).unwrap();
        let g = w.product();
        assert_eq!(g.order(), 32);
        assert!(g.is_loop());
        assert_eq!(w.index(0, w.functions().const_e()), 0);
        assert!(w.check_factors().all_passed(), "{}", w.check_factors());
        assert!(w.check_action().all_passed());
        // the twist changes the table
        let plain = wreath_product(WreathSpec { xi: vec![vec![0; 4]; 4], ..parity_twisted() }).unwrap();
        assert_ne!(plain.product(), g);
        // negation on B preserves the parity twist and C1
        let t = theta_isomorphism(&w, &[0, 1], &[0, 3, 2, 1]).unwrap();
        assert!(t.report.all_passed(), "{}", t.report);
        assert_ne!(t.map, (0..32).collect::<Vec<_>>());
    }
}

