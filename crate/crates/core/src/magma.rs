//! Cayley-table representation of finite binary systems.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::analysis;
use crate::error::{Error, Result};

/// Element of a finite carrier, as a dense index `0..order`.
pub type Elem = usize;

/// Classification of a finite binary system.
///
/// The tags form a partial order rather than a chain: every group is a
/// metagroup, but a group need not be a central metagroup (S3 is not).
/// Use [`ClassTag::implies`] to compare tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassTag {
    Magma,
    Quasigroup,
    Loop,
    Metagroup,
    CentralMetagroup,
    Group,
}

impl ClassTag {
    /// Whether a structure carrying `self` is guaranteed to satisfy `other`.
    pub fn implies(self, other: ClassTag) -> bool {
        use ClassTag::*;
        match (self, other) {
            (_, Magma) => true,
            (Magma, _) => false,
            (_, Quasigroup) => true,
            (Quasigroup, _) => false,
            (_, Loop) => true,
            (Loop, _) => false,
            (_, Metagroup) => true,
            (Metagroup, _) => false,
            (CentralMetagroup, CentralMetagroup) => true,
            (Group, Group) => true,
            _ => false,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ClassTag::Magma => "magma",
            ClassTag::Quasigroup => "quasigroup",
            ClassTag::Loop => "loop",
            ClassTag::Metagroup => "metagroup",
            ClassTag::CentralMetagroup => "central-metagroup",
            ClassTag::Group => "group",
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ClassTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "magma" => ClassTag::Magma,
            "quasigroup" => ClassTag::Quasigroup,
            "loop" => ClassTag::Loop,
            "metagroup" => ClassTag::Metagroup,
            "central" | "central-metagroup" => ClassTag::CentralMetagroup,
            "group" => ClassTag::Group,
            other => return Err(Error::Input(format!("unknown class level `{other}`"))),
        })
    }
}

/// An order-`n` carrier with an `n x n` multiplication table.
///
/// Structures are immutable once built. For Latin tables both division tables
/// are precomputed, and a two-sided identity (if any) is relabelled to index 0.
#[derive(Clone)]
pub struct FiniteBinarySystem {
    order: usize,
    table: Vec<u32>,
    ldiv: Option<Vec<u32>>,
    rdiv: Option<Vec<u32>>,
    identity: Option<Elem>,
    names: Option<Vec<String>>,
    swapped_identity: Option<Elem>,
    class: OnceLock<ClassTag>,
}

impl FiniteBinarySystem {
    /// Build from a row-major table, `rows[a][b] = a*b`.
    pub fn from_table(rows: Vec<Vec<Elem>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Input("order must be positive".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Input(format!(
                    "row {a} has length {}, expected {n}",
                    row.len()
                )));
            }
            for (b, &x) in row.iter().enumerate() {
                if x >= n {
                    return Err(Error::Input(format!(
                        "table[{a}][{b}] = {x} is out of range for order {n}"
                    )));
                }
                flat.push(x as u32);
            }
        }
        Ok(Self::from_flat(n, flat))
    }

    /// Build from a multiplication function on `0..order`.
    pub fn from_fn(order: usize, f: impl Fn(Elem, Elem) -> Elem) -> Result<Self> {
        let rows = (0..order)
            .map(|a| (0..order).map(|b| f(a, b)).collect())
            .collect();
        Self::from_table(rows)
    }

    pub(crate) fn from_flat(order: usize, table: Vec<u32>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        let mut s = FiniteBinarySystem {
            order,
            table,
            ldiv: None,
            rdiv: None,
            identity: None,
            names: None,
            swapped_identity: None,
            class: OnceLock::new(),
        };
        if s.build_divisions() {
            if let Some(e) = s.find_identity() {
                if e != 0 {
                    s.swap_labels(0, e);
                    s.build_divisions();
                    s.swapped_identity = Some(e);
                }
                s.identity = Some(0);
            }
        }
        s
    }

    /// Attach display labels. Must be called with exactly `order` labels.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.order {
            return Err(Error::Input(format!(
                "{} names given for order {}",
                names.len(),
                self.order
            )));
        }
        let mut names = names;
        if let Some(e) = self.swapped_identity {
            // labels follow the elements through the identity normalization
            names.swap(0, e);
        }
        self.names = Some(names);
        Ok(self)
    }

    fn build_divisions(&mut self) -> bool {
        let n = self.order;
        let unset = u32::MAX;
        let mut ldiv = vec![unset; n * n];
        let mut rdiv = vec![unset; n * n];
        for a in 0..n {
            for b in 0..n {
                let c = self.table[a * n + b] as usize;
                // a*b = c  =>  a\c = b and c/b = a
                if ldiv[a * n + c] != unset || rdiv[c * n + b] != unset {
                    self.ldiv = None;
                    self.rdiv = None;
                    return false;
                }
                ldiv[a * n + c] = b as u32;
                rdiv[c * n + b] = a as u32;
            }
        }
        self.ldiv = Some(ldiv);
        self.rdiv = Some(rdiv);
        true
    }

    fn find_identity(&self) -> Option<Elem> {
        let n = self.order;
        (0..n).find(|&e| (0..n).all(|g| self.mul(e, g) == g && self.mul(g, e) == g))
    }

    fn swap_labels(&mut self, x: Elem, y: Elem) {
        let n = self.order;
        let relabel = |v: usize| {
            if v == x {
                y
            } else if v == y {
                x
            } else {
                v
            }
        };
        let mut t = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let c = self.table[relabel(a) * n + relabel(b)] as usize;
                t[a * n + b] = relabel(c) as u32;
            }
        }
        self.table = t;
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Option<Elem> {
        self.identity
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Label of `g`, falling back to its index.
    pub fn name(&self, g: Elem) -> String {
        match &self.names {
            Some(n) => n[g].clone(),
            None => g.to_string(),
        }
    }

    /// If the input table had its identity at index `k != 0`, labels `0` and
    /// `k` were swapped on construction and this returns `Some(k)`.
    pub fn swapped_identity(&self) -> Option<Elem> {
        self.swapped_identity
    }

    pub fn is_quasigroup(&self) -> bool {
        self.ldiv.is_some()
    }

    pub fn is_loop(&self) -> bool {
        self.identity.is_some()
    }

    /// Table rows, `rows()[a][b] = a*b`.
    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.table
            .chunks(self.order)
            .map(|r| r.iter().map(|&x| x as usize).collect())
            .collect()
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b] as usize
    }

    pub fn checked_mul(&self, a: Elem, b: Elem) -> Result<Elem> {
        self.check_elem(a)?;
        self.check_elem(b)?;
        Ok(self.mul(a, b))
    }

    pub(crate) fn check_elem(&self, a: Elem) -> Result<()> {
        if a < self.order {
            Ok(())
        } else {
            Err(Error::Input(format!(
                "element {a} out of range for order {}",
                self.order
            )))
        }
    }

    /// `a \ b`, the unique `x` with `a*x = b`.
    pub fn div_l(&self, a: Elem, b: Elem) -> Result<Elem> {
        self.check_elem(a)?;
        self.check_elem(b)?;
        match &self.ldiv {
            Some(t) => Ok(t[a * self.order + b] as usize),
            None => Err(Error::Structure("not a quasigroup: left division undefined".into())),
        }
    }

    /// `b / a`, the unique `y` with `y*a = b`.
    pub fn div_r(&self, b: Elem, a: Elem) -> Result<Elem> {
        self.check_elem(a)?;
        self.check_elem(b)?;
        match &self.rdiv {
            Some(t) => Ok(t[b * self.order + a] as usize),
            None => Err(Error::Structure("not a quasigroup: right division undefined".into())),
        }
    }

    /// Unchecked left division; panics if the structure is not a quasigroup.
    #[inline]
    pub(crate) fn ld(&self, a: Elem, b: Elem) -> Elem {
        self.ldiv.as_ref().expect("quasigroup required")[a * self.order + b] as usize
    }

    /// Unchecked right division `b / a`.
    #[inline]
    pub(crate) fn rd(&self, b: Elem, a: Elem) -> Elem {
        self.rdiv.as_ref().expect("quasigroup required")[b * self.order + a] as usize
    }

    pub(crate) fn require_quasigroup(&self) -> Result<()> {
        if self.is_quasigroup() {
            Ok(())
        } else {
            Err(Error::Structure("operation requires a quasigroup".into()))
        }
    }

    pub(crate) fn require_loop(&self) -> Result<Elem> {
        self.identity
            .ok_or_else(|| Error::Structure("operation requires a loop (no identity)".into()))
    }

    /// `a \ e`.
    pub fn inv_l(&self, a: Elem) -> Result<Elem> {
        let e = self.require_loop()?;
        self.div_l(a, e)
    }

    /// `e / a`.
    pub fn inv_r(&self, a: Elem) -> Result<Elem> {
        let e = self.require_loop()?;
        self.div_r(e, a)
    }

    pub fn is_associative(&self) -> bool {
        analysis::first_nonassociative_triple(self).is_none()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Strongest applicable tag; cached after the first call.
    pub fn classify(&self) -> ClassTag {
        *self.class.get_or_init(|| {
            if !self.is_quasigroup() {
                ClassTag::Magma
            } else if !self.is_loop() {
                ClassTag::Quasigroup
            } else if self.is_associative() {
                ClassTag::Group
            } else if analysis::is_metagroup(self).holds() {
                if analysis::is_central_metagroup(self).holds() {
                    ClassTag::CentralMetagroup
                } else {
                    ClassTag::Metagroup
                }
            } else {
                ClassTag::Loop
            }
        })
    }
}

impl PartialEq for FiniteBinarySystem {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteBinarySystem {}

impl fmt::Debug for FiniteBinarySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteBinarySystem")
            .field("order", &self.order)
            .field("identity", &self.identity)
            .field("rows", &self.rows())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: usize) -> FiniteBinarySystem {
        FiniteBinarySystem::from_fn(n, |a, b| (a + b) % n).unwrap()
    }

    // table[a][b] = (2a + 1 + b) mod 5: rows are distinct rotations, no identity
    fn rotation5() -> FiniteBinarySystem {
        FiniteBinarySystem::from_fn(5, |a, b| (2 * a + 1 + b) % 5).unwrap()
    }

    #[test]
    fn z4_basics() {
        let z4 = zn(4);
        assert_eq!(z4.mul(1, 2), 3);
        assert_eq!(z4.div_l(1, 0).unwrap(), 3);
        assert_eq!(z4.div_r(0, 1).unwrap(), 3);
        assert_eq!(z4.inv_l(1).unwrap(), 3);
        assert_eq!(z4.inv_l(0).unwrap(), 0);
        assert_eq!(z4.classify(), ClassTag::Group);
        for g in 0..4 {
            assert_eq!(z4.mul(0, g), g);
        }
    }

    #[test]
    fn out_of_range_is_input_error() {
        let z4 = zn(4);
        assert!(matches!(z4.checked_mul(4, 0), Err(Error::Input(_))));
        assert!(matches!(z4.div_l(0, 9), Err(Error::Input(_))));
        let bad = FiniteBinarySystem::from_table(vec![vec![0, 2], vec![1, 0]]);
        assert!(matches!(bad, Err(Error::Input(m)) if m.contains("table[0][1]")));
    }

    #[test]
    fn non_latin_has_no_divisions() {
        let m = FiniteBinarySystem::from_fn(3, |_, _| 0).unwrap();
        assert_eq!(m.classify(), ClassTag::Magma);
        assert!(matches!(m.div_l(0, 0), Err(Error::Structure(_))));
        assert!(m.identity().is_none());
    }

    #[test]
    fn rotation_square_is_quasigroup_only() {
        let q = rotation5();
        assert!(q.identity().is_none());
        assert_eq!(q.classify(), ClassTag::Quasigroup);
        assert!(matches!(q.inv_l(0), Err(Error::Structure(_))));
        for a in 0..5 {
            for b in 0..5 {
                let x = q.div_l(a, b).unwrap();
                assert_eq!(q.mul(a, x), b);
                assert_eq!(q.div_l(a, q.mul(a, b)).unwrap(), b);
                let y = q.div_r(b, a).unwrap();
                assert_eq!(q.mul(y, a), b);
                assert_eq!(q.div_r(q.mul(b, a), a).unwrap(), b);
            }
        }
    }

    #[test]
    fn identity_is_moved_to_zero() {
        // Z3 written with identity at label 2: a*b = (a + b + 1) mod 3
        let g = FiniteBinarySystem::from_fn(3, |a, b| (a + b + 1) % 3)
            .unwrap()
            .with_names(vec!["x".into(), "y".into(), "e".into()])
            .unwrap();
        assert_eq!(g.identity(), Some(0));
        assert_eq!(g.swapped_identity(), Some(2));
        assert_eq!(g.name(0), "e");
        for x in 0..3 {
            assert_eq!(g.mul(0, x), x);
            assert_eq!(g.mul(x, 0), x);
        }
        assert_eq!(g.classify(), ClassTag::Group);
    }

    #[test]
    fn tag_partial_order() {
        use ClassTag::*;
        assert!(Group.implies(Metagroup));
        assert!(Group.implies(Loop));
        assert!(!Group.implies(CentralMetagroup));
        assert!(CentralMetagroup.implies(Metagroup));
        assert!(!Metagroup.implies(Group));
        assert!(Loop.implies(Quasigroup));
        assert!(!Quasigroup.implies(Loop));
        assert!(Magma.implies(Magma));
    }
}
