//! Subsets of a carrier and their elementwise products and quotients.

use std::fmt;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::magma::{Elem, FiniteBinarySystem};

/// A subset of the carrier `0..order` of some structure.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    bits: BitSet,
}

impl Subset {
    pub fn new(order: usize, members: impl IntoIterator<Item = Elem>) -> Result<Self> {
        let mut bits = BitSet::new(order);
        for m in members {
            if m >= order {
                return Err(Error::Input(format!(
                    "subset member {m} out of range for order {order}"
                )));
            }
            bits.insert(m);
        }
        Ok(Subset { bits })
    }

    pub fn from_bits(bits: BitSet) -> Self {
        Subset { bits }
    }

    pub fn empty(order: usize) -> Self {
        Subset {
            bits: BitSet::new(order),
        }
    }

    pub fn full(order: usize) -> Self {
        Subset {
            bits: BitSet::full(order),
        }
    }

    pub fn singleton(order: usize, g: Elem) -> Self {
        Subset {
            bits: BitSet::from_indices(order, [g]),
        }
    }

    pub fn from_predicate(order: usize, pred: impl Fn(Elem) -> bool) -> Self {
        Subset {
            bits: BitSet::from_indices(order, (0..order).filter(|&g| pred(g))),
        }
    }

    /// Size of the parent carrier.
    pub fn order(&self) -> usize {
        self.bits.capacity()
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Adds `g`; returns whether it was new.
    pub fn insert(&mut self, g: Elem) -> bool {
        self.bits.insert(g)
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.bits.contains(g)
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.bits.iter()
    }

    /// Members in increasing order.
    pub fn members(&self) -> Vec<Elem> {
        self.bits.iter().collect()
    }

    pub fn first(&self) -> Option<Elem> {
        self.bits.first()
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &Subset) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        Subset {
            bits: self.bits.union(&other.bits),
        }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        Subset {
            bits: self.bits.intersection(&other.bits),
        }
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        Subset {
            bits: self.bits.difference(&other.bits),
        }
    }

    pub(crate) fn check_parent(&self, g: &FiniteBinarySystem) -> Result<()> {
        if self.order() == g.order() {
            Ok(())
        } else {
            Err(Error::Input(format!(
                "subset over a carrier of size {} used with a structure of order {}",
                self.order(),
                g.order()
            )))
        }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// `AB = { ab : a in A, b in B }`.
pub fn product(g: &FiniteBinarySystem, a: &Subset, b: &Subset) -> Subset {
    image2(g.order(), a, b, |x, y| g.mul(x, y))
}

/// `C / B = { c/b : c in C, b in B }`. Requires a quasigroup.
pub fn quotient_right(g: &FiniteBinarySystem, c: &Subset, b: &Subset) -> Subset {
    image2(g.order(), c, b, |x, y| g.rd(x, y))
}

/// `A \ C = { a\c : a in A, c in C }`. Requires a quasigroup.
pub fn quotient_left(g: &FiniteBinarySystem, a: &Subset, c: &Subset) -> Subset {
    image2(g.order(), a, c, |x, y| g.ld(x, y))
}

/// `xS`.
pub fn left_translate(g: &FiniteBinarySystem, x: Elem, s: &Subset) -> Subset {
    Subset::from_bits(BitSet::from_indices(g.order(), s.iter().map(|h| g.mul(x, h))))
}

/// `Sx`.
pub fn right_translate(g: &FiniteBinarySystem, s: &Subset, x: Elem) -> Subset {
    Subset::from_bits(BitSet::from_indices(g.order(), s.iter().map(|h| g.mul(h, x))))
}

fn image2(order: usize, a: &Subset, b: &Subset, f: impl Fn(Elem, Elem) -> Elem) -> Subset {
    let mut bits = BitSet::new(order);
    let bm = b.members();
    for x in a.iter() {
        for &y in &bm {
            bits.insert(f(x, y));
        }
    }
    Subset::from_bits(bits)
}

/// The three disjointness statements that are equivalent in any quasigroup:
/// `(AB) ∩ C = ∅`, `A ∩ (C/B) = ∅` and `(A\C) ∩ B = ∅`.
pub fn disjointness_triple(
    g: &FiniteBinarySystem,
    a: &Subset,
    b: &Subset,
    c: &Subset,
) -> Result<[bool; 3]> {
    g.require_quasigroup()?;
    Ok([
        product(g, a, b).is_disjoint(c),
        a.is_disjoint(&quotient_right(g, c, b)),
        quotient_left(g, a, c).is_disjoint(b),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s3() -> FiniteBinarySystem {
        crate::catalog::symmetric3()
    }

    #[test]
    fn out_of_range_member() {
        assert!(Subset::new(3, [0, 3]).is_err());
    }

    #[test]
    fn products_in_z5() {
        let z5 = FiniteBinarySystem::from_fn(5, |a, b| (a + b) % 5).unwrap();
        let a = Subset::new(5, [1, 2]).unwrap();
        let b = Subset::new(5, [0, 2]).unwrap();
        assert_eq!(product(&z5, &a, &b).members(), vec![1, 2, 3, 4]);
        assert_eq!(quotient_right(&z5, &a, &b).members(), vec![0, 1, 2, 4]);
        assert_eq!(left_translate(&z5, 3, &a).members(), vec![0, 4]);
    }

    proptest! {
        #[test]
        fn disjointness_equivalence_s3(a in 1u32..64, b in 1u32..64, c in 1u32..64) {
            let g = s3();
            let mk = |m: u32| Subset::from_predicate(6, |x| m & (1 << x) != 0);
            let [x, y, z] = disjointness_triple(&g, &mk(a), &mk(b), &mk(c)).unwrap();
            prop_assert_eq!(x, y);
            prop_assert_eq!(y, z);
        }
    }

    #[test]
    fn disjointness_equivalence_exhaustive_rotation_quasigroup() {
        let q = FiniteBinarySystem::from_fn(4, |a, b| (3 * a + b + 1) % 4).unwrap();
        for a in 1u32..16 {
            for b in 1u32..16 {
                for c in 1u32..16 {
                    let mk = |m: u32| Subset::from_predicate(4, |x| m & (1 << x) != 0);
                    let [x, y, z] = disjointness_triple(&q, &mk(a), &mk(b), &mk(c)).unwrap();
                    assert!(x == y && y == z, "{a} {b} {c}");
                }
            }
        }
    }
}
